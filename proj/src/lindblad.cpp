#include "cavdiscord/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavdiscord/rk4.hpp"

namespace cavdiscord {

namespace {

constexpr double kTailBound = 1e-12;
constexpr double kDriftLimit = 1e-8;
constexpr double kStabilityRadius = 2.5;  // inside the RK4 region in every left-half-plane direction

}  // namespace

double coherent_tail(double mean_photons, int dim) {
    if (dim < 1) return 1.0;
    if (mean_photons <= 0.0) return 0.0;
    // Poisson tail summed directly in log space; 1 - head would cancel to 0.
    const double log_m = std::log(mean_photons);
    double tail = 0.0;
    for (int n = dim;; ++n) {
        const double term = std::exp(-mean_photons + n * log_m - std::lgamma(n + 1.0));
        tail += term;
        if (n > mean_photons && term <= tail * 1e-17) break;
    }
    return std::min(tail, 1.0);
}

FockTruncation default_fock_truncation(const ChannelParams& params) {
    params.validate();
    int dim = 20;
    while (coherent_tail(params.mean_photons(), dim) >= kTailBound) ++dim;
    return {dim};
}

cplx CavityBlocks::trace(AtomLevel left, AtomLevel right) const {
    if (left == right) return left == AtomLevel::kExcited ? ee.trace() : gg.trace();
    const cplx t = eg.trace();
    return left == AtomLevel::kExcited ? t : std::conj(t);
}

CavityBlockModel::CavityBlockModel(const ChannelParams& params, FockTruncation truncation)
    : params_(params), dim_(truncation.dim) {
    params_.validate();
    if (dim_ < 2) throw ParameterError("Fock truncation needs at least 2 levels");
    const double tail = coherent_tail(params_.mean_photons(), dim_);
    if (tail >= kTailBound) {
        std::ostringstream os;
        os << "Fock dimension " << dim_ << " too small for |alpha|^2 = " << params_.mean_photons()
           << " (tail " << tail << " >= " << kTailBound << ")";
        throw ParameterError(os.str());
    }
    energy_e_.resize(dim_);
    energy_g_.resize(dim_);
    for (int n = 0; n < dim_; ++n) {
        energy_e_(n) = n + 1.0;
        energy_g_(n) = -static_cast<double>(n);
    }
    ladder_.resize(dim_ - 1);
    for (int n = 1; n < dim_; ++n) ladder_(n - 1) = std::sqrt(static_cast<double>(n));
}

Eigen::MatrixXcd CavityBlockModel::annihilation() const {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (int n = 1; n < dim_; ++n) a(n - 1, n) = ladder_(n - 1);
    return a;
}

const Eigen::VectorXd& CavityBlockModel::energies(AtomLevel level) const {
    return level == AtomLevel::kExcited ? energy_e_ : energy_g_;
}

Eigen::MatrixXcd CavityBlockModel::derivative(AtomLevel left, AtomLevel right, const Eigen::MatrixXcd& x) const {
    const Eigen::VectorXd& hl = energies(left);
    const Eigen::VectorXd& hr = energies(right);
    const double k = params_.kappa;
    Eigen::MatrixXcd dx(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
        for (int i = 0; i < dim_; ++i) {
            cplx v = cplx(-k * (i + j), -(hl(i) - hr(j))) * x(i, j);
            if (i + 1 < dim_ && j + 1 < dim_) v += 2.0 * k * ladder_(i) * ladder_(j) * x(i + 1, j + 1);
            dx(i, j) = v;
        }
    }
    return dx;
}

CavityBlocks CavityBlockModel::initial_blocks() const {
    Eigen::VectorXcd psi(dim_);
    psi(0) = 1.0;
    for (int n = 1; n < dim_; ++n) psi(n) = psi(n - 1) * params_.alpha / std::sqrt(static_cast<double>(n));
    psi.normalize();
    const Eigen::MatrixXcd proj = psi * psi.adjoint();
    return {proj, proj, proj};
}

double CavityBlockModel::spectral_radius_bound() const {
    // The generator couples X_ij only to X_{i+1,j+1}, so it is triangular and
    // its eigenvalues are the diagonal rates.
    double radius = 0.0;
    for (auto [l, r] : {std::pair{AtomLevel::kExcited, AtomLevel::kExcited},
                        std::pair{AtomLevel::kExcited, AtomLevel::kGround},
                        std::pair{AtomLevel::kGround, AtomLevel::kGround}}) {
        const Eigen::VectorXd& hl = energies(l);
        const Eigen::VectorXd& hr = energies(r);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                radius = std::max(radius, std::hypot(hl(i) - hr(j), params_.kappa * (i + j)));
    }
    return radius;
}

CavityBlockModel build_superoperator_blocks(const ChannelParams& params, FockTruncation truncation) {
    return CavityBlockModel(params, truncation);
}

Trajectory integrate(const XStateParams& c, const ChannelParams& params, FockTruncation truncation,
                     const IntegrationOptions& options) {
    if (auto report = validate_physicality(c); !report) {
        throw ParameterError("x state rejected: " + report.describe());
    }
    if (!(options.step > 0.0) || !(options.sample_interval > 0.0) || !(options.tau_max >= 0.0)) {
        throw ParameterError("integration: step, sample interval and tau_max must be positive");
    }
    const double ratio = options.sample_interval / options.step;
    const long steps_per_sample = std::lround(ratio);
    if (steps_per_sample < 1 || std::abs(ratio - steps_per_sample) > 1e-6 * ratio) {
        throw ParameterError("integration: sample interval must be a whole number of steps");
    }

    const CavityBlockModel model(params, truncation);
    if (options.step * model.spectral_radius_bound() > kStabilityRadius) {
        std::ostringstream os;
        os << "RK4 step " << options.step << " unstable for spectral radius " << model.spectral_radius_bound();
        throw StepSizeError(os.str());
    }

    const TwoQubitDensityMatrix rho0 = x_state_density(c);
    CavityBlocks blocks = model.initial_blocks();
    const auto E = AtomLevel::kExcited;
    const auto G = AtomLevel::kGround;

    Trajectory traj;
    const long samples = static_cast<long>(std::floor(options.tau_max / options.sample_interval + 1e-9)) + 1;
    traj.tau.reserve(samples);
    traj.states.reserve(samples);

    auto record = [&](double tau) {
        const double drift = std::max(std::abs(blocks.ee.trace() - 1.0), std::abs(blocks.gg.trace() - 1.0));
        if (!std::isfinite(drift) || drift > kDriftLimit) {
            std::ostringstream os;
            os << "trace drift " << drift << " at tau = " << tau << " exceeds " << kDriftLimit;
            throw StepSizeError(os.str());
        }
        traj.max_trace_drift = std::max(traj.max_trace_drift, drift);

        cplx tr[2][2];
        for (int l = 0; l < 2; ++l)
            for (int r = 0; r < 2; ++r) tr[l][r] = blocks.trace(static_cast<AtomLevel>(l), static_cast<AtomLevel>(r));
        Eigen::Matrix4cd m;
        for (int row = 0; row < 4; ++row) {
            for (int col = 0; col < 4; ++col) {
                const int a = row / 2, b = row % 2, ap = col / 2, bp = col % 2;
                m(row, col) = rho0(row, col) * tr[a][ap] * tr[b][bp];
            }
        }
        traj.tau.push_back(tau);
        traj.states.emplace_back(m);
    };

    record(0.0);
    const double h = options.step;
    long step_index = 0;
    for (long s = 1; s < samples; ++s) {
        for (long k = 0; k < steps_per_sample; ++k, ++step_index) {
            const double t = step_index * h;
            rk4_step(blocks.ee, t, h, [&](double, const Eigen::MatrixXcd& x) { return model.derivative(E, E, x); });
            rk4_step(blocks.eg, t, h, [&](double, const Eigen::MatrixXcd& x) { return model.derivative(E, G, x); });
            rk4_step(blocks.gg, t, h, [&](double, const Eigen::MatrixXcd& x) { return model.derivative(G, G, x); });
        }
        record(s * options.sample_interval);
    }
    return traj;
}

double trace_distance(const TwoQubitDensityMatrix& a, const TwoQubitDensityMatrix& b) {
    const Eigen::Matrix4cd diff = a.matrix() - b.matrix();
    const Eigen::Matrix4cd sym = 0.5 * (diff + diff.adjoint());
    const Eigen::Vector4d eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(sym, Eigen::EigenvaluesOnly).eigenvalues();
    return 0.5 * eig.cwiseAbs().sum();
}

}  // namespace cavdiscord
