#pragma once

#include "qkt/spin_core.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace qkt {

// Drive parameters. tau/dt must be a whole number of steps so that kick times
// land exactly on the sample grid.
struct FloquetConfig {
    double kappa = 3.0;
    double p = pi / 2.0;
    double tau = 1.0;
    double dt = 0.05;
    int n_kicks = 50;

    int steps_per_period() const {
        if (!(tau > 0.0) || !(dt > 0.0)) {
            throw std::invalid_argument("FloquetConfig: tau and dt must be positive");
        }
        const double ratio = tau / dt;
        const long k = std::lround(ratio);
        if (k < 1 || std::abs(ratio - double(k)) > 1e-9 * std::max(1.0, ratio)) {
            throw std::invalid_argument("FloquetConfig: tau/dt must be a whole number of steps >= 1");
        }
        return int(k);
    }

    int total_steps() const {
        if (n_kicks < 0) {
            throw std::invalid_argument("FloquetConfig: n_kicks must be >= 0");
        }
        return n_kicks * steps_per_period();
    }

    void validate() const { (void)total_steps(); }
};

inline Matrix kick_unitary(const SpinIrrep& ir, double p) {
    return hermitian_exp(ir.jy, cplx(0.0, -p));
}

// Diagonal entries of exp(-i (kappa/2j tau) Jz^2 duration); the twist never
// leaves the Dicke diagonal.
inline Vector twist_phases(const SpinIrrep& ir, double kappa, double tau, double duration) {
    if (duration < 0.0) {
        throw std::invalid_argument("twist: duration must be >= 0");
    }
    const double g = kappa / (2.0 * ir.j * tau);
    Vector ph(ir.dim);
    for (int k = 0; k < ir.dim; ++k) {
        const double m = ir.m_value(k);
        ph(k) = std::polar(1.0, -g * m * m * duration);
    }
    return ph;
}

inline Matrix twist_unitary(const SpinIrrep& ir, double kappa, double tau, double duration) {
    return Matrix(twist_phases(ir, kappa, tau, duration).asDiagonal());
}

// Accumulates U_t on the dt grid: one twist step per dt, with the kick folded in
// at the end of each full period, so that U(n tau) = (U_kick U_twist(tau))^n.
// Generic over the pair (kick matrix, per-step twist diagonal) so the same loop
// drives both the Dicke-basis and the full 2^N-space evolutions.
class UnitaryAccumulator {
public:
    UnitaryAccumulator(Matrix kick, Vector twist_step, const FloquetConfig& config)
        : kick_(std::move(kick)),
          twist_step_(std::move(twist_step)),
          config_(config),
          steps_per_period_(config.steps_per_period()),
          u_(Matrix::Identity(kick_.rows(), kick_.cols())) {
        config_.validate();
        if (kick_.rows() != kick_.cols() || kick_.rows() != twist_step_.size()) {
            throw std::invalid_argument("UnitaryAccumulator: kick/twist dimensions disagree");
        }
    }

    UnitaryAccumulator(const SpinIrrep& ir, const FloquetConfig& config)
        : UnitaryAccumulator(kick_unitary(ir, config.p),
                             twist_phases(ir, config.kappa, config.tau, config.dt),
                             config) {}

    void advance() {
        ++step_;
        u_ = twist_step_.asDiagonal() * u_;
        if (step_ % steps_per_period_ == 0) {
            u_ = kick_ * u_;
        }
    }

    int step() const { return step_; }
    double time() const { return double(step_) * config_.dt; }
    bool at_kick() const { return step_ > 0 && step_ % steps_per_period_ == 0; }
    bool done() const { return step_ >= config_.total_steps(); }
    const Matrix& unitary() const { return u_; }
    const FloquetConfig& config() const { return config_; }

private:
    Matrix kick_;
    Vector twist_step_;
    FloquetConfig config_;
    int steps_per_period_;
    int step_ = 0;
    Matrix u_;
};

// Same schedule applied to a state vector instead of the full unitary; O(dim)
// per twist step, one matvec per kick.
class StateEvolver {
public:
    StateEvolver(const SpinIrrep& ir, const FloquetConfig& config, Vector psi0)
        : kick_(kick_unitary(ir, config.p)),
          twist_step_(twist_phases(ir, config.kappa, config.tau, config.dt)),
          config_(config),
          steps_per_period_(config.steps_per_period()),
          psi_(std::move(psi0)) {
        config_.validate();
        require_unit_norm(psi_);
    }

    void advance() {
        ++step_;
        psi_ = twist_step_.cwiseProduct(psi_);
        if (step_ % steps_per_period_ == 0) {
            psi_ = kick_ * psi_;
        }
    }

    int step() const { return step_; }
    double time() const { return double(step_) * config_.dt; }
    bool done() const { return step_ >= config_.total_steps(); }
    const Vector& state() const { return psi_; }

private:
    Matrix kick_;
    Vector twist_step_;
    FloquetConfig config_;
    int steps_per_period_;
    int step_ = 0;
    Vector psi_;
};

struct ScheduleSample {
    double t = 0.0;
    Matrix u;
};

// The full (t, U_t) grid at t = 0, dt, ..., n_kicks*tau. For large dim prefer
// driving UnitaryAccumulator directly instead of materializing every snapshot.
inline std::vector<ScheduleSample> evolve_schedule(const FloquetConfig& config, const SpinIrrep& ir) {
    UnitaryAccumulator acc(ir, config);
    std::vector<ScheduleSample> samples;
    samples.reserve(size_t(config.total_steps()) + 1);
    samples.push_back({acc.time(), acc.unitary()});
    while (!acc.done()) {
        acc.advance();
        samples.push_back({acc.time(), acc.unitary()});
    }
    return samples;
}

// State after the full schedule, t = n_kicks*tau.
inline Vector evolved_state(const SpinIrrep& ir, const FloquetConfig& config, Vector psi0) {
    StateEvolver ev(ir, config, std::move(psi0));
    while (!ev.done()) {
        ev.advance();
    }
    return ev.state();
}

}  // namespace qkt
