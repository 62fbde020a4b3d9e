#pragma once

#include "qkt/floquet.hpp"
#include "qkt/state_diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

namespace qkt {

// 4^N channel states and their reductions get large fast; 8 qubits is a 65536-dim
// state with up to 512-dim reduced matrices.
inline constexpr int max_channel_qubits = 8;

// Basis convention for multi-qubit indices: qubit q occupies bit (n_total-1-q),
// i.e. qubit 0 is the most significant bit. Bit value 0 is the sigma_z = +1 state,
// so a basis index with k set bits carries Jz eigenvalue (N - 2k)/2.

inline void check_channel_capacity(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("channel: qubit count must be >= 1");
    }
    if (n_qubits > max_channel_qubits) {
        throw CapacityError("channel: qubit count exceeds the supported maximum of 8 "
                            "(4^N channel state would not fit)");
    }
}

// Collective Jy = (1/2) sum_i sigma_y^i on the full 2^N space.
inline Matrix full_space_jy(int n_qubits) {
    check_channel_capacity(n_qubits);
    const int dim = 1 << n_qubits;
    Matrix jy = Matrix::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) {
        for (int q = 0; q < n_qubits; ++q) {
            const int pos = n_qubits - 1 - q;
            const int flipped = b ^ (1 << pos);
            // sigma_y |0> = i|1>, sigma_y |1> = -i|0>
            jy(flipped, b) += ((b >> pos) & 1) ? cplx(0.0, -0.5) : cplx(0.0, 0.5);
        }
    }
    return jy;
}

// Diagonal of collective Jz on the full space.
inline RealVector full_space_jz_diag(int n_qubits) {
    check_channel_capacity(n_qubits);
    const int dim = 1 << n_qubits;
    RealVector d(dim);
    for (int b = 0; b < dim; ++b) {
        d(b) = 0.5 * double(n_qubits - 2 * std::popcount(unsigned(b)));
    }
    return d;
}

// The kicked-top schedule with full-space generators; j = N/2 in the twist
// coupling as in the Dicke-basis engine.
inline UnitaryAccumulator full_space_accumulator(int n_qubits, const FloquetConfig& config) {
    check_channel_capacity(n_qubits);
    config.validate();
    const Matrix kick = hermitian_exp(full_space_jy(n_qubits), cplx(0.0, -config.p));
    const RealVector jz = full_space_jz_diag(n_qubits);
    const double g = config.kappa / (double(n_qubits) * config.tau);  // kappa / (2 j tau)
    Vector twist_step(jz.size());
    for (Eigen::Index k = 0; k < jz.size(); ++k) {
        twist_step(k) = std::polar(1.0, -g * jz(k) * jz(k) * config.dt);
    }
    return UnitaryAccumulator(kick, twist_step, config);
}

struct FullSpaceUnitary {
    int n_qubits = 0;
    Matrix u;
};

// Full 2^N-dim kicked-top unitary at sample time t (t must lie on the dt grid).
inline FullSpaceUnitary lift_floquet(int n_qubits, const FloquetConfig& config, double t) {
    UnitaryAccumulator acc = full_space_accumulator(n_qubits, config);
    const long steps = std::lround(t / config.dt);
    if (steps < 0 || steps > config.total_steps() ||
        std::abs(t - double(steps) * config.dt) > 1e-9 * std::max(1.0, std::abs(t))) {
        throw std::invalid_argument("lift_floquet: t must be a sample time within the schedule");
    }
    while (acc.step() < steps) {
        acc.advance();
    }
    return {n_qubits, acc.unitary()};
}

// Isometry from the (N+1)-dim Dicke basis into the 2^N space: |j,m> with
// m = -j+i maps to the normalized sum of basis states with N-i set bits.
inline Matrix symmetric_embedding_isometry(int n_qubits) {
    check_channel_capacity(n_qubits);
    const int dim = 1 << n_qubits;
    std::vector<double> binom(size_t(n_qubits) + 1, 1.0);
    for (int k = 1; k <= n_qubits; ++k) {
        binom[k] = binom[k - 1] * double(n_qubits - k + 1) / double(k);
    }
    Matrix iso = Matrix::Zero(dim, n_qubits + 1);
    for (int b = 0; b < dim; ++b) {
        const int ones = std::popcount(unsigned(b));
        iso(b, n_qubits - ones) = 1.0 / std::sqrt(binom[size_t(ones)]);
    }
    return iso;
}

// |U> = (1/2^{N/2}) sum_{m,m'} u_{m',m} |m>_in |m'>_out as a 4^N vector; the
// input register occupies qubits 0..N-1 (high bits), outputs N..2N-1 (low bits).
inline Vector channel_state(const FullSpaceUnitary& fu) {
    const int dim = int(fu.u.rows());
    const double scale = 1.0 / std::sqrt(double(dim));
    Vector state(size_t(dim) * dim);
    for (int m = 0; m < dim; ++m) {
        for (int mp = 0; mp < dim; ++mp) {
            state(size_t(m) * dim + mp) = scale * fu.u(mp, m);
        }
    }
    return state;
}

// Partial trace of a pure state onto the `keep` qubits, by gathering the state
// into a (kept x environment) matrix and forming Psi Psi^dag.
inline Matrix reduced_density(const Vector& state, int n_total_qubits, std::vector<int> keep) {
    const size_t full_dim = size_t(1) << n_total_qubits;
    if (state.size() != Eigen::Index(full_dim)) {
        throw std::invalid_argument("reduced_density: state size does not match qubit count");
    }
    if (keep.empty()) {
        throw std::invalid_argument("reduced_density: subset must be nonempty");
    }
    std::sort(keep.begin(), keep.end());
    if (keep.front() < 0 || keep.back() >= n_total_qubits ||
        std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
        throw std::invalid_argument("reduced_density: subset out of range or duplicated");
    }

    std::vector<int> keep_pos, env_pos;
    for (int q = 0; q < n_total_qubits; ++q) {
        const int pos = n_total_qubits - 1 - q;
        if (std::binary_search(keep.begin(), keep.end(), q)) {
            keep_pos.push_back(pos);
        } else {
            env_pos.push_back(pos);
        }
    }
    const size_t dim_keep = size_t(1) << keep_pos.size();
    const size_t dim_env = size_t(1) << env_pos.size();
    Matrix psi_mat(dim_keep, dim_env);
    for (size_t idx = 0; idx < full_dim; ++idx) {
        size_t a = 0;
        for (int pos : keep_pos) a = (a << 1) | ((idx >> pos) & 1u);
        size_t e = 0;
        for (int pos : env_pos) e = (e << 1) | ((idx >> pos) & 1u);
        psi_mat(a, e) = state(idx);
    }
    return psi_mat * psi_mat.adjoint();
}

inline double subsystem_entropy(const Vector& state, int n_total_qubits,
                                const std::vector<int>& subset) {
    return von_neumann_entropy(reduced_density(state, n_total_qubits, subset));
}

// All entropies of the A / C / D partition computed directly from partial
// traces; the identities S_A = S_C = 1, S_CD = N, S_ACD = N-1 are checked by
// tests rather than assumed. S_B follows from purity (complement of B is ACD).
struct TmiReport {
    double s_a = 0.0, s_b = 0.0, s_c = 0.0, s_d = 0.0;
    double s_ac = 0.0, s_ad = 0.0, s_cd = 0.0, s_acd = 0.0;
    double i_ac = 0.0, i_ad = 0.0, i_acd = 0.0;
    double i3 = 0.0;
};

// A = input qubit a, C = output qubit c, D = the other N-1 outputs.
inline TmiReport tmi(const Vector& channel_psi, int n_qubits, int a = 0, int c = 0) {
    check_channel_capacity(n_qubits);
    if (a < 0 || a >= n_qubits || c < 0 || c >= n_qubits) {
        throw std::invalid_argument("tmi: partition indices out of range");
    }
    const int n_total = 2 * n_qubits;
    const std::vector<int> qa{a};
    const std::vector<int> qc{n_qubits + c};
    std::vector<int> qd;
    for (int i = 0; i < n_qubits; ++i) {
        if (i != c) qd.push_back(n_qubits + i);
    }
    auto join = [](const std::vector<int>& u, const std::vector<int>& v) {
        std::vector<int> out = u;
        out.insert(out.end(), v.begin(), v.end());
        return out;
    };
    std::vector<int> q_outputs = join(qc, qd);

    TmiReport r;
    r.s_a = subsystem_entropy(channel_psi, n_total, qa);
    r.s_c = subsystem_entropy(channel_psi, n_total, qc);
    r.s_d = subsystem_entropy(channel_psi, n_total, qd);
    r.s_ac = subsystem_entropy(channel_psi, n_total, join(qa, qc));
    r.s_ad = subsystem_entropy(channel_psi, n_total, join(qa, qd));
    r.s_cd = subsystem_entropy(channel_psi, n_total, q_outputs);
    r.s_acd = subsystem_entropy(channel_psi, n_total, join(qa, q_outputs));
    r.s_b = r.s_acd;  // global state is pure
    r.i_ac = r.s_a + r.s_c - r.s_ac;
    r.i_ad = r.s_a + r.s_d - r.s_ad;
    r.i_acd = r.s_a + r.s_cd - r.s_acd;
    r.i3 = r.i_ac + r.i_ad - r.i_acd;
    return r;
}

struct TmiSample {
    double t = 0.0;
    TmiReport report;
};

inline std::vector<TmiSample> tmi_series(int n_qubits, const FloquetConfig& config,
                                         int a = 0, int c = 0) {
    UnitaryAccumulator acc = full_space_accumulator(n_qubits, config);
    std::vector<TmiSample> out;
    out.reserve(size_t(config.total_steps()) + 1);
    auto sample = [&] {
        const Vector psi = channel_state({n_qubits, acc.unitary()});
        out.push_back({acc.time(), tmi(psi, n_qubits, a, c)});
    };
    sample();
    while (!acc.done()) {
        acc.advance();
        sample();
    }
    return out;
}

}  // namespace qkt
