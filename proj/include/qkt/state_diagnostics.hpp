#pragma once

#include "qkt/floquet.hpp"

#include <cmath>

namespace qkt {

// Husimi Q values on a uniform (theta, phi) grid; theta in [0, pi], phi in
// [-pi, pi], endpoints included.
struct PhaseSpaceGrid {
    RealVector thetas;
    RealVector phis;
    RealMatrix q;  // thetas.size() x phis.size()
};

// Q(theta, phi) = |<theta,phi|psi>|^2 at a single phase-space point.
inline double husimi_q_at(const SpinIrrep& ir, const EigenSystem& jy, const Vector& psi,
                          double theta, double phi) {
    const Vector coh = coherent_amplitudes(ir, jy, theta, phi);
    return std::norm(coh.dot(psi));
}

inline PhaseSpaceGrid husimi_q(const SpinIrrep& ir, const Vector& psi,
                               int n_theta = 201, int n_phi = 201) {
    require_unit_norm(psi);
    if (n_theta < 2 || n_phi < 2) {
        throw std::invalid_argument("husimi_q: grid needs at least 2 nodes per axis");
    }
    const EigenSystem jy = jy_eigensystem(ir);
    PhaseSpaceGrid g;
    g.thetas = RealVector::LinSpaced(n_theta, 0.0, pi);
    g.phis = RealVector::LinSpaced(n_phi, -pi, pi);
    g.q.resize(n_theta, n_phi);
    // One y-rotation per theta row; each node is then a phase-twisted dot product.
    for (int it = 0; it < n_theta; ++it) {
        const Vector rot = rotated_lowest_weight(jy, g.thetas(it));
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = g.phis(ip);
            cplx overlap = 0.0;
            for (int k = 0; k < ir.dim; ++k) {
                overlap += std::conj(rot(k)) * std::polar(1.0, phi * double(k)) * psi(k);
            }
            g.q(it, ip) = std::norm(overlap);
        }
    }
    return g;
}

// Reduced state of one spin out of the symmetric N-spin state, via the Bloch
// vector b = 2<J>/N. Exact for states in the maximal irrep, O(dim^2).
struct QubitDensity {
    Eigen::Matrix2cd rho;
};

inline QubitDensity single_spin_rdm(const SpinIrrep& ir, const Vector& psi) {
    require_unit_norm(psi);
    const BlochVector b = bloch_expectation(ir, psi);  // <J>/j = 2<J>/N
    QubitDensity qd;
    qd.rho << cplx(0.5 * (1.0 + b.z), 0.0), 0.5 * cplx(b.x, -b.y),
              0.5 * cplx(b.x, b.y), cplx(0.5 * (1.0 - b.z), 0.0);
    return qd;
}

// -sum lambda log2 lambda over the spectrum, eigenvalues below 1e-14 dropped.
inline double von_neumann_entropy(const Matrix& rho) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("von_neumann_entropy: matrix must be square");
    }
    const cplx tr = rho.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > 1e-8) {
        throw std::invalid_argument("von_neumann_entropy: trace must equal 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("von_neumann_entropy: eigensolver failed");
    }
    double s = 0.0;
    for (Eigen::Index k = 0; k < rho.rows(); ++k) {
        const double lambda = es.eigenvalues()(k);
        if (lambda > 1e-14) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

inline double von_neumann_entropy(const QubitDensity& qd) {
    return von_neumann_entropy(Matrix(qd.rho));
}

struct EntropySeries {
    std::vector<double> times;
    std::vector<double> bits;
};

// Single-spin entanglement entropy along the drive.
inline EntropySeries entropy_series(const SpinIrrep& ir, const FloquetConfig& config,
                                    Vector psi0) {
    StateEvolver ev(ir, config, std::move(psi0));
    EntropySeries out;
    out.times.reserve(size_t(config.total_steps()) + 1);
    auto sample = [&] {
        out.times.push_back(ev.time());
        out.bits.push_back(von_neumann_entropy(single_spin_rdm(ir, ev.state())));
    };
    sample();
    while (!ev.done()) {
        ev.advance();
        sample();
    }
    return out;
}

}  // namespace qkt
