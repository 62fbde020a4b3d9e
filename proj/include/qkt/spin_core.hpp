#pragma once

#include "qkt/common.hpp"

#include <cmath>

namespace qkt {

// Collective spin operators for N spin-1/2 particles restricted to the maximal
// irrep j = N/2, in the |j,m> basis with m ascending from -j to +j. Index 0 is
// the lowest-weight state m = -j.
struct SpinIrrep {
    int n_spins = 0;  // N
    double j = 0.0;   // N/2
    int dim = 0;      // N+1
    Matrix jx, jy, jz;

    double m_value(int k) const { return -j + double(k); }
};

// Builds Jx, Jy, Jz from the ladder elements <j,m±1|J±|j,m> = sqrt(j(j+1) - m(m±1)).
inline SpinIrrep build_irrep(int n_spins) {
    if (n_spins < 1) {
        throw std::invalid_argument("build_irrep: spin count must be a positive integer");
    }
    SpinIrrep ir;
    ir.n_spins = n_spins;
    ir.j = 0.5 * double(n_spins);
    ir.dim = n_spins + 1;

    Matrix jp = Matrix::Zero(ir.dim, ir.dim);  // raising operator J+
    ir.jz = Matrix::Zero(ir.dim, ir.dim);
    for (int k = 0; k < ir.dim; ++k) {
        const double m = ir.m_value(k);
        ir.jz(k, k) = m;
        if (k + 1 < ir.dim) {
            jp(k + 1, k) = std::sqrt(ir.j * (ir.j + 1.0) - m * (m + 1.0));
        }
    }
    const Matrix jm = jp.adjoint();
    ir.jx = 0.5 * (jp + jm);
    ir.jy = cplx(0.0, -0.5) * (jp - jm);
    return ir;
}

// exp(scale*A) for Hermitian A, via spectral decomposition. Exact to eigensolver
// precision; unitary whenever scale is purely imaginary.
inline Matrix hermitian_exp(const Matrix& a, cplx scale) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("hermitian_exp: matrix must be square");
    }
    if (!is_hermitian(a, 1e-12)) {
        throw std::invalid_argument("hermitian_exp: matrix is not Hermitian within 1e-12");
    }
    if (scale == cplx(0.0, 0.0)) {
        return Matrix::Identity(a.rows(), a.cols());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_exp: eigensolver failed");
    }
    Vector d(a.rows());
    for (Eigen::Index k = 0; k < a.rows(); ++k) {
        d(k) = std::exp(scale * es.eigenvalues()(k));
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

// Spectral decomposition of a Hermitian operator: ascending eigenvalues, column k
// of `vectors` the unit eigenvector of values[k].
struct EigenSystem {
    RealVector values;
    Matrix vectors;
};

inline EigenSystem eigensystem(const Matrix& hermitian) {
    if (!is_hermitian(hermitian, 1e-12)) {
        throw std::invalid_argument("eigensystem: matrix is not Hermitian within 1e-12");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigensystem: eigensolver failed");
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

inline EigenSystem jy_eigensystem(const SpinIrrep& ir) {
    return eigensystem(ir.jy);
}

// Spin coherent state |theta,phi>: the lowest-weight state rotated to point along
// the (theta, phi) Bloch direction.
struct CoherentState {
    double theta = 0.0;
    double phi = 0.0;
    Vector psi;
};

inline CoherentState coherent_state(const SpinIrrep& ir, double theta, double phi) {
    const Matrix generator = std::sin(phi) * ir.jx - std::cos(phi) * ir.jy;
    Vector psi = Vector::Zero(ir.dim);
    psi(0) = 1.0;  // |j,-j>
    psi = hermitian_exp(generator, cplx(0.0, -theta)) * psi;
    return {theta, phi, std::move(psi)};
}

// exp(i*theta*Jy)|j,-j> from a cached Jy eigensystem.
inline Vector rotated_lowest_weight(const EigenSystem& jy, double theta) {
    const Eigen::Index d = jy.vectors.rows();
    Vector coeffs = jy.vectors.row(0).adjoint();  // <lambda_k|j,-j>
    for (Eigen::Index k = 0; k < d; ++k) {
        coeffs(k) *= std::polar(1.0, theta * jy.values(k));
    }
    return jy.vectors * coeffs;
}

// Same amplitudes as coherent_state(ir, theta, phi).psi, but O(dim^2) given a
// cached Jy eigensystem. Uses the exact operator identity
//   exp(-i theta (sin(phi) Jx - cos(phi) Jy)) = exp(-i phi Jz) exp(i theta Jy) exp(i phi Jz),
// under which component k of the rotated lowest-weight state picks up e^{-i k phi}.
inline Vector coherent_amplitudes(const SpinIrrep& ir, const EigenSystem& jy,
                                  double theta, double phi) {
    Vector psi = rotated_lowest_weight(jy, theta);
    for (int k = 0; k < ir.dim; ++k) {
        psi(k) *= std::polar(1.0, -phi * double(k));
    }
    return psi;
}

inline cplx expectation(const Matrix& op, const Vector& psi) {
    return psi.dot(op * psi);
}

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// Normalized expectations <J_alpha>/j; the classical-map coordinates of a state.
inline BlochVector bloch_expectation(const SpinIrrep& ir, const Vector& psi) {
    return {expectation(ir.jx, psi).real() / ir.j,
            expectation(ir.jy, psi).real() / ir.j,
            expectation(ir.jz, psi).real() / ir.j};
}

}  // namespace qkt
