#pragma once

#include "qkt/floquet.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace qkt {

// The butterfly pair V = W(0), an exponential of Jy scaled by 1/sqrt(2j).
// Unitary puts an i in the exponent so the commutator/OTOC identity
// C = 2(1 - Re F) holds; HermitianLiteral keeps the positive-definite
// exponential exp(Jy/sqrt(2j)). Both variants share the Jy eigenvectors, so
// every projector-only quantity (the quasiprobability, Ntilde) is variant
// independent.
enum class ButterflyVariant { Unitary, HermitianLiteral };

struct ButterflyOperators {
    ButterflyVariant variant = ButterflyVariant::Unitary;
    double generator_scale = 0.0;  // 1/sqrt(2j)
    EigenSystem basis;             // shared Jy eigensystem, ascending eigenvalues
    Vector eigenvalues;            // per-variant eigenvalue of V on basis column k
    Matrix v;                      // dense V = W(0)
};

inline ButterflyOperators make_butterfly(const SpinIrrep& ir, ButterflyVariant variant) {
    ButterflyOperators ops;
    ops.variant = variant;
    ops.generator_scale = 1.0 / std::sqrt(2.0 * ir.j);
    ops.basis = jy_eigensystem(ir);
    ops.eigenvalues.resize(ir.dim);
    for (int k = 0; k < ir.dim; ++k) {
        const double m = ir.m_value(k);  // Jy spectrum is exactly {-j..j}, ascending
        ops.eigenvalues(k) = variant == ButterflyVariant::Unitary
                                 ? cplx(std::polar(1.0, ops.generator_scale * m))
                                 : cplx(std::exp(ops.generator_scale * m), 0.0);
    }
    ops.v = ops.basis.vectors * ops.eigenvalues.asDiagonal() * ops.basis.vectors.adjoint();
    return ops;
}

// <psi| [W(t),V]^dag [W(t),V] |psi> with W(t) = U_t^dag W U_t, evaluated as the
// squared norm of the commutator acting on |psi>. Matvecs only.
inline double compute_C(const Matrix& u_t, const ButterflyOperators& ops, const Vector& psi) {
    require_unit_norm(psi);
    const Matrix& v = ops.v;
    auto heisenberg_w = [&](const Vector& x) { return Vector(u_t.adjoint() * (v * (u_t * x))); };
    const Vector commuted = heisenberg_w(v * psi) - v * heisenberg_w(psi);
    return commuted.squaredNorm();
}

// The out-of-time-ordered correlator <psi| W^dag(t) V^dag W(t) V |psi>.
inline cplx compute_F(const Matrix& u_t, const ButterflyOperators& ops, const Vector& psi) {
    require_unit_norm(psi);
    const Matrix& v = ops.v;
    Vector x = v * psi;
    x = u_t.adjoint() * (v * (u_t * x));            // W(t) V psi
    x = v.adjoint() * x;                            // V^dag W(t) V psi
    x = u_t.adjoint() * (v.adjoint() * (u_t * x));  // W^dag(t) V^dag W(t) V psi
    return psi.dot(x);
}

// Four-index quasiprobability p(v1, w2, v2, w3), ascending Jy eigenvalue index
// in every slot, v1 slowest / w3 fastest in memory.
struct QuasiprobTensor {
    double t = 0.0;
    int dim = 0;
    std::vector<cplx> values;

    const cplx& at(int v1, int w2, int v2, int w3) const {
        return values[((size_t(v1) * dim + w2) * dim + v2) * dim + w3];
    }

    cplx sum() const {
        cplx acc = 0.0;
        for (const cplx& p : values) acc += p;
        return acc;
    }

    double sum_abs() const {
        double acc = 0.0;
        for (const cplx& p : values) acc += std::abs(p);
        return acc;
    }
};

// Direct expansion of the pure-state quasiprobability
//   p(v1,w2,v2,w3) = <psi|U^dag|w3><w3|U|v2><v2|U^dag|w2><w2|U|v1><v1|psi>.
// O(dim^4) storage; the oracle path against which nonclassicality_fast is checked.
inline QuasiprobTensor quasiprob_direct(const Matrix& u_t, const ButterflyOperators& ops,
                                        const Vector& psi, double t = 0.0) {
    require_unit_norm(psi);
    const Matrix& q = ops.basis.vectors;
    const int d = int(q.rows());
    const Vector s = q.adjoint() * psi;   // <v|psi>
    const Matrix m = q.adjoint() * u_t * q;  // <w|U|v>
    const Vector s_t = m * s;             // <w|U|psi>

    QuasiprobTensor qp;
    qp.t = t;
    qp.dim = d;
    qp.values.resize(size_t(d) * d * d * d);
    size_t idx = 0;
    for (int v1 = 0; v1 < d; ++v1) {
        for (int w2 = 0; w2 < d; ++w2) {
            const cplx left = m(w2, v1) * s(v1);
            for (int v2 = 0; v2 < d; ++v2) {
                const cplx mid = std::conj(m(w2, v2)) * left;
                for (int w3 = 0; w3 < d; ++w3) {
                    qp.values[idx++] = std::conj(s_t(w3)) * m(w3, v2) * mid;
                }
            }
        }
    }
    return qp;
}

// Eigenvalue-weighted sum over the tensor; reproduces compute_F.
inline cplx otoc_from_quasiprob(const QuasiprobTensor& qp, const ButterflyOperators& ops) {
    const int d = qp.dim;
    cplx acc = 0.0;
    size_t idx = 0;
    for (int v1 = 0; v1 < d; ++v1) {
        for (int w2 = 0; w2 < d; ++w2) {
            for (int v2 = 0; v2 < d; ++v2) {
                for (int w3 = 0; w3 < d; ++w3) {
                    acc += ops.eigenvalues(v1) * ops.eigenvalues(w2) *
                           std::conj(ops.eigenvalues(v2)) * std::conj(ops.eigenvalues(w3)) *
                           qp.values[idx++];
                }
            }
        }
    }
    return acc;
}

// Cumulative nonclassicality Ntilde = sum |p| - 1 via the factorized chain
//   |s_t|^T |M| |M|^T |M| |s| - 1,
// with s = <v|psi>, M = <w|U|v>, s_t = M s and |.| elementwise. O(dim^2) per
// evaluation once M exists; the dim^4 tensor is never materialized.
inline double nonclassicality_fast(const Matrix& u_t, const ButterflyOperators& ops,
                                   const Vector& psi) {
    require_unit_norm(psi);
    const Matrix& q = ops.basis.vectors;
    const Vector s = q.adjoint() * psi;
    const Matrix m = q.adjoint() * u_t * q;
    const RealVector s_abs = s.cwiseAbs();
    const RealVector st_abs = (m * s).cwiseAbs();
    const RealMatrix a = m.cwiseAbs();
    RealVector r = a.transpose() * st_abs;
    r = a * r;
    r = a.transpose() * r;
    return r.dot(s_abs) - 1.0;
}

struct OtocSeries {
    std::vector<double> times;
    std::vector<cplx> f;
    std::vector<double> c;
};

inline OtocSeries otoc_series(const SpinIrrep& ir, const FloquetConfig& config,
                              const ButterflyOperators& ops, const Vector& psi0) {
    require_unit_norm(psi0);
    UnitaryAccumulator acc(ir, config);
    OtocSeries out;
    out.times.reserve(size_t(config.total_steps()) + 1);
    auto sample = [&] {
        out.times.push_back(acc.time());
        out.f.push_back(compute_F(acc.unitary(), ops, psi0));
        out.c.push_back(compute_C(acc.unitary(), ops, psi0));
    };
    sample();
    while (!acc.done()) {
        acc.advance();
        sample();
    }
    return out;
}

struct NonclassicalitySeries {
    std::vector<double> times;
    std::vector<double> n;
};

inline NonclassicalitySeries nonclassicality_series(const SpinIrrep& ir, const FloquetConfig& config,
                                                    const ButterflyOperators& ops, const Vector& psi0) {
    require_unit_norm(psi0);
    UnitaryAccumulator acc(ir, config);
    NonclassicalitySeries out;
    out.times.reserve(size_t(config.total_steps()) + 1);
    auto sample = [&] {
        out.times.push_back(acc.time());
        out.n.push_back(nonclassicality_fast(acc.unitary(), ops, psi0));
    };
    sample();
    while (!acc.done()) {
        acc.advance();
        sample();
    }
    return out;
}

}  // namespace qkt
