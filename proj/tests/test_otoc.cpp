#include "qkt/otoc.hpp"

#include "qkt/presets.hpp"
#include "test_support.hpp"

#include <catch2/catch.hpp>

using namespace qkt;

namespace {

Matrix unitary_at(const SpinIrrep& ir, const FloquetConfig& config, int n_kicks_elapsed) {
    UnitaryAccumulator acc(ir, config);
    const long target = long(n_kicks_elapsed) * config.steps_per_period();
    while (acc.step() < target) {
        acc.advance();
    }
    return acc.unitary();
}

// Oracle: the quasiprobability as a literal product of projectors,
// Tr(P_{w3}(t) P_{v2} P_{w2}(t) P_{v1} rho), with P_k(t) = U^dag P_k U.
cplx projector_product_oracle(const Matrix& u, const EigenSystem& basis, const Vector& psi,
                              int v1, int w2, int v2, int w3) {
    auto proj = [&](int k) {
        return Matrix(basis.vectors.col(k) * basis.vectors.col(k).adjoint());
    };
    const Matrix pw3 = u.adjoint() * proj(w3) * u;
    const Matrix pw2 = u.adjoint() * proj(w2) * u;
    const Matrix op = pw3 * proj(v2) * pw2 * proj(v1);
    return psi.dot(op * psi);
}

}  // namespace

TEST_CASE("unitary butterfly variant is unitary; literal variant is Hermitian") {
    const SpinIrrep ir = build_irrep(6);
    const ButterflyOperators uni = make_butterfly(ir, ButterflyVariant::Unitary);
    CHECK(max_abs(uni.v.adjoint() * uni.v - Matrix::Identity(ir.dim, ir.dim)) < 1e-11);

    const ButterflyOperators lit = make_butterfly(ir, ButterflyVariant::HermitianLiteral);
    CHECK(max_abs(lit.v - lit.v.adjoint()) < 1e-11);
    for (int k = 0; k < ir.dim; ++k) {
        CHECK(std::abs(lit.eigenvalues(k).real() -
                       std::exp(ir.m_value(k) / std::sqrt(2.0 * ir.j))) < 1e-12);
        CHECK(lit.eigenvalues(k).imag() == 0.0);
    }

    // both variants share the eigenprojector basis
    CHECK(max_abs(uni.basis.vectors - lit.basis.vectors) == 0.0);
}

TEST_CASE("butterfly exponentials match hermitian_exp of the scaled generator") {
    const SpinIrrep ir = build_irrep(5);
    const double scale = 1.0 / std::sqrt(2.0 * ir.j);
    const ButterflyOperators uni = make_butterfly(ir, ButterflyVariant::Unitary);
    CHECK(max_abs(uni.v - hermitian_exp(ir.jy, cplx(0.0, scale))) < 1e-11);
    const ButterflyOperators lit = make_butterfly(ir, ButterflyVariant::HermitianLiteral);
    CHECK(max_abs(lit.v - hermitian_exp(ir.jy, cplx(scale, 0.0))) < 1e-11);
}

TEST_CASE("C and F at t=0") {
    const SpinIrrep ir = build_irrep(5);
    const Matrix id = Matrix::Identity(ir.dim, ir.dim);
    const Vector psi = coherent_state(ir, 2.25, 2.0).psi;

    const ButterflyOperators uni = make_butterfly(ir, ButterflyVariant::Unitary);
    CHECK(compute_C(id, uni, psi) < 1e-10);
    CHECK(std::abs(compute_F(id, uni, psi) - cplx(1.0, 0.0)) < 1e-10);

    const ButterflyOperators lit = make_butterfly(ir, ButterflyVariant::HermitianLiteral);
    const cplx f0 = compute_F(id, lit, psi);
    const cplx direct = psi.dot(lit.v * lit.v * lit.v * lit.v * psi);
    CHECK(std::abs(f0 - direct) < 1e-10);
    CHECK(f0.real() >= 1.0);
    CHECK(std::abs(f0.imag()) < 1e-10);
}

TEST_CASE("C and F reject non-normalized states") {
    const SpinIrrep ir = build_irrep(3);
    const ButterflyOperators ops = make_butterfly(ir, ButterflyVariant::Unitary);
    const Vector bad = 2.0 * coherent_state(ir, 1.0, 1.0).psi;
    const Matrix id = Matrix::Identity(ir.dim, ir.dim);
    CHECK_THROWS_AS(compute_C(id, ops, bad), std::invalid_argument);
    CHECK_THROWS_AS(compute_F(id, ops, bad), std::invalid_argument);
    CHECK_THROWS_AS(nonclassicality_fast(id, ops, bad), std::invalid_argument);
}

TEST_CASE("commutator identity C = 2(1 - Re F) for the unitary variant") {
    const SpinIrrep ir = build_irrep(5);
    FloquetConfig config;
    config.n_kicks = 5;
    const ButterflyOperators ops = make_butterfly(ir, ButterflyVariant::Unitary);
    const Vector psi = coherent_state(ir, 2.25, 2.0).psi;
    const Matrix u = unitary_at(ir, config, 5);
    const double c = compute_C(u, ops, psi);
    const cplx f = compute_F(u, ops, psi);
    CHECK(std::abs(c - 2.0 * (1.0 - f.real())) < 1e-9);
}

TEST_CASE("C is nonnegative along the drive for every preset") {
    const SpinIrrep ir = build_irrep(5);
    FloquetConfig config;
    const ButterflyOperators ops = make_butterfly(ir, ButterflyVariant::Unitary);
    for (const auto& ic : initial_condition_presets) {
        const Vector psi = coherent_state(ir, ic.theta0, ic.phi0).psi;
        const OtocSeries series = otoc_series(ir, config, ops, psi);
        REQUIRE(series.times.size() == 1001);
        CHECK(std::abs(series.c.front()) < 1e-10);
        CHECK(std::abs(series.f.front() - cplx(1.0, 0.0)) < 1e-10);
        for (size_t i = 0; i < series.c.size(); ++i) {
            CHECK(series.c[i] >= -1e-12);
            CHECK(std::abs(series.c[i] - 2.0 * (1.0 - series.f[i].real())) < 1e-9);
        }
    }
}

TEST_CASE("quasiprob_direct matches a literal projector-product trace") {
    const SpinIrrep ir = build_irrep(3);
    FloquetConfig config;
    const ButterflyOperators ops = make_butterfly(ir, ButterflyVariant::Unitary);
    const Vector psi = coherent_state(ir, 2.25, 1.05).psi;
    const Matrix u = unitary_at(ir, config, 2);
    const QuasiprobTensor qp = quasiprob_direct(u, ops, psi, 2.0);
    for (int v1 = 0; v1 < ir.dim; ++v1) {
        for (int w2 = 0; w2 < ir.dim; ++w2) {
            for (int v2 = 0; v2 < ir.dim; ++v2) {
                for (int w3 = 0; w3 < ir.dim; ++w3) {
                    const cplx expect =
                        projector_product_oracle(u, ops.basis, psi, v1, w2, v2, w3);
                    CHECK(std::abs(qp.at(v1, w2, v2, w3) - expect) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("quasiprobability collapses to a diagonal distribution at t=0") {
    const SpinIrrep ir = build_irrep(4);
    const ButterflyOperators ops = make_butterfly(ir, ButterflyVariant::Unitary);
    const Vector psi = coherent_state(ir, 2.25, 0.63).psi;
    const Matrix id = Matrix::Identity(ir.dim, ir.dim);
    const QuasiprobTensor qp = quasiprob_direct(id, ops, psi, 0.0);
    const Vector s = ops.basis.vectors.adjoint() * psi;
    for (int v1 = 0; v1 < ir.dim; ++v1) {
        for (int w2 = 0; w2 < ir.dim; ++w2) {
            for (int v2 = 0; v2 < ir.dim; ++v2) {
                for (int w3 = 0; w3 < ir.dim; ++w3) {
                    const cplx p = qp.at(v1, w2, v2, w3);
                    if (v1 == w2 && w2 == v2 && v2 == w3) {
                        CHECK(std::abs(p - cplx(std::norm(s(v1)), 0.0)) < 1e-12);
                        CHECK(p.real() >= 0.0);
                    } else {
                        CHECK(std::abs(p) < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("quasiprobability sums to one and reproduces F") {
    const SpinIrrep ir = build_irrep(4);
    FloquetConfig config;
    const Vector psi = coherent_state(ir, 2.25, 2.0).psi;
    const Matrix u = unitary_at(ir, config, 3);
    for (ButterflyVariant variant : {ButterflyVariant::Unitary, ButterflyVariant::HermitianLiteral}) {
        const ButterflyOperators ops = make_butterfly(ir, variant);
        const QuasiprobTensor qp = quasiprob_direct(u, ops, psi, 3.0);
        CHECK(std::abs(qp.sum() - cplx(1.0, 0.0)) < 1e-10);
        CHECK(std::abs(otoc_from_quasiprob(qp, ops) - compute_F(u, ops, psi)) < 1e-10);
    }
}

TEST_CASE("nonclassicality vanishes at t=0") {
    const SpinIrrep ir = build_irrep(7);
    const ButterflyOperators ops = make_butterfly(ir, ButterflyVariant::Unitary);
    const Vector psi = coherent_state(ir, 2.25, 0.9).psi;
    const Matrix id = Matrix::Identity(ir.dim, ir.dim);
    CHECK(std::abs(nonclassicality_fast(id, ops, psi)) < 1e-12);
}

TEST_CASE("factorized nonclassicality equals the direct tensor sum") {
    FloquetConfig config;
    config.n_kicks = 7;
    for (int n : {2, 3, 4}) {
        const SpinIrrep ir = build_irrep(n);
        const ButterflyOperators ops = make_butterfly(ir, ButterflyVariant::Unitary);
        for (const auto& ic : initial_condition_presets) {
            const Vector psi = coherent_state(ir, ic.theta0, ic.phi0).psi;
            for (int kicks : {1, 3, 7}) {
                const Matrix u = unitary_at(ir, config, kicks);
                const double fast = nonclassicality_fast(u, ops, psi);
                const double direct = quasiprob_direct(u, ops, psi).sum_abs() - 1.0;
                CHECK(std::abs(fast - direct) < 1e-10);
            }
        }
    }
}

TEST_CASE("nonclassicality is variant independent") {
    FloquetConfig config;
    config.n_kicks = 5;
    for (int n : {2, 5, 11, 20}) {
        const SpinIrrep ir = build_irrep(n);
        const ButterflyOperators uni = make_butterfly(ir, ButterflyVariant::Unitary);
        const ButterflyOperators lit = make_butterfly(ir, ButterflyVariant::HermitianLiteral);
        const Vector psi = coherent_state(ir, 2.25, 2.0).psi;
        const Matrix u = unitary_at(ir, config, 5);
        CHECK(std::abs(nonclassicality_fast(u, uni, psi) -
                       nonclassicality_fast(u, lit, psi)) < 1e-12);
    }
}

TEST_CASE("nonclassicality series starts at zero and stays above -1e-10") {
    const SpinIrrep ir = build_irrep(5);
    FloquetConfig config;
    const ButterflyOperators ops = make_butterfly(ir, ButterflyVariant::Unitary);
    for (const auto& ic : initial_condition_presets) {
        const Vector psi = coherent_state(ir, ic.theta0, ic.phi0).psi;
        const NonclassicalitySeries series = nonclassicality_series(ir, config, ops, psi);
        REQUIRE(series.times.size() == 1001);
        CHECK(std::abs(series.n.front()) < 1e-10);
        for (double v : series.n) {
            CHECK(v >= -1e-10);
        }
    }
}
