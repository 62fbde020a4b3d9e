#include "qkt/spin_core.hpp"

#include "test_support.hpp"

#include <catch2/catch.hpp>

using namespace qkt;

namespace {

double commutator_defect(const Matrix& a, const Matrix& b, const Matrix& c) {
    // |[A,B] - iC| max entry
    return max_abs(a * b - b * a - cplx(0.0, 1.0) * c);
}

}  // namespace

TEST_CASE("build_irrep rejects nonpositive spin counts") {
    CHECK_THROWS_AS(build_irrep(0), std::invalid_argument);
    CHECK_THROWS_AS(build_irrep(-3), std::invalid_argument);
}

TEST_CASE("build_irrep small spectra") {
    const SpinIrrep one = build_irrep(1);
    CHECK(one.dim == 2);
    CHECK(one.jz(0, 0).real() == Approx(-0.5));
    CHECK(one.jz(1, 1).real() == Approx(0.5));

    const SpinIrrep two = build_irrep(2);
    CHECK(two.jz(0, 0).real() == Approx(-1.0));
    CHECK(two.jz(1, 1).real() == Approx(0.0));
    CHECK(two.jz(2, 2).real() == Approx(1.0));
}

TEST_CASE("su(2) algebra, Casimir and Hermiticity for every N up to 100") {
    for (int n = 1; n <= 100; ++n) {
        const SpinIrrep ir = build_irrep(n);
        CHECK(commutator_defect(ir.jx, ir.jy, ir.jz) < 1e-12);
        CHECK(commutator_defect(ir.jy, ir.jz, ir.jx) < 1e-12);
        CHECK(commutator_defect(ir.jz, ir.jx, ir.jy) < 1e-12);
        const Matrix casimir = ir.jx * ir.jx + ir.jy * ir.jy + ir.jz * ir.jz;
        const Matrix expected = ir.j * (ir.j + 1.0) * Matrix::Identity(ir.dim, ir.dim);
        CHECK(max_abs(casimir - expected) < 1e-12);
        CHECK(max_abs(ir.jx - ir.jx.adjoint()) < 1e-14);
        CHECK(max_abs(ir.jy - ir.jy.adjoint()) < 1e-14);
        CHECK(max_abs(ir.jz - ir.jz.adjoint()) < 1e-14);
    }
}

TEST_CASE("hermitian_exp trivial and diagonal cases") {
    const SpinIrrep ir = build_irrep(1);
    const Matrix id = hermitian_exp(ir.jz, cplx(0.0, 0.0));
    CHECK(max_abs(id - Matrix::Identity(2, 2)) == 0.0);

    const Matrix u = hermitian_exp(ir.jz, cplx(0.0, -pi));
    CHECK(std::abs(u(0, 0) - cplx(0.0, 1.0)) < 1e-14);
    CHECK(std::abs(u(1, 1) - cplx(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(u(0, 1)) < 1e-14);
    CHECK(std::abs(u(1, 0)) < 1e-14);
}

TEST_CASE("hermitian_exp with imaginary scale is unitary") {
    const SpinIrrep ir = build_irrep(10);
    const Matrix u = hermitian_exp(ir.jx, cplx(0.0, 0.7));
    CHECK(max_abs(u.adjoint() * u - Matrix::Identity(ir.dim, ir.dim)) < 1e-11);
}

TEST_CASE("hermitian_exp rejects non-Hermitian input") {
    Matrix bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(hermitian_exp(bad, cplx(0.0, 1.0)), std::invalid_argument);
}

TEST_CASE("exp(iAt) exp(-iAt) = I for random Hermitian generators") {
    for (int dim : {3, 17, 101}) {
        const Matrix a = test::random_hermitian(dim, 1234u + unsigned(dim));
        const double t = 0.83;
        const Matrix fwd = hermitian_exp(a, cplx(0.0, t));
        const Matrix bwd = hermitian_exp(a, cplx(0.0, -t));
        CHECK(max_abs(fwd * bwd - Matrix::Identity(dim, dim)) < 1e-11);
    }
}

TEST_CASE("coherent state at theta=0 is the lowest-weight basis vector") {
    const SpinIrrep ir = build_irrep(7);
    for (double phi : {0.0, 1.3, -2.0}) {
        const CoherentState cs = coherent_state(ir, 0.0, phi);
        CHECK(std::abs(cs.psi(0) - cplx(1.0, 0.0)) < 1e-14);
        CHECK(cs.psi.tail(ir.dim - 1).norm() < 1e-14);
    }
}

TEST_CASE("coherent state is normalized") {
    const SpinIrrep ir = build_irrep(5);
    const CoherentState cs = coherent_state(ir, 2.25, 2.0);
    CHECK(std::abs(cs.psi.norm() - 1.0) < 1e-12);
}

TEST_CASE("coherent state Bloch direction") {
    const SpinIrrep ir = build_irrep(12);
    for (auto [theta, phi] : {std::pair{2.25, 0.63}, {0.4, -1.1}, {1.7, 2.9}}) {
        const CoherentState cs = coherent_state(ir, theta, phi);
        const BlochVector b = bloch_expectation(ir, cs.psi);
        CHECK(std::abs(b.x - std::sin(theta) * std::cos(phi)) < 1e-10);
        CHECK(std::abs(b.y - std::sin(theta) * std::sin(phi)) < 1e-10);
        CHECK(std::abs(b.z + std::cos(theta)) < 1e-10);
    }
}

TEST_CASE("coherent overlap law |<a|b>|^2 = cos^{4j}(Theta/2)") {
    for (int n : {5, 20}) {
        const SpinIrrep ir = build_irrep(n);
        const double theta0 = 2.25, phi0 = 0.63;
        const CoherentState ref = coherent_state(ir, theta0, phi0);
        for (int it = 0; it < 10; ++it) {
            for (int ip = 0; ip < 10; ++ip) {
                const double theta = pi * (it + 0.5) / 10.0;
                const double phi = -pi + 2.0 * pi * (ip + 0.5) / 10.0;
                const CoherentState probe = coherent_state(ir, theta, phi);
                const double got = std::norm(probe.psi.dot(ref.psi));
                const double cos_big = std::cos(theta) * std::cos(theta0) +
                                       std::sin(theta) * std::sin(theta0) * std::cos(phi - phi0);
                const double expect = std::pow(0.5 * (1.0 + cos_big), 2.0 * ir.j);
                CHECK(std::abs(got - expect) < 1e-10);
            }
        }
    }
}

TEST_CASE("coherent_amplitudes matches the defining exponential") {
    for (int n : {1, 4, 19}) {
        const SpinIrrep ir = build_irrep(n);
        const EigenSystem jy = jy_eigensystem(ir);
        for (auto [theta, phi] : {std::pair{2.25, 2.0}, {0.9, -0.4}, {3.0, 1.0}}) {
            const Vector fast = coherent_amplitudes(ir, jy, theta, phi);
            const Vector direct = coherent_state(ir, theta, phi).psi;
            CHECK((fast - direct).cwiseAbs().maxCoeff() < 1e-11);
        }
    }
}

TEST_CASE("jy_eigensystem spectrum and reconstruction") {
    const SpinIrrep two = build_irrep(2);
    const EigenSystem es2 = jy_eigensystem(two);
    CHECK(std::abs(es2.values(0) + 1.0) < 1e-11);
    CHECK(std::abs(es2.values(1)) < 1e-11);
    CHECK(std::abs(es2.values(2) - 1.0) < 1e-11);

    const SpinIrrep five = build_irrep(5);
    const EigenSystem es5 = jy_eigensystem(five);
    Matrix recon = Matrix::Zero(five.dim, five.dim);
    for (int k = 0; k < five.dim; ++k) {
        recon += es5.values(k) * (es5.vectors.col(k) * es5.vectors.col(k).adjoint());
    }
    CHECK(max_abs(recon - five.jy) < 1e-11);
    for (int k = 0; k < five.dim; ++k) {
        CHECK(std::abs(es5.values(k) - five.m_value(k)) < 1e-11);
    }
}

TEST_CASE("jy eigenvectors are orthonormal at N=100") {
    const SpinIrrep ir = build_irrep(100);
    const EigenSystem es = jy_eigensystem(ir);
    const Matrix gram = es.vectors.adjoint() * es.vectors;
    CHECK(max_abs(gram - Matrix::Identity(ir.dim, ir.dim)) < 1e-11);
}
