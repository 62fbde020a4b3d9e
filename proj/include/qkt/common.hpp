#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace qkt {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;

// Largest entry magnitude; the norm used by most tolerance checks in this library.
inline double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return max_abs(a - a.adjoint()) <= tol;
}

inline void require_unit_norm(const Vector& psi, double tol = 1e-8) {
    if (std::abs(psi.norm() - 1.0) > tol) {
        throw std::invalid_argument("state vector is not normalized");
    }
}

// Thrown when a request exceeds a hard size limit (e.g. channel-state qubit count).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniformly sampled real-valued diagnostic; the input to power_spectrum.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
};

}  // namespace qkt
