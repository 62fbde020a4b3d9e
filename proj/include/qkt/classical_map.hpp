#pragma once

#include "qkt/common.hpp"

#include <cmath>
#include <utility>

namespace qkt {

// Normalized angular-momentum expectations (X, Y, Z) on the unit sphere. Valid
// for the p = pi/2 stroboscopic map only; p is not a parameter here.
struct ClassicalState {
    double x = 0.0, y = 0.0, z = 0.0;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// One kick period of the stroboscopic map: free precession about z by the
// twist angle kappa*Z, then the quarter turn about y. This is the classical
// limit of the period operator U_kick U_twist(tau); it leaves the elliptic
// fixed point at (theta, phi) = (2.25, 0.63) invariant for kappa = 3.
inline ClassicalState kick_map(const ClassicalState& s, double kappa) {
    const double a = kappa * s.z;
    const double c = std::cos(a);
    const double sn = std::sin(a);
    const double x1 = s.x * c - s.y * sn;
    const double y1 = s.x * sn + s.y * c;
    return {s.z, y1, -x1};
}

// Bloch direction of the coherent state |theta0, phi0>.
inline ClassicalState initial_condition(double theta0, double phi0) {
    if (!(theta0 >= 0.0 && theta0 <= pi)) {
        throw std::invalid_argument("initial_condition: theta0 must lie in [0, pi]");
    }
    return {std::sin(theta0) * std::cos(phi0),
            std::sin(theta0) * std::sin(phi0),
            -std::cos(theta0)};
}

struct Trajectory {
    double kappa = 0.0;
    std::vector<ClassicalState> states;  // n_kicks + 1 entries, initial state first
};

inline Trajectory trajectory(double theta0, double phi0, double kappa, int n_kicks) {
    if (n_kicks < 0) {
        throw std::invalid_argument("trajectory: kick count must be >= 0");
    }
    Trajectory tr;
    tr.kappa = kappa;
    tr.states.reserve(size_t(n_kicks) + 1);
    ClassicalState s = initial_condition(theta0, phi0);
    tr.states.push_back(s);
    for (int n = 0; n < n_kicks; ++n) {
        s = kick_map(s, kappa);
        tr.states.push_back(s);
    }
    return tr;
}

// (theta, phi) chart shared with initial_condition: theta = arccos(-Z), phi = atan2(Y, X).
inline std::pair<double, double> to_angles(const ClassicalState& s) {
    const double z = std::clamp(-s.z, -1.0, 1.0);
    return {std::acos(z), std::atan2(s.y, s.x)};
}

}  // namespace qkt
