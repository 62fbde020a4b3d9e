#pragma once

#include <array>
#include <string_view>

namespace qkt {

// Stock initial conditions on the theta0 = 2.25 line, named for the phase-space
// region they start in (kappa = 3.0, p = pi/2, tau = 1.0 drive).
struct InitialCondition {
    const char* name;
    double theta0;
    double phi0;
};

inline constexpr std::array<InitialCondition, 4> initial_condition_presets{{
    {"elliptic", 2.25, 0.63},
    {"regular", 2.25, 0.90},
    {"edge", 2.25, 1.05},
    {"chaos", 2.25, 2.00},
}};

inline const InitialCondition* find_preset(std::string_view name) {
    for (const auto& ic : initial_condition_presets) {
        if (name == ic.name) {
            return &ic;
        }
    }
    return nullptr;
}

}  // namespace qkt
