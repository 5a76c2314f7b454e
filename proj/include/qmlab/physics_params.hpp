#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qmlab/errors.hpp"

namespace qmlab {

inline constexpr double kPi = std::numbers::pi;

/// Physical constants of a run. `theta` is the generator scale appearing in
/// every transformation exponential; `h` sets the time-evolution scale. The
/// two coincide as theta = h/(2*pi) only in the physical case, and keeping
/// them independent is what makes the momentum-conservation dichotomy testable.
struct PhysicsParams {
    double theta = 1.0;
    double h = 2.0 * kPi;
    std::vector<double> masses{1.0};

    double hbar() const { return h / (2.0 * kPi); }

    double mass(std::size_t i = 0) const {
        if (i >= masses.size()) throw ConfigInvalidError("mass index out of range");
        return masses[i];
    }

    void validate() const {
        if (!(theta > 0.0)) throw ConfigInvalidError("theta must be positive");
        if (!(h > 0.0)) throw ConfigInvalidError("h must be positive");
        if (masses.empty()) throw ConfigInvalidError("at least one mass required");
        for (double m : masses)
            if (!(m > 0.0)) throw NonpositiveMassError("masses must be positive");
    }

    /// Default units with theta scaled relative to hbar = 1 (h stays 2*pi).
    static PhysicsParams with_theta_over_hbar(double ratio, std::vector<double> masses = {1.0}) {
        PhysicsParams p;
        p.theta = ratio;
        p.h = 2.0 * kPi;
        p.masses = std::move(masses);
        p.validate();
        return p;
    }
};

}  // namespace qmlab
