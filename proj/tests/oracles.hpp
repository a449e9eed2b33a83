// Test-only reference implementations, independent of the library code
// paths they check.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "fivebar/types.hpp"

namespace fivebar::testing {

/// Closed-form end-effector position written directly from the printed
/// component equations (with the elbow-distance final term as a cosine of
/// the angle difference). Independent of the library's midpoint-plus-normal
/// construction.
inline Point2 fk_closed_form(const MechanismParams& p, double th1, double th2) {
    const double h_sq = p.l0 * p.l0 + 2.0 * p.l0 * p.l1 * (std::cos(th2) - std::cos(th1)) +
                        2.0 * p.l1 * p.l1 * (1.0 - std::cos(th1 - th2));
    const double root = std::sqrt(p.l2 * p.l2 / h_sq - 0.25);
    const double cx = p.l1 * std::cos(th1) +
                      0.5 * (p.l0 + p.l1 * (std::cos(th2) - std::cos(th1))) -
                      p.l1 * (std::sin(th2) - std::sin(th1)) * root;
    const double cz = p.l1 * std::sin(th1) +
                      0.5 * p.l1 * (std::sin(th2) - std::sin(th1)) +
                      (p.l0 + p.l1 * (std::cos(th2) - std::cos(th1))) * root;
    return {cx, cz};
}

/// Basis row of a quintic (or its derivative) at absolute time t; used to
/// recompute condition-system residuals outside the solver.
inline std::array<double, 6> quintic_basis(double t, int order) {
    switch (order) {
    case 0: return {1.0, t, t * t, t * t * t, t * t * t * t, t * t * t * t * t};
    case 1: return {0.0, 1.0, 2.0 * t, 3.0 * t * t, 4.0 * t * t * t, 5.0 * t * t * t * t};
    case 2: return {0.0, 0.0, 2.0, 6.0 * t, 12.0 * t * t, 20.0 * t * t * t};
    default: return {0.0, 0.0, 0.0, 6.0, 24.0 * t, 60.0 * t * t};
    }
}

/// Deterministic standard-normal generator: Box-Muller over explicit
/// mt19937 uniforms, identical on every platform.
class GaussianNoise {
public:
    explicit GaussianNoise(std::uint32_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(rng_()) + 0.5) / 4294967296.0;
        const double u2 = (static_cast<double>(rng_()) + 0.5) / 4294967296.0;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Uniform double in [lo, hi) from explicit mt19937 draws, platform-stable.
class UniformDraw {
public:
    explicit UniformDraw(std::uint32_t seed) : rng_(seed) {}

    double next(double lo, double hi) {
        const double u = (static_cast<double>(rng_()) + 0.5) / 4294967296.0;
        return lo + u * (hi - lo);
    }

private:
    std::mt19937 rng_;
};

} // namespace fivebar::testing
