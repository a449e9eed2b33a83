#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "fivebar/mechanism.hpp"
#include "fivebar/types.hpp"

namespace fivebar {

/// The synthesis unknowns: the three link lengths plus the crank-angle
/// endpoints of the sweep that traces the desired path.
struct DesignVector {
    double l1 = 0.0;           // mm
    double l2 = 0.0;           // mm
    double l0 = 0.0;           // mm
    double theta1_start = 0.0; // rad
    double theta1_end = 0.0;   // rad
    double theta2_start = 0.0; // rad
    double theta2_end = 0.0;   // rad

    static constexpr std::size_t kSize = 7;

    std::array<double, kSize> as_array() const {
        return {l1, l2, l0, theta1_start, theta1_end, theta2_start, theta2_end};
    }
    static DesignVector from_array(const std::array<double, kSize>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }

    MechanismParams mechanism() const { return {l0, l1, l2}; }

    bool finite() const;
};

/// Component-wise box constraints on the design vector.
struct Bounds {
    DesignVector lower;
    DesignVector upper;

    void validate() const;
    bool contains(const DesignVector& d) const;

    /// Lengths 20..200 mm, angles 0..180 degrees.
    static Bounds defaults();
};

struct SynthesisOptions {
    int max_iterations = 150;
    int max_evaluations = 2000;
    double tolerance_mm = 1e-6; ///< stop when an accepted step improves less than this
};

/// Worst-case reachability of the desired samples at a given design.
struct ConstraintReport {
    double worst_abs_r1 = 0.0;
    double worst_abs_r2 = 0.0;
    bool geometric_ok = false; ///< every desired sample reachable and assemblable
};

struct OptimizationResult {
    DesignVector best;
    double error_mm = 0.0; ///< tracking error of `best` (no penalty terms)
    /// (iteration, objective) at the start and at every accepted iterate;
    /// values include constraint penalties, so they never increase.
    std::vector<std::pair<int, double>> history;
    int evaluations = 0;
    bool converged = false;
    ConstraintReport constraints;
};

/// Constant added to the objective for every sweep sample whose forward
/// kinematics cannot assemble.
inline constexpr double kInfeasibleSamplePenaltyMm = 1e3;
/// Quadratic weight on violated reachability constraints |R1|,|R2| >= 1.
inline constexpr double kConstraintPenaltyWeight = 1e4;

/// Mean end-effector tracking error, mm: the design's cranks sweep linearly
/// from their start to end angles across the desired sample count, and each
/// traced point is compared with its desired counterpart. Samples where the
/// mechanism cannot assemble contribute kInfeasibleSamplePenaltyMm instead
/// of a distance. Throws DomainError for non-finite designs.
double objective_error(const DesignVector& design, const PlanarPath& desired);

/// Bounded local search: projected gradient descent on the penalized
/// objective with central-difference gradients and Armijo backtracking,
/// run in bounds-normalized coordinates. Deterministic. Returns the best
/// iterate seen within the budget.
OptimizationResult synthesize(const PlanarPath& desired, const Bounds& bounds,
                              const DesignVector& init, const SynthesisOptions& opts = {});

/// Multi-start wrapper: `restarts` extra runs from uniform random points
/// inside the bounds (seeded, reproducible), keeping the best result.
OptimizationResult synthesize_multistart(const PlanarPath& desired, const Bounds& bounds,
                                         const DesignVector& init, int restarts,
                                         std::uint64_t seed,
                                         const SynthesisOptions& opts = {});

/// Element-wise inverse kinematics of the desired path with the design's
/// mechanism; feeds the trajectory planner with via and endpoint angles.
/// Throws UnreachableTargetError carrying the offending index.
std::vector<JointState> joint_waypoints(const DesignVector& design, const PlanarPath& desired,
                                        ElbowConfig elbows = {});

} // namespace fivebar
