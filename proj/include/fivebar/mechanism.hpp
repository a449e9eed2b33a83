#pragma once

#include <span>

#include "fivebar/types.hpp"

namespace fivebar {

/// Reachability and assembly figures for one target point.
///
/// r1 and r2 are the law-of-cosines arguments of the near and far crank-coupler
/// triangles; the target is reachable when both magnitudes are below 1. h is
/// the elbow distance of the assembled (elbows-up) configuration, NaN when the
/// target is unreachable. geometric_ok is the operative feasibility test;
/// paper_r3_r4_ok evaluates the literal conditions |h| < 1 and
/// |sqrt(l2^2/h^2 - 1/4)| < 1 and is reported for reference only.
struct FeasibilityReport {
    double r1 = 0.0;
    double r2 = 0.0;
    double h = 0.0;
    bool geometric_ok = false;
    bool paper_r3_r4_ok = false;
};

/// Elbow distance below which the configuration counts as degenerate.
inline constexpr double kCoincidentElbowTol = 1e-9; // mm

/// End-effector position for given crank angles: intersects the two coupler
/// circles of radius l2 centered at the elbows and picks the upper branch.
/// Throws InfeasibleConfigError when the circles cannot intersect.
Point2 forward_kinematics(const MechanismParams& params, const JointState& joints);

/// Crank angles that place the end-effector at `target` with the requested
/// elbow branches. Throws UnreachableTargetError when either crank-coupler
/// triangle cannot close (|r1| >= 1 or |r2| >= 1).
JointState inverse_kinematics(const MechanismParams& params, Point2 target,
                              ElbowConfig elbows = {});

/// Always returns a report; never throws for finite inputs.
FeasibilityReport feasibility(const MechanismParams& params, Point2 target);

/// Element-wise forward kinematics. Timestamps carried by the joint states
/// are preserved on the path. An infeasible state raises
/// InfeasibleConfigError carrying the offending index.
PlanarPath trace_path(const MechanismParams& params, std::span<const JointState> joints);

/// Similarity transform about `anchor`: p -> anchor + factor * (p - anchor).
/// Timestamps are preserved. factor must be positive.
PlanarPath scale_amplitude(const PlanarPath& path, double factor, Point2 anchor);

/// Asserts the forward/inverse round-trip identity on a probe pose and throws
/// Error if the configured inverse-kinematics sign convention breaks it.
/// Cheap; intended to run once at program start.
void self_check_ik_convention();

} // namespace fivebar
