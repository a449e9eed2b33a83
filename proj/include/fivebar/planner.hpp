#pragma once

#include <array>
#include <vector>

#include "fivebar/error.hpp"

namespace fivebar {

/// Breakpoints of one motion cycle, seconds: first via, half-cycle end,
/// second via, cycle end. Must satisfy 0 < t_v1 < t_f1 < t_v2 < t_f2.
struct CycleTiming {
    double t_v1 = 2.5;
    double t_f1 = 5.0;
    double t_v2 = 7.5;
    double t_f2 = 10.0;

    void validate() const {
        if (!(0.0 < t_v1 && t_v1 < t_f1 && t_f1 < t_v2 && t_v2 < t_f2)) {
            throw DomainError("cycle timing must satisfy 0 < t_v1 < t_f1 < t_v2 < t_f2");
        }
    }
};

/// Joint angles (radians) the cycle passes through. A cycle returns to its
/// origin, so end == start.
struct CycleWaypoints {
    double start = 0.0;
    double via1 = 0.0;
    double extended = 0.0;
    double via2 = 0.0;
    double end = 0.0;
};

/// Jerk values at the free boundaries of the two half-cycles. The junction
/// value is shared: it closes the first half-cycle and opens the second, so
/// the junction stays continuous through jerk.
struct BoundaryJerk {
    double cycle_start = 0.0;
    double junction = 0.0;
    double cycle_end = 0.0;
};

/// One fifth-order polynomial in absolute cycle time over [t_lo, t_hi].
struct QuinticSegment {
    std::array<double, 6> coeffs{}; // a0..a5, position = sum a_k t^k
    double t_lo = 0.0;
    double t_hi = 0.0;

    /// Value of the polynomial or its 1st/2nd/3rd derivative at t.
    double eval(double t, int order = 0) const;
};

/// Four abutting quintic segments covering one full cycle
/// [0,t_v1][t_v1,t_f1][t_f1,t_v2][t_v2,t_f2].
struct PiecewiseQuintic {
    std::array<QuinticSegment, 4> segments;

    double duration() const { return segments[3].t_hi; }
};

/// Segment boundaries of one half-cycle (two quintics with one via).
struct HalfCycleTimes {
    double start = 0.0;
    double via = 0.0;
    double end = 0.0;
};

/// Condition vector layout for solve_half_cycle, index by name.
/// Rows 4 and 5 both carry the via position (one per adjacent segment);
/// rows 6 and 7 are the zero slack rows that enforce velocity and
/// acceleration continuity at the via.
enum HalfCycleCondition : std::size_t {
    kStartPos = 0,
    kStartVel = 1,
    kStartAcc = 2,
    kStartJerk = 3,
    kViaPosFirst = 4,
    kViaPosSecond = 5,
    kViaVelSlack = 6,
    kViaAccSlack = 7,
    kEndPos = 8,
    kEndVel = 9,
    kEndAcc = 10,
    kEndJerk = 11,
};

/// Solves the dense 12x12 system tying two quintics to the 12 conditions and
/// returns their coefficients (first segment's a0..a5, then the second's).
/// Throws SingularSystemError on degenerate timing.
std::array<double, 12> solve_half_cycle(const HalfCycleTimes& times,
                                        const std::array<double, 12>& conditions);

/// Builds the full four-segment cycle from five waypoints: two half-cycle
/// solves with zero velocity and acceleration at the cycle boundaries and at
/// the half-cycle junction, the junction jerk shared between the halves.
PiecewiseQuintic plan_cycle(const CycleWaypoints& waypoints, const CycleTiming& timing,
                            const BoundaryJerk& jerk = {});

/// Position (order 0) or derivative (1 = velocity, 2 = acceleration,
/// 3 = jerk) at time t in [0, duration]. Interior breakpoints belong to the
/// right segment; the final time belongs to the last.
double evaluate(const PiecewiseQuintic& traj, double t, int order = 0);

struct ProfileSample {
    double t = 0.0;   // s
    double pos = 0.0; // rad
    double vel = 0.0; // rad/s
    double acc = 0.0; // rad/s^2
};

/// Uniform sampling at `rate` Hz including both endpoints. When the duration
/// is not a whole number of periods the final sample is pinned to the end.
std::vector<ProfileSample> sample(const PiecewiseQuintic& traj, double rate_hz);

} // namespace fivebar
