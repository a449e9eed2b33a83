#include "fivebar/planner.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace fivebar {

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;

Vec6 basis(double t, int order) {
    Vec6 row = Vec6::Zero();
    switch (order) {
    case 0:
        row << 1.0, t, t * t, t * t * t, t * t * t * t, t * t * t * t * t;
        break;
    case 1:
        row << 0.0, 1.0, 2.0 * t, 3.0 * t * t, 4.0 * t * t * t, 5.0 * t * t * t * t;
        break;
    case 2:
        row << 0.0, 0.0, 2.0, 6.0 * t, 12.0 * t * t, 20.0 * t * t * t;
        break;
    case 3:
        row << 0.0, 0.0, 0.0, 6.0, 24.0 * t, 60.0 * t * t;
        break;
    default:
        throw DomainError("derivative order must be 0..3");
    }
    return row;
}

} // namespace

double QuinticSegment::eval(double t, int order) const {
    // Horner in extended precision: absolute-time coefficients of the late
    // segments are large and cancel heavily, double alone leaves ~1e-12
    // noise on the value
    const long double x = t;
    const auto c = [this](std::size_t k) { return static_cast<long double>(coeffs[k]); };
    switch (order) {
    case 0:
        return static_cast<double>(
            ((((c(5) * x + c(4)) * x + c(3)) * x + c(2)) * x + c(1)) * x + c(0));
    case 1:
        return static_cast<double>(
            (((5.0L * c(5) * x + 4.0L * c(4)) * x + 3.0L * c(3)) * x + 2.0L * c(2)) * x +
            c(1));
    case 2:
        return static_cast<double>(
            ((20.0L * c(5) * x + 12.0L * c(4)) * x + 6.0L * c(3)) * x + 2.0L * c(2));
    case 3:
        return static_cast<double>((60.0L * c(5) * x + 24.0L * c(4)) * x + 6.0L * c(3));
    default:
        throw DomainError("derivative order must be 0..3");
    }
}

std::array<double, 12> solve_half_cycle(const HalfCycleTimes& times,
                                        const std::array<double, 12>& conditions) {
    if (!(times.start < times.via && times.via < times.end)) {
        throw SingularSystemError("half-cycle times must satisfy start < via < end");
    }

    Eigen::Matrix<double, 12, 12> m = Eigen::Matrix<double, 12, 12>::Zero();
    auto first = [&m](int row) { return m.block<1, 6>(row, 0); };
    auto second = [&m](int row) { return m.block<1, 6>(row, 6); };

    for (int k = 0; k < 4; ++k) {
        first(k) = basis(times.start, k).transpose();               // start p/v/a/j
    }
    first(kViaPosFirst) = basis(times.via, 0).transpose();          // via position, 1st segment
    second(kViaPosSecond) = basis(times.via, 0).transpose();        // via position, 2nd segment
    first(kViaVelSlack) = basis(times.via, 1).transpose();          // velocity continuity
    second(kViaVelSlack) = -basis(times.via, 1).transpose();
    first(kViaAccSlack) = basis(times.via, 2).transpose();          // acceleration continuity
    second(kViaAccSlack) = -basis(times.via, 2).transpose();
    for (int k = 0; k < 4; ++k) {
        second(kEndPos + k) = basis(times.end, k).transpose();      // end p/v/a/j
    }

    Eigen::Matrix<double, 12, 1> q;
    for (int i = 0; i < 12; ++i) {
        q(i) = conditions[static_cast<std::size_t>(i)];
    }

    const Eigen::PartialPivLU<Eigen::Matrix<double, 12, 12>> lu(m);
    if (lu.rcond() < 1e-12) {
        throw SingularSystemError("coefficient system is singular or near-singular "
                                  "(rcond < 1e-12); check the segment timing");
    }
    Eigen::Matrix<double, 12, 1> c = lu.solve(q);
    // one iterative-refinement step keeps the knot residual well under 1e-9
    c += lu.solve(q - m * c);

    std::array<double, 12> out{};
    for (int i = 0; i < 12; ++i) {
        out[static_cast<std::size_t>(i)] = c(i);
    }
    return out;
}

PiecewiseQuintic plan_cycle(const CycleWaypoints& waypoints, const CycleTiming& timing,
                            const BoundaryJerk& jerk) {
    timing.validate();

    std::array<double, 12> q1{};
    q1[kStartPos] = waypoints.start;
    q1[kStartJerk] = jerk.cycle_start;
    q1[kViaPosFirst] = waypoints.via1;
    q1[kViaPosSecond] = waypoints.via1;
    q1[kEndPos] = waypoints.extended;
    q1[kEndJerk] = jerk.junction;
    const auto c1 = solve_half_cycle({0.0, timing.t_v1, timing.t_f1}, q1);

    // the second half opens with the first half's closing conditions
    std::array<double, 12> q2{};
    q2[kStartPos] = waypoints.extended;
    q2[kStartJerk] = jerk.junction;
    q2[kViaPosFirst] = waypoints.via2;
    q2[kViaPosSecond] = waypoints.via2;
    q2[kEndPos] = waypoints.end;
    q2[kEndJerk] = jerk.cycle_end;
    const auto c2 = solve_half_cycle({timing.t_f1, timing.t_v2, timing.t_f2}, q2);

    PiecewiseQuintic traj;
    const std::array<double, 5> knots{0.0, timing.t_v1, timing.t_f1, timing.t_v2, timing.t_f2};
    for (int s = 0; s < 4; ++s) {
        const auto& c = (s < 2) ? c1 : c2;
        const std::size_t off = (s % 2 == 0) ? 0 : 6;
        for (std::size_t k = 0; k < 6; ++k) {
            traj.segments[static_cast<std::size_t>(s)].coeffs[k] = c[off + k];
        }
        traj.segments[static_cast<std::size_t>(s)].t_lo = knots[static_cast<std::size_t>(s)];
        traj.segments[static_cast<std::size_t>(s)].t_hi = knots[static_cast<std::size_t>(s) + 1];
    }
    return traj;
}

double evaluate(const PiecewiseQuintic& traj, double t, int order) {
    if (!(t >= 0.0) || !(t <= traj.duration())) {
        throw DomainError("evaluation time " + std::to_string(t) +
                          " s outside trajectory domain [0, " +
                          std::to_string(traj.duration()) + "] s");
    }
    // right segment owns interior breakpoints, last segment owns t_f2
    for (std::size_t s = 0; s < 3; ++s) {
        if (t < traj.segments[s].t_hi) {
            return traj.segments[s].eval(t, order);
        }
    }
    return traj.segments[3].eval(t, order);
}

std::vector<ProfileSample> sample(const PiecewiseQuintic& traj, double rate_hz) {
    if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
        throw DomainError("sampling rate must be positive");
    }
    const double duration = traj.duration();
    const auto steps = static_cast<std::size_t>(std::ceil(duration * rate_hz - 1e-9));
    std::vector<ProfileSample> out;
    out.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = (k == steps) ? duration
                                      : std::min(static_cast<double>(k) / rate_hz, duration);
        out.push_back({t, evaluate(traj, t, 0), evaluate(traj, t, 1), evaluate(traj, t, 2)});
    }
    return out;
}

} // namespace fivebar
