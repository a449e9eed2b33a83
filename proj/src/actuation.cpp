#include "fivebar/actuation.hpp"

#include <cmath>

#include "fivebar/types.hpp"

namespace fivebar {

long degrees_to_counts(const MotorCalibration& cal, double angle_deg) {
    cal.validate();
    // std::round rounds half away from zero, which keeps fixtures bit-stable
    return static_cast<long>(
        std::round(cal.direction * (cal.zero_angle_deg - angle_deg) * cal.counts_per_degree));
}

double counts_to_degrees(const MotorCalibration& cal, long counts) {
    cal.validate();
    return cal.zero_angle_deg -
           cal.direction * static_cast<double>(counts) / cal.counts_per_degree;
}

SetpointSchedule schedule_from_plan(const PiecewiseQuintic& m1_plan,
                                    const PiecewiseQuintic& m2_plan,
                                    const MotorCalibration& m1_cal,
                                    const MotorCalibration& m2_cal, double rate_hz) {
    if (m1_plan.duration() != m2_plan.duration()) {
        throw DomainError("motor plans must share one cycle duration");
    }
    const auto s1 = sample(m1_plan, rate_hz);
    const auto s2 = sample(m2_plan, rate_hz);

    SetpointSchedule schedule;
    schedule.t_s.reserve(s1.size());
    schedule.m1_counts.reserve(s1.size());
    schedule.m2_counts.reserve(s1.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        schedule.t_s.push_back(s1[i].t);
        schedule.m1_counts.push_back(degrees_to_counts(m1_cal, rad_to_deg(s1[i].pos)));
        schedule.m2_counts.push_back(degrees_to_counts(m2_cal, rad_to_deg(s2[i].pos)));
    }
    return schedule;
}

SetpointSchedule simulate_encoder_playback(const SetpointSchedule& schedule,
                                           double lag_time_constant_s) {
    if (!(lag_time_constant_s >= 0.0)) {
        throw DomainError("lag time constant must be non-negative");
    }
    schedule.validate();

    SetpointSchedule achieved;
    achieved.t_s = schedule.t_s;
    achieved.m1_counts.reserve(schedule.size());
    achieved.m2_counts.reserve(schedule.size());

    auto run = [&](const std::vector<long>& setpoints, std::vector<long>& out) {
        double state = 0.0; // unquantized tracking state, counts
        for (std::size_t i = 0; i < setpoints.size(); ++i) {
            if (lag_time_constant_s == 0.0) {
                state = static_cast<double>(setpoints[i]);
            } else if (i > 0) {
                // exact first-order response to the held previous setpoint
                const double held = static_cast<double>(setpoints[i - 1]);
                const double dt = schedule.t_s[i] - schedule.t_s[i - 1];
                state = held + (state - held) * std::exp(-dt / lag_time_constant_s);
            }
            out.push_back(static_cast<long>(std::round(state)));
        }
    };
    run(schedule.m1_counts, achieved.m1_counts);
    run(schedule.m2_counts, achieved.m2_counts);
    return achieved;
}

} // namespace fivebar
