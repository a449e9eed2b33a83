#pragma once

#include <vector>

#include "fivebar/error.hpp"
#include "fivebar/planner.hpp"

namespace fivebar {

/// Affine map between a link angle (degrees) and the motor's encoder counts.
/// zero_angle_deg is the link angle the encoder was zeroed at; with
/// direction +1 counts grow as the angle decreases from there.
struct MotorCalibration {
    double counts_per_degree = 1.0;
    double zero_angle_deg = 0.0;
    int direction = +1;

    void validate() const {
        if (!(counts_per_degree > 0.0)) {
            throw DomainError("counts_per_degree must be positive");
        }
        if (direction != 1 && direction != -1) {
            throw DomainError("calibration direction must be +1 or -1");
        }
    }
};

/// Position setpoints for both motors on a shared, strictly increasing
/// time grid.
struct SetpointSchedule {
    std::vector<double> t_s;
    std::vector<long> m1_counts;
    std::vector<long> m2_counts;

    std::size_t size() const { return t_s.size(); }

    void validate() const {
        if (m1_counts.size() != t_s.size() || m2_counts.size() != t_s.size()) {
            throw DomainError("schedule columns must have equal length");
        }
        for (std::size_t i = 1; i < t_s.size(); ++i) {
            if (!(t_s[i] > t_s[i - 1])) {
                throw DomainError("schedule timestamps must strictly increase");
            }
        }
    }
};

/// Link angle to encoder counts, rounded half away from zero.
long degrees_to_counts(const MotorCalibration& cal, double angle_deg);

/// Encoder counts back to a link angle; inverse of degrees_to_counts up to
/// the half-count quantization.
double counts_to_degrees(const MotorCalibration& cal, long counts);

/// Samples both motor plans at `rate` Hz and converts to counts. The plans
/// must share one duration so the motors share timestamps.
SetpointSchedule schedule_from_plan(const PiecewiseQuintic& m1_plan,
                                    const PiecewiseQuintic& m2_plan,
                                    const MotorCalibration& m1_cal,
                                    const MotorCalibration& m2_cal, double rate_hz);

/// First-order-lag playback of the setpoint staircase, quantized to whole
/// counts, reported on the schedule's own time grid. Both motors start from
/// zero counts; lag 0 reproduces the schedule exactly.
SetpointSchedule simulate_encoder_playback(const SetpointSchedule& schedule,
                                           double lag_time_constant_s);

} // namespace fivebar
