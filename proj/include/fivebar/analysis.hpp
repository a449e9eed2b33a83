#pragma once

#include <vector>

#include "fivebar/types.hpp"

namespace fivebar {

/// One inertial sample: rotation angles about the three axes, degrees.
struct ImuSample {
    double t = 0.0;
    double zeta_x = 0.0;
    double zeta_y = 0.0;
    double zeta_z = 0.0;
};

/// Time series of IMU rotation angles with non-decreasing timestamps.
struct ImuLog {
    std::vector<ImuSample> samples;

    std::size_t size() const { return samples.size(); }

    void validate() const {
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (samples[i].t < samples[i - 1].t) {
                throw DomainError("IMU timestamps must be non-decreasing");
            }
        }
    }
};

/// A scalar angle series, degrees, on a time (or index) grid.
struct AngleSeries {
    std::vector<double> t;
    std::vector<double> deg;

    std::size_t size() const { return t.size(); }
};

/// Step-to-step displacement components (v_r = horizontal, v_p = vertical)
/// between consecutive path points; one entry per step. Point2::x carries
/// v_r and Point2::z carries v_p.
std::vector<Point2> relative_vectors(const PlanarPath& path);

/// Rotation angle implied by each step: atan|v_p / v_r| in degrees, 90 when
/// the step is purely vertical. A step with both components under 1e-12 mm
/// raises DomainError (stationary point). The series grid carries the path
/// timestamps of the step endpoints when present, step indices otherwise.
AngleSeries theoretical_rotation(const PlanarPath& path);

/// Shifts the series so its first value is exactly zero.
AngleSeries align_offset(const AngleSeries& series);

/// Extracts one axis ('x', 'y' or 'z') as an AngleSeries on the log's own
/// timestamps.
AngleSeries axis_series(const ImuLog& log, char axis);

/// Partitions the log into consecutive windows of `period` seconds counted
/// from the first timestamp; the trailing partial window is dropped.
/// Timestamps stay absolute so concatenating the cycles reproduces a prefix
/// of the input.
std::vector<ImuLog> split_cycles(const ImuLog& log, double period_s);

/// Pointwise error plus summary statistics, degrees.
struct CycleErrorReport {
    AngleSeries error;
    double rms_deg = 0.0;
    double max_abs_deg = 0.0;
};

/// measured - theoretical on the theoretical grid; the measured series is
/// resampled by linear interpolation (clamped at its ends). Both inputs are
/// expected offset-aligned.
CycleErrorReport cycle_error(const AngleSeries& measured, const AngleSeries& theoretical);

} // namespace fivebar
