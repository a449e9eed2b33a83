#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "fivebar/error.hpp"

namespace fivebar {

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;

inline double deg_to_rad(double deg) { return deg / kDegPerRad; }
inline double rad_to_deg(double rad) { return rad * kDegPerRad; }

/// A point in the mechanism's vertical working plane, millimeters.
struct Point2 {
    double x = 0.0;
    double z = 0.0;
};

inline double distance(Point2 a, Point2 b) {
    return std::hypot(a.x - b.x, a.z - b.z);
}

/// Link lengths of the symmetric five-bar. The distal pair mirrors the
/// proximal one, so only three lengths are stored: l1 also serves as the
/// far-side crank and l2 as the far-side coupler.
struct MechanismParams {
    double l0 = 0.0; ///< ground link, distance between the two fixed pivots, mm
    double l1 = 0.0; ///< crank length (both sides), mm
    double l2 = 0.0; ///< coupler length (both sides), mm

    void validate() const {
        if (!(l0 > 0.0) || !(l1 > 0.0) || !(l2 > 0.0) ||
            !std::isfinite(l0) || !std::isfinite(l1) || !std::isfinite(l2)) {
            throw DomainError("mechanism link lengths must be finite and positive");
        }
    }
};

/// Branch selection for the two passive elbows; +1 = elbow up.
struct ElbowConfig {
    int b_sign = +1;
    int f_sign = +1;

    void validate() const {
        if ((b_sign != 1 && b_sign != -1) || (f_sign != 1 && f_sign != -1)) {
            throw DomainError("elbow signs must be +1 or -1");
        }
    }
};

/// Actuated crank angles, radians. Degrees appear only at I/O boundaries.
struct JointState {
    double theta1 = 0.0;
    double theta2 = 0.0;
    std::optional<double> t; ///< seconds, when part of a timed series
};

/// Ordered end-effector samples in the working plane. Timestamps are
/// optional; when present there is one per point and they strictly increase.
struct PlanarPath {
    std::vector<Point2> points;
    std::vector<double> timestamps;

    std::size_t size() const { return points.size(); }
    bool has_timestamps() const { return !timestamps.empty(); }

    void validate() const {
        if (points.size() < 2) {
            throw DomainError("a planar path needs at least 2 points");
        }
        for (const Point2& p : points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.z)) {
                throw DomainError("planar path contains a non-finite coordinate");
            }
        }
        if (!timestamps.empty()) {
            if (timestamps.size() != points.size()) {
                throw DomainError("timestamp count does not match point count");
            }
            for (std::size_t i = 1; i < timestamps.size(); ++i) {
                if (!(timestamps[i] > timestamps[i - 1])) {
                    throw DomainError("path timestamps must strictly increase");
                }
            }
        }
    }
};

} // namespace fivebar
