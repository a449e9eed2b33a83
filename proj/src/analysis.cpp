#include "fivebar/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fivebar {

std::vector<Point2> relative_vectors(const PlanarPath& path) {
    if (path.points.size() < 2) {
        throw DomainError("relative vectors need a path of at least 2 points");
    }
    std::vector<Point2> out;
    out.reserve(path.points.size() - 1);
    for (std::size_t i = 1; i < path.points.size(); ++i) {
        out.push_back({path.points[i].x - path.points[i - 1].x,
                       path.points[i].z - path.points[i - 1].z});
    }
    return out;
}

AngleSeries theoretical_rotation(const PlanarPath& path) {
    const std::vector<Point2> steps = relative_vectors(path);
    AngleSeries series;
    series.t.reserve(steps.size());
    series.deg.reserve(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const double vr = steps[i].x;
        const double vp = steps[i].z;
        if (std::abs(vr) < 1e-12 && std::abs(vp) < 1e-12) {
            throw DomainError("stationary step at index " + std::to_string(i) +
                              ": rotation angle undefined");
        }
        const double deg =
            (vr == 0.0) ? 90.0 : rad_to_deg(std::atan(std::abs(vp / vr)));
        series.deg.push_back(deg);
        series.t.push_back(path.has_timestamps() ? path.timestamps[i + 1]
                                                 : static_cast<double>(i + 1));
    }
    return series;
}

AngleSeries align_offset(const AngleSeries& series) {
    if (series.deg.empty()) {
        throw DomainError("cannot offset-align an empty series");
    }
    AngleSeries out;
    out.t = series.t;
    out.deg.reserve(series.deg.size());
    const double first = series.deg.front();
    for (double v : series.deg) {
        out.deg.push_back(v - first);
    }
    return out;
}

AngleSeries axis_series(const ImuLog& log, char axis) {
    AngleSeries out;
    out.t.reserve(log.size());
    out.deg.reserve(log.size());
    for (const ImuSample& s : log.samples) {
        out.t.push_back(s.t);
        switch (axis) {
        case 'x': out.deg.push_back(s.zeta_x); break;
        case 'y': out.deg.push_back(s.zeta_y); break;
        case 'z': out.deg.push_back(s.zeta_z); break;
        default: throw DomainError("axis must be 'x', 'y' or 'z'");
        }
    }
    return out;
}

std::vector<ImuLog> split_cycles(const ImuLog& log, double period_s) {
    if (!(period_s > 0.0)) {
        throw DomainError("cycle period must be positive");
    }
    log.validate();
    if (log.samples.empty()) {
        return {};
    }
    const double t0 = log.samples.front().t;
    const double duration = log.samples.back().t - t0;
    const auto cycles = static_cast<std::size_t>(std::floor(duration / period_s));

    std::vector<ImuLog> out(cycles);
    for (const ImuSample& s : log.samples) {
        const auto k = static_cast<std::size_t>(std::floor((s.t - t0) / period_s));
        if (k < cycles) {
            out[k].samples.push_back(s);
        }
    }
    return out;
}

CycleErrorReport cycle_error(const AngleSeries& measured, const AngleSeries& theoretical) {
    if (measured.size() == 0 || theoretical.size() == 0) {
        throw DomainError("cycle error needs non-empty series");
    }

    auto interp = [&measured](double t) {
        const auto& ts = measured.t;
        if (t <= ts.front()) return measured.deg.front();
        if (t >= ts.back()) return measured.deg.back();
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const auto hi = static_cast<std::size_t>(it - ts.begin());
        const std::size_t lo = hi - 1;
        const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
        return measured.deg[lo] + w * (measured.deg[hi] - measured.deg[lo]);
    };

    CycleErrorReport report;
    report.error.t = theoretical.t;
    report.error.deg.reserve(theoretical.size());
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < theoretical.size(); ++i) {
        const double e = interp(theoretical.t[i]) - theoretical.deg[i];
        report.error.deg.push_back(e);
        sum_sq += e * e;
        report.max_abs_deg = std::max(report.max_abs_deg, std::abs(e));
    }
    report.rms_deg = std::sqrt(sum_sq / static_cast<double>(theoretical.size()));
    return report;
}

} // namespace fivebar
