#include "fivebar/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace fivebar {

namespace {

using Array7 = std::array<double, DesignVector::kSize>;

double penalized_objective(const DesignVector& design, const PlanarPath& desired) {
    double value = objective_error(design, desired);
    const double l1 = design.l1, l2 = design.l2, l0 = design.l0;
    for (const Point2& d : desired.points) {
        const double r1 = std::abs((l1 * l1 + l2 * l2 - (d.x * d.x + d.z * d.z)) /
                                   (2.0 * l1 * l2));
        const double r2 =
            std::abs((l2 * l2 + l1 * l1 - ((l0 - d.x) * (l0 - d.x) + d.z * d.z)) /
                     (2.0 * l2 * l1));
        if (r1 >= 1.0) {
            value += kConstraintPenaltyWeight * (r1 - 1.0) * (r1 - 1.0);
        }
        if (r2 >= 1.0) {
            value += kConstraintPenaltyWeight * (r2 - 1.0) * (r2 - 1.0);
        }
    }
    return value;
}

Array7 clamp01(Array7 u) {
    for (double& v : u) {
        v = std::clamp(v, 0.0, 1.0);
    }
    return u;
}

} // namespace

bool DesignVector::finite() const {
    for (double v : as_array()) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

void Bounds::validate() const {
    const Array7 lo = lower.as_array();
    const Array7 hi = upper.as_array();
    for (std::size_t i = 0; i < DesignVector::kSize; ++i) {
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || !(lo[i] <= hi[i])) {
            throw DomainError("bounds must be finite with lower <= upper component-wise");
        }
    }
    if (!(lower.l0 > 0.0) || !(lower.l1 > 0.0) || !(lower.l2 > 0.0)) {
        throw DomainError("length lower bounds must be positive");
    }
}

bool Bounds::contains(const DesignVector& d) const {
    const Array7 lo = lower.as_array();
    const Array7 hi = upper.as_array();
    const Array7 x = d.as_array();
    for (std::size_t i = 0; i < DesignVector::kSize; ++i) {
        if (x[i] < lo[i] || x[i] > hi[i]) {
            return false;
        }
    }
    return true;
}

Bounds Bounds::defaults() {
    Bounds b;
    b.lower = {20.0, 20.0, 20.0, 0.0, 0.0, 0.0, 0.0};
    b.upper = {200.0, 200.0, 200.0, std::numbers::pi, std::numbers::pi,
               std::numbers::pi, std::numbers::pi};
    return b;
}

double objective_error(const DesignVector& design, const PlanarPath& desired) {
    if (!design.finite()) {
        throw DomainError("design vector has non-finite components");
    }
    if (desired.points.empty()) {
        throw DomainError("desired path must have at least one point");
    }
    const MechanismParams mech = design.mechanism();
    const std::size_t n = desired.points.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = (n > 1) ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        const JointState joints{
            design.theta1_start + s * (design.theta1_end - design.theta1_start),
            design.theta2_start + s * (design.theta2_end - design.theta2_start),
            std::nullopt};
        try {
            total += distance(forward_kinematics(mech, joints), desired.points[i]);
        } catch (const InfeasibleConfigError&) {
            total += kInfeasibleSamplePenaltyMm;
        }
    }
    return total / static_cast<double>(n);
}

OptimizationResult synthesize(const PlanarPath& desired, const Bounds& bounds,
                              const DesignVector& init, const SynthesisOptions& opts) {
    bounds.validate();
    if (!init.finite() || !bounds.contains(init)) {
        throw DomainError("initial design must be finite and inside the bounds");
    }
    if (desired.points.empty()) {
        throw DomainError("desired path must have at least one point");
    }

    const Array7 lo = bounds.lower.as_array();
    const Array7 hi = bounds.upper.as_array();
    Array7 span{};
    for (std::size_t i = 0; i < DesignVector::kSize; ++i) {
        span[i] = hi[i] - lo[i];
    }

    auto to_design = [&](const Array7& u) {
        Array7 x{};
        for (std::size_t i = 0; i < DesignVector::kSize; ++i) {
            x[i] = lo[i] + u[i] * span[i];
        }
        return DesignVector::from_array(x);
    };

    OptimizationResult result;
    int evaluations = 0;
    auto objective = [&](const Array7& u) {
        ++evaluations;
        return penalized_objective(to_design(u), desired);
    };

    Array7 u{};
    {
        const Array7 x = init.as_array();
        for (std::size_t i = 0; i < DesignVector::kSize; ++i) {
            u[i] = (span[i] > 0.0) ? (x[i] - lo[i]) / span[i] : 0.0;
        }
        u = clamp01(u);
    }

    constexpr double kArmijoC = 1e-4;
    constexpr double kShrink = 0.5;
    constexpr double kGradStep = 1e-6;   // in normalized coordinates
    constexpr double kMinStep = 1e-14;

    double f = 0.0;
    Array7 best_u = u;
    bool have_f = false;
    if (opts.max_evaluations >= 1) {
        f = objective(u);
        have_f = true;
        result.history.emplace_back(0, f);
    }
    double best_f = have_f ? f : std::numeric_limits<double>::infinity();

    double step = 1.0;
    Array7 prev_u{};
    Array7 prev_g{};
    bool have_prev = false;

    int iter = 0;
    while (have_f && iter < opts.max_iterations) {
        ++iter;
        if (evaluations + 2 * static_cast<int>(DesignVector::kSize) > opts.max_evaluations) {
            break; // not enough budget for a gradient
        }
        Array7 g{};
        bool zero_grad = true;
        for (std::size_t j = 0; j < DesignVector::kSize; ++j) {
            Array7 up = u;
            Array7 um = u;
            up[j] = std::clamp(up[j] + kGradStep, 0.0, 1.0);
            um[j] = std::clamp(um[j] - kGradStep, 0.0, 1.0);
            const double denom = up[j] - um[j];
            g[j] = (denom > 0.0) ? (objective(up) - objective(um)) / denom : 0.0;
            if (g[j] != 0.0) {
                zero_grad = false;
            }
        }
        if (zero_grad) {
            result.converged = true;
            break;
        }

        // Barzilai-Borwein trial step, safeguarded by Armijo backtracking
        if (have_prev) {
            double ss = 0.0;
            double sy = 0.0;
            for (std::size_t j = 0; j < DesignVector::kSize; ++j) {
                const double s = u[j] - prev_u[j];
                ss += s * s;
                sy += s * (g[j] - prev_g[j]);
            }
            if (sy > 1e-30) {
                step = std::clamp(ss / sy, 1e-10, 1e3);
            }
        }

        bool accepted = false;
        Array7 candidate{};
        double f_candidate = 0.0;
        double trial = step;
        while (trial > kMinStep) {
            if (evaluations + 1 > opts.max_evaluations) {
                break;
            }
            Array7 un = u;
            for (std::size_t j = 0; j < DesignVector::kSize; ++j) {
                un[j] -= trial * g[j];
            }
            un = clamp01(un);
            double slope = 0.0;
            for (std::size_t j = 0; j < DesignVector::kSize; ++j) {
                slope += g[j] * (un[j] - u[j]);
            }
            const double fn = objective(un);
            if (fn <= f + kArmijoC * slope) {
                accepted = true;
                candidate = un;
                f_candidate = fn;
                break;
            }
            trial *= kShrink;
        }
        if (!accepted) {
            // step underflow means no descent direction survives projection
            result.converged = trial <= kMinStep;
            break;
        }

        prev_u = u;
        prev_g = g;
        have_prev = true;

        const double improvement = f - f_candidate;
        u = candidate;
        f = f_candidate;
        result.history.emplace_back(iter, f);
        if (f < best_f) {
            best_f = f;
            best_u = u;
        }
        if (improvement < opts.tolerance_mm) {
            result.converged = true;
            break;
        }
    }

    result.best = to_design(best_u);
    result.evaluations = evaluations;
    result.error_mm = objective_error(result.best, desired);

    ConstraintReport& cr = result.constraints;
    cr.geometric_ok = true;
    for (const Point2& d : desired.points) {
        const FeasibilityReport fr = feasibility(result.best.mechanism(), d);
        cr.worst_abs_r1 = std::max(cr.worst_abs_r1, std::abs(fr.r1));
        cr.worst_abs_r2 = std::max(cr.worst_abs_r2, std::abs(fr.r2));
        cr.geometric_ok = cr.geometric_ok && fr.geometric_ok;
    }
    return result;
}

OptimizationResult synthesize_multistart(const PlanarPath& desired, const Bounds& bounds,
                                         const DesignVector& init, int restarts,
                                         std::uint64_t seed, const SynthesisOptions& opts) {
    OptimizationResult best = synthesize(desired, bounds, init, opts);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Array7 lo = bounds.lower.as_array();
    const Array7 hi = bounds.upper.as_array();
    for (int r = 0; r < restarts; ++r) {
        Array7 x{};
        for (std::size_t i = 0; i < DesignVector::kSize; ++i) {
            x[i] = lo[i] + unit(rng) * (hi[i] - lo[i]);
        }
        const OptimizationResult run =
            synthesize(desired, bounds, DesignVector::from_array(x), opts);
        if (run.error_mm < best.error_mm) {
            best = run;
        }
    }
    return best;
}

std::vector<JointState> joint_waypoints(const DesignVector& design, const PlanarPath& desired,
                                        ElbowConfig elbows) {
    const MechanismParams mech = design.mechanism();
    std::vector<JointState> out;
    out.reserve(desired.points.size());
    for (std::size_t i = 0; i < desired.points.size(); ++i) {
        try {
            JointState j = inverse_kinematics(mech, desired.points[i], elbows);
            if (desired.has_timestamps()) {
                j.t = desired.timestamps[i];
            }
            out.push_back(j);
        } catch (const UnreachableTargetError& e) {
            throw UnreachableTargetError(
                "desired point " + std::to_string(i) + ": " + e.what(), i);
        }
    }
    return out;
}

} // namespace fivebar
