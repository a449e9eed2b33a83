#include "fivebar/mechanism.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fivebar {

namespace {

struct Elbows {
    Point2 b; // near elbow, crank from the origin pivot
    Point2 f; // far elbow, crank from the ground pivot at (l0, 0)
};

Elbows elbow_points(const MechanismParams& p, const JointState& j) {
    return {{p.l1 * std::cos(j.theta1), p.l1 * std::sin(j.theta1)},
            {p.l0 + p.l1 * std::cos(j.theta2), p.l1 * std::sin(j.theta2)}};
}

} // namespace

Point2 forward_kinematics(const MechanismParams& params, const JointState& joints) {
    params.validate();
    const Elbows e = elbow_points(params, joints);
    const double ux = e.f.x - e.b.x;
    const double uz = e.f.z - e.b.z;
    const double h = std::hypot(ux, uz);
    if (h < kCoincidentElbowTol) {
        throw InfeasibleConfigError("coincident elbows (H ~ 0), end-effector undefined");
    }
    if (h > 2.0 * params.l2) {
        throw InfeasibleConfigError("elbow distance H = " + std::to_string(h) +
                                    " mm exceeds 2*l2 = " + std::to_string(2.0 * params.l2) +
                                    " mm; coupler circles do not intersect");
    }
    const double depth = std::sqrt(params.l2 * params.l2 - h * h / 4.0);
    const Point2 mid{(e.b.x + e.f.x) / 2.0, (e.b.z + e.f.z) / 2.0};
    // upper intersection: midpoint plus the left-hand normal of the elbow chord
    return {mid.x - uz / h * depth, mid.z + ux / h * depth};
}

JointState inverse_kinematics(const MechanismParams& params, Point2 target,
                              ElbowConfig elbows) {
    params.validate();
    elbows.validate();

    const double r_sq = target.x * target.x + target.z * target.z;
    const double cos_phi = (params.l1 * params.l1 + params.l2 * params.l2 - r_sq) /
                           (2.0 * params.l1 * params.l2);
    if (!(std::abs(cos_phi) < 1.0)) {
        throw UnreachableTargetError("target outside the near crank-coupler annulus (|R1| >= 1)");
    }
    const double rho_sq = (params.l0 - target.x) * (params.l0 - target.x) + target.z * target.z;
    const double cos_alpha = (params.l2 * params.l2 + params.l1 * params.l1 - rho_sq) /
                             (2.0 * params.l2 * params.l1);
    if (!(std::abs(cos_alpha) < 1.0)) {
        throw UnreachableTargetError("target outside the far crank-coupler annulus (|R2| >= 1)");
    }

    const double gamma = std::atan2(target.z, target.x);
    const double sin_phi = elbows.b_sign * std::sqrt(1.0 - cos_phi * cos_phi);
    const double phi = std::atan2(sin_phi, cos_phi);
    const double beta = std::atan2(params.l2 * std::sin(std::numbers::pi - phi),
                                   params.l1 + params.l2 * std::cos(std::numbers::pi - phi));

    const double omega = std::numbers::pi - std::atan2(target.z, params.l0 - target.x);
    const double sin_alpha = elbows.f_sign * std::sqrt(1.0 - cos_alpha * cos_alpha);
    const double alpha = std::atan2(sin_alpha, cos_alpha);
    const double sigma = std::atan2(params.l2 * std::sin(std::numbers::pi - alpha),
                                    params.l1 + params.l2 * std::cos(std::numbers::pi - alpha));

    // theta2 takes the difference of omega and sigma; the sum breaks the
    // forward/inverse round trip (see self_check_ik_convention).
    return {gamma + beta, omega - sigma, std::nullopt};
}

FeasibilityReport feasibility(const MechanismParams& params, Point2 target) {
    params.validate();
    FeasibilityReport rep;
    const double r_sq = target.x * target.x + target.z * target.z;
    const double rho_sq = (params.l0 - target.x) * (params.l0 - target.x) + target.z * target.z;
    rep.r1 = (params.l1 * params.l1 + params.l2 * params.l2 - r_sq) /
             (2.0 * params.l1 * params.l2);
    rep.r2 = (params.l2 * params.l2 + params.l1 * params.l1 - rho_sq) /
             (2.0 * params.l2 * params.l1);

    rep.h = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(rep.r1) < 1.0 && std::abs(rep.r2) < 1.0) {
        const JointState j = inverse_kinematics(params, target);
        const Elbows e = elbow_points(params, j);
        rep.h = distance(e.b, e.f);
    }
    rep.geometric_ok = std::abs(rep.r1) < 1.0 && std::abs(rep.r2) < 1.0 &&
                       rep.h > kCoincidentElbowTol && rep.h <= 2.0 * params.l2;
    const double r4 = std::abs(std::sqrt(params.l2 * params.l2 / (rep.h * rep.h) - 0.25));
    rep.paper_r3_r4_ok = std::abs(rep.h) < 1.0 && r4 < 1.0;
    return rep;
}

PlanarPath trace_path(const MechanismParams& params, std::span<const JointState> joints) {
    PlanarPath path;
    path.points.reserve(joints.size());
    const bool timed = !joints.empty() && joints.front().t.has_value();
    if (timed) {
        path.timestamps.reserve(joints.size());
    }
    for (std::size_t i = 0; i < joints.size(); ++i) {
        try {
            path.points.push_back(forward_kinematics(params, joints[i]));
        } catch (const InfeasibleConfigError& e) {
            throw InfeasibleConfigError("joint state " + std::to_string(i) + ": " + e.what(), i);
        }
        if (timed) {
            if (!joints[i].t.has_value()) {
                throw DomainError("joint series mixes timed and untimed states");
            }
            path.timestamps.push_back(*joints[i].t);
        }
    }
    return path;
}

PlanarPath scale_amplitude(const PlanarPath& path, double factor, Point2 anchor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw DomainError("amplitude factor must be positive and finite");
    }
    PlanarPath out;
    out.points.reserve(path.points.size());
    for (const Point2& p : path.points) {
        out.points.push_back({anchor.x + factor * (p.x - anchor.x),
                              anchor.z + factor * (p.z - anchor.z)});
    }
    out.timestamps = path.timestamps;
    return out;
}

void self_check_ik_convention() {
    const MechanismParams probe{101.20, 101.09, 108.67};
    const JointState pose{deg_to_rad(92.37), deg_to_rad(40.44), std::nullopt};
    const Point2 c = forward_kinematics(probe, pose);
    const JointState back = inverse_kinematics(probe, c);
    if (std::abs(back.theta1 - pose.theta1) > 1e-9 ||
        std::abs(back.theta2 - pose.theta2) > 1e-9) {
        throw Error("inverse-kinematics sign convention failed the round-trip self-test");
    }
}

} // namespace fivebar
