// Command-line front end tying the pipeline together: kinematics queries,
// dimensional synthesis, cycle planning, encoder schedules, playback
// simulation, rotation-angle analysis and SVG charts.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fivebar/actuation.hpp"
#include "fivebar/analysis.hpp"
#include "fivebar/io.hpp"
#include "fivebar/mechanism.hpp"
#include "fivebar/planner.hpp"
#include "fivebar/plot.hpp"
#include "fivebar/synthesis.hpp"

namespace {

using namespace fivebar;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFile = 3;
constexpr int kExitCompute = 4;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

ProjectConfig resolve_config(const std::string& config_path) {
    if (config_path.empty() || config_path == "default") {
        return ProjectConfig{};
    }
    return load_config(config_path);
}

/// Waypoints for both motors (M1 drives the far crank theta2, M2 the near
/// crank theta1), radians.
struct MotorWaypoints {
    CycleWaypoints m1;
    CycleWaypoints m2;
};

CycleWaypoints waypoints_from_triplet(const std::vector<double>& deg) {
    return {deg_to_rad(deg[0]), deg_to_rad(deg[1]), deg_to_rad(deg[2]), deg_to_rad(deg[1]),
            deg_to_rad(deg[0])};
}

/// Derives start/via/extended angles from a desired path: the endpoints via
/// inverse kinematics of the first and last point, the via from the point
/// reached at the t_v1 fraction of the half-cycle.
MotorWaypoints waypoints_from_path(const PlanarPath& desired, const DesignVector& design,
                                   ElbowConfig elbows, const CycleTiming& timing) {
    const MechanismParams mech = design.mechanism();
    const JointState start = inverse_kinematics(mech, desired.points.front(), elbows);
    const JointState ext = inverse_kinematics(mech, desired.points.back(), elbows);

    const double frac = timing.t_v1 / timing.t_f1;
    std::size_t via_idx;
    if (desired.has_timestamps()) {
        const double t0 = desired.timestamps.front();
        const double t_via = t0 + frac * (desired.timestamps.back() - t0);
        via_idx = 0;
        for (std::size_t i = 1; i < desired.size(); ++i) {
            if (std::abs(desired.timestamps[i] - t_via) <
                std::abs(desired.timestamps[via_idx] - t_via)) {
                via_idx = i;
            }
        }
    } else {
        via_idx = static_cast<std::size_t>(
            std::lround(frac * static_cast<double>(desired.size() - 1)));
    }
    const JointState via = inverse_kinematics(mech, desired.points[via_idx], elbows);

    MotorWaypoints wp;
    wp.m1 = {start.theta2, via.theta2, ext.theta2, via.theta2, start.theta2};
    wp.m2 = {start.theta1, via.theta1, ext.theta1, via.theta1, start.theta1};
    return wp;
}

struct PlanArgs {
    std::string config;
    std::string desired_csv;
    std::string design_report;
    std::vector<double> m1_deg;
    std::vector<double> m2_deg;
};

void add_plan_inputs(CLI::App* cmd, PlanArgs& args) {
    cmd->add_option("--config", args.config, "config file (omit for built-in profile)");
    cmd->add_option("--m1", args.m1_deg,
                    "motor 1 start,via,extended link angles in degrees")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--m2", args.m2_deg,
                    "motor 2 start,via,extended link angles in degrees")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--desired", args.desired_csv,
                    "desired path CSV; waypoints derived by inverse kinematics");
    cmd->add_option("--design", args.design_report,
                    "synthesis report JSON overriding the config design");
}

MotorWaypoints resolve_waypoints(const PlanArgs& args, const ProjectConfig& cfg) {
    if (!args.m1_deg.empty() && !args.m2_deg.empty()) {
        return {waypoints_from_triplet(args.m1_deg), waypoints_from_triplet(args.m2_deg)};
    }
    if (!args.m1_deg.empty() || !args.m2_deg.empty()) {
        throw CLI::ValidationError("--m1 and --m2 must be given together");
    }
    if (args.desired_csv.empty()) {
        throw CLI::ValidationError("need either --m1/--m2 or --desired");
    }
    const PlanarPath desired = load_path_csv(args.desired_csv);
    const DesignVector design = args.design_report.empty()
                                    ? cfg.default_design()
                                    : load_design_from_report(args.design_report);
    return waypoints_from_path(desired, design, cfg.elbows, cfg.timing);
}

AngleSeries theoretical_from_path(const PlanarPath& desired, const CycleTiming& timing) {
    // rotation angle uses the flexion-to-extension stretch only
    PlanarPath half = desired;
    if (desired.has_timestamps()) {
        const double limit = desired.timestamps.front() + timing.t_f1;
        PlanarPath trimmed;
        for (std::size_t i = 0; i < desired.size(); ++i) {
            if (desired.timestamps[i] <= limit + 1e-12) {
                trimmed.points.push_back(desired.points[i]);
                trimmed.timestamps.push_back(desired.timestamps[i]);
            }
        }
        half = trimmed;
    }
    return align_offset(theoretical_rotation(half));
}

int dispatch(CLI::App& app) {
    // ---- fk ----
    auto* fk = app.add_subcommand("fk", "forward kinematics of one pose");
    static struct {
        double theta1_deg = 0.0, theta2_deg = 0.0;
        std::string config;
    } fk_args;
    fk->add_option("--theta1", fk_args.theta1_deg, "crank 1 angle, degrees")->required();
    fk->add_option("--theta2", fk_args.theta2_deg, "crank 2 angle, degrees")->required();
    fk->add_option("--config", fk_args.config, "config file (omit for built-in profile)");
    fk->callback([&] {
        const ProjectConfig cfg = resolve_config(fk_args.config);
        const Point2 c = forward_kinematics(
            cfg.mechanism,
            {deg_to_rad(fk_args.theta1_deg), deg_to_rad(fk_args.theta2_deg), std::nullopt});
        std::cout << "C_x_mm=" << num(c.x) << " C_z_mm=" << num(c.z) << "\n";
    });

    // ---- ik ----
    auto* ik = app.add_subcommand("ik", "inverse kinematics of one target point");
    static struct {
        double x = 0.0, z = 0.0;
        std::string config;
    } ik_args;
    ik->add_option("--x", ik_args.x, "target x, mm")->required();
    ik->add_option("--z", ik_args.z, "target z, mm")->required();
    ik->add_option("--config", ik_args.config, "config file (omit for built-in profile)");
    ik->callback([&] {
        const ProjectConfig cfg = resolve_config(ik_args.config);
        const JointState j =
            inverse_kinematics(cfg.mechanism, {ik_args.x, ik_args.z}, cfg.elbows);
        std::cout << "theta1_deg=" << num(rad_to_deg(j.theta1))
                  << " theta2_deg=" << num(rad_to_deg(j.theta2)) << "\n";
    });

    // ---- feas ----
    auto* feas = app.add_subcommand("feas", "feasibility report for one target point");
    static struct {
        double x = 0.0, z = 0.0;
        std::string config;
    } feas_args;
    feas->add_option("--x", feas_args.x, "target x, mm")->required();
    feas->add_option("--z", feas_args.z, "target z, mm")->required();
    feas->add_option("--config", feas_args.config, "config file (omit for built-in profile)");
    feas->callback([&] {
        const ProjectConfig cfg = resolve_config(feas_args.config);
        const FeasibilityReport rep = feasibility(cfg.mechanism, {feas_args.x, feas_args.z});
        std::cout << "r1=" << num(rep.r1) << " r2=" << num(rep.r2) << " h_mm=" << num(rep.h)
                  << " geometric_ok=" << (rep.geometric_ok ? "true" : "false")
                  << " paper_r3_r4_ok=" << (rep.paper_r3_r4_ok ? "true" : "false") << "\n";
    });

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "dimensional synthesis against a desired path");
    static struct {
        std::string config;
        std::string desired_csv;
        std::string out = "synthesis_report.json";
        int restarts = 0;
        std::uint64_t seed = 1;
    } synth_args;
    synth->add_option("--desired", synth_args.desired_csv, "desired path CSV")->required();
    synth->add_option("--out", synth_args.out, "output report JSON");
    synth->add_option("--config", synth_args.config, "config file (omit for built-in profile)");
    synth->add_option("--restarts", synth_args.restarts, "extra random restarts (default 0)");
    synth->add_option("--seed", synth_args.seed, "random seed for restarts");
    synth->callback([&] {
        const ProjectConfig cfg = resolve_config(synth_args.config);
        const PlanarPath desired = load_path_csv(synth_args.desired_csv);
        const OptimizationResult result =
            (synth_args.restarts > 0)
                ? synthesize_multistart(desired, cfg.bounds, cfg.default_design(),
                                        synth_args.restarts, synth_args.seed, cfg.synthesis)
                : synthesize(desired, cfg.bounds, cfg.default_design(), cfg.synthesis);
        save_synthesis_report(result, synth_args.out);
        std::cout << "error_mm=" << num(result.error_mm)
                  << " evaluations=" << result.evaluations
                  << " converged=" << (result.converged ? "true" : "false") << " report="
                  << synth_args.out << "\n";
    });

    // ---- plan ----
    auto* plan = app.add_subcommand("plan", "quintic cycle plan, writes per-motor profiles");
    static PlanArgs plan_args;
    static struct {
        std::string out_prefix = "plan";
        double rate_hz = 100.0;
    } plan_out;
    add_plan_inputs(plan, plan_args);
    plan->add_option("--out-prefix", plan_out.out_prefix, "output prefix for profile CSVs");
    plan->add_option("--rate", plan_out.rate_hz, "profile sampling rate, Hz");
    plan->callback([&] {
        const ProjectConfig cfg = resolve_config(plan_args.config);
        const MotorWaypoints wp = resolve_waypoints(plan_args, cfg);
        const PiecewiseQuintic m1 = plan_cycle(wp.m1, cfg.timing);
        const PiecewiseQuintic m2 = plan_cycle(wp.m2, cfg.timing);
        const std::string f1 = plan_out.out_prefix + "_m1_profile.csv";
        const std::string f2 = plan_out.out_prefix + "_m2_profile.csv";
        save_profile_csv(sample(m1, plan_out.rate_hz), f1);
        save_profile_csv(sample(m2, plan_out.rate_hz), f2);
        std::cout << "wrote " << f1 << " and " << f2 << "\n";
    });

    // ---- schedule ----
    auto* sched = app.add_subcommand("schedule", "encoder setpoint schedule for both motors");
    static PlanArgs sched_args;
    static struct {
        std::string out = "schedule.csv";
        double rate_hz = 100.0;
    } sched_out;
    add_plan_inputs(sched, sched_args);
    sched->add_option("--out", sched_out.out, "output schedule CSV");
    sched->add_option("--rate", sched_out.rate_hz, "setpoint rate, Hz");
    sched->callback([&] {
        const ProjectConfig cfg = resolve_config(sched_args.config);
        const MotorWaypoints wp = resolve_waypoints(sched_args, cfg);
        const PiecewiseQuintic m1 = plan_cycle(wp.m1, cfg.timing);
        const PiecewiseQuintic m2 = plan_cycle(wp.m2, cfg.timing);
        const SetpointSchedule schedule =
            schedule_from_plan(m1, m2, cfg.m1_cal, cfg.m2_cal, sched_out.rate_hz);
        save_schedule_csv(schedule, sched_out.out);
        std::cout << "wrote " << sched_out.out << " (" << schedule.size() << " setpoints)\n";
    });

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "first-order-lag playback of a schedule");
    static struct {
        std::string schedule_csv;
        std::string out = "achieved.csv";
        double lag_s = 0.0;
    } sim_args;
    sim->add_option("--schedule", sim_args.schedule_csv, "schedule CSV")->required();
    sim->add_option("--lag", sim_args.lag_s, "lag time constant, s");
    sim->add_option("--out", sim_args.out, "output achieved-counts CSV");
    sim->callback([&] {
        const SetpointSchedule schedule = load_schedule_csv(sim_args.schedule_csv);
        save_schedule_csv(simulate_encoder_playback(schedule, sim_args.lag_s), sim_args.out);
        std::cout << "wrote " << sim_args.out << "\n";
    });

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "per-cycle rotation-angle error vs theory");
    static struct {
        std::string config;
        std::string imu_csv;
        std::string desired_csv;
        std::string out_prefix = "analysis";
        double period_s = 0.0; // 0 = config cycle duration
    } an_args;
    analyze->add_option("--imu", an_args.imu_csv, "measured IMU log CSV")->required();
    analyze->add_option("--desired", an_args.desired_csv, "desired path CSV")->required();
    analyze->add_option("--config", an_args.config, "config file (omit for built-in profile)");
    analyze->add_option("--period", an_args.period_s, "cycle period, s (default: cycle time)");
    analyze->add_option("--out-prefix", an_args.out_prefix, "output prefix");
    analyze->callback([&] {
        const ProjectConfig cfg = resolve_config(an_args.config);
        const double period = (an_args.period_s > 0.0) ? an_args.period_s : cfg.timing.t_f2;
        const PlanarPath desired = load_path_csv(an_args.desired_csv);
        const AngleSeries theo = theoretical_from_path(desired, cfg.timing);
        save_angle_series_csv(theo, an_args.out_prefix + "_theoretical.csv");

        const ImuLog log = load_imu_csv(an_args.imu_csv);
        const std::vector<ImuLog> cycles = split_cycles(log, period);

        nlohmann::json summary;
        summary["period_s"] = period;
        summary["cycles"] = nlohmann::json::array();
        for (std::size_t k = 0; k < cycles.size(); ++k) {
            AngleSeries measured = axis_series(cycles[k], 'y');
            if (measured.t.empty()) {
                continue;
            }
            const double t0 = measured.t.front();
            for (double& t : measured.t) {
                t -= t0;
            }
            const CycleErrorReport rep = cycle_error(align_offset(measured), theo);
            const std::string name =
                an_args.out_prefix + "_cycle" + std::to_string(k + 1) + "_error.csv";
            save_angle_series_csv(rep.error, name);
            summary["cycles"].push_back({{"index", k + 1},
                                         {"rms_deg", rep.rms_deg},
                                         {"max_abs_deg", rep.max_abs_deg},
                                         {"file", std::filesystem::path(name).filename().string()}});
            std::cout << "cycle " << (k + 1) << ": rms_deg=" << num(rep.rms_deg)
                      << " max_abs_deg=" << num(rep.max_abs_deg) << "\n";
        }
        std::ofstream out(an_args.out_prefix + "_summary.json");
        if (!out) {
            throw IoError("cannot write " + an_args.out_prefix + "_summary.json");
        }
        out << summary.dump(2) << "\n";
        std::cout << "wrote " << an_args.out_prefix << "_summary.json (" << cycles.size()
                  << " cycles)\n";
    });

    // ---- plot ----
    auto* plot = app.add_subcommand("plot", "render a toolkit CSV as an SVG chart");
    static struct {
        std::string in_csv;
        std::string out_svg = "chart.svg";
    } plot_args;
    plot->add_option("--in", plot_args.in_csv, "input CSV")->required();
    plot->add_option("--out", plot_args.out_svg, "output SVG");
    plot->callback([&] { plot_csv(plot_args.in_csv, plot_args.out_svg); });

    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fivebar: design and analysis toolkit for a symmetric five-bar "
                 "finger-rehabilitation linkage"};
    app.require_subcommand(1);
    dispatch(app);

    if (argc <= 1) {
        std::cout << app.help();
        return kExitUsage;
    }

    try {
        self_check_ik_convention();
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFile;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    }
    return kExitOk;
}
