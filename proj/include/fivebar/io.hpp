#pragma once

#include <filesystem>
#include <string>

#include "fivebar/actuation.hpp"
#include "fivebar/analysis.hpp"
#include "fivebar/planner.hpp"
#include "fivebar/synthesis.hpp"
#include "fivebar/types.hpp"

namespace fivebar {

// CSV dialect: comma separator, '.' decimal point, UTF-8, '#' comment lines.
// Values are written with 12 significant digits so paths round-trip well
// under 1e-9 mm at desk scale.

/// Header `x_mm,z_mm` or `t_s,x_mm,z_mm`.
PlanarPath load_path_csv(const std::filesystem::path& file);
void save_path_csv(const PlanarPath& path, const std::filesystem::path& file,
                   const std::string& comment = {});

/// Header `t_s,zeta_x_deg,zeta_y_deg,zeta_z_deg`.
ImuLog load_imu_csv(const std::filesystem::path& file);
void save_imu_csv(const ImuLog& log, const std::filesystem::path& file);

/// Header `t_s,angle_deg`.
AngleSeries load_angle_series_csv(const std::filesystem::path& file);
void save_angle_series_csv(const AngleSeries& series, const std::filesystem::path& file);

/// Header `t_s,theta_deg,omega_deg_s,alpha_deg_s2`; samples arrive in
/// radians and are converted on write.
void save_profile_csv(const std::vector<ProfileSample>& profile,
                      const std::filesystem::path& file);

/// Header `t_s,m1_counts,m2_counts`.
SetpointSchedule load_schedule_csv(const std::filesystem::path& file);
void save_schedule_csv(const SetpointSchedule& schedule, const std::filesystem::path& file);

/// Synthesis result as a JSON report (design in mm/degrees, history,
/// constraint summary); load restores the design vector for downstream
/// commands.
void save_synthesis_report(const OptimizationResult& result, const std::filesystem::path& file);
DesignVector load_design_from_report(const std::filesystem::path& file);

/// Everything the CLI needs to run the pipeline. The file format is JSON
/// with exactly these keys; unknown keys are rejected.
struct ProjectConfig {
    MechanismParams mechanism{101.20, 101.09, 108.67};
    ElbowConfig elbows{};
    Bounds bounds = Bounds::defaults();
    CycleTiming timing{};
    MotorCalibration m1_cal{4.269, 83.07, +1};
    MotorCalibration m2_cal{7.710, 153.55, +1};
    SynthesisOptions synthesis{};

    /// Sweep endpoints of the default design, degrees (crank 1 then crank 2).
    double theta1_start_deg = 153.55;
    double theta1_end_deg = 92.37;
    double theta2_start_deg = 83.07;
    double theta2_end_deg = 40.44;

    DesignVector default_design() const {
        return {mechanism.l1,
                mechanism.l2,
                mechanism.l0,
                deg_to_rad(theta1_start_deg),
                deg_to_rad(theta1_end_deg),
                deg_to_rad(theta2_start_deg),
                deg_to_rad(theta2_end_deg)};
    }

    void validate() const;
};

ProjectConfig load_config(const std::filesystem::path& file);
void save_config(const ProjectConfig& config, const std::filesystem::path& file);

} // namespace fivebar
