#include "fivebar/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace fivebar {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CsvReader {
    explicit CsvReader(const std::filesystem::path& file) : name(file.string()), in(file) {
        if (!in) {
            throw IoError("cannot open " + name);
        }
    }

    /// Next non-comment, non-blank line split on commas; false at EOF.
    bool next_row(std::vector<std::string>& cells) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty() || line.front() == '#') {
                continue;
            }
            cells.clear();
            std::size_t start = 0;
            while (true) {
                const std::size_t comma = line.find(',', start);
                cells.push_back(line.substr(start, comma - start));
                if (comma == std::string::npos) {
                    break;
                }
                start = comma + 1;
            }
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw IoError(name + ": line " + std::to_string(line_no) + ": " + what);
    }

    double parse_double(const std::string& cell) const {
        double v = 0.0;
        const char* begin = cell.data();
        const char* end = begin + cell.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
            fail("malformed numeric cell '" + cell + "'");
        }
        return v;
    }

    long parse_long(const std::string& cell) const {
        long v = 0;
        const char* begin = cell.data();
        const char* end = begin + cell.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end) {
            fail("malformed integer cell '" + cell + "'");
        }
        return v;
    }

    std::string name;
    std::ifstream in;
    std::size_t line_no = 0;
};

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) {
        throw IoError("cannot write " + file.string());
    }
    return out;
}

std::string join(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            s += ',';
        }
        s += cells[i];
    }
    return s;
}

} // namespace

PlanarPath load_path_csv(const std::filesystem::path& file) {
    CsvReader reader(file);
    std::vector<std::string> cells;
    if (!reader.next_row(cells)) {
        throw IoError(reader.name + ": empty file");
    }
    bool timed = false;
    if (join(cells) == "x_mm,z_mm") {
        timed = false;
    } else if (join(cells) == "t_s,x_mm,z_mm") {
        timed = true;
    } else {
        reader.fail("expected header 'x_mm,z_mm' or 't_s,x_mm,z_mm'");
    }

    PlanarPath path;
    while (reader.next_row(cells)) {
        if (cells.size() != (timed ? 3u : 2u)) {
            reader.fail("expected " + std::to_string(timed ? 3 : 2) + " columns, got " +
                        std::to_string(cells.size()));
        }
        std::size_t c = 0;
        if (timed) {
            path.timestamps.push_back(reader.parse_double(cells[c++]));
        }
        const double x = reader.parse_double(cells[c++]);
        const double z = reader.parse_double(cells[c]);
        path.points.push_back({x, z});
    }
    if (path.points.empty()) {
        throw IoError(reader.name + ": no data rows");
    }
    path.validate();
    return path;
}

void save_path_csv(const PlanarPath& path, const std::filesystem::path& file,
                   const std::string& comment) {
    auto out = open_out(file);
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string line;
        while (std::getline(lines, line)) {
            out << "# " << line << "\n";
        }
    }
    const bool timed = path.has_timestamps();
    out << (timed ? "t_s,x_mm,z_mm" : "x_mm,z_mm") << "\n";
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        if (timed) {
            out << fmt(path.timestamps[i]) << ',';
        }
        out << fmt(path.points[i].x) << ',' << fmt(path.points[i].z) << "\n";
    }
}

ImuLog load_imu_csv(const std::filesystem::path& file) {
    CsvReader reader(file);
    std::vector<std::string> cells;
    if (!reader.next_row(cells)) {
        throw IoError(reader.name + ": empty file");
    }
    if (join(cells) != "t_s,zeta_x_deg,zeta_y_deg,zeta_z_deg") {
        reader.fail("expected header 't_s,zeta_x_deg,zeta_y_deg,zeta_z_deg'");
    }
    ImuLog log;
    while (reader.next_row(cells)) {
        if (cells.size() != 4) {
            reader.fail("expected 4 columns, got " + std::to_string(cells.size()));
        }
        log.samples.push_back({reader.parse_double(cells[0]), reader.parse_double(cells[1]),
                               reader.parse_double(cells[2]), reader.parse_double(cells[3])});
    }
    if (log.samples.empty()) {
        throw IoError(reader.name + ": no data rows");
    }
    log.validate();
    return log;
}

void save_imu_csv(const ImuLog& log, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "t_s,zeta_x_deg,zeta_y_deg,zeta_z_deg\n";
    for (const ImuSample& s : log.samples) {
        out << fmt(s.t) << ',' << fmt(s.zeta_x) << ',' << fmt(s.zeta_y) << ','
            << fmt(s.zeta_z) << "\n";
    }
}

AngleSeries load_angle_series_csv(const std::filesystem::path& file) {
    CsvReader reader(file);
    std::vector<std::string> cells;
    if (!reader.next_row(cells)) {
        throw IoError(reader.name + ": empty file");
    }
    if (join(cells) != "t_s,angle_deg") {
        reader.fail("expected header 't_s,angle_deg'");
    }
    AngleSeries series;
    while (reader.next_row(cells)) {
        if (cells.size() != 2) {
            reader.fail("expected 2 columns, got " + std::to_string(cells.size()));
        }
        series.t.push_back(reader.parse_double(cells[0]));
        series.deg.push_back(reader.parse_double(cells[1]));
    }
    if (series.t.empty()) {
        throw IoError(reader.name + ": no data rows");
    }
    return series;
}

void save_angle_series_csv(const AngleSeries& series, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "t_s,angle_deg\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << fmt(series.t[i]) << ',' << fmt(series.deg[i]) << "\n";
    }
}

void save_profile_csv(const std::vector<ProfileSample>& profile,
                      const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "t_s,theta_deg,omega_deg_s,alpha_deg_s2\n";
    for (const ProfileSample& s : profile) {
        out << fmt(s.t) << ',' << fmt(rad_to_deg(s.pos)) << ',' << fmt(rad_to_deg(s.vel))
            << ',' << fmt(rad_to_deg(s.acc)) << "\n";
    }
}

SetpointSchedule load_schedule_csv(const std::filesystem::path& file) {
    CsvReader reader(file);
    std::vector<std::string> cells;
    if (!reader.next_row(cells)) {
        throw IoError(reader.name + ": empty file");
    }
    if (join(cells) != "t_s,m1_counts,m2_counts") {
        reader.fail("expected header 't_s,m1_counts,m2_counts'");
    }
    SetpointSchedule schedule;
    while (reader.next_row(cells)) {
        if (cells.size() != 3) {
            reader.fail("expected 3 columns, got " + std::to_string(cells.size()));
        }
        schedule.t_s.push_back(reader.parse_double(cells[0]));
        schedule.m1_counts.push_back(reader.parse_long(cells[1]));
        schedule.m2_counts.push_back(reader.parse_long(cells[2]));
    }
    if (schedule.t_s.empty()) {
        throw IoError(reader.name + ": no data rows");
    }
    schedule.validate();
    return schedule;
}

void save_schedule_csv(const SetpointSchedule& schedule, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "t_s,m1_counts,m2_counts\n";
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        out << fmt(schedule.t_s[i]) << ',' << schedule.m1_counts[i] << ','
            << schedule.m2_counts[i] << "\n";
    }
}

namespace {

json design_to_json(const DesignVector& d) {
    return {{"l1_mm", d.l1},
            {"l2_mm", d.l2},
            {"l0_mm", d.l0},
            {"theta1_start_deg", rad_to_deg(d.theta1_start)},
            {"theta1_end_deg", rad_to_deg(d.theta1_end)},
            {"theta2_start_deg", rad_to_deg(d.theta2_start)},
            {"theta2_end_deg", rad_to_deg(d.theta2_end)}};
}

DesignVector design_from_json(const json& j) {
    return {j.at("l1_mm").get<double>(),
            j.at("l2_mm").get<double>(),
            j.at("l0_mm").get<double>(),
            deg_to_rad(j.at("theta1_start_deg").get<double>()),
            deg_to_rad(j.at("theta1_end_deg").get<double>()),
            deg_to_rad(j.at("theta2_start_deg").get<double>()),
            deg_to_rad(j.at("theta2_end_deg").get<double>())};
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw IoError("unknown key '" + key + "' in " + where);
        }
    }
}

json load_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot open " + file.string());
    }
    try {
        return json::parse(in, nullptr, true, true); // allow // comments
    } catch (const json::parse_error& e) {
        throw IoError(file.string() + ": " + e.what());
    }
}

} // namespace

void save_synthesis_report(const OptimizationResult& result,
                           const std::filesystem::path& file) {
    json j;
    j["best_design"] = design_to_json(result.best);
    j["error_mm"] = result.error_mm;
    j["evaluations"] = result.evaluations;
    j["converged"] = result.converged;
    json hist = json::array();
    for (const auto& [iter, e] : result.history) {
        hist.push_back({iter, e});
    }
    j["history"] = hist;
    j["constraints"] = {{"worst_abs_r1", result.constraints.worst_abs_r1},
                        {"worst_abs_r2", result.constraints.worst_abs_r2},
                        {"geometric_ok", result.constraints.geometric_ok}};
    auto out = open_out(file);
    out << j.dump(2) << "\n";
}

DesignVector load_design_from_report(const std::filesystem::path& file) {
    const json j = load_json_file(file);
    if (!j.contains("best_design")) {
        throw IoError(file.string() + ": missing 'best_design'");
    }
    try {
        return design_from_json(j.at("best_design"));
    } catch (const json::exception& e) {
        throw IoError(file.string() + ": " + e.what());
    }
}

void ProjectConfig::validate() const {
    mechanism.validate();
    elbows.validate();
    bounds.validate();
    timing.validate();
    m1_cal.validate();
    m2_cal.validate();
    if (synthesis.max_iterations < 0 || synthesis.max_evaluations < 0 ||
        !(synthesis.tolerance_mm >= 0.0)) {
        throw DomainError("synthesis budgets must be non-negative");
    }
}

ProjectConfig load_config(const std::filesystem::path& file) {
    const json j = load_json_file(file);
    ProjectConfig cfg;
    try {
        reject_unknown_keys(j, {"mechanism", "elbows", "design", "bounds", "timing",
                                "calibrations", "synthesis"},
                            "config root");
        if (j.contains("mechanism")) {
            const json& m = j.at("mechanism");
            reject_unknown_keys(m, {"l0_mm", "l1_mm", "l2_mm"}, "mechanism");
            cfg.mechanism.l0 = m.value("l0_mm", cfg.mechanism.l0);
            cfg.mechanism.l1 = m.value("l1_mm", cfg.mechanism.l1);
            cfg.mechanism.l2 = m.value("l2_mm", cfg.mechanism.l2);
        }
        if (j.contains("elbows")) {
            const json& e = j.at("elbows");
            reject_unknown_keys(e, {"b_sign", "f_sign"}, "elbows");
            cfg.elbows.b_sign = e.value("b_sign", cfg.elbows.b_sign);
            cfg.elbows.f_sign = e.value("f_sign", cfg.elbows.f_sign);
        }
        if (j.contains("design")) {
            const json& d = j.at("design");
            reject_unknown_keys(d, {"theta1_start_deg", "theta1_end_deg",
                                    "theta2_start_deg", "theta2_end_deg"},
                                "design");
            cfg.theta1_start_deg = d.value("theta1_start_deg", cfg.theta1_start_deg);
            cfg.theta1_end_deg = d.value("theta1_end_deg", cfg.theta1_end_deg);
            cfg.theta2_start_deg = d.value("theta2_start_deg", cfg.theta2_start_deg);
            cfg.theta2_end_deg = d.value("theta2_end_deg", cfg.theta2_end_deg);
        }
        if (j.contains("bounds")) {
            const json& b = j.at("bounds");
            reject_unknown_keys(b, {"lower", "upper"}, "bounds");
            if (b.contains("lower")) {
                cfg.bounds.lower = design_from_json(b.at("lower"));
            }
            if (b.contains("upper")) {
                cfg.bounds.upper = design_from_json(b.at("upper"));
            }
        }
        if (j.contains("timing")) {
            const json& t = j.at("timing");
            reject_unknown_keys(t, {"t_v1_s", "t_f1_s", "t_v2_s", "t_f2_s"}, "timing");
            cfg.timing.t_v1 = t.value("t_v1_s", cfg.timing.t_v1);
            cfg.timing.t_f1 = t.value("t_f1_s", cfg.timing.t_f1);
            cfg.timing.t_v2 = t.value("t_v2_s", cfg.timing.t_v2);
            cfg.timing.t_f2 = t.value("t_f2_s", cfg.timing.t_f2);
        }
        if (j.contains("calibrations")) {
            const json& c = j.at("calibrations");
            reject_unknown_keys(c, {"m1", "m2"}, "calibrations");
            auto read_cal = [](const json& jc, MotorCalibration& cal) {
                reject_unknown_keys(jc, {"counts_per_degree", "zero_angle_deg", "direction"},
                                    "calibration");
                cal.counts_per_degree = jc.value("counts_per_degree", cal.counts_per_degree);
                cal.zero_angle_deg = jc.value("zero_angle_deg", cal.zero_angle_deg);
                cal.direction = jc.value("direction", cal.direction);
            };
            if (c.contains("m1")) {
                read_cal(c.at("m1"), cfg.m1_cal);
            }
            if (c.contains("m2")) {
                read_cal(c.at("m2"), cfg.m2_cal);
            }
        }
        if (j.contains("synthesis")) {
            const json& s = j.at("synthesis");
            reject_unknown_keys(s, {"max_iterations", "max_evaluations", "tolerance_mm"},
                                "synthesis");
            cfg.synthesis.max_iterations = s.value("max_iterations", cfg.synthesis.max_iterations);
            cfg.synthesis.max_evaluations =
                s.value("max_evaluations", cfg.synthesis.max_evaluations);
            cfg.synthesis.tolerance_mm = s.value("tolerance_mm", cfg.synthesis.tolerance_mm);
        }
    } catch (const json::exception& e) {
        throw IoError(file.string() + ": " + e.what());
    }
    cfg.validate();
    return cfg;
}

void save_config(const ProjectConfig& cfg, const std::filesystem::path& file) {
    json j;
    j["mechanism"] = {{"l0_mm", cfg.mechanism.l0},
                      {"l1_mm", cfg.mechanism.l1},
                      {"l2_mm", cfg.mechanism.l2}};
    j["elbows"] = {{"b_sign", cfg.elbows.b_sign}, {"f_sign", cfg.elbows.f_sign}};
    j["design"] = {{"theta1_start_deg", cfg.theta1_start_deg},
                   {"theta1_end_deg", cfg.theta1_end_deg},
                   {"theta2_start_deg", cfg.theta2_start_deg},
                   {"theta2_end_deg", cfg.theta2_end_deg}};
    j["bounds"] = {{"lower", design_to_json(cfg.bounds.lower)},
                   {"upper", design_to_json(cfg.bounds.upper)}};
    j["timing"] = {{"t_v1_s", cfg.timing.t_v1},
                   {"t_f1_s", cfg.timing.t_f1},
                   {"t_v2_s", cfg.timing.t_v2},
                   {"t_f2_s", cfg.timing.t_f2}};
    j["calibrations"] = {{"m1",
                          {{"counts_per_degree", cfg.m1_cal.counts_per_degree},
                           {"zero_angle_deg", cfg.m1_cal.zero_angle_deg},
                           {"direction", cfg.m1_cal.direction}}},
                         {"m2",
                          {{"counts_per_degree", cfg.m2_cal.counts_per_degree},
                           {"zero_angle_deg", cfg.m2_cal.zero_angle_deg},
                           {"direction", cfg.m2_cal.direction}}}};
    j["synthesis"] = {{"max_iterations", cfg.synthesis.max_iterations},
                      {"max_evaluations", cfg.synthesis.max_evaluations},
                      {"tolerance_mm", cfg.synthesis.tolerance_mm}};
    auto out = open_out(file);
    out << j.dump(2) << "\n";
}

} // namespace fivebar
