#include "fivebar/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "fivebar/error.hpp"

namespace fivebar {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

/// Round tick spacing to 1/2/5 times a power of ten.
double nice_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    if (frac < 1.5) return mag;
    if (frac < 3.5) return 2.0 * mag;
    if (frac < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void write_svg_chart(const std::filesystem::path& file, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series) {
    if (series.empty()) {
        throw DomainError("chart needs at least one series");
    }
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    for (const PlotSeries& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty()) {
            throw DomainError("chart series must be non-empty with matching lengths");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (xmax == xmin) {
        xmax = xmin + 1.0;
    }
    if (ymax == ymin) {
        ymax = ymin + 1.0;
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto sy = [&](double y) { return kMarginTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    std::ofstream out(file);
    if (!out) {
        throw IoError("cannot write " + file.string());
    }
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\""
        << " text-anchor=\"middle\">" << escape(title) << "</text>\n";

    // axes
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xstep = nice_step(xmax - xmin);
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-12 * xstep; x += xstep) {
        out << "<line x1=\"" << sx(x) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << sx(x)
            << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << sx(x) << "\" y=\"" << kMarginTop + plot_h + 20
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(x)
            << "</text>\n";
    }
    const double ystep = nice_step(ymax - ymin);
    for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-12 * ystep; y += ystep) {
        out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << sy(y) << "\" x2=\"" << kMarginLeft
            << "\" y2=\"" << sy(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << sy(y) + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(y)
            << "</text>\n";
    }

    out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << escape(x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 18 " << kMarginTop + plot_h / 2 << ")\">" << escape(y_label)
        << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[k].x.size(); ++i) {
            out << num(sx(series[k].x[i])) << ',' << num(sy(series[k].y[i])) << ' ';
        }
        out << "\"/>\n";
        // legend entry
        const double ly = kMarginTop + 14 + 16 * static_cast<double>(k);
        out << "<line x1=\"" << kMarginLeft + plot_w - 130 << "\" y1=\"" << ly << "\" x2=\""
            << kMarginLeft + plot_w - 110 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kMarginLeft + plot_w - 105 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(series[k].label)
            << "</text>\n";
    }
    out << "</svg>\n";
}

void plot_csv(const std::filesystem::path& in_csv, const std::filesystem::path& out_svg) {
    std::ifstream in(in_csv);
    if (!in) {
        throw IoError("cannot open " + in_csv.string());
    }
    std::string line;
    std::vector<std::string> headers;
    std::vector<std::vector<double>> columns;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (headers.empty()) {
            headers = cells;
            columns.resize(headers.size());
            continue;
        }
        if (cells.size() != headers.size()) {
            throw IoError(in_csv.string() + ": line " + std::to_string(line_no) +
                          ": inconsistent column count");
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                columns[c].push_back(std::stod(cells[c]));
            } catch (const std::exception&) {
                throw IoError(in_csv.string() + ": line " + std::to_string(line_no) +
                              ": malformed numeric cell '" + cells[c] + "'");
            }
        }
    }
    if (headers.size() < 2 || columns[0].empty()) {
        throw IoError(in_csv.string() + ": nothing to plot");
    }

    std::vector<PlotSeries> series;
    for (std::size_t c = 1; c < headers.size(); ++c) {
        series.push_back({headers[c], columns[0], columns[c]});
    }
    write_svg_chart(out_svg, in_csv.filename().string(), headers[0],
                    series.size() == 1 ? headers[1] : "value", series);
}

} // namespace fivebar
