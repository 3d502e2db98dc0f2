#include "vortexsim/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vortexsim/errors.hpp"
#include "vortexsim/version.hpp"

namespace vortexsim {

std::string format_g17(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw io_error("write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw io_error("read failed for '" + path + "'");
    return buffer.str();
}

namespace {

void meta_header(std::ostringstream& out, const std::string& kind) {
    out << "# vortexsim " << kVersion << "\n";
    out << "# kind = " << kind << "\n";
}

void meta_kv(std::ostringstream& out, const std::string& key, const std::string& value) {
    out << "# " << key << " = " << value << "\n";
}

void sweep_meta(std::ostringstream& out, const SweepConfig& config, SweepKind kind) {
    meta_header(out, std::string("sweep-") + to_string(kind));
    meta_kv(out, "rng", kRngIdentity);
    meta_kv(out, "input_pair", to_string(config.input_pair));
    meta_kv(out, "alpha0_rad", format_g17(config.alpha0));
    meta_kv(out, "measure_basis", to_string(config.measure_basis));
    meta_kv(out, "sweep.min", format_g17(config.grid.min));
    meta_kv(out, "sweep.max", format_g17(config.grid.max));
    meta_kv(out, "sweep.steps", std::to_string(config.grid.steps));
    if (kind == SweepKind::Delay) {
        meta_kv(out, "fixed_delta_rad", format_g17(config.fixed_delta));
        meta_kv(out, "tau_c_ps", format_g17(config.tau_c));
    }
    meta_kv(out, "pair_rate", format_g17(config.pair_rate));
    meta_kv(out, "seed", std::to_string(config.seed));
    meta_kv(out, "gamma_abs2", format_g17(config.gamma_abs2.value_or(1.0)));
}

}  // namespace

std::string sweep_csv(const SweepConfig& config, SweepKind kind,
                      std::span<const SweepRecord> records) {
    if (records.empty()) throw std::invalid_argument("sweep_csv: no records");
    std::ostringstream out;
    sweep_meta(out, config, kind);
    out << "x,p_model,counts,sigma\n";
    for (const SweepRecord& rec : records) {
        out << format_g17(rec.x) << ',' << format_g17(rec.p_model) << ',' << rec.counts << ','
            << format_g17(rec.sigma) << "\n";
    }
    return out.str();
}

std::string orbit_csv(const OrbitJob& job, const OrbitData& data) {
    if (data.points.empty()) throw std::invalid_argument("orbit_csv: no points");
    std::ostringstream out;
    meta_header(out, "orbit");
    meta_kv(out, "input_state", job.state_name);
    meta_kv(out, "order", std::to_string(job.order));
    meta_kv(out, "alpha0_rad", format_g17(job.alpha0));
    out << "delta_rad,s1,s2,s3\n";
    for (size_t i = 0; i < data.points.size(); ++i) {
        const StokesVector& s = data.points[i];
        out << format_g17(data.deltas[i]) << ',' << format_g17(s.s1) << ',' << format_g17(s.s2)
            << ',' << format_g17(s.s3) << "\n";
    }
    return out.str();
}

std::string field_csv(const FieldJob& job, const FieldData& data) {
    if (data.samples.empty()) throw std::invalid_argument("field_csv: no samples");
    std::ostringstream out;
    meta_header(out, "render-field");
    meta_kv(out, "input_state", job.state_name);
    meta_kv(out, "order", std::to_string(job.order));
    meta_kv(out, "field.extent_w", format_g17(job.extent));
    meta_kv(out, "field.grid", std::to_string(job.grid_n));
    out << "x,y,intensity,ellipse_angle_rad,ellipticity\n";
    for (size_t i = 0; i < data.samples.size(); ++i) {
        const PolarizationSample& s = data.samples[i];
        out << format_g17(data.xs[i]) << ',' << format_g17(data.ys[i]) << ','
            << format_g17(s.intensity) << ',' << format_g17(ellipse_angle(s)) << ','
            << format_g17(ellipticity(s)) << "\n";
    }
    return out.str();
}

std::string fit_report_text(const FitJob& job, const FitResult& fit) {
    std::ostringstream out;
    meta_header(out, "fit");
    meta_kv(out, "model", job.kind == SweepKind::Delta ? "delta-fringe" : "delay-dip");
    meta_kv(out, "data", job.data_path);
    meta_kv(out, "input_pair", to_string(job.sweep.input_pair));
    meta_kv(out, "alpha0_rad", format_g17(job.sweep.alpha0));
    meta_kv(out, "measure_basis", to_string(job.sweep.measure_basis));
    if (job.kind == SweepKind::Delay)
        meta_kv(out, "fixed_delta_rad", format_g17(job.sweep.fixed_delta));
    out << "amplitude = " << format_g17(fit.amplitude) << "\n";
    if (job.kind == SweepKind::Delta)
        out << "gamma_abs2 = " << format_g17(fit.indistinguishability) << "\n";
    else
        out << "tau_c_ps = " << format_g17(fit.indistinguishability) << "\n";
    out << "delta_offset_rad = " << format_g17(fit.delta_offset) << "\n";
    out << "residual = " << format_g17(fit.residual) << "\n";
    out << "iterations = " << fit.iterations << "\n";
    out << "gamma_identifiable = " << (fit.gamma_identifiable ? "true" : "false") << "\n";
    return out.str();
}

std::vector<SweepRecord> parse_sweep_csv(std::string_view text) {
    std::vector<SweepRecord> records;
    bool header_seen = false;
    size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const size_t eol = text.find('\n');
        std::string line{text.substr(0, eol)};
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "x,p_model,counts,sigma")
                throw io_error("sweep CSV: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        SweepRecord rec{};
        unsigned long long counts = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%llu,%lf", &rec.x, &rec.p_model, &counts,
                        &rec.sigma) != 4)
            throw io_error("sweep CSV: malformed line " + std::to_string(line_no));
        rec.counts = counts;
        records.push_back(rec);
    }
    if (!header_seen) throw io_error("sweep CSV: missing header");
    return records;
}

// ----- SVG ------------------------------------------------------------------

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kMarginLeft = 60.0, kMarginRight = 20.0;
constexpr double kMarginTop = 20.0, kMarginBottom = 44.0;

struct Scale {
    double lo, hi, out_lo, out_hi;
    double operator()(double v) const {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return out_lo + t * (out_hi - out_lo);
    }
};

std::string svg_open() {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << kWidth - kMarginLeft - kMarginRight << "\" height=\""
        << kHeight - kMarginTop - kMarginBottom
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    return out.str();
}

void svg_axis_label(std::ostringstream& out, const std::string& x_label) {
    out << "<text x=\"" << (kMarginLeft + kWidth - kMarginRight) / 2.0 << "\" y=\""
        << kHeight - 12.0 << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label
        << "</text>\n";
}

void svg_polyline(std::ostringstream& out,
                  std::span<const std::pair<double, double>> points, const Scale& sx,
                  const Scale& sy, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points) out << sx(x) << ',' << sy(y) << ' ';
    out << "\"/>\n";
}

}  // namespace

std::string sweep_svg(std::span<const SweepRecord> records,
                      std::span<const std::pair<double, double>> fit_curve,
                      const std::string& x_label) {
    if (records.empty()) throw std::invalid_argument("sweep_svg: no records");

    double xmin = records.front().x, xmax = records.front().x, ymax = 1.0;
    for (const SweepRecord& rec : records) {
        xmin = std::min(xmin, rec.x);
        xmax = std::max(xmax, rec.x);
        ymax = std::max(ymax, static_cast<double>(rec.counts) + rec.sigma);
    }
    for (const auto& [x, y] : fit_curve) ymax = std::max(ymax, y);
    ymax *= 1.05;

    const Scale sx{xmin, xmax, kMarginLeft, kWidth - kMarginRight};
    const Scale sy{0.0, ymax, kHeight - kMarginBottom, kMarginTop};

    std::ostringstream out;
    out << svg_open();
    if (!fit_curve.empty()) svg_polyline(out, fit_curve, sx, sy, "#c0392b");
    for (const SweepRecord& rec : records) {
        const double cx = sx(rec.x);
        const double cy = sy(static_cast<double>(rec.counts));
        // sqrt(counts) error bar
        out << "<line x1=\"" << cx << "\" y1=\"" << sy(rec.counts - rec.sigma) << "\" x2=\""
            << cx << "\" y2=\"" << sy(rec.counts + rec.sigma)
            << "\" stroke=\"#2c3e50\" stroke-width=\"1\"/>\n";
        out << "<circle cx=\"" << cx << "\" cy=\"" << cy
            << "\" r=\"2.5\" fill=\"#2c3e50\"/>\n";
    }
    svg_axis_label(out, x_label);
    out << "</svg>\n";
    return out.str();
}

std::string orbit_svg(const OrbitData& data) {
    if (data.points.empty()) throw std::invalid_argument("orbit_svg: no points");

    const double xmin = *std::min_element(data.deltas.begin(), data.deltas.end());
    const double xmax = *std::max_element(data.deltas.begin(), data.deltas.end());
    const Scale sx{xmin, xmax, kMarginLeft, kWidth - kMarginRight};
    const Scale sy{-1.05, 1.05, kHeight - kMarginBottom, kMarginTop};

    std::vector<std::pair<double, double>> s1, s2, s3;
    for (size_t i = 0; i < data.points.size(); ++i) {
        s1.emplace_back(data.deltas[i], data.points[i].s1);
        s2.emplace_back(data.deltas[i], data.points[i].s2);
        s3.emplace_back(data.deltas[i], data.points[i].s3);
    }

    std::ostringstream out;
    out << svg_open();
    svg_polyline(out, s1, sx, sy, "#c0392b");
    svg_polyline(out, s2, sx, sy, "#27ae60");
    svg_polyline(out, s3, sx, sy, "#2980b9");
    out << "<text x=\"" << kMarginLeft + 8 << "\" y=\"" << kMarginTop + 16
        << "\" font-size=\"13\">s1 (red)  s2 (green)  s3 (blue)</text>\n";
    svg_axis_label(out, "delta [rad]");
    out << "</svg>\n";
    return out.str();
}

std::string field_svg(const FieldJob& job, const FieldData& data) {
    if (data.samples.empty()) throw std::invalid_argument("field_svg: no samples");

    double peak = 0.0;
    for (const PolarizationSample& s : data.samples) peak = std::max(peak, s.intensity);
    if (peak <= 0.0) peak = 1.0;

    const int n = job.grid_n;
    const double plot = std::min(kWidth - kMarginLeft - kMarginRight,
                                 kHeight - kMarginTop - kMarginBottom);
    const double cell = plot / n;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const size_t idx = static_cast<size_t>(iy) * n + ix;
            const PolarizationSample& s = data.samples[idx];
            const int level = static_cast<int>(255.0 * s.intensity / peak);
            const double px = kMarginLeft + ix * cell;
            // CSV rows grow with y; SVG y grows downward
            const double py = kMarginTop + (n - 1 - iy) * cell;
            out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"rgb(" << level << ',' << level << ','
                << level << ")\"/>\n";
            // orientation tick on a coarse subgrid where there is light
            if (ix % 4 == 1 && iy % 4 == 1 && s.intensity > 0.05 * peak) {
                const double angle = ellipse_angle(s);
                const double dx = 0.45 * 4 * cell * std::cos(angle);
                const double dy = 0.45 * 4 * cell * std::sin(angle);
                const double mx = px + cell / 2, my = py + cell / 2;
                out << "<line x1=\"" << mx - dx << "\" y1=\"" << my + dy << "\" x2=\""
                    << mx + dx << "\" y2=\"" << my - dy
                    << "\" stroke=\"#e67e22\" stroke-width=\"1.2\"/>\n";
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace vortexsim
