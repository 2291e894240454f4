#include "colorist/calibration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace colorist {

Calibration calibrate(const std::array<CalibrationPair, 3>& pairs, double z_span, int behind_sign) {
    if (!(z_span > 0.0)) throw DomainError("z_span must be positive");
    if (behind_sign != 1 && behind_sign != -1) throw DomainError("behind_sign must be +1 or -1");

    const auto& [p0, p1, p2] = pairs;
    const double ux = p1.sample.x - p0.sample.x, uy = p1.sample.y - p0.sample.y;
    const double vx = p2.sample.x - p0.sample.x, vy = p2.sample.y - p0.sample.y;
    const double det = ux * vy - uy * vx;
    if (!std::isfinite(det) || 0.5 * std::fabs(det) < kMinTriangleArea) {
        throw CalibrationError("calibration points are collinear or repeated; point at three corners again");
    }

    // Per output axis, solve [ux uy; vx vy] [a; b] = [t1 - t0; t2 - t0]
    // for the linear part, then fix the translation with the first point.
    Calibration cal;
    auto solve_row = [&](double t0, double t1, double t2, double* row) {
        const double d1 = t1 - t0, d2 = t2 - t0;
        row[0] = (d1 * vy - d2 * uy) / det;
        row[1] = (ux * d2 - vx * d1) / det;
        row[2] = t0 - row[0] * p0.sample.x - row[1] * p0.sample.y;
    };
    solve_row(p0.cell.col + 0.5, p1.cell.col + 0.5, p2.cell.col + 0.5, cal.affine.data());
    solve_row(p0.cell.row + 0.5, p1.cell.row + 0.5, p2.cell.row + 0.5, cal.affine.data() + 3);

    cal.z_ref = (p0.sample.z + p1.sample.z + p2.sample.z) / 3.0;
    cal.z_span = z_span;
    cal.behind_sign = behind_sign;
    return cal;
}

Cell to_cell(const Calibration& cal, const PointerSample& sample, const GridDims& dims) {
    const auto [gx, gy] = cal.apply(sample.x, sample.y);
    auto clamp_axis = [](double g, int size) {
        if (std::isnan(g)) return 0;
        const double f = std::floor(g);
        if (f < 0.0) return 0;
        if (f > size - 1) return size - 1;
        return static_cast<int>(f);
    };
    return {clamp_axis(gx, dims.width), clamp_axis(gy, dims.height)};
}

int z_to_opacity(const Calibration& cal, double z) {
    const double depth = cal.behind_sign * (z - cal.z_ref);
    const double band = std::floor((depth + cal.z_span / 2.0) / (cal.z_span / 4.0));
    if (std::isnan(band)) return 1;
    return static_cast<int>(std::clamp(band, 0.0, 3.0)) + 1;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

double parse_double(const std::string& text) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DomainError("bad number in calibration file: '" + text + "'");
    }
    return v;
}

}  // namespace

void Calibration::write(std::ostream& out) const {
    out << "affine";
    for (double a : affine) out << ' ' << format_double(a);
    out << "\nz_ref " << format_double(z_ref) << "\nz_span " << format_double(z_span) << "\nbehind_sign "
        << behind_sign << '\n';
}

Calibration Calibration::read(std::istream& in) {
    std::map<std::string, std::vector<std::string>> fields;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream words(line);
        std::string key;
        if (!(words >> key) || key.starts_with('#')) continue;
        auto& values = fields[key];
        for (std::string w; words >> w;) values.push_back(w);
    }
    auto single = [&](const std::string& key) -> const std::string& {
        auto it = fields.find(key);
        if (it == fields.end() || it->second.size() != 1) throw DomainError("calibration file needs one '" + key + "' value");
        return it->second.front();
    };

    Calibration cal;
    auto it = fields.find("affine");
    if (it == fields.end() || it->second.size() != 6) throw DomainError("calibration file needs 6 affine coefficients");
    for (std::size_t i = 0; i < 6; ++i) cal.affine[i] = parse_double(it->second[i]);
    cal.z_ref = parse_double(single("z_ref"));
    cal.z_span = parse_double(single("z_span"));
    cal.behind_sign = static_cast<int>(parse_double(single("behind_sign")));
    if (!(cal.z_span > 0.0) || (cal.behind_sign != 1 && cal.behind_sign != -1)) {
        throw DomainError("calibration file has invalid depth banding");
    }
    const double linear_det = cal.affine[0] * cal.affine[4] - cal.affine[1] * cal.affine[3];
    if (!(std::fabs(linear_det) > 0.0)) throw CalibrationError("stored calibration is degenerate");
    return cal;
}

void Calibration::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write calibration to " + path);
    write(out);
    if (!out) throw std::runtime_error("failed writing calibration to " + path);
}

Calibration Calibration::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open calibration file " + path);
    return read(in);
}

}  // namespace colorist
