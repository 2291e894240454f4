#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "colorist/grid.hpp"

namespace colorist {

struct PointerSample {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    std::int64_t t_ms = 0;
};

/// The user must redo calibration: the three points do not span a triangle.
class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CalibrationPair {
    PointerSample sample;
    Cell cell;
};

/// Affine map from sensor (x, y) to continuous grid coordinates, where cell
/// (c, r) covers [c, c+1) x [r, r+1), plus the depth banding used for opacity.
struct Calibration {
    /// Row-major 2x3: [gx; gy] = A * [x; y; 1].
    std::array<double, 6> affine{1, 0, 0, 0, 1, 0};
    double z_ref = 0.0;
    double z_span = 200.0;
    /// +1: larger z is "behind" the sensor and gives higher opacity. -1 flips it.
    int behind_sign = 1;

    std::array<double, 2> apply(double x, double y) const {
        return {affine[0] * x + affine[1] * y + affine[2], affine[3] * x + affine[4] * y + affine[5]};
    }

    void write(std::ostream& out) const;
    static Calibration read(std::istream& in);
    void save(const std::string& path) const;
    static Calibration load(const std::string& path);

    friend bool operator==(const Calibration&, const Calibration&) = default;
};

inline constexpr double kMinTriangleArea = 1e-6;

/// Solves the unique affine map taking each sample's (x, y) to the center of
/// its cell. z_ref becomes the mean sample depth.
Calibration calibrate(const std::array<CalibrationPair, 3>& pairs, double z_span = 200.0, int behind_sign = 1);

/// Maps a sample to the cell containing its image, clamped onto the grid.
Cell to_cell(const Calibration& cal, const PointerSample& sample, const GridDims& dims);

/// Four equal depth bands across [z_ref - z_span/2, z_ref + z_span/2],
/// clamped at both ends. Returns 1..4.
int z_to_opacity(const Calibration& cal, double z);

}  // namespace colorist
