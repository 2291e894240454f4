#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace colorist {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// k fully saturated hues spaced linearly from 240 deg (blue, arm 0) down to
/// 0 deg (red, arm k-1).
class Palette {
public:
    explicit Palette(int size = 10);

    int size() const { return static_cast<int>(hues_.size()); }
    double hue(int arm) const { return hues_.at(static_cast<std::size_t>(arm)); }
    Rgb rgb(int arm) const;
    /// Rec. 709 relative luminance of the linearized sRGB color, in [0,1].
    double luminance(int arm) const;
    /// "#rrggbb"
    std::string hex(int arm) const;

private:
    std::vector<double> hues_;
};

}  // namespace colorist
