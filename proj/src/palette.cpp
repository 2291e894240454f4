#include "colorist/palette.hpp"

#include <cmath>
#include <cstdio>

#include "colorist/grid.hpp"

namespace colorist {

Palette::Palette(int size) {
    if (size < 2) throw DomainError("palette needs at least two colors");
    hues_.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) hues_.push_back(240.0 * (1.0 - static_cast<double>(i) / (size - 1)));
}

Rgb Palette::rgb(int arm) const {
    // HSV with S = V = 1.
    const double h = hue(arm) / 60.0;
    const double x = 1.0 - std::fabs(std::fmod(h, 2.0) - 1.0);
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(h) % 6) {
        case 0: r = 1; g = x; break;
        case 1: r = x; g = 1; break;
        case 2: g = 1; b = x; break;
        case 3: g = x; b = 1; break;
        case 4: r = x; b = 1; break;
        default: r = 1; b = x; break;
    }
    auto to8 = [](double v) { return static_cast<std::uint8_t>(std::lround(v * 255.0)); };
    return {to8(r), to8(g), to8(b)};
}

double Palette::luminance(int arm) const {
    const Rgb c = rgb(arm);
    auto lin = [](std::uint8_t v) {
        const double s = v / 255.0;
        return s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
    };
    return 0.2126 * lin(c.r) + 0.7152 * lin(c.g) + 0.0722 * lin(c.b);
}

std::string Palette::hex(int arm) const {
    const Rgb c = rgb(arm);
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

}  // namespace colorist
