#pragma once

#include <cstdint>

#include "pud/image.hpp"

namespace pud {

// Quantized colour map layout: 8 hue x 4 saturation x 4 value bins, hue
// major. The layout is part of the index file contract.
inline constexpr int kHueBins = 8;
inline constexpr int kSaturationBins = 4;
inline constexpr int kValueBins = 4;
inline constexpr int kColorBins = kHueBins * kSaturationBins * kValueBins;  // 128

using BinMap = Grid<std::uint8_t>;

struct Hsv {
    double h = 0.0;  // degrees, [0, 360)
    double s = 0.0;  // [0, 1]
    double v = 0.0;  // [0, 1]
};

// Per-pixel HSV plus the Cartesian embedding (s cos h, s sin h, v) in which
// colour differences are measured.
struct HsvPlanes {
    Grid<double> h, s, v;
    Grid<double> hPrime, sPrime, vPrime;

    int width() const noexcept { return h.width(); }
    int height() const noexcept { return h.height(); }
};

// Hexcone HSV. Achromatic pixels (r == g == b) get hue 0.
Hsv rgb_to_hsv(Rgb pixel) noexcept;
HsvPlanes rgb_to_hsv(const RasterImage& img);

int quantize_color(const Hsv& hsv) noexcept;
BinMap quantize_color(const HsvPlanes& planes);

// Euclidean distance between two pixels in (H', S', V') space.
double color_difference(const HsvPlanes& planes, PixelCoord a, PixelCoord b) noexcept;

}  // namespace pud
