#pragma once

#include "pud/colorspace.hpp"
#include "pud/image.hpp"

namespace pud {

inline constexpr int kOrientationBins = 12;
inline constexpr double kOrientationBinWidth = 180.0 / kOrientationBins;  // degrees

// Gradients at or below this magnitude (channels scaled to [0,1]) have no
// meaningful orientation and are assigned bin 0.
inline constexpr double kDegenerateGradient = 1e-6;

struct OrientationMap {
    Grid<double> theta;      // degrees, [0, 180)
    Grid<double> magnitude;  // >= 0
    BinMap t2;               // {0..11}

    int width() const noexcept { return theta.width(); }
    int height() const noexcept { return theta.height(); }
};

// Multi-channel structure tensor gradient (Di Zenzo). Partials are central
// differences on [0,1]-scaled channels; border pixels copy the nearest
// interior pixel.
OrientationMap dizenzo_orientation(const RasterImage& img);

int quantize_orientation(double thetaDegrees, double magnitude) noexcept;

}  // namespace pud
