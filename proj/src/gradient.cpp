#include "pud/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pud {
namespace {

struct Channels {
    double r, g, b;
};

Channels unit_channels(Rgb p) noexcept {
    return {p.r / 255.0, p.g / 255.0, p.b / 255.0};
}

}  // namespace

int quantize_orientation(double thetaDegrees, double magnitude) noexcept {
    if (!(magnitude > kDegenerateGradient)) {
        return 0;
    }
    const int bin = static_cast<int>(std::floor(thetaDegrees / kOrientationBinWidth));
    return std::clamp(bin, 0, kOrientationBins - 1);
}

OrientationMap dizenzo_orientation(const RasterImage& img) {
    const int w = img.width();
    const int h = img.height();
    OrientationMap out{Grid<double>(w, h), Grid<double>(w, h), BinMap(w, h)};
    constexpr double kRadToDeg = 180.0 / std::numbers::pi;

    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            const Channels left = unit_channels(img.at(x - 1, y));
            const Channels right = unit_channels(img.at(x + 1, y));
            const Channels up = unit_channels(img.at(x, y - 1));
            const Channels down = unit_channels(img.at(x, y + 1));

            const double rx = (right.r - left.r) / 2.0;
            const double gx = (right.g - left.g) / 2.0;
            const double bx = (right.b - left.b) / 2.0;
            const double ry = (down.r - up.r) / 2.0;
            const double gy = (down.g - up.g) / 2.0;
            const double by = (down.b - up.b) / 2.0;

            const double gxx = rx * rx + gx * gx + bx * bx;
            const double gyy = ry * ry + gy * gy + by * by;
            const double gxy = rx * ry + gx * gy + bx * by;

            const double angle = 0.5 * std::atan2(2.0 * gxy, gxx - gyy);
            const double response = 0.5 * ((gxx + gyy) + (gxx - gyy) * std::cos(2.0 * angle) +
                                           2.0 * gxy * std::sin(2.0 * angle));
            double theta = angle * kRadToDeg;
            if (theta < 0.0) {
                theta += 180.0;
            }
            if (theta >= 180.0) {
                theta -= 180.0;
            }
            const double magnitude = std::sqrt(std::max(response, 0.0));

            out.theta(x, y) = theta;
            out.magnitude(x, y) = magnitude;
            out.t2(x, y) = static_cast<std::uint8_t>(quantize_orientation(theta, magnitude));
        }
    }

    // Replicate padding from the nearest interior pixel.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (x > 0 && x < w - 1 && y > 0 && y < h - 1) {
                continue;
            }
            const int sx = std::clamp(x, 1, w - 2);
            const int sy = std::clamp(y, 1, h - 2);
            out.theta(x, y) = out.theta(sx, sy);
            out.magnitude(x, y) = out.magnitude(sx, sy);
            out.t2(x, y) = out.t2(sx, sy);
        }
    }
    return out;
}

}  // namespace pud
