#include "pud/colorspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pud {

Hsv rgb_to_hsv(Rgb pixel) noexcept {
    const int r = pixel.r;
    const int g = pixel.g;
    const int b = pixel.b;
    const int maxc = std::max({r, g, b});
    const int minc = std::min({r, g, b});
    const int delta = maxc - minc;

    Hsv out;
    out.v = maxc / 255.0;
    if (delta == 0) {
        return out;
    }
    out.s = static_cast<double>(delta) / maxc;

    double h;
    if (maxc == r) {
        h = 60.0 * static_cast<double>(g - b) / delta;
    } else if (maxc == g) {
        h = 60.0 * (static_cast<double>(b - r) / delta + 2.0);
    } else {
        h = 60.0 * (static_cast<double>(r - g) / delta + 4.0);
    }
    if (h < 0.0) {
        h += 360.0;
    }
    out.h = h;
    return out;
}

HsvPlanes rgb_to_hsv(const RasterImage& img) {
    const int w = img.width();
    const int hgt = img.height();
    HsvPlanes planes{Grid<double>(w, hgt), Grid<double>(w, hgt), Grid<double>(w, hgt),
                     Grid<double>(w, hgt), Grid<double>(w, hgt), Grid<double>(w, hgt)};
    constexpr double kDegToRad = std::numbers::pi / 180.0;
    for (int y = 0; y < hgt; ++y) {
        for (int x = 0; x < w; ++x) {
            const Hsv hsv = rgb_to_hsv(img.at(x, y));
            planes.h(x, y) = hsv.h;
            planes.s(x, y) = hsv.s;
            planes.v(x, y) = hsv.v;
            const double angle = hsv.h * kDegToRad;
            planes.hPrime(x, y) = hsv.s * std::cos(angle);
            planes.sPrime(x, y) = hsv.s * std::sin(angle);
            planes.vPrime(x, y) = hsv.v;
        }
    }
    return planes;
}

int quantize_color(const Hsv& hsv) noexcept {
    const int hq = std::clamp(static_cast<int>(std::floor(hsv.h / 45.0)), 0, kHueBins - 1);
    const int sq = std::clamp(static_cast<int>(std::floor(hsv.s * 4.0)), 0, kSaturationBins - 1);
    const int vq = std::clamp(static_cast<int>(std::floor(hsv.v * 4.0)), 0, kValueBins - 1);
    return hq * (kSaturationBins * kValueBins) + sq * kValueBins + vq;
}

BinMap quantize_color(const HsvPlanes& planes) {
    BinMap map(planes.width(), planes.height());
    for (int y = 0; y < planes.height(); ++y) {
        for (int x = 0; x < planes.width(); ++x) {
            map(x, y) = static_cast<std::uint8_t>(
                quantize_color(Hsv{planes.h(x, y), planes.s(x, y), planes.v(x, y)}));
        }
    }
    return map;
}

double color_difference(const HsvPlanes& planes, PixelCoord a, PixelCoord b) noexcept {
    const double dh = planes.hPrime(a.x, a.y) - planes.hPrime(b.x, b.y);
    const double ds = planes.sPrime(a.x, a.y) - planes.sPrime(b.x, b.y);
    const double dv = planes.vPrime(a.x, a.y) - planes.vPrime(b.x, b.y);
    return std::sqrt(dh * dh + ds * ds + dv * dv);
}

}  // namespace pud
