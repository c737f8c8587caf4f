#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "pud/colorspace.hpp"
#include "synthetic.hpp"

namespace pud {
namespace {

HsvPlanes two_pixel_planes(Hsv a, Hsv b) {
    HsvPlanes p{Grid<double>(2, 1), Grid<double>(2, 1), Grid<double>(2, 1),
                Grid<double>(2, 1), Grid<double>(2, 1), Grid<double>(2, 1)};
    const Hsv both[2] = {a, b};
    for (int x = 0; x < 2; ++x) {
        const double rad = both[x].h * 3.14159265358979323846 / 180.0;
        p.h(x, 0) = both[x].h;
        p.s(x, 0) = both[x].s;
        p.v(x, 0) = both[x].v;
        p.hPrime(x, 0) = both[x].s * std::cos(rad);
        p.sPrime(x, 0) = both[x].s * std::sin(rad);
        p.vPrime(x, 0) = both[x].v;
    }
    return p;
}

TEST(RasterImage, RejectsWindowsThatDoNotFit) {
    try {
        RasterImage img(2, 5);
        FAIL() << "expected ImageTooSmall";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ImageTooSmall);
    }
    EXPECT_THROW(RasterImage(5, 1), Error);
    EXPECT_NO_THROW(RasterImage(3, 3));
}

TEST(RasterImage, PixelCountMustMatchExtent) {
    try {
        RasterImage img(3, 3, std::vector<Rgb>(8));
        FAIL() << "expected InvalidParam";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidParam);
    }
}

TEST(RgbToHsv, PrimaryAndAchromaticPixels) {
    const Hsv red = rgb_to_hsv(Rgb{255, 0, 0});
    EXPECT_EQ(red.h, 0.0);
    EXPECT_EQ(red.s, 1.0);
    EXPECT_EQ(red.v, 1.0);

    const Hsv black = rgb_to_hsv(Rgb{0, 0, 0});
    EXPECT_EQ(black.h, 0.0);
    EXPECT_EQ(black.s, 0.0);
    EXPECT_EQ(black.v, 0.0);

    const Hsv gray = rgb_to_hsv(Rgb{128, 128, 128});
    EXPECT_EQ(gray.h, 0.0);
    EXPECT_EQ(gray.s, 0.0);
    EXPECT_DOUBLE_EQ(gray.v, 128.0 / 255.0);

    EXPECT_DOUBLE_EQ(rgb_to_hsv(Rgb{0, 255, 0}).h, 120.0);
    EXPECT_DOUBLE_EQ(rgb_to_hsv(Rgb{0, 0, 255}).h, 240.0);
    EXPECT_DOUBLE_EQ(rgb_to_hsv(Rgb{255, 0, 255}).h, 300.0);
    EXPECT_DOUBLE_EQ(rgb_to_hsv(Rgb{0, 255, 255}).h, 180.0);
}

TEST(RgbToHsv, CartesianPlanesKeepRadiusAndValue) {
    std::mt19937_64 rng(11);
    const RasterImage img = testing::random_image(rng, 17, 13);
    const HsvPlanes p = rgb_to_hsv(img);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const double r2 = p.hPrime(x, y) * p.hPrime(x, y) + p.sPrime(x, y) * p.sPrime(x, y);
            EXPECT_NEAR(r2, p.s(x, y) * p.s(x, y), 1e-9);
            EXPECT_EQ(p.vPrime(x, y), p.v(x, y));
            EXPECT_GE(p.h(x, y), 0.0);
            EXPECT_LT(p.h(x, y), 360.0);
        }
    }
}

TEST(QuantizeColor, WorkedBins) {
    EXPECT_EQ(quantize_color(Hsv{0.0, 0.0, 0.0}), 0);
    EXPECT_EQ(quantize_color(Hsv{350.0, 0.99, 0.99}), 7 * 16 + 3 * 4 + 3);
    EXPECT_EQ(quantize_color(Hsv{90.0, 0.5, 0.25}), 2 * 16 + 2 * 4 + 1);
    // s or v at exactly 1 clamp into the top bin.
    EXPECT_EQ(quantize_color(Hsv{0.0, 1.0, 1.0}), 15);
    EXPECT_EQ(quantize_color(rgb_to_hsv(Rgb{255, 0, 0})), 15);
}

TEST(QuantizeColor, GridSweepHitsEveryBin) {
    std::set<int> hit;
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 8; ++j) {
            for (int k = 0; k < 8; ++k) {
                const int bin = quantize_color(Hsv{(i + 0.5) * 22.5, (j + 0.5) / 8.0, (k + 0.5) / 8.0});
                ASSERT_GE(bin, 0);
                ASSERT_LT(bin, kColorBins);
                hit.insert(bin);
            }
        }
    }
    EXPECT_EQ(hit.size(), static_cast<std::size_t>(kColorBins));
}

TEST(ColorDifference, WorkedExamples) {
    RasterImage img(3, 3);
    img.at(0, 0) = {255, 0, 0};    // h=0, s=1, v=1
    img.at(1, 0) = {0, 255, 255};  // h=180, s=1, v=1
    img.at(2, 0) = {255, 0, 0};
    img.at(0, 1) = {0, 0, 0};
    img.at(1, 1) = {255, 255, 255};
    const HsvPlanes p = rgb_to_hsv(img);

    EXPECT_EQ(color_difference(p, {0, 0}, {2, 0}), 0.0);
    EXPECT_NEAR(color_difference(p, {0, 0}, {1, 0}), 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(color_difference(p, {0, 1}, {1, 1}), 1.0);
}

TEST(ColorDifference, SymmetricAndBounded) {
    std::mt19937_64 rng(5);
    const RasterImage img = testing::random_image(rng, 20, 20);
    const HsvPlanes p = rgb_to_hsv(img);
    std::uniform_int_distribution<int> coord(0, 19);
    for (int t = 0; t < 2000; ++t) {
        const PixelCoord a{coord(rng), coord(rng)};
        const PixelCoord b{coord(rng), coord(rng)};
        const double ab = color_difference(p, a, b);
        EXPECT_EQ(ab, color_difference(p, b, a));
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, 3.0);
    }
}

TEST(ColorDifference, HueSeamVanishesInCartesianSpace) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const double s = unit(rng);
        const double v = unit(rng);
        const HsvPlanes p = two_pixel_planes({359.9, s, v}, {0.1, s, v});
        EXPECT_LT(color_difference(p, {0, 0}, {1, 0}), 0.02 * s + 1e-15);
    }
}

}  // namespace
}  // namespace pud
