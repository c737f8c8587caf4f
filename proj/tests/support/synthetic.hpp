#pragma once

#include <random>
#include <vector>

#include "pud/evaluation.hpp"
#include "pud/image.hpp"

namespace pud::testing {

Rgb hsv_to_rgb(double hDegrees, double s, double v);

// Independent uniform pixels.
RasterImage random_image(std::mt19937_64& rng, int width, int height);

// Small palette painted in random rectangles, so uniform regions exist.
RasterImage random_patchy_image(std::mt19937_64& rng, int width, int height);

RasterImage rotate90(const RasterImage& img);  // counter-clockwise
RasterImage flip_both(const RasterImage& img);

// Full-width red rows on a green background: one red row every `period`
// rows starting at row 1. Red pixels alternate between two shades of equal
// hue so neighbouring reds differ by a fixed amount; the green sits halfway
// between them in value so every red-green pair has the same difference.
struct StripePattern {
    RasterImage image;
    Rgb redA, redB, green;
};
StripePattern red_row_pattern(int width, int height, int period);

// Class c: hue c * 360 / classes, stripes at angle c * 180 / classes, random
// phase, hue jitter and pixel noise per image.
struct SyntheticCorpusSpec {
    int classes = 8;
    int perClass = 25;
    int size = 48;
    unsigned seed = 7;
};
std::vector<RasterImage> synthetic_class_images(const SyntheticCorpusSpec& spec);
std::vector<std::string> synthetic_class_labels(const SyntheticCorpusSpec& spec);

}  // namespace pud::testing
