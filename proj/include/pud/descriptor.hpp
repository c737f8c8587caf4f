#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pud/colorspace.hpp"
#include "pud/gradient.hpp"
#include "pud/image.hpp"

namespace pud {

// 3x3 neighbourhood: radius 1, eight neighbours in this fixed order.
inline constexpr int kNeighborRadius = 1;
inline constexpr int kNeighborCount = 8;
inline constexpr std::array<PixelCoord, kNeighborCount> kNeighborOffsets{{
    {-1, -1}, {0, -1}, {1, -1},
    {-1, 0},           {1, 0},
    {-1, 1},  {0, 1},  {1, 1},
}};

inline constexpr int kColorBlockDim = 2 * kColorBins;              // 256
inline constexpr int kOrientationBlockDim = 2 * kOrientationBins;  // 24
inline constexpr int kPudDim = kColorBlockDim + kOrientationBlockDim;  // 280
inline constexpr int kHsvHistogramDim = kColorBins;

struct PudParams {
    double beta1 = 0.1;   // colour block weight
    double beta2 = 0.75;  // orientation block weight
};

// Per-bin accumulators over perceptually uniform centres of one quantized map.
struct BlockStats {
    std::vector<double> sumUniformDiff;             // D(b)
    std::vector<double> sumAllDiff;                 // D-bar(b)
    std::vector<std::uint64_t> uniformNeighborCount;  // N(b)
    std::vector<std::uint64_t> pixelCount;            // N-bar(b)

    explicit BlockStats(int bins)
        : sumUniformDiff(bins, 0.0), sumAllDiff(bins, 0.0),
          uniformNeighborCount(bins, 0), pixelCount(bins, 0) {}

    int bins() const noexcept { return static_cast<int>(pixelCount.size()); }
};

struct FeatureBlocks {
    std::vector<double> phi;     // colour difference correlation
    std::vector<double> psi;     // global colour difference histogram
    std::vector<double> varphi;  // texton frequency histogram
    std::vector<double> eta;     // texton frequency correlation
    std::vector<double> contrast;   // Lc = phi * (psi + 1)
    std::vector<double> structure;  // Lf = eta * (varphi + 1)
};

struct PudDescriptor {
    std::vector<double> h1;  // [Lc, Lf] over the colour map, 256
    std::vector<double> h2;  // [Lc, Lf] over the orientation map, 24
    double beta1 = 0.0;
    double beta2 = 0.0;
    std::vector<double> h;  // [beta1 * h1, beta2 * h2], 280
};

// Everything the extractor computes on the way to the descriptor; exposed for
// diagnostics and tests.
struct PudAnalysis {
    BinMap colorMap;
    OrientationMap orientation;
    BinMap colorMask;
    BinMap orientationMask;
    BlockStats colorStats{kColorBins};
    BlockStats orientationStats{kOrientationBins};
    FeatureBlocks color;
    FeatureBlocks orientationBlocks;
};

// Marks interior pixels with at least one of their 8 neighbours in the same
// bin. Border pixels are never marked.
BinMap detect_uniform_blocks(const BinMap& map);

// Accumulates D, D-bar, N, N-bar over masked centres. The neighbour
// difference is always the colour difference; only the match test uses `map`.
BlockStats accumulate_block_stats(const BinMap& map, int bins, const BinMap& mask,
                                  const HsvPlanes& planes);

std::vector<double> color_difference_correlation(const BlockStats& stats);
std::vector<double> global_color_difference_histogram(const BlockStats& stats);
std::vector<double> texton_frequency_histogram(const BlockStats& stats);
std::vector<double> texton_frequency_correlation(const BlockStats& stats);

std::vector<double> fuse_contrast(std::span<const double> phi, std::span<const double> psi);
std::vector<double> fuse_structure(std::span<const double> eta, std::span<const double> varphi);

FeatureBlocks compute_feature_blocks(const BlockStats& stats);

PudDescriptor assemble_pud(const FeatureBlocks& color, const FeatureBlocks& orientation,
                           const PudParams& params);

PudAnalysis analyze_pud(const RasterImage& img);
PudDescriptor extract_pud(const RasterImage& img, const PudParams& params = {});

// Normalized histogram of the 128 quantized colours over all pixels.
std::vector<double> extract_hsv_histogram(const RasterImage& img);

}  // namespace pud
