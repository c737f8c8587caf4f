#include "pud/descriptor.hpp"

#include <cmath>
#include <string>

namespace pud {
namespace {

bool is_interior(int x, int y, int w, int h) noexcept {
    return x >= kNeighborRadius && y >= kNeighborRadius && x < w - kNeighborRadius &&
           y < h - kNeighborRadius;
}

// Colour differences along the four "forward" offsets (indices 4..7 of
// kNeighborOffsets). Offset i and offset 7 - i are mirror images, so each
// unordered pixel pair is evaluated once and shared by both centres.
class NeighborDifferences {
public:
    explicit NeighborDifferences(const HsvPlanes& planes)
        : forward_{Grid<double>(planes.width(), planes.height()),
                   Grid<double>(planes.width(), planes.height()),
                   Grid<double>(planes.width(), planes.height()),
                   Grid<double>(planes.width(), planes.height())} {
        const int w = planes.width();
        const int h = planes.height();
        for (int j = 0; j < 4; ++j) {
            const PixelCoord off = kNeighborOffsets[4 + j];
            for (int y = 0; y < h; ++y) {
                const int ny = y + off.y;
                if (ny < 0 || ny >= h) {
                    continue;
                }
                for (int x = 0; x < w; ++x) {
                    const int nx = x + off.x;
                    if (nx < 0 || nx >= w) {
                        continue;
                    }
                    forward_[j](x, y) = color_difference(planes, {x, y}, {nx, ny});
                }
            }
        }
    }

    double operator()(int x, int y, int neighbor) const noexcept {
        if (neighbor >= 4) {
            return forward_[neighbor - 4](x, y);
        }
        const PixelCoord off = kNeighborOffsets[neighbor];
        return forward_[3 - neighbor](x + off.x, y + off.y);
    }

private:
    std::array<Grid<double>, 4> forward_;
};

void accumulate(const BinMap& map, const BinMap& mask, const NeighborDifferences& diffs,
                BlockStats& stats) {
    const int w = map.width();
    const int h = map.height();
    for (int y = kNeighborRadius; y < h - kNeighborRadius; ++y) {
        for (int x = kNeighborRadius; x < w - kNeighborRadius; ++x) {
            if (!mask(x, y)) {
                continue;
            }
            const std::uint8_t bin = map(x, y);
            double uniform = 0.0;
            double all = 0.0;
            std::uint64_t matches = 0;
            for (int i = 0; i < kNeighborCount; ++i) {
                const PixelCoord off = kNeighborOffsets[i];
                const double d = diffs(x, y, i);
                all += d;
                if (map(x + off.x, y + off.y) == bin) {
                    uniform += d;
                    ++matches;
                }
            }
            stats.sumUniformDiff[bin] += uniform;
            stats.sumAllDiff[bin] += all;
            stats.uniformNeighborCount[bin] += matches;
            stats.pixelCount[bin] += 1;
        }
    }
}

void check_same_extent(const BinMap& a, const BinMap& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw Error(ErrorCode::InvalidParam, std::string(what) + " extent mismatch");
    }
}

std::vector<double> normalized(std::span<const double> values) {
    double total = 0.0;
    for (double v : values) {
        total += v;
    }
    std::vector<double> out(values.size(), 0.0);
    if (total > 0.0) {
        for (std::size_t b = 0; b < values.size(); ++b) {
            out[b] = values[b] / total;
        }
    }
    return out;
}

}  // namespace

BinMap detect_uniform_blocks(const BinMap& map) {
    const int w = map.width();
    const int h = map.height();
    BinMap mask(w, h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!is_interior(x, y, w, h)) {
                continue;
            }
            const std::uint8_t centre = map(x, y);
            for (const PixelCoord off : kNeighborOffsets) {
                if (map(x + off.x, y + off.y) == centre) {
                    mask(x, y) = 1;
                    break;
                }
            }
        }
    }
    return mask;
}

BlockStats accumulate_block_stats(const BinMap& map, int bins, const BinMap& mask,
                                  const HsvPlanes& planes) {
    check_same_extent(map, mask, "mask");
    if (map.width() != planes.width() || map.height() != planes.height()) {
        throw Error(ErrorCode::InvalidParam, "colour planes extent mismatch");
    }
    for (const std::uint8_t v : map.values()) {
        if (v >= bins) {
            throw Error(ErrorCode::InvalidParam,
                        "map value " + std::to_string(v) + " outside " + std::to_string(bins) +
                            " bins");
        }
    }
    BlockStats stats(bins);
    accumulate(map, mask, NeighborDifferences(planes), stats);
    return stats;
}

std::vector<double> color_difference_correlation(const BlockStats& stats) {
    std::vector<double> phi(stats.bins(), 0.0);
    for (int b = 0; b < stats.bins(); ++b) {
        if (stats.sumAllDiff[b] > 0.0) {
            phi[b] = stats.sumUniformDiff[b] / stats.sumAllDiff[b];
        }
    }
    return phi;
}

std::vector<double> global_color_difference_histogram(const BlockStats& stats) {
    return normalized(stats.sumAllDiff);
}

std::vector<double> texton_frequency_histogram(const BlockStats& stats) {
    std::vector<double> counts(stats.pixelCount.begin(), stats.pixelCount.end());
    return normalized(counts);
}

std::vector<double> texton_frequency_correlation(const BlockStats& stats) {
    std::vector<double> eta(stats.bins(), 0.0);
    for (int b = 0; b < stats.bins(); ++b) {
        if (stats.pixelCount[b] > 0) {
            eta[b] = static_cast<double>(stats.uniformNeighborCount[b]) /
                     (static_cast<double>(kNeighborCount) * static_cast<double>(stats.pixelCount[b]));
        }
    }
    return eta;
}

std::vector<double> fuse_contrast(std::span<const double> phi, std::span<const double> psi) {
    if (phi.size() != psi.size()) {
        throw Error(ErrorCode::InvalidParam, "fuse_contrast: length mismatch");
    }
    std::vector<double> out(phi.size());
    for (std::size_t b = 0; b < phi.size(); ++b) {
        out[b] = phi[b] * (psi[b] + 1.0);
    }
    return out;
}

std::vector<double> fuse_structure(std::span<const double> eta, std::span<const double> varphi) {
    if (eta.size() != varphi.size()) {
        throw Error(ErrorCode::InvalidParam, "fuse_structure: length mismatch");
    }
    std::vector<double> out(eta.size());
    for (std::size_t b = 0; b < eta.size(); ++b) {
        out[b] = eta[b] * (varphi[b] + 1.0);
    }
    return out;
}

FeatureBlocks compute_feature_blocks(const BlockStats& stats) {
    FeatureBlocks blocks;
    blocks.phi = color_difference_correlation(stats);
    blocks.psi = global_color_difference_histogram(stats);
    blocks.varphi = texton_frequency_histogram(stats);
    blocks.eta = texton_frequency_correlation(stats);
    blocks.contrast = fuse_contrast(blocks.phi, blocks.psi);
    blocks.structure = fuse_structure(blocks.eta, blocks.varphi);
    return blocks;
}

PudDescriptor assemble_pud(const FeatureBlocks& color, const FeatureBlocks& orientation,
                           const PudParams& params) {
    if (!(params.beta1 >= 0.0) || !(params.beta2 >= 0.0) || !std::isfinite(params.beta1) ||
        !std::isfinite(params.beta2)) {
        throw Error(ErrorCode::InvalidParam, "descriptor weights must be finite and >= 0");
    }
    if (color.contrast.size() != kColorBins || color.structure.size() != kColorBins ||
        orientation.contrast.size() != kOrientationBins ||
        orientation.structure.size() != kOrientationBins) {
        throw Error(ErrorCode::InvalidParam, "feature block sizes do not match the PUD layout");
    }

    PudDescriptor d;
    d.beta1 = params.beta1;
    d.beta2 = params.beta2;
    d.h1.reserve(kColorBlockDim);
    d.h1.insert(d.h1.end(), color.contrast.begin(), color.contrast.end());
    d.h1.insert(d.h1.end(), color.structure.begin(), color.structure.end());
    d.h2.reserve(kOrientationBlockDim);
    d.h2.insert(d.h2.end(), orientation.contrast.begin(), orientation.contrast.end());
    d.h2.insert(d.h2.end(), orientation.structure.begin(), orientation.structure.end());

    d.h.reserve(kPudDim);
    for (const double v : d.h1) {
        d.h.push_back(params.beta1 * v);
    }
    for (const double v : d.h2) {
        d.h.push_back(params.beta2 * v);
    }
    return d;
}

PudAnalysis analyze_pud(const RasterImage& img) {
    PudAnalysis a;
    const HsvPlanes planes = rgb_to_hsv(img);
    a.colorMap = quantize_color(planes);
    a.orientation = dizenzo_orientation(img);
    a.colorMask = detect_uniform_blocks(a.colorMap);
    a.orientationMask = detect_uniform_blocks(a.orientation.t2);

    // One difference table serves both maps.
    const NeighborDifferences diffs(planes);
    accumulate(a.colorMap, a.colorMask, diffs, a.colorStats);
    accumulate(a.orientation.t2, a.orientationMask, diffs, a.orientationStats);

    a.color = compute_feature_blocks(a.colorStats);
    a.orientationBlocks = compute_feature_blocks(a.orientationStats);
    return a;
}

PudDescriptor extract_pud(const RasterImage& img, const PudParams& params) {
    const PudAnalysis a = analyze_pud(img);
    return assemble_pud(a.color, a.orientationBlocks, params);
}

std::vector<double> extract_hsv_histogram(const RasterImage& img) {
    std::vector<double> counts(kHsvHistogramDim, 0.0);
    for (const Rgb p : img.pixels()) {
        counts[quantize_color(rgb_to_hsv(p))] += 1.0;
    }
    const double total = static_cast<double>(img.pixels().size());
    for (double& c : counts) {
        c /= total;
    }
    return counts;
}

}  // namespace pud
