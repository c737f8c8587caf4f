#include "pud/image.hpp"

#include <algorithm>
#include <string>

namespace pud {
namespace {

void check_extent(int width, int height) {
    if (width < RasterImage::kMinSide || height < RasterImage::kMinSide) {
        throw Error(ErrorCode::ImageTooSmall,
                    "image is " + std::to_string(width) + "x" + std::to_string(height) +
                        ", both sides must be at least 3");
    }
}

}  // namespace

RasterImage::RasterImage(int width, int height, Rgb fill) {
    check_extent(width, height);
    pixels_ = Grid<Rgb>(width, height, fill);
}

RasterImage::RasterImage(int width, int height, std::vector<Rgb> pixels) {
    check_extent(width, height);
    const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (pixels.size() != expected) {
        throw Error(ErrorCode::InvalidParam,
                    "pixel count " + std::to_string(pixels.size()) + " does not match " +
                        std::to_string(width) + "x" + std::to_string(height));
    }
    pixels_ = Grid<Rgb>(width, height);
    std::copy(pixels.begin(), pixels.end(), pixels_.values().begin());
}

}  // namespace pud
