#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pud/errors.hpp"

namespace pud {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct PixelCoord {
    int x = 0;
    int y = 0;
};

// Dense row-major 2-D array.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
    const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

// Decoded RGB raster. Construction enforces the 3x3 minimum so a full
// neighbourhood window always fits.
class RasterImage {
public:
    static constexpr int kMinSide = 3;

    RasterImage(int width, int height, Rgb fill = {});
    RasterImage(int width, int height, std::vector<Rgb> pixels);

    int width() const noexcept { return pixels_.width(); }
    int height() const noexcept { return pixels_.height(); }

    Rgb& at(int x, int y) noexcept { return pixels_(x, y); }
    const Rgb& at(int x, int y) const noexcept { return pixels_(x, y); }

    std::span<const Rgb> pixels() const noexcept { return pixels_.values(); }

    friend bool operator==(const RasterImage&, const RasterImage&) = default;

private:
    Grid<Rgb> pixels_;
};

}  // namespace pud
