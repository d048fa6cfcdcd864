#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pii/errors.hpp"

namespace pii {

/// Dense 2-D grid of real-valued intensities, row-major with the channel
/// index innermost. Channels default to one (grayscale).
class ImageGrid {
public:
    ImageGrid() = default;

    ImageGrid(std::size_t height, std::size_t width, std::size_t channels = 1,
              double fill = 0.0)
        : height_(height), width_(width), channels_(channels),
          data_(height * width * channels, fill) {
        if (channels_ == 0) throw DomainError("ImageGrid: channels must be >= 1");
        if (!std::isfinite(fill)) throw DomainError("ImageGrid: fill value must be finite");
    }

    ImageGrid(std::size_t height, std::size_t width, std::size_t channels,
              std::vector<double> data)
        : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
        if (channels_ == 0) throw DomainError("ImageGrid: channels must be >= 1");
        if (data_.size() != height_ * width_ * channels_)
            throw ShapeMismatch("ImageGrid: data length " + std::to_string(data_.size()) +
                                " does not match " + std::to_string(height_) + "x" +
                                std::to_string(width_) + "x" + std::to_string(channels_));
        for (double v : data_)
            if (!std::isfinite(v)) throw DomainError("ImageGrid: non-finite intensity");
    }

    std::size_t height() const { return height_; }
    std::size_t width() const { return width_; }
    std::size_t channels() const { return channels_; }
    std::size_t pixel_count() const { return height_ * width_; }
    bool empty() const { return data_.empty(); }

    std::size_t index(std::size_t row, std::size_t col, std::size_t channel = 0) const {
        return (row * width_ + col) * channels_ + channel;
    }

    double at(std::size_t row, std::size_t col, std::size_t channel = 0) const {
        return data_[index(row, col, channel)];
    }
    double& at(std::size_t row, std::size_t col, std::size_t channel = 0) {
        return data_[index(row, col, channel)];
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const ImageGrid& other) const {
        return height_ == other.height_ && width_ == other.width_ &&
               channels_ == other.channels_;
    }

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::size_t channels_ = 1;
    std::vector<double> data_;
};

/// Per-channel affine normalization parameters. std is always > 0.
struct NormalizationStats {
    std::vector<double> mean;
    std::vector<double> std;
};

/// Axis-aligned rectangle of solved/blended pixels. Every operation that
/// consumes one requires the full one-pixel ring around it to stay inside
/// the image, so boundary values are always available.
struct PatchRegion {
    std::size_t top = 0;
    std::size_t left = 0;
    std::size_t height = 0;
    std::size_t width = 0;

    std::size_t pixel_count() const { return height * width; }
    std::size_t bottom() const { return top + height; }   // exclusive
    std::size_t right() const { return left + width; }    // exclusive

    bool contains(std::size_t row, std::size_t col) const {
        return row >= top && row < top + height && col >= left && col < left + width;
    }

    /// True when the region plus its one-pixel ring fits inside an
    /// image_height x image_width grid.
    bool fits_with_margin(std::size_t image_height, std::size_t image_width) const {
        return height >= 1 && width >= 1 && top >= 1 && left >= 1 &&
               top + height + 1 <= image_height && left + width + 1 <= image_width;
    }

    bool operator==(const PatchRegion&) const = default;
};

inline PatchRegion make_patch_region(std::size_t top, std::size_t left,
                                     std::size_t height, std::size_t width,
                                     std::size_t image_height, std::size_t image_width) {
    PatchRegion region{top, left, height, width};
    if (!region.fits_with_margin(image_height, image_width))
        throw ShapeMismatch("patch region [" + std::to_string(top) + "," + std::to_string(left) +
                            " " + std::to_string(height) + "x" + std::to_string(width) +
                            "] does not fit a " + std::to_string(image_height) + "x" +
                            std::to_string(image_width) + " image with a one-pixel ring");
    return region;
}

/// Shift every channel to mean 0 and scale it to standard deviation 1
/// (population convention). Returns the normalized image and the stats
/// needed to invert the transform exactly.
inline std::pair<ImageGrid, NormalizationStats> normalize(const ImageGrid& image) {
    if (image.empty()) throw EmptyInput("normalize: empty image");
    const std::size_t n = image.pixel_count();
    const std::size_t channels = image.channels();

    NormalizationStats stats;
    stats.mean.resize(channels);
    stats.std.resize(channels);

    for (std::size_t ch = 0; ch < channels; ++ch) {
        double sum = 0.0;
        for (std::size_t r = 0; r < image.height(); ++r)
            for (std::size_t c = 0; c < image.width(); ++c)
                sum += image.at(r, c, ch);
        const double mean = sum / static_cast<double>(n);

        double sq = 0.0;
        for (std::size_t r = 0; r < image.height(); ++r)
            for (std::size_t c = 0; c < image.width(); ++c) {
                const double d = image.at(r, c, ch) - mean;
                sq += d * d;
            }
        const double std_dev = std::sqrt(sq / static_cast<double>(n));
        if (std_dev == 0.0)
            throw ConstantChannel("normalize: channel " + std::to_string(ch) + " is constant");
        stats.mean[ch] = mean;
        stats.std[ch] = std_dev;
    }

    ImageGrid out(image.height(), image.width(), channels);
    for (std::size_t r = 0; r < image.height(); ++r)
        for (std::size_t c = 0; c < image.width(); ++c)
            for (std::size_t ch = 0; ch < channels; ++ch)
                out.at(r, c, ch) = (image.at(r, c, ch) - stats.mean[ch]) / stats.std[ch];
    return {std::move(out), std::move(stats)};
}

/// Inverse of normalize: v * std + mean per channel.
inline ImageGrid denormalize(const ImageGrid& image, const NormalizationStats& stats) {
    if (stats.mean.size() != image.channels() || stats.std.size() != image.channels())
        throw ShapeMismatch("denormalize: stats channel count does not match image");
    ImageGrid out(image.height(), image.width(), image.channels());
    for (std::size_t r = 0; r < image.height(); ++r)
        for (std::size_t c = 0; c < image.width(); ++c)
            for (std::size_t ch = 0; ch < image.channels(); ++ch)
                out.at(r, c, ch) = image.at(r, c, ch) * stats.std[ch] + stats.mean[ch];
    return out;
}

}  // namespace pii
