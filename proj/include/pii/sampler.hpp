#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "pii/errors.hpp"
#include "pii/image.hpp"

namespace pii {

/// Generator name recorded in corpus manifests. The engine is std::mt19937_64,
/// whose output sequence is fixed by the C++ standard; per-sample streams are
/// derived with SplitMix64. The mappings to reals and bounded integers below
/// are part of this contract — std::uniform_*_distribution is never used
/// because its output differs between standard library implementations.
inline constexpr const char* kRngName = "mt19937_64+splitmix64-streams";

/// Deterministic, platform-independent random source.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [lo, hi), built from the top 53 bits of one draw.
    double uniform_real(double lo, double hi) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    /// Unbiased integer in [0, n) via masked rejection.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw DomainError("uniform_index: n must be positive");
        if (n == 1) return 0;
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            const std::uint64_t v = next_u64() & mask;
            if (v < n) return v;
        }
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Seed for an independent per-sample stream. Streams depend only on
/// (master_seed, stream_index), so parallel generation in any order
/// reproduces the serial output.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t s = master_seed;
    const std::uint64_t h = detail::splitmix64(s);
    s = h ^ (stream_index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
    return detail::splitmix64(s);
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const Interval&) const = default;
};

/// Patch geometry / interpolation-factor distributions. Fractions are of the
/// corresponding image axis; each axis of a rectangular image uses its own
/// length.
struct SamplerConfig {
    Interval size_fraction_range{0.1, 0.4};
    Interval center_fraction_range{0.1, 0.9};
    Interval alpha_range{0.05, 0.95};
    std::uint64_t seed = 0;
};

inline void validate(const SamplerConfig& config) {
    auto check = [](const Interval& iv, const char* name) {
        if (!(iv.lo <= iv.hi) || iv.lo < 0.0 || iv.hi > 1.0)
            throw DomainError(std::string("SamplerConfig: ") + name +
                              " must be a nonempty interval inside [0, 1]");
    };
    check(config.size_fraction_range, "size_fraction_range");
    check(config.center_fraction_range, "center_fraction_range");
    check(config.alpha_range, "alpha_range");
}

/// One unit of augmentation: where the patch sits, how strongly the source
/// is mixed in, and which dataset images play source/destination.
struct PatchSpec {
    PatchRegion region;
    double alpha = 0.0;
    std::size_t source_index = 0;
    std::size_t dest_index = 0;
};

/// Draw patch geometry and alpha. Consumes exactly five uniform draws in a
/// fixed order: height fraction, width fraction, center-row fraction,
/// center-column fraction, alpha. Side lengths are floor(fraction * axis),
/// at least 3 pixels; regions whose sampled placement would push the
/// one-pixel ring outside the image are translated inward, never resampled.
/// source/dest indices are left for the caller to fill.
inline PatchSpec sample_patch(const SamplerConfig& config, std::size_t image_height,
                              std::size_t image_width, Rng& rng) {
    validate(config);
    if (image_height < 16 || image_width < 16)
        throw ImageTooSmall("sample_patch: image must be at least 16x16");

    auto side = [&](std::size_t axis) {
        const double f =
            rng.uniform_real(config.size_fraction_range.lo, config.size_fraction_range.hi);
        const auto s = static_cast<std::size_t>(std::floor(f * static_cast<double>(axis)));
        return std::max<std::size_t>(3, s);
    };
    const std::size_t patch_height = side(image_height);
    const std::size_t patch_width = side(image_width);

    auto place = [&](std::size_t axis, std::size_t extent) {
        const double center =
            rng.uniform_real(config.center_fraction_range.lo, config.center_fraction_range.hi) *
            static_cast<double>(axis);
        if (extent + 2 > axis)
            throw ImageTooSmall("sample_patch: patch of " + std::to_string(extent) +
                                " pixels cannot keep its ring inside an axis of " +
                                std::to_string(axis));
        const auto lo = static_cast<long long>(1);
        const auto hi = static_cast<long long>(axis - 1 - extent);
        auto start = static_cast<long long>(std::floor(center - static_cast<double>(extent) / 2.0));
        start = std::clamp(start, lo, hi);
        return static_cast<std::size_t>(start);
    };
    const std::size_t top = place(image_height, patch_height);
    const std::size_t left = place(image_width, patch_width);

    PatchSpec spec;
    spec.region = PatchRegion{top, left, patch_height, patch_width};
    spec.alpha = rng.uniform_real(config.alpha_range.lo, config.alpha_range.hi);
    return spec;
}

/// Uniform (destination, source) index pair, always distinct. The destination
/// is drawn first over [0, n), then the source over the remaining n-1 slots.
inline std::pair<std::size_t, std::size_t> sample_pair(std::size_t dataset_size, Rng& rng) {
    if (dataset_size < 2)
        throw DatasetTooSmall("sample_pair: need at least 2 images, got " +
                              std::to_string(dataset_size));
    const auto dest = static_cast<std::size_t>(rng.uniform_index(dataset_size));
    auto source = static_cast<std::size_t>(rng.uniform_index(dataset_size - 1));
    if (source >= dest) ++source;
    return {dest, source};
}

}  // namespace pii
