#pragma once

#include "pii/errors.hpp"
#include "pii/image.hpp"
#include "pii/sampler.hpp"

namespace pii {

/// Convex patch blend: inside the region the output is
/// (1 - alpha) * dest + alpha * source, elsewhere it is the destination,
/// bit for bit. Values are not clipped.
inline ImageGrid fpi_blend(const ImageGrid& dest, const ImageGrid& source,
                           const PatchSpec& spec) {
    if (!dest.same_shape(source))
        throw ShapeMismatch("fpi_blend: destination and source shapes differ");
    if (!spec.region.fits_with_margin(dest.height(), dest.width()))
        throw ShapeMismatch("fpi_blend: patch region does not fit the image");
    if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0))
        throw DomainError("fpi_blend: alpha must lie in [0, 1]");

    ImageGrid out = dest;
    if (spec.alpha == 0.0) return out;  // leaves the destination untouched

    const double a = spec.alpha;
    for (std::size_t r = spec.region.top; r < spec.region.bottom(); ++r)
        for (std::size_t c = spec.region.left; c < spec.region.right(); ++c)
            for (std::size_t ch = 0; ch < dest.channels(); ++ch)
                out.at(r, c, ch) = (1.0 - a) * dest.at(r, c, ch) + a * source.at(r, c, ch);
    return out;
}

}  // namespace pii
