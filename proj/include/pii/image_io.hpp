#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <png.h>

#include "pii/errors.hpp"
#include "pii/image.hpp"

namespace pii {

enum class ImageFormat { png8, png16, raw_f32 };

inline const char* format_name(ImageFormat format) {
    switch (format) {
        case ImageFormat::png8: return "png8";
        case ImageFormat::png16: return "png16";
        case ImageFormat::raw_f32: return "raw_f32";
    }
    return "unknown";
}

inline ImageFormat parse_format(std::string_view name) {
    if (name == "png8") return ImageFormat::png8;
    if (name == "png16") return ImageFormat::png16;
    if (name == "raw_f32") return ImageFormat::raw_f32;
    throw FormatError("unknown image format '" + std::string(name) + "'");
}

namespace detail {

// raw_f32 container: 16-byte header (magic "PIIG", u32 height, u32 width,
// u32 channels, little-endian) followed by little-endian IEEE-754 binary32
// samples, row-major, channel-innermost.
inline constexpr char kRawMagic[4] = {'P', 'I', 'I', 'G'};
inline constexpr std::size_t kRawHeaderBytes = 16;
inline constexpr std::size_t kRawMaxDim = 1u << 20;

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.string().c_str(), mode));
    if (!f) throw IoError("cannot open '" + path.string() + "'");
    return f;
}

inline void put_u32le(unsigned char* out, std::uint32_t v) {
    out[0] = static_cast<unsigned char>(v & 0xff);
    out[1] = static_cast<unsigned char>((v >> 8) & 0xff);
    out[2] = static_cast<unsigned char>((v >> 16) & 0xff);
    out[3] = static_cast<unsigned char>((v >> 24) & 0xff);
}

inline std::uint32_t get_u32le(const unsigned char* in) {
    return static_cast<std::uint32_t>(in[0]) | (static_cast<std::uint32_t>(in[1]) << 8) |
           (static_cast<std::uint32_t>(in[2]) << 16) |
           (static_cast<std::uint32_t>(in[3]) << 24);
}

inline ImageGrid load_raw_f32(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    unsigned char header[kRawHeaderBytes];
    if (std::fread(header, 1, kRawHeaderBytes, f.get()) != kRawHeaderBytes)
        throw FormatError("raw_f32 '" + path.string() + "': truncated header");
    if (std::memcmp(header, kRawMagic, 4) != 0)
        throw FormatError("raw_f32 '" + path.string() + "': bad magic");
    const std::uint32_t height = get_u32le(header + 4);
    const std::uint32_t width = get_u32le(header + 8);
    const std::uint32_t channels = get_u32le(header + 12);
    if (height == 0 || width == 0 || channels == 0 || height > kRawMaxDim ||
        width > kRawMaxDim || channels > 64)
        throw FormatError("raw_f32 '" + path.string() + "': implausible dimensions");

    const std::size_t count =
        static_cast<std::size_t>(height) * width * channels;
    std::vector<unsigned char> bytes(count * 4);
    if (std::fread(bytes.data(), 1, bytes.size(), f.get()) != bytes.size())
        throw FormatError("raw_f32 '" + path.string() + "': truncated payload");

    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint32_t u = get_u32le(bytes.data() + 4 * i);
        float fv;
        std::memcpy(&fv, &u, 4);
        if (!std::isfinite(fv))
            throw FormatError("raw_f32 '" + path.string() + "': non-finite sample");
        values[i] = static_cast<double>(fv);
    }
    return ImageGrid(height, width, channels, std::move(values));
}

inline void save_raw_f32(const ImageGrid& image, const std::filesystem::path& path) {
    if (image.empty()) throw EmptyInput("save_image: empty image");
    if (image.height() > kRawMaxDim || image.width() > kRawMaxDim || image.channels() > 64)
        throw RangeError("save_image: dimensions too large for raw_f32 container");
    FilePtr f = open_file(path, "wb");
    unsigned char header[kRawHeaderBytes];
    std::memcpy(header, kRawMagic, 4);
    put_u32le(header + 4, static_cast<std::uint32_t>(image.height()));
    put_u32le(header + 8, static_cast<std::uint32_t>(image.width()));
    put_u32le(header + 12, static_cast<std::uint32_t>(image.channels()));
    if (std::fwrite(header, 1, kRawHeaderBytes, f.get()) != kRawHeaderBytes)
        throw IoError("write failed for '" + path.string() + "'");

    std::vector<unsigned char> bytes(image.data().size() * 4);
    for (std::size_t i = 0; i < image.data().size(); ++i) {
        const float fv = static_cast<float>(image.data()[i]);
        if (!std::isfinite(fv))
            throw RangeError("save_image: value " + std::to_string(image.data()[i]) +
                             " is not representable as binary32");
        std::uint32_t u;
        std::memcpy(&u, &fv, 4);
        put_u32le(bytes.data() + 4 * i, u);
    }
    if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size())
        throw IoError("write failed for '" + path.string() + "'");
    if (std::fflush(f.get()) != 0)
        throw IoError("write failed for '" + path.string() + "'");
}

// Heap-held buffers so nothing that matters lives in automatic storage
// across setjmp/longjmp.
struct PngRows {
    std::vector<unsigned char> bytes;
    std::vector<png_bytep> rows;
};

inline ImageGrid load_png(const std::filesystem::path& path, int expected_depth) {
    FilePtr f = open_file(path, "rb");
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw FormatError("png '" + path.string() + "': not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng: out of memory");
    }
    auto buf = std::make_unique<PngRows>();
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("png '" + path.string() + "': decode error");
    }
    png_init_io(png, f.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("png '" + path.string() + "': only grayscale is supported");
    }
    if (depth != expected_depth) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw FormatError("png '" + path.string() + "': bit depth " + std::to_string(depth) +
                          " does not match declared format");
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    buf->bytes.resize(rowbytes * height);
    buf->rows.resize(height);
    for (png_uint_32 r = 0; r < height; ++r)
        buf->rows[r] = buf->bytes.data() + rowbytes * r;
    png_read_image(png, buf->rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ImageGrid out(height, width, 1);
    for (png_uint_32 r = 0; r < height; ++r) {
        const unsigned char* row = buf->bytes.data() + rowbytes * r;
        for (png_uint_32 c = 0; c < width; ++c) {
            if (expected_depth == 8) {
                out.at(r, c) = static_cast<double>(row[c]);
            } else {
                // PNG stores 16-bit samples big-endian.
                const unsigned v = (static_cast<unsigned>(row[2 * c]) << 8) | row[2 * c + 1];
                out.at(r, c) = static_cast<double>(v);
            }
        }
    }
    return out;
}

inline void save_png(const ImageGrid& image, const std::filesystem::path& path, int depth) {
    if (image.empty()) throw EmptyInput("save_image: empty image");
    if (image.channels() != 1)
        throw FormatError("save_image: png output supports a single channel only");
    const double max_code = depth == 8 ? 255.0 : 65535.0;
    for (double v : image.data())
        if (!std::isfinite(v) || v < 0.0 || v > max_code)
            throw RangeError("save_image: value " + std::to_string(v) +
                             " outside png" + std::to_string(depth) + " code range");

    auto buf = std::make_unique<PngRows>();
    const std::size_t rowbytes = image.width() * (depth == 8 ? 1 : 2);
    buf->bytes.resize(rowbytes * image.height());
    buf->rows.resize(image.height());
    for (std::size_t r = 0; r < image.height(); ++r) {
        unsigned char* row = buf->bytes.data() + rowbytes * r;
        buf->rows[r] = row;
        for (std::size_t c = 0; c < image.width(); ++c) {
            const auto code = static_cast<std::uint32_t>(std::llround(image.at(r, c)));
            if (depth == 8) {
                row[c] = static_cast<unsigned char>(code);
            } else {
                row[2 * c] = static_cast<unsigned char>(code >> 8);
                row[2 * c + 1] = static_cast<unsigned char>(code & 0xff);
            }
        }
    }

    FilePtr f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng: out of memory");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("png '" + path.string() + "': encode error");
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()),
                 static_cast<png_uint_32>(image.height()), depth, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, buf->rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fflush(f.get()) != 0)
        throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace detail

/// Decode a file in the declared format. png codes are mapped to reals by
/// plain integer-to-real conversion; no rescaling happens anywhere.
inline ImageGrid load_image(const std::filesystem::path& path, ImageFormat format) {
    switch (format) {
        case ImageFormat::png8: return detail::load_png(path, 8);
        case ImageFormat::png16: return detail::load_png(path, 16);
        case ImageFormat::raw_f32: return detail::load_raw_f32(path);
    }
    throw FormatError("load_image: unknown format");
}

inline void save_image(const ImageGrid& image, const std::filesystem::path& path,
                       ImageFormat format) {
    switch (format) {
        case ImageFormat::png8: detail::save_png(image, path, 8); return;
        case ImageFormat::png16: detail::save_png(image, path, 16); return;
        case ImageFormat::raw_f32: detail::save_raw_f32(image, path); return;
    }
    throw FormatError("save_image: unknown format");
}

}  // namespace pii
