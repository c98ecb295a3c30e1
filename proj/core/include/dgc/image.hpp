#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dgc {

// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

// PPM (P3 ascii / P6 binary). Throws std::runtime_error on malformed input.
Image load_ppm(const std::string& path);

// PNG via libpng; only compiled in when the library was found. Throws
// std::runtime_error otherwise.
Image load_png(const std::string& path);
bool png_support_compiled();

// Dispatch on magic bytes (PNG signature vs "P3"/"P6").
Image load_image(const std::string& path);

void save_ppm(const std::string& path, const Image& img);

}  // namespace dgc
