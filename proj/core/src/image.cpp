#include "dgc/image.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#ifdef DGC_HAVE_PNG
#include <png.h>
#endif

namespace dgc {

namespace {

// Skips PPM whitespace and '#' comments, returns the next integer token.
int next_ppm_int(std::istream& in, const std::string& path) {
    while (true) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value;
    if (!(in >> value)) throw std::runtime_error("malformed PPM header: " + path);
    return value;
}

}  // namespace

Image load_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open image: " + path);
    std::string magic;
    in >> magic;
    if (magic != "P3" && magic != "P6") {
        throw std::runtime_error("not a PPM file (expected P3/P6): " + path);
    }
    Image img;
    img.width = next_ppm_int(in, path);
    img.height = next_ppm_int(in, path);
    const int maxval = next_ppm_int(in, path);
    if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 255) {
        throw std::runtime_error("unsupported PPM dimensions/maxval: " + path);
    }
    img.rgb.resize(img.pixel_count() * 3);
    if (magic == "P6") {
        in.get();  // single whitespace after maxval
        in.read(reinterpret_cast<char*>(img.rgb.data()),
                static_cast<std::streamsize>(img.rgb.size()));
        if (in.gcount() != static_cast<std::streamsize>(img.rgb.size())) {
            throw std::runtime_error("truncated PPM pixel data: " + path);
        }
    } else {
        for (auto& b : img.rgb) {
            int value;
            if (!(in >> value) || value < 0 || value > maxval) {
                throw std::runtime_error("malformed PPM pixel data: " + path);
            }
            b = static_cast<std::uint8_t>(value);
        }
    }
    return img;
}

void save_ppm(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()),
              static_cast<std::streamsize>(img.rgb.size()));
}

bool png_support_compiled() {
#ifdef DGC_HAVE_PNG
    return true;
#else
    return false;
#endif
}

#ifdef DGC_HAVE_PNG

Image load_png(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw std::runtime_error("cannot open image: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw std::runtime_error("libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw std::runtime_error("libpng failed to decode: " + path);
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    // Normalize everything to 8-bit RGB.
    png_set_strip_16(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    const auto color = png_get_color_type(png, info);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_read_update_info(png, info);

    Image img;
    img.width = static_cast<int>(png_get_image_width(png, info));
    img.height = static_cast<int>(png_get_image_height(png, info));
    img.rgb.resize(img.pixel_count() * 3);
    std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));
    for (int y = 0; y < img.height; ++y) {
        rows[static_cast<std::size_t>(y)] = img.rgb.data() + static_cast<std::size_t>(y) * img.width * 3;
    }
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return img;
}

#else

Image load_png(const std::string&) {
    throw std::runtime_error("PNG support not compiled in (libpng not found); use PPM");
}

#endif

Image load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open image: " + path);
    unsigned char sig[2] = {0, 0};
    in.read(reinterpret_cast<char*>(sig), 2);
    in.close();
    if (sig[0] == 0x89 && sig[1] == 'P') return load_png(path);
    if (sig[0] == 'P' && (sig[1] == '3' || sig[1] == '6')) return load_ppm(path);
    throw std::runtime_error("unrecognized image format (PNG or PPM expected): " + path);
}

}  // namespace dgc
