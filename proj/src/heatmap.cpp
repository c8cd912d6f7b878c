#include <png.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "flwave/grid_render.hpp"

namespace flwave {

namespace {

double channel_value(const FieldSample& s, Channel channel) {
    return std::abs(channel == Channel::AbsQ1 ? s.q1 : s.q2);
}

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};

}  // namespace

std::vector<Rgb> heatmap_pixels(const FieldGrid& grid, Channel channel,
                                std::optional<std::pair<double, double>> fixed_range) {
    const std::size_t nx = grid.spec.nx, ny = grid.spec.ny;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    if (fixed_range) {
        std::tie(lo, hi) = *fixed_range;
    } else {
        for (std::size_t k = 0; k < grid.samples.size(); ++k) {
            if (grid.singular_mask[k]) continue;
            const double v = channel_value(grid.samples[k], channel);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }

    const auto& cmap = colormap();
    std::vector<Rgb> pixels(nx * ny, Rgb{0, 0, 0});
    for (std::size_t row = 0; row < ny; ++row) {
        const std::size_t j = ny - 1 - row;
        for (std::size_t i = 0; i < nx; ++i) {
            if (grid.singular(i, j)) continue;
            std::size_t idx = 128;
            if (hi > lo) {
                const double u = (channel_value(grid.at(i, j), channel) - lo) / (hi - lo);
                idx = static_cast<std::size_t>(std::clamp(std::lround(u * 255.0), 0L, 255L));
            }
            pixels[row * nx + i] = cmap[idx];
        }
    }
    return pixels;
}

void render_heatmap(const FieldGrid& grid, const std::filesystem::path& path, Channel channel,
                    std::optional<std::pair<double, double>> fixed_range) {
    const auto pixels = heatmap_pixels(grid, channel, fixed_range);
    const std::size_t nx = grid.spec.nx, ny = grid.spec.ny;

    std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.string().c_str(), "wb"));
    if (!file) throw IoError(path.string(), "cannot open for writing");

    std::vector<png_byte> row(3 * nx);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError(path.string(), "libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError(path.string(), "libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path.string(), "PNG encoding failed");
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(nx), static_cast<png_uint_32>(ny), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (std::size_t r = 0; r < ny; ++r) {
        for (std::size_t i = 0; i < nx; ++i) {
            const Rgb& c = pixels[r * nx + i];
            row[3 * i] = c.r;
            row[3 * i + 1] = c.g;
            row[3 * i + 2] = c.b;
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fflush(file.get()) != 0) throw IoError(path.string(), "write failed");
}

}  // namespace flwave
