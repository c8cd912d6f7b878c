#pragma once

// Dense grid evaluation, CSV / binary export and PNG heatmaps.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "flwave/dt_engine.hpp"
#include "flwave/model.hpp"

namespace flwave {

/// Point sampler; nullopt marks a singular point.
using FieldSampler = std::function<std::optional<FieldSample>(const SpacePoint&)>;

/// Sampler over evaluate_solution with the configuration captured by value.
FieldSampler solution_sampler(SeedBackground background, DtConfig config, DeformationProfile profile,
                              EvalOptions options = {});

/// Samples on a GridSpec, x fastest: index = j * nx + i for node (x_i, y_j).
struct FieldGrid {
    GridSpec spec;
    std::vector<FieldSample> samples;
    std::vector<std::uint8_t> singular_mask;

    std::size_t index(std::size_t i, std::size_t j) const { return j * spec.nx + i; }
    bool singular(std::size_t i, std::size_t j) const { return singular_mask[index(i, j)] != 0; }
    const FieldSample& at(std::size_t i, std::size_t j) const { return samples[index(i, j)]; }
    std::size_t singular_count() const;
};

/// Worker count from FLWAVE_THREADS, else the hardware concurrency.
unsigned default_thread_count();

/// Evaluates a sampler at every node. Results land in fixed slots, so any
/// thread count yields bitwise-identical grids. NumericError at a node sets
/// its mask bit; other exceptions propagate.
FieldGrid evaluate_grid(const FieldSampler& sampler, const GridSpec& spec, unsigned threads = 0);

struct GridOptions {
    unsigned threads = 0;  // 0 = default_thread_count()
    EvalOptions eval;
};

/// Configuration errors are raised before any node is evaluated.
FieldGrid evaluate_grid(const SeedBackground& background, const DtConfig& config, DeformationProfile profile,
                        const GridSpec& spec, const GridOptions& options = {});

enum class ExportFormat { Csv, F64Bin };

/// CSV header x,y,re_q1,im_q1,abs_q1,re_q2,im_q2,abs_q2; masked nodes carry
/// `nan`. Binary: "FLW1", nx and ny as u32 LE, then nx*ny rows of eight f64
/// LE values in the same column order.
void export_field(const FieldGrid& grid, const std::filesystem::path& path, ExportFormat format);

/// Decoded export: one row of eight values per node in file order.
struct FieldTable {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<std::array<double, 8>> rows;
};

FieldTable read_field_binary(const std::filesystem::path& path);
FieldTable read_field_csv(const std::filesystem::path& path);

enum class Channel { AbsQ1, AbsQ2 };

struct Rgb {
    std::uint8_t r, g, b;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

const std::array<Rgb, 256>& colormap();

/// nx-by-ny pixels, top row = y_max. Linear normalization over the grid's
/// min..max (or the fixed range); masked nodes are black; a flat channel
/// renders as the middle palette entry.
std::vector<Rgb> heatmap_pixels(const FieldGrid& grid, Channel channel,
                                std::optional<std::pair<double, double>> fixed_range = std::nullopt);

void render_heatmap(const FieldGrid& grid, const std::filesystem::path& path, Channel channel,
                    std::optional<std::pair<double, double>> fixed_range = std::nullopt);

}  // namespace flwave
