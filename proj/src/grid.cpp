#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include "flwave/grid_render.hpp"

namespace flwave {

std::size_t FieldGrid::singular_count() const {
    std::size_t n = 0;
    for (auto m : singular_mask) n += m != 0;
    return n;
}

unsigned default_thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FLWAVE_THREADS")) {
        unsigned cap = 0;
        const auto* end = env + std::strlen(env);
        if (std::from_chars(env, end, cap).ec == std::errc{} && cap > 0) return std::min(cap, hw);
    }
    return hw;
}

FieldSampler solution_sampler(SeedBackground background, DtConfig config, DeformationProfile profile,
                              EvalOptions options) {
    return [background = std::move(background), config = std::move(config), profile, options](const SpacePoint& p) {
        return evaluate_solution(background, config, profile, p, options);
    };
}

FieldGrid evaluate_grid(const FieldSampler& sampler, const GridSpec& spec, unsigned threads) {
    spec.validate();
    FieldGrid grid{spec, std::vector<FieldSample>(spec.size()), std::vector<std::uint8_t>(spec.size(), 0)};
    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= spec.size()) return;
            const SpacePoint p{spec.x_at(k % spec.nx), spec.y_at(k / spec.nx), spec.t};
            try {
                if (auto s = sampler(p)) {
                    grid.samples[k] = *s;
                } else {
                    grid.singular_mask[k] = 1;
                }
            } catch (const NumericError&) {
                grid.singular_mask[k] = 1;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(spec.size());
                return;
            }
        }
    };

    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t k = 0; k < grid.samples.size(); ++k) {
        if (grid.singular_mask[k]) grid.samples[k] = {};
    }
    return grid;
}

FieldGrid evaluate_grid(const SeedBackground& background, const DtConfig& config, DeformationProfile profile,
                        const GridSpec& spec, const GridOptions& options) {
    spec.validate();
    config.validate(background);
    // Surface chart/background mismatches (e.g. a non-critical rogue lambda)
    // before going parallel.
    try {
        evaluate_solution(background, config, profile, {spec.x_min, spec.y_min, spec.t}, options.eval);
    } catch (const NumericError&) {
        // A singular corner is reported through the mask like any other node.
    }
    return evaluate_grid(solution_sampler(background, config, profile, options.eval), spec, options.threads);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::array<double, 8> row_values(const FieldGrid& grid, std::size_t i, std::size_t j) {
    const double x = grid.spec.x_at(i), y = grid.spec.y_at(j);
    if (grid.singular(i, j)) return {x, y, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    const auto& s = grid.at(i, j);
    return {x, y, s.q1.real(), s.q1.imag(), std::abs(s.q1), s.q2.real(), s.q2.imag(), std::abs(s.q2)};
}

void append_number(std::string& out, double v) {
    if (std::isnan(v)) {
        out += "nan";
        return;
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int k = 0; k < 4; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xffu);
    os.write(b, 4);
}

void put_f64(std::ostream& os, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((bits >> (8 * k)) & 0xffu);
    os.write(b, 8);
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = (v << 8) | p[k];
    return v;
}

double get_f64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | p[k];
    return std::bit_cast<double>(v);
}

constexpr char kMagic[4] = {'F', 'L', 'W', '1'};

}  // namespace

void export_field(const FieldGrid& grid, const std::filesystem::path& path, ExportFormat format) {
    const auto& spec = grid.spec;
    if (format == ExportFormat::Csv) {
        std::string text = "x,y,re_q1,im_q1,abs_q1,re_q2,im_q2,abs_q2\n";
        for (std::size_t j = 0; j < spec.ny; ++j)
            for (std::size_t i = 0; i < spec.nx; ++i) {
                const auto row = row_values(grid, i, j);
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (c) text += ',';
                    append_number(text, row[c]);
                }
                text += '\n';
            }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError(path.string(), "cannot open for writing");
        os.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!os) throw IoError(path.string(), "write failed");
        return;
    }

    if (spec.nx > 0xffffffffu || spec.ny > 0xffffffffu) {
        throw IoError(path.string(), "grid too large for the binary format");
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(path.string(), "cannot open for writing");
    os.write(kMagic, 4);
    put_u32(os, static_cast<std::uint32_t>(spec.nx));
    put_u32(os, static_cast<std::uint32_t>(spec.ny));
    for (std::size_t j = 0; j < spec.ny; ++j)
        for (std::size_t i = 0; i < spec.nx; ++i)
            for (double v : row_values(grid, i, j)) put_f64(os, v);
    if (!os) throw IoError(path.string(), "write failed");
}

FieldTable read_field_binary(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError(path.string(), "cannot open for reading");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw IoError(path.string(), "not an FLW1 file");
    }
    FieldTable t;
    t.nx = get_u32(bytes.data() + 4);
    t.ny = get_u32(bytes.data() + 8);
    const std::size_t expected = 12 + t.nx * t.ny * 8 * 8;
    if (bytes.size() != expected) throw IoError(path.string(), "truncated or oversized FLW1 payload");
    t.rows.resize(t.nx * t.ny);
    const unsigned char* p = bytes.data() + 12;
    for (auto& row : t.rows)
        for (auto& v : row) {
            v = get_f64(p);
            p += 8;
        }
    return t;
}

FieldTable read_field_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError(path.string(), "cannot open for reading");
    std::string line;
    if (!std::getline(is, line) || line != "x,y,re_q1,im_q1,abs_q1,re_q2,im_q2,abs_q2") {
        throw IoError(path.string(), "missing CSV header");
    }
    FieldTable t;
    while (std::getline(is, line)) {
        std::array<double, 8> row{};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (std::size_t c = 0; c < 8; ++c) {
            const auto res = std::from_chars(p, end, row[c]);
            if (res.ec != std::errc{}) throw IoError(path.string(), "malformed CSV row");
            p = res.ptr;
            if (c < 7) {
                if (p == end || *p != ',') throw IoError(path.string(), "malformed CSV row");
                ++p;
            }
        }
        t.rows.push_back(row);
    }
    // Recover the grid shape from the x column (x varies fastest).
    if (!t.rows.empty()) {
        std::size_t nx = 1;
        while (nx < t.rows.size() && t.rows[nx][1] == t.rows[0][1]) ++nx;
        t.nx = nx;
        t.ny = t.rows.size() / nx;
    }
    return t;
}

}  // namespace flwave
