#pragma once

// Named figure scenarios, JSON configuration and the evaluate / export /
// verify pipelines driven by the command line.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "flwave/dt_engine.hpp"
#include "flwave/grid_render.hpp"
#include "flwave/model.hpp"
#include "flwave/verify.hpp"

namespace flwave {

enum class OutputFormat { Csv, Png, Bin };

/// Comma-separated list of csv, png, bin.
std::vector<OutputFormat> parse_formats(const std::string& list);

struct Scenario {
    std::string name;
    std::string family;  // soliton, positon, breather, ybreather, rogue, hybrid
    std::string description;
    SeedBackground background = ZeroBackground{};
    DtConfig config;
    DeformationProfile profile = DeformationProfile::Linear;
    GridSpec grid;
    std::vector<OutputFormat> formats{OutputFormat::Csv, OutputFormat::Png};
    std::string out_prefix;  // empty: use the name
    Precision precision = Precision::Standard;

    /// Everything that evaluate_grid would reject, raised up front.
    void validate() const;
};

const std::vector<Scenario>& builtin_scenarios();
/// Throws ConfigError for an unknown name.
const Scenario& find_scenario(const std::string& name);

/// Overlays a JSON document onto a scenario. Recognized keys: seed
/// ("zero" or {"a1", "a2", "b1", "b2", "d1", "d2"}), profile, grid
/// ({"x": [min, max, n], "y": [min, max, n], "t": value}), charts, format,
/// out, precision. Missing keys keep the current value.
void apply_config_json(Scenario& s, const std::string& json_text);
void apply_config_file(Scenario& s, const std::filesystem::path& path);

struct RunSummary {
    std::size_t order = 0;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::size_t singular = 0;
    double min_abs_q1 = 0.0;
    double max_abs_q1 = 0.0;
    std::vector<std::filesystem::path> written;
};

std::string format_summary(const Scenario& s, const RunSummary& r);

/// Evaluates the grid and writes every requested output as
/// <prefix>.csv / .png / .bin.
RunSummary run_scenario(const Scenario& s, const GridOptions& options = {});

struct VerifyPoint {
    SpacePoint point;
    RichardsonReport residual;
    bool pass = false;
};

struct VerifyReport {
    std::string family;
    std::vector<VerifyPoint> points;
    bool passed() const;
};

struct VerifyOptions {
    std::size_t points = 10;
    double step = 1e-3;
    double ratio_min = 0.2;
    double ratio_max = 0.3;
    /// Points whose coarse residual is below this are redrawn: there the
    /// truncation error no longer dominates rounding.
    double floor = 1e-6;
    /// Determinant precision for the residual samples; the second
    /// differences amplify rounding by 1/h^2.
    Precision precision = Precision::DoubleDouble;
    std::uint64_t seed = 20241016;
};

/// PDE residual Richardson test at random interior points of the
/// scenario's grid (times within +-1 of grid.t).
VerifyReport verify_scenario(const Scenario& s, const VerifyOptions& options = {});

void print_verify_report(std::ostream& os, const Scenario& s, const VerifyReport& r);

}  // namespace flwave
