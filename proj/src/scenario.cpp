#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "flwave/scenario.hpp"
#include "json.hpp"

namespace flwave {

namespace {

constexpr Complex kSolitonLambda{1.0, 1.0};
constexpr Complex kBreatherLambda{0.5, 0.5};
constexpr Complex kDeformation{1.0, 1.0};

PlaneWaveSeed breather_seed() { return PlaneWaveSeed::create(-1, -1, -1, -2, 1, 1); }
PlaneWaveSeed rogue_seed() { return PlaneWaveSeed::create(-0.5, -0.5, -1, -1, 1, 1); }
Complex rogue_lambda() { return critical_lambda(-0.5, 1, kFigureBranch); }

GridSpec square(double half, std::size_t n, double t = 0.0) { return {-half, half, -half, half, n, n, t}; }
GridSpec box(double x0, double x1, double y0, double y1, std::size_t n, double t) { return {x0, x1, y0, y1, n, n, t}; }

const DeformationProfile kProfiles[4] = {DeformationProfile::Linear, DeformationProfile::Quadratic,
                                         DeformationProfile::Cubic, DeformationProfile::Sine};

Scenario make(std::string name, std::string family, std::string description, SeedBackground bg,
              std::vector<SpectralChart> charts, DeformationProfile profile, GridSpec grid) {
    Scenario s;
    s.name = std::move(name);
    s.family = std::move(family);
    s.description = std::move(description);
    s.background = std::move(bg);
    s.config.charts = std::move(charts);
    s.profile = profile;
    s.grid = grid;
    return s;
}

SpectralChart rogue_chart(int multiplicity, std::vector<RogueShift> shifts = {}) {
    return {rogue_lambda(), multiplicity, RogueChart{std::move(shifts)}};
}

SpectralChart breather_chart(bool y_shaped, Complex h1) {
    BreatherChart b;
    b.l1 = y_shaped ? 1.0 : 0.0;
    b.h1 = h1;
    b.h2 = y_shaped ? h1 : -h1;
    return {kBreatherLambda, 0, b};
}

std::vector<Scenario> build_builtins() {
    std::vector<Scenario> out;
    const char* shape[4] = {"linear", "quadratic", "cubic", "sine"};

    for (int k = 0; k < 4; ++k) {
        out.push_back(make(std::string("fig1") + char('a' + k), "soliton",
                           std::string("deformed soliton, ") + shape[k] + " profile", ZeroBackground{},
                           {{kSolitonLambda, 0, ZeroSeedChart{kDeformation}}}, kProfiles[k], square(10, 101)));
    }
    for (int k = 0; k < 4; ++k) {
        out.push_back(make(std::string("fig1") + char('e' + k), "positon",
                           std::string("deformed positon, ") + shape[k] + " profile", ZeroBackground{},
                           {{kSolitonLambda, 1, ZeroSeedChart{kDeformation}}}, kProfiles[k], square(10, 101)));
    }
    for (int k = 0; k < 4; ++k) {
        out.push_back(make(std::string("fig2") + char('a' + k), "breather",
                           std::string("deformed breather, ") + shape[k] + " profile", breather_seed(),
                           {breather_chart(false, kDeformation)}, kProfiles[k], square(10, 101)));
    }
    const double y_times[8] = {0, 0, 0, 0, 10, 5, 2, 15};
    for (int k = 0; k < 8; ++k) {
        std::ostringstream d;
        d << "Y-shaped breather, " << shape[k % 4] << " profile, t=" << y_times[k];
        out.push_back(make(std::string("figY") + char('a' + k), "ybreather", d.str(), breather_seed(),
                           {breather_chart(true, kDeformation)}, kProfiles[k % 4], square(10, 101, y_times[k])));
    }

    // The first-order rogue wave travels along y = -1 - 5t.
    const auto lin = DeformationProfile::Linear;
    out.push_back(make("fig3a", "rogue", "first-order rogue wave, t=0", rogue_seed(), {rogue_chart(0)}, lin,
                       square(10, 101)));
    out.push_back(make("fig3b", "rogue", "first-order rogue wave, t=4", rogue_seed(), {rogue_chart(0)}, lin,
                       box(-10, 10, -31, -11, 101, 4)));
    out.push_back(make("fig3c", "rogue", "first-order rogue wave, t=8", rogue_seed(), {rogue_chart(0)}, lin,
                       box(-10, 10, -51, -31, 101, 8)));
    out.push_back(make("fig3d", "rogue", "second-order rogue wave, t=0", rogue_seed(), {rogue_chart(1)}, lin,
                       square(10, 101)));
    out.push_back(make("fig3e", "rogue", "second-order rogue wave, t=40", rogue_seed(), {rogue_chart(1)}, lin,
                       box(-40, 40, -240, -160, 161, 40)));
    out.push_back(make("fig3f", "rogue", "second-order rogue wave, v1=100", rogue_seed(),
                       {rogue_chart(1, {{0, 0}, {100, 0}})}, lin, square(20, 161)));

    out.push_back(make("fig4a", "rogue", "third-order rogue wave, t=0", rogue_seed(), {rogue_chart(2)}, lin,
                       square(10, 101)));
    out.push_back(make("fig4b", "rogue", "third-order rogue wave, t=5", rogue_seed(), {rogue_chart(2)}, lin,
                       box(-25, 25, -50, 0, 161, 5)));
    out.push_back(make("fig4c", "rogue", "third-order rogue wave, v1=400", rogue_seed(),
                       {rogue_chart(2, {{0, 0}, {400, 0}})}, lin, square(30, 161)));
    out.push_back(make("fig4d", "rogue", "third-order rogue wave, v2=1000", rogue_seed(),
                       {rogue_chart(2, {{0, 0}, {0, 0}, {1000, 0}})}, lin, square(30, 161)));

    // Hybrids are undeformed: h1 = h2 = 0.
    struct Hybrid {
        const char* name;
        bool y_shaped;
        int multiplicity;
        std::vector<RogueShift> shifts;
        const char* note;
    };
    const std::vector<Hybrid> hybrids = {
        {"fig5a", false, 0, {}, "breather + first-order rogue wave"},
        {"fig5b", false, 0, {{16, 16}}, "breather + first-order rogue wave, v0=w0=16"},
        {"fig5c", true, 0, {}, "Y-shaped breather + first-order rogue wave"},
        {"fig5d", true, 0, {{16, 16}}, "Y-shaped breather + first-order rogue wave, v0=w0=16"},
        {"fig6a", false, 1, {}, "breather + second-order rogue wave"},
        {"fig6b", false, 1, {{0, 0}, {400, 0}}, "breather + second-order rogue wave, v1=400"},
        {"fig6c", false, 1, {{40, 0}, {400, 0}}, "breather + second-order rogue wave, v0=40, v1=400"},
        {"fig6d", true, 1, {}, "Y-shaped breather + second-order rogue wave"},
        {"fig6e", true, 1, {{0, 0}, {200, 0}}, "Y-shaped breather + second-order rogue wave, v1=200"},
        {"fig6f", true, 1, {{30, 0}, {400, 0}}, "Y-shaped breather + second-order rogue wave, v0=30, v1=400"},
    };
    for (const auto& h : hybrids) {
        out.push_back(make(h.name, "hybrid", h.note, rogue_seed(),
                           {rogue_chart(h.multiplicity, h.shifts), breather_chart(h.y_shaped, Complex{})}, lin,
                           square(20, 161)));
    }
    return out;
}

double json_number(const nlohmann::json& j, const char* what) {
    if (!j.is_number()) throw ConfigError(std::string("config: ") + what + " must be a number");
    return j.get<double>();
}

Complex json_complex(const nlohmann::json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw ConfigError(std::string("config: ") + what + " must be [re, im]");
    return {json_number(j[0], what), json_number(j[1], what)};
}

void json_axis(const nlohmann::json& j, const char* axis, double& lo, double& hi, std::size_t& n) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigError(std::string("config: grid.") + axis + " must be [min, max, n]");
    }
    lo = json_number(j[0], axis);
    hi = json_number(j[1], axis);
    const double count = json_number(j[2], axis);
    if (count < 0 || count != std::floor(count)) {
        throw DomainError(std::string("grid.") + axis, "node count must be a nonnegative integer");
    }
    n = static_cast<std::size_t>(count);
}

SpectralChart json_chart(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: each chart must be an object");
    const std::string kind = j.value("kind", "");
    SpectralChart c;
    c.multiplicity = j.value("multiplicity", 0);
    if (kind == "rogue") {
        const auto& lam = j.contains("lambda") ? j["lambda"] : nlohmann::json("critical");
        c.lambda = lam.is_string() && lam.get<std::string>() == "critical" ? rogue_lambda()
                                                                           : json_complex(lam, "lambda");
        RogueChart r;
        for (const auto& s : j.value("shifts", nlohmann::json::array())) {
            if (!s.is_array() || s.size() != 2) throw ConfigError("config: rogue shifts are [v, w] pairs");
            r.shifts.push_back({json_number(s[0], "shift"), json_number(s[1], "shift")});
        }
        c.kind = r;
        return c;
    }
    if (!j.contains("lambda")) throw ConfigError("config: chart is missing lambda");
    c.lambda = json_complex(j["lambda"], "lambda");
    if (kind == "zero") {
        c.kind = ZeroSeedChart{j.contains("h1") ? json_complex(j["h1"], "h1") : Complex{}};
    } else if (kind == "breather") {
        BreatherChart b;
        if (j.contains("l")) {
            const auto& l = j["l"];
            if (!l.is_array() || l.size() != 3) throw ConfigError("config: l must be [l1, l2, l3]");
            b.l1 = json_number(l[0], "l");
            b.l2 = json_number(l[1], "l");
            b.l3 = json_number(l[2], "l");
        }
        if (j.contains("h1")) b.h1 = json_complex(j["h1"], "h1");
        if (j.contains("h2")) b.h2 = json_complex(j["h2"], "h2");
        c.kind = b;
    } else {
        throw ConfigError("config: chart kind must be zero, breather or rogue");
    }
    return c;
}

}  // namespace

std::vector<OutputFormat> parse_formats(const std::string& list) {
    std::vector<OutputFormat> out;
    std::istringstream is(list);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item == "csv") {
            out.push_back(OutputFormat::Csv);
        } else if (item == "png") {
            out.push_back(OutputFormat::Png);
        } else if (item == "bin") {
            out.push_back(OutputFormat::Bin);
        } else {
            throw ConfigError("unknown output format '" + item + "' (expected csv, png or bin)");
        }
    }
    if (out.empty()) throw ConfigError("empty output format list");
    return out;
}

void Scenario::validate() const {
    grid.validate();
    config.validate(background);
    try {
        evaluate_solution(background, config, profile, {grid.x_min, grid.y_min, grid.t}, {precision});
    } catch (const NumericError&) {
    }
}

const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> all = build_builtins();
    return all;
}

const Scenario& find_scenario(const std::string& name) {
    for (const auto& s : builtin_scenarios()) {
        if (s.name == name) return s;
    }
    throw ConfigError("unknown scenario '" + name + "' (see `flwave list`)");
}

void apply_config_json(Scenario& s, const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");

    if (doc.contains("seed")) {
        const auto& seed = doc["seed"];
        if (seed.is_string()) {
            if (seed.get<std::string>() != "zero") throw ConfigError("config: seed must be \"zero\" or an object");
            s.background = ZeroBackground{};
        } else if (seed.is_object()) {
            auto get = [&](const char* k) {
                if (!seed.contains(k)) throw ConfigError(std::string("config: seed is missing ") + k);
                return json_number(seed[k], k);
            };
            s.background = PlaneWaveSeed::create(get("a1"), get("a2"), get("b1"), get("b2"), get("d1"), get("d2"));
        } else {
            throw ConfigError("config: seed must be \"zero\" or an object");
        }
    }
    if (doc.contains("profile")) {
        if (!doc["profile"].is_string()) throw ConfigError("config: profile must be a string");
        s.profile = parse_profile(doc["profile"].get<std::string>());
    }
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        if (!g.is_object()) throw ConfigError("config: grid must be an object");
        if (g.contains("x")) json_axis(g["x"], "x", s.grid.x_min, s.grid.x_max, s.grid.nx);
        if (g.contains("y")) json_axis(g["y"], "y", s.grid.y_min, s.grid.y_max, s.grid.ny);
        if (g.contains("t")) s.grid.t = json_number(g["t"], "t");
    }
    if (doc.contains("charts")) {
        if (!doc["charts"].is_array()) throw ConfigError("config: charts must be an array");
        s.config.charts.clear();
        for (const auto& c : doc["charts"]) s.config.charts.push_back(json_chart(c));
    }
    if (doc.contains("format")) {
        const auto& f = doc["format"];
        if (f.is_string()) {
            s.formats = parse_formats(f.get<std::string>());
        } else if (f.is_array()) {
            s.formats.clear();
            for (const auto& item : f) {
                if (!item.is_string()) throw ConfigError("config: format entries must be strings");
                const auto one = parse_formats(item.get<std::string>());
                s.formats.insert(s.formats.end(), one.begin(), one.end());
            }
        } else {
            throw ConfigError("config: format must be a string or an array of strings");
        }
    }
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) throw ConfigError("config: out must be a string");
        s.out_prefix = doc["out"].get<std::string>();
    }
    if (doc.contains("precision")) {
        const std::string p = doc["precision"].is_string() ? doc["precision"].get<std::string>() : "";
        if (p == "std") {
            s.precision = Precision::Standard;
        } else if (p == "dd") {
            s.precision = Precision::DoubleDouble;
        } else {
            throw ConfigError("config: precision must be \"std\" or \"dd\"");
        }
    }
}

void apply_config_file(Scenario& s, const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError(path.string(), "cannot open config file");
    std::stringstream buf;
    buf << is.rdbuf();
    apply_config_json(s, buf.str());
}

std::string format_summary(const Scenario& s, const RunSummary& r) {
    std::ostringstream os;
    os << s.name << ": N=" << r.order << " grid=" << r.nx << "x" << r.ny << " singular=" << r.singular
       << std::setprecision(10) << " min|q1|=" << r.min_abs_q1 << " max|q1|=" << r.max_abs_q1;
    return os.str();
}

RunSummary run_scenario(const Scenario& s, const GridOptions& options) {
    s.validate();
    GridOptions opts = options;
    opts.eval.precision = s.precision;
    const FieldGrid grid = evaluate_grid(s.background, s.config, s.profile, s.grid, opts);

    RunSummary r;
    r.order = s.config.order();
    r.nx = s.grid.nx;
    r.ny = s.grid.ny;
    r.singular = grid.singular_count();
    r.min_abs_q1 = std::numeric_limits<double>::infinity();
    r.max_abs_q1 = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.samples.size(); ++k) {
        if (grid.singular_mask[k]) continue;
        const double v = std::abs(grid.samples[k].q1);
        r.min_abs_q1 = std::min(r.min_abs_q1, v);
        r.max_abs_q1 = std::max(r.max_abs_q1, v);
    }
    if (r.singular == grid.samples.size()) {
        r.min_abs_q1 = r.max_abs_q1 = std::numeric_limits<double>::quiet_NaN();
    }

    const std::string prefix = s.out_prefix.empty() ? s.name : s.out_prefix;
    for (OutputFormat f : s.formats) {
        std::filesystem::path path;
        switch (f) {
            case OutputFormat::Csv:
                path = prefix + ".csv";
                export_field(grid, path, ExportFormat::Csv);
                break;
            case OutputFormat::Bin:
                path = prefix + ".bin";
                export_field(grid, path, ExportFormat::F64Bin);
                break;
            case OutputFormat::Png:
                path = prefix + ".png";
                render_heatmap(grid, path, Channel::AbsQ1);
                break;
        }
        r.written.push_back(path);
    }
    return r;
}

bool VerifyReport::passed() const {
    return !points.empty() && std::all_of(points.begin(), points.end(), [](const VerifyPoint& p) { return p.pass; });
}

VerifyReport verify_scenario(const Scenario& s, const VerifyOptions& options) {
    s.validate();
    const FieldSampler sampler = solution_sampler(s.background, s.config, s.profile, {options.precision});
    const GridSpec& g = s.grid;
    const double mx = 0.1 * (g.x_max - g.x_min), my = 0.1 * (g.y_max - g.y_min);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> ux(g.x_min + mx, g.x_max - mx), uy(g.y_min + my, g.y_max - my),
        ut(g.t - 1.0, g.t + 1.0);

    VerifyReport report;
    report.family = s.family;
    const std::size_t max_draws = 100 * options.points;
    for (std::size_t draw = 0; draw < max_draws && report.points.size() < options.points; ++draw) {
        const SpacePoint p{ux(rng), uy(rng), ut(rng)};
        RichardsonReport r;
        try {
            r = richardson(sampler, p, options.step);
        } catch (const NumericError&) {
            continue;
        }
        if (!std::isfinite(r.coarse) || !std::isfinite(r.fine) || r.coarse < options.floor) continue;
        const double ratio = r.ratio();
        report.points.push_back({p, r, ratio >= options.ratio_min && ratio <= options.ratio_max});
    }
    if (report.points.size() < options.points) {
        throw NumericError("verify " + s.name + ": too few sample points above the residual floor");
    }
    return report;
}

void print_verify_report(std::ostream& os, const Scenario& s, const VerifyReport& r) {
    std::size_t passed = 0;
    os << "verify " << s.name << " family=" << r.family << "\n";
    for (const auto& p : r.points) {
        passed += p.pass;
        os << std::setprecision(6) << "  point=(" << p.point.x << ", " << p.point.y << ", " << p.point.t << ")"
           << std::scientific << std::setprecision(3) << " residual(h)=" << p.residual.coarse
           << " residual(h/2)=" << p.residual.fine << std::defaultfloat << std::setprecision(4)
           << " ratio=" << p.residual.ratio() << (p.pass ? " pass" : " FAIL") << "\n";
    }
    os << "result " << s.name << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << passed << "/" << r.points.size()
       << " points)\n";
}

}  // namespace flwave
