#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "flwave/cli.hpp"
#include "flwave/scenario.hpp"

namespace flwave {

namespace {

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const std::string& flag) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ConfigError(flag + ": '" + item + "' is not a number");
        }
    }
    if (out.size() != count) {
        throw ConfigError(flag + ": expected " + std::to_string(count) + " comma-separated values, got '" + text + "'");
    }
    return out;
}

Complex parse_complex(const std::string& text, const std::string& flag) {
    const auto v = parse_numbers(text, 2, flag);
    return {v[0], v[1]};
}

struct Flags {
    std::vector<std::string> lambdas;
    std::vector<int> mults;
    std::string h1, h2, l, profile, seed, grid, out, format, precision, config;
    std::vector<std::string> shifts;
    std::optional<double> t;
};

void add_common(CLI::App* app, Flags& f, bool chart_flags) {
    if (chart_flags) {
        app->add_option("--lambda", f.lambdas, "spectral parameter re,im (repeatable)")->allow_extra_args(false);
        app->add_option("--mult", f.mults, "multiplicity of the matching --lambda (repeatable)")
            ->allow_extra_args(false);
        app->add_option("--h1", f.h1, "deformation constant h1 as re,im");
        app->add_option("--h2", f.h2, "deformation constant h2 as re,im");
        app->add_option("--l", f.l, "superposition constants l1,l2,l3");
        app->add_option("--seed", f.seed, "zero or a1,a2,b1,b2,d1,d2");
        app->add_option("--shift", f.shifts, "rogue shift j,v,w (repeatable)")->allow_extra_args(false);
    }
    app->add_option("--profile", f.profile, "linear|quadratic|cubic|sine");
    app->add_option("--grid", f.grid, "xmin,xmax,nx,ymin,ymax,ny");
    app->add_option("--t", f.t, "evaluation time");
    app->add_option("--out", f.out, "output path prefix");
    app->add_option("--format", f.format, "comma-separated subset of csv,png,bin");
    app->add_option("--precision", f.precision, "std|dd");
    app->add_option("--config", f.config, "JSON configuration file (flags override it)");
}

bool has_chart_flags(const Flags& f) {
    return !f.lambdas.empty() || !f.mults.empty() || !f.h1.empty() || !f.h2.empty() || !f.l.empty() ||
           !f.shifts.empty();
}

std::vector<RogueShift> shifts_from(const Flags& f) {
    std::vector<RogueShift> out;
    for (const auto& s : f.shifts) {
        const auto v = parse_numbers(s, 3, "--shift");
        if (v[0] < 0 || v[0] != std::floor(v[0]) || v[0] > 16) {
            throw ConfigError("--shift: index j must be a small nonnegative integer");
        }
        const auto j = static_cast<std::size_t>(v[0]);
        if (out.size() <= j) out.resize(j + 1);
        out[j] = {v[1], v[2]};
    }
    return out;
}

int mult_at(const Flags& f, std::size_t i, int fallback) { return i < f.mults.size() ? f.mults[i] : fallback; }

// Charts for a family from its defaults plus the chart flags.
std::vector<SpectralChart> family_charts(const std::string& family, const Flags& f, const SeedBackground& bg) {
    std::vector<Complex> lambdas;
    for (const auto& s : f.lambdas) lambdas.push_back(parse_complex(s, "--lambda"));
    std::vector<SpectralChart> charts;

    if (family == "soliton" || family == "positon") {
        if (lambdas.empty()) lambdas.push_back({1, 1});
        const Complex h1 = f.h1.empty() ? Complex{1, 1} : parse_complex(f.h1, "--h1");
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            charts.push_back({lambdas[i], mult_at(f, i, family == "positon" ? 1 : 0), ZeroSeedChart{h1}});
        }
        return charts;
    }

    const bool hybrid = family == "hybrid";
    if (family == "rogue" || hybrid) {
        Complex rogue_lambda{};
        if (const auto* seed = std::get_if<PlaneWaveSeed>(&bg)) {
            rogue_lambda = critical_lambda(seed->a1(), seed->d1(), kFigureBranch);
        } else if (lambdas.empty() || hybrid) {
            throw ConfigError("rogue waves need a plane-wave seed");
        }
        if (!hybrid && !lambdas.empty()) rogue_lambda = lambdas.front();
        charts.push_back({rogue_lambda, mult_at(f, 0, 0), RogueChart{shifts_from(f)}});
        if (!hybrid) return charts;
    }

    BreatherChart b;
    const bool y_shaped = family == "ybreather";
    b.l1 = y_shaped ? 1.0 : 0.0;
    if (!f.l.empty()) {
        const auto l = parse_numbers(f.l, 3, "--l");
        b.l1 = l[0];
        b.l2 = l[1];
        b.l3 = l[2];
    }
    b.h1 = f.h1.empty() ? (hybrid ? Complex{} : Complex{1, 1}) : parse_complex(f.h1, "--h1");
    b.h2 = f.h2.empty() ? (y_shaped ? b.h1 : -b.h1) : parse_complex(f.h2, "--h2");
    if (lambdas.empty()) lambdas.push_back({0.5, 0.5});
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        charts.push_back({lambdas[i], hybrid ? 0 : mult_at(f, i, 0), b});
    }
    return charts;
}

Scenario family_defaults(const std::string& family) {
    Scenario s;
    s.name = family;
    s.family = family;
    s.description = "command-line " + family;
    if (family == "breather" || family == "ybreather") {
        s.background = PlaneWaveSeed::create(-1, -1, -1, -2, 1, 1);
    } else if (family == "rogue" || family == "hybrid") {
        s.background = PlaneWaveSeed::create(-0.5, -0.5, -1, -1, 1, 1);
    }
    if (family == "hybrid") s.grid = {-20, 20, -20, 20, 161, 161, 0};
    return s;
}

void apply_flags(Scenario& s, const Flags& f) {
    if (!f.seed.empty()) {
        if (f.seed == "zero") {
            s.background = ZeroBackground{};
        } else {
            const auto v = parse_numbers(f.seed, 6, "--seed");
            s.background = PlaneWaveSeed::create(v[0], v[1], v[2], v[3], v[4], v[5]);
        }
    }
    if (!f.profile.empty()) s.profile = parse_profile(f.profile);
    if (!f.grid.empty()) {
        const auto v = parse_numbers(f.grid, 6, "--grid");
        for (std::size_t k : {2u, 5u}) {
            if (v[k] < 0 || v[k] != std::floor(v[k])) {
                throw DomainError(k == 2 ? "grid.x" : "grid.y", "node count must be a nonnegative integer");
            }
        }
        s.grid.x_min = v[0];
        s.grid.x_max = v[1];
        s.grid.nx = static_cast<std::size_t>(v[2]);
        s.grid.y_min = v[3];
        s.grid.y_max = v[4];
        s.grid.ny = static_cast<std::size_t>(v[5]);
    }
    if (f.t) s.grid.t = *f.t;
    if (!f.out.empty()) s.out_prefix = f.out;
    if (!f.format.empty()) s.formats = parse_formats(f.format);
    if (!f.precision.empty()) {
        if (f.precision == "std") {
            s.precision = Precision::Standard;
        } else if (f.precision == "dd") {
            s.precision = Precision::DoubleDouble;
        } else {
            throw ConfigError("--precision must be std or dd");
        }
    }
}

int run_and_report(const Scenario& s, std::ostream& out) {
    const RunSummary r = run_scenario(s);
    out << format_summary(s, r) << "\n";
    for (const auto& p : r.written) out << "  wrote " << p.string() << "\n";
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Darboux-transformation wave generator and verifier for the two-component (2+1)-D "
                 "Fokas-Lenells equation"};
    app.require_subcommand(1);

    const char* families[] = {"soliton", "positon", "breather", "ybreather", "rogue", "hybrid"};
    const char* family_help[] = {
        "deformed soliton on the zero background",
        "deformed positon (repeated spectral parameter) on the zero background",
        "deformed breather on a plane wave (l = 0,1,1, h2 = -h1)",
        "Y-shaped breather on a plane wave (l = 1,1,1, h2 = h1)",
        "higher-order rogue wave at the critical spectral parameter (--mult = order - 1)",
        "rogue wave (--mult = order - 1) plus breathers at each --lambda",
    };
    Flags flags;
    std::vector<CLI::App*> family_cmds;
    for (std::size_t k = 0; k < std::size(families); ++k) {
        auto* cmd = app.add_subcommand(families[k], family_help[k]);
        add_common(cmd, flags, true);
        family_cmds.push_back(cmd);
    }

    std::string scenario_name;
    auto* scenario_cmd = app.add_subcommand("scenario", "run a built-in figure scenario");
    scenario_cmd->add_option("name", scenario_name, "scenario name (see list)")->required();
    add_common(scenario_cmd, flags, false);

    std::string verify_name;
    std::size_t verify_points = 10;
    auto* verify_cmd = app.add_subcommand("verify", "PDE-residual Richardson check of a built-in scenario");
    verify_cmd->add_option("name", verify_name, "scenario name (see list)")->required();
    verify_cmd->add_option("--points", verify_points, "number of random interior points");
    std::string verify_precision;
    verify_cmd->add_option("--precision", verify_precision, "std|dd");

    auto* list_cmd = app.add_subcommand("list", "list built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ErrorCategory::Config);
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& s : builtin_scenarios()) {
                out << std::left << std::setw(8) << s.name << std::setw(11) << s.family << s.description << "\n";
            }
            return 0;
        }
        if (verify_cmd->parsed()) {
            const Scenario& s = find_scenario(verify_name);
            VerifyOptions opts;
            if (verify_precision == "std") {
                opts.precision = Precision::Standard;
            } else if (!verify_precision.empty() && verify_precision != "dd") {
                throw ConfigError("--precision must be std or dd");
            }
            opts.points = verify_points;
            const VerifyReport r = verify_scenario(s, opts);
            print_verify_report(out, s, r);
            return r.passed() ? 0 : 1;
        }
        if (scenario_cmd->parsed()) {
            Scenario s = find_scenario(scenario_name);
            if (!flags.config.empty()) apply_config_file(s, flags.config);
            apply_flags(s, flags);
            return run_and_report(s, out);
        }
        for (auto* cmd : family_cmds) {
            if (!cmd->parsed()) continue;
            const std::string family = cmd->get_name();
            Scenario s = family_defaults(family);
            if (!flags.seed.empty()) {
                Flags seed_only;
                seed_only.seed = flags.seed;
                apply_flags(s, seed_only);
            }
            s.config.charts = family_charts(family, flags, s.background);
            if (!flags.config.empty()) {
                apply_config_file(s, flags.config);
                if (has_chart_flags(flags)) s.config.charts = family_charts(family, flags, s.background);
            }
            apply_flags(s, flags);
            return run_and_report(s, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    }
    return 0;
}

}  // namespace flwave
