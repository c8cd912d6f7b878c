#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "flwave/cli.hpp"
#include "flwave/scenario.hpp"

namespace py = pybind11;
using namespace flwave;

namespace {

Scenario scenario_with_grid(const std::string& name, std::optional<std::size_t> nx, std::optional<std::size_t> ny,
                            std::optional<double> t) {
    Scenario s = find_scenario(name);
    if (nx) s.grid.nx = *nx;
    if (ny) s.grid.ny = *ny;
    if (t) s.grid.t = *t;
    return s;
}

py::dict grid_arrays(const FieldGrid& g) {
    const auto nx = static_cast<py::ssize_t>(g.spec.nx), ny = static_cast<py::ssize_t>(g.spec.ny);
    py::array_t<std::complex<double>> q1({ny, nx}), q2({ny, nx});
    py::array_t<bool> mask({ny, nx});
    auto a = q1.mutable_unchecked<2>();
    auto b = q2.mutable_unchecked<2>();
    auto m = mask.mutable_unchecked<2>();
    py::array_t<double> x(nx), y(ny);
    for (py::ssize_t i = 0; i < nx; ++i) x.mutable_at(i) = g.spec.x_at(static_cast<std::size_t>(i));
    for (py::ssize_t j = 0; j < ny; ++j) {
        y.mutable_at(j) = g.spec.y_at(static_cast<std::size_t>(j));
        for (py::ssize_t i = 0; i < nx; ++i) {
            const auto k = g.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            a(j, i) = g.samples[k].q1;
            b(j, i) = g.samples[k].q2;
            m(j, i) = g.singular_mask[k] != 0;
        }
    }
    py::dict out;
    out["x"] = x;
    out["y"] = y;
    out["q1"] = q1;
    out["q2"] = q2;
    out["singular"] = mask;
    return out;
}

}  // namespace

PYBIND11_MODULE(_flwave, m) {
    m.doc() = "Darboux-transformation wave generator (native core)";

    auto base = py::register_exception<Error>(m, "FlwaveError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<NumericError>(m, "NumericError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    // Most-derived types are matched first, so these follow their bases.
    py::register_exception<DomainError>(m, "DomainError", m.attr("ConfigError").ptr());

    m.def(
        "dispersion",
        [](double a1, double a2, double b1, double b2, double d1, double d2) {
            const Dispersion d = dispersion_relation(a1, a2, b1, b2, d1, d2);
            return std::pair{d.c1, d.c2};
        },
        py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("b2"), py::arg("d1"), py::arg("d2"));

    m.def(
        "critical_lambda", [](double a1, double d1) { return critical_lambda(a1, d1, kFigureBranch); },
        py::arg("a1"), py::arg("d1"), "Critical spectral parameter on the branch used by the built-in rogue waves.");

    m.def(
        "closed_form_rw1", [](double x, double y, double t) { return closed_form_rw1({x, y, t}); }, py::arg("x"),
        py::arg("y"), py::arg("t") = 0.0);

    m.def("scenario_names", [] {
        std::vector<std::string> names;
        for (const auto& s : builtin_scenarios()) names.push_back(s.name);
        return names;
    });

    m.def(
        "scenario_info",
        [](const std::string& name) {
            const Scenario& s = find_scenario(name);
            py::dict d;
            d["name"] = s.name;
            d["family"] = s.family;
            d["description"] = s.description;
            d["order"] = s.config.order();
            d["profile"] = to_string(s.profile);
            d["grid"] = py::make_tuple(s.grid.x_min, s.grid.x_max, s.grid.nx, s.grid.y_min, s.grid.y_max,
                                       s.grid.ny, s.grid.t);
            return d;
        },
        py::arg("name"));

    m.def(
        "evaluate_point",
        [](const std::string& name, double x, double y, double t) -> std::optional<std::pair<Complex, Complex>> {
            const Scenario& s = find_scenario(name);
            const auto q = evaluate_solution(s.background, s.config, s.profile, {x, y, t}, {s.precision});
            if (!q) return std::nullopt;
            return std::pair{q->q1, q->q2};
        },
        py::arg("name"), py::arg("x"), py::arg("y"), py::arg("t") = 0.0,
        "Field (q1, q2) of a built-in scenario at one point; None where the transformation is singular.");

    m.def(
        "evaluate_scenario",
        [](const std::string& name, std::optional<std::size_t> nx, std::optional<std::size_t> ny,
           std::optional<double> t, unsigned threads) {
            const Scenario s = scenario_with_grid(name, nx, ny, t);
            s.validate();
            FieldGrid g;
            {
                py::gil_scoped_release release;
                g = evaluate_grid(s.background, s.config, s.profile, s.grid, {threads, {s.precision}});
            }
            return grid_arrays(g);
        },
        py::arg("name"), py::arg("nx") = py::none(), py::arg("ny") = py::none(), py::arg("t") = py::none(),
        py::arg("threads") = 0u,
        "Grid of a built-in scenario as a dict of numpy arrays x, y, q1, q2, singular (rows are y).");

    m.def(
        "verify",
        [](const std::string& name, std::size_t points) {
            VerifyOptions opts;
            opts.points = points;
            VerifyReport r;
            {
                py::gil_scoped_release release;
                r = verify_scenario(find_scenario(name), opts);
            }
            std::vector<double> ratios;
            for (const auto& p : r.points) ratios.push_back(p.residual.ratio());
            py::dict d;
            d["passed"] = r.passed();
            d["ratios"] = ratios;
            return d;
        },
        py::arg("name"), py::arg("points") = 10);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"flwave"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line in-process; returns (exit code, stdout, stderr).");
}
