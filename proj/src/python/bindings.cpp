// Python bindings. Structured results (reports, bounds, studies) cross the
// boundary as JSON and arrive as plain dicts.

#include "mpsops/errors.hpp"
#include "mpsops/report.hpp"
#include "mpsops/study.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace mpsops;

namespace {

using Decomposition = std::shared_ptr<VoronoiDecomposition>;
using Pair = std::pair<double, double>;

Point2 pt(Pair p) { return {p.first, p.second}; }
Pair pair(Point2 p) { return {p.x1, p.x2}; }

Rect rect(Pair lo, Pair hi) { return {pt(lo), pt(hi)}; }

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
json from_py(const py::object& o) { return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

std::vector<Pair> pairs(const std::vector<Point2>& v) {
    std::vector<Pair> out;
    out.reserve(v.size());
    for (auto p : v) out.push_back(pair(p));
    return out;
}

std::vector<Point2> points(const std::vector<Pair>& v) {
    std::vector<Point2> out;
    out.reserve(v.size());
    for (auto p : v) out.push_back(pt(p));
    return out;
}

TestFunction test_function(const NeighborContext& ctx, const std::string& name) {
    const auto& d = ctx.decomposition().domain();
    return make_test_function(name, d.omega, d.padded());
}

py::object value(const OperatorResult& r) {
    if (r.is_vector()) return py::cast(pair(r.vector()));
    return py::cast(r.scalar());
}

} // namespace

PYBIND11_MODULE(_mpsops, m) {
    m.doc() = "Voronoi-based particle operators and their truncation-error bounds";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<AssumptionViolation>(m, "AssumptionViolation", base.ptr());
    py::register_exception<DegenerateConfiguration>(m, "DegenerateConfiguration", base.ptr());
    py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    m.def(
        "polygon_disk_area",
        [](const std::vector<Pair>& vertices, Pair center, double radius) {
            return polygon_disk_area(ConvexPolygon::from_vertices(points(vertices)), pt(center), radius);
        },
        py::arg("vertices"), py::arg("center"), py::arg("radius"));
    m.def(
        "cell_annulus_area",
        [](const std::vector<Pair>& vertices, Pair center, double inner, double outer) {
            return cell_annulus_area(ConvexPolygon::from_vertices(points(vertices)), Annulus::make(pt(center), inner, outer));
        },
        py::arg("vertices"), py::arg("center"), py::arg("inner"), py::arg("outer"));

    m.def(
        "generate_sites",
        [](const std::string& kind, double spacing, double padding, Pair lo, Pair hi, double jitter, std::uint64_t seed) {
            GeneratorSpec g;
            g.kind = parse_generator(kind);
            g.spacing = spacing;
            g.jitter = jitter;
            g.seed = seed;
            return pairs(generate_sites(DomainSpec::make(rect(lo, hi), padding), g));
        },
        py::arg("kind"), py::arg("spacing"), py::arg("padding"), py::arg("omega_min") = Pair{0, 0},
        py::arg("omega_max") = Pair{1, 1}, py::arg("jitter") = 0.0, py::arg("seed") = 0);

    py::class_<VoronoiDecomposition, Decomposition>(m, "Decomposition")
        .def(py::init([](const std::vector<Pair>& sites, double padding, Pair lo, Pair hi) {
                 return std::make_shared<VoronoiDecomposition>(
                     build_voronoi(points(sites), DomainSpec::make(rect(lo, hi), padding)));
             }),
             py::arg("sites"), py::arg("padding"), py::arg("omega_min") = Pair{0, 0}, py::arg("omega_max") = Pair{1, 1})
        .def("__len__", &VoronoiDecomposition::size)
        .def_property_readonly("r_sigma", &VoronoiDecomposition::r_sigma)
        .def_property_readonly("sites", [](const VoronoiDecomposition& d) { return pairs(d.sites()); })
        .def("cell", [](const VoronoiDecomposition& d, std::size_t i) { const auto v = d.cell(i).vertices();
            return pairs(std::vector<Point2>(v.begin(), v.end()));
        })
        .def("cell_area", [](const VoronoiDecomposition& d, std::size_t i) { return d.cell(i).area(); })
        .def("nearest_site", [](const VoronoiDecomposition& d, Pair x) { return d.nearest_site(pt(x)); })
        .def("sites_within", [](const VoronoiDecomposition& d, Pair x, double r) { return d.sites_within(pt(x), r); })
        .def(
            "validate",
            [](const VoronoiDecomposition& d, std::size_t k, double h, double delta, std::optional<Pair> x) {
                return to_py(to_json(validate_standing_assumptions(d, k, h, delta, x ? pt(*x) : d.site(k))));
            },
            py::arg("k"), py::arg("h"), py::arg("delta"), py::arg("x") = py::none())
        .def("admissible_delta", &admissible_delta, py::arg("k"), py::arg("cap"))
        .def("ring_gap_radius", &ring_gap_radius, py::arg("k"), py::arg("ring"), py::arg("spacing"));

    py::class_<WeightFunction>(m, "WeightFunction")
        .def_static("indicator", &WeightFunction::indicator, py::arg("delta"), py::arg("h"))
        .def_static("linear_taper", &WeightFunction::linear_taper, py::arg("delta"), py::arg("h"))
        .def_static("radial_table", &WeightFunction::radial_table, py::arg("r"), py::arg("w"), py::arg("delta"),
                    py::arg("h"), py::arg("lipschitz") = py::none())
        .def_static(
            "closed_form",
            [](std::function<double(double)> fn, double delta, double h, std::optional<double> lipschitz) {
                return WeightFunction::closed_form(std::move(fn), delta, h, lipschitz);
            },
            py::arg("profile"), py::arg("delta"), py::arg("h"), py::arg("lipschitz") = py::none())
        .def_property_readonly("delta", &WeightFunction::delta)
        .def_property_readonly("h", &WeightFunction::h)
        .def_property_readonly("lipschitz", &WeightFunction::lipschitz)
        .def_property_readonly("name", &WeightFunction::name)
        .def("profile", &WeightFunction::profile)
        .def("moment", [](const WeightFunction& w, int n) { return radial_moment(w, n); });

    py::class_<NeighborContext>(m, "Context")
        .def(py::init([](Decomposition d, std::size_t k, const WeightFunction& w, std::optional<double> lambda) {
                 ContextOptions o;
                 o.lambda = lambda;
                 return NeighborContext::make(std::move(d), k, w, o);
             }),
             py::arg("decomposition"), py::arg("k"), py::arg("weight"), py::arg("lam") = py::none())
        .def_property_readonly("k", &NeighborContext::k)
        .def_property_readonly("h", &NeighborContext::h)
        .def_property_readonly("delta", &NeighborContext::delta)
        .def_property_readonly("neighbors", [](const NeighborContext& c) {
            std::vector<std::size_t> out;
            for (const auto& n : c.neighbors()) out.push_back(n.index);
            return out;
        })
        .def_property_readonly("positivity", [](const NeighborContext& c) { return c.positivity().c0; })
        .def(
            "apply",
            [](const NeighborContext& c, const std::string& op, const std::string& function) {
                return value(apply_operator(parse_operator(op), c, test_function(c, function)));
            },
            py::arg("op"), py::arg("function"))
        .def(
            "exact",
            [](const NeighborContext& c, const std::string& family, const std::string& function) {
                return value(exact_value(parse_operator(family).family, c, test_function(c, function)));
            },
            py::arg("op"), py::arg("function"))
        .def("bounds", [](const NeighborContext& c) {
            const auto in = geometric_inputs(c);
            const auto consts = compute_constants(in);
            json reports = json::array();
            for (int t = 0; t < (c.lambda() ? 4 : 1); ++t) {
                reports.push_back(to_json(theorem_bound(static_cast<Theorem>(t), in, consts)));
            }
            return to_py(json{{"inputs", to_json(in)}, {"constants", to_json(consts)}, {"reports", reports}});
        });

    m.def("test_functions", &test_function_names);
    m.def(
        "corollary71",
        [](double r_sigma, double c_star, double lambda) {
            CorollaryScenario s;
            s.r_sigma = r_sigma;
            s.c_star = c_star;
            s.lambda = lambda;
            return to_py(to_json(corollary71(s)));
        },
        py::arg("r_sigma"), py::arg("c_star"), py::arg("lam") = 0.5);
    m.def(
        "corollary71_preset",
        [](const std::string& name, int m_index) {
            const auto s = name == "corollary71-ii" ? CorollaryScenario::coarse()
                           : name == "corollary71-i" ? CorollaryScenario::fine(m_index)
                                                     : throw ConfigError("unknown preset '" + name + "'");
            return to_py(to_json(corollary71(s)));
        },
        py::arg("name"), py::arg("m") = 1);
    m.def("multinomial_inverse_sum", &multinomial_inverse_sum);
    m.def(
        "run_study",
        [](const py::object& config) {
            const auto r = run_study(study_config_from_json(from_py(config)));
            std::ostringstream csv;
            write_study_csv(r, csv);
            auto out = to_py(to_json(r));
            out["csv"] = csv.str();
            return out;
        },
        py::arg("config"));
    m.def(
        "study_preset", [](const std::string& name, int m_index) { return to_py(to_json(study_preset(name, m_index))); },
        py::arg("name"), py::arg("m") = 1);
}
