// Python bindings: inputs use the same documents as the CLI (component ids
// are 1-based on the wire), reports come back as plain dicts with rationals
// rendered as "p/q" strings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "cohsys/curve.hpp"
#include "cohsys/dual_span.hpp"
#include "cohsys/errors.hpp"
#include "cohsys/json_io.hpp"
#include "cohsys/sheaf.hpp"
#include "cohsys/stability.hpp"
#include "cohsys/verify.hpp"

namespace py = pybind11;

namespace {

using namespace cohsys;

ordered_json to_json(const py::handle& h) {
    if (h.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
    if (py::isinstance<py::int_>(h)) return h.cast<long long>();
    if (py::isinstance<py::float_>(h)) return h.cast<double>();
    if (py::isinstance<py::str>(h)) return h.cast<std::string>();
    if (py::isinstance<py::dict>(h)) {
        ordered_json o = ordered_json::object();
        for (auto item : h.cast<py::dict>())
            o[item.first.cast<std::string>()] = to_json(item.second);
        return o;
    }
    if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
        ordered_json a = ordered_json::array();
        for (auto e : h.cast<py::sequence>()) a.push_back(to_json(e));
        return a;
    }
    throw ValidationError("input document: unsupported value type");
}

py::object from_json(const ordered_json& j) {
    switch (j.type()) {
        case ordered_json::value_t::null:
            return py::none();
        case ordered_json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case ordered_json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case ordered_json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case ordered_json::value_t::number_float:
            return py::float_(j.get<double>());
        case ordered_json::value_t::string:
            return py::str(j.get<std::string>());
        case ordered_json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(from_json(e));
            return out;
        }
        case ordered_json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) out[py::str(key)] = from_json(value);
            return out;
        }
        default:
            throw InternalError("report document: unsupported value type");
    }
}

Rat rat_arg(const py::object& v, const char* field) {
    if (py::isinstance<py::int_>(v)) return Rat(v.cast<long long>());
    if (py::isinstance<py::str>(v)) {
        auto r = Rat::parse(v.cast<std::string>());
        if (r) return *r;
    }
    throw ValidationError(std::string(field) + ": expected an int or a rational string like '3/4'");
}

CandidateBounds bounds_arg(const NodalCurve& curve, const py::object& degree_floor, int workers,
                           const py::object& max_candidates) {
    CandidateBounds b;
    if (!degree_floor.is_none())
        b.degree_floor = std::vector<long long>(
            static_cast<std::size_t>(curve.component_count()), degree_floor.cast<long long>());
    if (workers < 1) throw ValidationError("workers must be >= 1");
    b.workers = workers;
    if (!max_candidates.is_none()) b.max_candidates = max_candidates.cast<std::uint64_t>();
    return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact-arithmetic analysis of coherent systems on nodal curves of compact type";

    py::register_exception<Error>(m, "CohsysError", PyExc_RuntimeError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);
    py::register_exception<BoundsError>(m, "BoundsError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<NodalCurve>(m, "Curve")
        .def(py::init([](const py::dict& doc, bool allow_smooth, bool allow_low_genus) {
                 return parse_curve(to_json(doc), BuildOptions{allow_smooth, allow_low_genus});
             }),
             py::arg("doc"), py::arg("allow_smooth") = false, py::arg("allow_low_genus") = false)
        .def_property_readonly("component_count", &NodalCurve::component_count)
        .def_property_readonly("node_count", &NodalCurve::node_count)
        .def_property_readonly("arithmetic_genus", &NodalCurve::arithmetic_genus)
        .def_property_readonly("chi_structure_sheaf", &NodalCurve::chi_structure_sheaf)
        .def("report", [](const NodalCurve& c) { return from_json(curve_report_json(c)); });

    m.def(
        "subcurve",
        [](const NodalCurve& curve, const py::object& members) {
            Subcurve b = parse_subcurve(to_json(members), curve);
            return from_json(subcurve_report_json(curve, b, subcurve_data(curve, b)));
        },
        py::arg("curve"), py::arg("members"));

    m.def(
        "invariants",
        [](const NodalCurve& curve, const py::dict& sheaf_doc) {
            ordered_json j = to_json(sheaf_doc);
            SheafClass sheaf =
                j.contains("k") ? parse_system(j, curve).sheaf : parse_sheaf(j, curve);
            return from_json(invariants_report_json(curve, sheaf));
        },
        py::arg("curve"), py::arg("sheaf"));

    m.def(
        "check",
        [](const NodalCurve& curve, const py::dict& system_doc, const py::object& alpha,
           const py::object& degree_floor, int workers, const py::object& max_candidates) {
            SystemType sys = parse_system(to_json(system_doc), curve);
            Rat a = rat_arg(alpha, "alpha");
            CandidateBounds b = bounds_arg(curve, degree_floor, workers, max_candidates);
            PointCheck pc;
            {
                py::gil_scoped_release rel;
                pc = check_at_alpha(sys, curve, a, b);
            }
            return from_json(point_check_json(sys, pc));
        },
        py::arg("curve"), py::arg("system"), py::arg("alpha"), py::arg("degree_floor") = py::none(),
        py::arg("workers") = 1, py::arg("max_candidates") = py::none());

    m.def(
        "walls",
        [](const NodalCurve& curve, const py::dict& system_doc, const py::object& degree_floor,
           int workers, const py::object& max_candidates) {
            SystemType sys = parse_system(to_json(system_doc), curve);
            CandidateBounds b = bounds_arg(curve, degree_floor, workers, max_candidates);
            WallReport rep;
            {
                py::gil_scoped_release rel;
                rep = walls(sys, curve, b);
            }
            return from_json(wall_report_json(sys, rep));
        },
        py::arg("curve"), py::arg("system"), py::arg("degree_floor") = py::none(),
        py::arg("workers") = 1, py::arg("max_candidates") = py::none());

    m.def(
        "alpha_g",
        [](const NodalCurve& curve, long long rank, long long degree, long long k) {
            return from_json(alpha_g_report_json(rank, degree, k, alpha_g(curve, rank, degree, k)));
        },
        py::arg("curve"), py::arg("rank"), py::arg("degree"), py::arg("k"));

    m.def(
        "star",
        [](const NodalCurve& curve, const py::dict& system_doc, const py::dict& sub_doc,
           bool strict) {
            SystemType sys = parse_system(to_json(system_doc), curve);
            SystemType sub = parse_system(to_json(sub_doc), curve);
            SubsystemCandidate cand{sub.sheaf, sub.k};
            return from_json(star_report_json(property_star(sys, cand, curve, strict), strict));
        },
        py::arg("curve"), py::arg("system"), py::arg("sub"), py::arg("strict") = true);

    m.def(
        "dual_span",
        [](const NodalCurve& curve, const py::dict& line_system_doc, bool assume_generic) {
            LineSystemType ls = parse_line_system(to_json(line_system_doc), curve);
            if (assume_generic && ls.k >= 2 && degree_hypotheses(curve, ls.degrees, ls.k - 1).all) {
                ls.generated = true;
                ls.r_zero.assign(static_cast<std::size_t>(curve.component_count()), true);
            }
            return from_json(dual_span_report_json(ls, dual_span(ls, curve)));
        },
        py::arg("curve"), py::arg("line_system"), py::arg("assume_generic") = false);

    m.def(
        "bn",
        [](const NodalCurve& curve, long long rank, long long degree, long long k) {
            return brill_noether(curve, rank, degree, k);
        },
        py::arg("curve"), py::arg("rank"), py::arg("degree"), py::arg("k"));

    m.def(
        "dims",
        [](const NodalCurve& curve, long long rank, const std::vector<long long>& degrees) {
            return from_json(dims_report_json(dimension_report(curve, rank, degrees)));
        },
        py::arg("curve"), py::arg("rank"), py::arg("degrees"));

    m.def(
        "verify",
        [](std::uint64_t seed, std::uint64_t trials, const std::string& suite,
           const std::string& counterexample_dir) {
            TrialConfig cfg;
            cfg.seed = seed;
            cfg.trials = trials;
            cfg.suite = suite;
            cfg.counterexample_dir = counterexample_dir;
            VerifyReport rep;
            {
                py::gil_scoped_release rel;
                rep = run_verify(cfg);
            }
            return from_json(verify_report_json(rep));
        },
        py::arg("seed") = 1, py::arg("trials") = 100, py::arg("suite") = "all",
        py::arg("counterexample_dir") = "");

    m.def("suite_names", [] { return verify_suite_names(); });
}
