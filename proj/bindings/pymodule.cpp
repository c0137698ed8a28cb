#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fisdim/config.hpp"
#include "fisdim/dimension.hpp"
#include "fisdim/oscillation.hpp"
#include "fisdim/scaling.hpp"

namespace py = pybind11;
using namespace fisdim;

namespace {

struct System {
    fif::FisSystem sys;
    bool validated = false;

    void ensure_validated(int refine) {
        if (validated) return;
        const auto rep = fif::validate(sys, refine);
        if (!rep.ok()) {
            std::string msg = "validation failed:";
            for (const auto& f : rep.failures) msg += " " + f;
            throw ValidationError(msg);
        }
        validated = true;
    }
};

py::dict validation_dict(const fif::ValidationReport& rep) {
    py::dict d;
    d["ok"] = rep.ok();
    d["s_max"] = rep.s_max;
    d["h_node_residual"] = rep.h_node_residual;
    d["g_corner_residual"] = rep.g_corner_residual;
    d["lambda_S"] = rep.lambda_S;
    d["lambda_q"] = rep.lambda_q;
    d["failures"] = rep.failures;
    d["warnings"] = rep.warnings;
    return d;
}

py::array_t<double> surface_array(const fif::GridFunction& gf) {
    py::array_t<double> out({gf.size, gf.size});
    auto buf = out.mutable_unchecked<2>();
    for (int r = 0; r < gf.size; ++r)
        for (int c = 0; c < gf.size; ++c) buf(r, c) = gf.at(r, c);
    return out;
}

}  // namespace

PYBIND11_MODULE(_fisdim, m) {
    m.doc() = "fractal interpolation surfaces and box-dimension bounds";

    // translators run newest-first, so the base class goes first
    py::register_exception<Error>(m, "FisdimError", PyExc_RuntimeError);
    py::register_exception<config::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<System>(m, "System")
        .def_property_readonly("n_axis", [](const System& s) { return s.sys.nodes.N; })
        .def_property_readonly("s_max", [](const System& s) { return s.sys.s_max; })
        .def("validate",
             [](System& s, int refine) {
                 const auto rep = fif::validate(s.sys, refine);
                 s.validated = rep.ok();
                 return validation_dict(rep);
             },
             py::arg("refine") = 2)
        .def("render",
             [](System& s, int level, int refine) {
                 s.ensure_validated(refine);
                 return surface_array(fif::evaluate_and_record(s.sys, level));
             },
             py::arg("level"), py::arg("refine") = 2)
        .def("osc_vector",
             [](System& s, int n, int k, int level, int refine) {
                 s.ensure_validated(refine);
                 if (level <= 0) level = std::max(n + k + 2, 6);
                 const auto gf = fif::evaluate_and_record(s.sys, level);
                 const auto v = osc::osc_vector(gf, n, k);
                 return v.entries;
             },
             py::arg("n"), py::arg("k"), py::arg("level") = 0, py::arg("refine") = 2)
        .def("spectra",
             [](System& s, int n_max, int refine, double tol) {
                 s.ensure_validated(refine);
                 py::list out;
                 for (const auto& e :
                      scaling::rho_sequence(s.sys.S, s.sys.nodes, n_max, refine, tol)) {
                     py::dict d;
                     d["n"] = e.n;
                     d["rho_upper"] = py::make_tuple(e.upper.rho_lo, e.upper.rho_hi);
                     d["rho_lower"] = py::make_tuple(e.lower.rho_lo, e.lower.rho_hi);
                     d["upper_primitive"] = e.upper_primitive;
                     d["lower_primitive"] = e.lower_primitive;
                     d["lower_certified"] = e.lower.certified;
                     out.append(std::move(d));
                 }
                 return out;
             },
             py::arg("n_max") = 3, py::arg("refine") = 2, py::arg("tol") = 1e-8)
        .def("dimension_report_json",
             [](System& s, int eval_level, int n_max, int refine, double tol) {
                 s.ensure_validated(refine);
                 dim::ReportOptions opt;
                 opt.eval_level = eval_level;
                 opt.n_max = n_max;
                 opt.refine = refine;
                 opt.tol = tol;
                 return dim::to_json(dim::full_report(s.sys, opt));
             },
             py::arg("eval_level") = 0, py::arg("n_max") = 3, py::arg("refine") = 2,
             py::arg("tol") = 1e-8);

    m.def("load_config", [](const std::string& path) {
        return System{config::make_system(config::load(path))};
    });
    m.def("parse_config", [](const std::string& text) {
        return System{config::make_system(config::parse(text))};
    });
    m.def("eval_expr", [](const std::string& text, double x, double y) {
        return expr::eval(expr::parse(text), x, y);
    });
}
