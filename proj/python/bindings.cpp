#include <sstream>
#include <string>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sharpfr/cli.hpp"
#include "sharpfr/errors.hpp"
#include "sharpfr/penrose_geom.hpp"
#include "sharpfr/schrod_cert.hpp"
#include "sharpfr/sphere_cert.hpp"
#include "sharpfr/wave_cert.hpp"

namespace py = pybind11;
using namespace sharpfr;

namespace {

void bind_common(py::module_& m) {
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
    py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ArithmeticError);

    py::enum_<Verdict>(m, "Verdict")
        .value("PASS", Verdict::Pass)
        .value("INCONCLUSIVE", Verdict::Inconclusive)
        .value("FAIL", Verdict::Fail);

    py::class_<CertifiedValue>(m, "CertifiedValue")
        .def_readonly("value", &CertifiedValue::value)
        .def_readonly("err_bound", &CertifiedValue::err_bound)
        .def_readonly("tail_bound", &CertifiedValue::tail_bound)
        .def("lower", &CertifiedValue::lower)
        .def("upper", &CertifiedValue::upper)
        .def("__repr__", [](const CertifiedValue& v) {
            std::ostringstream s;
            s.precision(17);
            s << "CertifiedValue(value=" << v.value << ", err_bound=" << v.err_bound << ")";
            return s.str();
        });

    py::class_<CertReport>(m, "CertReport")
        .def_readonly("subject", &CertReport::subject)
        .def_readonly("verdict", &CertReport::verdict)
        .def_readonly("flags", &CertReport::flags)
        .def_readonly("epsilon", &CertReport::epsilon)
        .def("passed", &CertReport::passed);
}

void bind_sphere(py::module_& m) {
    using namespace sphere;
    py::class_<SphereParams>(m, "SphereParams")
        .def(py::init(&SphereParams::make), py::arg("d"))
        .def_readonly("d", &SphereParams::d)
        .def_readonly("p", &SphereParams::p)
        .def_readonly("nu", &SphereParams::nu);

    m.def(
        "ck_estimate",
        [](int d, int k, double radius, double tol) { return ck_estimate(SphereParams::make(d), k, radius, tol); },
        py::arg("d"), py::arg("k"), py::arg("radius") = kDefaultRadius, py::arg("tol") = kDefaultTol,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "bk_upper", [](int d, int k) { return bk_upper(SphereParams::make(d), k); }, py::arg("d"), py::arg("k"));
    m.def(
        "remarkable_identity_residual",
        [](int d) { return remarkable_identity_residual(SphereParams::make(d)); }, py::arg("d"),
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "tomas_stein_constant", [](int d) { return tomas_stein_constant(SphereParams::make(d)); }, py::arg("d"),
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "gap_certificate",
        [](int d) {
            GapOptions opts;
            opts.split = default_k_split(d);
            return gap_certificate(SphereParams::make(d), opts);
        },
        py::arg("d"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "kernel_min_eigenvalue",
        [](int d, int k, double t, const std::vector<double>& points) {
            const auto s = kernel_spectrum(SphereParams::make(d), k, t, points);
            return py::make_tuple(s.min_eigenvalue, s.frobenius_norm);
        },
        py::arg("d"), py::arg("k"), py::arg("t"), py::arg("points"),
        "Smallest eigenvalue and Frobenius norm of the kernel Gram matrix.");
}

void bind_schrod(py::module_& m) {
    using namespace schrod;
    m.def("strichartz_constant", [](int d) { return strichartz_constant(d).value; }, py::arg("d"));
    m.def("cm_sum", [](int d, int mm) { return cm_sum(SchrodParams::make(d), mm); }, py::arg("d"), py::arg("m"));
    m.def(
        "cm_jacobi", [](int d, int mm) { return cm_jacobi(SchrodParams::make(d), mm); }, py::arg("d"), py::arg("m"));
    m.def(
        "cm_quad", [](int d, int mm, double tol) { return cm_quad(SchrodParams::make(d), mm, tol); }, py::arg("d"),
        py::arg("m"), py::arg("tol") = 1e-10);
    m.def("cm_closed_p4", &cm_closed_p4, py::arg("m"));
}

void bind_wave(py::module_& m) {
    using namespace wave;
    m.def("c_star", &c_star, py::arg("d"));
    m.def("abs_gamma_ratio", &abs_gamma_ratio, py::arg("alpha"), py::arg("h"));
    m.def("gamma_identity_residual", &gamma_identity_residual, py::arg("p"));
    m.def("mode_ratio", [](int d, int ell) { return mode_ratio(WaveParams::make(d), ell); }, py::arg("d"),
          py::arg("ell"));
    m.def(
        "wave_audit_json",
        [](int d, int ell_max, int h_max) { return wave_audit(d, ell_max, h_max).json.dump(); }, py::arg("d"),
        py::arg("ell_max") = 200, py::arg("h_max") = 1000, py::call_guard<py::gil_scoped_release>());
}

void bind_penrose(py::module_& m) {
    using namespace penrose;
    m.def(
        "penrose_forward",
        [](double t, double r) {
            const auto c = penrose_forward({t, r});
            return py::make_tuple(c.T, c.R);
        },
        py::arg("t"), py::arg("r"));
    m.def(
        "penrose_inverse",
        [](double T, double R) {
            const auto p = penrose_inverse({T, R});
            return py::make_tuple(p.t, p.r);
        },
        py::arg("T"), py::arg("R"));
    m.def("omega0_identity_residual", &omega0_identity_residual, py::arg("r"));
    m.def(
        "conformal_fd_residual", [](double t, double r, double h) { return conformal_fd_residual({t, r}, h); },
        py::arg("t"), py::arg("r"), py::arg("h") = 1e-5);
}

}  // namespace

PYBIND11_MODULE(_sharpfr, m) {
    m.doc() = "Certified constants for sharp restriction and Strichartz inequalities";
    bind_common(m);
    bind_sphere(m);
    bind_schrod(m);
    bind_wave(m);
    bind_penrose(m);

    m.def(
        "run",
        [](const std::string& command, const std::string& output, std::optional<int> d, std::optional<int> d_min,
           std::optional<int> d_max, const std::string& format, int jobs) {
            const auto cmd = cli::parse_command(command);
            if (!cmd) throw DomainError("unknown command: " + command);
            cli::RunConfig cfg;
            cfg.command = *cmd;
            cfg.output = output;
            cfg.d = d;
            cfg.d_min = d_min;
            cfg.d_max = d_max;
            cfg.format = format == "csv" ? cli::Format::Csv : cli::Format::Json;
            cfg.jobs = jobs;
            std::ostringstream out, err;
            const int code = cli::run(cfg, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("command"), py::arg("output"), py::arg("d") = py::none(), py::arg("d_min") = py::none(),
        py::arg("d_max") = py::none(), py::arg("format") = "json", py::arg("jobs") = 1,
        "Runs a CLI command; returns (exit_code, stdout, stderr).");
}
