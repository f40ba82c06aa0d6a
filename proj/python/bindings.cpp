#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rdyn/cli/commands.hpp"
#include "rdyn/cli/serialize.hpp"
#include "rdyn/equilibria.hpp"
#include "rdyn/lyapunov.hpp"
#include "rdyn/period2.hpp"
#include "rdyn/simulate.hpp"
#include "rdyn/stability.hpp"

namespace py = pybind11;
using namespace rdyn;

namespace {

// Reports cross the boundary as JSON text and are decoded by the json module,
// so the Python view matches the CLI output field for field.
py::object to_py(const cli::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

EquationForm make(const std::string& kind, Complex p, Complex q) {
  const auto k = parse_form_kind(kind);
  if (!k || *k == FormKind::Full) throw Error(ErrorCode::InvalidArgument, "form must be eq6, eq7 or eq8");
  return EquationForm::reduced(*k, p, q);
}

}  // namespace

PYBIND11_MODULE(_rdyn, m) {
  m.doc() = "Rational second-order difference equations over the complex numbers";
  m.attr("__version__") = RDYN_VERSION;

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<EquationForm>(m, "EquationForm")
      .def(py::init(&make), py::arg("kind"), py::arg("p"), py::arg("q"))
      .def_static("full",
                  [](Complex alpha, Complex beta, Complex gamma, Complex a, Complex b, Complex c) {
                    return EquationForm::full(FullParameters(alpha, beta, gamma, a, b, c));
                  },
                  py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("A"), py::arg("B"), py::arg("C"))
      .def_property_readonly("kind", [](const EquationForm& f) { return std::string(to_string(f.kind())); })
      .def_property_readonly("p", &EquationForm::p)
      .def_property_readonly("q", &EquationForm::q)
      .def("conj", &EquationForm::conj)
      .def("__repr__", [](const EquationForm& f) {
        std::ostringstream s;
        s << "EquationForm(" << to_string(f.kind());
        if (f.is_reduced()) s << ", p=" << f.p() << ", q=" << f.q();
        s << ")";
        return s.str();
      });

  m.def("step",
        [](const EquationForm& f, Complex w_n, Complex w_prev) -> py::object {
          const StepOutcome r = step(f, w_n, w_prev);
          if (!r.ok()) return py::none();
          return py::cast(r.value);
        },
        py::arg("form"), py::arg("w_n"), py::arg("w_prev"), "One iteration; None on a pole or overflow.");

  m.def("reduce",
        [](const EquationForm& f) {
          const Reduction r = reduce(f.full_parameters());
          return py::make_tuple(r.form, r.scale, r.exact);
        },
        py::arg("form"), "(reduced form, scale, exact) for a full-form equation.");

  m.def("equilibria",
        [](const EquationForm& f) {
          py::list out;
          for (const auto& eq : equilibria(f).points) {
            py::dict d;
            d["value"] = eq.value;
            d["branch"] = std::string(to_string(eq.branch));
            d["residual"] = eq.residual;
            d["degenerate"] = eq.degenerate;
            const Linearization lin = linearize(f, eq);
            d["linearization"] = to_py(cli::linearization_to_json(lin));
            d["classification"] = std::string(to_string(classify(lin)));
            out.append(d);
          }
          return out;
        },
        py::arg("form"));

  m.def("linearize_exact", [](const EquationForm& f, Complex w) { return to_py(cli::linearization_to_json(linearize_exact(f, w))); },
        py::arg("form"), py::arg("w"));

  m.def("boundedness_condition",
        [](const EquationForm& f, double eps) { return to_py(cli::condition_to_json(boundedness_condition(f, eps))); },
        py::arg("form"), py::arg("epsilon"));

  m.def("period2",
        [](const EquationForm& f) {
          py::list out;
          for (const auto& c : period2_solutions(f).cycles) out.append(to_py(cli::cycle_to_json(analyze_cycle(f, c.phi, c.psi))));
          return out;
        },
        py::arg("form"));

  m.def("analyze_cycle", [](const EquationForm& f, Complex phi, Complex psi) { return to_py(cli::cycle_to_json(analyze_cycle(f, phi, psi))); },
        py::arg("form"), py::arg("phi"), py::arg("psi"));

  m.def("orbit",
        [](const EquationForm& f, Complex w0, Complex w_minus1, std::size_t n) {
          const Orbit o = orbit(f, w0, w_minus1, n);
          return py::make_tuple(o.samples, std::string(to_string(o.termination)));
        },
        py::arg("form"), py::arg("w0"), py::arg("w_minus1"), py::arg("n_steps"),
        "(samples starting at w_{-1}, termination)");

  m.def("largest_lyapunov",
        [](const EquationForm& f, Complex w0, Complex w_minus1, std::size_t n, std::size_t transient) {
          LyapunovOptions o;
          o.n_steps = n;
          o.transient = transient;
          return to_py(cli::estimate_to_json(largest_lyapunov(f, w0, w_minus1, o)));
        },
        py::arg("form"), py::arg("w0"), py::arg("w_minus1"), py::arg("n_steps") = 20000, py::arg("transient") = 2000);

  m.def("lyapunov_scan",
        [](const EquationForm& f, std::size_t seed_count, std::size_t n, std::size_t transient, double radius,
           std::uint64_t rng_seed) {
          ScanOptions o;
          o.seed_count = seed_count;
          o.ball_radius = radius;
          o.rng_seed = rng_seed;
          o.lyapunov.n_steps = n;
          o.lyapunov.transient = transient;
          py::gil_scoped_release release;
          const ScanReport r = lyapunov_scan(f, o);
          py::gil_scoped_acquire acquire;
          return to_py(cli::scan_to_json(r));
        },
        py::arg("form"), py::arg("seed_count") = 10, py::arg("n_steps") = 20000, py::arg("transient") = 2000,
        py::arg("ball_radius") = 1.0, py::arg("rng_seed") = 20140101);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::vector<const char*> argv{"rdyn"};
          for (const auto& a : args) argv.push_back(a.c_str());
          std::ostringstream out, err;
          const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process: (exit code, stdout, stderr).");
}
