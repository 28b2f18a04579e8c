// Python bindings for the main operations: state building, Weyl functions,
// correlators, observables, the state language, sweeps, and the oracle.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weylcorr/fock_oracle.hpp"
#include "weylcorr/observables.hpp"
#include "weylcorr/state_dsl.hpp"
#include "weylcorr/states.hpp"
#include "weylcorr/sweep.hpp"
#include "weylcorr/weyl.hpp"

namespace py = pybind11;
using namespace weylcorr;

namespace {

OperatorEnsemble build_state_py(const std::string& family,
                                const std::vector<int>& numbers,
                                const std::vector<Complex>& amplitudes) {
  const auto f = family_from_name(family);
  if (!f) throw ConfigError("unknown state family '" + family + "'");
  StateParams params;
  params.numbers = numbers;
  params.amplitudes = amplitudes;
  return build_state(*f, params);
}

DriveParams make_drive(const std::vector<double>& omegas, double xi, double charge) {
  DriveParams drive;
  drive.xi = xi;
  drive.e_charge = charge;
  drive.omegas = omegas;
  return drive;
}

SweepConfig make_config(const std::string& state_spec,
                        const std::vector<double>& omegas, double xi,
                        double charge, int points, double start, double end) {
  SweepConfig cfg;
  cfg.state = state_spec_from_string(state_spec);
  cfg.drive = make_drive(omegas, xi, charge);
  cfg.points = points;
  cfg.scaled_start = start;
  cfg.scaled_end = end;
  return cfg;
}

py::dict series_dict(const SweepSeries& series) {
  py::dict out;
  out["axis_frequency"] = series.axis_frequency;
  out["warning"] = series.axis_warning;
  out["csv"] = to_csv(series);
  py::list rows;
  for (const auto& row : series.rows) {
    py::dict r;
    r["t"] = row.t;
    r["scaled_time"] = row.scaled_time;
    r["marginals"] = row.marginals;
    r["joint"] = row.joint;
    r["c"] = row.c;
    r["abs_c"] = row.abs_c;
    rows.append(std::move(r));
  }
  out["rows"] = std::move(rows);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weyl-function correlators for photon-irradiated interference experiments";

  py::register_exception<dsl::ParseError>(m, "StateParseError");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<oracle::GuardViolation>(m, "GuardViolation");

  py::enum_<ModeKind>(m, "ModeKind")
      .value("fock", ModeKind::fock)
      .value("coherent", ModeKind::coherent);

  py::class_<ProductKet>(m, "ProductKet")
      .def_static("fock", &ProductKet::fock, py::arg("occupations"))
      .def_static("coherent", &ProductKet::coherent, py::arg("amplitudes"))
      .def_property_readonly("kind", &ProductKet::kind)
      .def_property_readonly("mode_count", &ProductKet::mode_count)
      .def("occupation", &ProductKet::occupation, py::arg("mode"))
      .def("amplitude", &ProductKet::amplitude, py::arg("mode"))
      .def("__eq__", [](const ProductKet& a, const ProductKet& b) { return a == b; });

  py::class_<OperatorEnsemble>(m, "OperatorEnsemble")
      .def_property_readonly("kind", &OperatorEnsemble::kind)
      .def_property_readonly("mode_count", &OperatorEnsemble::mode_count)
      .def("trace", &OperatorEnsemble::trace)
      .def("hermitian_paired", &OperatorEnsemble::hermitian_paired,
           py::arg("tol") = 1e-12)
      .def("mean_photon_number", &OperatorEnsemble::mean_photon_number,
           py::arg("mode"))
      .def("terms",
           [](const OperatorEnsemble& rho) {
             py::list out;
             for (const auto& t : rho.terms()) {
               out.append(py::make_tuple(t.weight, t.ket, t.bra));
             }
             return out;
           })
      .def("to_json", [](const OperatorEnsemble& rho) { return ensemble_to_json(rho); })
      .def("__eq__", [](const OperatorEnsemble& a, const OperatorEnsemble& b) {
        return a == b;
      });

  m.def("build_state", &build_state_py, py::arg("family"),
        py::arg("numbers") = std::vector<int>{},
        py::arg("amplitudes") = std::vector<Complex>{},
        "Build a named two- or three-mode family state");
  m.def("factorizable_state", [](const ProductKet& ket) {
    StateParams params;
    params.ket = ket;
    return build_state(StateFamily::factorizable, params);
  });
  m.def("overlap", &overlap, py::arg("a"), py::arg("b"));
  m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("mode"));
  m.def(
      "pure_superposition",
      [](const std::vector<ProductKet>& kets, const std::vector<Complex>& coeff) {
        return pure_superposition(kets, coeff);
      },
      py::arg("kets"), py::arg("coefficients"));
  m.def("ensemble_from_json",
        [](const std::string& text) { return ensemble_from_json(text); });

  m.def("default_e_charge", &DriveParams::default_e_charge);
  m.def(
      "drive_lambdas",
      [](const std::vector<double>& omegas, double t, double xi, double charge) {
        return drive_lambda(make_drive(omegas, xi, charge), t).lambdas;
      },
      py::arg("omegas"), py::arg("t"), py::arg("xi") = 1.0,
      py::arg("charge") = DriveParams::default_e_charge());

  m.def("displacement_element_fock", &displacement_element_fock, py::arg("m"),
        py::arg("n"), py::arg("z"));
  m.def("displacement_element_coherent", &displacement_element_coherent,
        py::arg("a"), py::arg("b"), py::arg("z"));
  m.def(
      "weyl",
      [](const OperatorEnsemble& rho, const std::vector<Complex>& lambdas) {
        return weyl(rho, DriveAt{lambdas});
      },
      py::arg("rho"), py::arg("lambdas"));
  m.def(
      "correlator",
      [](const OperatorEnsemble& rho, const std::vector<Complex>& lambdas) {
        const CorrelatorValue v = correlator(rho, DriveAt{lambdas});
        return py::make_tuple(v.joint, v.marginals, v.c);
      },
      py::arg("rho"), py::arg("lambdas"),
      "Returns (joint, marginals, c = joint - prod(marginals))");
  m.def(
      "closed_form_number_correlators",
      [](int n1, int n2, double q, double omega_t) {
        const NumberCorrelators v = closed_form_number_correlators(n1, n2, q, omega_t);
        return py::make_tuple(v.c_sep, v.c_ent);
      },
      py::arg("n1"), py::arg("n2"), py::arg("q"), py::arg("omega_t"));
  m.def(
      "beat_frequency",
      [](const std::vector<double>& numbers, const std::vector<double>& omegas) {
        return beat_frequency(std::span<const double>(numbers),
                              std::span<const double>(omegas));
      },
      py::arg("numbers"), py::arg("omegas"));

  m.def("intensity", &intensity, py::arg("x"), py::arg("w"));
  m.def("visibility", &visibility, py::arg("w"));
  m.def("phase_shift", &phase_shift, py::arg("w"));
  m.def("phase_defined", &phase_defined, py::arg("w"));
  m.def("squid_current", &squid_current, py::arg("w"), py::arg("critical_current"));
  m.def(
      "fit_fringe",
      [](const std::vector<double>& x, const std::vector<double>& samples) {
        return fit_fringe(x, samples);
      },
      py::arg("x"), py::arg("intensity"));

  m.def("parse_state",
        [](const std::string& text) { return dsl::lower(dsl::parse(text)); });
  m.def("render_state", &dsl::render, py::arg("rho"));

  m.def("run_sweep",
        [](const std::string& state, const std::vector<double>& omegas, double xi,
           double charge, int points, double start, double end) {
          return series_dict(
              run_sweep(make_config(state, omegas, xi, charge, points, start, end)));
        },
        py::arg("state"), py::arg("omegas"), py::arg("xi") = 1.0,
        py::arg("charge") = DriveParams::default_e_charge(),
        py::arg("points") = 1000, py::arg("start") = 0.0,
        py::arg("end") = SweepConfig::default_scaled_end());
  m.def("figure_preset",
        [](int number, int points) {
          const auto id = figure_from_number(number);
          if (!id) throw ConfigError("figure number must be 2..6");
          FigurePreset preset = figure_preset(*id);
          py::list out;
          for (auto& variant : preset.variants) {
            variant.points = points;
            py::dict d = series_dict(run_sweep(variant));
            d["label"] = variant.state.label;
            out.append(std::move(d));
          }
          return out;
        },
        py::arg("number"), py::arg("points") = 1000);
  m.def("figure6_summary",
        [](int points) {
          const CorrelatorGapSummary s = figure6_summary(points);
          return py::make_tuple(s.bipartite_max, s.tripartite_max, s.ratio);
        },
        py::arg("points") = 1000);
  m.def("oracle_check",
        [](const std::string& state, const std::vector<double>& omegas, double xi,
           double charge, int samples, int cutoff, int points) {
          const OracleReport report = oracle_check(
              make_config(state, omegas, xi, charge, points, 0.0,
                          SweepConfig::default_scaled_end()),
              samples, cutoff);
          return py::make_tuple(report.max_deviation, report.ok());
        },
        py::arg("state"), py::arg("omegas"), py::arg("xi") = 1.0,
        py::arg("charge") = DriveParams::default_e_charge(),
        py::arg("samples") = 10, py::arg("cutoff") = 40, py::arg("points") = 1000);
  m.def("oracle_weyl",
        [](const OperatorEnsemble& rho, const std::vector<Complex>& lambdas,
           int cutoff) {
          const oracle::TruncatedSpace space(cutoff,
                                             static_cast<int>(rho.mode_count()));
          return oracle::oracle_weyl(rho, DriveAt{lambdas}, space);
        },
        py::arg("rho"), py::arg("lambdas"), py::arg("cutoff") = 40);
}
