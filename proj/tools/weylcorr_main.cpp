// Command-line front end: single Weyl/correlator evaluations, time sweeps,
// figure presets, oracle checks, and state-language validation.
//
// Exit codes: 0 success, 2 configuration error, 3 oracle-check failure,
// 4 state-language parse error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weylcorr/fock_oracle.hpp"
#include "weylcorr/observables.hpp"
#include "weylcorr/state_dsl.hpp"
#include "weylcorr/states.hpp"
#include "weylcorr/sweep.hpp"
#include "weylcorr/weyl.hpp"

namespace {

using namespace weylcorr;

constexpr int kExitConfig = 2;
constexpr int kExitOracle = 3;
constexpr int kExitParse = 4;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct StateOptions {
  std::string state;
  std::string state_json_path;
  std::vector<double> omegas;
  double xi = 1.0;
  double charge = DriveParams::default_e_charge();
};

void add_state_options(CLI::App* cmd, StateOptions& opt) {
  cmd->add_option("--state", opt.state,
                  "Built-in family ('ent_number2:N1=1,N2=0', "
                  "'sep_coherent2:A1=1,A2=0', 'factorizable:|1,0>') or a "
                  "state-language expression");
  cmd->add_option("--state-json", opt.state_json_path,
                  "Path to a JSON-serialized ensemble (see the parse subcommand)");
  cmd->add_option("--omega", opt.omegas, "Angular frequencies, one per mode")
      ->delimiter(',');
  cmd->add_option("--xi", opt.xi, "Coupling constant (default 1)");
  cmd->add_option("--charge", opt.charge,
                  "Dimensionless electric charge (default sqrt(4*pi/137))");
}

StateSpec make_state_spec(const StateOptions& opt) {
  if (!opt.state_json_path.empty()) {
    if (!opt.state.empty()) {
      throw ConfigError("--state and --state-json are mutually exclusive");
    }
    std::ifstream in(opt.state_json_path);
    if (!in) throw ConfigError("cannot open " + opt.state_json_path);
    StateSpec spec;
    spec.json_text = std::string((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
    return spec;
  }
  if (opt.state.empty()) {
    throw ConfigError("--state (or --state-json) is required");
  }
  return state_spec_from_string(opt.state);
}

SweepConfig make_config(const StateOptions& opt) {
  SweepConfig cfg;
  cfg.state = make_state_spec(opt);
  cfg.drive.xi = opt.xi;
  cfg.drive.e_charge = opt.charge;
  cfg.drive.omegas = opt.omegas;
  return cfg;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << payload;
}

std::string variant_path(const std::string& base, const std::string& label) {
  const std::filesystem::path p(base);
  std::filesystem::path out = p.parent_path();
  out /= p.stem().string() + "_" + label + p.extension().string();
  return out.string();
}

// single-point evaluation shared by `weyl` and `correlator`
std::string evaluate_point(const StateOptions& opt, double t, bool with_correlator,
                           const std::string& format) {
  SweepConfig cfg = make_config(opt);
  const OperatorEnsemble rho = cfg.state.build();
  if (cfg.drive.omegas.size() != rho.mode_count()) {
    throw ConfigError("omega list length must match the state's mode count");
  }
  const CorrelatorValue value = correlator(rho, drive_lambda(cfg.drive, t));

  std::vector<std::pair<std::string, double>> fields;
  fields.emplace_back("t", t);
  for (std::size_t m = 0; m < value.marginals.size(); ++m) {
    const std::string n = std::to_string(m + 1);
    fields.emplace_back("reW_" + n, value.marginals[m].real());
    fields.emplace_back("imW_" + n, value.marginals[m].imag());
    fields.emplace_back("visibility_" + n, visibility(value.marginals[m]));
    fields.emplace_back("phase_" + n, phase_shift(value.marginals[m]));
  }
  fields.emplace_back("reW_joint", value.joint.real());
  fields.emplace_back("imW_joint", value.joint.imag());
  fields.emplace_back("visibility_joint", visibility(value.joint));
  fields.emplace_back("phase_joint", phase_shift(value.joint));
  if (with_correlator) {
    fields.emplace_back("reC", value.c.real());
    fields.emplace_back("imC", value.c.imag());
    fields.emplace_back("absC", std::abs(value.c));
  }

  if (format == "json") {
    std::string out = "{\n";
    out += "  \"state\": \"" + cfg.state.describe() + "\",\n";
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out += "  \"" + fields[i].first + "\": " + fmt(fields[i].second);
      out += i + 1 < fields.size() ? ",\n" : "\n";
    }
    out += "}\n";
    return out;
  }
  std::string header = "# state: " + cfg.state.describe() + "\n";
  std::string names, values;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) {
      names += ",";
      values += ",";
    }
    names += fields[i].first;
    values += fmt(fields[i].second);
  }
  return header + names + "\n" + values + "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Weyl-function correlators for photon-irradiated interference experiments"};
  app.require_subcommand(1);

  // ---- weyl / correlator ----
  StateOptions point_opt;
  double point_t = 0.0;
  std::string point_format = "csv";
  std::string point_output;
  auto* weyl_cmd = app.add_subcommand("weyl", "Evaluate joint and marginal Weyl functions at one time");
  auto* corr_cmd = app.add_subcommand("correlator", "Evaluate the correlator C at one time");
  for (CLI::App* cmd : {weyl_cmd, corr_cmd}) {
    add_state_options(cmd, point_opt);
    cmd->add_option("--t", point_t, "Evaluation time (default 0)");
    cmd->add_option("--format", point_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", point_output, "Output path (default stdout)");
  }

  // ---- sweep ----
  StateOptions sweep_opt;
  SweepConfig sweep_cfg;
  std::string sweep_format = "csv";
  std::string sweep_output;
  std::pair<double, double> sweep_range{0.0, SweepConfig::default_scaled_end()};
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the correlator over a scaled-time grid");
  add_state_options(sweep_cmd, sweep_opt);
  sweep_cmd->add_option("--t-range", sweep_range, "Scaled-time range (two values)");
  sweep_cmd->add_option("--points", sweep_cfg.points, "Grid points (default 1000)");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--output", sweep_output, "Output path (default stdout)");

  // ---- figure ----
  int figure_number = 0;
  int figure_points = 1000;
  std::string figure_format = "csv";
  std::string figure_output;
  auto* figure_cmd = app.add_subcommand("figure", "Run a figure preset (2-6), one series per curve");
  figure_cmd->add_option("number", figure_number, "Figure number (2-6)")->required();
  figure_cmd->add_option("--points", figure_points, "Grid points (default 1000)");
  figure_cmd->add_option("--format", figure_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  figure_cmd->add_option("--output", figure_output,
                         "Output base path; per-curve files get a _<label> suffix");

  // ---- oracle-check ----
  StateOptions oracle_opt;
  int oracle_figure = 0;
  int oracle_samples = 10;
  int oracle_cutoff = 40;
  int oracle_points = 1000;
  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "Compare the closed-form engine against the truncated-space oracle");
  add_state_options(oracle_cmd, oracle_opt);
  oracle_cmd->add_option("--figure", oracle_figure, "Check a figure preset (2-6) instead of --state");
  oracle_cmd->add_option("--samples", oracle_samples, "Random grid points per series (default 10)");
  oracle_cmd->add_option("--cutoff", oracle_cutoff, "Fock-space cutoff (default 40)");
  oracle_cmd->add_option("--points", oracle_points, "Grid points (default 1000)");

  // ---- parse ----
  std::string parse_text;
  std::string parse_output;
  auto* parse_cmd = app.add_subcommand("parse", "Validate a state-language expression and emit ensemble JSON");
  parse_cmd->add_option("text", parse_text, "State expression")->required();
  parse_cmd->add_option("--output", parse_output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (weyl_cmd->parsed() || corr_cmd->parsed()) {
      write_output(point_output,
                   evaluate_point(point_opt, point_t, corr_cmd->parsed(), point_format));
      return 0;
    }
    if (sweep_cmd->parsed()) {
      SweepConfig cfg = make_config(sweep_opt);
      cfg.points = sweep_cfg.points;
      cfg.scaled_start = sweep_range.first;
      cfg.scaled_end = sweep_range.second;
      const SweepSeries series = run_sweep(cfg);
      write_output(sweep_output,
                   sweep_format == "json" ? to_json_string(series, 2) : to_csv(series));
      return 0;
    }
    if (figure_cmd->parsed()) {
      const auto id = figure_from_number(figure_number);
      if (!id) throw ConfigError("figure number must be 2..6");
      FigurePreset preset = figure_preset(*id);
      for (auto& variant : preset.variants) {
        variant.points = figure_points;
        const SweepSeries series = run_sweep(variant);
        const std::string payload =
            figure_format == "json" ? to_json_string(series, 2) : to_csv(series);
        if (figure_output.empty() || figure_output == "-") {
          std::cout << payload;
        } else {
          write_output(variant_path(figure_output, variant.state.label), payload);
        }
      }
      if (*id == FigureId::fig6) {
        const CorrelatorGapSummary summary = figure6_summary(figure_points);
        std::cout << "# fig6 bipartite max |C_ent - C_sep|: "
                  << fmt(summary.bipartite_max) << "\n"
                  << "# fig6 tripartite max |C_ent - C_sep|: "
                  << fmt(summary.tripartite_max) << "\n"
                  << "# fig6 ratio (tripartite / bipartite): " << fmt(summary.ratio)
                  << "\n";
      }
      return 0;
    }
    if (oracle_cmd->parsed()) {
      std::vector<SweepConfig> configs;
      if (oracle_figure != 0) {
        const auto id = figure_from_number(oracle_figure);
        if (!id) throw ConfigError("figure number must be 2..6");
        configs = figure_preset(*id).variants;
      } else {
        configs.push_back(make_config(oracle_opt));
      }
      bool all_ok = true;
      for (auto& cfg : configs) {
        cfg.points = oracle_points;
        const OracleReport report = oracle_check(cfg, oracle_samples, oracle_cutoff);
        all_ok = all_ok && report.ok();
        std::cout << cfg.state.label << ": max deviation " << fmt(report.max_deviation)
                  << " over " << report.samples << " samples (cutoff " << report.cutoff
                  << ") -> " << (report.ok() ? "OK" : "FAIL") << "\n";
      }
      return all_ok ? 0 : kExitOracle;
    }
    if (parse_cmd->parsed()) {
      const OperatorEnsemble rho = dsl::lower(dsl::parse(parse_text));
      write_output(parse_output, ensemble_to_json(rho, 2) + "\n");
      return 0;
    }
  } catch (const dsl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    if (!e.expected().empty()) {
      std::cerr << "expected:";
      for (const auto& s : e.expected()) std::cerr << " " << s;
      std::cerr << "\n";
    }
    return kExitParse;
  } catch (const oracle::GuardViolation& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
