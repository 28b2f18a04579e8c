#include "weylcorr/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "weylcorr/fock_oracle.hpp"
#include "weylcorr/state_dsl.hpp"

namespace weylcorr {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_number_family(StateFamily f) {
  return f == StateFamily::sep_number2 || f == StateFamily::ent_number2 ||
         f == StateFamily::sep_number3 || f == StateFamily::ent_number3;
}

bool is_coherent_family(StateFamily f) {
  return f == StateFamily::sep_coherent2 || f == StateFamily::ent_coherent2 ||
         f == StateFamily::sep_coherent3 || f == StateFamily::ent_coherent3;
}

}  // namespace

double SweepConfig::default_scaled_end() { return 4.0 * std::numbers::pi; }

OperatorEnsemble StateSpec::build() const {
  const int sources = (family ? 1 : 0) + (dsl_text ? 1 : 0) + (json_text ? 1 : 0);
  if (sources != 1) {
    throw ConfigError("state spec needs exactly one of family, dsl, json");
  }
  if (family) return build_state(*family, params);
  if (dsl_text) return dsl::lower(dsl::parse(*dsl_text));
  return ensemble_from_json(*json_text);
}

std::string StateSpec::describe() const {
  if (family) {
    std::string out{family_name(*family)};
    if (*family == StateFamily::factorizable) {
      out += " ket=" + (params.ket ? dsl::render(OperatorEnsemble(
                            {{Complex{1.0, 0.0}, *params.ket, *params.ket}}))
                                   : std::string("?"));
      return out;
    }
    if (is_number_family(*family)) {
      for (std::size_t i = 0; i < params.numbers.size(); ++i) {
        out += (i == 0 ? " N1=" : ",N" + std::to_string(i + 1) + "=") +
               std::to_string(params.numbers[i]);
      }
    } else {
      for (std::size_t i = 0; i < params.amplitudes.size(); ++i) {
        const Complex a = params.amplitudes[i];
        out += (i == 0 ? " A1=" : ",A" + std::to_string(i + 1) + "=") + fmt(a.real());
        if (a.imag() != 0.0) out += (a.imag() > 0 ? "+" : "") + fmt(a.imag()) + "i";
      }
    }
    return out;
  }
  if (dsl_text) return "dsl " + *dsl_text;
  return "json-ensemble";
}

std::vector<double> StateSpec::effective_numbers(const OperatorEnsemble& rho) const {
  if (family && is_number_family(*family)) {
    return std::vector<double>(params.numbers.begin(), params.numbers.end());
  }
  if (family && is_coherent_family(*family)) {
    std::vector<double> out;
    out.reserve(params.amplitudes.size());
    for (Complex a : params.amplitudes) out.push_back(std::norm(a));
    return out;
  }
  std::vector<double> out;
  out.reserve(rho.mode_count());
  for (std::size_t m = 0; m < rho.mode_count(); ++m) {
    out.push_back(rho.mean_photon_number(m));
  }
  return out;
}

namespace {

Complex parse_complex_value(const std::string& text) {
  const auto expr = dsl::parse("|c:" + text + ">");
  return expr.components.at(0).kets.at(0).ket.amplitude(0);
}

ProductKet parse_single_ket(const std::string& text) {
  const auto expr = dsl::parse(text);
  if (expr.components.size() != 1 || expr.components[0].kets.size() != 1 ||
      expr.components[0].kets[0].coefficient != Complex{1.0, 0.0}) {
    throw ConfigError("factorizable state takes a single product ket");
  }
  return expr.components[0].kets[0].ket;
}

}  // namespace

StateSpec state_spec_from_string(const std::string& text) {
  StateSpec spec;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    if (const auto family = family_from_name(text.substr(0, colon))) {
      spec.family = *family;
      const std::string rest = text.substr(colon + 1);
      if (*family == StateFamily::factorizable) {
        std::string ket_text = rest;
        if (ket_text.rfind("ket=", 0) == 0) ket_text = ket_text.substr(4);
        spec.params.ket = parse_single_ket(ket_text);
        return spec;
      }
      std::size_t pos = 0;
      while (pos < rest.size()) {
        const auto eq = rest.find('=', pos);
        if (eq == std::string::npos) {
          throw ConfigError("malformed family parameters: " + rest);
        }
        const std::string key = rest.substr(pos, eq - pos);
        // amplitude values may contain '+'/'-'; the next key starts after a
        // comma followed by 'N' or 'A'
        std::size_t end = eq + 1;
        while (end < rest.size() &&
               !(rest[end] == ',' && end + 1 < rest.size() &&
                 (rest[end + 1] == 'N' || rest[end + 1] == 'A'))) {
          ++end;
        }
        const std::string value = rest.substr(eq + 1, end - eq - 1);
        try {
          if (key.size() == 2 && key[0] == 'N' && key[1] >= '1' && key[1] <= '9') {
            const auto idx = static_cast<std::size_t>(key[1] - '1');
            spec.params.numbers.resize(std::max(spec.params.numbers.size(), idx + 1));
            spec.params.numbers[idx] = std::stoi(value);
          } else if (key.size() == 2 && key[0] == 'A' && key[1] >= '1' && key[1] <= '9') {
            const auto idx = static_cast<std::size_t>(key[1] - '1');
            spec.params.amplitudes.resize(
                std::max(spec.params.amplitudes.size(), idx + 1));
            spec.params.amplitudes[idx] = parse_complex_value(value);
          } else {
            throw ConfigError("unknown family parameter '" + key + "'");
          }
        } catch (const dsl::ParseError&) {
          throw ConfigError("malformed value for '" + key + "': " + value);
        } catch (const std::invalid_argument&) {
          throw ConfigError("malformed value for '" + key + "': " + value);
        }
        pos = end < rest.size() ? end + 1 : end;
      }
      return spec;
    }
  }
  spec.dsl_text = text;
  return spec;
}

namespace {

struct Axis {
  double frequency;
  std::string warning;
};

Axis pick_axis(const StateSpec& state, const DriveParams& drive,
               const OperatorEnsemble& rho) {
  const auto& w = drive.omegas;
  double beat = 0.0;
  if (w.size() == 2 || w.size() == 3) {
    const std::vector<double> numbers = state.effective_numbers(rho);
    beat = std::abs(beat_frequency(std::span<const double>(numbers),
                                   std::span<const double>(w)));
  }
  if (beat > 0.0) return {beat, ""};
  double detuning = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      detuning = std::max(detuning, std::abs(w[i] - w[j]));
    }
  }
  if (detuning > 0.0) {
    return {detuning, "beat frequency is zero; scaled_time uses the max detuning"};
  }
  double wmax = 0.0;
  for (double x : w) wmax = std::max(wmax, std::abs(x));
  if (wmax > 0.0) {
    return {wmax, "beat frequency and detuning are zero; scaled_time uses the max omega"};
  }
  return {1.0, "all frequencies are zero; scaled_time equals raw time"};
}

void validate(const SweepConfig& cfg, const OperatorEnsemble& rho) {
  if (cfg.points < 2) throw ConfigError("points must be >= 2");
  if (!(cfg.scaled_start < cfg.scaled_end)) {
    throw ConfigError("scaled-time range start must be below end");
  }
  if (!std::isfinite(cfg.drive.xi) || !std::isfinite(cfg.drive.e_charge)) {
    throw ConfigError("drive parameters must be finite");
  }
  if (cfg.drive.omegas.size() != rho.mode_count()) {
    throw ConfigError("omega list length (" + std::to_string(cfg.drive.omegas.size()) +
                      ") must match the state's mode count (" +
                      std::to_string(rho.mode_count()) + ")");
  }
}

}  // namespace

SweepSeries run_sweep(const SweepConfig& cfg) {
  const OperatorEnsemble rho = cfg.state.build();
  validate(cfg, rho);
  const Axis axis = pick_axis(cfg.state, cfg.drive, rho);

  SweepSeries series;
  series.config = cfg;
  series.axis_frequency = axis.frequency;
  series.axis_warning = axis.warning;
  series.rows.reserve(static_cast<std::size_t>(cfg.points));
  const double step = (cfg.scaled_end - cfg.scaled_start) / (cfg.points - 1);
  for (int i = 0; i < cfg.points; ++i) {
    const double scaled = cfg.scaled_start + step * i;
    const double t = scaled / axis.frequency;
    const CorrelatorValue value = correlator(rho, drive_lambda(cfg.drive, t));
    series.rows.push_back({t, scaled, value.marginals, value.joint, value.c,
                           std::abs(value.c)});
  }
  return series;
}

namespace {

void append_metadata_lines(const SweepSeries& s, std::string& out) {
  const auto& cfg = s.config;
  out += "# weylcorr sweep\n";
  out += "# state: " + cfg.state.describe() + "\n";
  out += "# label: " + cfg.state.label + "\n";
  out += "# xi: " + fmt(cfg.drive.xi) + "\n";
  out += "# e_charge: " + fmt(cfg.drive.e_charge) + "\n";
  out += "# q: " + fmt(cfg.drive.q()) + "\n";
  out += "# omegas: ";
  for (std::size_t i = 0; i < cfg.drive.omegas.size(); ++i) {
    if (i) out += ",";
    out += fmt(cfg.drive.omegas[i]);
  }
  out += "\n";
  out += "# points: " + std::to_string(cfg.points) + "\n";
  out += "# scaled_range: " + fmt(cfg.scaled_start) + "," + fmt(cfg.scaled_end) + "\n";
  out += "# axis_frequency: " + fmt(s.axis_frequency) + "\n";
  if (!s.axis_warning.empty()) {
    out += "# warning: " + s.axis_warning + "\n";
  }
}

std::vector<std::string> column_names(const SweepSeries& s) {
  std::vector<std::string> cols{"t", "scaled_time"};
  const std::size_t modes = s.rows.empty() ? 0 : s.rows.front().marginals.size();
  for (std::size_t m = 1; m <= modes; ++m) {
    cols.push_back("reW_" + std::to_string(m));
    cols.push_back("imW_" + std::to_string(m));
  }
  cols.insert(cols.end(), {"reW_joint", "imW_joint", "reC", "imC", "absC"});
  return cols;
}

std::vector<double> row_values(const SweepRow& r) {
  std::vector<double> v{r.t, r.scaled_time};
  for (Complex w : r.marginals) {
    v.push_back(w.real());
    v.push_back(w.imag());
  }
  v.insert(v.end(), {r.joint.real(), r.joint.imag(), r.c.real(), r.c.imag(), r.abs_c});
  return v;
}

}  // namespace

std::string to_csv(const SweepSeries& series) {
  std::string out;
  append_metadata_lines(series, out);
  const auto cols = column_names(series);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ",";
    out += cols[i];
  }
  out += "\n";
  for (const auto& row : series.rows) {
    const auto values = row_values(row);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ",";
      out += fmt(values[i]);
    }
    out += "\n";
  }
  return out;
}

std::string to_json_string(const SweepSeries& series, int indent) {
  nlohmann::json j;
  const auto& cfg = series.config;
  j["metadata"] = {
      {"state", cfg.state.describe()},
      {"label", cfg.state.label},
      {"xi", cfg.drive.xi},
      {"e_charge", cfg.drive.e_charge},
      {"q", cfg.drive.q()},
      {"omegas", cfg.drive.omegas},
      {"points", cfg.points},
      {"scaled_range", {cfg.scaled_start, cfg.scaled_end}},
      {"axis_frequency", series.axis_frequency},
  };
  if (!series.axis_warning.empty()) {
    j["metadata"]["warning"] = series.axis_warning;
  }
  j["columns"] = column_names(series);
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : series.rows) {
    rows.push_back(row_values(row));
  }
  return j.dump(indent);
}

namespace {

SweepConfig family_config(std::string label, StateFamily family,
                          StateParams params, std::vector<double> omegas) {
  SweepConfig cfg;
  cfg.state.label = std::move(label);
  cfg.state.family = family;
  cfg.state.params = std::move(params);
  cfg.drive.omegas = std::move(omegas);
  return cfg;
}

}  // namespace

FigurePreset figure_preset(FigureId id) {
  const std::vector<double> omega2{1.2e-4, 1.0e-4};
  const std::vector<double> omega3{1.2e-4, 1.1e-4, 1.0e-4};
  StateParams n10;
  n10.numbers = {1, 0};
  StateParams a10;
  a10.amplitudes = {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  StateParams n012;
  n012.numbers = {0, 1, 2};
  StateParams a01r2;
  a01r2.amplitudes = {Complex{0.0, 0.0}, Complex{1.0, 0.0},
                      Complex{std::sqrt(2.0), 0.0}};
  switch (id) {
    case FigureId::fig2:
      return {id,
              {family_config("sep", StateFamily::sep_number2, n10, omega2),
               family_config("ent", StateFamily::ent_number2, n10, omega2)}};
    case FigureId::fig3:
      return {id,
              {family_config("sep", StateFamily::sep_coherent2, a10, omega2),
               family_config("ent", StateFamily::ent_coherent2, a10, omega2)}};
    case FigureId::fig4:
      return {id,
              {family_config("sep", StateFamily::sep_number3, n012, omega3),
               family_config("ent", StateFamily::ent_number3, n012, omega3)}};
    case FigureId::fig5:
      return {id,
              {family_config("sep", StateFamily::sep_coherent3, a01r2, omega3),
               family_config("ent", StateFamily::ent_coherent3, a01r2, omega3)}};
    case FigureId::fig6:
      return {id,
              {family_config("bipartite_sep", StateFamily::sep_coherent2, a10, omega2),
               family_config("bipartite_ent", StateFamily::ent_coherent2, a10, omega2),
               family_config("tripartite_sep", StateFamily::sep_coherent3, a01r2, omega3),
               family_config("tripartite_ent", StateFamily::ent_coherent3, a01r2, omega3)}};
  }
  throw ConfigError("unknown figure id");
}

std::optional<FigureId> figure_from_number(int n) {
  switch (n) {
    case 2: return FigureId::fig2;
    case 3: return FigureId::fig3;
    case 4: return FigureId::fig4;
    case 5: return FigureId::fig5;
    case 6: return FigureId::fig6;
    default: return std::nullopt;
  }
}

CorrelatorGapSummary figure6_summary(int points) {
  FigurePreset preset = figure_preset(FigureId::fig6);
  for (auto& v : preset.variants) v.points = points;
  const SweepSeries bi_sep = run_sweep(preset.variants[0]);
  const SweepSeries bi_ent = run_sweep(preset.variants[1]);
  const SweepSeries tri_sep = run_sweep(preset.variants[2]);
  const SweepSeries tri_ent = run_sweep(preset.variants[3]);
  auto max_gap = [](const SweepSeries& sep, const SweepSeries& ent) {
    double out = 0.0;
    for (std::size_t i = 0; i < sep.rows.size(); ++i) {
      out = std::max(out, std::abs(ent.rows[i].c - sep.rows[i].c));
    }
    return out;
  };
  CorrelatorGapSummary summary{};
  summary.bipartite_max = max_gap(bi_sep, bi_ent);
  summary.tripartite_max = max_gap(tri_sep, tri_ent);
  summary.ratio = summary.tripartite_max / summary.bipartite_max;
  return summary;
}

OracleReport oracle_check(const SweepConfig& cfg, int samples, int cutoff) {
  if (samples < 1) throw ConfigError("oracle-check: samples must be >= 1");
  const OperatorEnsemble rho = cfg.state.build();
  validate(cfg, rho);
  const Axis axis = pick_axis(cfg.state, cfg.drive, rho);
  const oracle::TruncatedSpace space(cutoff, static_cast<int>(rho.mode_count()));

  OracleReport report;
  report.samples = samples;
  report.cutoff = cutoff;

  std::mt19937 rng(20050u);  // fixed seed: runs are reproducible
  std::uniform_int_distribution<int> pick(0, cfg.points - 1);
  const double step = (cfg.scaled_end - cfg.scaled_start) / (cfg.points - 1);
  for (int s = 0; s < samples; ++s) {
    const double scaled = cfg.scaled_start + step * pick(rng);
    const double t = scaled / axis.frequency;
    const DriveAt at = drive_lambda(cfg.drive, t);

    double dev = std::abs(weyl(rho, at) - oracle::oracle_weyl(rho, at, space));
    for (std::size_t m = 0; m < rho.mode_count(); ++m) {
      DriveAt single;
      single.lambdas.assign(rho.mode_count(), Complex{0.0, 0.0});
      single.lambdas[m] = at.lambdas[m];
      dev = std::max(dev, std::abs(weyl(rho, single) -
                                   oracle::oracle_weyl(rho, single, space)));
    }
    report.points.push_back({t, dev});
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  return report;
}

}  // namespace weylcorr
