#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weylcorr/states.hpp"
#include "weylcorr/weyl.hpp"

namespace weylcorr {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One state to sweep: a built-in family, a DSL expression, or a serialized
// ensemble. `label` names the curve in figure output.
struct StateSpec {
  std::string label = "state";
  std::optional<StateFamily> family;
  StateParams params;
  std::optional<std::string> dsl_text;
  std::optional<std::string> json_text;

  OperatorEnsemble build() const;
  std::string describe() const;

  // Photon numbers that set the scaled-time axis: family parameters
  // (occupations, or |A_i|^2 for coherent families), falling back to the
  // ensemble's per-mode mean photon numbers.
  std::vector<double> effective_numbers(const OperatorEnsemble& rho) const;
};

// Parses "family:key=value,..." (e.g. "ent_number2:N1=1,N2=0",
// "sep_coherent3:A1=0,A2=1,A3=1.4142135623730951",
// "factorizable:|1,0>"); any other text is treated as a state-language
// expression.
StateSpec state_spec_from_string(const std::string& text);

struct SweepConfig {
  StateSpec state;
  DriveParams drive;        // xi, e_charge, omegas
  double scaled_start = 0.0;
  double scaled_end = default_scaled_end();
  int points = 1000;

  static double default_scaled_end();  // 4*pi: two beat periods
};

struct SweepRow {
  double t;
  double scaled_time;
  std::vector<Complex> marginals;
  Complex joint;
  Complex c;
  double abs_c;
};

struct SweepSeries {
  SweepConfig config;
  double axis_frequency = 0.0;
  std::string axis_warning;  // set when the beat frequency degenerates
  std::vector<SweepRow> rows;
};

// Evaluates the correlator on the scaled-time grid. Deterministic:
// identical configs produce byte-identical CSV.
SweepSeries run_sweep(const SweepConfig& cfg);

std::string to_csv(const SweepSeries& series);
std::string to_json_string(const SweepSeries& series, int indent = -1);

enum class FigureId { fig2, fig3, fig4, fig5, fig6 };

struct FigurePreset {
  FigureId id;
  std::vector<SweepConfig> variants;  // one sweep per curve
};

FigurePreset figure_preset(FigureId id);
std::optional<FigureId> figure_from_number(int n);

// max_t |C_ent - C_sep| over the default grid for the figure-6 pair of
// presets, plus their ratio.
struct CorrelatorGapSummary {
  double bipartite_max;
  double tripartite_max;
  double ratio;  // tripartite / bipartite
};
CorrelatorGapSummary figure6_summary(int points = 1000);

// Engine-vs-oracle comparison at `samples` deterministic pseudo-random grid
// points: joint and marginal Weyl values against the truncated-space oracle.
struct OracleSamplePoint {
  double t;
  double deviation;
};

struct OracleReport {
  int samples = 0;
  int cutoff = 0;
  double max_deviation = 0.0;
  double tolerance = 1e-8;
  std::vector<OracleSamplePoint> points;

  bool ok() const { return max_deviation < tolerance; }
};

OracleReport oracle_check(const SweepConfig& cfg, int samples, int cutoff);

}  // namespace weylcorr
