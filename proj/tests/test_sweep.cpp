#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "weylcorr/fock_oracle.hpp"
#include "weylcorr/sweep.hpp"

using namespace weylcorr;

namespace {

constexpr double kPi = std::numbers::pi;

SweepConfig config_for(const std::string& state, std::vector<double> omegas,
                       int points = 1000) {
  SweepConfig cfg;
  cfg.state = state_spec_from_string(state);
  cfg.drive.omegas = std::move(omegas);
  cfg.points = points;
  return cfg;
}

// scaled-time positions of the local maxima of a column
std::vector<double> peak_positions(const SweepSeries& s,
                                   const std::vector<double>& values) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] > values[i + 1]) {
      out.push_back(s.rows[i].scaled_time);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("state specs parse from strings") {
  const auto fam = state_spec_from_string("ent_number2:N1=1,N2=0");
  REQUIRE(fam.family.has_value());
  CHECK(*fam.family == StateFamily::ent_number2);
  CHECK(fam.params.numbers == std::vector<int>{1, 0});

  const auto coh = state_spec_from_string("sep_coherent2:A1=1+0.5i,A2=-0.3");
  REQUIRE(coh.family.has_value());
  CHECK(coh.params.amplitudes == std::vector<Complex>{{1.0, 0.5}, {-0.3, 0.0}});

  const auto fac = state_spec_from_string("factorizable:|1,0>");
  REQUIRE(fac.family.has_value());
  CHECK(fac.params.ket == ProductKet::fock({1, 0}));

  const auto text = state_spec_from_string("mix 0.5: |1,0>; 0.5: |0,1>");
  CHECK(text.dsl_text.has_value());
  CHECK(!text.family.has_value());

  CHECK_THROWS_AS(state_spec_from_string("ent_number2:Q1=1"), ConfigError);
  CHECK_THROWS_AS(state_spec_from_string("ent_number2:N1=x"), ConfigError);
}

TEST_CASE("config validation") {
  auto cfg = config_for("ent_number2:N1=1,N2=0", {1.2e-4, 1.0e-4});
  cfg.points = 1;
  CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
  cfg.points = 10;
  cfg.scaled_end = cfg.scaled_start;
  CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
  auto bad_omega = config_for("ent_number2:N1=1,N2=0", {1.2e-4});
  CHECK_THROWS_AS(run_sweep(bad_omega), ConfigError);
}

TEST_CASE("figure-2 sweep: constant separable curve, oscillating entangled curve") {
  const auto sep = run_sweep(config_for("sep_number2:N1=1,N2=0", {1.2e-4, 1.0e-4}));
  CHECK(sep.axis_frequency == doctest::Approx(2.0e-5).epsilon(1e-12));
  CHECK(sep.axis_warning.empty());
  CHECK(sep.rows.size() == 1000);
  for (const auto& row : sep.rows) {
    CHECK(std::abs(row.abs_c - 0.00050227401205961734) < 1e-12);
  }

  const auto ent = run_sweep(config_for("ent_number2:N1=1,N2=0", {1.2e-4, 1.0e-4}));
  double max_abs = 0.0;
  for (const auto& row : ent.rows) max_abs = std::max(max_abs, row.abs_c);
  CHECK(std::abs(max_abs - 0.044309060721685341) < 1e-12);

  // period of the underlying correlator: peaks of Re C spaced 2 pi apart
  std::vector<double> re;
  for (const auto& row : ent.rows) re.push_back(row.c.real());
  const auto peaks = peak_positions(ent, re);
  REQUIRE(peaks.size() == 2);
  const double step = 4.0 * kPi / 999.0;
  CHECK(std::abs(peaks[1] - peaks[0] - 2.0 * kPi) <= step);
}

TEST_CASE("figure-4 sweep uses the tripartite beat frequency") {
  const auto sep =
      run_sweep(config_for("sep_number3:N1=0,N2=1,N3=2", {1.2e-4, 1.1e-4, 1.0e-4}));
  const auto ent =
      run_sweep(config_for("ent_number3:N1=0,N2=1,N3=2", {1.2e-4, 1.1e-4, 1.0e-4}));
  CHECK(ent.axis_frequency == doctest::Approx(3.0e-5).epsilon(1e-12));

  std::vector<double> diff;
  for (std::size_t i = 0; i < ent.rows.size(); ++i) {
    diff.push_back(ent.rows[i].c.real() - sep.rows[i].c.real());
  }
  const auto peaks = peak_positions(ent, diff);
  REQUIRE(!peaks.empty());
  const double step = 4.0 * kPi / 999.0;
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    CHECK(std::abs(peaks[i] - peaks[i - 1] - 2.0 * kPi) <= step);
  }
}

TEST_CASE("factorizable sweeps have a null correlator column") {
  const auto series =
      run_sweep(config_for("factorizable:|c:0.7,c:0.4>", {1.2e-4, 1.0e-4}, 200));
  for (const auto& row : series.rows) {
    CHECK(row.abs_c <= 1e-12);
  }
}

TEST_CASE("degenerate beat frequencies fall back with a warning") {
  const auto no_detuning =
      run_sweep(config_for("ent_number2:N1=1,N2=0", {1.0e-4, 1.0e-4}, 100));
  CHECK(!no_detuning.axis_warning.empty());
  CHECK(no_detuning.axis_frequency == doctest::Approx(1.0e-4).epsilon(1e-12));

  const auto equal_numbers =
      run_sweep(config_for("sep_number2:N1=2,N2=2", {1.2e-4, 1.0e-4}, 100));
  CHECK(!equal_numbers.axis_warning.empty());
  CHECK(equal_numbers.axis_frequency == doctest::Approx(2.0e-5).epsilon(1e-12));
}

TEST_CASE("csv output is deterministic with the documented header") {
  const auto make = [] {
    return to_csv(run_sweep(config_for("ent_number2:N1=1,N2=0", {1.2e-4, 1.0e-4}, 50)));
  };
  const std::string a = make();
  const std::string b = make();
  CHECK(a == b);
  CHECK(a.find("t,scaled_time,reW_1,imW_1,reW_2,imW_2,reW_joint,imW_joint,reC,imC,absC\n") !=
        std::string::npos);
  CHECK(a.find("# axis_frequency: ") != std::string::npos);
  // comment lines first, then the header, then exactly `points` rows
  int rows = 0;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos < a.size()) {
    const auto eol = a.find('\n', pos);
    const std::string line = a.substr(pos, eol - pos);
    if (!line.empty() && line[0] != '#') {
      if (!seen_header) {
        seen_header = true;
      } else {
        ++rows;
      }
    }
    pos = eol + 1;
  }
  CHECK(rows == 50);
}

TEST_CASE("json output mirrors the csv columns") {
  const auto series = run_sweep(config_for("ent_number2:N1=1,N2=0", {1.2e-4, 1.0e-4}, 20));
  const auto j = nlohmann::json::parse(to_json_string(series));
  CHECK(j.at("columns").size() == 11);
  CHECK(j.at("rows").size() == 20);
  CHECK(j.at("metadata").at("points").get<int>() == 20);
  CHECK(j.at("metadata").at("q").get<double>() ==
        doctest::Approx(0.21415570614803472).epsilon(1e-15));
}

TEST_CASE("figure presets pin the parameters of each curve") {
  const auto fig2 = figure_preset(FigureId::fig2);
  REQUIRE(fig2.variants.size() == 2);
  CHECK(fig2.variants[0].state.label == "sep");
  CHECK(*fig2.variants[1].state.family == StateFamily::ent_number2);
  CHECK(fig2.variants[1].state.params.numbers == std::vector<int>{1, 0});
  CHECK(fig2.variants[1].drive.omegas == std::vector<double>{1.2e-4, 1.0e-4});

  const auto fig5 = figure_preset(FigureId::fig5);
  CHECK(*fig5.variants[1].state.family == StateFamily::ent_coherent3);
  REQUIRE(fig5.variants[1].state.params.amplitudes.size() == 3);
  CHECK(std::abs(fig5.variants[1].state.params.amplitudes[2] -
                 Complex{std::sqrt(2.0), 0.0}) < 1e-15);
  CHECK(fig5.variants[1].drive.omegas == std::vector<double>{1.2e-4, 1.1e-4, 1.0e-4});

  const auto fig6 = figure_preset(FigureId::fig6);
  REQUIRE(fig6.variants.size() == 4);
  CHECK(fig6.variants[0].state.label == "bipartite_sep");
  CHECK(fig6.variants[3].state.label == "tripartite_ent");
  CHECK(*fig6.variants[1].state.family == StateFamily::ent_coherent2);

  CHECK(figure_from_number(4).has_value());
  CHECK(!figure_from_number(7).has_value());
}

TEST_CASE("figure-6 correlator gaps are pinned") {
  const auto summary = figure6_summary(1000);
  CHECK(summary.bipartite_max ==
        doctest::Approx(0.011763633424548175).epsilon(1e-9));
  CHECK(summary.tripartite_max ==
        doctest::Approx(0.011310579364363407).epsilon(1e-9));
  CHECK(summary.ratio == doctest::Approx(0.96148689407140642).epsilon(1e-9));
}

TEST_CASE("oracle check passes on the figure-2 preset") {
  auto preset = figure_preset(FigureId::fig2);
  for (auto& cfg : preset.variants) {
    const auto report = oracle_check(cfg, 5, 30);
    CHECK(report.ok());
    CHECK(report.max_deviation < 1e-8);
    CHECK(report.points.size() == 5);
  }
}

TEST_CASE("oracle check flags guard violations instead of skipping") {
  auto cfg = config_for("ent_coherent2:A1=1.4142135623730951,A2=0", {1.2e-4, 1.0e-4});
  CHECK_THROWS_AS(oracle_check(cfg, 3, 2), oracle::GuardViolation);
}
