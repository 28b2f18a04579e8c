#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <doctest.h>

#include "weylcorr/state_dsl.hpp"
#include "weylcorr/states.hpp"

using namespace weylcorr;
using dsl::DiagnosticCode;
using dsl::ParseError;

namespace {

bool ensembles_close(const OperatorEnsemble& a, const OperatorEnsemble& b,
                     double tol = 1e-12) {
  if (a.terms().size() != b.terms().size()) return false;
  for (std::size_t i = 0; i < a.terms().size(); ++i) {
    const auto& ta = a.terms()[i];
    const auto& tb = b.terms()[i];
    if (!(ta.ket == tb.ket) || !(ta.bra == tb.bra)) return false;
    if (std::abs(ta.weight - tb.weight) > tol) return false;
  }
  return true;
}

OperatorEnsemble from_text(const std::string& text) {
  return dsl::lower(dsl::parse(text));
}

DiagnosticCode code_of(const std::string& text) {
  try {
    dsl::lower(dsl::parse(text));
  } catch (const ParseError& e) {
    CHECK(e.line() >= 1);
    CHECK(e.column() >= 1);
    CHECK(static_cast<std::size_t>(e.column()) <= text.size() + 1);
    return e.code();
  }
  FAIL("expected a parse error for: ", text);
  return DiagnosticCode::syntax;
}

StateParams numbers(std::vector<int> ns) {
  StateParams p;
  p.numbers = std::move(ns);
  return p;
}

StateParams amplitudes(std::vector<Complex> as) {
  StateParams p;
  p.amplitudes = std::move(as);
  return p;
}

}  // namespace

TEST_CASE("mixture text lowers to the separable family") {
  const auto rho = from_text("mix 0.5: |1,0>; 0.5: |0,1>");
  CHECK(ensembles_close(rho, build_state(StateFamily::sep_number2, numbers({1, 0}))));
}

TEST_CASE("sum of fock kets lowers to the entangled family") {
  const auto rho = from_text("(|1,0> + |0,1>)");
  const auto expected = build_state(StateFamily::ent_number2, numbers({1, 0}));
  CHECK(ensembles_close(rho, expected));
  REQUIRE(rho.terms().size() == 4);
  for (const auto& t : rho.terms()) {
    CHECK(std::abs(t.weight - Complex{0.5, 0.0}) < 1e-14);
  }
  // normalization ignores an overall scale
  CHECK(ensembles_close(from_text("(|1,0> + |0,1>)/2"), expected));
  CHECK(ensembles_close(from_text("3*|1,0> + 3*|0,1>"), expected));
}

TEST_CASE("sum of coherent kets recomputes the normalization constant") {
  const auto rho = from_text("|c:1, c:0> + |c:0, c:1>");
  CHECK(ensembles_close(
      rho, build_state(StateFamily::ent_coherent2,
                       amplitudes({{1.0, 0.0}, {0.0, 0.0}}))));
  const double n2 = 1.0 / (2.0 + 2.0 * std::exp(-1.0));
  for (const auto& t : rho.terms()) {
    CHECK(std::abs(t.weight - Complex{n2, 0.0}) < 1e-14);
  }
}

TEST_CASE("single and scaled kets lower to one dyad") {
  const auto rho = from_text("|2,1>");
  REQUIRE(rho.terms().size() == 1);
  CHECK(rho.terms()[0].weight == Complex{1.0, 0.0});
  CHECK(ensembles_close(from_text("2*|2,1>"), rho));
  CHECK(ensembles_close(from_text("0.5i*|2,1>"), rho));  // phase is unobservable
}

TEST_CASE("complex literals in scalars and slots") {
  const auto rho = from_text("|c:1+2i, c:-0.5>");
  REQUIRE(rho.terms().size() == 1);
  CHECK(rho.terms()[0].ket == ProductKet::coherent({{1.0, 2.0}, {-0.5, 0.0}}));

  CHECK(from_text("|c:i>").terms()[0].ket == ProductKet::coherent({{0.0, 1.0}}));
  CHECK(from_text("|c:-i>").terms()[0].ket == ProductKet::coherent({{0.0, -1.0}}));
  CHECK(from_text("|c:2-i>").terms()[0].ket == ProductKet::coherent({{2.0, -1.0}}));
  CHECK(from_text("|c:1e-3>").terms()[0].ket ==
        ProductKet::coherent({{1e-3, 0.0}}));

  // relative phases survive lowering: weight(k1,k2) = c1 conj(c2) / norm^2
  const auto superpos = from_text("i*|1,0> - |0,1>");
  bool found = false;
  for (const auto& t : superpos.terms()) {
    if (t.ket == ProductKet::fock({1, 0}) && t.bra == ProductKet::fock({0, 1})) {
      CHECK(std::abs(t.weight - Complex{0.0, -0.5}) < 1e-14);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("diagnostic codes carry positions") {
  CHECK(code_of("|1,0> @") == DiagnosticCode::lexical);
  CHECK(code_of("$") == DiagnosticCode::lexical);
  CHECK(code_of("|1,0") == DiagnosticCode::syntax);
  CHECK(code_of("mix 0.5 |1,0>") == DiagnosticCode::syntax);
  CHECK(code_of("|1.5>") == DiagnosticCode::syntax);
  CHECK(code_of("") == DiagnosticCode::syntax);
  CHECK(code_of("|1, c:0>") == DiagnosticCode::kind_mismatch);
  CHECK(code_of("|1,0> + |c:1,c:0>") == DiagnosticCode::kind_mismatch);
  CHECK(code_of("|1,0> + |1>") == DiagnosticCode::mode_mismatch);
  CHECK(code_of("mix 0.3: |1>; 0.4: |0>") == DiagnosticCode::probability_sum);
  CHECK(code_of("mix 1.5: |1>; -0.5: |0>") == DiagnosticCode::probability_sum);
}

TEST_CASE("syntax errors list what was expected") {
  try {
    dsl::parse("mix 0.5 |1,0>");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == DiagnosticCode::syntax);
    REQUIRE(!e.expected().empty());
    CHECK(e.expected()[0].find(":") != std::string::npos);
  }
}

TEST_CASE("round trip through render for every built-in family") {
  StateParams fp;
  fp.ket = ProductKet::coherent({{0.25, -0.75}, {0.0, 0.0}});
  const std::vector<OperatorEnsemble> states = {
      build_state(StateFamily::sep_number2, numbers({1, 0})),
      build_state(StateFamily::ent_number2, numbers({1, 0})),
      build_state(StateFamily::sep_coherent2, amplitudes({{1.0, 0.0}, {0.0, 0.0}})),
      build_state(StateFamily::ent_coherent2, amplitudes({{0.3, 0.4}, {0.0, -0.2}})),
      build_state(StateFamily::sep_number3, numbers({0, 1, 2})),
      build_state(StateFamily::ent_number3, numbers({0, 1, 2})),
      build_state(StateFamily::sep_coherent3,
                  amplitudes({{0.0, 0.0}, {1.0, 0.0}, {std::sqrt(2.0), 0.0}})),
      build_state(StateFamily::ent_coherent3,
                  amplitudes({{0.3, 0.4}, {0.7, 0.0}, {0.2, -0.5}})),
      build_state(StateFamily::factorizable, fp),
  };
  for (const auto& rho : states) {
    const std::string text = dsl::render(rho);
    CHECK(ensembles_close(from_text(text), rho, 1e-12));
  }
}

TEST_CASE("every built-in family has a hand-written equivalent") {
  CHECK(ensembles_close(from_text("mix 0.5: |1,0>; 0.5: |0,1>"),
                        build_state(StateFamily::sep_number2, numbers({1, 0}))));
  CHECK(ensembles_close(from_text("|1,0> + |0,1>"),
                        build_state(StateFamily::ent_number2, numbers({1, 0}))));
  CHECK(ensembles_close(from_text("mix 0.5: |c:1,c:0>; 0.5: |c:0,c:1>"),
                        build_state(StateFamily::sep_coherent2,
                                    amplitudes({{1.0, 0.0}, {0.0, 0.0}}))));
  CHECK(ensembles_close(from_text("|c:1,c:0> + |c:0,c:1>"),
                        build_state(StateFamily::ent_coherent2,
                                    amplitudes({{1.0, 0.0}, {0.0, 0.0}}))));
  CHECK(ensembles_close(from_text("mix 0.5: |0,1,2>; 0.5: |1,2,0>"),
                        build_state(StateFamily::sep_number3, numbers({0, 1, 2}))));
  CHECK(ensembles_close(from_text("|0,1,2> + |1,2,0>"),
                        build_state(StateFamily::ent_number3, numbers({0, 1, 2}))));
  const std::string r2 = "1.4142135623730951";
  CHECK(ensembles_close(
      from_text("mix 0.5: |c:0,c:1,c:" + r2 + ">; 0.5: |c:1,c:" + r2 + ",c:0>"),
      build_state(StateFamily::sep_coherent3,
                  amplitudes({{0.0, 0.0}, {1.0, 0.0}, {std::sqrt(2.0), 0.0}}))));
  CHECK(ensembles_close(
      from_text("|c:0,c:1,c:" + r2 + "> + |c:1,c:" + r2 + ",c:0>"),
      build_state(StateFamily::ent_coherent3,
                  amplitudes({{0.0, 0.0}, {1.0, 0.0}, {std::sqrt(2.0), 0.0}}))));
  StateParams fp;
  fp.ket = ProductKet::fock({1, 0});
  CHECK(ensembles_close(from_text("|1,0>"),
                        build_state(StateFamily::factorizable, fp)));
}

TEST_CASE("render rejects ensembles outside the language") {
  // mixture of two distinct entangled states: hermitian but rank two with
  // cross dyads
  const auto e1 = build_state(StateFamily::ent_number2, numbers({1, 0}));
  const auto e2 = build_state(StateFamily::ent_number2, numbers({2, 0}));
  const std::vector<double> probs{0.5, 0.5};
  const std::vector<OperatorEnsemble> comps{e1, e2};
  const auto mixed = mixture(probs, comps);
  CHECK_THROWS_AS(dsl::render(mixed), std::invalid_argument);
}

TEST_CASE("whitespace is insignificant") {
  const auto a = from_text("mix 0.5: |1,0>; 0.5: |0,1>");
  const auto b = from_text("mix\n  0.5 :|1 , 0> ;\n  0.5: | 0,1 >");
  CHECK(ensembles_close(a, b, 1e-15));
}
