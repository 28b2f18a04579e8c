#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weylcorr/states.hpp"

// Small textual language for photon states:
//
//   state   := mixture | super
//   mixture := "mix" weighted (";" weighted)*
//   weighted:= number ":" super
//   super   := term (("+"|"-") term)*
//   term    := [scalar "*"] ket | "(" super ")" [ "/" scalar ]
//   ket     := "|" slot ("," slot)* ">"
//   slot    := integer | "c:" complex
//   complex := ["-"] number [("+"|"-") [number] "i"] | ["-"] [number] "i"
//
// Superpositions are renormalized on lowering; mixture probabilities must be
// positive and sum to 1. Whitespace is insignificant outside numbers.
namespace weylcorr::dsl {

enum class DiagnosticCode {
  lexical,
  syntax,
  mode_mismatch,
  kind_mismatch,
  probability_sum,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(DiagnosticCode code, int line, int column, std::string message,
             std::vector<std::string> expected = {});

  DiagnosticCode code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  DiagnosticCode code_;
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

struct ScaledKet {
  Complex coefficient;
  ProductKet ket;
};

// A normalized parse result: one weighted superposition per mixture
// component (plain superpositions are a single component of probability 1).
struct StateExpr {
  struct Component {
    double probability;
    std::vector<ScaledKet> kets;
  };
  std::vector<Component> components;
};

StateExpr parse(std::string_view text);

// Dyad-sum lowering; superpositions produce cross dyads, mixtures weighted
// unions. The result satisfies the ensemble invariants.
OperatorEnsemble lower(const StateExpr& expr);

// Inverse of parse+lower for ensembles expressible in the language:
// diagonal ensembles render as a mixture, rank-one ensembles as a
// superposition. Throws std::invalid_argument otherwise.
std::string render(const OperatorEnsemble& rho);

}  // namespace weylcorr::dsl
