#include "weylcorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>
#include <utility>

#include <json.hpp>

namespace weylcorr {

namespace {

void check_same_shape(const ProductKet& a, const ProductKet& b) {
  if (a.mode_count() != b.mode_count()) {
    throw std::invalid_argument("product kets differ in mode count");
  }
  if (a.kind() != b.kind()) {
    throw std::invalid_argument("product kets differ in kind (fock vs coherent)");
  }
}

Complex coherent_overlap(Complex a, Complex b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

}  // namespace

ProductKet ProductKet::fock(std::vector<int> occupations) {
  if (occupations.empty()) {
    throw std::invalid_argument("product ket needs at least one mode");
  }
  for (int n : occupations) {
    if (n < 0) throw std::invalid_argument("fock occupation must be >= 0");
  }
  ProductKet k;
  k.kind_ = ModeKind::fock;
  k.size_ = occupations.size();
  k.occupations_ = std::move(occupations);
  return k;
}

ProductKet ProductKet::coherent(std::vector<Complex> amplitudes) {
  if (amplitudes.empty()) {
    throw std::invalid_argument("product ket needs at least one mode");
  }
  ProductKet k;
  k.kind_ = ModeKind::coherent;
  k.size_ = amplitudes.size();
  k.amplitudes_ = std::move(amplitudes);
  return k;
}

int ProductKet::occupation(std::size_t mode) const {
  if (kind_ != ModeKind::fock) throw std::logic_error("not a fock ket");
  return occupations_.at(mode);
}

Complex ProductKet::amplitude(std::size_t mode) const {
  if (kind_ != ModeKind::coherent) throw std::logic_error("not a coherent ket");
  return amplitudes_.at(mode);
}

ProductKet ProductKet::without_mode(std::size_t mode) const {
  if (mode >= size_) throw std::out_of_range("mode index out of range");
  if (size_ == 1) {
    throw std::invalid_argument("cannot remove the last remaining mode");
  }
  if (kind_ == ModeKind::fock) {
    std::vector<int> rest = occupations_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(mode));
    return fock(std::move(rest));
  }
  std::vector<Complex> rest = amplitudes_;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(mode));
  return coherent(std::move(rest));
}

bool ProductKet::operator==(const ProductKet& other) const {
  return kind_ == other.kind_ && occupations_ == other.occupations_ &&
         amplitudes_ == other.amplitudes_;
}

bool ProductKet::operator<(const ProductKet& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  if (size_ != other.size_) return size_ < other.size_;
  if (kind_ == ModeKind::fock) return occupations_ < other.occupations_;
  for (std::size_t i = 0; i < size_; ++i) {
    const auto a = amplitudes_[i];
    const auto b = other.amplitudes_[i];
    if (a.real() != b.real()) return a.real() < b.real();
    if (a.imag() != b.imag()) return a.imag() < b.imag();
  }
  return false;
}

Complex overlap(const ProductKet& a, const ProductKet& b) {
  check_same_shape(a, b);
  Complex out{1.0, 0.0};
  for (std::size_t m = 0; m < a.mode_count(); ++m) {
    if (a.kind() == ModeKind::fock) {
      if (a.occupation(m) != b.occupation(m)) return {0.0, 0.0};
    } else {
      out *= coherent_overlap(a.amplitude(m), b.amplitude(m));
    }
  }
  return out;
}

OperatorEnsemble::OperatorEnsemble(std::vector<EnsembleTerm> terms) {
  if (terms.empty()) {
    throw std::invalid_argument("ensemble needs at least one term");
  }
  kind_ = terms.front().ket.kind();
  modes_ = terms.front().ket.mode_count();
  for (const auto& t : terms) {
    check_same_shape(t.ket, t.bra);
    if (t.ket.kind() != kind_ || t.ket.mode_count() != modes_) {
      throw std::invalid_argument("ensemble terms must share mode count and kind");
    }
  }
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    return std::tie(x.ket, x.bra) < std::tie(y.ket, y.bra);
  });
  // merge duplicate dyads, drop exact zeros
  for (auto& t : terms) {
    if (terms_.empty() || !(terms_.back().ket == t.ket && terms_.back().bra == t.bra)) {
      terms_.push_back(std::move(t));
    } else {
      terms_.back().weight += t.weight;
    }
  }
  std::erase_if(terms_, [](const EnsembleTerm& t) {
    return t.weight == Complex{0.0, 0.0};
  });
  if (terms_.empty()) {
    throw std::invalid_argument("ensemble collapsed to zero");
  }
}

Complex OperatorEnsemble::trace() const {
  Complex out{0.0, 0.0};
  for (const auto& t : terms_) {
    out += t.weight * overlap(t.bra, t.ket);
  }
  return out;
}

bool OperatorEnsemble::hermitian_paired(double tol) const {
  for (const auto& t : terms_) {
    bool found = false;
    for (const auto& u : terms_) {
      if (u.ket == t.bra && u.bra == t.ket &&
          std::abs(u.weight - std::conj(t.weight)) <= tol) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

double OperatorEnsemble::mean_photon_number(std::size_t mode) const {
  if (mode >= modes_) throw std::out_of_range("mode index out of range");
  // Tr[|k><b| n_m] = k_m <b|k> (fock) or conj(b_m) k_m <b|k> (coherent)
  Complex out{0.0, 0.0};
  for (const auto& t : terms_) {
    const Complex ov = overlap(t.bra, t.ket);
    if (kind_ == ModeKind::fock) {
      out += t.weight * static_cast<double>(t.ket.occupation(mode)) * ov;
    } else {
      out += t.weight * std::conj(t.bra.amplitude(mode)) * t.ket.amplitude(mode) * ov;
    }
  }
  return out.real();
}

OperatorEnsemble partial_trace(const OperatorEnsemble& rho, std::size_t mode) {
  if (mode >= rho.mode_count()) {
    throw std::out_of_range("partial_trace: mode index out of range");
  }
  std::vector<EnsembleTerm> out;
  out.reserve(rho.terms().size());
  for (const auto& t : rho.terms()) {
    Complex factor;
    if (rho.kind() == ModeKind::fock) {
      factor = t.bra.occupation(mode) == t.ket.occupation(mode) ? Complex{1.0, 0.0}
                                                                : Complex{0.0, 0.0};
    } else {
      factor = coherent_overlap(t.bra.amplitude(mode), t.ket.amplitude(mode));
    }
    if (factor == Complex{0.0, 0.0}) continue;
    out.push_back({t.weight * factor, t.ket.without_mode(mode), t.bra.without_mode(mode)});
  }
  if (out.empty()) {
    throw std::invalid_argument("partial_trace: ensemble traced to zero");
  }
  return OperatorEnsemble(std::move(out));
}

OperatorEnsemble pure_superposition(std::span<const ProductKet> kets,
                                    std::span<const Complex> coefficients) {
  if (kets.empty() || kets.size() != coefficients.size()) {
    throw std::invalid_argument("superposition needs matching kets and coefficients");
  }
  Complex norm2{0.0, 0.0};
  for (std::size_t i = 0; i < kets.size(); ++i) {
    for (std::size_t j = 0; j < kets.size(); ++j) {
      norm2 += std::conj(coefficients[i]) * coefficients[j] * overlap(kets[i], kets[j]);
    }
  }
  if (!(norm2.real() > 0.0)) {
    throw std::invalid_argument("superposition has zero norm");
  }
  const double inv = 1.0 / norm2.real();
  std::vector<EnsembleTerm> terms;
  terms.reserve(kets.size() * kets.size());
  for (std::size_t i = 0; i < kets.size(); ++i) {
    for (std::size_t j = 0; j < kets.size(); ++j) {
      terms.push_back({coefficients[i] * std::conj(coefficients[j]) * inv,
                       kets[i], kets[j]});
    }
  }
  return OperatorEnsemble(std::move(terms));
}

OperatorEnsemble mixture(std::span<const double> probabilities,
                         std::span<const OperatorEnsemble> components,
                         double tol) {
  if (probabilities.empty() || probabilities.size() != components.size()) {
    throw std::invalid_argument("mixture needs matching probabilities and components");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p > 0.0)) throw std::invalid_argument("mixture probabilities must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("mixture probabilities must sum to 1");
  }
  std::vector<EnsembleTerm> terms;
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (const auto& t : components[i].terms()) {
      terms.push_back({probabilities[i] * t.weight, t.ket, t.bra});
    }
  }
  return OperatorEnsemble(std::move(terms));
}

namespace {

OperatorEnsemble two_ket_mixture(const ProductKet& k1, const ProductKet& k2) {
  return OperatorEnsemble({{Complex{0.5, 0.0}, k1, k1}, {Complex{0.5, 0.0}, k2, k2}});
}

OperatorEnsemble two_ket_entangled(const ProductKet& k1, const ProductKet& k2) {
  const ProductKet kets[] = {k1, k2};
  const Complex coeff[] = {Complex{1.0, 0.0}, Complex{1.0, 0.0}};
  return pure_superposition(kets, coeff);
}

void require_count(std::size_t have, std::size_t want, const char* what) {
  if (have != want) {
    throw std::invalid_argument(std::string("build_state: expected ") +
                                std::to_string(want) + " " + what + ", got " +
                                std::to_string(have));
  }
}

}  // namespace

OperatorEnsemble build_state(StateFamily family, const StateParams& params) {
  const auto& n = params.numbers;
  const auto& a = params.amplitudes;
  switch (family) {
    case StateFamily::sep_number2:
      require_count(n.size(), 2, "occupation numbers");
      return two_ket_mixture(ProductKet::fock({n[0], n[1]}),
                             ProductKet::fock({n[1], n[0]}));
    case StateFamily::ent_number2:
      require_count(n.size(), 2, "occupation numbers");
      return two_ket_entangled(ProductKet::fock({n[0], n[1]}),
                               ProductKet::fock({n[1], n[0]}));
    case StateFamily::sep_coherent2:
      require_count(a.size(), 2, "amplitudes");
      return two_ket_mixture(ProductKet::coherent({a[0], a[1]}),
                             ProductKet::coherent({a[1], a[0]}));
    case StateFamily::ent_coherent2:
      require_count(a.size(), 2, "amplitudes");
      return two_ket_entangled(ProductKet::coherent({a[0], a[1]}),
                               ProductKet::coherent({a[1], a[0]}));
    case StateFamily::sep_number3:
      require_count(n.size(), 3, "occupation numbers");
      return two_ket_mixture(ProductKet::fock({n[0], n[1], n[2]}),
                             ProductKet::fock({n[1], n[2], n[0]}));
    case StateFamily::ent_number3:
      require_count(n.size(), 3, "occupation numbers");
      return two_ket_entangled(ProductKet::fock({n[0], n[1], n[2]}),
                               ProductKet::fock({n[1], n[2], n[0]}));
    case StateFamily::sep_coherent3:
      require_count(a.size(), 3, "amplitudes");
      return two_ket_mixture(ProductKet::coherent({a[0], a[1], a[2]}),
                             ProductKet::coherent({a[1], a[2], a[0]}));
    case StateFamily::ent_coherent3:
      require_count(a.size(), 3, "amplitudes");
      return two_ket_entangled(ProductKet::coherent({a[0], a[1], a[2]}),
                               ProductKet::coherent({a[1], a[2], a[0]}));
    case StateFamily::factorizable:
      if (!params.ket) {
        throw std::invalid_argument("build_state: factorizable needs a product ket");
      }
      return OperatorEnsemble({{Complex{1.0, 0.0}, *params.ket, *params.ket}});
  }
  throw std::invalid_argument("build_state: unknown family");
}

std::string_view family_name(StateFamily family) {
  switch (family) {
    case StateFamily::sep_number2: return "sep_number2";
    case StateFamily::ent_number2: return "ent_number2";
    case StateFamily::sep_coherent2: return "sep_coherent2";
    case StateFamily::ent_coherent2: return "ent_coherent2";
    case StateFamily::sep_number3: return "sep_number3";
    case StateFamily::ent_number3: return "ent_number3";
    case StateFamily::sep_coherent3: return "sep_coherent3";
    case StateFamily::ent_coherent3: return "ent_coherent3";
    case StateFamily::factorizable: return "factorizable";
  }
  return "?";
}

std::optional<StateFamily> family_from_name(std::string_view name) {
  for (StateFamily f : {StateFamily::sep_number2, StateFamily::ent_number2,
                        StateFamily::sep_coherent2, StateFamily::ent_coherent2,
                        StateFamily::sep_number3, StateFamily::ent_number3,
                        StateFamily::sep_coherent3, StateFamily::ent_coherent3,
                        StateFamily::factorizable}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::size_t family_mode_count(StateFamily family) {
  switch (family) {
    case StateFamily::sep_number2:
    case StateFamily::ent_number2:
    case StateFamily::sep_coherent2:
    case StateFamily::ent_coherent2:
      return 2;
    case StateFamily::sep_number3:
    case StateFamily::ent_number3:
    case StateFamily::sep_coherent3:
    case StateFamily::ent_coherent3:
      return 3;
    case StateFamily::factorizable:
      return 0;  // taken from the ket
  }
  return 0;
}

double DriveParams::default_e_charge() {
  return std::sqrt(4.0 * std::numbers::pi / 137.0);
}

double DriveParams::q() const { return xi * e_charge / std::sqrt(2.0); }

std::string ensemble_to_json(const OperatorEnsemble& rho, int indent) {
  nlohmann::json j;
  j["kind"] = rho.kind() == ModeKind::fock ? "fock" : "coherent";
  j["modes"] = rho.mode_count();
  auto& terms = j["terms"] = nlohmann::json::array();
  auto ket_json = [&](const ProductKet& k) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t m = 0; m < k.mode_count(); ++m) {
      if (k.kind() == ModeKind::fock) {
        out.push_back(k.occupation(m));
      } else {
        out.push_back({{"re", k.amplitude(m).real()}, {"im", k.amplitude(m).imag()}});
      }
    }
    return out;
  };
  for (const auto& t : rho.terms()) {
    terms.push_back({{"weight", {{"re", t.weight.real()}, {"im", t.weight.imag()}}},
                     {"ket", ket_json(t.ket)},
                     {"bra", ket_json(t.bra)}});
  }
  return j.dump(indent);
}

OperatorEnsemble ensemble_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "fock" && kind != "coherent") {
    throw std::invalid_argument("ensemble json: kind must be 'fock' or 'coherent'");
  }
  auto ket_from = [&](const nlohmann::json& arr) {
    if (kind == "fock") {
      std::vector<int> ns;
      for (const auto& v : arr) ns.push_back(v.get<int>());
      return ProductKet::fock(std::move(ns));
    }
    std::vector<Complex> amps;
    for (const auto& v : arr) {
      amps.emplace_back(v.at("re").get<double>(), v.at("im").get<double>());
    }
    return ProductKet::coherent(std::move(amps));
  };
  std::vector<EnsembleTerm> terms;
  for (const auto& t : j.at("terms")) {
    terms.push_back({Complex{t.at("weight").at("re").get<double>(),
                             t.at("weight").at("im").get<double>()},
                     ket_from(t.at("ket")), ket_from(t.at("bra"))});
  }
  return OperatorEnsemble(std::move(terms));
}

}  // namespace weylcorr
