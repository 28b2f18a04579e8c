#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weylcorr {

using Complex = std::complex<double>;

enum class ModeKind { fock, coherent };

// A multimode pure product ket. Every mode slot is of the same kind:
// either a Fock occupation number or a coherent amplitude.
class ProductKet {
 public:
  static ProductKet fock(std::vector<int> occupations);
  static ProductKet coherent(std::vector<Complex> amplitudes);

  ModeKind kind() const { return kind_; }
  std::size_t mode_count() const { return size_; }

  int occupation(std::size_t mode) const;
  Complex amplitude(std::size_t mode) const;
  const std::vector<int>& occupations() const { return occupations_; }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }

  // Ket with one mode removed (used by partial traces).
  ProductKet without_mode(std::size_t mode) const;

  bool operator==(const ProductKet& other) const;
  // Total order used for canonical term ordering.
  bool operator<(const ProductKet& other) const;

 private:
  ProductKet() = default;
  ModeKind kind_ = ModeKind::fock;
  std::size_t size_ = 0;
  std::vector<int> occupations_;
  std::vector<Complex> amplitudes_;
};

// <a|b>: Kronecker delta per mode for Fock kets,
// exp(-|A|^2/2 - |B|^2/2 + conj(A) B) per mode for coherent kets.
Complex overlap(const ProductKet& a, const ProductKet& b);

struct EnsembleTerm {
  Complex weight;
  ProductKet ket;
  ProductKet bra;

  bool operator==(const EnsembleTerm& other) const = default;
};

// A density operator as a finite weighted sum of |ket><bra| dyads.
// Terms are kept in canonical (sorted, merged) order so equality and
// Hermiticity pairing are deterministic.
class OperatorEnsemble {
 public:
  explicit OperatorEnsemble(std::vector<EnsembleTerm> terms);

  const std::vector<EnsembleTerm>& terms() const { return terms_; }
  ModeKind kind() const { return kind_; }
  std::size_t mode_count() const { return modes_; }

  // Tr rho = sum_i w_i <bra_i|ket_i>.
  Complex trace() const;

  // True when every term (w, k, b) has a partner (conj w, b, k) within tol.
  bool hermitian_paired(double tol = 1e-12) const;

  // Tr[rho n_hat_mode], closed form; real part of the dyad sum.
  double mean_photon_number(std::size_t mode) const;

  bool operator==(const OperatorEnsemble& other) const = default;

 private:
  std::vector<EnsembleTerm> terms_;
  ModeKind kind_ = ModeKind::fock;
  std::size_t modes_ = 0;
};

// Traces out one mode in closed form: each dyad |k><b| contributes
// weight * <b_mode|k_mode> on the remaining modes.
OperatorEnsemble partial_trace(const OperatorEnsemble& rho, std::size_t mode);

// Normalized pure state sum_i c_i |k_i> as a dyad sum; the coefficients are
// rescaled so the result has unit trace.
OperatorEnsemble pure_superposition(std::span<const ProductKet> kets,
                                    std::span<const Complex> coefficients);

// Probabilistic mixture of ensembles; probabilities must be positive and
// sum to 1 within tol.
OperatorEnsemble mixture(std::span<const double> probabilities,
                         std::span<const OperatorEnsemble> components,
                         double tol = 1e-9);

// The paper-family builders. Number families take N_i, coherent families
// take A_i; factorizable takes a single product ket.
enum class StateFamily {
  sep_number2,
  ent_number2,
  sep_coherent2,
  ent_coherent2,
  sep_number3,
  ent_number3,
  sep_coherent3,
  ent_coherent3,
  factorizable,
};

struct StateParams {
  std::vector<int> numbers;        // N_1 .. N_k
  std::vector<Complex> amplitudes; // A_1 .. A_k
  std::optional<ProductKet> ket;   // factorizable only
};

OperatorEnsemble build_state(StateFamily family, const StateParams& params);

std::string_view family_name(StateFamily family);
std::optional<StateFamily> family_from_name(std::string_view name);
std::size_t family_mode_count(StateFamily family);

// Drive parameterization. q is recomputed from xi and the charge, never
// stored, so it cannot go stale.
struct DriveParams {
  double xi = 1.0;
  double e_charge = default_e_charge();
  std::vector<double> omegas;

  double q() const;
  static double default_e_charge();  // sqrt(4*pi/137)
};

// JSON round-trip of an ensemble (mode kind + term list with re/im weights).
std::string ensemble_to_json(const OperatorEnsemble& rho, int indent = -1);
OperatorEnsemble ensemble_from_json(std::string_view text);

}  // namespace weylcorr
