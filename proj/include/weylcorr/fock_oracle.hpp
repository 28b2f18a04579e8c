#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "weylcorr/states.hpp"
#include "weylcorr/weyl.hpp"

// Brute-force verification engine over a truncated Fock basis. Displacement
// operators are built by exponentiating ladder matrices, never from the
// closed-form matrix elements, so the two computation routes stay
// independent of each other.
namespace weylcorr::oracle {

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

// Raised when a truncation guard would let truncation error contaminate a
// comparison (tail mass, displacement norm, or dimension limits).
class GuardViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TruncatedSpace {
  int cutoff;  // per-mode basis |0> .. |cutoff>
  int modes;

  TruncatedSpace(int cutoff_, int modes_);

  int dim_per_mode() const { return cutoff + 1; }
  long total_dimension() const;

  // vectors of this length are always fine; dense matrices only below this
  static constexpr long kMaxTotalDimension = 100000;
  static constexpr long kMaxDenseDimension = 2048;
};

// a|n> = sqrt(n)|n-1> on the truncated basis; a_dagger is its adjoint.
DenseMatrix annihilation_matrix(int cutoff);
DenseMatrix creation_matrix(int cutoff);

// exp(M) by scaling-and-squaring with a truncated Taylor core.
DenseMatrix matrix_exponential(const DenseMatrix& m);

// D(z) = exp(z a_dagger - z* a) on one truncated mode.
// Guard: |z| must stay small against sqrt(cutoff).
DenseMatrix displacement_matrix(Complex z, int cutoff);

// Poisson tail mass sum_{n > cutoff} e^{-|A|^2} |A|^(2n) / n!.
double coherent_tail_mass(Complex amplitude, int cutoff);

// One mode slot as a truncated basis vector (unit vector for Fock,
// truncated expansion e^{-|A|^2/2} A^n / sqrt(n!) for coherent).
DenseVector embed_mode_fock(int occupation, int cutoff);
DenseVector embed_mode_coherent(Complex amplitude, int cutoff);

// Full product-space vector for a product ket (tensor product of the
// per-mode vectors).
DenseVector embed_product_ket(const ProductKet& ket, const TruncatedSpace& space);

struct DenseOperator {
  DenseMatrix matrix;
  TruncatedSpace space;
};

// Dense density matrix of a dyad-sum ensemble. Requires the total dimension
// to stay below kMaxDenseDimension.
DenseOperator embed_state(const OperatorEnsemble& rho, const TruncatedSpace& space);

// Tr[rho D(lambda_1) x ... x D(lambda_k)] computed numerically: per-mode
// displacement matrices applied to the embedded kets by tensor-index
// contraction (the joint matrix is never materialized).
Complex oracle_weyl(const OperatorEnsemble& rho, const DriveAt& at,
                    const TruncatedSpace& space);

// Index-contraction partial trace over one mode of a dense operator.
DenseOperator oracle_partial_trace(const DenseOperator& rho, int mode);

}  // namespace weylcorr::oracle
