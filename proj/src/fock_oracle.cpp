#include "weylcorr/fock_oracle.hpp"

#include <cmath>
#include <string>

namespace weylcorr::oracle {

namespace {

constexpr double kTailMassLimit = 1e-12;

long pow_long(long base, int exp) {
  long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// Contract the per-mode matrix into the product-space vector along `mode`.
// Basis index layout: mode 0 is the slowest index.
DenseVector apply_mode_matrix(const DenseMatrix& m, const DenseVector& v,
                              int mode, const TruncatedSpace& space) {
  const long d = space.dim_per_mode();
  const long inner = pow_long(d, space.modes - 1 - mode);  // stride of `mode`
  const long outer = v.size() / (d * inner);
  DenseVector out = DenseVector::Zero(v.size());
  for (long o = 0; o < outer; ++o) {
    for (long in = 0; in < inner; ++in) {
      const long base = o * d * inner + in;
      for (long row = 0; row < d; ++row) {
        Complex acc{0.0, 0.0};
        for (long col = 0; col < d; ++col) {
          acc += m(row, col) * v(base + col * inner);
        }
        out(base + row * inner) = acc;
      }
    }
  }
  return out;
}

}  // namespace

TruncatedSpace::TruncatedSpace(int cutoff_, int modes_)
    : cutoff(cutoff_), modes(modes_) {
  if (cutoff < 1) throw GuardViolation("truncated space: cutoff must be >= 1");
  if (modes < 1) throw GuardViolation("truncated space: modes must be >= 1");
  double dim = 1.0;
  for (int i = 0; i < modes; ++i) dim *= cutoff + 1;
  if (dim > static_cast<double>(kMaxTotalDimension)) {
    throw GuardViolation("truncated space: total dimension exceeds " +
                         std::to_string(kMaxTotalDimension));
  }
}

long TruncatedSpace::total_dimension() const {
  return pow_long(dim_per_mode(), modes);
}

DenseMatrix annihilation_matrix(int cutoff) {
  if (cutoff < 1) throw GuardViolation("annihilation_matrix: cutoff must be >= 1");
  DenseMatrix a = DenseMatrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

DenseMatrix creation_matrix(int cutoff) {
  return annihilation_matrix(cutoff).adjoint();
}

DenseMatrix matrix_exponential(const DenseMatrix& m) {
  // Scale until the 1-norm is below 1/2, run a fixed-degree Taylor sum,
  // then square back up.
  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  const DenseMatrix a = m / std::pow(2.0, squarings);
  const long n = m.rows();
  DenseMatrix result = DenseMatrix::Identity(n, n);
  DenseMatrix term = DenseMatrix::Identity(n, n);
  constexpr int kTaylorDegree = 18;  // 0.5^19/19! ~ 1.6e-23
  for (int k = 1; k <= kTaylorDegree; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) {
    result = result * result;
  }
  return result;
}

DenseMatrix displacement_matrix(Complex z, int cutoff) {
  if (std::abs(z) * std::sqrt(static_cast<double>(cutoff)) >
      static_cast<double>(cutoff) / 4.0) {
    throw GuardViolation("displacement_matrix: |z| too large for cutoff " +
                         std::to_string(cutoff));
  }
  const DenseMatrix a = annihilation_matrix(cutoff);
  const DenseMatrix generator = z * a.adjoint() - std::conj(z) * a;
  return matrix_exponential(generator);
}

double coherent_tail_mass(Complex amplitude, int cutoff) {
  const double mean = std::norm(amplitude);
  double term = std::exp(-mean);  // P(n = 0)
  double cumulative = term;
  for (int n = 1; n <= cutoff; ++n) {
    term *= mean / n;
    cumulative += term;
  }
  return std::max(0.0, 1.0 - cumulative);
}

DenseVector embed_mode_fock(int occupation, int cutoff) {
  if (occupation < 0) throw GuardViolation("embed: occupation must be >= 0");
  if (occupation > cutoff) {
    throw GuardViolation("embed: occupation " + std::to_string(occupation) +
                         " exceeds cutoff " + std::to_string(cutoff));
  }
  DenseVector v = DenseVector::Zero(cutoff + 1);
  v(occupation) = 1.0;
  return v;
}

DenseVector embed_mode_coherent(Complex amplitude, int cutoff) {
  if (coherent_tail_mass(amplitude, cutoff) >= kTailMassLimit) {
    throw GuardViolation("embed: coherent tail mass above 1e-12 at cutoff " +
                         std::to_string(cutoff));
  }
  DenseVector v(cutoff + 1);
  Complex coeff = std::exp(Complex{-0.5 * std::norm(amplitude), 0.0});
  for (int n = 0; n <= cutoff; ++n) {
    v(n) = coeff;
    coeff *= amplitude / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

DenseVector embed_product_ket(const ProductKet& ket, const TruncatedSpace& space) {
  if (static_cast<int>(ket.mode_count()) != space.modes) {
    throw GuardViolation("embed: mode count mismatch");
  }
  DenseVector out(1);
  out(0) = 1.0;
  for (std::size_t m = 0; m < ket.mode_count(); ++m) {
    const DenseVector mode_vec =
        ket.kind() == ModeKind::fock
            ? embed_mode_fock(ket.occupation(m), space.cutoff)
            : embed_mode_coherent(ket.amplitude(m), space.cutoff);
    DenseVector next(out.size() * mode_vec.size());
    for (long i = 0; i < out.size(); ++i) {
      next.segment(i * mode_vec.size(), mode_vec.size()) = out(i) * mode_vec;
    }
    out.swap(next);
  }
  return out;
}

DenseOperator embed_state(const OperatorEnsemble& rho, const TruncatedSpace& space) {
  const long dim = space.total_dimension();
  if (dim > TruncatedSpace::kMaxDenseDimension) {
    throw GuardViolation("embed_state: dense dimension exceeds " +
                         std::to_string(TruncatedSpace::kMaxDenseDimension));
  }
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  for (const auto& term : rho.terms()) {
    const DenseVector k = embed_product_ket(term.ket, space);
    const DenseVector b = embed_product_ket(term.bra, space);
    out.noalias() += term.weight * (k * b.adjoint());
  }
  return {std::move(out), space};
}

Complex oracle_weyl(const OperatorEnsemble& rho, const DriveAt& at,
                    const TruncatedSpace& space) {
  if (at.lambdas.size() != rho.mode_count() ||
      static_cast<int>(rho.mode_count()) != space.modes) {
    throw GuardViolation("oracle_weyl: mode count mismatch");
  }
  std::vector<DenseMatrix> displacements;
  displacements.reserve(at.lambdas.size());
  for (Complex lambda : at.lambdas) {
    displacements.push_back(displacement_matrix(lambda, space.cutoff));
  }
  Complex total{0.0, 0.0};
  for (const auto& term : rho.terms()) {
    DenseVector v = embed_product_ket(term.ket, space);
    for (int m = 0; m < space.modes; ++m) {
      v = apply_mode_matrix(displacements[static_cast<std::size_t>(m)], v, m, space);
    }
    const DenseVector b = embed_product_ket(term.bra, space);
    total += term.weight * b.dot(v);  // <b|D...|k>
  }
  return total;
}

DenseOperator oracle_partial_trace(const DenseOperator& rho, int mode) {
  const TruncatedSpace& space = rho.space;
  if (mode < 0 || mode >= space.modes) {
    throw GuardViolation("oracle_partial_trace: invalid mode index");
  }
  if (space.modes < 2) {
    throw GuardViolation("oracle_partial_trace: nothing would remain");
  }
  const long d = space.dim_per_mode();
  const long inner = pow_long(d, space.modes - 1 - mode);
  const long outer = rho.matrix.rows() / (d * inner);
  const long rest_dim = rho.matrix.rows() / d;
  DenseMatrix out = DenseMatrix::Zero(rest_dim, rest_dim);
  for (long ro = 0; ro < outer; ++ro) {
    for (long ri = 0; ri < inner; ++ri) {
      const long row_rest = ro * inner + ri;
      for (long co = 0; co < outer; ++co) {
        for (long ci = 0; ci < inner; ++ci) {
          const long col_rest = co * inner + ci;
          Complex acc{0.0, 0.0};
          for (long k = 0; k < d; ++k) {
            acc += rho.matrix(ro * d * inner + k * inner + ri,
                              co * d * inner + k * inner + ci);
          }
          out(row_rest, col_rest) = acc;
        }
      }
    }
  }
  return {std::move(out), TruncatedSpace(space.cutoff, space.modes - 1)};
}

}  // namespace weylcorr::oracle
