#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "statemap/core.hpp"
#include "statemap/duality.hpp"
#include "statemap/linalg.hpp"

namespace statemap {

struct KrausTerm {
  ComplexMatrix a;  // d1 x d2
  ComplexMatrix b;  // d1 x d2
  Complex weight = 1.0;

  bool operator==(const KrausTerm&) const = default;
};

/// rho -> sum_k weight_k A_k rho B_k^dagger. An empty term list is the zero map.
struct KrausChannel {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  std::vector<KrausTerm> terms;

  KrausChannel() = default;
  KrausChannel(std::size_t d_in, std::size_t d_out, std::vector<KrausTerm> t);

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  SuperOperator to_superoperator() const;

  bool operator==(const KrausChannel&) const = default;
};

/// M_A^B : rho -> A rho B^dagger, matrix[(i,j),(a,b)] = A[i,a] conj(B[j,b]).
SuperOperator make_map(const ComplexMatrix& a, const ComplexMatrix& b);
/// K_A = M_A^A.
SuperOperator kraus_map(const ComplexMatrix& a);

/// Phi(rho) as a d1 x d1 matrix.
ComplexMatrix apply(const SuperOperator& phi, const ComplexMatrix& rho);

/// (Phi (x) Psi)(X (x) Y) = Phi(X) (x) Psi(Y) with composite indices
/// (a, p) -> a * dim(Psi) + p on both sides.
SuperOperator tensor_product(const SuperOperator& phi, const SuperOperator& psi);

/// |A> as a d1 d2 vector with (i, b) -> i * d2 + b.
std::vector<Complex> vectorize(const ComplexMatrix& a);
ComplexMatrix unvectorize(std::span<const Complex> v, std::size_t d1, std::size_t d2);

/// Choi map: factors T = sum_k mu_k |A_k><B_k| with ||A_k||_2 = ||B_k||_2 = 1
/// and returns rho -> sum_k mu_k A_k rho B_k^dagger. Hermitian T is
/// eigendecomposed (A_k = B_k, real weights); otherwise an SVD is used.
/// Terms with |mu_k| <= rel_tol * max |mu| are dropped.
KrausChannel choi_map(const ChoiOperator& t, double rel_tol = kDefaultRankTol);

/// Choi operator in factored form sum_k w_k |L_k><R_k| (columns of left /
/// right), for operators too large to hold densely.
struct FactoredOperator {
  ComplexMatrix left;   // n x r
  std::vector<Complex> weights;
  ComplexMatrix right;  // n x r

  ComplexMatrix to_dense() const;
};

/// J of a Kraus-sum channel: sum_k w_k |A_k><B_k| (the rank-one law, termwise).
FactoredOperator choi_factors(const KrausChannel& channel);

/// Exact norm of a factored operator from its r x r core.
double norm(const FactoredOperator& op, NormKind kind);

struct NormBoundCheck {
  double max_ratio = 0.0;  // max ||A rho B^dagger||_1 over sampled ||rho||_op = 1
  double bound = 0.0;      // ||A||_2 ||B||_2
};

NormBoundCheck channel_norm_bound_check(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t trials,
                                        std::uint64_t seed);

}  // namespace statemap
