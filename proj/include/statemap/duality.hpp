#pragma once

// Channel-state duality as pure index permutations.
//
// Index conventions (standard bases x_i of H1, y_a of H2):
//   SuperOperator  matrix[(i,j),(a,b)], row i*d1+j, col a*d2+b:
//                  Phi(E_ab) = sum_ij matrix[(i,j),(a,b)] E_ij, i.e. the
//                  matrix acts on row-major vec(rho).
//   Tensor form    lambda_ijab = matrix[(i,j),(b,a)], the coefficient of
//                  x_i (x) conj(x_j) (x) y_a (x) conj(y_b) under the trace pairing.
//   ChoiOperator   J[(i,b),(j,a)] = matrix[(i,j),(b,a)] on H1 (x) H2*,
//                  composite index i*d2+b.
//   Twisted        Jt[(i,a),(j,b)] = matrix[(i,j),(b,a)] on H1 (x) H2,
//                  composite index i*d2+a (J with the H2 factor transposed).

#include <cstddef>
#include <cstdint>

#include "statemap/core.hpp"

namespace statemap {

/// Linear map L(H2) -> L(H1), dim_in = d2, dim_out = d1, matrix d1^2 x d2^2.
struct SuperOperator {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  ComplexMatrix matrix;

  SuperOperator() = default;
  SuperOperator(std::size_t d_in, std::size_t d_out, ComplexMatrix m);

  static SuperOperator zero(std::size_t d_in, std::size_t d_out);
  static SuperOperator identity(std::size_t d);
  static SuperOperator transpose_map(std::size_t d);

  bool operator==(const SuperOperator&) const = default;
};

/// Operator on H1 (x) H2*, (d1 d2) x (d1 d2).
struct ChoiOperator {
  std::size_t dim1 = 0;
  std::size_t dim2 = 0;
  ComplexMatrix matrix;

  ChoiOperator() = default;
  ChoiOperator(std::size_t d1, std::size_t d2, ComplexMatrix m);

  bool operator==(const ChoiOperator&) const = default;
};

/// Operator on H1 (x) H2, (d1 d2) x (d1 d2).
struct TwistedChoiOperator {
  std::size_t dim1 = 0;
  std::size_t dim2 = 0;
  ComplexMatrix matrix;

  TwistedChoiOperator() = default;
  TwistedChoiOperator(std::size_t d1, std::size_t d2, ComplexMatrix m);

  bool operator==(const TwistedChoiOperator&) const = default;
};

ChoiOperator jamiolkowski(const SuperOperator& phi);
SuperOperator jamiolkowski_inverse(const ChoiOperator& c);
TwistedChoiOperator twisted_jamiolkowski(const SuperOperator& phi);
SuperOperator twisted_jamiolkowski_inverse(const TwistedChoiOperator& c);

/// lambda tensor over (d1, d1, d2, d2) and back.
Tensor superoperator_tensor(const SuperOperator& phi);
SuperOperator superoperator_from_tensor(const Tensor& t);
/// Choi tensor over (d1, d2, d2, d1): mu_{i b a j} = J[(i,b),(j,a)].
Tensor choi_tensor(const ChoiOperator& c);

/// Components of x1 (x) conj(x2) (x) y1 (x) conj(y2) in the bases
/// x_i, conj(x_j), y_a, conj(y_b).
Tensor simple_tensor(std::span<const Complex> x1, std::span<const Complex> x2, std::span<const Complex> y1,
                     std::span<const Complex> y2);

/// (A, A', B, B') acting as A, bar(A'), B, bar(B') on the four factors.
Tensor gl_action(const Tensor& t, const ComplexMatrix& a, const ComplexMatrix& a_prime, const ComplexMatrix& b,
                 const ComplexMatrix& b_prime);

/// Max entrywise |J(g.Phi) - g'.J(Phi)| where g' is the action permuted
/// along with the factors.
double check_intertwining(const ComplexMatrix& a, const ComplexMatrix& a_prime, const ComplexMatrix& b,
                          const ComplexMatrix& b_prime, const SuperOperator& phi);

struct IdentityDeviation {
  double jamiolkowski = 0.0;
  double twisted = 0.0;
  double max() const { return jamiolkowski > twisted ? jamiolkowski : twisted; }
};

/// Samples unit x, x' in H1 and y, y' in H2 and compares both sides of
///   <x (x) conj(y), J(Phi)(x' (x) conj(y'))> = <x conj(x')^T, Phi(y y'^dagger)>
///   <x (x) y, Jt(Phi)(x' (x) y')>          = <x conj(x')^T, Phi(y' y^dagger)>
IdentityDeviation verify_characterizing_identity(const SuperOperator& phi, std::size_t samples,
                                                 std::uint64_t seed);
/// Same check against externally supplied Choi matrices (used for negative controls).
IdentityDeviation characterizing_deviation(const SuperOperator& phi, const ComplexMatrix& choi,
                                           const ComplexMatrix& twisted, std::size_t samples,
                                           std::uint64_t seed);

}  // namespace statemap
