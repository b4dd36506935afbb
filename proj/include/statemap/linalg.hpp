#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "statemap/core.hpp"

namespace statemap {

/// Relative threshold below which singular values / eigenvalues count as zero.
inline constexpr double kDefaultRankTol = 1e-10;

enum class NormKind { hs, trace, op };

/// kappa: column vector -> row covector (and back), entrywise conjugated.
ComplexMatrix dual_conjugate(const ComplexMatrix& v);

/// A -> conj(A) for square A; multiplicative, unlike the adjoint.
ComplexMatrix bar_operator(const ComplexMatrix& a);

/// Tr(A^dagger B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double norm(const ComplexMatrix& a, NormKind kind);

/// Singular values in non-increasing order (min(rows, cols) of them).
std::vector<double> singular_values(const ComplexMatrix& a);

/// Number of singular values strictly above rel_tol * largest.
std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol = kDefaultRankTol);

/// A = sum_j coefficients[j] * left_j right_j^dagger.
struct SchmidtDecomposition {
  std::vector<double> coefficients;
  ComplexMatrix left_vectors;   // rows(A) x k
  ComplexMatrix right_vectors;  // cols(A) x k

  std::size_t rank() const noexcept { return coefficients.size(); }
  ComplexMatrix reconstruct() const;
};

/// SVD with singular values <= tol * (largest) discarded; exact zeros always
/// dropped. Throws ComputationError if the SVD does not converge.
SchmidtDecomposition schmidt_decompose(const ComplexMatrix& a, double tol = kDefaultRankTol);

/// Generic factor permutation on a flat tensor (perm is 0-based):
/// out[(k_perm[0], ..., k_perm[n-1])] = in[(k_0, ..., k_{n-1})].
std::vector<Complex> permute_factors(std::span<const Complex> t, std::span<const std::size_t> dims,
                                     std::span<const std::size_t> perm);
Tensor permute_factors(const Tensor& t, std::span<const std::size_t> perm);

/// Applies mats[k] to factor k of t (mats[k] must be dims[k] x dims[k]).
Tensor apply_local(const Tensor& t, std::span<const ComplexMatrix> mats);

/// Eigen-decomposition of the Hermitian part (M + M^dagger)/2; eigenvalues
/// ascending, eigenvectors as columns.
struct HermitianEigen {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};
HermitianEigen hermitian_eigen(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

ComplexMatrix hermitian_part(const ComplexMatrix& m);
/// ||M - M^dagger||_op.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double rel_tol = kDefaultRankTol);

/// Thin Q factor of a Householder QR (columns orthonormal).
ComplexMatrix orthonormal_columns(const ComplexMatrix& a);
/// Full QR; returns (Q thin, R square).
std::pair<ComplexMatrix, ComplexMatrix> thin_qr(const ComplexMatrix& a);

double vector_norm(std::span<const Complex> v);

}  // namespace statemap
