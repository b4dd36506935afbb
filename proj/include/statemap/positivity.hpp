#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "statemap/core.hpp"
#include "statemap/duality.hpp"
#include "statemap/kernels.hpp"
#include "statemap/linalg.hpp"

namespace statemap {

inline constexpr double kPsdTol = 1e-10;
/// Block-positivity and harness negativity threshold.
inline constexpr double kViolationTol = 1e-8;

/// Square, Hermitian, PSD, trace one (all within 1e-10).
class DensityState {
 public:
  explicit DensityState(ComplexMatrix m);
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

enum class VerdictKind { certified_yes, certified_no, heuristic_yes };
std::string to_string(VerdictKind k);
VerdictKind verdict_kind_from_string(const std::string& s);

/// A matrix witness (e.g. a Hermitian input) or a vector witness (product
/// vector or Choi eigenvector on H1 (x) H2*).
using Witness = std::variant<ComplexMatrix, BipartiteVector>;

struct PositivityVerdict {
  VerdictKind kind = VerdictKind::certified_yes;
  double value = 0.0;
  std::optional<Witness> witness;

  bool is_yes() const noexcept { return kind != VerdictKind::certified_no; }
};

/// Certified both ways: yes iff ||J - J^dagger|| <= tol ||J||. The no-verdict
/// carries a Hermitian rho with Phi(rho) non-Hermitian; value is
/// max_abs(Phi(rho) - Phi(rho)^dagger).
PositivityVerdict preserves_hermiticity(const SuperOperator& phi, double tol = kPsdTol);

/// max |lambda_ijab - conj(lambda_jiba)|.
double lambda_symmetry_defect(const SuperOperator& phi);

struct BlockMinimum {
  double value = 0.0;
  std::vector<Complex> x;     // unit vector of H1
  std::vector<Complex> ybar;  // unit vector of H2*, components conj(y_b)
  std::size_t restart = 0;
};

/// Multistart alternating minimization of <x (x) ybar, C (x (x) ybar)> over
/// unit product vectors. C must be Hermitian (its Hermitian part is used).
BlockMinimum minimize_on_product_vectors(const ComplexMatrix& choi, std::size_t d1, std::size_t d2,
                                         std::size_t restarts, std::uint64_t seed,
                                         kernels::Execution exec = kernels::Execution::parallel);

/// certified_no when the minimum is below -1e-8 ||J||; otherwise
/// heuristic_yes (never certified_yes). Throws PreconditionError unless Phi
/// preserves hermiticity.
PositivityVerdict preserves_positivity(const SuperOperator& phi, std::size_t restarts = 32,
                                       std::uint64_t seed = 0);

/// J(Phi) Hermitian and min eigenvalue >= -tol ||J||. The no-verdict carries
/// the offending eigenvector (or the hermiticity witness).
PositivityVerdict is_completely_positive(const SuperOperator& phi, double tol = kPsdTol);

struct HarnessReport {
  PositivityVerdict cp;
  std::size_t k = 0;
  std::size_t trials = 0;
  double random_min_identity = 0.0;  // over random PSD inputs to Phi (x) I_k
  double random_min_kraus = 0.0;     // same for Phi (x) K_A
  std::optional<double> witness_min_identity;
  std::optional<double> witness_min_kraus;
  double max_hermiticity_defect = 0.0;
  double most_negative = 0.0;
  bool violation = false;
};

/// Cross-checks complete positivity against positivity of Phi (x) I_k and
/// Phi (x) K_A with A = diag(2^{-j/2}). Random inputs are trace-one PSD
/// matrices on H2 (x) C^k; when J(Phi) has a negative eigenvector Z, the
/// input Y Y^dagger / ||Y||^2 built from Z = sum_p x_p (x) conj(lambda_p y_p)
/// is applied too (needs k >= Schmidt rank of Z).
HarnessReport choi_theorem_harness(const SuperOperator& phi, std::size_t k, std::size_t trials,
                                   std::uint64_t seed, bool with_kraus_extension = true,
                                   kernels::Execution exec = kernels::Execution::parallel);

/// Diagonal Kraus operator of the harness: lambda_j = 2^{-j/2}, j = 0..k-1.
ComplexMatrix harness_diagonal(std::size_t k);

}  // namespace statemap
