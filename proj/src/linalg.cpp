#include "statemap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "statemap/kernels.hpp"

namespace statemap {

namespace {

using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;

ConstMap as_eigen(const ComplexMatrix& a) {
  return ConstMap(a.data().data(), static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
}

template <typename Derived>
ComplexMatrix from_eigen(const Eigen::MatrixBase<Derived>& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

// Singular values of a matrix are those of the submatrix left after deleting
// all-zero rows and columns (plus zeros).
RowMat strip_zero_lines(const ComplexMatrix& a) {
  std::vector<Eigen::Index> keep_rows, keep_cols;
  std::vector<bool> col_used(a.cols(), false);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    bool any = false;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (a(r, c) != Complex(0.0)) {
        any = true;
        col_used[c] = true;
      }
    }
    if (any) keep_rows.push_back(static_cast<Eigen::Index>(r));
  }
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (col_used[c]) keep_cols.push_back(static_cast<Eigen::Index>(c));
  RowMat out(keep_rows.size(), keep_cols.size());
  for (std::size_t i = 0; i < keep_rows.size(); ++i)
    for (std::size_t j = 0; j < keep_cols.size(); ++j)
      out(i, j) = a(static_cast<std::size_t>(keep_rows[i]), static_cast<std::size_t>(keep_cols[j]));
  return out;
}

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw ComputationError(std::string(what) + " produced non-finite values");
}

}  // namespace

ComplexMatrix dual_conjugate(const ComplexMatrix& v) {
  if (v.rows() != 1 && v.cols() != 1) throw ShapeMismatch("dual_conjugate expects a row or column vector");
  return v.adjoint();
}

ComplexMatrix bar_operator(const ComplexMatrix& a) {
  if (!a.is_square()) throw ShapeMismatch("bar_operator expects a square operator");
  return a.conjugate();
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("hs_inner: shape mismatch");
  return kernels::omp::dot_conj(a.data(), b.data());
}

double vector_norm(std::span<const Complex> v) {
  return std::sqrt(kernels::omp::dot_conj(v, v).real());
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  const std::size_t k = std::min(a.rows(), a.cols());
  std::vector<double> out(k, 0.0);
  const RowMat core = strip_zero_lines(a);
  if (core.size() == 0) return out;
  Eigen::BDCSVD<RowMat> svd(core);
  if (svd.info() != Eigen::Success) throw ComputationError("SVD did not converge");
  const auto& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) out[static_cast<std::size_t>(i)] = s(i);
  require_finite(out, "SVD");
  return out;
}

double norm(const ComplexMatrix& a, NormKind kind) {
  switch (kind) {
    case NormKind::hs:
      return vector_norm(a.data());
    case NormKind::trace: {
      const auto s = singular_values(a);
      return std::accumulate(s.begin(), s.end(), 0.0);
    }
    case NormKind::op: {
      const auto s = singular_values(a);
      return s.empty() ? 0.0 : s.front();
    }
  }
  return 0.0;
}

std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol) {
  const auto s = singular_values(a);
  if (s.empty() || s.front() == 0.0) return 0;
  const double cut = rel_tol * s.front();
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double x) { return x > cut; }));
}

ComplexMatrix SchmidtDecomposition::reconstruct() const {
  ComplexMatrix out(left_vectors.rows(), right_vectors.rows());
  for (std::size_t j = 0; j < coefficients.size(); ++j)
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c)
        out(r, c) += coefficients[j] * left_vectors(r, j) * std::conj(right_vectors(c, j));
  return out;
}

SchmidtDecomposition schmidt_decompose(const ComplexMatrix& a, double tol) {
  if (tol < 0.0) throw PreconditionError("schmidt_decompose: tol must be non-negative");
  SchmidtDecomposition out;
  if (a.empty()) return out;
  Eigen::BDCSVD<RowMat> svd(as_eigen(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw ComputationError("SVD did not converge");
  const auto& s = svd.singularValues();
  std::vector<double> sv(s.data(), s.data() + s.size());
  require_finite(sv, "SVD");
  const double cut = sv.empty() ? 0.0 : tol * sv.front();
  std::size_t k = 0;
  while (k < sv.size() && sv[k] > cut && sv[k] > 0.0) ++k;
  out.coefficients.assign(sv.begin(), sv.begin() + static_cast<std::ptrdiff_t>(k));
  out.left_vectors = from_eigen(svd.matrixU().leftCols(static_cast<Eigen::Index>(k)));
  out.right_vectors = from_eigen(svd.matrixV().leftCols(static_cast<Eigen::Index>(k)));
  return out;
}

std::vector<Complex> permute_factors(std::span<const Complex> t, std::span<const std::size_t> dims,
                                     std::span<const std::size_t> perm) {
  return kernels::omp::permute_factors(t, dims, perm);
}

Tensor permute_factors(const Tensor& t, std::span<const std::size_t> perm) {
  auto data = kernels::omp::permute_factors(t.data, t.dims, perm);
  return Tensor(kernels::permuted_dims(t.dims, perm), std::move(data));
}

Tensor apply_local(const Tensor& t, std::span<const ComplexMatrix> mats) {
  if (mats.size() != t.dims.size()) throw ShapeMismatch("apply_local: one matrix per factor required");
  std::vector<Complex> cur = t.data;
  std::vector<Complex> next(cur.size());
  for (std::size_t f = 0; f < t.dims.size(); ++f) {
    const std::size_t d = t.dims[f];
    if (mats[f].rows() != d || mats[f].cols() != d) throw ShapeMismatch("apply_local: factor matrix shape mismatch");
    std::size_t inner = 1;
    for (std::size_t g = f + 1; g < t.dims.size(); ++g) inner *= t.dims[g];
    const std::size_t outer = cur.size() / (d * inner);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t in = 0; in < inner; ++in) {
          Complex s = 0.0;
          for (std::size_t j = 0; j < d; ++j) s += mats[f](i, j) * cur[(o * d + j) * inner + in];
          next[(o * d + i) * inner + in] = s;
        }
    std::swap(cur, next);
  }
  return Tensor(t.dims, std::move(cur));
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeMismatch("hermitian_part expects a square matrix");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeMismatch("hermiticity_defect expects a square matrix");
  return norm(m - m.adjoint(), NormKind::op);
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  return hermiticity_defect(m) <= rel_tol * norm(m, NormKind::op);
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  const ComplexMatrix h = hermitian_part(m);
  HermitianEigen out;
  if (h.empty()) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(as_eigen(h)));
  if (es.info() != Eigen::Success) throw ComputationError("Hermitian eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  require_finite(out.eigenvalues, "eigensolver");
  out.eigenvectors = from_eigen(es.eigenvectors());
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = hermitian_part(m);
  if (h.empty()) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(as_eigen(h)), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ComputationError("Hermitian eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  require_finite(out, "eigensolver");
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> thin_qr(const ComplexMatrix& a) {
  const Eigen::MatrixXcd m = as_eigen(a);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), k);
  Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return {from_eigen(q), from_eigen(r)};
}

ComplexMatrix orthonormal_columns(const ComplexMatrix& a) { return thin_qr(a).first; }

}  // namespace statemap
