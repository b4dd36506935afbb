#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace statemap {

using Complex = std::complex<double>;

// Error vocabulary. The CLI maps each category onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class MalformedInput : public Error {
 public:
  using Error::Error;
};
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};
class ComputationError : public Error {
 public:
  using Error::Error;
};
class CapExceeded : public Error {
 public:
  using Error::Error;
};
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Dense complex matrix, row-major. Entry (r, c) is <e_r, A f_c> in the
/// standard bases, so a d1 x d2 matrix represents an operator H2 -> H1.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws ShapeMismatch if data.size() != rows*cols and MalformedInput on
  /// non-finite entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix column(std::span<const Complex> v);
  static ComplexMatrix diagonal(std::span<const Complex> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }
  const std::vector<Complex>& values() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, composite index (i, p) -> i * b.rows() + p.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// A vector of H1 (x) H2 with composite index (i, a) -> i * dim2 + a.
/// The same layout carries vectors of H1 (x) H2* (index (i, b)).
struct BipartiteVector {
  std::size_t dim1 = 0;
  std::size_t dim2 = 0;
  std::vector<Complex> amplitudes;

  BipartiteVector() = default;
  BipartiteVector(std::size_t d1, std::size_t d2, std::vector<Complex> amps);

  static BipartiteVector product(std::span<const Complex> x, std::span<const Complex> y);
  /// Coefficient matrix: entry (i, a) = amplitude[i * dim2 + a].
  ComplexMatrix as_matrix() const;
  double norm() const;

  bool operator==(const BipartiteVector&) const = default;
};

/// Flat multi-index tensor, last factor fastest.
struct Tensor {
  std::vector<std::size_t> dims;
  std::vector<Complex> data;

  Tensor() = default;
  Tensor(std::vector<std::size_t> dims, std::vector<Complex> data);

  bool operator==(const Tensor&) const = default;
};

std::size_t product_of(std::span<const std::size_t> dims);
bool all_finite(std::span<const Complex> v);

}  // namespace statemap
