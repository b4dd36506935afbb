#include "statemap/kernels.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <string>

#include <omp.h>

namespace statemap::kernels {

void check_permutation(std::span<const std::size_t> dims, std::span<const std::size_t> perm,
                       std::size_t length) {
  if (product_of(dims) != length) {
    throw ShapeMismatch("tensor length " + std::to_string(length) + " does not match product of dims");
  }
  if (perm.size() != dims.size()) throw ShapeMismatch("permutation length differs from number of factors");
  std::vector<bool> seen(perm.size(), false);
  for (auto p : perm) {
    if (p >= perm.size() || seen[p]) throw ShapeMismatch("not a permutation of factor indices");
    seen[p] = true;
  }
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t l = 0; l < perm.size(); ++l) inv[perm[l]] = l;
  return inv;
}

std::vector<std::size_t> permuted_dims(std::span<const std::size_t> dims, std::span<const std::size_t> perm) {
  std::vector<std::size_t> out(perm.size());
  for (std::size_t l = 0; l < perm.size(); ++l) out[l] = dims[perm[l]];
  return out;
}

namespace {

// Input stride of each output factor.
std::vector<std::size_t> gather_strides(std::span<const std::size_t> dims, std::span<const std::size_t> perm) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> in_stride(n, 1);
  for (std::size_t k = n; k-- > 1;) in_stride[k - 1] = in_stride[k] * dims[k];
  std::vector<std::size_t> out(n);
  for (std::size_t l = 0; l < n; ++l) out[l] = in_stride[perm[l]];
  return out;
}

inline std::size_t source_index(std::size_t flat, std::span<const std::size_t> out_dims,
                                std::span<const std::size_t> strides) {
  std::size_t src = 0;
  for (std::size_t l = out_dims.size(); l-- > 0;) {
    const std::size_t k = flat % out_dims[l];
    flat /= out_dims[l];
    src += k * strides[l];
  }
  return src;
}

Complex chunk_dot(std::span<const Complex> a, std::span<const Complex> b, std::size_t chunk) {
  const std::size_t lo = chunk * kReductionChunk;
  const std::size_t hi = std::min(a.size(), lo + kReductionChunk);
  Complex s = 0.0;
  for (std::size_t k = lo; k < hi; ++k) s += std::conj(a[k]) * b[k];
  return s;
}

void check_matvec(const ComplexMatrix& m, std::span<const Complex> x) {
  if (m.cols() != x.size()) throw ShapeMismatch("matvec: vector length differs from matrix columns");
}

}  // namespace

namespace serial {

std::vector<Complex> permute_factors(std::span<const Complex> in, std::span<const std::size_t> dims,
                                     std::span<const std::size_t> perm) {
  check_permutation(dims, perm, in.size());
  const auto out_dims = permuted_dims(dims, perm);
  const auto strides = gather_strides(dims, perm);
  std::vector<Complex> out(in.size());
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = in[source_index(f, out_dims, strides)];
  return out;
}

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> x) {
  check_matvec(m, x);
  std::vector<Complex> y(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

Complex dot_conj(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ShapeMismatch("dot_conj: length mismatch");
  const std::size_t chunks = (a.size() + kReductionChunk - 1) / kReductionChunk;
  Complex s = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) s += chunk_dot(a, b, c);
  return s;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace serial

namespace omp {

std::vector<Complex> permute_factors(std::span<const Complex> in, std::span<const std::size_t> dims,
                                     std::span<const std::size_t> perm) {
  check_permutation(dims, perm, in.size());
  const auto out_dims = permuted_dims(dims, perm);
  const auto strides = gather_strides(dims, perm);
  std::vector<Complex> out(in.size());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::ptrdiff_t f = 0; f < n; ++f) {
    out[f] = in[source_index(static_cast<std::size_t>(f), out_dims, strides)];
  }
  return out;
}

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> x) {
  check_matvec(m, x);
  std::vector<Complex> y(m.rows());
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
  const std::size_t cols = m.cols();
#pragma omp parallel for schedule(static) if (m.size() > 16384)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += m(static_cast<std::size_t>(r), c) * x[c];
    y[r] = s;
  }
  return y;
}

Complex dot_conj(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ShapeMismatch("dot_conj: length mismatch");
  const std::size_t chunks = (a.size() + kReductionChunk - 1) / kReductionChunk;
  std::vector<Complex> partial(chunks);
  const auto nc = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static) if (chunks > 4)
  for (std::ptrdiff_t c = 0; c < nc; ++c) partial[c] = chunk_dot(a, b, static_cast<std::size_t>(c));
  Complex s = 0.0;
  for (const auto& p : partial) s += p;
  return s;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::exception_ptr failure;
  std::mutex guard;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace omp

}  // namespace statemap::kernels
