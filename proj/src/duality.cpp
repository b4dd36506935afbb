#include "statemap/duality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "statemap/kernels.hpp"
#include "statemap/linalg.hpp"
#include "statemap/random.hpp"

namespace statemap {

namespace {

constexpr std::array<std::size_t, 4> kJPerm{0, 2, 1, 3};        // self-inverse
constexpr std::array<std::size_t, 4> kTwistPerm{0, 3, 1, 2};
constexpr std::array<std::size_t, 4> kTwistInverse{0, 2, 3, 1};
constexpr std::array<std::size_t, 4> kSwapLast{0, 1, 3, 2};     // self-inverse

ComplexMatrix reshuffle(const ComplexMatrix& m, std::array<std::size_t, 4> dims, std::array<std::size_t, 4> perm,
                        std::size_t out_rows, std::size_t out_cols) {
  auto data = kernels::omp::permute_factors(m.data(), dims, perm);
  return ComplexMatrix(out_rows, out_cols, std::move(data));
}

void check_square_dims(const ComplexMatrix& m, std::size_t d1, std::size_t d2, const char* what) {
  if (d1 == 0 || d2 == 0) throw ShapeMismatch(std::string(what) + ": dimensions must be positive");
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw ShapeMismatch(std::string(what) + ": matrix must be (d1*d2) x (d1*d2)");
  }
}

}  // namespace

SuperOperator::SuperOperator(std::size_t d_in, std::size_t d_out, ComplexMatrix m)
    : dim_in(d_in), dim_out(d_out), matrix(std::move(m)) {
  if (d_in == 0 || d_out == 0) throw ShapeMismatch("superoperator dimensions must be positive");
  if (matrix.rows() != d_out * d_out || matrix.cols() != d_in * d_in) {
    throw ShapeMismatch("superoperator matrix must be dim_out^2 x dim_in^2");
  }
}

SuperOperator SuperOperator::zero(std::size_t d_in, std::size_t d_out) {
  return SuperOperator(d_in, d_out, ComplexMatrix(d_out * d_out, d_in * d_in));
}

SuperOperator SuperOperator::identity(std::size_t d) {
  return SuperOperator(d, d, ComplexMatrix::identity(d * d));
}

SuperOperator SuperOperator::transpose_map(std::size_t d) {
  ComplexMatrix m(d * d, d * d);
  // rho -> rho^T: matrix[(i,j),(a,b)] = delta_ib delta_ja.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i * d + j, j * d + i) = 1.0;
  return SuperOperator(d, d, std::move(m));
}

ChoiOperator::ChoiOperator(std::size_t d1, std::size_t d2, ComplexMatrix m)
    : dim1(d1), dim2(d2), matrix(std::move(m)) {
  check_square_dims(matrix, d1, d2, "ChoiOperator");
}

TwistedChoiOperator::TwistedChoiOperator(std::size_t d1, std::size_t d2, ComplexMatrix m)
    : dim1(d1), dim2(d2), matrix(std::move(m)) {
  check_square_dims(matrix, d1, d2, "TwistedChoiOperator");
}

ChoiOperator jamiolkowski(const SuperOperator& phi) {
  const std::size_t d1 = phi.dim_out, d2 = phi.dim_in;
  return ChoiOperator(d1, d2, reshuffle(phi.matrix, {d1, d1, d2, d2}, kJPerm, d1 * d2, d1 * d2));
}

SuperOperator jamiolkowski_inverse(const ChoiOperator& c) {
  const std::size_t d1 = c.dim1, d2 = c.dim2;
  return SuperOperator(d2, d1, reshuffle(c.matrix, {d1, d2, d1, d2}, kJPerm, d1 * d1, d2 * d2));
}

TwistedChoiOperator twisted_jamiolkowski(const SuperOperator& phi) {
  const std::size_t d1 = phi.dim_out, d2 = phi.dim_in;
  return TwistedChoiOperator(d1, d2, reshuffle(phi.matrix, {d1, d1, d2, d2}, kTwistPerm, d1 * d2, d1 * d2));
}

SuperOperator twisted_jamiolkowski_inverse(const TwistedChoiOperator& c) {
  const std::size_t d1 = c.dim1, d2 = c.dim2;
  return SuperOperator(d2, d1, reshuffle(c.matrix, {d1, d2, d1, d2}, kTwistInverse, d1 * d1, d2 * d2));
}

Tensor superoperator_tensor(const SuperOperator& phi) {
  const std::size_t d1 = phi.dim_out, d2 = phi.dim_in;
  return permute_factors(Tensor({d1, d1, d2, d2}, phi.matrix.values()), kSwapLast);
}

SuperOperator superoperator_from_tensor(const Tensor& t) {
  if (t.dims.size() != 4 || t.dims[0] != t.dims[1] || t.dims[2] != t.dims[3]) {
    throw ShapeMismatch("superoperator tensor must have dims (d1, d1, d2, d2)");
  }
  const std::size_t d1 = t.dims[0], d2 = t.dims[2];
  Tensor m = permute_factors(t, kSwapLast);
  return SuperOperator(d2, d1, ComplexMatrix(d1 * d1, d2 * d2, std::move(m.data)));
}

Tensor choi_tensor(const ChoiOperator& c) {
  return permute_factors(Tensor({c.dim1, c.dim2, c.dim1, c.dim2}, c.matrix.values()), kSwapLast);
}

Tensor simple_tensor(std::span<const Complex> x1, std::span<const Complex> x2, std::span<const Complex> y1,
                     std::span<const Complex> y2) {
  if (x1.size() != x2.size() || y1.size() != y2.size()) throw ShapeMismatch("simple_tensor: factor length mismatch");
  const std::size_t d1 = x1.size(), d2 = y1.size();
  std::vector<Complex> data(d1 * d1 * d2 * d2);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t a = 0; a < d2; ++a)
        for (std::size_t b = 0; b < d2; ++b) data[k++] = x1[i] * std::conj(x2[j]) * y1[a] * std::conj(y2[b]);
  return Tensor({d1, d1, d2, d2}, std::move(data));
}

Tensor gl_action(const Tensor& t, const ComplexMatrix& a, const ComplexMatrix& a_prime, const ComplexMatrix& b,
                 const ComplexMatrix& b_prime) {
  if (t.dims.size() != 4) throw ShapeMismatch("gl_action expects a 4-factor tensor");
  const std::array<ComplexMatrix, 4> mats{a, bar_operator(a_prime), b, bar_operator(b_prime)};
  return apply_local(t, mats);
}

double check_intertwining(const ComplexMatrix& a, const ComplexMatrix& a_prime, const ComplexMatrix& b,
                          const ComplexMatrix& b_prime, const SuperOperator& phi) {
  // Left: act on the superoperator, then reshuffle.
  const Tensor acted = gl_action(superoperator_tensor(phi), a, a_prime, b, b_prime);
  const Tensor lhs = choi_tensor(jamiolkowski(superoperator_from_tensor(acted)));
  // Right: reshuffle first, then act with the permuted quadruple on
  // (x1, conj(y2), y1, conj(x2)).
  const std::array<ComplexMatrix, 4> permuted{a, bar_operator(b_prime), b, bar_operator(a_prime)};
  const Tensor rhs = apply_local(choi_tensor(jamiolkowski(phi)), permuted);
  double dev = 0.0;
  for (std::size_t k = 0; k < lhs.data.size(); ++k) dev = std::max(dev, std::abs(lhs.data[k] - rhs.data[k]));
  return dev;
}

namespace {

ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

Complex sandwich(std::span<const Complex> u, const ComplexMatrix& m, std::span<const Complex> v) {
  const auto mv = kernels::serial::matvec(m, v);
  return kernels::serial::dot_conj(u, mv);
}

ComplexMatrix apply_map(const SuperOperator& phi, const ComplexMatrix& rho) {
  auto out = kernels::serial::matvec(phi.matrix, rho.data());
  return ComplexMatrix(phi.dim_out, phi.dim_out, std::move(out));
}

}  // namespace

IdentityDeviation characterizing_deviation(const SuperOperator& phi, const ComplexMatrix& choi,
                                           const ComplexMatrix& twisted, std::size_t samples,
                                           std::uint64_t seed) {
  if (samples == 0) throw PreconditionError("verify_characterizing_identity: samples must be >= 1");
  const std::size_t d1 = phi.dim_out, d2 = phi.dim_in;
  check_square_dims(choi, d1, d2, "characterizing_deviation");
  check_square_dims(twisted, d1, d2, "characterizing_deviation");
  Rng rng = make_rng(seed);
  IdentityDeviation dev;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto x = random_unit_vector(d1, rng);
    const auto xp = random_unit_vector(d1, rng);
    const auto y = random_unit_vector(d2, rng);
    const auto yp = random_unit_vector(d2, rng);
    std::vector<Complex> ybar(d2), ypbar(d2);
    std::transform(y.begin(), y.end(), ybar.begin(), [](Complex z) { return std::conj(z); });
    std::transform(yp.begin(), yp.end(), ypbar.begin(), [](Complex z) { return std::conj(z); });

    const ComplexMatrix x_xp = outer(x, xp);
    // x (x) conj(y) has components x_i conj(y_b).
    const auto u = BipartiteVector::product(x, ybar).amplitudes;
    const auto v = BipartiteVector::product(xp, ypbar).amplitudes;
    const Complex lhs = sandwich(u, choi, v);
    const Complex rhs = hs_inner(x_xp, apply_map(phi, outer(y, yp)));
    dev.jamiolkowski = std::max(dev.jamiolkowski, std::abs(lhs - rhs));

    const auto ut = BipartiteVector::product(x, y).amplitudes;
    const auto vt = BipartiteVector::product(xp, yp).amplitudes;
    const Complex lhs_t = sandwich(ut, twisted, vt);
    const Complex rhs_t = hs_inner(x_xp, apply_map(phi, outer(yp, y)));
    dev.twisted = std::max(dev.twisted, std::abs(lhs_t - rhs_t));
  }
  return dev;
}

IdentityDeviation verify_characterizing_identity(const SuperOperator& phi, std::size_t samples,
                                                 std::uint64_t seed) {
  return characterizing_deviation(phi, jamiolkowski(phi).matrix, twisted_jamiolkowski(phi).matrix, samples, seed);
}

}  // namespace statemap
