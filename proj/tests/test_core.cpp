#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "statemap/kernels.hpp"
#include "statemap/linalg.hpp"

using namespace statemap;
using doctest::Approx;

TEST_CASE("ComplexMatrix rejects bad data") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), ShapeMismatch);
  CHECK_THROWS(ComplexMatrix(1, 1, std::vector<Complex>{Complex(std::nan(""), 0.0)}));
  CHECK_THROWS(ComplexMatrix(1, 1, std::vector<Complex>{Complex(0.0, INFINITY)}));
}

TEST_CASE("dual_conjugate flips column and row with conjugation") {
  const ComplexMatrix col(2, 1, {Complex(1, 1), Complex(0, 0)});
  const ComplexMatrix row = dual_conjugate(col);
  CHECK(row.rows() == 1);
  CHECK(row.cols() == 2);
  CHECK(row(0, 0) == Complex(1, -1));
  CHECK(row(0, 1) == Complex(0, 0));
  CHECK(dual_conjugate(row) == col);
  CHECK_THROWS_AS(dual_conjugate(ComplexMatrix(2, 2)), ShapeMismatch);
}

TEST_CASE("bar_operator is entrywise conjugation and multiplicative") {
  const ComplexMatrix a(2, 2, {Complex(0, 1), 0.0, 0.0, Complex(0, -1)});
  const ComplexMatrix expect(2, 2, {Complex(0, -1), 0.0, 0.0, Complex(0, 1)});
  CHECK(bar_operator(a) == expect);
  const ComplexMatrix real(2, 2, {1.0, 2.0, 3.0, 4.0});
  CHECK(bar_operator(real) == real);
  CHECK_THROWS_AS(bar_operator(ComplexMatrix(2, 3)), ShapeMismatch);

  Rng rng = make_rng(3);
  const ComplexMatrix x = random_gaussian_matrix(3, 3, rng), y = random_gaussian_matrix(3, 3, rng);
  CHECK(max_abs_diff(bar_operator(x * y), bar_operator(x) * bar_operator(y)) < 1e-14);
}

TEST_CASE("hs_inner") {
  CHECK(hs_inner(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == Complex(2.0));
  CHECK_THROWS_AS(hs_inner(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), ShapeMismatch);

  // Rank one: <x y^dag, x' y'^dag> = <x, x'> <y', y>.
  Rng rng = make_rng(4);
  const auto x = random_unit_vector(3, rng), xp = random_unit_vector(3, rng);
  const auto y = random_unit_vector(2, rng), yp = random_unit_vector(2, rng);
  Complex xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < 3; ++i) xx += std::conj(x[i]) * xp[i];
  for (std::size_t i = 0; i < 2; ++i) yy += std::conj(yp[i]) * y[i];
  const Complex got = hs_inner(testing::outer(x, y), testing::outer(xp, yp));
  CHECK(std::abs(got - xx * yy) < 1e-15);
}

TEST_CASE("norms") {
  const ComplexMatrix i3 = ComplexMatrix::identity(3);
  CHECK(norm(i3, NormKind::op) == Approx(1.0));
  CHECK(norm(i3, NormKind::hs) == Approx(std::sqrt(3.0)));
  CHECK(norm(i3, NormKind::trace) == Approx(3.0));

  Rng rng = make_rng(5);
  const auto x = random_unit_vector(4, rng), y = random_unit_vector(3, rng);
  const ComplexMatrix r1 = testing::outer(x, y);
  for (auto kind : {NormKind::op, NormKind::hs, NormKind::trace}) CHECK(norm(r1, kind) == Approx(1.0).epsilon(1e-13));

  // Ordering op <= hs <= trace, and hs^2 = sum of squared singular values.
  const ComplexMatrix g = random_gaussian_matrix(5, 4, rng);
  const auto s = singular_values(g);
  double sq = 0.0;
  for (double v : s) sq += v * v;
  CHECK(std::sqrt(sq) == Approx(norm(g, NormKind::hs)).epsilon(1e-13));
  CHECK(norm(g, NormKind::op) <= norm(g, NormKind::hs));
  CHECK(norm(g, NormKind::hs) <= norm(g, NormKind::trace));
  CHECK(norm(ComplexMatrix(3, 2), NormKind::trace) == 0.0);
}

TEST_CASE("zero rows and columns do not change singular values") {
  Rng rng = make_rng(6);
  const ComplexMatrix g = random_gaussian_matrix(3, 3, rng);
  ComplexMatrix padded(5, 6);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) padded(2 * r, 2 * c + 1) = g(r, c);
  const auto a = singular_values(g), b = singular_values(padded);
  REQUIRE(b.size() == 5);
  for (std::size_t k = 0; k < 3; ++k) CHECK(a[k] == Approx(b[k]).epsilon(1e-14));
  CHECK(b[3] == 0.0);
  CHECK(b[4] == 0.0);
}

TEST_CASE("schmidt_decompose") {
  std::vector<Complex> d{3.0, 2.0, 1.0};
  const auto diag = schmidt_decompose(ComplexMatrix::diagonal(d), 0.0);
  REQUIRE(diag.rank() == 3);
  CHECK(diag.coefficients[0] == Approx(3.0));
  CHECK(diag.coefficients[1] == Approx(2.0));
  CHECK(diag.coefficients[2] == Approx(1.0));

  Rng rng = make_rng(7);
  std::vector<Complex> x = random_unit_vector(3, rng), y = random_unit_vector(4, rng);
  for (auto& z : x) z *= 2.0;
  for (auto& z : y) z *= 0.5;
  const auto r1 = schmidt_decompose(testing::outer(x, y));
  REQUIRE(r1.rank() == 1);
  CHECK(r1.coefficients[0] == Approx(1.0).epsilon(1e-13));

  const ComplexMatrix g = random_gaussian_matrix(4, 3, rng);
  CHECK(frobenius_diff(schmidt_decompose(g).reconstruct(), g) < 1e-13);
  CHECK_THROWS_AS(schmidt_decompose(g, -1.0), PreconditionError);
}

TEST_CASE("numerical_rank follows the relative threshold") {
  std::vector<Complex> d{1.0, 1e-5, 1e-12};
  const ComplexMatrix m = ComplexMatrix::diagonal(d);
  CHECK(numerical_rank(m, 1e-10) == 2);
  CHECK(numerical_rank(m, 1e-3) == 1);
  CHECK(numerical_rank(m, 0.0) == 3);
  CHECK(numerical_rank(ComplexMatrix(2, 2)) == 0);
}

TEST_CASE("hermitian_eigen returns ascending eigenpairs") {
  Rng rng = make_rng(8);
  const ComplexMatrix h = random_hermitian(5, rng);
  const auto eig = hermitian_eigen(h);
  for (std::size_t k = 1; k < 5; ++k) CHECK(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
  for (std::size_t k = 0; k < 5; ++k) {
    std::vector<Complex> v(5);
    for (std::size_t r = 0; r < 5; ++r) v[r] = eig.eigenvectors(r, k);
    const auto hv = kernels::serial::matvec(h, v);
    for (std::size_t r = 0; r < 5; ++r) CHECK(std::abs(hv[r] - eig.eigenvalues[k] * v[r]) < 1e-12);
  }
}

TEST_CASE("kron and BipartiteVector layouts agree") {
  Rng rng = make_rng(9);
  const auto x = random_unit_vector(2, rng), y = random_unit_vector(3, rng);
  const auto v = BipartiteVector::product(x, y);
  const ComplexMatrix k = kron(ComplexMatrix::column(x), ComplexMatrix::column(y));
  for (std::size_t i = 0; i < 6; ++i) CHECK(k(i, 0) == v.amplitudes[i]);
  CHECK(v.as_matrix() == ComplexMatrix(2, 3, v.amplitudes));
  CHECK(v.norm() == Approx(1.0));
  CHECK_THROWS_AS(BipartiteVector(2, 2, std::vector<Complex>(3)), ShapeMismatch);
}

TEST_CASE("thin_qr") {
  Rng rng = make_rng(10);
  const ComplexMatrix a = random_gaussian_matrix(6, 3, rng);
  const auto [q, r] = thin_qr(a);
  CHECK(max_abs_diff(q.adjoint() * q, ComplexMatrix::identity(3)) < 1e-14);
  CHECK(max_abs_diff(q * r, a) < 1e-13);
}
