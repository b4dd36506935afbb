#include "doctest.h"
#include "support.hpp"
#include "statemap/linalg.hpp"

using namespace statemap;
using testing::choi_oracle;
using testing::random_superoperator;
using testing::twisted_oracle;

TEST_CASE("J and twisted J match the loop oracle bit for bit, all small shapes") {
  Rng rng = make_rng(21);
  for (std::size_t d1 = 1; d1 <= 4; ++d1)
    for (std::size_t d2 = 1; d2 <= 4; ++d2)
      for (int rep = 0; rep < 5; ++rep) {
        const SuperOperator phi = random_superoperator(d2, d1, rng);
        const ChoiOperator j = jamiolkowski(phi);
        const TwistedChoiOperator jt = twisted_jamiolkowski(phi);
        CHECK(j.dim1 == d1);
        CHECK(j.dim2 == d2);
        CHECK(j.matrix == choi_oracle(phi));
        CHECK(jt.matrix == twisted_oracle(phi));
        CHECK(jamiolkowski_inverse(j) == phi);
        CHECK(twisted_jamiolkowski_inverse(jt) == phi);
      }
}

TEST_CASE("1x1 case is unchanged") {
  const SuperOperator phi(1, 1, ComplexMatrix(1, 1, {Complex(2.0, -1.0)}));
  CHECK(jamiolkowski(phi).matrix == phi.matrix);
  CHECK(twisted_jamiolkowski(phi).matrix == phi.matrix);
}

TEST_CASE("identity channel maps to the unnormalized maximally entangled projector") {
  const ChoiOperator j = jamiolkowski(SuperOperator::identity(2));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      const bool on = (r == 0 || r == 3) && (c == 0 || c == 3);
      CHECK(j.matrix(r, c) == Complex(on ? 1.0 : 0.0));
    }
}

TEST_CASE("transpose map has the swap operator as its Choi matrix") {
  const ChoiOperator j = jamiolkowski(SuperOperator::transpose_map(2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t jj = 0; jj < 2; ++jj)
        for (std::size_t a = 0; a < 2; ++a) {
          const bool swap = (i == a && b == jj);
          CHECK(j.matrix(i * 2 + b, jj * 2 + a) == Complex(swap ? 1.0 : 0.0));
        }
  const auto ev = hermitian_eigenvalues(j.matrix);
  CHECK(ev.front() == doctest::Approx(-1.0));
}

TEST_CASE("twisted J satisfies its own identity, not the plain one") {
  // The twisted layout differs from J whenever
  // d2 > 1 and the map is generic.
  Rng rng = make_rng(22);
  const SuperOperator phi = random_superoperator(2, 2, rng);
  CHECK(jamiolkowski(phi).matrix != twisted_jamiolkowski(phi).matrix);
  const auto dev = verify_characterizing_identity(phi, 200, 1);
  CHECK(dev.jamiolkowski <= 1e-12);
  CHECK(dev.twisted <= 1e-12);
}

TEST_CASE("characterizing identities hold on random maps; mutated layouts fail") {
  Rng rng = make_rng(23);
  for (std::size_t d1 = 1; d1 <= 3; ++d1)
    for (std::size_t d2 = 1; d2 <= 3; ++d2) {
      const SuperOperator phi = random_superoperator(d2, d1, rng);
      CHECK(verify_characterizing_identity(phi, 50, d1 * 10 + d2).max() <= 1e-12);
    }
  const SuperOperator phi = random_superoperator(3, 2, rng);
  const auto swapped = characterizing_deviation(phi, twisted_oracle(phi), choi_oracle(phi), 50, 2);
  CHECK(swapped.jamiolkowski > 0.1);
  CHECK(swapped.twisted > 0.1);
}

TEST_CASE("zero map gives exact zero deviation") {
  const auto dev = verify_characterizing_identity(SuperOperator::zero(2, 3), 20, 0);
  CHECK(dev.max() == 0.0);
}

TEST_CASE("J preserves the Hilbert-Schmidt inner product") {
  Rng rng = make_rng(24);
  for (int rep = 0; rep < 20; ++rep) {
    const SuperOperator phi = random_superoperator(3, 2, rng), psi = random_superoperator(3, 2, rng);
    const Complex lhs = hs_inner(jamiolkowski(phi).matrix, jamiolkowski(psi).matrix);
    const Complex rhs = hs_inner(phi.matrix, psi.matrix);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * norm(phi.matrix, NormKind::hs) * norm(psi.matrix, NormKind::hs));
  }
}

TEST_CASE("rank-one law: J(M_A^B) = |A><B|") {
  Rng rng = make_rng(25);
  const ComplexMatrix a = random_gaussian_matrix(3, 2, rng), b = random_gaussian_matrix(3, 2, rng);
  const ChoiOperator j = jamiolkowski(make_map(a, b));
  CHECK(frobenius_diff(j.matrix, testing::outer(a.data(), b.data())) <= 1e-13);

  // |A><A| with unit A is the Kraus map K_A.
  ComplexMatrix u = a;
  u *= 1.0 / norm(a, NormKind::hs);
  const SuperOperator k = jamiolkowski_inverse(ChoiOperator(3, 2, testing::outer(u.data(), u.data())));
  CHECK(max_abs_diff(k.matrix, kraus_map(u).matrix) <= 1e-15);
}

TEST_CASE("tensor form and Choi tensor") {
  Rng rng = make_rng(26);
  const SuperOperator phi = random_superoperator(3, 2, rng);
  const Tensor lambda = superoperator_tensor(phi);
  CHECK(lambda.dims == std::vector<std::size_t>{2, 2, 3, 3});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
          CHECK(lambda.data[((i * 2 + j) * 3 + a) * 3 + b] == phi.matrix(i * 2 + j, b * 3 + a));
  CHECK(superoperator_from_tensor(lambda) == phi);

  const ChoiOperator c = jamiolkowski(phi);
  const Tensor mu = choi_tensor(c);
  CHECK(mu.dims == std::vector<std::size_t>{2, 3, 3, 2});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t j = 0; j < 2; ++j) CHECK(mu.data[((i * 3 + b) * 3 + a) * 2 + j] == c.matrix(i * 3 + b, j * 3 + a));
}

TEST_CASE("gl action on simple tensors") {
  Rng rng = make_rng(27);
  const auto x1 = random_unit_vector(2, rng), x2 = random_unit_vector(2, rng);
  const auto y1 = random_unit_vector(3, rng), y2 = random_unit_vector(3, rng);
  const Tensor t = simple_tensor(x1, x2, y1, y2);
  const ComplexMatrix i2 = ComplexMatrix::identity(2), i3 = ComplexMatrix::identity(3);
  CHECK(gl_action(t, i2, i2, i3, i3) == t);

  const ComplexMatrix a = random_gaussian_matrix(2, 2, rng), ap = random_gaussian_matrix(2, 2, rng);
  const ComplexMatrix b = random_gaussian_matrix(3, 3, rng), bp = random_gaussian_matrix(3, 3, rng);
  const auto ax = kernels::serial::matvec(a, x1), apx = kernels::serial::matvec(ap, x2);
  const auto by = kernels::serial::matvec(b, y1), bpy = kernels::serial::matvec(bp, y2);
  const Tensor expect = simple_tensor(ax, apx, by, bpy);
  const Tensor got = gl_action(t, a, ap, b, bp);
  double dev = 0.0;
  for (std::size_t k = 0; k < got.data.size(); ++k) dev = std::max(dev, std::abs(got.data[k] - expect.data[k]));
  CHECK(dev <= 1e-13);
  CHECK_THROWS_AS(gl_action(t, i3, i2, i3, i3), ShapeMismatch);
}

TEST_CASE("J intertwines the group actions") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  Rng rng = make_rng(28);
  const SuperOperator phi = random_superoperator(2, 2, rng);
  CHECK(check_intertwining(i2, i2, i2, i2, phi) == 0.0);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix a = random_gaussian_matrix(2, 2, rng), ap = random_gaussian_matrix(2, 2, rng);
    const ComplexMatrix b = random_gaussian_matrix(2, 2, rng), bp = random_gaussian_matrix(2, 2, rng);
    CHECK(check_intertwining(a, ap, b, bp, random_superoperator(2, 2, rng)) <= 1e-12);
  }
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(SuperOperator(2, 2, ComplexMatrix(4, 3)), ShapeMismatch);
  CHECK_THROWS_AS(ChoiOperator(2, 3, ComplexMatrix(6, 5)), ShapeMismatch);
  CHECK_THROWS_AS(TwistedChoiOperator(2, 2, ComplexMatrix(3, 3)), ShapeMismatch);
}
