#include <omp.h>

#include <array>

#include "doctest.h"
#include "support.hpp"
#include "statemap/kernels.hpp"
#include "statemap/positivity.hpp"

using namespace statemap;

namespace {

std::vector<Complex> gaussian_data(std::size_t n, std::uint64_t stream) {
  Rng rng = make_rng(11, stream);
  std::vector<Complex> v(n);
  for (auto& z : v) z = gaussian_complex(rng);
  return v;
}

struct ThreadCount {
  int saved;
  explicit ThreadCount(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("permute_factors: identity permutation is bit-identical") {
  const std::array<std::size_t, 3> dims{2, 3, 4};
  const std::array<std::size_t, 3> perm{0, 1, 2};
  const auto in = gaussian_data(24, 1);
  CHECK(kernels::serial::permute_factors(in, dims, perm) == in);
  CHECK(kernels::omp::permute_factors(in, dims, perm) == in);
}

TEST_CASE("permute_factors: swap on (2,3) is the matrix transpose") {
  const std::array<std::size_t, 2> dims{2, 3};
  const std::array<std::size_t, 2> perm{1, 0};
  const auto in = gaussian_data(6, 2);
  const auto out = kernels::serial::permute_factors(in, dims, perm);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(out[c * 2 + r] == in[r * 3 + c]);
}

TEST_CASE("permute_factors: four-factor loop oracle") {
  const std::array<std::size_t, 4> dims{2, 3, 4, 5};
  const std::array<std::size_t, 4> perm{2, 0, 3, 1};
  const auto in = gaussian_data(120, 3);
  const auto out = kernels::serial::permute_factors(in, dims, perm);
  // out dims[l] = dims[perm[l]]; out index has k_{perm[l]} in slot l.
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t d = 0; d < 5; ++d) {
          const std::size_t src = ((a * 3 + b) * 4 + c) * 5 + d;
          const std::size_t dst = ((c * 2 + a) * 5 + d) * 3 + b;
          CHECK(out[dst] == in[src]);
        }
}

TEST_CASE("permute_factors: inverse permutation round-trips exactly") {
  const std::array<std::size_t, 4> dims{3, 2, 4, 2};
  const std::array<std::size_t, 4> perm{3, 1, 0, 2};
  const auto inv = kernels::inverse_permutation(perm);
  const auto mid_dims = kernels::permuted_dims(dims, perm);
  const auto in = gaussian_data(48, 4);
  const auto mid = kernels::omp::permute_factors(in, dims, perm);
  CHECK(kernels::omp::permute_factors(mid, mid_dims, inv) == in);
}

TEST_CASE("permute_factors: rejects bad permutations") {
  const std::array<std::size_t, 2> dims{2, 2};
  const std::array<std::size_t, 2> dup{0, 0};
  const std::array<std::size_t, 3> too_long{0, 1, 2};
  const auto in = gaussian_data(4, 5);
  CHECK_THROWS_AS(kernels::serial::permute_factors(in, dims, dup), ShapeMismatch);
  CHECK_THROWS_AS(kernels::serial::permute_factors(in, dims, too_long), ShapeMismatch);
  const auto short_in = gaussian_data(3, 5);
  const std::array<std::size_t, 2> swap{1, 0};
  CHECK_THROWS_AS(kernels::omp::permute_factors(short_in, dims, swap), ShapeMismatch);
}

TEST_CASE("serial and OpenMP kernels agree bit for bit across thread counts") {
  const std::array<std::size_t, 4> dims{7, 6, 7, 6};
  const std::array<std::size_t, 4> perm{0, 2, 1, 3};
  const auto big = gaussian_data(7 * 6 * 7 * 6 * 5, 6);
  const std::vector<Complex> tensor(big.begin(), big.begin() + 7 * 6 * 7 * 6);
  Rng rng = make_rng(11, 7);
  const ComplexMatrix m = random_gaussian_matrix(300, 300, rng);
  const auto x = gaussian_data(300, 8);
  const auto a = gaussian_data(50000, 9), b = gaussian_data(50000, 10);

  const auto ref_perm = kernels::serial::permute_factors(tensor, dims, perm);
  const auto ref_mv = kernels::serial::matvec(m, x);
  const Complex ref_dot = kernels::serial::dot_conj(a, b);
  for (int threads : {1, 2, 3, 4}) {
    ThreadCount guard(threads);
    CHECK(kernels::omp::permute_factors(tensor, dims, perm) == ref_perm);
    CHECK(kernels::omp::matvec(m, x) == ref_mv);
    const Complex d = kernels::omp::dot_conj(a, b);
    CHECK(d.real() == ref_dot.real());
    CHECK(d.imag() == ref_dot.imag());
  }
}

TEST_CASE("dot_conj conjugates the first argument") {
  const std::vector<Complex> a{{0.0, 1.0}}, b{{0.0, 1.0}};
  CHECK(kernels::serial::dot_conj(a, b) == Complex(1.0, 0.0));
  CHECK(kernels::omp::dot_conj(a, b) == Complex(1.0, 0.0));
}

TEST_CASE("for_each_index visits every index once and rethrows") {
  std::vector<int> hits(1000, 0);
  kernels::omp::for_each_index(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(kernels::omp::for_each_index(10,
                                               [](std::size_t i) {
                                                 if (i == 3) throw ComputationError("boom");
                                               }),
                  ComputationError);
}

TEST_CASE("multistart minimization is schedule independent") {
  Rng rng = make_rng(11, 12);
  const ComplexMatrix c = random_hermitian(9, rng);
  const auto serial = minimize_on_product_vectors(c, 3, 3, 12, 5, kernels::Execution::serial);
  for (int threads : {1, 2, 4}) {
    ThreadCount guard(threads);
    const auto par = minimize_on_product_vectors(c, 3, 3, 12, 5, kernels::Execution::parallel);
    CHECK(par.value == serial.value);
    CHECK(par.restart == serial.restart);
    CHECK(par.x == serial.x);
    CHECK(par.ybar == serial.ybar);
  }
}
