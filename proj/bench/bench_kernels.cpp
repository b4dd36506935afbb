// Serial reference kernels vs their OpenMP versions.
#include <benchmark/benchmark.h>

#include <array>

#include "statemap/channels.hpp"
#include "statemap/kernels.hpp"
#include "statemap/positivity.hpp"
#include "statemap/random.hpp"

using namespace statemap;

namespace {

std::vector<Complex> gaussian_data(std::size_t n, std::uint64_t stream) {
  Rng rng = make_rng(7, stream);
  std::vector<Complex> v(n);
  for (auto& z : v) z = gaussian_complex(rng);
  return v;
}

template <bool Parallel>
void BM_permute(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const std::array<std::size_t, 4> dims{d, d, d, d};
  const std::array<std::size_t, 4> perm{0, 2, 1, 3};
  const auto in = gaussian_data(d * d * d * d, 1);
  for (auto _ : state) {
    auto out = Parallel ? kernels::omp::permute_factors(in, dims, perm) : kernels::serial::permute_factors(in, dims, perm);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * in.size() * sizeof(Complex)));
}

template <bool Parallel>
void BM_matvec(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(7, 2);
  const ComplexMatrix m = random_gaussian_matrix(n, n, rng);
  const auto x = gaussian_data(n, 3);
  for (auto _ : state) {
    auto y = Parallel ? kernels::omp::matvec(m, x) : kernels::serial::matvec(m, x);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_dot(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto a = gaussian_data(n, 4), b = gaussian_data(n, 5);
  for (auto _ : state) {
    Complex z = Parallel ? kernels::omp::dot_conj(a, b) : kernels::serial::dot_conj(a, b);
    benchmark::DoNotOptimize(z);
  }
}

template <bool Parallel>
void BM_product_multistart(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(7, 6);
  const ComplexMatrix choi = random_hermitian(d * d, rng);
  const auto exec = Parallel ? kernels::Execution::parallel : kernels::Execution::serial;
  for (auto _ : state) {
    auto m = minimize_on_product_vectors(choi, d, d, 32, 0, exec);
    benchmark::DoNotOptimize(m.value);
  }
}

}  // namespace

BENCHMARK(BM_permute<false>)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_permute<true>)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_matvec<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_matvec<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_dot<false>)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_dot<true>)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_product_multistart<false>)->Arg(3)->Arg(6);
BENCHMARK(BM_product_multistart<true>)->Arg(3)->Arg(6);

BENCHMARK_MAIN();
