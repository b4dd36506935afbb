#include "statemap/random.hpp"

#include <algorithm>
#include <cmath>

#include "statemap/linalg.hpp"

namespace statemap {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return Rng(seq);
}

Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.data()) z = gaussian_complex(rng);
  return m;
}

std::vector<Complex> random_unit_vector(std::size_t n, Rng& rng) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = gaussian_complex(rng);
  const double nrm = vector_norm(v);
  for (auto& z : v) z /= nrm;
  return v;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  auto [q, r] = thin_qr(random_gaussian_matrix(n, n, rng));
  // Fix the phases of R's diagonal so the distribution is Haar.
  for (std::size_t c = 0; c < n; ++c) {
    const Complex d = r(c, c);
    const Complex phase = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0);
    for (std::size_t row = 0; row < n; ++row) q(row, c) *= phase;
  }
  return q;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  return hermitian_part(random_gaussian_matrix(n, n, rng));
}

ComplexMatrix random_density(std::size_t n, std::size_t rank, Rng& rng) {
  const ComplexMatrix g = random_gaussian_matrix(n, std::max<std::size_t>(rank, 1), rng);
  ComplexMatrix rho = g * g.adjoint();
  rho = hermitian_part(rho);
  rho *= 1.0 / rho.trace().real();
  return rho;
}

ComplexMatrix random_unit_opnorm(std::size_t n, Rng& rng) {
  const ComplexMatrix u = haar_unitary(n, rng);
  const ComplexMatrix w = haar_unitary(n, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> s(n);
  for (auto& z : s) z = unit(rng);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  s[pick(rng)] = 1.0;
  return u * ComplexMatrix::diagonal(s) * w.adjoint();
}

}  // namespace statemap
