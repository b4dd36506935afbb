#include "statemap/channels.hpp"

#include <algorithm>
#include <cmath>

#include "statemap/kernels.hpp"
#include "statemap/random.hpp"

namespace statemap {

KrausChannel::KrausChannel(std::size_t d_in, std::size_t d_out, std::vector<KrausTerm> t)
    : dim_in(d_in), dim_out(d_out), terms(std::move(t)) {
  if (d_in == 0 || d_out == 0) throw ShapeMismatch("channel dimensions must be positive");
  for (const auto& term : terms) {
    if (term.a.rows() != d_out || term.a.cols() != d_in || term.b.rows() != d_out || term.b.cols() != d_in) {
      throw ShapeMismatch("Kraus operators must be dim_out x dim_in");
    }
  }
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_in || rho.cols() != dim_in) throw ShapeMismatch("channel input must be dim_in x dim_in");
  ComplexMatrix out(dim_out, dim_out);
  for (const auto& term : terms) out += term.weight * (term.a * rho * term.b.adjoint());
  return out;
}

SuperOperator KrausChannel::to_superoperator() const {
  SuperOperator phi = SuperOperator::zero(dim_in, dim_out);
  for (const auto& term : terms) phi.matrix += term.weight * make_map(term.a, term.b).matrix;
  return phi;
}

SuperOperator make_map(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("make_map: A and B must share a shape");
  const std::size_t d1 = a.rows(), d2 = a.cols();
  ComplexMatrix m(d1 * d1, d2 * d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t p = 0; p < d2; ++p)
        for (std::size_t q = 0; q < d2; ++q) m(i * d1 + j, p * d2 + q) = a(i, p) * std::conj(b(j, q));
  return SuperOperator(d2, d1, std::move(m));
}

SuperOperator kraus_map(const ComplexMatrix& a) { return make_map(a, a); }

ComplexMatrix apply(const SuperOperator& phi, const ComplexMatrix& rho) {
  if (rho.rows() != phi.dim_in || rho.cols() != phi.dim_in) {
    throw ShapeMismatch("apply: rho must be dim_in x dim_in");
  }
  auto out = kernels::omp::matvec(phi.matrix, rho.data());
  return ComplexMatrix(phi.dim_out, phi.dim_out, std::move(out));
}

SuperOperator tensor_product(const SuperOperator& phi, const SuperOperator& psi) {
  const std::size_t d1 = phi.dim_out, d2 = phi.dim_in, e1 = psi.dim_out, e2 = psi.dim_in;
  const std::size_t out_dim = d1 * e1, in_dim = d2 * e2;
  ComplexMatrix m(out_dim * out_dim, in_dim * in_dim);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t a = 0; a < d2; ++a)
        for (std::size_t b = 0; b < d2; ++b) {
          const Complex f = phi.matrix(i * d1 + j, a * d2 + b);
          if (f == Complex(0.0)) continue;
          for (std::size_t r = 0; r < e1; ++r)
            for (std::size_t s = 0; s < e1; ++s)
              for (std::size_t p = 0; p < e2; ++p)
                for (std::size_t q = 0; q < e2; ++q) {
                  const std::size_t row = (i * e1 + r) * out_dim + (j * e1 + s);
                  const std::size_t col = (a * e2 + p) * in_dim + (b * e2 + q);
                  m(row, col) = f * psi.matrix(r * e1 + s, p * e2 + q);
                }
        }
  return SuperOperator(in_dim, out_dim, std::move(m));
}

std::vector<Complex> vectorize(const ComplexMatrix& a) { return a.values(); }

ComplexMatrix unvectorize(std::span<const Complex> v, std::size_t d1, std::size_t d2) {
  return ComplexMatrix(d1, d2, std::vector<Complex>(v.begin(), v.end()));
}

namespace {

std::vector<Complex> column_of(const ComplexMatrix& m, std::size_t c) {
  std::vector<Complex> v(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, c);
  return v;
}

}  // namespace

KrausChannel choi_map(const ChoiOperator& t, double rel_tol) {
  const std::size_t d1 = t.dim1, d2 = t.dim2;
  std::vector<KrausTerm> terms;
  const double scale = norm(t.matrix, NormKind::op);
  if (scale == 0.0) return KrausChannel(d2, d1, {});

  if (is_hermitian(t.matrix)) {
    const auto eig = hermitian_eigen(t.matrix);
    // Largest |mu| first.
    std::vector<std::size_t> order(eig.eigenvalues.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      return std::abs(eig.eigenvalues[l]) > std::abs(eig.eigenvalues[r]);
    });
    for (auto k : order) {
      const double mu = eig.eigenvalues[k];
      if (std::abs(mu) <= rel_tol * scale) continue;
      const ComplexMatrix a = unvectorize(column_of(eig.eigenvectors, k), d1, d2);
      terms.push_back({a, a, mu});
    }
  } else {
    const auto svd = schmidt_decompose(t.matrix, rel_tol);
    for (std::size_t k = 0; k < svd.rank(); ++k) {
      terms.push_back({unvectorize(column_of(svd.left_vectors, k), d1, d2),
                       unvectorize(column_of(svd.right_vectors, k), d1, d2), svd.coefficients[k]});
    }
  }
  return KrausChannel(d2, d1, std::move(terms));
}

ComplexMatrix FactoredOperator::to_dense() const {
  ComplexMatrix out(left.rows(), right.rows());
  for (std::size_t k = 0; k < weights.size(); ++k)
    for (std::size_t r = 0; r < out.rows(); ++r) {
      const Complex lw = weights[k] * left(r, k);
      if (lw == Complex(0.0)) continue;
      for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) += lw * std::conj(right(c, k));
    }
  return out;
}

FactoredOperator choi_factors(const KrausChannel& channel) {
  const std::size_t n = channel.dim_out * channel.dim_in;
  const std::size_t r = channel.terms.size();
  FactoredOperator f{ComplexMatrix(n, r), std::vector<Complex>(r), ComplexMatrix(n, r)};
  for (std::size_t k = 0; k < r; ++k) {
    const auto& term = channel.terms[k];
    for (std::size_t idx = 0; idx < n; ++idx) {
      f.left(idx, k) = term.a.data()[idx];
      f.right(idx, k) = term.b.data()[idx];
    }
    f.weights[k] = term.weight;
  }
  return f;
}

double norm(const FactoredOperator& op, NormKind kind) {
  if (op.weights.empty()) return 0.0;
  // L W R^dagger = Q_L (R_L W R_R^dagger) Q_R^dagger with orthonormal Q's.
  const auto [ql, rl] = thin_qr(op.left);
  const auto [qr, rr] = thin_qr(op.right);
  const ComplexMatrix core = rl * ComplexMatrix::diagonal(op.weights) * rr.adjoint();
  return norm(core, kind);
}

NormBoundCheck channel_norm_bound_check(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t trials,
                                        std::uint64_t seed) {
  if (trials == 0) throw PreconditionError("channel_norm_bound_check: trials must be >= 1");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("A and B must share a shape");
  NormBoundCheck out;
  out.bound = norm(a, NormKind::hs) * norm(b, NormKind::hs);
  std::vector<double> ratios(trials);
  kernels::omp::for_each_index(trials, [&](std::size_t t) {
    Rng rng = make_rng(seed, t);
    const ComplexMatrix rho = random_unit_opnorm(a.cols(), rng);
    ratios[t] = norm(a * rho * b.adjoint(), NormKind::trace) / norm(rho, NormKind::op);
  });
  out.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  return out;
}

}  // namespace statemap
