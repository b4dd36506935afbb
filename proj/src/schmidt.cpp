#include "statemap/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "statemap/random.hpp"

namespace statemap {

std::size_t schmidt_rank_vector(const BipartiteVector& phi, double tol) {
  if (tol < 0.0) throw PreconditionError("schmidt rank: tol must be non-negative");
  if (phi.norm() == 0.0) throw PreconditionError("schmidt rank of the zero vector is undefined");
  return numerical_rank(phi.as_matrix(), tol);
}

std::size_t schmidt_rank_state(const TwistedChoiOperator& rho, double tol) {
  if (tol < 0.0) throw PreconditionError("schmidt rank: tol must be non-negative");
  return numerical_rank(twisted_jamiolkowski_inverse(rho).matrix, tol);
}

namespace {

using Vec = std::vector<Complex>;

struct Candidate {
  std::vector<Vec> terms;  // unnormalized sqrt(q_j) phi_j
  double value = 0.0;
};

double squared_norm(const Vec& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

// ||v||^2 - sigma_1(v)^2 for v reshaped to d1 x d2.
double product_defect(const Vec& v, std::size_t d1, std::size_t d2) {
  const double n2 = squared_norm(v);
  if (n2 == 0.0) return 0.0;
  const ComplexMatrix m(d1, d2, v);
  const ComplexMatrix g = d1 <= d2 ? m * m.adjoint() : m.adjoint() * m;
  return std::max(0.0, n2 - hermitian_eigenvalues(g).back());
}

Vec column_of(const ComplexMatrix& m, std::size_t c) {
  Vec v(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, c);
  return v;
}

struct Spectrum {
  std::vector<double> weights;  // descending
  std::vector<Vec> vectors;
};

Spectrum spectral_terms(const ComplexMatrix& rho, double abs_cut) {
  const auto eig = hermitian_eigen(rho);
  Spectrum s;
  for (std::size_t k = eig.eigenvalues.size(); k-- > 0;) {
    if (eig.eigenvalues[k] <= abs_cut) break;
    s.weights.push_back(eig.eigenvalues[k]);
    s.vectors.push_back(column_of(eig.eigenvectors, k));
  }
  return s;
}

// Largest <a (x) b, P a (x) b> over unit product vectors, alternating top eigenvectors.
std::pair<double, Vec> best_product_in(const ComplexMatrix& proj, std::size_t d1, std::size_t d2,
                                       const std::vector<Vec>& starts) {
  double best = -1.0;
  Vec best_vec;
  for (const auto& start : starts) {
    Vec b = start, a(d1);
    double overlap = 0.0;
    // Converge on the vector: the value is only quadratic in the error.
    for (int it = 0; it < 2000; ++it) {
      const Vec prev_b = b;
      ComplexMatrix ga(d1, d1);
      for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j) {
          Complex s = 0.0;
          for (std::size_t p = 0; p < d2; ++p)
            for (std::size_t q = 0; q < d2; ++q) s += std::conj(b[p]) * b[q] * proj(i * d2 + p, j * d2 + q);
          ga(i, j) = s;
        }
      auto ea = hermitian_eigen(ga);
      a = column_of(ea.eigenvectors, d1 - 1);
      ComplexMatrix gb(d2, d2);
      for (std::size_t p = 0; p < d2; ++p)
        for (std::size_t q = 0; q < d2; ++q) {
          Complex s = 0.0;
          for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d1; ++j) s += std::conj(a[i]) * a[j] * proj(i * d2 + p, j * d2 + q);
          gb(p, q) = s;
        }
      auto eb = hermitian_eigen(gb);
      b = column_of(eb.eigenvectors, d2 - 1);
      overlap = eb.eigenvalues.back();
      const Complex align = kernels::serial::dot_conj(b, prev_b);
      const Complex phase = std::abs(align) > 0.0 ? align / std::abs(align) : Complex(1.0);
      double change = 0.0;
      for (std::size_t p = 0; p < d2; ++p) change += std::norm(b[p] * phase - prev_b[p]);
      if (change < 1e-26) break;
    }
    if (overlap > best) {
      best = overlap;
      best_vec = BipartiteVector::product(a, b).amplitudes;
    }
  }
  return {best, best_vec};
}

double residual(const std::vector<Vec>& terms, const ComplexMatrix& rho) {
  ComplexMatrix sum(rho.rows(), rho.cols());
  for (const auto& t : terms) {
    const ComplexMatrix c = ComplexMatrix::column(t);
    sum += c * c.adjoint();
  }
  return frobenius_diff(sum, rho);
}

// Repeatedly peels off product vectors lying in the range of the remainder.
std::optional<std::vector<Vec>> product_extraction(const ComplexMatrix& rho, std::size_t d1, std::size_t d2,
                                                   std::uint64_t seed) {
  const double scale = hermitian_eigenvalues(rho).back();
  const double cut = 1e-9 * scale;
  std::vector<Vec> starts;
  for (std::size_t c = 0; c < d2; ++c) {
    Vec e(d2);
    e[c] = 1.0;
    starts.push_back(e);
  }
  Rng rng = make_rng(seed, 0x5eedULL);
  for (int s = 0; s < 4; ++s) starts.push_back(random_unit_vector(d2, rng));

  std::vector<Vec> terms;
  ComplexMatrix rest = rho;
  const std::size_t n = rho.rows();
  for (std::size_t step = 0; step < n; ++step) {
    const Spectrum sp = spectral_terms(rest, cut);
    if (sp.weights.empty()) break;
    ComplexMatrix proj(n, n), pinv(n, n);
    for (std::size_t k = 0; k < sp.weights.size(); ++k) {
      const ComplexMatrix c = ComplexMatrix::column(sp.vectors[k]);
      const ComplexMatrix outer = c * c.adjoint();
      proj += outer;
      pinv += (1.0 / sp.weights[k]) * outer;
    }
    auto [overlap, s] = best_product_in(proj, d1, d2, starts);
    if (overlap < 1.0 - 1e-9) {
      for (std::size_t k = 0; k < sp.weights.size(); ++k) {
        Vec t = sp.vectors[k];
        for (auto& z : t) z *= std::sqrt(sp.weights[k]);
        terms.push_back(std::move(t));
      }
      break;
    }
    // Project onto the range so the rank drops by exactly one.
    s = kernels::serial::matvec(proj, s);
    const double len = vector_norm(s);
    for (auto& z : s) z /= len;
    const double inv_weight = kernels::serial::dot_conj(s, kernels::serial::matvec(pinv, s)).real();
    const double t = 1.0 / inv_weight;
    const ComplexMatrix c = ComplexMatrix::column(s);
    rest -= t * (c * c.adjoint());
    for (auto& z : s) z *= std::sqrt(t);
    terms.push_back(std::move(s));
  }
  if (residual(terms, rho) > 1e-8 * norm(rho, NormKind::hs)) return std::nullopt;
  return terms;
}

// Greedy Givens refinement of the rows of V, applied directly to the vectors
// phi_j = sum_k V_jk sqrt(p_k) psi_k.
void refine(std::vector<Vec>& phis, std::size_t d1, std::size_t d2) {
  const std::size_t m = phis.size();
  std::vector<double> defect(m);
  for (std::size_t j = 0; j < m; ++j) defect[j] = product_defect(phis[j], d1, d2);
  const double phases[] = {0.0, 0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi};
  double step = 0.25 * std::numbers::pi;
  int sweeps = 0;
  while (step > 1e-4 && sweeps < 40) {
    ++sweeps;
    bool improved = false;
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = j + 1; l < m; ++l)
        for (double sign : {1.0, -1.0})
          for (double ph : phases) {
            const double c = std::cos(step), s = sign * std::sin(step);
            const Complex rot = std::polar(s, ph);
            Vec nj(phis[j].size()), nl(phis[l].size());
            for (std::size_t t = 0; t < nj.size(); ++t) {
              nj[t] = c * phis[j][t] + rot * phis[l][t];
              nl[t] = -std::conj(rot) * phis[j][t] + c * phis[l][t];
            }
            const double dj = product_defect(nj, d1, d2), dl = product_defect(nl, d1, d2);
            if (dj + dl < defect[j] + defect[l] - 1e-15) {
              phis[j] = std::move(nj);
              phis[l] = std::move(nl);
              defect[j] = dj;
              defect[l] = dl;
              improved = true;
            }
          }
    if (!improved) step *= 0.5;
  }
}

Candidate evaluate(std::vector<Vec> terms, std::size_t d1, std::size_t d2, double tol) {
  Candidate c;
  c.value = roof_value(terms, d1, d2, tol);
  c.terms = std::move(terms);
  return c;
}

}  // namespace

double roof_value(const std::vector<std::vector<Complex>>& unnormalized, std::size_t d1, std::size_t d2,
                  double tol) {
  double total = 0.0, weighted = 0.0;
  for (const auto& v : unnormalized) {
    const double q = squared_norm(v);
    if (q <= 1e-14) continue;
    total += q;
    weighted += q * static_cast<double>(numerical_rank(ComplexMatrix(d1, d2, v), tol));
  }
  if (total == 0.0) throw PreconditionError("roof value of an empty decomposition");
  return weighted / total;
}

MeasureReport schmidt_measure(const DensityState& state, std::size_t d1, std::size_t d2,
                              const MeasureOptions& opts) {
  const ComplexMatrix& rho = state.matrix();
  if (d1 == 0 || d2 == 0 || d1 * d2 != rho.rows()) throw ShapeMismatch("schmidt_measure: dims do not match the state");
  if (opts.tol < 0.0) throw PreconditionError("schmidt_measure: tol must be non-negative");

  MeasureReport rep;
  rep.tol = opts.tol;
  auto finish = [&](const Candidate& c) {
    rep.upper_bound = c.value;
    rep.shifted = c.value - 1.0;
    for (const auto& t : c.terms) {
      const double q = squared_norm(t);
      if (q <= 1e-14) continue;
      Vec unit = t;
      for (auto& z : unit) z /= std::sqrt(q);
      const std::size_t r = numerical_rank(ComplexMatrix(d1, d2, unit), opts.tol);
      rep.terms.push_back({q, BipartiteVector(d1, d2, std::move(unit)), r});
    }
    return rep;
  };

  const auto ev = hermitian_eigenvalues(rho);
  const Spectrum sp = spectral_terms(rho, opts.tol * ev.back());
  const std::size_t rank = sp.weights.size();
  std::vector<Vec> spectral;
  for (std::size_t k = 0; k < rank; ++k) {
    Vec t = sp.vectors[k];
    for (auto& z : t) z *= std::sqrt(sp.weights[k]);
    spectral.push_back(std::move(t));
  }

  if (ev.size() < 2 || ev[ev.size() - 2] < kPureTol) {
    rep.source = "pure";
    rep.mix_dim = 1;
    return finish(evaluate({spectral.front()}, d1, d2, opts.tol));
  }

  const std::size_t mix_dim = opts.mix_dim == 0 ? std::min(2 * rank, rank + 4) : opts.mix_dim;
  if (mix_dim < rank) throw PreconditionError("schmidt_measure: mix_dim must be at least rank(rho)");
  rep.mix_dim = mix_dim;

  Candidate best = evaluate(spectral, d1, d2, opts.tol);
  rep.source = "spectral";
  if (auto extracted = product_extraction(rho, d1, d2, opts.seed)) {
    Candidate c = evaluate(std::move(*extracted), d1, d2, opts.tol);
    if (c.value < best.value) {
      best = std::move(c);
      rep.source = "product_extraction";
    }
  }

  std::vector<Candidate> runs(opts.restarts);
  kernels::for_each_index(opts.exec, opts.restarts, [&](std::size_t r) {
    Rng rng = make_rng(opts.seed, r);
    const ComplexMatrix v = orthonormal_columns(random_gaussian_matrix(mix_dim, rank, rng));
    std::vector<Vec> phis(mix_dim, Vec(rho.rows()));
    for (std::size_t j = 0; j < mix_dim; ++j)
      for (std::size_t k = 0; k < rank; ++k)
        for (std::size_t t = 0; t < rho.rows(); ++t) phis[j][t] += v(j, k) * spectral[k][t];
    refine(phis, d1, d2);
    runs[r] = evaluate(std::move(phis), d1, d2, opts.tol);
  });
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].value < best.value) {
      best = std::move(runs[r]);
      rep.source = "isometry";
      rep.restart = r;
    }
  }
  return finish(best);
}

}  // namespace statemap
