#include "statemap/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "statemap/channels.hpp"
#include "statemap/random.hpp"

namespace statemap {

DensityState::DensityState(ComplexMatrix m) : matrix_(std::move(m)) {
  if (!matrix_.is_square() || matrix_.empty()) throw ShapeMismatch("density state must be a non-empty square matrix");
  const double scale = norm(matrix_, NormKind::op);
  if (hermiticity_defect(matrix_) > kPsdTol * std::max(scale, 1.0)) {
    throw PreconditionError("density state is not Hermitian");
  }
  const auto ev = hermitian_eigenvalues(matrix_);
  if (ev.front() < -kPsdTol * scale) throw PreconditionError("density state is not positive semidefinite");
  if (std::abs(matrix_.trace() - Complex(1.0)) > kPsdTol) throw PreconditionError("density state trace is not 1");
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::certified_yes:
      return "certified_yes";
    case VerdictKind::certified_no:
      return "certified_no";
    case VerdictKind::heuristic_yes:
      return "heuristic_yes";
  }
  return "";
}

VerdictKind verdict_kind_from_string(const std::string& s) {
  if (s == "certified_yes") return VerdictKind::certified_yes;
  if (s == "certified_no") return VerdictKind::certified_no;
  if (s == "heuristic_yes") return VerdictKind::heuristic_yes;
  throw MalformedInput("unknown verdict kind '" + s + "'");
}

PositivityVerdict preserves_hermiticity(const SuperOperator& phi, double tol) {
  const ComplexMatrix j = jamiolkowski(phi).matrix;
  const double defect = hermiticity_defect(j);
  if (defect <= tol * norm(j, NormKind::op)) return {VerdictKind::certified_yes, defect, std::nullopt};

  // Scan the Hermitian basis E_aa, E_ab + E_ba, i(E_ab - E_ba).
  const std::size_t d = phi.dim_in;
  PositivityVerdict v{VerdictKind::certified_no, -1.0, std::nullopt};
  auto consider = [&](ComplexMatrix rho) {
    const ComplexMatrix out = apply(phi, rho);
    const double dev = max_abs_diff(out, out.adjoint());
    if (dev > v.value) {
      v.value = dev;
      v.witness = std::move(rho);
    }
  };
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      ComplexMatrix sym(d, d);
      sym(a, b) = 1.0;
      sym(b, a) = 1.0;
      consider(std::move(sym));
      if (a == b) continue;
      ComplexMatrix anti(d, d);
      anti(a, b) = Complex(0.0, 1.0);
      anti(b, a) = Complex(0.0, -1.0);
      consider(std::move(anti));
    }
  }
  return v;
}

double lambda_symmetry_defect(const SuperOperator& phi) {
  const Tensor t = superoperator_tensor(phi);
  const std::size_t d1 = t.dims[0], d2 = t.dims[2];
  auto at = [&](std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
    return t.data[((i * d1 + j) * d2 + a) * d2 + b];
  };
  double dev = 0.0;
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t a = 0; a < d2; ++a)
        for (std::size_t b = 0; b < d2; ++b) dev = std::max(dev, std::abs(at(i, j, a, b) - std::conj(at(j, i, b, a))));
  return dev;
}

namespace {

// C[(i,b),(j,a)] contracted with w on the H2* slots: M[i,j] = sum conj(w_b) w_a C.
ComplexMatrix contract_second(const ComplexMatrix& c, std::size_t d1, std::size_t d2, std::span<const Complex> w) {
  ComplexMatrix m(d1, d1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j) {
      Complex s = 0.0;
      for (std::size_t b = 0; b < d2; ++b)
        for (std::size_t a = 0; a < d2; ++a) s += std::conj(w[b]) * w[a] * c(i * d2 + b, j * d2 + a);
      m(i, j) = s;
    }
  return m;
}

// N[b,a] = sum conj(x_i) x_j C[(i,b),(j,a)].
ComplexMatrix contract_first(const ComplexMatrix& c, std::size_t d1, std::size_t d2, std::span<const Complex> x) {
  ComplexMatrix n(d2, d2);
  for (std::size_t b = 0; b < d2; ++b)
    for (std::size_t a = 0; a < d2; ++a) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j) s += std::conj(x[i]) * x[j] * c(i * d2 + b, j * d2 + a);
      n(b, a) = s;
    }
  return n;
}

std::vector<Complex> lowest_eigenvector(const ComplexMatrix& m, double& eigenvalue) {
  const auto eig = hermitian_eigen(m);
  eigenvalue = eig.eigenvalues.front();
  std::vector<Complex> v(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = eig.eigenvectors(r, 0);
  return v;
}

double product_expectation(const ComplexMatrix& c, std::span<const Complex> x, std::span<const Complex> w) {
  const auto v = BipartiteVector::product(x, w).amplitudes;
  const auto cv = kernels::serial::matvec(c, v);
  return kernels::serial::dot_conj(v, cv).real();
}

}  // namespace

BlockMinimum minimize_on_product_vectors(const ComplexMatrix& choi, std::size_t d1, std::size_t d2,
                                         std::size_t restarts, std::uint64_t seed, kernels::Execution exec) {
  if (choi.rows() != d1 * d2 || choi.cols() != d1 * d2) throw ShapeMismatch("product minimization: shape mismatch");
  if (restarts == 0) throw PreconditionError("product minimization needs at least one restart");
  const ComplexMatrix c = hermitian_part(choi);
  const double scale = std::max(norm(c, NormKind::op), std::numeric_limits<double>::min());
  constexpr std::size_t kMaxIterations = 500;

  std::vector<BlockMinimum> results(restarts);
  kernels::for_each_index(exec, restarts, [&](std::size_t r) {
    Rng rng = make_rng(seed, r);
    auto x = random_unit_vector(d1, rng);
    auto w = random_unit_vector(d2, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < kMaxIterations; ++it) {
      double q = 0.0;
      x = lowest_eigenvector(contract_second(c, d1, d2, w), q);
      w = lowest_eigenvector(contract_first(c, d1, d2, x), q);
      if (std::abs(prev - q) <= 1e-15 * scale) break;
      prev = q;
    }
    results[r] = {product_expectation(c, x, w), std::move(x), std::move(w), r};
  });
  // Lowest restart index wins ties.
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (results[r].value < results[best].value) best = r;
  return results[best];
}

PositivityVerdict preserves_positivity(const SuperOperator& phi, std::size_t restarts, std::uint64_t seed) {
  if (!preserves_hermiticity(phi).is_yes()) {
    throw PreconditionError("preserves_positivity requires a hermiticity-preserving map");
  }
  const ComplexMatrix j = jamiolkowski(phi).matrix;
  const std::size_t d1 = phi.dim_out, d2 = phi.dim_in;
  const double scale = norm(j, NormKind::op);
  const BlockMinimum m = minimize_on_product_vectors(j, d1, d2, restarts, seed);
  PositivityVerdict v;
  v.kind = m.value < -kViolationTol * scale ? VerdictKind::certified_no : VerdictKind::heuristic_yes;
  v.value = m.value;
  v.witness = BipartiteVector::product(m.x, m.ybar);
  return v;
}

PositivityVerdict is_completely_positive(const SuperOperator& phi, double tol) {
  PositivityVerdict herm = preserves_hermiticity(phi, tol);
  if (!herm.is_yes()) return herm;
  const ComplexMatrix j = jamiolkowski(phi).matrix;
  const double scale = norm(j, NormKind::op);
  const auto eig = hermitian_eigen(j);
  const double lowest = eig.eigenvalues.front();
  if (lowest >= -tol * scale) return {VerdictKind::certified_yes, lowest, std::nullopt};
  std::vector<Complex> v(j.rows());
  for (std::size_t r = 0; r < j.rows(); ++r) v[r] = eig.eigenvectors(r, 0);
  return {VerdictKind::certified_no, lowest, BipartiteVector(phi.dim_out, phi.dim_in, std::move(v))};
}

ComplexMatrix harness_diagonal(std::size_t k) {
  std::vector<Complex> d(k);
  for (std::size_t j = 0; j < k; ++j) d[j] = std::pow(2.0, -0.5 * static_cast<double>(j));
  return ComplexMatrix::diagonal(d);
}

namespace {

struct OutputSpectrum {
  double min_eigenvalue = 0.0;
  double hermiticity_defect = 0.0;
};

OutputSpectrum inspect(const SuperOperator& ext, const ComplexMatrix& rho) {
  const ComplexMatrix out = apply(ext, rho);
  return {hermitian_eigenvalues(out).front(), max_abs_diff(out, out.adjoint())};
}

// Y Y^dagger / ||Y||^2 for Y = sum_p y_p (x) u_p, with Z = sum_p x_p (x) conj(scale_p y_p).
ComplexMatrix witness_input(const SchmidtDecomposition& z, std::size_t k, std::span<const double> scale) {
  const std::size_t d2 = z.right_vectors.rows();
  std::vector<Complex> y(d2 * k);
  for (std::size_t p = 0; p < z.rank(); ++p) {
    const double amp = std::sqrt(z.coefficients[p]) / scale[p];
    for (std::size_t a = 0; a < d2; ++a) y[a * k + p] = amp * z.right_vectors(a, p);
  }
  const ComplexMatrix col = ComplexMatrix::column(y);
  ComplexMatrix rho = col * col.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

}  // namespace

HarnessReport choi_theorem_harness(const SuperOperator& phi, std::size_t k, std::size_t trials, std::uint64_t seed,
                                   bool with_kraus_extension, kernels::Execution exec) {
  if (k == 0) throw PreconditionError("choi_theorem_harness: k must be >= 1");
  HarnessReport rep;
  rep.k = k;
  rep.trials = trials;
  rep.cp = is_completely_positive(phi);

  const ComplexMatrix lambda = harness_diagonal(k);
  const SuperOperator ext_id = tensor_product(phi, SuperOperator::identity(k));
  const SuperOperator ext_kraus = tensor_product(phi, kraus_map(lambda));
  const std::size_t dim = phi.dim_in * k;

  std::vector<OutputSpectrum> id_spec(trials), kr_spec(trials);
  kernels::for_each_index(exec, trials, [&](std::size_t t) {
    Rng rng = make_rng(seed, t);
    const ComplexMatrix rho = random_density(dim, t % 2 == 0 ? 1 : dim, rng);
    id_spec[t] = inspect(ext_id, rho);
    if (with_kraus_extension) kr_spec[t] = inspect(ext_kraus, rho);
  });

  rep.random_min_identity = std::numeric_limits<double>::infinity();
  rep.random_min_kraus = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    rep.random_min_identity = std::min(rep.random_min_identity, id_spec[t].min_eigenvalue);
    rep.max_hermiticity_defect = std::max(rep.max_hermiticity_defect, id_spec[t].hermiticity_defect);
    if (with_kraus_extension) {
      rep.random_min_kraus = std::min(rep.random_min_kraus, kr_spec[t].min_eigenvalue);
      rep.max_hermiticity_defect = std::max(rep.max_hermiticity_defect, kr_spec[t].hermiticity_defect);
    }
  }
  rep.most_negative = std::min(rep.random_min_identity, rep.random_min_kraus);

  if (rep.cp.kind == VerdictKind::certified_no && rep.cp.witness &&
      std::holds_alternative<BipartiteVector>(*rep.cp.witness)) {
    const auto& eigvec = std::get<BipartiteVector>(*rep.cp.witness);
    const SchmidtDecomposition z = schmidt_decompose(eigvec.as_matrix());
    if (z.rank() <= k) {
      const std::vector<double> ones(z.rank(), 1.0);
      const OutputSpectrum s = inspect(ext_id, witness_input(z, k, ones));
      rep.witness_min_identity = s.min_eigenvalue;
      rep.max_hermiticity_defect = std::max(rep.max_hermiticity_defect, s.hermiticity_defect);
      rep.most_negative = std::min(rep.most_negative, s.min_eigenvalue);
      if (with_kraus_extension) {
        std::vector<double> lam(z.rank());
        for (std::size_t p = 0; p < z.rank(); ++p) lam[p] = lambda(p, p).real();
        const OutputSpectrum sk = inspect(ext_kraus, witness_input(z, k, lam));
        rep.witness_min_kraus = sk.min_eigenvalue;
        rep.max_hermiticity_defect = std::max(rep.max_hermiticity_defect, sk.hermiticity_defect);
        rep.most_negative = std::min(rep.most_negative, sk.min_eigenvalue);
      }
    }
  }
  rep.violation = rep.most_negative < -kViolationTol || rep.max_hermiticity_defect > kViolationTol;
  return rep;
}

}  // namespace statemap
