#include "statemap/limits_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "statemap/channels.hpp"
#include "statemap/core.hpp"
#include "statemap/kernels.hpp"
#include "statemap/linalg.hpp"
#include "statemap/random.hpp"

namespace statemap {

std::string to_string(Family f) {
  switch (f) {
    case Family::jam_discontinuity:
      return "jam_discontinuity";
    case Family::kraus_sqrt_n:
      return "kraus_sqrt_n";
    case Family::nuclear_blowup:
      return "nuclear_blowup";
  }
  return "";
}

Family family_from_string(const std::string& s) {
  std::string key = s;
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "jam_discontinuity") return Family::jam_discontinuity;
  if (key == "kraus_sqrt_n") return Family::kraus_sqrt_n;
  if (key == "nuclear_blowup") return Family::nuclear_blowup;
  throw MalformedInput("unknown lab family '" + s + "'");
}

double TruncationSeries::at(std::size_t row, const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw std::out_of_range("no column '" + column + "'");
  return rows.at(row).values[static_cast<std::size_t>(it - columns.begin())];
}

namespace {

void check_sweep(const std::vector<std::size_t>& n_values, std::size_t cap) {
  if (n_values.empty()) throw PreconditionError("sweep needs at least one N");
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    if (n_values[k] == 0) throw PreconditionError("sweep values must be >= 1");
    if (k > 0 && n_values[k] <= n_values[k - 1]) throw PreconditionError("sweep values must be strictly increasing");
    if (n_values[k] > cap) {
      throw CapExceeded("N = " + std::to_string(n_values[k]) + " exceeds the dimension cap " + std::to_string(cap));
    }
  }
}

template <class RowFn>
TruncationSeries sweep(Family family, std::vector<std::string> columns, const std::vector<std::size_t>& n_values,
                       RowFn row) {
  TruncationSeries s{family, std::move(columns), std::vector<SeriesRow>(n_values.size())};
  kernels::omp::for_each_index(n_values.size(), [&](std::size_t k) { s.rows[k] = {n_values[k], row(n_values[k])}; });
  return s;
}

}  // namespace

TruncationSeries run_jam_discontinuity(const std::vector<std::size_t>& n_values, std::uint64_t seed,
                                       std::size_t samples, std::size_t cap) {
  check_sweep(n_values, cap);
  if (samples == 0) throw PreconditionError("jam_discontinuity needs at least one sample");
  return sweep(Family::jam_discontinuity, {"a_hs", "a_op", "choi_op", "sampled_k_op", "k_op_bound", "ratio"},
               n_values, [&](std::size_t n) {
                 ComplexMatrix a = ComplexMatrix::identity(n);
                 a *= 1.0 / std::sqrt(static_cast<double>(n));
                 const KrausChannel k(n, n, {{a, a, 1.0}});
                 const double a_hs = norm(a, NormKind::hs);
                 const double a_op = norm(a, NormKind::op);
                 const double choi_op = norm(choi_factors(k), NormKind::op);
                 double sampled = 0.0;
                 for (std::size_t t = 0; t < samples; ++t) {
                   Rng rng = make_rng(seed, n * samples + t);
                   const ComplexMatrix rho = random_gaussian_matrix(n, n, rng);
                   sampled = std::max(sampled, norm(k.apply(rho), NormKind::hs) / norm(rho, NormKind::hs));
                 }
                 return std::vector<double>{a_hs, a_op, choi_op, sampled, a_op * a_op, choi_op / sampled};
               });
}

TruncationSeries run_kraus_sqrt_n(const std::vector<std::size_t>& n_values, std::size_t cap) {
  check_sweep(n_values, cap);
  return sweep(Family::kraus_sqrt_n, {"projector_sum_op", "image_hs", "projector_hs", "witness_ratio"}, n_values,
               [&](std::size_t n) {
                 std::vector<KrausTerm> terms;
                 for (std::size_t i = 0; i < n; ++i) {
                   ComplexMatrix a(2, n);
                   a(0, i) = 1.0;
                   terms.push_back({a, a, 1.0});
                 }
                 const KrausChannel k(n, 2, std::move(terms));
                 const double proj_sum = norm(choi_factors(k), NormKind::op);
                 const ComplexMatrix p = ComplexMatrix::identity(n);
                 const double image_hs = norm(k.apply(p), NormKind::hs);
                 const double p_hs = norm(p, NormKind::hs);
                 return std::vector<double>{proj_sum, image_hs, p_hs, image_hs / p_hs};
               });
}

TruncationSeries run_nuclear_blowup(const std::vector<std::size_t>& n_values, const std::vector<double>& coefficients,
                                    std::size_t cap) {
  check_sweep(n_values, cap);
  const std::size_t n_max = n_values.back();
  std::vector<double> a(n_max);
  if (coefficients.empty()) {
    for (std::size_t l = 0; l < n_max; ++l) a[l] = 1.0 / static_cast<double>(l + 1);
  } else {
    if (coefficients.size() < n_max) throw MalformedInput("fewer coefficients than the largest N");
    for (std::size_t l = 0; l < n_max; ++l) {
      if (!std::isfinite(coefficients[l])) throw MalformedInput("coefficients must be finite");
      a[l] = coefficients[l];
    }
  }
  for (auto n : n_values) {
    if (std::all_of(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), [](double x) { return x == 0.0; })) {
      throw MalformedInput("coefficients vanish on the truncation N = " + std::to_string(n));
    }
  }
  return sweep(Family::nuclear_blowup, {"t_trace", "j_trace", "closed_t", "closed_j", "ratio"}, n_values,
               [&](std::size_t n) {
                 const std::size_t d2 = 2;
                 ComplexMatrix m(n * n, d2 * d2);
                 for (std::size_t l = 0; l < n; ++l) m(l * n + l, 0) = a[l];
                 const SuperOperator t(d2, n, std::move(m));
                 const double t_trace = norm(t.matrix, NormKind::trace);
                 const double j_trace = norm(jamiolkowski(t).matrix, NormKind::trace);
                 double sq = 0.0, abs_sum = 0.0;
                 for (std::size_t l = 0; l < n; ++l) {
                   sq += a[l] * a[l];
                   abs_sum += std::abs(a[l]);
                 }
                 return std::vector<double>{t_trace, j_trace, std::sqrt(sq), abs_sum, j_trace / t_trace};
               });
}

void write_csv(std::ostream& out, const TruncationSeries& series) {
  out << "# family=" << to_string(series.family) << '\n' << 'N';
  for (const auto& c : series.columns) out << ',' << c;
  out << '\n';
  char buf[32];
  for (const auto& row : series.rows) {
    out << row.n;
    for (double v : row.values) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

std::string to_csv(const TruncationSeries& series) {
  std::ostringstream os;
  write_csv(os, series);
  return os.str();
}

}  // namespace statemap
