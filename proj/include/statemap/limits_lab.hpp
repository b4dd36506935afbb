#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace statemap {

enum class Family { jam_discontinuity, kraus_sqrt_n, nuclear_blowup };
std::string to_string(Family f);
/// Accepts "jam-discontinuity" or "jam_discontinuity" (etc.).
Family family_from_string(const std::string& s);

struct SeriesRow {
  std::size_t n = 0;
  std::vector<double> values;  // one per entry of TruncationSeries::columns
};

struct TruncationSeries {
  Family family = Family::jam_discontinuity;
  std::vector<std::string> columns;  // excluding the leading N column
  std::vector<SeriesRow> rows;       // strictly increasing n

  /// Value of a named column in a row; throws std::out_of_range on unknown names.
  double at(std::size_t row, const std::string& column) const;
};

inline constexpr std::size_t kDimensionCap = 64;
inline constexpr std::size_t kNuclearCap = 1024;

/// A_n = n^{-1/2} I_n. Columns: a_hs, a_op, choi_op, sampled_k_op, k_op_bound, ratio.
TruncationSeries run_jam_discontinuity(const std::vector<std::size_t>& n_values, std::uint64_t seed = 0,
                                       std::size_t samples = 8, std::size_t cap = kDimensionCap);

/// A_i = e (x) conj(f_i) with dim H1 = 2. Columns: projector_sum_op,
/// image_hs, projector_hs, witness_ratio.
TruncationSeries run_kraus_sqrt_n(const std::vector<std::size_t>& n_values, std::size_t cap = kDimensionCap);

/// T_N = sum_{l <= N} a_l x_l (x) conj(x_l) (x) y (x) conj(y), y the first
/// basis vector of a 2-dimensional H2. Empty coefficients mean a_l = 1/l.
/// Columns: t_trace, j_trace, closed_t, closed_j, ratio.
TruncationSeries run_nuclear_blowup(const std::vector<std::size_t>& n_values,
                                    const std::vector<double>& coefficients = {},
                                    std::size_t cap = kNuclearCap);

/// "# family=<name>" line, header line "N,<columns>", then one row per N with
/// 17 significant digits.
void write_csv(std::ostream& out, const TruncationSeries& series);
std::string to_csv(const TruncationSeries& series);

}  // namespace statemap
