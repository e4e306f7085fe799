#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "drivemotif/error.hpp"

namespace drivemotif {

struct DistanceOptions {
  /// Sakoe-Chiba half-width in samples; cells with |i - j| > band are excluded.
  std::optional<std::size_t> band;
  bool normalize_by_path = true;
};

/// Cost and length of the optimal warping path. Among equal-cost paths the
/// shortest one wins, which keeps the normalized value symmetric in (a, b).
struct DtwResult {
  double cost = 0.0;
  std::size_t path_length = 0;

  double normalized() const noexcept {
    return path_length == 0 ? 0.0 : cost / static_cast<double>(path_length);
  }
};

/// Full DP with pointwise cost |a_i - b_j| and steps {match, insert, delete}.
DtwResult dtw_path(std::span<const double> a, std::span<const double> b,
                   std::optional<std::size_t> band = std::nullopt);

double dtw(std::span<const double> a, std::span<const double> b, const DistanceOptions& opts = {});

/// Reusable DP rows for hot loops; results equal dtw().
class DtwWorkspace {
 public:
  double operator()(std::span<const double> a, std::span<const double> b,
                    const DistanceOptions& opts = {});

 private:
  std::vector<double> cost_prev_, cost_cur_;
  std::vector<std::uint32_t> len_prev_, len_cur_;
};

/// dtw(a, b, opts) when that value is <= limit, otherwise +inf. Pairs that
/// cannot meet the limit are rejected by a lower bound or abandoned mid-table.
double dtw_bounded(std::span<const double> a, std::span<const double> b, double limit,
                   const DistanceOptions& opts = {});

/// Exactly dtw(a, b, opts) <= limit. A stretched diagonal path gives an upper
/// bound that settles close pairs without filling the table.
bool dtw_within(std::span<const double> a, std::span<const double> b, double limit,
                const DistanceOptions& opts = {});

/// Last row and last column of an unbanded DTW table over a[0, rows) x b[0, cols).
/// Enough to extend both sequences later without recomputing the table.
struct DtwFrontier {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> row_cost, col_cost;  // D[rows][0..cols], D[0..rows][cols]
  std::vector<std::uint32_t> row_len, col_len;

  std::size_t bytes() const noexcept {
    return row_cost.size() * sizeof(double) + col_cost.size() * sizeof(double) +
           (row_len.size() + col_len.size()) * sizeof(std::uint32_t);
  }
};

/// Unbanded DTW of (a, b). When `from` is given, a and b must extend the
/// prefixes it was computed on; only the new cells are evaluated. The result
/// is bit-identical to dtw_path(a, b). `to` receives the new frontier.
DtwResult dtw_extend(std::span<const double> a, std::span<const double> b,
                     const DtwFrontier* from, DtwFrontier& to);

/// sqrt(sum (a_i - b_i)^2) / n. Only a prefilter, never the motif distance.
double euclid(std::span<const double> a, std::span<const double> b);

}  // namespace drivemotif
