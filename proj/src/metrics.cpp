#include "drivemotif/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>

namespace drivemotif {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(std::span<const double> a, std::span<const double> b,
                  std::optional<std::size_t> band) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptyInput, "dtw needs non-empty sequences");
  if (band) {
    if (*band == 0) throw Error(ErrorKind::BandInfeasible, "band must be >= 1");
    const std::size_t diff = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    if (diff > *band) {
      throw Error(ErrorKind::BandInfeasible, "length difference " + std::to_string(diff) +
                                                 " exceeds band " + std::to_string(*band));
    }
  }
}

// Length of the lexicographic (cost, length) minimum of two predecessors.
inline std::uint32_t pick_len(double xc, std::uint32_t xl, double yc, std::uint32_t yl) {
  const std::uint32_t x_wins = 0u - static_cast<std::uint32_t>(xc < yc);
  const std::uint32_t y_wins = 0u - static_cast<std::uint32_t>(yc < xc);
  const std::uint32_t tie = ~(x_wins | y_wins);
  return (xl & x_wins) | (yl & y_wins) | (std::min(xl, yl) & tie);
}

// Fills cells j in [lo, hi] of row `ai` from the previous row. cur[lo - 1]
// must already hold the left neighbour.
inline void dp_row(const double* pc, const std::uint32_t* pl, double* cc, std::uint32_t* cl,
                   double ai, const double* b, std::size_t lo, std::size_t hi) {
  double left_c = cc[lo - 1];
  std::uint32_t left_l = cl[lo - 1];
  for (std::size_t j = lo; j <= hi; ++j) {
    const double vc = std::min(pc[j - 1], pc[j]);
    const std::uint32_t vl = pick_len(pc[j - 1], pl[j - 1], pc[j], pl[j]);
    left_l = pick_len(left_c, left_l, vc, vl) + 1;
    left_c = std::min(left_c, vc) + std::abs(ai - b[j - 1]);
    cc[j] = left_c;
    cl[j] = left_l;
  }
}

DtwResult run(std::span<const double> a, std::span<const double> b, std::optional<std::size_t> band,
              std::vector<double>& cprev, std::vector<double>& ccur, std::vector<std::uint32_t>& lprev,
              std::vector<std::uint32_t>& lcur) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t w = band.value_or(std::max(n, m));

  cprev.assign(m + 2, kInf);
  ccur.assign(m + 2, kInf);
  lprev.assign(m + 2, 0);
  lcur.assign(m + 2, 0);
  cprev[0] = 0.0;

  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > w ? i - w : 1;
    const std::size_t hi = std::min(m, i + w);
    ccur[lo - 1] = kInf;
    ccur[hi + 1] = kInf;
    dp_row(cprev.data(), lprev.data(), ccur.data(), lcur.data(), a[i - 1], b.data(), lo, hi);
    std::swap(cprev, ccur);
    std::swap(lprev, lcur);
  }
  return {cprev[m], lprev[m]};
}

// Sum over x of the distance to the nearest value of `sorted_y`. Each x_i is
// aligned to at least one y_j, so this bounds the DTW cost from below.
double nearest_sum(std::span<const double> x, const std::vector<double>& sorted_y) {
  double total = 0.0;
  for (double v : x) {
    const auto it = std::lower_bound(sorted_y.begin(), sorted_y.end(), v);
    double best = kInf;
    if (it != sorted_y.end()) best = *it - v;
    if (it != sorted_y.begin()) best = std::min(best, v - *std::prev(it));
    total += best;
  }
  return total;
}

}  // namespace

DtwResult dtw_path(std::span<const double> a, std::span<const double> b,
                   std::optional<std::size_t> band) {
  check_inputs(a, b, band);
  std::vector<double> cp, cc;
  std::vector<std::uint32_t> lp, lc;
  return run(a, b, band, cp, cc, lp, lc);
}

double dtw(std::span<const double> a, std::span<const double> b, const DistanceOptions& opts) {
  const auto r = dtw_path(a, b, opts.band);
  return opts.normalize_by_path ? r.normalized() : r.cost;
}

double DtwWorkspace::operator()(std::span<const double> a, std::span<const double> b,
                                const DistanceOptions& opts) {
  check_inputs(a, b, opts.band);
  const auto r = run(a, b, opts.band, cost_prev_, cost_cur_, len_prev_, len_cur_);
  return opts.normalize_by_path ? r.normalized() : r.cost;
}

double dtw_bounded(std::span<const double> a, std::span<const double> b, double limit,
                   const DistanceOptions& opts) {
  check_inputs(a, b, opts.band);
  if (std::isinf(limit)) return dtw(a, b, opts);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  // The optimal path has at most n + m - 1 steps.
  const double budget = opts.normalize_by_path ? limit * static_cast<double>(n + m - 1) : limit;

  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  // The margin absorbs summation-order rounding against the table's cost.
  const double guarded = budget * (1.0 + 1e-12);
  if (nearest_sum(a, sb) > guarded || nearest_sum(b, sa) > guarded) return kInf;

  const std::size_t w = opts.band.value_or(std::max(n, m));
  std::vector<double> cprev(m + 2, kInf), ccur(m + 2, kInf);
  std::vector<std::uint32_t> lprev(m + 2, 0), lcur(m + 2, 0);
  cprev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > w ? i - w : 1;
    const std::size_t hi = std::min(m, i + w);
    ccur[lo - 1] = kInf;
    ccur[hi + 1] = kInf;
    dp_row(cprev.data(), lprev.data(), ccur.data(), lcur.data(), a[i - 1], b.data(), lo, hi);
    // Every path crosses row i, and costs never decrease along a path. A path
    // through (i, j) with prefix length l ends no longer than l + (n - i) + (m - j).
    bool alive = false;
    for (std::size_t j = lo; j <= hi && !alive; ++j) {
      const double slack = opts.normalize_by_path
                               ? limit * static_cast<double>(lcur[j] + (n - i) + (m - j))
                               : limit;
      alive = ccur[j] <= slack * (1.0 + 1e-12);
    }
    if (!alive) return kInf;
    std::swap(cprev, ccur);
    std::swap(lprev, lcur);
  }
  const DtwResult r{cprev[m], lprev[m]};
  const double v = opts.normalize_by_path ? r.normalized() : r.cost;
  return v <= limit ? v : kInf;
}

bool dtw_within(std::span<const double> a, std::span<const double> b, double limit,
                const DistanceOptions& opts) {
  check_inputs(a, b, opts.band);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t steps = std::max(n, m);
  // Cells (k(n-1)/(steps-1), k(m-1)/(steps-1)) form a monotone path of `steps`
  // cells that stays inside any feasible band. Its cost bounds the optimal cost
  // from above, and no path is shorter than `steps`.
  double cost = std::abs(a[0] - b[0]);
  for (std::size_t k = 1; k < steps; ++k) {
    cost += std::abs(a[k * (n - 1) / (steps - 1)] - b[k * (m - 1) / (steps - 1)]);
  }
  const double upper = opts.normalize_by_path ? cost / static_cast<double>(steps) : cost;
  // Margin covers summation-order rounding against the table's cost.
  if (upper * (1.0 + 1e-9) <= limit) return true;
  return dtw_bounded(a, b, limit, opts) <= limit;
}

DtwResult dtw_extend(std::span<const double> a, std::span<const double> b,
                     const DtwFrontier* from, DtwFrontier& to) {
  check_inputs(a, b, std::nullopt);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::size_t n0 = 0, m0 = 0;
  if (from) {
    n0 = from->rows;
    m0 = from->cols;
    if (n0 == 0 || m0 == 0 || n0 > n || m0 > m) {
      throw Error(ErrorKind::LengthMismatch, "frontier does not describe a prefix of the inputs");
    }
  }

  std::vector<double> prev_c(m + 1, kInf), cur_c(m + 1, kInf);
  std::vector<std::uint32_t> prev_l(m + 1, 0), cur_l(m + 1, 0);
  std::vector<double> col_c(n + 1, kInf);
  std::vector<std::uint32_t> col_l(n + 1, 0);

  std::size_t first_row = 1;
  if (!from) {
    prev_c[0] = 0.0;
    col_c[0] = m == 0 ? 0.0 : kInf;
  } else {
    // New columns (m0, m] for the rows the frontier already covers.
    std::copy(from->col_cost.begin(), from->col_cost.end(), col_c.begin());
    std::copy(from->col_len.begin(), from->col_len.end(), col_l.begin());
    if (m > m0) {
      // prev holds D[i-1][m0..m] in slots [m0, m]; row 0 beyond column 0 is +inf.
      prev_c[m0] = from->col_cost[0];
      prev_l[m0] = from->col_len[0];
      for (std::size_t i = 1; i <= n0; ++i) {
        cur_c[m0] = from->col_cost[i];
        cur_l[m0] = from->col_len[i];
        dp_row(prev_c.data(), prev_l.data(), cur_c.data(), cur_l.data(), a[i - 1], b.data(), m0 + 1, m);
        col_c[i] = cur_c[m];
        col_l[i] = cur_l[m];
        std::swap(prev_c, cur_c);
        std::swap(prev_l, cur_l);
      }
    }
    // Row n0 in full: stored part plus the strip just computed.
    std::copy(from->row_cost.begin(), from->row_cost.end(), prev_c.begin());
    std::copy(from->row_len.begin(), from->row_len.end(), prev_l.begin());
    first_row = n0 + 1;
  }

  for (std::size_t i = first_row; i <= n; ++i) {
    cur_c[0] = kInf;
    cur_l[0] = 0;
    dp_row(prev_c.data(), prev_l.data(), cur_c.data(), cur_l.data(), a[i - 1], b.data(), 1, m);
    col_c[i] = cur_c[m];
    col_l[i] = cur_l[m];
    std::swap(prev_c, cur_c);
    std::swap(prev_l, cur_l);
  }

  to.rows = n;
  to.cols = m;
  to.row_cost = std::move(prev_c);
  to.row_len = std::move(prev_l);
  to.col_cost = std::move(col_c);
  to.col_len = std::move(col_l);
  return {to.row_cost[m], to.row_len[m]};
}

double euclid(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::LengthMismatch, "euclid needs equal lengths, got " +
                                               std::to_string(a.size()) + " and " +
                                               std::to_string(b.size()));
  }
  if (a.empty()) throw Error(ErrorKind::EmptyInput, "euclid needs non-empty sequences");
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(ss) / static_cast<double>(a.size());
}

}  // namespace drivemotif
