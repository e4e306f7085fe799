#include "drivemotif/selection.hpp"

#include <deque>
#include <functional>
#include <limits>

#include "parallel.hpp"

namespace drivemotif {

namespace {

double center_distance(const Motif& a, const Motif& b, std::span<const double> series,
                       const DistanceOptions& opts, double cutoff) {
  try {
    return dtw_bounded(slice(series, a.center), slice(series, b.center), cutoff, opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BandInfeasible) throw;
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

PrunedMotifSet prune_k_motifs(std::span<const Motif> motifs, double radius,
                              std::span<const double> series, const DistanceOptions& opts) {
  PrunedMotifSet out;
  for (std::size_t i = 0; i < motifs.size(); ++i) {
    check_bounds(motifs[i].center, series.size());
    bool separated = true;
    for (const auto& kept : out.motifs) {
      if (center_distance(motifs[i], kept, series, opts, 2.0 * radius) <= 2.0 * radius) {
        separated = false;
        break;
      }
    }
    if (separated) {
      out.motifs.push_back(motifs[i]);
      out.source_index.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> ClusterAssignment::outliers() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == kOutlier) out.push_back(i);
  }
  return out;
}

DistanceMatrix center_distances(std::span<const Motif> motifs, std::span<const double> series,
                                const DistanceOptions& opts, std::size_t threads, double cutoff) {
  const std::size_t n = motifs.size();
  for (const auto& m : motifs) check_bounds(m.center, series.size());
  DistanceMatrix dist(n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist.set(i, j, center_distance(motifs[i], motifs[j], series, opts, cutoff));
    }
  });
  return dist;
}

ClusterAssignment dbscan(const DistanceMatrix& dist, double eps, std::size_t min_pts) {
  const std::size_t n = dist.size();
  constexpr int kUnvisited = -2;
  ClusterAssignment out;
  out.labels.assign(n, kUnvisited);

  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || dist(i, j) <= eps) neighbors[i].push_back(j);
    }
  }
  const auto is_core = [&](std::size_t i) { return neighbors[i].size() >= min_pts; };

  int cluster = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.labels[i] != kUnvisited) continue;
    if (!is_core(i)) {
      out.labels[i] = ClusterAssignment::kOutlier;  // may still become a border point
      continue;
    }
    out.labels[i] = cluster;
    std::deque<std::size_t> frontier(neighbors[i].begin(), neighbors[i].end());
    while (!frontier.empty()) {
      const std::size_t q = frontier.front();
      frontier.pop_front();
      if (out.labels[q] == ClusterAssignment::kOutlier) out.labels[q] = cluster;
      if (out.labels[q] != kUnvisited) continue;
      out.labels[q] = cluster;
      if (is_core(q)) frontier.insert(frontier.end(), neighbors[q].begin(), neighbors[q].end());
    }
    ++cluster;
  }
  out.cluster_count = static_cast<std::size_t>(cluster);
  return out;
}

ClusterAssignment dbscan_motifs(std::span<const Motif> motifs, std::span<const double> series,
                                double eps, std::size_t min_pts, const DistanceOptions& opts,
                                std::size_t threads) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidConfig, "eps must be positive");
  if (min_pts == 0) throw Error(ErrorKind::InvalidConfig, "min_pts must be >= 1");
  for (const auto& m : motifs) check_bounds(m.center, series.size());
  // Only the eps test matters to DBSCAN: neighbors get 0, everything else +inf.
  const std::size_t n = motifs.size();
  DistanceMatrix adjacency(n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool near = false;
      try {
        near = dtw_within(slice(series, motifs[i].center), slice(series, motifs[j].center), eps, opts);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BandInfeasible) throw;
      }
      adjacency.set(i, j, near ? 0.0 : std::numeric_limits<double>::infinity());
    }
  });
  return dbscan(adjacency, eps, min_pts);
}

}  // namespace drivemotif
