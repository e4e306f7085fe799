#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "drivemotif/discovery.hpp"
#include "drivemotif/metrics.hpp"

namespace drivemotif {

/// k-motifs in acceptance order; `source_index[i]` locates motifs[i] in the
/// list that was pruned.
struct PrunedMotifSet {
  std::vector<Motif> motifs;
  std::vector<std::size_t> source_index;
};

/// Greedy scan over `motifs` (already in motif_order): a motif is accepted when
/// its center is more than 2R from every accepted center.
PrunedMotifSet prune_k_motifs(std::span<const Motif> motifs, double radius,
                              std::span<const double> series, const DistanceOptions& opts = {});

struct ClusterAssignment {
  static constexpr int kOutlier = -1;

  std::vector<int> labels;
  std::size_t cluster_count = 0;

  std::vector<std::size_t> outliers() const;
};

/// Symmetric n x n distance matrix, row-major.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n = 0) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) noexcept {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

/// Normalized DTW between motif centers. Pairs the band cannot align are +inf,
/// and so is any pair farther apart than `cutoff`.
DistanceMatrix center_distances(std::span<const Motif> motifs, std::span<const double> series,
                                const DistanceOptions& opts = {}, std::size_t threads = 0,
                                double cutoff = std::numeric_limits<double>::infinity());

/// DBSCAN over a precomputed metric. A point is core when at least `min_pts`
/// points (itself included) lie within `eps`. Clusters are numbered in order of
/// their first core point; a border point joins the first cluster that reaches it.
ClusterAssignment dbscan(const DistanceMatrix& dist, double eps, std::size_t min_pts);

ClusterAssignment dbscan_motifs(std::span<const Motif> motifs, std::span<const double> series,
                                double eps, std::size_t min_pts, const DistanceOptions& opts = {},
                                std::size_t threads = 0);

}  // namespace drivemotif
