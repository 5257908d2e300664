#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace subshift {

// Finite union of disjoint closed intervals, sorted. The spectrum of a
// periodic Jacobi operator always has this form.
struct BandSet {
  std::vector<std::pair<double, double>> intervals;

  BandSet() = default;
  explicit BandSet(std::vector<std::pair<double, double>> iv) : intervals(std::move(iv)) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      if (intervals[i].first > intervals[i].second)
        throw std::invalid_argument("interval endpoints out of order");
      if (i > 0 && intervals[i - 1].second >= intervals[i].first)
        throw std::invalid_argument("intervals must be disjoint and sorted");
    }
  }

  bool empty() const { return intervals.empty(); }
  std::size_t count() const { return intervals.size(); }

  double min() const { return intervals.front().first; }
  double max() const { return intervals.back().second; }

  double distance(double x) const {
    if (empty()) throw std::invalid_argument("empty band set");
    double best = std::abs(x - intervals.front().first);
    for (const auto& [l, r] : intervals) {
      if (x >= l && x <= r) return 0.0;
      best = std::min({best, std::abs(x - l), std::abs(x - r)});
    }
    return best;
  }
};

// Bounded complement intervals; the unbounded components do not count.
inline std::vector<std::pair<double, double>> gaps(const BandSet& a) {
  if (a.empty()) throw std::invalid_argument("empty band set");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < a.intervals.size(); ++i)
    out.push_back({a.intervals[i].second, a.intervals[i + 1].first});
  return out;
}

// Exact Hausdorff distance from interval endpoints: the directed distance is
// attained at an endpoint of the source or at a gap midpoint of the target
// that lies inside the source.
inline double hausdorff(const BandSet& a, const BandSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty band set");
  auto directed = [](const BandSet& from, const BandSet& to) {
    double worst = 0.0;
    for (const auto& [l, r] : from.intervals)
      worst = std::max({worst, to.distance(l), to.distance(r)});
    for (const auto& [gl, gr] : gaps(to)) {
      double mid = 0.5 * (gl + gr);
      if (from.distance(mid) == 0.0) worst = std::max(worst, 0.5 * (gr - gl));
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

// Agreement between the bands and a finite sample of the same spectrum:
// every sample must lie in a band and every band edge must be attained by a
// sample. The eigenvalue curves flatten at band edges, so the edge error
// shrinks quadratically in the phase step; interior sample spacing is a
// property of the grid, not of either method, and does not count.
inline double hausdorff_to_samples(const BandSet& bands, const std::vector<double>& samples) {
  if (bands.empty() || samples.empty()) throw std::invalid_argument("empty spectrum");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  double worst = 0.0;
  for (double x : sorted) worst = std::max(worst, bands.distance(x));
  auto nearest = [&](double x) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    double best = std::numeric_limits<double>::infinity();
    if (it != sorted.end()) best = std::min(best, std::abs(*it - x));
    if (it != sorted.begin()) best = std::min(best, std::abs(*(it - 1) - x));
    return best;
  };
  for (const auto& [l, r] : bands.intervals) worst = std::max({worst, nearest(l), nearest(r)});
  return worst;
}

}  // namespace subshift
