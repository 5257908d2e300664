#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "subshift/band_set.hpp"
#include "subshift/errors.hpp"
#include "subshift/jacobi.hpp"

namespace subshift {

namespace detail {

// 2x2 transfer product with power-of-two rescaling so deep-gap growth cannot
// overflow; value = m * 2^scale. The peak magnitude decides whether the
// determinant identity is checkable: det = ad - bc cancels catastrophically
// once the product grows, so the telescoping assert only applies while the
// whole product history stayed small.
struct Scaled2x2 {
  double a = 1, b = 0, c = 0, d = 1;
  long scale = 0;
  double peak = 1;

  void normalize() {
    double mag = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (mag == 0.0 || !std::isfinite(mag)) return;
    if (scale == 0) peak = std::max(peak, mag);
    int e = 0;
    std::frexp(mag, &e);
    if (e > 512 || e < -512) {
      a = std::ldexp(a, -e);
      b = std::ldexp(b, -e);
      c = std::ldexp(c, -e);
      d = std::ldexp(d, -e);
      scale += e;
    }
  }

  double trace() const { return std::ldexp(a + d, static_cast<int>(scale)); }
  double det_scaled() const { return a * d - b * c; }
};

inline Scaled2x2 transfer_product(const PeriodicJacobi& j, double energy) {
  const std::size_t P = j.period();
  Scaled2x2 m;
  for (std::size_t k = 0; k < P; ++k) {
    const double pk = j.p[k].real();
    const double pk1 = j.p[(k + 1) % P].real();
    const double t = (energy - j.q[k]) / pk1;
    const double u = -pk / pk1;
    // A_k = [[t, u], [1, 0]], applied on the left
    const double a = t * m.a + u * m.c;
    const double b = t * m.b + u * m.d;
    m.c = m.a;
    m.d = m.b;
    m.a = a;
    m.b = b;
    m.normalize();
  }
  return m;
}

}  // namespace detail

// Trace of the period transfer-matrix product. The determinant telescopes to
// one, which is asserted whenever the product is small enough for the check
// to be representable.
inline double discriminant(const PeriodicJacobi& j, double energy) {
  if (j.period() == 0) throw std::invalid_argument("empty operator");
  if (!j.nonzero_hopping()) throw NumericError("degenerate hopping: discriminant undefined");
  if (!j.real_hopping(1e-14))
    throw NumericError("complex hopping: use the Bloch spectrum instead");
  detail::Scaled2x2 m = detail::transfer_product(j, energy);
  if (m.scale == 0 && m.peak <= 128.0 && std::abs(m.det_scaled() - 1.0) > 1e-10)
    throw NumericError("transfer product determinant drifted from one");
  return m.trace();
}

// Spectrum sampled on a uniform Bloch-phase grid: eigenvalues of the
// self-adjoint P x P matrix with diagonal q, hopping on the sub/super
// diagonal and the phase on the wrap-around corner. Supports complex
// hopping; sorted union over the grid.
inline std::vector<double> bloch_spectrum(const PeriodicJacobi& j, int phases) {
  const std::size_t P = j.period();
  if (P == 0) throw std::invalid_argument("empty operator");
  if (phases < 1) throw std::invalid_argument("need at least one phase");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(phases) * P);
  Eigen::MatrixXcd h(P, P);
  for (int g = 0; g < phases; ++g) {
    const double theta = 2.0 * M_PI * g / phases;
    const std::complex<double> phase(std::cos(theta), std::sin(theta));
    h.setZero();
    for (std::size_t m = 0; m < P; ++m) h(m, m) = j.q[m];
    for (std::size_t m = 1; m < P; ++m) {
      h(m, m - 1) += j.p[m];
      h(m - 1, m) += std::conj(j.p[m]);
    }
    const std::complex<double> wrap = j.p[0] * phase;
    if (P == 1) {
      h(0, 0) += wrap + std::conj(wrap);
    } else {
      h(0, P - 1) += wrap;
      h(P - 1, 0) += std::conj(wrap);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("Bloch eigensolver failed");
    for (std::size_t m = 0; m < P; ++m) out.push_back(solver.eigenvalues()[m]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct BandComputation {
  BandSet bands;
  std::vector<int> multiplicity;      // elementary bands inside each interval
  std::vector<double> touch_points;   // closed gaps merged into a band
  bool tangency_warning = false;

  std::size_t multiplicity_sum() const {
    std::size_t total = 0;
    for (int m : multiplicity) total += static_cast<std::size_t>(m);
    return total;
  }
};

namespace detail {

// Roots of f between grid points where the precomputed values change sign.
inline void bisect_roots(const std::function<double(double)>& f, const std::vector<double>& grid,
                         const std::vector<double>& values, double tol, std::vector<double>& roots) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double fa = values[i], fb = values[i + 1];
    if (fa == 0.0) roots.push_back(grid[i]);
    if (!(fa < 0) == !(fb < 0)) continue;  // no sign change
    double a = grid[i], b = grid[i + 1];
    while (b - a > tol) {
      double mid = 0.5 * (a + b);
      double fm = f(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fa < 0) != (fm < 0)) {
        b = mid;
      } else {
        a = mid;
        fa = fm;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  if (!grid.empty() && values.back() == 0.0) roots.push_back(grid.back());
}

}  // namespace detail

// Band structure by discriminant root-finding: locate all solutions of
// Delta(E) = +-2 inside the energy bound by bracketing on a grid plus
// bisection, then assemble the bands by walking the roots. Outside the
// spectrum |Delta| > 2, and inside a band Delta is monotone between its
// edges (an interior extremum forces |Delta| = 2, a closed gap), so the
// crossing families alone determine where the bands lie; this survives
// bands far narrower than any evaluation grid. Interior touch points are
// recorded and the surrounding elementary bands merge.
inline BandComputation band_set(const PeriodicJacobi& j, double tol = 1e-10) {
  const std::size_t P = j.period();
  if (P == 0) throw std::invalid_argument("empty operator");
  auto delta = [&](double e) { return discriminant(j, e); };

  const double bound = j.energy_bound();
  const double margin = std::max(1e-3, 1e-3 * bound);
  const double lo = -bound - margin, hi = bound + margin;

  struct Root {
    double energy;
    int family;  // +1 for Delta = 2, -1 for Delta = -2
  };
  std::vector<Root> roots;
  int grid_points = std::max<int>(static_cast<int>(8 * P * 16), 256);
  const int max_refine = 6;
  bool unresolved = false;
  for (int attempt = 0;; ++attempt) {
    roots.clear();
    std::vector<double> grid(grid_points);
    for (int i = 0; i < grid_points; ++i)
      grid[i] = lo + (hi - lo) * i / (grid_points - 1);
    std::vector<double> plus(grid_points), minus(grid_points);
    for (int i = 0; i < grid_points; ++i) {
      double v = delta(grid[i]);
      plus[i] = v - 2.0;
      minus[i] = v + 2.0;
    }
    for (int family : {+1, -1}) {
      std::vector<double> found;
      detail::bisect_roots([&](double e) { return delta(e) - 2.0 * family; }, grid,
                           family > 0 ? plus : minus, tol, found);
      // same-family duplicates are bisection artifacts
      std::sort(found.begin(), found.end());
      found.erase(std::unique(found.begin(), found.end(),
                              [&](double a, double b) { return b - a <= tol; }),
                  found.end());
      for (double e : found) roots.push_back({e, family});
    }
    std::sort(roots.begin(), roots.end(),
              [](const Root& a, const Root& b) { return a.energy < b.energy; });
    if (roots.size() >= 2 * P || attempt >= max_refine) break;
    grid_points *= 2;  // suspected tangency or unresolved bracket: refine
  }
  if (roots.size() < 2) throw NumericError("band edges not bracketed");

  // Walk the roots. Legal transitions: above --(+2)--> inside, below
  // --(-2)--> inside, inside --(either)--> that side. Coincident roots of
  // opposite family can come back in either order; a swap repairs them.
  enum State { Above, Below, Inside };
  double at_lo = delta(lo);
  if (std::abs(at_lo) <= 2.0) throw NumericError("energy bound does not clear the spectrum");
  State state = at_lo > 0 ? Above : Below;
  std::vector<std::pair<double, double>> intervals;
  double band_start = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    bool legal = (state == Inside) || (state == Above && roots[i].family > 0) ||
                 (state == Below && roots[i].family < 0);
    if (!legal && i + 1 < roots.size() && roots[i + 1].energy - roots[i].energy <= 4 * tol &&
        roots[i + 1].family != roots[i].family) {
      std::swap(roots[i], roots[i + 1]);
      legal = (state == Above && roots[i].family > 0) || (state == Below && roots[i].family < 0);
    }
    if (!legal) {
      unresolved = true;  // a missed even crossing; skip the stray root
      continue;
    }
    if (state == Inside) {
      intervals.push_back({band_start, roots[i].energy});
      state = roots[i].family > 0 ? Above : Below;
    } else {
      band_start = roots[i].energy;
      state = Inside;
    }
  }
  if (state == Inside) unresolved = true;  // band left open at the window end
  if (intervals.empty()) throw NumericError("no spectral bands found");

  // Closed gaps are the interior extrema of Delta inside a band: inside the
  // spectrum Delta' only vanishes where |Delta| reaches 2, so every interior
  // extremum is a touch point. Slopes of a dense sample bracket the extrema;
  // ternary refinement pins each extremal value.
  BandComputation result;
  result.bands = BandSet(intervals);
  result.tangency_warning = unresolved;
  const double touch_tol = std::max(tol * 100, 1e-7);
  auto refine_extremum = [&](double a, double b, bool maximum) {
    for (int it = 0; it < 120 && b - a > tol * 1e-3; ++it) {
      double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
      double f1 = delta(m1), f2 = delta(m2);
      if (maximum ? f1 < f2 : f1 > f2) {
        a = m1;
      } else {
        b = m2;
      }
    }
    return 0.5 * (a + b);
  };
  for (const auto& [l, r] : intervals) {
    int touches = 0;
    const int probes = std::max<int>(64, static_cast<int>(16 * P));
    const double step = (r - l) / probes;
    if (step > 0) {
      std::vector<double> sample(probes + 1);
      for (int i = 0; i <= probes; ++i) sample[i] = delta(l + step * i);
      for (int i = 1; i < probes; ++i) {
        double dl = sample[i] - sample[i - 1];
        double dr = sample[i + 1] - sample[i];
        if (dl == 0.0 || (dl < 0) == (dr < 0)) continue;
        bool maximum = dl > 0;
        double ext = refine_extremum(l + step * (i - 1), l + step * (i + 1), maximum);
        double value = delta(ext);
        if (ext > l + tol && ext < r - tol && std::abs(std::abs(value) - 2.0) <= touch_tol) {
          ++touches;
          result.touch_points.push_back(ext);
        }
      }
    }
    result.multiplicity.push_back(1 + touches);
  }
  if (result.multiplicity_sum() != P) result.tangency_warning = true;
  return result;
}

}  // namespace subshift
