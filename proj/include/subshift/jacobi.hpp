#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "subshift/errors.hpp"
#include "subshift/pattern.hpp"

namespace subshift {

// Pattern-equivariant function: the value at a configuration depends only on
// the window of radius N around the origin. Unlisted windows take the
// fallback value.
template <class T>
struct LocalFunction {
  int radius = 0;
  std::map<Word, T> table;
  T fallback{};

  T operator()(const Word& window) const {
    if (static_cast<int>(window.size()) != 2 * radius + 1)
      throw std::invalid_argument("window size does not match radius");
    auto it = table.find(window);
    return it == table.end() ? fallback : it->second;
  }

  static LocalFunction constant(T value) { return LocalFunction{0, {}, value}; }
};

// Jacobi data: hopping p (complex allowed, never zero on the discriminant
// path) and real potential q.
struct JacobiSpec {
  LocalFunction<std::complex<double>> hopping = LocalFunction<std::complex<double>>::constant(1.0);
  LocalFunction<double> potential = LocalFunction<double>::constant(0.0);

  // q = lambda on windows whose center letter matches, the usual one-letter
  // potential used throughout the examples.
  static JacobiSpec letter_potential(Letter which, double lambda) {
    JacobiSpec spec;
    spec.potential.radius = 0;
    spec.potential.table[{which}] = lambda;
    return spec;
  }
};

// One period of hopping/potential sequences sampled along a periodic
// configuration.
struct PeriodicJacobi {
  std::vector<std::complex<double>> p;
  std::vector<double> q;

  std::size_t period() const { return q.size(); }

  bool real_hopping(double tol = 0.0) const {
    for (const auto& v : p)
      if (std::abs(v.imag()) > tol) return false;
    return true;
  }

  bool nonzero_hopping() const {
    for (const auto& v : p)
      if (std::abs(v) == 0.0) return false;
    return true;
  }

  // Gershgorin-style bound: the operator norm is at most
  // max_m(|q_m| + |p_m| + |p_{m+1}|), so the spectrum lives inside.
  double energy_bound() const {
    double bound = 0.0;
    const std::size_t P = period();
    for (std::size_t m = 0; m < P; ++m)
      bound = std::max(bound, std::abs(q[m]) + std::abs(p[m]) + std::abs(p[(m + 1) % P]));
    return bound;
  }
};

// p_m and q_m read off the window at each site of one period.
inline PeriodicJacobi sample(const JacobiSpec& spec, const PeriodicConfiguration& cfg) {
  if (cfg.dim() != 1) throw std::invalid_argument("operator sampling is one-dimensional");
  const long P = cfg.tile.dims[0];
  PeriodicJacobi out;
  out.p.reserve(P);
  out.q.reserve(P);
  for (long m = 0; m < P; ++m) {
    Word pw = cfg.window({m - spec.hopping.radius}, {2 * spec.hopping.radius + 1}).cells;
    Word qw = cfg.window({m - spec.potential.radius}, {2 * spec.potential.radius + 1}).cells;
    out.p.push_back(spec.hopping(pw));
    out.q.push_back(spec.potential(qw));
  }
  return out;
}

}  // namespace subshift
