#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "subshift/dictionary.hpp"
#include "subshift/floquet.hpp"
#include "subshift/jacobi.hpp"

namespace subshift {

struct SpectralConvergenceRow {
  int n;
  std::size_t period;
  std::size_t band_count;
  unsigned proximity;     // dictionary agreement level against the reference slice
  double hausdorff_to_ref;
  BandSet bands;
};

// Band sets of a family of periodic approximants against the finest one,
// paired with the local-pattern agreement of the corresponding slices.
// tiles[i] is the approximant at level n = n0 + i; the last entry is the
// reference.
inline std::vector<SpectralConvergenceRow> convergence_experiment(
    const Alphabet& alphabet, const std::vector<Word>& tiles, int n0, const JacobiSpec& spec,
    const DictionarySlice& reference_slice, double tol = 1e-10) {
  if (tiles.size() < 2) throw std::invalid_argument("need at least two approximants");
  std::vector<SpectralConvergenceRow> rows;
  std::vector<BandSet> bands;
  for (const auto& tile : tiles) {
    PeriodicConfiguration cfg(BlockPattern::from_word(tile));
    bands.push_back(band_set(sample(spec, cfg), tol).bands);
  }
  const BandSet& ref = bands.back();
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    PeriodicConfiguration cfg(BlockPattern::from_word(tiles[i]));
    DictionarySlice slice = periodic_dictionary(alphabet, cfg, reference_slice.cap);
    rows.push_back({n0 + static_cast<int>(i), tiles[i].size(), bands[i].count(),
                    proximity_index(slice, reference_slice), hausdorff(bands[i], ref),
                    bands[i]});
  }
  return rows;
}

// --- CSV emitters ------------------------------------------------------------

inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string band_table_csv(int n, std::size_t period, const BandSet& bands) {
  std::ostringstream os;
  os << "n,period,band_index,left_edge,right_edge\n";
  for (std::size_t i = 0; i < bands.count(); ++i)
    os << n << ',' << period << ',' << i << ',' << format_real(bands.intervals[i].first) << ','
       << format_real(bands.intervals[i].second) << '\n';
  return os.str();
}

inline std::string convergence_csv(const std::vector<SpectralConvergenceRow>& rows) {
  std::ostringstream os;
  os << "n,period,proximity_index,hausdorff_to_ref\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.period << ',';
    if (r.proximity == kAgreeToCap) {
      os << "inf";
    } else {
      os << r.proximity;
    }
    os << ',' << format_real(r.hausdorff_to_ref) << '\n';
  }
  return os.str();
}

}  // namespace subshift
