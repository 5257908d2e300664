#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "subshift/builtins.hpp"
#include "subshift/convergence.hpp"

using namespace subshift;

namespace {

const Alphabet kAB = Alphabet::from_letters("ab");

PeriodicJacobi op_for(const std::string& tile, double lambda) {
  return sample(JacobiSpec::letter_potential(0, lambda),
                PeriodicConfiguration(BlockPattern::from_word(parse_word(kAB, tile))));
}

PeriodicJacobi random_op(std::mt19937& rng, int period) {
  std::uniform_real_distribution<double> q(-2.0, 2.0);
  std::uniform_real_distribution<double> p(0.3, 2.0);
  PeriodicJacobi j;
  for (int m = 0; m < period; ++m) {
    j.p.emplace_back(p(rng), 0.0);
    j.q.push_back(q(rng));
  }
  return j;
}

}  // namespace

TEST_CASE("sampling local functions along a configuration") {
  PeriodicJacobi free_op = op_for("ab", 0.0);
  CHECK(free_op.p == std::vector<std::complex<double>>{1.0, 1.0});
  CHECK(free_op.q == std::vector<double>{0.0, 0.0});

  PeriodicJacobi fib = op_for("ab", 1.0);
  CHECK(fib.q == std::vector<double>{1.0, 0.0});

  // radius-1 table keyed on the three windows of (aba)^inf
  LocalFunction<double> f;
  f.radius = 1;
  f.table[parse_word(kAB, "aab")] = 5.0;
  f.table[parse_word(kAB, "aba")] = 7.0;
  f.table[parse_word(kAB, "baa")] = 9.0;
  JacobiSpec spec;
  spec.potential = f;
  PeriodicJacobi j =
      sample(spec, PeriodicConfiguration(BlockPattern::from_word(parse_word(kAB, "aba"))));
  CHECK(j.q == std::vector<double>{5.0, 7.0, 9.0});
}

TEST_CASE("discriminant closed forms") {
  PeriodicJacobi free1 = op_for("a", 0.0);
  for (double e : {-2.0, -0.5, 0.0, 1.5, 2.0}) CHECK(discriminant(free1, e) == Catch::Approx(e));

  PeriodicJacobi free2 = op_for("ab", 0.0);
  for (double e : {-1.5, 0.0, 0.7, 2.0})
    CHECK(discriminant(free2, e) == Catch::Approx(e * e - 2.0));

  PeriodicJacobi impurity = op_for("ab", 2.0);
  for (double e : {-1.0, 0.0, 0.5, 3.0})
    CHECK(discriminant(impurity, e) == Catch::Approx(e * (e - 2.0) - 2.0));
  CHECK(discriminant(impurity, 0.0) == Catch::Approx(-2.0));

  PeriodicJacobi zero;
  zero.p = {0.0};
  zero.q = {0.0};
  CHECK_THROWS_AS(discriminant(zero, 0.0), NumericError);

  PeriodicJacobi complex_hop;
  complex_hop.p = {{0.0, 1.0}};
  complex_hop.q = {0.0};
  CHECK_THROWS_AS(discriminant(complex_hop, 0.0), NumericError);
}

TEST_CASE("transfer product determinant telescopes") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> period(1, 16);
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 200; ++trial) {
    PeriodicJacobi j = random_op(rng, period(rng));
    std::uniform_real_distribution<double> energy(-j.energy_bound(), j.energy_bound());
    double e = energy(rng);
    detail::Scaled2x2 m = detail::transfer_product(j, e);
    // the identity is only representable while the product stays small;
    // cancellation in ad - bc hides it otherwise
    if (m.scale != 0 || m.peak > 128.0) continue;
    CHECK(std::abs(m.det_scaled() - 1.0) <= 1e-10);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("band structure of the free and impurity operators") {
  BandComputation free1 = band_set(op_for("a", 0.0), 1e-10);
  REQUIRE(free1.bands.count() == 1);
  CHECK(free1.bands.intervals[0].first == Catch::Approx(-2.0).margin(1e-8));
  CHECK(free1.bands.intervals[0].second == Catch::Approx(2.0).margin(1e-8));
  CHECK(free1.multiplicity_sum() == 1);

  // free period 2: same spectrum, one touch point at 0
  BandComputation free2 = band_set(op_for("ab", 0.0), 1e-10);
  REQUIRE(free2.bands.count() == 1);
  CHECK(free2.bands.min() == Catch::Approx(-2.0).margin(1e-8));
  CHECK(free2.bands.max() == Catch::Approx(2.0).margin(1e-8));
  CHECK(free2.multiplicity_sum() == 2);
  REQUIRE(free2.touch_points.size() == 1);
  CHECK(free2.touch_points[0] == Catch::Approx(0.0).margin(1e-6));
  CHECK_FALSE(free2.tangency_warning);

  // impurity: edges are the roots of E(E-2) = +-2, i.e. 1 +- sqrt5, 0, 2
  BandComputation imp = band_set(op_for("ab", 2.0), 1e-10);
  REQUIRE(imp.bands.count() == 2);
  const double s5 = std::sqrt(5.0);
  CHECK(imp.bands.intervals[0].first == Catch::Approx(1.0 - s5).margin(1e-8));
  CHECK(imp.bands.intervals[0].second == Catch::Approx(0.0).margin(1e-8));
  CHECK(imp.bands.intervals[1].first == Catch::Approx(2.0).margin(1e-8));
  CHECK(imp.bands.intervals[1].second == Catch::Approx(1.0 + s5).margin(1e-8));

  auto g = gaps(imp.bands);
  REQUIRE(g.size() == 1);
  CHECK(g[0].first == Catch::Approx(0.0).margin(1e-8));
  CHECK(g[0].second == Catch::Approx(2.0).margin(1e-8));
}

TEST_CASE("Fibonacci approximant bands, frozen from the first validated run") {
  // period-5 approximant (abaab)^inf at lambda = 1; edges cross-checked
  // against the Bloch oracle and the explicit degree-5 discriminant
  // E^5 - 3E^4 - 2E^3 + 8E^2 + E - 3
  BandComputation bc = band_set(op_for("abaab", 1.0), 1e-10);
  REQUIRE(bc.bands.count() == 5);
  CHECK(bc.multiplicity_sum() == 5);
  const double expected[5][2] = {
      {-1.4811943040920408, -1.2143197433776316},
      {-1.0, -0.41421356237309503},
      {0.31110781746598189, 1.0},
      {1.5391888728108891, 2.1700864866260337},
      {2.4142135623730951, 2.6751308705666460},
  };
  for (int i = 0; i < 5; ++i) {
    CHECK(bc.bands.intervals[i].first == Catch::Approx(expected[i][0]).margin(1e-8));
    CHECK(bc.bands.intervals[i].second == Catch::Approx(expected[i][1]).margin(1e-8));
  }
}

TEST_CASE("Bloch spectrum closed forms and oracle agreement") {
  // P = 1 free: {2 cos theta}
  PeriodicJacobi free1 = op_for("a", 0.0);
  std::vector<double> s = bloch_spectrum(free1, 8);
  std::vector<double> expect;
  for (int g = 0; g < 8; ++g) expect.push_back(2 * std::cos(2 * M_PI * g / 8));
  std::sort(expect.begin(), expect.end());
  REQUIRE(s.size() == expect.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == Catch::Approx(expect[i]).margin(1e-12));

  // P = 2 free: +-sqrt(2 + 2 cos theta)
  PeriodicJacobi free2 = op_for("ab", 0.0);
  std::vector<double> s2 = bloch_spectrum(free2, 16);
  std::vector<double> expect2;
  for (int g = 0; g < 16; ++g) {
    double root = std::sqrt(2 + 2 * std::cos(2 * M_PI * g / 16));
    expect2.push_back(root);
    expect2.push_back(-root);
  }
  std::sort(expect2.begin(), expect2.end());
  REQUIRE(s2.size() == expect2.size());
  for (std::size_t i = 0; i < s2.size(); ++i)
    CHECK(s2[i] == Catch::Approx(expect2[i]).margin(1e-12));

  // sampled set converges to the band set quadratically in the phase step;
  // odd grid sizes keep theta = pi between samples so the edge error is
  // visible instead of landing on an exact sample
  PeriodicJacobi fib5 = op_for("abaab", 1.0);
  BandSet bands = band_set(fib5, 1e-10).bands;
  std::vector<double> dists;
  for (int grid : {255, 509, 1021})
    dists.push_back(hausdorff_to_samples(bands, bloch_spectrum(fib5, grid)));
  CHECK(dists[1] < 0.3 * dists[0]);
  CHECK(dists[2] < 0.3 * dists[1]);
  CHECK(dists[2] < 1e-3);

  // complex hopping goes through the Bloch route only
  PeriodicJacobi complex_hop;
  complex_hop.p = {{0.0, 1.0}, {1.0, 0.0}};
  complex_hop.q = {0.0, 0.0};
  CHECK_NOTHROW(bloch_spectrum(complex_hop, 64));
}

TEST_CASE("hausdorff distance on band sets") {
  BandSet x({{0.0, 1.0}});
  CHECK(hausdorff(x, x) == 0.0);
  CHECK(hausdorff(BandSet({{0.0, 1.0}}), BandSet({{3.0, 3.0}})) == 3.0);

  const double eps = 0.25;
  BandSet full({{-2.0, 2.0}});
  BandSet split({{-2.0, -eps}, {eps, 2.0}});
  CHECK(hausdorff(full, split) == Catch::Approx(eps));

  CHECK_THROWS_AS(hausdorff(full, BandSet{}), std::invalid_argument);
}

TEST_CASE("hausdorff metric axioms on random band sets") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> point(-3.0, 3.0);
  std::uniform_int_distribution<int> pieces(1, 4);
  auto random_bands = [&]() {
    std::vector<double> cuts;
    int n = pieces(rng);
    for (int i = 0; i < 2 * n; ++i) cuts.push_back(point(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<double, double>> iv;
    for (int i = 0; i < n; ++i) iv.push_back({cuts[2 * i], cuts[2 * i + 1]});
    // enforce strict disjointness
    for (std::size_t i = 1; i < iv.size(); ++i)
      if (iv[i].first <= iv[i - 1].second) iv[i].first = iv[i - 1].second + 1e-6;
    for (std::size_t i = 0; i < iv.size(); ++i)
      if (iv[i].second < iv[i].first) iv[i].second = iv[i].first;
    return BandSet(iv);
  };
  for (int trial = 0; trial < 200; ++trial) {
    BandSet a = random_bands(), b = random_bands(), c = random_bands();
    double ab = hausdorff(a, b), ba = hausdorff(b, a);
    CHECK(ab == ba);
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(a, c) <= ab + hausdorff(b, c) + 1e-12);
  }
}

TEST_CASE("gap extraction") {
  CHECK(gaps(BandSet({{-2.0, 2.0}})).empty());
  auto g = gaps(BandSet({{0.0, 1.0}, {2.0, 3.0}}));
  REQUIRE(g.size() == 1);
  CHECK(g[0] == std::pair<double, double>{1.0, 2.0});
}

TEST_CASE("band count equals the period after unmerging") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> period(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    PeriodicJacobi j = random_op(rng, period(rng));
    BandComputation bc = band_set(j, 1e-10);
    INFO("trial " << trial << " period " << j.period());
    CHECK(bc.multiplicity_sum() == j.period());
    CHECK_FALSE(bc.tangency_warning);
  }
  for (int n = 1; n <= 6; ++n) {
    Word tile = builtin_approximant_tile(Builtin::PeriodDoubling, n);
    BandComputation bc = band_set(op_for(format_word(kAB, tile), 1.0), 1e-10);
    CHECK(bc.multiplicity_sum() == tile.size());
  }
}

TEST_CASE("spectrum is invariant under cyclic rotation of the period") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    PeriodicJacobi j = random_op(rng, 6);
    BandSet base = band_set(j, 1e-10).bands;
    PeriodicJacobi rotated;
    for (std::size_t m = 0; m < j.period(); ++m) {
      rotated.p.push_back(j.p[(m + 1) % j.period()]);
      rotated.q.push_back(j.q[(m + 1) % j.period()]);
    }
    BandSet rot = band_set(rotated, 1e-10).bands;
    CHECK(hausdorff(base, rot) < 1e-8);
  }
}

TEST_CASE("zero coupling reduces to the free band") {
  for (Builtin b : {Builtin::Fibonacci, Builtin::ThueMorse, Builtin::PeriodDoubling}) {
    Word tile = builtin_approximant_tile(b, 4);
    BandComputation bc = band_set(op_for(format_word(kAB, tile), 0.0), 1e-10);
    REQUIRE(bc.bands.count() == 1);
    CHECK(bc.bands.min() == Catch::Approx(-2.0).margin(1e-8));
    CHECK(bc.bands.max() == Catch::Approx(2.0).margin(1e-8));
    CHECK(bc.multiplicity_sum() == tile.size());
  }
}

TEST_CASE("convergence experiment emits the pinned CSV columns") {
  std::vector<Word> tiles;
  for (int n = 1; n <= 4; ++n) tiles.push_back(builtin_approximant_tile(Builtin::Fibonacci, n));
  auto rows = convergence_experiment(kAB, tiles, 1, JacobiSpec::letter_potential(0, 1.0),
                                     builtin_slice(Builtin::Fibonacci, 6), 1e-10);
  REQUIRE(rows.size() == 4);
  CHECK(rows.back().hausdorff_to_ref == 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].proximity >= rows[i - 1].proximity);
  std::string csv = convergence_csv(rows);
  CHECK(csv.rfind("n,period,proximity_index,hausdorff_to_ref\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  // a potential blind to the letters makes every distance vanish
  auto flat = convergence_experiment(kAB, tiles, 1, JacobiSpec::letter_potential(0, 0.0),
                                     builtin_slice(Builtin::Fibonacci, 6), 1e-10);
  for (const auto& r : flat) CHECK(r.hausdorff_to_ref <= 1e-8);
}
