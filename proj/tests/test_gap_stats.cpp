#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "flatgap/corpus.hpp"
#include "flatgap/gap_stats.hpp"
#include "oracles.hpp"

using namespace flatgap;

namespace {

const TranslationSurface<Rational>& torus() {
  static auto s = std::get<TranslationSurface<Rational>>(corpus_get("torus"));
  return s;
}

AngleSet set_of(std::vector<double> angles) {
  return angle_set_from(std::move(angles), 1.0);
}

}  // namespace

TEST_CASE("angle sets sort, deduplicate, and count multiplicity") {
  auto a = set_of({M_PI_2, 0.0});
  CHECK(a.angles == std::vector<double>{0.0, M_PI_2});

  auto b = set_of({std::atan2(1, 1), std::atan2(2, 2)});
  CHECK(b.distinct_count() == 1);
  CHECK(b.multiplicity[0] == 2);
  CHECK(b.angles[0] == doctest::Approx(M_PI / 4));

  auto h = enumerate_holonomies_sq(torus(), Rational(BigInt(25), BigInt(4)));
  auto t = angles(h);
  CHECK(h.size() == 16);
  CHECK(t.distinct_count() == 16);  // all primitive directions distinct
  CHECK(t.total_count() == 16);
}

TEST_CASE("horizontal gap matches the definition") {
  CHECK(horizontal_gap(set_of({-M_PI_4, 0.0})) == doctest::Approx(M_PI_4));
  CHECK_THROWS_AS(horizontal_gap(set_of({M_PI / 6, M_PI / 3})), Error);

  // torus at R = 2.5: min nonneg 0 from (1,0), max neg -atan(1/2) from (2,-1)
  auto h = enumerate_holonomies_sq(torus(), Rational(BigInt(25), BigInt(4)));
  const double zeta = horizontal_gap(angles(h));
  CHECK(zeta == doctest::Approx(std::atan(0.5)).epsilon(1e-14));
}

TEST_CASE("horizontal gap equals brute force on random angle sets") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-M_PI, std::nextafter(M_PI, 0.0));
  std::uniform_int_distribution<int> size(2, 60);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> raw(size(rng));
    for (auto& a : raw) a = u(rng);
    double expect;
    if (!oracles::brute_force_gap(raw, &expect)) {
      CHECK_THROWS_AS(horizontal_gap(set_of(raw)), Error);
      continue;
    }
    ++checked;
    CHECK(horizontal_gap(set_of(raw)) == expect);
  }
  CHECK(checked > 800);
}

TEST_CASE("gap narrows as the angle set grows") {
  std::vector<Rational> grid;
  for (int r = 2; r <= 12; ++r) grid.push_back(Rational(r));
  double prev = INFINITY;
  for (const auto& r : grid) {
    auto h = enumerate_holonomies(torus(), r);
    const double zeta = horizontal_gap(angles(h));
    CHECK(zeta <= prev + 1e-15);
    prev = zeta;
  }
}

TEST_CASE("rotation covariance of angle sets") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  auto base = enumerate_holonomies(to_float_model(torus()), 4.0);
  auto base_angles = angles(base);
  const auto sf = to_float_model(torus());
  for (int trial = 0; trial < 100; ++trial) {
    const double phi = u(rng);
    auto rotated = apply_matrix(sf, rotation(phi));
    auto rot = angles(enumerate_holonomies(rotated, 4.0));
    REQUIRE(rot.distinct_count() == base_angles.distinct_count());
    // every rotated angle appears shifted by phi, mod 2*pi into [-pi, pi)
    std::vector<double> expect;
    for (double a : base_angles.angles) {
      double b = a + phi;
      while (b >= M_PI) b -= 2 * M_PI;
      while (b < -M_PI) b += 2 * M_PI;
      expect.push_back(b);
    }
    std::sort(expect.begin(), expect.end());
    for (size_t i = 0; i < expect.size(); ++i)
      CHECK(rot.angles[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }
}

TEST_CASE("normalized gap distribution has unit mean") {
  // equally spaced angles: every normalized gap is exactly 1
  std::vector<double> eq;
  const int n = 16;
  for (int i = 0; i < n; ++i) eq.push_back(-M_PI + 2 * M_PI * i / n);
  auto d = gap_distribution(set_of(eq));
  for (double g : d.normalized_gaps) CHECK(g == doctest::Approx(1.0));
  CHECK(d.mean_gap == doctest::Approx(1.0));

  // two antipodal angles: both cyclic gaps normalize to 1
  auto two = gap_distribution(set_of({0.0, -M_PI}));
  REQUIRE(two.normalized_gaps.size() == 2);
  CHECK(two.normalized_gaps[0] == doctest::Approx(1.0));
  CHECK(two.normalized_gaps[1] == doctest::Approx(1.0));

  CHECK_THROWS_AS(gap_distribution(set_of({0.5})), Error);

  double mass = 0;
  for (double m : two.mass) mass += m;
  CHECK(mass == doctest::Approx(1.0));
}

TEST_CASE("lattice surface gaps stay away from zero") {
  auto h = enumerate_holonomies(torus(), Rational(40));
  auto d = gap_distribution(angles(h));
  CHECK(d.mean_gap == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.min_gap > 0.05);  // no small normalized gaps on a lattice surface
}

TEST_CASE("trajectory reproduces the single-point example") {
  auto psi1 = RateFunction::parse("1");
  auto traj = liminf_trajectory(torus(), psi1, {2.5});
  REQUIRE(traj.samples.size() == 1);
  CHECK(traj.samples[0].count == 16);
  CHECK(traj.samples[0].scaled ==
        doctest::Approx(6.25 * std::atan(0.5)).epsilon(1e-12));
  CHECK(traj.samples[0].running_min == traj.samples[0].scaled);
}

TEST_CASE("trajectory scales multiplicatively in psi") {
  auto psi1 = RateFunction::parse("1");
  auto psi2 = RateFunction::parse("2");
  auto psi4 = RateFunction::parse("4*1");
  std::vector<double> grid = {2.0, 3.0, 5.0, 8.0};
  auto t1 = liminf_trajectory(torus(), psi1, grid);
  auto t2 = liminf_trajectory(torus(), psi2, grid);
  auto t4 = liminf_trajectory(torus(), psi4, grid);
  REQUIRE(t1.samples.size() == t2.samples.size());
  for (size_t i = 0; i < t1.samples.size(); ++i) {
    CHECK(t2.samples[i].scaled == 2.0 * t1.samples[i].scaled);
    CHECK(t4.samples[i].scaled == 4.0 * t1.samples[i].scaled);
    CHECK(t2.samples[i].running_min == 2.0 * t1.samples[i].running_min);
  }
}

TEST_CASE("grid points below the systole are dropped with warnings") {
  auto psi1 = RateFunction::parse("1");
  auto traj = liminf_trajectory(torus(), psi1, {0.5, 0.9, 2.5});
  CHECK(traj.samples.size() == 1);
  CHECK(traj.warnings.size() == 2);
  CHECK(traj.samples[0].radius == 2.5);
}

TEST_CASE("v_delta formula") {
  CHECK(v_delta(torus(), 0.25, Rational(2)) == 1.0);  // systole 1

  Mat2q g;  // g_{log 2}: systole 1/2
  g << Rational(2), Rational(0), Rational(0), Rational(BigInt(1), BigInt(2));
  auto half = apply_matrix(torus(), g);
  CHECK(v_delta(half, 0.25, Rational(2)) ==
        doctest::Approx(std::pow(2.0, 1.25)));

  Mat2q g4;  // g_{log 4}: systole 1/4, delta = 1/2 -> 0.25^{-1.5} = 8
  g4 << Rational(4), Rational(0), Rational(0), Rational(BigInt(1), BigInt(4));
  auto quarter = apply_matrix(torus(), g4);
  CHECK(v_delta(quarter, 0.5, Rational(2)) == doctest::Approx(8.0));

  CHECK_THROWS_AS(v_delta(torus(), 0.25, Rational(BigInt(1), BigInt(10))),
                  Error);
  CHECK_THROWS_AS(v_delta(torus(), 1.5, Rational(2)), Error);
}

TEST_CASE("circle average of a constant is exact") {
  const auto sf = to_float_model(torus());
  for (double t : {0.0, 1.0, 2.0}) {
    for (int n : {8, 64}) {
      auto avg = circle_average(sf, [](const auto&) { return 3.25; }, t, n);
      CHECK(avg.value == 3.25);
      CHECK(avg.max_integrand == 3.25);
    }
  }
  CHECK_THROWS_AS(
      circle_average(sf, [](const auto&) { return 1.0; }, 0.0, 12), Error);
  CHECK_THROWS_AS(
      circle_average(sf, [](const auto&) { return 1.0; }, 0.0, 4), Error);
}

TEST_CASE("circle average of v_delta self-converges") {
  const auto sf = to_float_model(torus());
  auto vd = [](const TranslationSurface<double>& s) {
    return v_delta(s, 0.5, 4.0);
  };
  // t = 0: rotations preserve the systole, so the average is exactly 1
  auto coarse = circle_average(sf, vd, 0.0, 16);
  CHECK(coarse.value == doctest::Approx(1.0));

  // t = 1: nontrivial integrand; halve the step twice and compare within 1%
  auto a = circle_average(sf, vd, 1.0, 64);
  auto b = circle_average(sf, vd, 1.0, 1024);
  CHECK(std::abs(a.value - b.value) <= 0.01 * std::abs(b.value));
}

TEST_CASE("circle averages of v_delta admit a contraction-plus-constant fit") {
  const auto sf = to_float_model(torus());
  const double delta = 0.25;
  auto vd = [&](const TranslationSurface<double>& s) {
    return v_delta(s, delta, 6.0);
  };
  const double v0 = v_delta(sf, delta, 6.0);
  std::vector<double> averages;
  for (double t : {0.0, 1.0, 2.0})
    averages.push_back(circle_average(sf, vd, t, 256).value);
  // fit Ave_t <= c e^{-(1-delta) t} V_delta + b with minimal slack
  const double b = averages.back();
  double c = 0;
  for (size_t i = 0; i < averages.size(); ++i) {
    const double decay = std::exp(-(1 - delta) * static_cast<double>(i));
    c = std::max(c, (averages[i] - b) / (decay * v0));
  }
  for (size_t i = 0; i < averages.size(); ++i) {
    const double decay = std::exp(-(1 - delta) * static_cast<double>(i));
    CHECK(averages[i] <= c * decay * v0 + b + 1e-9);
    CHECK(averages[i] > 0.0);
  }
}
