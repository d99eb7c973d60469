#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "flatgap/corpus.hpp"
#include "flatgap/targets.hpp"
#include "flatgap/gap_stats.hpp"
#include "oracles.hpp"

using namespace flatgap;

namespace {

const TranslationSurface<Rational>& torus() {
  static auto s = std::get<TranslationSurface<Rational>>(corpus_get("torus"));
  return s;
}

Rational q(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

Trapezoid<double> dtrap(double c, double sigma, double psi, int sign) {
  return Trapezoid<double>(c, sigma, psi, sign);
}

}  // namespace

TEST_CASE("trapezoid membership follows the closed convention") {
  Trapezoid<Rational> t(q(0), q(1, 2), q(1), +1);
  CHECK(trapezoid_membership(Vec2q(q(1), q(0)), t));        // shared corner
  CHECK(trapezoid_membership(Vec2q(q(1, 2), q(1, 5)), t));  // below y = x/2
  CHECK_FALSE(trapezoid_membership(Vec2q(q(1, 2), q(3, 10)), t));  // above
  CHECK(trapezoid_membership(Vec2q(q(1, 2), q(1, 4)), t));  // on the slant

  Trapezoid<Rational> tm(q(0), q(1, 2), q(1), -1);
  CHECK(trapezoid_membership(Vec2q(q(1), q(0)), tm));
  CHECK(trapezoid_membership(Vec2q(q(1, 2), q(-1, 5)), tm));
  CHECK_FALSE(trapezoid_membership(Vec2q(q(1, 2), q(1, 5)), tm));

  CHECK_THROWS_AS(Trapezoid<Rational>(q(1), q(1, 2), q(1), +1), Error);
  CHECK_THROWS_AS(Trapezoid<Rational>(q(0), q(2), q(1), +1), Error);
  CHECK_THROWS_AS(Trapezoid<Rational>(q(0), q(1, 2), q(1, 2), +1), Error);
}

TEST_CASE("membership agrees with the convex-hull oracle on random points") {
  std::mt19937_64 rng(321);
  std::uniform_real_distribution<double> uc(0.0, 0.8);
  std::uniform_real_distribution<double> us(0.05, 0.95);
  std::uniform_real_distribution<double> up(1.0, 4.0);
  std::uniform_real_distribution<double> ux(-0.2, 1.3);
  for (int config = 0; config < 20; ++config) {
    const double c = uc(rng), sigma = us(rng), psi = up(rng);
    const int sign = config % 2 ? +1 : -1;
    auto t = dtrap(c, sigma, psi, sign);
    std::vector<Vec2d> hull;
    for (const auto& v : t.corners()) hull.push_back(v);
    if (sign < 0) std::reverse(hull.begin(), hull.end());  // keep ccw
    for (int i = 0; i < 5000; ++i) {
      const Vec2d p(ux(rng), ux(rng) * sigma / psi * 1.5 * sign);
      const bool lib = trapezoid_membership(p, t);
      const bool oracle = oracles::convex_membership(p, hull);
      // skip points within float fuzz of the boundary
      const double margin = 1e-9;
      bool near_boundary = false;
      for (size_t e = 0; e < hull.size(); ++e) {
        if (point_segment_dist(p, hull[e], hull[(e + 1) % hull.size()]) <
            margin)
          near_boundary = true;
      }
      if (near_boundary) continue;
      CAPTURE(config);
      CAPTURE(p.x());
      CAPTURE(p.y());
      CHECK(lib == oracle);
    }
  }
}

TEST_CASE("h membership on the square torus and its flows") {
  // (1, 0) lies in both closed trapezoids whenever c <= 1
  Trapezoid<Rational> plus(q(0), q(1, 2), q(1), +1);
  Trapezoid<Rational> minus(q(0), q(1, 2), q(1), -1);
  CHECK(h_membership(torus(), plus, minus));

  // g_{log 3} torus: holonomies (3p, q/3); nothing lands in x in [0.9, 1]
  Mat2q g3;
  g3 << q(3), q(0), q(0), q(1, 3);
  const auto flowed = apply_matrix(torus(), g3);
  Trapezoid<Rational> plus9(q(9, 10), q(1, 2), q(1), +1);
  Trapezoid<Rational> minus9(q(9, 10), q(1, 2), q(1), -1);
  CHECK_FALSE(h_membership(flowed, plus9, minus9));

  // scale the torus up by 10: no holonomy in the unit-size trapezoids
  Mat2q ten;
  ten << q(10), q(0), q(0), q(10);
  CHECK_FALSE(h_membership(apply_matrix(torus(), ten), plus, minus));
}

TEST_CASE("a_k membership pulls back by the geodesic flow") {
  Trapezoid<Rational> plus(q(0), q(1, 2), q(1), +1);
  Trapezoid<Rational> minus(q(0), q(1, 2), q(1), -1);

  // k = 0 is exactly h membership
  CHECK(a_k_membership(torus(), q(2), 0, plus, minus) ==
        h_membership(torus(), plus, minus));

  // definition unwinding: s = g_{log b} s0 with s0 in H gives A_1 membership
  Mat2q gb = geodesic_pullback_power(q(2), -1);  // diag(2, 1/2)
  const auto s = apply_matrix(torus(), gb);
  CHECK(a_k_membership(s, q(2), 1, plus, minus));

  // pull back by two powers: horizontal vectors (p/4, 0) still hit both
  // closed trapezoids
  CHECK(a_k_membership(torus(), q(2), 2, plus, minus));

  // same call through the explicit pullback path is literal equality
  for (int k : {0, 1, 2, 3}) {
    const auto pulled =
        apply_matrix(torus(), geodesic_pullback_power(q(2), k));
    CHECK(a_k_membership(torus(), q(2), k, plus, minus) ==
          h_membership(pulled, plus, minus));
  }
}

TEST_CASE("a_k membership on the float model with b = e") {
  const auto sf = to_float_model(torus());
  Trapezoid<double> plus(0.0, 0.5, 1.0, +1);
  Trapezoid<double> minus(0.0, 0.5, 1.0, -1);
  CHECK(a_k_membership(sf, std::exp(1.0), 2, plus, minus));
}

TEST_CASE("monotonicity in sigma") {
  Mat2q shear;
  shear << q(1), q(1, 3), q(0), q(1);
  const auto sheared = apply_matrix(torus(), shear);
  for (int k : {0, 1, 2}) {
    bool prev = false;
    for (long sig = 1; sig <= 9; sig += 2) {
      Trapezoid<Rational> plus(q(0), q(sig, 10), q(1), +1);
      Trapezoid<Rational> minus(q(0), q(sig, 10), q(1), -1);
      const bool now = a_k_membership(sheared, q(2), k, plus, minus);
      if (prev) CHECK(now);  // A_k(0, s) subset of A_k(0, s') for s < s'
      prev = now;
    }
  }
}

TEST_CASE("sector annulus membership") {
  // S-type: (1, 0) sits in the band [0.9, 1.1]
  SectorAnnulus<Rational> band(q(81, 100), q(121, 100));
  CHECK(sector_annulus_membership(torus(), band, RegionKind::FullCircle));

  // W-type: no primitive direction in (pi/12, pi/6) with norm <= 1.5
  SectorAnnulus<Rational> w(q(81, 100), q(9, 4), M_PI / 12, M_PI / 6);
  CHECK_FALSE(sector_annulus_membership(torus(), w, RegionKind::Sector));

  // (1,1) and (1,-1) have angle +-pi/4: widen the sector and it hits
  SectorAnnulus<Rational> w2(q(81, 100), q(9, 4), M_PI / 12, M_PI / 3);
  CHECK(sector_annulus_membership(torus(), w2, RegionKind::Sector));

  CHECK_THROWS_AS(SectorAnnulus<Rational>(q(1), q(1)), Error);
  CHECK_THROWS_AS(SectorAnnulus<Rational>(q(2), q(1)), Error);
}

TEST_CASE("w band is empty exactly when c_H exceeds 1/sqrt(2)") {
  CHECK_NOTHROW(w_band(q(1, 2), q(1), q(7, 10)));    // 2*0.49 < 1
  CHECK_THROWS_AS(w_band(q(1, 2), q(1), q(3, 4)), Error);  // 2*(9/16) > 1
  CHECK_NOTHROW(s_band(q(1, 2), q(1), q(5, 4)));     // S band wants c_H < sqrt 2
  CHECK_THROWS_AS(s_band(q(1, 2), q(1), q(3, 2)), Error);
}

TEST_CASE("bump values follow the distance formula") {
  auto t = dtrap(0.0, 0.5, 1.0, +1);
  const double eps = 0.05;
  CHECK(bump_rho(Vec2d(-0.5, 0.3), t, eps) == 0.0);   // outside
  CHECK(bump_rho(Vec2d(0.5, 0.6), t, eps) == 0.0);    // above the slant
  // deep interior: distance clearly exceeds eps
  CHECK(bump_rho(Vec2d(0.8, 0.2), t, eps) == 1.0);
  // point at half depth: (0.5, eps/2) has boundary distance eps/2 to y = 0
  CHECK(bump_rho(Vec2d(0.5, eps / 2), t, eps) == doctest::Approx(0.5));
  CHECK_THROWS_AS(bump_rho(Vec2d(0.5, 0.1), t, 0.0), Error);

  CHECK(bump_ball(-0.1, eps) == 0.0);
  CHECK(bump_ball(eps / 2, eps) == doctest::Approx(0.5));
  CHECK(bump_ball(1.0, eps) == 1.0);
}

TEST_CASE("product bump is zero outside and one deep inside") {
  auto t1 = dtrap(0.0, 0.5, 2.0, +1);
  auto t2 = dtrap(0.0, 0.5, 2.0, -1);
  const double eps = 0.01;
  CHECK(product_bump(Vec2d(0.8, 0.1), Vec2d(0.8, -0.1), 0.5, t1, t2, eps) ==
        1.0);
  CHECK(product_bump(Vec2d(-1.0, 0.0), Vec2d(0.8, -0.1), 0.5, t1, t2, eps) ==
        0.0);
  CHECK(product_bump(Vec2d(0.8, 0.1), Vec2d(0.8, -0.1), -0.2, t1, t2, eps) ==
        0.0);
}

TEST_CASE("product bump is 1/eps-Lipschitz in the sum metric") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-0.3, 1.3);
  std::uniform_real_distribution<double> uy(-0.6, 0.6);
  std::uniform_real_distribution<double> ud(-0.5, 1.5);
  std::uniform_real_distribution<double> ueps(0.01, 0.2);
  for (int config = 0; config < 10; ++config) {
    const double eps = ueps(rng);
    auto t1 = dtrap(0.1 * config / 10.0, 0.4 + 0.02 * config, 1.0 + config,
                    +1);
    auto t2 = dtrap(0.0, 0.5, 1.0 + config, -1);
    for (int i = 0; i < 10000; ++i) {
      const Vec2d p1(ux(rng), uy(rng)), p2(ux(rng), uy(rng));
      const Vec2d q1(ux(rng), uy(rng)), q2(ux(rng), uy(rng));
      const double d1 = ud(rng), d2 = ud(rng);
      const double fp = product_bump(p1, p2, d1, t1, t2, eps);
      const double fq = product_bump(q1, q2, d2, t1, t2, eps);
      const double metric =
          (p1 - q1).norm() + (p2 - q2).norm() + std::abs(d1 - d2);
      CHECK(std::abs(fp - fq) <= metric / eps * (1.0 + 1e-9) + 1e-12);
    }
  }
}

TEST_CASE("epsilon_ij helper is pinned") {
  CHECK(epsilon_ij(3, 3, 0.5) == 1.0);
  CHECK(epsilon_ij(2, 7, 0.5) == doctest::Approx(std::exp(-0.625)));
  CHECK(epsilon_ij(7, 2, 0.5) == epsilon_ij(2, 7, 0.5));
  CHECK(epsilon_ij(1, 11, 0.2) == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("trapezoid area closed form") {
  // c=0, sigma=1/2, psi=2: area = (1/4)*(1/2) = 1/8
  CHECK(trapezoid_area(q(0), q(1, 2), q(2)) == q(1, 8));
  CHECK(trapezoid_area(0.0, 0.5, 2.0) == doctest::Approx(0.125));

  // epsilon -> 0: boundary area -> 0, inner -> total
  const double total = trapezoid_area(0.0, 0.5, 2.0);
  CHECK(epsilon_boundary_area(0.0, 0.5, 2.0, 1e-9) ==
        doctest::Approx(0.0).epsilon(1e-6));
  CHECK(inner_trapezoid_area(0.0, 0.5, 2.0, 0.0) == doctest::Approx(total));
  CHECK(epsilon_boundary_area(0.0, 0.5, 2.0, 0.0) == 0.0);

  CHECK_THROWS_AS(epsilon_boundary_area(0.5, 0.5, 2.0, 0.3), Error);
  CHECK_THROWS_AS(inner_trapezoid_area(0.9, 0.5, 2.0, 0.06), Error);
}

TEST_CASE("inner + boundary = total exactly, 1000 rational draws") {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<long> cn(0, 7), den(8, 16), sn(1, 9),
      pn(1, 40), en(1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Rational c = q(cn(rng), 10);
    const Rational sigma = q(sn(rng), 10);
    const Rational psi = Rational(1) + q(pn(rng), 10);
    // eps scaled by the height keeps the inner cross-section positive
    const Rational eps = sigma / psi * q(en(rng), 1000);
    auto [r1, r2] = area_identity_residuals(c, sigma, psi, eps);
    CHECK(r1 == Rational(0));
    CHECK(r2 == Rational(0));
  }
}

TEST_CASE("areas agree with Monte Carlo rejection sampling") {
  std::mt19937_64 rng(2718281);
  std::uniform_real_distribution<double> uc(0.0, 0.7);
  std::uniform_real_distribution<double> us(0.1, 0.9);
  std::uniform_real_distribution<double> up(1.0, 3.0);
  for (int config = 0; config < 5; ++config) {
    const double c = uc(rng), sigma = us(rng), psi = up(rng);
    auto t = dtrap(c, sigma, psi, +1);
    const double height = sigma / psi;
    const long n = 200000;
    long hits = 0;
    std::uniform_real_distribution<double> px(c, 1.0), py(0.0, height);
    for (long i = 0; i < n; ++i)
      if (trapezoid_membership(Vec2d(px(rng), py(rng)), t)) ++hits;
    const double box = (1.0 - c) * height;
    const double p = static_cast<double>(hits) / n;
    const double est = p * box;
    const double sigma_err = box * std::sqrt(p * (1 - p) / n);
    const double closed = trapezoid_area(c, sigma, psi);
    CAPTURE(c);
    CAPTURE(sigma);
    CAPTURE(psi);
    CHECK(std::abs(est - closed) <= 3.0 * sigma_err + 1e-12);
  }
}

TEST_CASE("pullback flow shrinks the gap below the arctan bound") {
  // plant holonomy vectors inside T^+- with slope at most sigma/(3 psi),
  // push the torus into A_k, pull back by s0 steps, and check the gap bound
  const Rational b = q(2);
  const int s0 = 1;  // ceil(log 2 / (2 log b)) for b = 2
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<long> xn(5, 9), yscale(1, 3), kpick(2, 4),
      sn(2, 8);
  for (int trial = 0; trial < 6; ++trial) {
    const int k = static_cast<int>(kpick(rng));
    const Rational sigma = q(sn(rng), 10);
    const Rational psi(1);
    const Rational xp = q(xn(rng), 10), xm = q(xn(rng), 10);
    const Rational yp = xp * sigma / (psi * q(3) * q(yscale(rng)));
    const Rational ym = xm * sigma / (psi * q(3) * q(yscale(rng)));
    Trapezoid<Rational> plus(q(0), sigma, psi, +1);
    Trapezoid<Rational> minus(q(0), sigma, psi, -1);
    REQUIRE(trapezoid_membership(Vec2q(xp, yp), plus));
    REQUIRE(trapezoid_membership(Vec2q(xm, -ym), minus));

    Mat2q m;
    m << xp, xm, yp, -ym;
    const auto in_h = apply_matrix(torus(), m);
    const auto s = apply_matrix(in_h, geodesic_pullback_power(b, -k));
    REQUIRE(a_k_membership(s, b, k, plus, minus));

    const auto pulled = apply_matrix(s, geodesic_pullback_power(b, s0));
    const Rational radius = [&] {
      Rational r(1);
      for (int i = 0; i < k; ++i) r = r * b;
      return r;
    }();
    const auto holo = enumerate_holonomies(pulled, radius);
    const double zeta = horizontal_gap(angles(holo));
    const double bound =
        std::atan(sigma.to_double() /
                  (psi.to_double() *
                   std::pow(b.to_double(), 2.0 * k - 2.0 * s0)));
    CAPTURE(trial);
    CHECK(zeta <= bound + 1e-12);
  }
}
