#pragma once

#include <cmath>
#include <utility>

#include "flatgap/enumerate.hpp"
#include "flatgap/rate_function.hpp"

namespace flatgap {

// ---------------------------------------------------------------------------
// Trapezoid targets.
//
// T_{c,sigma,j}^+- has corners (c, 0), (1, 0), (1, +-sigma/psi),
// (c, +-c*sigma/psi) where psi = psi(b^j) >= 1. With c = 0 the trapezoid
// degenerates to a triangle with corner (0, 0); the formulas still apply.
// All region predicates use the closed boundary convention.
// ---------------------------------------------------------------------------

template <typename S>
struct Trapezoid {
  S c;
  S sigma;
  S psi_value;
  int sign = +1;  // +1 upper, -1 lower

  Trapezoid(S c_, S sigma_, S psi_value_, int sign_)
      : c(std::move(c_)),
        sigma(std::move(sigma_)),
        psi_value(std::move(psi_value_)),
        sign(sign_) {
    if (!(c >= S(0) && c < S(1)))
      throw Error(ErrorCode::DegenerateRegion, "targets",
                  "c must lie in [0, 1)");
    if (!(sigma > S(0) && sigma < S(1)))
      throw Error(ErrorCode::DegenerateRegion, "targets",
                  "sigma must lie in (0, 1)");
    if (!(psi_value >= S(1)))
      throw Error(ErrorCode::DegenerateRegion, "targets",
                  "psi value must be >= 1");
    if (sign != 1 && sign != -1)
      throw Error(ErrorCode::DegenerateRegion, "targets", "sign must be +-1");
  }

  S height() const { return sigma / psi_value; }

  std::array<Vec2<S>, 4> corners() const {
    const S h = height();
    const S sh = sign > 0 ? h : -h;
    return {Vec2<S>(c, S(0)), Vec2<S>(S(1), S(0)), Vec2<S>(S(1), sh),
            Vec2<S>(c, c * sh)};
  }

  // squared radius of a disk (about the origin) containing the trapezoid
  S enclosing_radius_sq() const {
    const S h = height();
    return S(1) + h * h;
  }
};

// Closed membership; division-free: y*psi compared against sigma*x.
template <typename S>
bool trapezoid_membership(const Vec2<S>& v, const Trapezoid<S>& t) {
  if (v.x() < t.c || v.x() > S(1)) return false;
  const S lhs = v.y() * t.psi_value;
  const S rhs = t.sigma * v.x();
  if (t.sign > 0) return v.y() >= S(0) && lhs <= rhs;
  return v.y() <= S(0) && -lhs <= rhs;
}

// Does the surface carry a holonomy vector in both trapezoids? This is the
// H_{c,sigma,j} predicate. Enumeration covers the closed disk containing
// both regions.
template <typename S>
bool h_membership(const TranslationSurface<S>& s, const Trapezoid<S>& plus,
                  const Trapezoid<S>& minus,
                  const EnumerationOptions& opt = {}) {
  S r_sq = plus.enclosing_radius_sq();
  if (minus.enclosing_radius_sq() > r_sq) r_sq = minus.enclosing_radius_sq();
  const auto holo = enumerate_holonomies_sq(s, r_sq, opt);
  bool hit_plus = false, hit_minus = false;
  for (const auto& h : holo.vectors) {
    hit_plus = hit_plus || trapezoid_membership(h.v, plus);
    hit_minus = hit_minus || trapezoid_membership(h.v, minus);
    if (hit_plus && hit_minus) return true;
  }
  return false;
}

// A_k(c, sigma) = g_{k log b} H_{c,sigma,k}: membership is tested on the
// pulled-back surface g_{-k log b} s.
template <typename S>
bool a_k_membership(const TranslationSurface<S>& s, const S& b, int k,
                    const Trapezoid<S>& plus, const Trapezoid<S>& minus,
                    const EnumerationOptions& opt = {}) {
  if (!(b > S(1)))
    throw Error(ErrorCode::DegenerateRegion, "targets", "base must be > 1");
  const auto pulled = apply_matrix(s, geodesic_pullback_power(b, k));
  return h_membership(pulled, plus, minus, opt);
}

// ---------------------------------------------------------------------------
// Annulus / sector-annulus targets.
//
// S-type: any holonomy vector with |v| in the radial band.
// W-type: one holonomy in the (+) sector and one in the mirrored (-) sector
// of the same band.
// ---------------------------------------------------------------------------

enum class RegionKind { Sector, FullCircle };

template <typename S>
struct SectorAnnulus {
  S r_min_sq;
  S r_max_sq;
  double theta_min = 0.0;  // (+) sector, radians
  double theta_max = 0.0;

  SectorAnnulus(S r_min_sq_, S r_max_sq_, double theta_min_ = 0.0,
                double theta_max_ = 0.0)
      : r_min_sq(std::move(r_min_sq_)),
        r_max_sq(std::move(r_max_sq_)),
        theta_min(theta_min_),
        theta_max(theta_max_) {
    if (!(r_min_sq >= S(0)) || !(r_min_sq < r_max_sq))
      throw Error(ErrorCode::EmptyRegion, "targets",
                  "annulus radial band is empty");
  }

  double r_min() const {
    return std::sqrt(ScalarModel<S>::to_double(r_min_sq));
  }
  double r_max() const {
    return std::sqrt(ScalarModel<S>::to_double(r_max_sq));
  }
};

// Radial band of W_k: c_H sqrt(2 sigma / psi(b^k)) <= |v| <= sqrt(sigma /
// psi(b^k)), with the sectors (pi/12, pi/6) and its mirror. The band is
// empty when c_H > 1/sqrt(2); construction then reports EmptyRegion.
template <typename S>
SectorAnnulus<S> w_band(const S& sigma, const S& psi_value, const S& c_h) {
  return SectorAnnulus<S>(c_h * c_h * S(2) * sigma / psi_value,
                          sigma / psi_value, M_PI / 12.0, M_PI / 6.0);
}

// Radial band of S(c_H, sigma, t): c_H sqrt(sigma/psi) < |v| < sqrt(2
// sigma/psi).
template <typename S>
SectorAnnulus<S> s_band(const S& sigma, const S& psi_value, const S& c_h) {
  return SectorAnnulus<S>(c_h * c_h * sigma / psi_value,
                          S(2) * sigma / psi_value);
}

template <typename S>
bool sector_annulus_membership(const TranslationSurface<S>& s,
                               const SectorAnnulus<S>& region, RegionKind kind,
                               const EnumerationOptions& opt = {}) {
  const auto holo = enumerate_holonomies_sq(s, region.r_max_sq, opt);
  if (kind == RegionKind::FullCircle) {
    for (const auto& h : holo.vectors)
      if (h.v.squaredNorm() >= region.r_min_sq) return true;
    return false;
  }
  if (!(region.theta_min < region.theta_max))
    throw Error(ErrorCode::EmptyRegion, "targets", "empty angular sector");
  bool plus = false, minus = false;
  for (const auto& h : holo.vectors) {
    if (h.v.squaredNorm() < region.r_min_sq) continue;
    const double a = h.angle();
    plus = plus || (a >= region.theta_min && a <= region.theta_max);
    minus = minus || (a >= -region.theta_max && a <= -region.theta_min);
    if (plus && minus) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Bump functions.
// ---------------------------------------------------------------------------

// epsilon_{i,j} = e^{-(delta/4)|i-j|}
inline double epsilon_ij(int i, int j, double delta) {
  return std::exp(-(delta / 4.0) * std::abs(i - j));
}

// min{1, dist(x, boundary)/eps} inside the closed trapezoid, 0 outside.
double bump_rho(const Vec2d& x, const Trapezoid<double>& t, double eps);

// Scalar ball factor: signed distance to the unit-ball boundary (negative
// outside). min{1, d/eps} inside, 0 outside.
double bump_ball(double signed_dist, double eps);

// Product rho = f1(x1) f2(x2) f3(x3); 1/eps-Lipschitz in the sum metric
// |dx1| + |dx2| + |d dist3|.
double product_bump(const Vec2d& x1, const Vec2d& x2, double x3_signed_dist,
                    const Trapezoid<double>& t1, const Trapezoid<double>& t2,
                    double eps);

// ---------------------------------------------------------------------------
// Area formulas.
//
// The epsilon-boundary and inner-trapezoid formulas involve the slant factor
// sqrt(1 + (sigma/psi)^2); the *_with_slant variants take it as an explicit
// argument so exact-arithmetic identity checks can probe it symbolically.
// ---------------------------------------------------------------------------

template <typename S>
S trapezoid_area(const S& c, const S& sigma, const S& psi_value) {
  return sigma / psi_value * (S(1) - c * c) / S(2);
}

template <typename S>
S epsilon_boundary_area_with_slant(const S& c, const S& sigma,
                                   const S& psi_value, const S& eps,
                                   const S& slant) {
  if (!(S(2) * eps < S(1) - c))
    throw Error(ErrorCode::DegenerateRegion, "targets",
                "eps too large: inner trapezoid is empty");
  const S q = sigma / psi_value;
  return eps * (q * (S(1) + c) + (S(1) - c - S(2) * eps) * (S(1) + slant));
}

template <typename S>
S inner_trapezoid_area_with_slant(const S& c, const S& sigma,
                                  const S& psi_value, const S& eps,
                                  const S& slant) {
  if (!(S(2) * eps < S(1) - c))
    throw Error(ErrorCode::DegenerateRegion, "targets",
                "eps too large: inner trapezoid is empty");
  const S q = sigma / psi_value;
  const S cross_section = q * (S(1) + c) - S(2) * eps * slant - S(2) * eps;
  if (!(cross_section > S(0)))
    throw Error(ErrorCode::DegenerateRegion, "targets",
                "eps too large: inner trapezoid is empty");
  return (S(1) - c - S(2) * eps) / S(2) * cross_section;
}

inline double epsilon_boundary_area(double c, double sigma, double psi_value,
                                    double eps) {
  const double q = sigma / psi_value;
  return epsilon_boundary_area_with_slant(c, sigma, psi_value, eps,
                                          std::sqrt(1.0 + q * q));
}

inline double inner_trapezoid_area(double c, double sigma, double psi_value,
                                   double eps) {
  const double q = sigma / psi_value;
  return inner_trapezoid_area_with_slant(c, sigma, psi_value, eps,
                                         std::sqrt(1.0 + q * q));
}

// Residual total - inner - boundary as a function of the slant probe. The
// three formulas satisfy the identity for every value of the slant, so the
// residual must vanish at two distinct probes iff it vanishes identically.
inline std::pair<Rational, Rational> area_identity_residuals(
    const Rational& c, const Rational& sigma, const Rational& psi_value,
    const Rational& eps) {
  const Rational total = trapezoid_area(c, sigma, psi_value);
  auto residual = [&](const Rational& slant) {
    return total -
           inner_trapezoid_area_with_slant(c, sigma, psi_value, eps, slant) -
           epsilon_boundary_area_with_slant(c, sigma, psi_value, eps, slant);
  };
  return {residual(Rational(BigInt(11), BigInt(10))),
          residual(Rational(BigInt(17), BigInt(5)))};
}

}  // namespace flatgap
