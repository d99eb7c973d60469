#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "flatgap/numeric.hpp"

namespace flatgap {

template <typename S>
using Vec2 = Eigen::Matrix<S, 2, 1>;
template <typename S>
using Mat2 = Eigen::Matrix<S, 2, 2>;

using Vec2d = Vec2<double>;
using Mat2d = Mat2<double>;
using Vec2q = Vec2<Rational>;
using Mat2q = Mat2<Rational>;

template <typename S>
inline S cross2(const Vec2<S>& a, const Vec2<S>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Sign of cross(a, b) under the active scalar model. The float model
// compares against eps_exact scaled by |a||b| (1-norms).
template <typename S>
inline int orientation(const Vec2<S>& a, const Vec2<S>& b) {
  if constexpr (ScalarModel<S>::is_exact) {
    return cross2(a, b).sign();
  } else {
    const double scale = (std::abs(a.x()) + std::abs(a.y())) *
                         (std::abs(b.x()) + std::abs(b.y()));
    return ScalarModel<S>::sign(cross2(a, b), scale);
  }
}

// Orientation of the triangle (a, b, c): +1 counterclockwise.
template <typename S>
inline int orientation(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  return orientation<S>(Vec2<S>(b - a), Vec2<S>(c - a));
}

template <typename S>
inline Vec2d to_double(const Vec2<S>& v) {
  return Vec2d(ScalarModel<S>::to_double(v.x()),
               ScalarModel<S>::to_double(v.y()));
}

// Closed-triangle containment; boundary counts as inside.
template <typename S>
inline bool point_in_closed_triangle(const Vec2<S>& p, const Vec2<S>& a,
                                     const Vec2<S>& b, const Vec2<S>& c) {
  const int o1 = orientation(a, b, p);
  const int o2 = orientation(b, c, p);
  const int o3 = orientation(c, a, p);
  return o1 >= 0 && o2 >= 0 && o3 >= 0;
}

// Is p on the closed segment [u, v]? Assumes p collinear with u, v.
template <typename S>
inline bool collinear_point_on_segment(const Vec2<S>& u, const Vec2<S>& v,
                                       const Vec2<S>& p) {
  const S lo_x = u.x() < v.x() ? u.x() : v.x();
  const S hi_x = u.x() < v.x() ? v.x() : u.x();
  const S lo_y = u.y() < v.y() ? u.y() : v.y();
  const S hi_y = u.y() < v.y() ? v.y() : u.y();
  return lo_x <= p.x() && p.x() <= hi_x && lo_y <= p.y() && p.y() <= hi_y;
}

// Do closed segments [a,b] and [c,d] intersect?
template <typename S>
inline bool segments_intersect(const Vec2<S>& a, const Vec2<S>& b,
                               const Vec2<S>& c, const Vec2<S>& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && collinear_point_on_segment(a, b, c)) return true;
  if (o2 == 0 && collinear_point_on_segment(a, b, d)) return true;
  if (o3 == 0 && collinear_point_on_segment(c, d, a)) return true;
  if (o4 == 0 && collinear_point_on_segment(c, d, b)) return true;
  return false;
}

// Squared distance from the origin to segment [a, b] (doubles).
inline double origin_segment_dist_sq(const Vec2d& a, const Vec2d& b) {
  const Vec2d d = b - a;
  const double len_sq = d.squaredNorm();
  if (len_sq == 0.0) return a.squaredNorm();
  double t = -a.dot(d) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * d).squaredNorm();
}

// Distance from p to segment [a, b].
inline double point_segment_dist(const Vec2d& p, const Vec2d& a,
                                 const Vec2d& b) {
  return std::sqrt(origin_segment_dist_sq(a - p, b - p));
}

// ---------------------------------------------------------------------------
// Direction ordering.
//
// Angles follow the arg convention: atan2 output mapped into [-pi, pi), so
// (-x, 0) has angle -pi, not pi. dir_less orders nonzero vectors by that
// angle using sign tests only; ties are not broken (equal directions compare
// equivalent). Exact in the rational model, bitwise in the float model, so
// sorting is deterministic in both.
// ---------------------------------------------------------------------------

template <typename S>
inline bool angle_is_nonnegative(const Vec2<S>& v) {
  const S zero(0);
  if (v.y() > zero) return true;
  if (v.y() < zero) return false;
  return v.x() > zero;  // angle 0; (-x,0) maps to -pi
}

template <typename S>
inline bool dir_less(const Vec2<S>& u, const Vec2<S>& v) {
  const bool au = angle_is_nonnegative(u);
  const bool av = angle_is_nonnegative(v);
  if (au != av) return !au;  // negative half [-pi,0) sorts first
  const S c = cross2(u, v);
  return c > S(0);
}

template <typename S>
inline bool dir_equal(const Vec2<S>& u, const Vec2<S>& v) {
  return cross2(u, v) == S(0) &&
         (u.x() * v.x() + u.y() * v.y()) > S(0);
}

// arg(v) in [-pi, pi): atan2 with +pi folded to -pi.
inline double arg_angle(const Vec2d& v) {
  double a = std::atan2(v.y(), v.x());
  if (a == M_PI) a = -M_PI;
  return a;
}

// ---------------------------------------------------------------------------
// Matrix builders.
// ---------------------------------------------------------------------------

// Geodesic flow diag(e^t, e^-t).
inline Mat2d geodesic_flow(double t) {
  Mat2d m;
  m << std::exp(t), 0.0, 0.0, std::exp(-t);
  return m;
}

// Rotation by theta.
inline Mat2d rotation(double theta) {
  Mat2d m;
  const double c = std::cos(theta), s = std::sin(theta);
  m << c, -s, s, c;
  return m;
}

// diag(b^-k, b^k) = geodesic flow by -k log b, exact for rational b.
template <typename S>
inline Mat2<S> geodesic_pullback_power(const S& b, int k) {
  S lo(1), hi(1);
  const int n = k >= 0 ? k : -k;
  for (int i = 0; i < n; ++i) {
    lo = lo / b;
    hi = hi * b;
  }
  if (k < 0) std::swap(lo, hi);
  Mat2<S> m;
  m << lo, S(0), S(0), hi;
  return m;
}

}  // namespace flatgap
