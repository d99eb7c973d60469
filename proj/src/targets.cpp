#include "flatgap/targets.hpp"

namespace flatgap {

double bump_rho(const Vec2d& x, const Trapezoid<double>& t, double eps) {
  if (eps <= 0.0)
    throw Error(ErrorCode::DegenerateRegion, "targets",
                "bump width must be positive");
  if (!trapezoid_membership(x, t)) return 0.0;
  const auto corners = t.corners();
  double dist = INFINITY;
  for (int i = 0; i < 4; ++i)
    dist = std::min(dist,
                    point_segment_dist(x, corners[i], corners[(i + 1) % 4]));
  return std::min(1.0, dist / eps);
}

double bump_ball(double signed_dist, double eps) {
  if (eps <= 0.0)
    throw Error(ErrorCode::DegenerateRegion, "targets",
                "bump width must be positive");
  if (signed_dist < 0.0) return 0.0;
  return std::min(1.0, signed_dist / eps);
}

double product_bump(const Vec2d& x1, const Vec2d& x2, double x3_signed_dist,
                    const Trapezoid<double>& t1, const Trapezoid<double>& t2,
                    double eps) {
  return bump_rho(x1, t1, eps) * bump_rho(x2, t2, eps) *
         bump_ball(x3_signed_dist, eps);
}

}  // namespace flatgap
