#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatgap/enumerate.hpp"
#include "flatgap/rate_function.hpp"

namespace flatgap {

// Sorted distinct holonomy directions in [-pi, pi) with multiplicities.
struct AngleSet {
  double radius = 0.0;
  std::vector<double> angles;      // strictly increasing
  std::vector<int> multiplicity;   // parallel to angles

  size_t distinct_count() const { return angles.size(); }
  long total_count() const {
    long n = 0;
    for (int m : multiplicity) n += m;
    return n;
  }
};

AngleSet angle_set_from(std::vector<double> raw_angles, double radius);

template <typename S>
AngleSet angles(const HolonomySet<S>& h) {
  std::vector<double> raw;
  raw.reserve(h.vectors.size());
  for (const auto& v : h.vectors) raw.push_back(v.angle());
  return angle_set_from(std::move(raw), h.radius);
}

// zeta = min{phi >= 0} - max{phi < 0}; throws OneSidedSpectrum when either
// side of the horizontal is unpopulated.
double horizontal_gap(const AngleSet& a);

// Cyclic adjacent gaps scaled by |Theta|/(2*pi), so the mean normalized gap
// is exactly 1.
struct GapDistribution {
  std::vector<double> normalized_gaps;  // one per distinct angle, cyclic
  std::vector<double> bin_left, bin_right, mass;
  double min_gap = 0.0;
  double mean_gap = 0.0;
};

GapDistribution gap_distribution(const AngleSet& a, int bins = 50);

// One row of a scaled-gap trajectory.
struct GapSample {
  double radius = 0.0;
  long count = 0;        // |Lambda(R)| as a multiset
  double zeta = 0.0;
  double scaled = 0.0;   // psi(R) * R^2 * zeta(R)
  double running_min = 0.0;
};

struct GapTrajectory {
  std::vector<GapSample> samples;
  std::vector<std::string> warnings;
  std::optional<double> running_min() const {
    if (samples.empty()) return std::nullopt;
    return samples.back().running_min;
  }
};

// Internal core shared by both scalar models: lengths/angles of an
// enumeration at the largest radius, walked along the grid.
GapTrajectory gap_trajectory_from_samples(
    const std::vector<std::pair<double, double>>& length_angle,
    const RateFunction& psi, const std::vector<double>& r_grid);

// Single enumeration at max(grid), then per-sample zeta and the running
// minimum of psi(R) R^2 zeta(R). Grid prefixes with a one-sided spectrum are
// dropped with a warning record.
template <typename S>
GapTrajectory liminf_trajectory(const TranslationSurface<S>& s,
                                const RateFunction& psi,
                                const std::vector<double>& r_grid,
                                const EnumerationOptions& opt = {}) {
  if (r_grid.empty()) return {};
  for (size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i - 1] < r_grid[i]))
      throw Error(ErrorCode::EvaluationError, "gap_stats",
                  "radius grid must be strictly increasing");
  const S rmax = [&] {
    if constexpr (ScalarModel<S>::is_exact) {
      auto r = parse_rational(format_double(r_grid.back()));
      return *r;
    } else {
      return r_grid.back();
    }
  }();
  const auto holo = enumerate_holonomies(s, rmax, opt);
  std::vector<std::pair<double, double>> la;
  la.reserve(holo.vectors.size());
  for (const auto& v : holo.vectors) la.emplace_back(v.length(), v.angle());
  return gap_trajectory_from_samples(la, psi, r_grid);
}

// V_delta = max{1, l^{-(1+delta)}} where l is the shortest saddle length.
template <typename S>
double v_delta(const TranslationSurface<S>& s, double delta, const S& cutoff,
               const EnumerationOptions& opt = {}) {
  if (!(delta > 0.0 && delta < 1.0))
    throw Error(ErrorCode::EvaluationError, "gap_stats",
                "delta must lie in (0, 1)");
  const double l = shortest_saddle_length(s, cutoff, opt);
  return std::max(1.0, std::pow(l, -(1.0 + delta)));
}

// Composite midpoint average of f over {g_t r_theta omega}. n must be a
// power of two (>= 8) so halving the step gives Richardson-style self checks.
struct CircleAverage {
  double value = 0.0;
  int points = 0;
  double max_integrand = 0.0;
};

CircleAverage circle_average(
    const TranslationSurface<double>& s,
    const std::function<double(const TranslationSurface<double>&)>& f,
    double t, int n);

}  // namespace flatgap
