#include "flatgap/gap_stats.hpp"

#include <algorithm>
#include <cmath>

namespace flatgap {

AngleSet angle_set_from(std::vector<double> raw_angles, double radius) {
  std::sort(raw_angles.begin(), raw_angles.end());
  AngleSet out;
  out.radius = radius;
  for (double a : raw_angles) {
    if (!out.angles.empty() && out.angles.back() == a) {
      ++out.multiplicity.back();
    } else {
      out.angles.push_back(a);
      out.multiplicity.push_back(1);
    }
  }
  return out;
}

double horizontal_gap(const AngleSet& a) {
  // first angle >= 0
  const auto it = std::lower_bound(a.angles.begin(), a.angles.end(), 0.0);
  if (it == a.angles.end() || it == a.angles.begin())
    throw Error(ErrorCode::OneSidedSpectrum, "gap_stats",
                "need at least one angle on each side of the horizontal");
  const double min_nonneg = *it;
  const double max_neg = *(it - 1);
  return min_nonneg - max_neg;
}

GapDistribution gap_distribution(const AngleSet& a, int bins) {
  const size_t n = a.distinct_count();
  if (n < 2)
    throw Error(ErrorCode::TooFewAngles, "gap_stats",
                "gap distribution needs at least two distinct angles");
  GapDistribution out;
  out.normalized_gaps.reserve(n);
  const double scale = static_cast<double>(n) / (2.0 * M_PI);
  for (size_t i = 0; i + 1 < n; ++i)
    out.normalized_gaps.push_back((a.angles[i + 1] - a.angles[i]) * scale);
  out.normalized_gaps.push_back(
      (a.angles.front() + 2.0 * M_PI - a.angles.back()) * scale);

  out.min_gap = *std::min_element(out.normalized_gaps.begin(),
                                  out.normalized_gaps.end());
  double sum = 0.0;
  for (double g : out.normalized_gaps) sum += g;
  out.mean_gap = sum / static_cast<double>(n);

  const double max_gap = *std::max_element(out.normalized_gaps.begin(),
                                           out.normalized_gaps.end());
  const double hi = max_gap * 1.05 + 1e-12;
  bins = std::max(1, bins);
  out.bin_left.resize(bins);
  out.bin_right.resize(bins);
  out.mass.assign(bins, 0.0);
  for (int b = 0; b < bins; ++b) {
    out.bin_left[b] = hi * b / bins;
    out.bin_right[b] = hi * (b + 1) / bins;
  }
  const double w = 1.0 / static_cast<double>(n);
  for (double g : out.normalized_gaps) {
    int b = static_cast<int>(g / hi * bins);
    b = std::clamp(b, 0, bins - 1);
    out.mass[b] += w;
  }
  return out;
}

GapTrajectory gap_trajectory_from_samples(
    const std::vector<std::pair<double, double>>& length_angle,
    const RateFunction& psi, const std::vector<double>& r_grid) {
  // sort by length so each grid radius is a prefix
  auto la = length_angle;
  std::sort(la.begin(), la.end());

  GapTrajectory out;
  size_t next = 0;
  // the prefix only grows along the grid, so the two extremes are running
  double min_nonneg = INFINITY;
  double max_neg = -INFINITY;

  double running = INFINITY;
  for (double r : r_grid) {
    while (next < la.size() && la[next].first <= r) {
      const double angle = la[next].second;
      if (angle >= 0.0) {
        min_nonneg = std::min(min_nonneg, angle);
      } else {
        max_neg = std::max(max_neg, angle);
      }
      ++next;
    }
    if (min_nonneg == INFINITY || max_neg == -INFINITY) {
      out.warnings.push_back("one-sided spectrum at R = " + format_double(r) +
                             "; sample dropped");
      continue;
    }
    GapSample sample;
    sample.radius = r;
    sample.count = static_cast<long>(next);
    sample.zeta = min_nonneg - max_neg;
    sample.scaled = psi(r) * (r * r * sample.zeta);
    running = std::min(running, sample.scaled);
    sample.running_min = running;
    out.samples.push_back(sample);
  }
  return out;
}

CircleAverage circle_average(
    const TranslationSurface<double>& s,
    const std::function<double(const TranslationSurface<double>&)>& f,
    double t, int n) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw Error(ErrorCode::EvaluationError, "gap_stats",
                "quadrature size must be a power of two, n >= 8");
  CircleAverage out;
  out.points = n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * M_PI * (i + 0.5) / n;
    double value;
    try {
      const auto moved = apply_matrix(s, Mat2d(geodesic_flow(t) * rotation(theta)));
      value = f(moved);
    } catch (const Error& e) {
      throw Error(ErrorCode::EvaluationError, "gap_stats",
                  "integrand failed at theta = " + format_double(theta) +
                      ": " + e.what());
    }
    sum += value;
    out.max_integrand = std::max(out.max_integrand, value);
  }
  out.value = sum / n;
  return out;
}

}  // namespace flatgap
