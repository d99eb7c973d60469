#pragma once

// Independent oracles used by the test suites. Everything here is computed by
// brute force or direct definition, never through the library code paths it
// is checking.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "flatgap/geometry.hpp"
#include "flatgap/surface.hpp"

namespace oracles {

using flatgap::Rational;
using flatgap::Vec2;

// All primitive integer vectors (p, q), gcd(|p|, |q|) = 1, with
// p^2 + q^2 <= r_sq. On the unit square torus these are exactly the saddle
// connection holonomies; on a square-tiled surface with a single cone class
// of angle 2*pi*m each one occurs with multiplicity m.
inline std::vector<std::pair<long, long>> primitive_lattice_vectors(
    long r_sq) {
  std::vector<std::pair<long, long>> out;
  const long r = static_cast<long>(std::sqrt(static_cast<double>(r_sq))) + 2;
  for (long p = -r; p <= r; ++p) {
    for (long q = -r; q <= r; ++q) {
      if (p == 0 && q == 0) continue;
      if (p * p + q * q > r_sq) continue;
      if (std::gcd(std::abs(p), std::abs(q)) != 1) continue;
      out.emplace_back(p, q);
    }
  }
  return out;
}

// Sorted multiset of (p, q) pairs replicated `multiplicity` times, for
// comparison against enumeration output.
inline std::vector<std::pair<long, long>> lattice_multiset(
    long r_sq, int multiplicity) {
  auto prim = primitive_lattice_vectors(r_sq);
  std::vector<std::pair<long, long>> out;
  out.reserve(prim.size() * multiplicity);
  for (const auto& v : prim)
    for (int k = 0; k < multiplicity; ++k) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

// O(n^2) horizontal gap: min over nonnegative angles minus max over negative
// angles, by direct scan.
inline bool brute_force_gap(const std::vector<double>& angles, double* out) {
  bool has_nonneg = false, has_neg = false;
  double min_nonneg = 0, max_neg = 0;
  for (double a : angles) {
    if (a >= 0) {
      if (!has_nonneg || a < min_nonneg) min_nonneg = a;
      has_nonneg = true;
    } else {
      if (!has_neg || a > max_neg) max_neg = a;
      has_neg = true;
    }
  }
  if (!has_nonneg || !has_neg) return false;
  *out = min_nonneg - max_neg;
  return true;
}

// Membership in the closed convex hull of `corners` via half-plane checks
// (corners counterclockwise).
inline bool convex_membership(const flatgap::Vec2d& p,
                              const std::vector<flatgap::Vec2d>& corners) {
  const size_t n = corners.size();
  for (size_t i = 0; i < n; ++i) {
    const flatgap::Vec2d a = corners[i];
    const flatgap::Vec2d b = corners[(i + 1) % n];
    const double c = flatgap::cross2(flatgap::Vec2d(b - a),
                                     flatgap::Vec2d(p - a));
    const double scale = (b - a).norm() * ((p - a).norm() + 1.0);
    if (c < -1e-12 * scale) return false;
  }
  return true;
}

// Finite measure space with at most 16 atoms; sets are atom subsets encoded
// as bitmasks, so unions and intersections are exact.
struct AtomSpace {
  std::vector<double> mass;               // per atom
  std::vector<uint32_t> sets;             // one bitmask per set

  double measure(uint32_t bits) const {
    double m = 0;
    for (size_t a = 0; a < mass.size(); ++a)
      if (bits & (1u << a)) m += mass[a];
    return m;
  }
  double set_measure(size_t i) const { return measure(sets[i]); }
  double pair_measure(size_t i, size_t j) const {
    return measure(sets[i] & sets[j]);
  }
  double union_measure() const {
    uint32_t all = 0;
    for (uint32_t s : sets) all |= s;
    return measure(all);
  }
};

inline AtomSpace random_atom_space(std::mt19937_64& rng, int max_atoms = 16,
                                   int max_sets = 8) {
  std::uniform_int_distribution<int> natoms(2, max_atoms);
  std::uniform_int_distribution<int> nsets(1, max_sets);
  std::uniform_real_distribution<double> umass(0.01, 1.0);
  AtomSpace sp;
  const int na = natoms(rng);
  double total = 0;
  for (int a = 0; a < na; ++a) {
    sp.mass.push_back(umass(rng));
    total += sp.mass.back();
  }
  for (auto& m : sp.mass) m /= total;  // probability space
  const int ns = nsets(rng);
  std::uniform_int_distribution<uint32_t> bits(1, (1u << na) - 1);
  for (int s = 0; s < ns; ++s) sp.sets.push_back(bits(rng));
  return sp;
}

// Small random rationals with denominators up to `max_den`.
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi,
                                long max_den = 12) {
  std::uniform_int_distribution<long> num(lo, hi);
  std::uniform_int_distribution<long> den(1, max_den);
  const long d = den(rng);
  return Rational(flatgap::BigInt(num(rng) * d + num(rng) % d),
                  flatgap::BigInt(d));
}

}  // namespace oracles
