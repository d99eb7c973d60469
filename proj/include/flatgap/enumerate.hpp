#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <thread>
#include <tuple>
#include <vector>

#include "flatgap/surface.hpp"

namespace flatgap {

// A directed saddle connection: holonomy vector plus the combinatorial
// witness needed to replay it. Deduplication is by witness, never by
// holonomy value, so parallel directions keep their multiplicity.
template <typename S>
struct HolonomyVector {
  Vec2<S> v;
  int start_cone = -1;
  int end_cone = -1;
  // Witness: either an edge traversal (seed_edge = 2*label + direction) or a
  // wedge development seeded at a triangle corner (seed_corner = 3*tri + c)
  // with the surface-edge labels crossed, in order.
  int32_t seed_edge = -1;
  int32_t seed_corner = -1;
  std::vector<int32_t> crossings;

  double length() const { return std::sqrt(to_double(v).squaredNorm()); }
  double angle() const { return arg_angle(to_double(v)); }
};

// Canonical order: by angle in [-pi, pi), then squared length, then witness.
template <typename S>
inline bool canonical_less(const HolonomyVector<S>& a,
                           const HolonomyVector<S>& b) {
  const bool na = angle_is_nonnegative(a.v);
  const bool nb = angle_is_nonnegative(b.v);
  if (na != nb) return !na;
  const S c = cross2(a.v, b.v);
  if (c > S(0)) return true;
  if (c < S(0)) return false;
  const S la = a.v.squaredNorm(), lb = b.v.squaredNorm();
  if (la < lb) return true;
  if (lb < la) return false;
  return std::tie(a.seed_edge, a.seed_corner, a.crossings, a.start_cone) <
         std::tie(b.seed_edge, b.seed_corner, b.crossings, b.start_cone);
}

template <typename S>
struct HolonomySet {
  S radius_sq{0};
  double radius = 0.0;
  std::vector<HolonomyVector<S>> vectors;  // canonically sorted

  size_t size() const { return vectors.size(); }
};

struct EnumerationOptions {
  uint64_t node_budget = 100000000ULL;  // development frames
  int jobs = 1;
};

namespace detail {

// Develops triangle copies across gluings inside one corner wedge. Windows
// are open angular intervals held as exact direction vectors; every
// comparison is a cross-product sign, so the exact model never divides.
template <typename S>
class WedgeSearcher {
 public:
  WedgeSearcher(const Triangulation<S>& tri, const S& radius_sq,
                std::atomic<uint64_t>& nodes, uint64_t budget)
      : tri_(tri),
        radius_sq_(radius_sq),
        prune_limit_(ScalarModel<S>::to_double(radius_sq) * (1.0 + 1e-9) +
                     1e-300),
        nodes_(nodes),
        budget_(budget) {}

  void run(int seed_tri, int seed_corner,
           std::vector<HolonomyVector<S>>* out) {
    out_ = out;
    seed_id_ = 3 * seed_tri + seed_corner;
    const auto& t = tri_.tris[seed_tri];
    seed_cone_ = t.cone[seed_corner];
    const int c = seed_corner;
    const Vec2<S> offset = -t.pos[c];
    const Vec2<S> wlo = t.pos[(c + 1) % 3] + offset;
    const Vec2<S> whi = t.pos[(c + 2) % 3] + offset;
    chain_.clear();
    stack_.clear();
    push_crossing(seed_tri, (c + 1) % 3, offset, wlo, whi, 0);
    while (!stack_.empty()) {
      Frame f = std::move(stack_.back());
      stack_.pop_back();
      process(f);
    }
  }

 private:
  struct Frame {
    int tri;
    int entry_side;
    Vec2<S> offset;
    Vec2<S> wlo, whi;
    int32_t entry_label;
    uint32_t chain_prefix;
  };

  // Cross `side` of triangle `from` (placed by `offset`), pushing the
  // neighbor frame unless the visible part of the crossed segment already
  // lies outside the search radius.
  void push_crossing(int from, int side, const Vec2<S>& offset,
                     const Vec2<S>& wlo, const Vec2<S>& whi,
                     uint32_t chain_prefix) {
    const auto& t = tri_.tris[from];
    const Vec2<S> x = t.pos[side] + offset;
    const Vec2<S> y = t.pos[(side + 1) % 3] + offset;
    if (!segment_may_reach(to_double(x), to_double(y), to_double(wlo),
                           to_double(whi)))
      return;
    const auto partner = t.partner[side];
    const auto& t2 = tri_.tris[partner.tri];
    const Vec2<S> offset2 = y - t2.pos[partner.side];
    stack_.push_back(Frame{partner.tri, partner.side, offset2, wlo, whi,
                           t.edge_label[side], chain_prefix});
  }

  // Conservative reachability: clip segment [a, b] to the window cone in
  // doubles and compare the closest clipped point against the enlarged
  // radius. Never prunes anything reachable; the recorder re-checks exactly.
  bool segment_may_reach(const Vec2d& a, const Vec2d& b, const Vec2d& dlo,
                         const Vec2d& dhi) const {
    const Vec2d d = a - b;
    double t0 = 0.0, t1 = 1.0;
    const double den_lo = cross2(dlo, d);
    const double den_hi = cross2(dhi, d);
    if (std::abs(den_lo) > 1e-300) {
      t0 = cross2(dlo, a) / den_lo;
      if (!(t0 >= 0.0 && t0 <= 1.0)) t0 = std::clamp(t0, 0.0, 1.0);
    }
    if (std::abs(den_hi) > 1e-300) {
      t1 = cross2(dhi, a) / den_hi;
      if (!(t1 >= 0.0 && t1 <= 1.0)) t1 = std::clamp(t1, 0.0, 1.0);
    }
    if (t0 > t1) std::swap(t0, t1);
    const Vec2d p0 = a + t0 * (b - a);
    const Vec2d p1 = a + t1 * (b - a);
    return origin_segment_dist_sq(p0, p1) <= prune_limit_;
  }

  void process(const Frame& f) {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_)
      throw Error(ErrorCode::BudgetExceeded, "saddle_enum",
                  "development frontier exceeded node budget of " +
                      std::to_string(budget_));
    chain_.resize(f.chain_prefix);
    chain_.push_back(f.entry_label);
    const uint32_t depth = f.chain_prefix + 1;

    const auto& t = tri_.tris[f.tri];
    const int s = f.entry_side;
    const int apex_idx = (s + 2) % 3;
    const Vec2<S> apex = t.pos[apex_idx] + f.offset;

    const int lo_side = orientation<S>(f.wlo, apex);   // apex ccw of wlo?
    const int hi_side = orientation<S>(apex, f.whi);   // whi ccw of apex?

    if (lo_side > 0 && hi_side > 0) {
      if (apex.squaredNorm() <= radius_sq_) {
        HolonomyVector<S> h;
        h.v = apex;
        h.start_cone = seed_cone_;
        h.end_cone = t.cone[apex_idx];
        h.seed_corner = seed_id_;
        h.crossings = chain_;
        out_->push_back(std::move(h));
      }
      // split at the apex; both sub-windows stay open at it
      push_crossing(f.tri, (s + 1) % 3, f.offset, f.wlo, apex, depth);
      push_crossing(f.tri, (s + 2) % 3, f.offset, apex, f.whi, depth);
    } else if (lo_side <= 0) {
      // window passes on the ccw side of the apex
      push_crossing(f.tri, (s + 2) % 3, f.offset, f.wlo, f.whi, depth);
    } else {
      push_crossing(f.tri, (s + 1) % 3, f.offset, f.wlo, f.whi, depth);
    }
  }

  const Triangulation<S>& tri_;
  S radius_sq_;
  double prune_limit_;
  std::atomic<uint64_t>& nodes_;
  uint64_t budget_;
  std::vector<HolonomyVector<S>>* out_ = nullptr;
  int seed_id_ = -1;
  int seed_cone_ = -1;
  std::vector<int32_t> chain_;
  std::vector<Frame> stack_;
};

}  // namespace detail

// Complete enumeration of directed saddle connections with |v|^2 <= radius_sq.
template <typename S>
HolonomySet<S> enumerate_holonomies_sq(const TranslationSurface<S>& s,
                                       const S& radius_sq,
                                       const EnumerationOptions& opt = {}) {
  if (!(radius_sq > S(0)))
    throw Error(ErrorCode::EvaluationError, "saddle_enum",
                "radius must be positive");
  const auto& tri = s.triangulation();
  HolonomySet<S> out;
  out.radius_sq = radius_sq;
  out.radius = std::sqrt(ScalarModel<S>::to_double(radius_sq));

  // Surface edges are saddle connections themselves; each glued pair yields
  // one geodesic traversed both ways.
  for (int label = 0; label < tri.label_count; ++label) {
    const auto rep = tri.label_rep[label];
    const auto& t = tri.tris[rep.tri];
    const Vec2<S> a = t.pos[rep.side];
    const Vec2<S> b = t.pos[(rep.side + 1) % 3];
    const Vec2<S> v = b - a;
    if (v.squaredNorm() <= radius_sq) {
      HolonomyVector<S> fwd;
      fwd.v = v;
      fwd.start_cone = t.cone[rep.side];
      fwd.end_cone = t.cone[(rep.side + 1) % 3];
      fwd.seed_edge = 2 * label;
      HolonomyVector<S> bwd;
      bwd.v = -v;
      bwd.start_cone = fwd.end_cone;
      bwd.end_cone = fwd.start_cone;
      bwd.seed_edge = 2 * label + 1;
      out.vectors.push_back(std::move(fwd));
      out.vectors.push_back(std::move(bwd));
    }
  }

  // Wedge searches, one per triangle corner, parallel over seeds with a
  // deterministic merge (results depend only on the seed, never on the
  // schedule).
  const int seed_count = 3 * static_cast<int>(tri.tris.size());
  std::vector<std::vector<HolonomyVector<S>>> results(seed_count);
  std::atomic<uint64_t> nodes{0};
  const int jobs = std::max(1, std::min(opt.jobs, seed_count));

  if (jobs == 1) {
    detail::WedgeSearcher<S> searcher(tri, radius_sq, nodes, opt.node_budget);
    for (int seed = 0; seed < seed_count; ++seed)
      searcher.run(seed / 3, seed % 3, &results[seed]);
  } else {
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        detail::WedgeSearcher<S> searcher(tri, radius_sq, nodes,
                                          opt.node_budget);
        while (!failed.load(std::memory_order_relaxed)) {
          const int seed = next.fetch_add(1);
          if (seed >= seed_count) break;
          try {
            searcher.run(seed / 3, seed % 3, &results[seed]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            failed.store(true);
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  for (auto& r : results)
    for (auto& h : r) out.vectors.push_back(std::move(h));

  std::sort(out.vectors.begin(), out.vectors.end(), canonical_less<S>);
  return out;
}

template <typename S>
HolonomySet<S> enumerate_holonomies(const TranslationSurface<S>& s,
                                    const S& radius,
                                    const EnumerationOptions& opt = {}) {
  return enumerate_holonomies_sq(s, S(radius * radius), opt);
}

// Counts |Lambda(R)| along an increasing grid with a single enumeration pass
// at the largest radius.
template <typename S>
std::vector<std::pair<double, size_t>> count_growth(
    const TranslationSurface<S>& s, const std::vector<S>& r_grid,
    const EnumerationOptions& opt = {}) {
  if (r_grid.empty()) return {};
  for (size_t i = 1; i < r_grid.size(); ++i) {
    if (!(r_grid[i - 1] < r_grid[i]))
      throw Error(ErrorCode::EvaluationError, "saddle_enum",
                  "radius grid must be strictly increasing");
  }
  const auto holo = enumerate_holonomies(s, r_grid.back(), opt);
  std::vector<S> lengths_sq;
  lengths_sq.reserve(holo.vectors.size());
  for (const auto& h : holo.vectors) lengths_sq.push_back(h.v.squaredNorm());
  std::sort(lengths_sq.begin(), lengths_sq.end());
  std::vector<std::pair<double, size_t>> out;
  out.reserve(r_grid.size());
  for (const auto& r : r_grid) {
    const S rsq = r * r;
    const auto it =
        std::upper_bound(lengths_sq.begin(), lengths_sq.end(), rsq);
    out.emplace_back(ScalarModel<S>::to_double(r),
                     static_cast<size_t>(it - lengths_sq.begin()));
  }
  return out;
}

// Shortest saddle connection up to `cutoff`; NotFoundBelowCutoff signals that
// the cutoff was too small, not that no saddle connection exists.
template <typename S>
S shortest_saddle_length_sq(const TranslationSurface<S>& s, const S& cutoff,
                            const EnumerationOptions& opt = {}) {
  const auto holo = enumerate_holonomies(s, cutoff, opt);
  if (holo.vectors.empty())
    throw Error(ErrorCode::NotFoundBelowCutoff, "surface_core",
                "no saddle connection of length <= " +
                    format_double(ScalarModel<S>::to_double(cutoff)));
  S best = holo.vectors.front().v.squaredNorm();
  for (const auto& h : holo.vectors) {
    const S l = h.v.squaredNorm();
    if (l < best) best = l;
  }
  return best;
}

template <typename S>
double shortest_saddle_length(const TranslationSurface<S>& s, const S& cutoff,
                              const EnumerationOptions& opt = {}) {
  return std::sqrt(
      ScalarModel<S>::to_double(shortest_saddle_length_sq(s, cutoff, opt)));
}

// Replays a witness chain: develops the crossed edges and confirms the chain
// reaches exactly v with matching cone classes and no cone point en route.
template <typename S>
bool replay_witness(const TranslationSurface<S>& s,
                    const HolonomyVector<S>& h) {
  const auto& tri = s.triangulation();
  if (h.seed_edge >= 0) {
    if (!h.crossings.empty()) return false;
    const int label = h.seed_edge / 2;
    if (label >= tri.label_count) return false;
    const auto rep = tri.label_rep[label];
    const auto& t = tri.tris[rep.tri];
    Vec2<S> v = t.pos[(rep.side + 1) % 3] - t.pos[rep.side];
    int start = t.cone[rep.side], end = t.cone[(rep.side + 1) % 3];
    if (h.seed_edge % 2 == 1) {
      v = -v;
      std::swap(start, end);
    }
    return v.x() == h.v.x() && v.y() == h.v.y() && start == h.start_cone &&
           end == h.end_cone;
  }
  if (h.seed_corner < 0 || h.crossings.empty()) return false;
  int cur_tri = h.seed_corner / 3;
  const int corner = h.seed_corner % 3;
  if (cur_tri >= static_cast<int>(tri.tris.size())) return false;
  if (tri.tris[cur_tri].cone[corner] != h.start_cone) return false;
  Vec2<S> offset = -tri.tris[cur_tri].pos[corner];
  int cross_side = (corner + 1) % 3;
  for (size_t k = 0; k < h.crossings.size(); ++k) {
    const auto& t = tri.tris[cur_tri];
    if (t.edge_label[cross_side] != h.crossings[k]) return false;
    const Vec2<S> y = t.pos[(cross_side + 1) % 3] + offset;
    const auto partner = t.partner[cross_side];
    cur_tri = partner.tri;
    const auto& t2 = tri.tris[cur_tri];
    offset = y - t2.pos[partner.side];
    const int apex_idx = (partner.side + 2) % 3;
    const Vec2<S> apex = t2.pos[apex_idx] + offset;
    const S c = cross2(apex, h.v);
    if (c == S(0)) {
      // on the ray: must be the endpoint, and the chain must be finished
      return k + 1 == h.crossings.size() && apex.x() == h.v.x() &&
             apex.y() == h.v.y() && t2.cone[apex_idx] == h.end_cone;
    }
    cross_side = c > S(0) ? (partner.side + 2) % 3 : (partner.side + 1) % 3;
  }
  return false;
}

}  // namespace flatgap
