#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatgap/errors.hpp"
#include "flatgap/geometry.hpp"

namespace flatgap {

template <typename S>
struct PlanarPolygon {
  std::vector<Vec2<S>> vertices;  // counterclockwise; edge i runs i -> i+1

  int size() const { return static_cast<int>(vertices.size()); }
  Vec2<S> edge_vector(int i) const {
    const int n = size();
    return vertices[(i + 1) % n] - vertices[i];
  }
  // Twice the signed area (shoelace); stays division-free for rationals.
  S doubled_area() const {
    S acc(0);
    const int n = size();
    for (int i = 0; i < n; ++i)
      acc += cross2(vertices[i], vertices[(i + 1) % n]);
    return acc;
  }
};

struct EdgeIdentification {
  int polygon_a = 0, edge_a = 0;
  int polygon_b = 0, edge_b = 0;

  friend bool operator==(const EdgeIdentification&,
                         const EdgeIdentification&) = default;
  friend auto operator<=>(const EdgeIdentification&,
                          const EdgeIdentification&) = default;
};

template <typename S>
struct SurfaceDescription {
  std::vector<PlanarPolygon<S>> polygons;
  std::vector<EdgeIdentification> gluings;
};

// ---------------------------------------------------------------------------
// Triangulation: every polygon split into triangles (no added vertices);
// the unfolding enumeration walks this structure.
// ---------------------------------------------------------------------------

template <typename S>
struct Triangulation {
  struct SideRef {
    int tri = -1;
    int side = -1;
    bool valid() const { return tri >= 0; }
  };
  struct Triangle {
    int polygon = -1;
    std::array<int, 3> vertex{};     // vertex indices in the source polygon
    std::array<Vec2<S>, 3> pos{};    // vertex positions, ccw
    std::array<int, 3> cone{};       // cone class per corner
    std::array<SideRef, 3> partner{};  // glued partner of side i (i -> i+1)
    std::array<int, 3> edge_label{};   // surface-edge label of side i
  };

  std::vector<Triangle> tris;
  int label_count = 0;
  // label -> (polygon, edge-or-diagonal index); diagonals use indices >= the
  // polygon's boundary edge count
  std::vector<std::pair<int, int>> label_source;
  std::vector<SideRef> label_rep;  // one representative side per label
};

// ---------------------------------------------------------------------------
// TranslationSurface
// ---------------------------------------------------------------------------

template <typename S>
class TranslationSurface {
 public:
  const std::vector<PlanarPolygon<S>>& polygons() const { return polygons_; }
  const std::vector<EdgeIdentification>& gluings() const { return gluings_; }

  int cone_point_count() const { return static_cast<int>(cone_multiple_.size()); }
  // cone angle at class c is 2*pi*cone_multiple(c)
  int cone_multiple(int c) const { return cone_multiple_[c]; }
  int cone_class(int polygon, int vertex) const {
    return vertex_class_[polygon][vertex];
  }

  // zero orders k_i (cone angle 2*pi*(k_i+1)), sorted ascending
  std::vector<int> stratum_signature() const {
    std::vector<int> ks;
    ks.reserve(cone_multiple_.size());
    for (int m : cone_multiple_) ks.push_back(m - 1);
    std::sort(ks.begin(), ks.end());
    return ks;
  }
  int genus() const { return genus_; }
  S area() const { return doubled_area_ / S(2); }
  S doubled_area() const { return doubled_area_; }

  const Triangulation<S>& triangulation() const { return tri_; }

  // Stable content hash of the defining data (not canonical up to relabeling).
  const std::string& fingerprint() const { return fingerprint_; }

  SurfaceDescription<S> description() const { return {polygons_, gluings_}; }

  template <typename T>
  friend TranslationSurface<T> build_surface(const SurfaceDescription<T>&);

 private:
  TranslationSurface() = default;

  std::vector<PlanarPolygon<S>> polygons_;
  std::vector<EdgeIdentification> gluings_;
  std::vector<std::vector<int>> vertex_class_;
  std::vector<int> cone_multiple_;
  S doubled_area_{0};
  int genus_ = 0;
  Triangulation<S> tri_;
  std::string fingerprint_;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace detail {

template <typename S>
void validate_polygon(const PlanarPolygon<S>& poly, int pidx,
                      ValidationReport* report) {
  const int n = poly.size();
  if (n < 3) {
    report->issues.push_back({ErrorCode::NonSimplePolygon,
                              "fewer than 3 vertices", pidx, -1});
    return;
  }
  for (int i = 0; i < n; ++i) {
    Vec2<S> e = poly.edge_vector(i);
    if (e.x() == S(0) && e.y() == S(0)) {
      report->issues.push_back(
          {ErrorCode::NonSimplePolygon, "zero-length edge", pidx, i});
      return;
    }
  }
  if (poly.doubled_area() <= S(0)) {
    report->issues.push_back(
        {ErrorCode::NonSimplePolygon, "not positively oriented", pidx, -1});
    return;
  }
  // adjacent edges must not fold back onto each other
  for (int i = 0; i < n; ++i) {
    const Vec2<S> a = poly.edge_vector(i);
    const Vec2<S> b = poly.edge_vector((i + 1) % n);
    if (orientation<S>(a, b) == 0 && (a.dot(b)) < S(0)) {
      report->issues.push_back(
          {ErrorCode::NonSimplePolygon, "edges fold back (spike)", pidx, i});
      return;
    }
  }
  // non-adjacent edges must be disjoint
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(poly.vertices[i], poly.vertices[(i + 1) % n],
                             poly.vertices[j], poly.vertices[(j + 1) % n])) {
        report->issues.push_back(
            {ErrorCode::NonSimplePolygon, "self-intersection", pidx, i});
        return;
      }
    }
  }
}

template <typename S>
void validate_gluings(const SurfaceDescription<S>& desc,
                      ValidationReport* report) {
  const int np = static_cast<int>(desc.polygons.size());
  std::map<std::pair<int, int>, int> seen;  // (polygon, edge) -> count
  for (const auto& g : desc.gluings) {
    auto in_range = [&](int p, int e) {
      return p >= 0 && p < np && e >= 0 && e < desc.polygons[p].size();
    };
    if (!in_range(g.polygon_a, g.edge_a) || !in_range(g.polygon_b, g.edge_b)) {
      report->issues.push_back(
          {ErrorCode::BadIndex, "gluing index out of range", g.polygon_a,
           g.edge_a});
      continue;
    }
    if (g.polygon_a == g.polygon_b && g.edge_a == g.edge_b) {
      report->issues.push_back({ErrorCode::MismatchedEdge,
                                "edge glued to itself", g.polygon_a, g.edge_a});
      continue;
    }
    ++seen[{g.polygon_a, g.edge_a}];
    ++seen[{g.polygon_b, g.edge_b}];
    const Vec2<S> ea = desc.polygons[g.polygon_a].edge_vector(g.edge_a);
    const Vec2<S> eb = desc.polygons[g.polygon_b].edge_vector(g.edge_b);
    const Vec2<S> sum = ea + eb;  // translation pairing: ea == -eb
    S scale = S(0);
    if constexpr (!ScalarModel<S>::is_exact) {
      scale = std::abs(ea.x()) + std::abs(ea.y()) + std::abs(eb.x()) +
              std::abs(eb.y());
    }
    if (!(ScalarModel<S>::eq(sum.x(), S(0), scale) &&
          ScalarModel<S>::eq(sum.y(), S(0), scale))) {
      report->issues.push_back({ErrorCode::MismatchedEdge,
                                "edges are not opposite translates",
                                g.polygon_a, g.edge_a});
    }
  }
  for (int p = 0; p < np; ++p) {
    for (int e = 0; e < desc.polygons[p].size(); ++e) {
      const auto it = seen.find({p, e});
      const int count = it == seen.end() ? 0 : it->second;
      if (count == 0) {
        report->issues.push_back(
            {ErrorCode::UnpairedEdge, "edge not glued", p, e});
      } else if (count > 1) {
        report->issues.push_back(
            {ErrorCode::UnpairedEdge, "edge glued more than once", p, e});
      }
    }
  }
}

// Ear-clipping triangulation of a validated simple polygon. Returns triangles
// as vertex-index triples, ccw. Straight (angle pi) corners are never ears;
// the closed containment test keeps diagonals off other vertices.
template <typename S>
std::vector<std::array<int, 3>> ear_clip(const PlanarPolygon<S>& poly) {
  const int n = poly.size();
  std::vector<int> active(n);
  std::iota(active.begin(), active.end(), 0);
  std::vector<std::array<int, 3>> tris;
  tris.reserve(n - 2);

  while (static_cast<int>(active.size()) > 3) {
    const int m = static_cast<int>(active.size());
    bool clipped = false;
    for (int idx = 0; idx < m && !clipped; ++idx) {
      const int ip = active[(idx + m - 1) % m];
      const int ic = active[idx];
      const int in = active[(idx + 1) % m];
      const Vec2<S>&a = poly.vertices[ip], &b = poly.vertices[ic],
            &c = poly.vertices[in];
      if (orientation(a, b, c) <= 0) continue;
      bool blocked = false;
      for (int k = 0; k < m; ++k) {
        const int iv = active[k];
        if (iv == ip || iv == ic || iv == in) continue;
        if (point_in_closed_triangle(poly.vertices[iv], a, b, c)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      tris.push_back({ip, ic, in});
      active.erase(active.begin() + idx);
      clipped = true;
    }
    if (!clipped)
      throw Error(ErrorCode::Internal, "surface_core",
                  "ear clipping found no ear in a simple polygon");
  }
  tris.push_back({active[0], active[1], active[2]});
  return tris;
}

}  // namespace detail

template <typename S>
ValidationReport validate_surface(const SurfaceDescription<S>& desc) {
  ValidationReport report;
  if (desc.polygons.empty()) {
    report.issues.push_back(
        {ErrorCode::NonSimplePolygon, "no polygons", -1, -1});
    return report;
  }
  for (size_t p = 0; p < desc.polygons.size(); ++p)
    detail::validate_polygon(desc.polygons[p], static_cast<int>(p), &report);
  if (!report.ok()) return report;
  detail::validate_gluings(desc, &report);
  return report;
}

template <typename S>
TranslationSurface<S> build_surface(const SurfaceDescription<S>& desc) {
  ValidationReport report = validate_surface(desc);
  if (!report.ok()) throw BuildError(std::move(report));

  TranslationSurface<S> s;
  s.polygons_ = desc.polygons;
  s.gluings_ = desc.gluings;

  const int np = static_cast<int>(s.polygons_.size());

  // glued partner lookup: (polygon, edge) -> (polygon, edge)
  std::map<std::pair<int, int>, std::pair<int, int>> partner;
  for (const auto& g : s.gluings_) {
    partner[{g.polygon_a, g.edge_a}] = {g.polygon_b, g.edge_b};
    partner[{g.polygon_b, g.edge_b}] = {g.polygon_a, g.edge_a};
  }

  // --- cone classes by walking the vertex link -----------------------------
  // Corner (p, v) sits between incoming edge v-1 and outgoing edge v. Crossing
  // the outgoing edge lands on the partner's far endpoint, giving the next
  // corner around the same surface point.
  s.vertex_class_.assign(np, {});
  for (int p = 0; p < np; ++p)
    s.vertex_class_[p].assign(s.polygons_[p].size(), -1);

  int class_count = 0;
  std::vector<double> angle_sums;
  std::vector<std::pair<S, S>> rotation_products;  // exact complex products
  for (int p0 = 0; p0 < np; ++p0) {
    const int n0 = s.polygons_[p0].size();
    for (int v0 = 0; v0 < n0; ++v0) {
      if (s.vertex_class_[p0][v0] >= 0) continue;
      const int cls = class_count++;
      double angle_sum = 0.0;
      S prod_re(1), prod_im(0);
      int p = p0, v = v0;
      do {
        s.vertex_class_[p][v] = cls;
        const auto& poly = s.polygons_[p];
        const int n = poly.size();
        const Vec2<S> out = poly.edge_vector(v);
        const Vec2<S> back = -poly.edge_vector((v + n - 1) % n);
        // rotation from `out` to `back`: back * conj(out)
        const S re = back.dot(out);
        const S im = cross2(out, back);
        double theta = std::atan2(ScalarModel<S>::to_double(im),
                                  ScalarModel<S>::to_double(re));
        if (theta <= 0.0) theta += 2.0 * M_PI;
        angle_sum += theta;
        if constexpr (ScalarModel<S>::is_exact) {
          const S nre = prod_re * re - prod_im * im;
          const S nim = prod_re * im + prod_im * re;
          prod_re = nre;
          prod_im = nim;
        }
        const auto it = partner.find({p, v});
        assert(it != partner.end());
        const auto [q, j] = it->second;
        p = q;
        v = (j + 1) % s.polygons_[q].size();
      } while (!(p == p0 && v == v0));

      const double turns = angle_sum / (2.0 * M_PI);
      const int multiple = static_cast<int>(std::lround(turns));
      bool angle_ok = multiple >= 1;
      if constexpr (ScalarModel<S>::is_exact) {
        angle_ok = angle_ok && prod_im == S(0) && prod_re > S(0);
      } else {
        angle_ok =
            angle_ok && std::abs(angle_sum - 2.0 * M_PI * multiple) <= 1e-9;
      }
      if (!angle_ok) {
        ValidationReport bad;
        bad.issues.push_back({ErrorCode::BadConeAngle,
                              "vertex link angle " +
                                  format_double(angle_sum) +
                                  " is not a multiple of 2*pi",
                              p0, v0});
        throw BuildError(std::move(bad));
      }
      angle_sums.push_back(angle_sum);
      s.cone_multiple_.push_back(multiple);
    }
  }

  // --- Euler characteristic / genus ----------------------------------------
  int edge_slots = 0;
  for (const auto& poly : s.polygons_) edge_slots += poly.size();
  const int E = edge_slots / 2;
  const int V = class_count;
  const int F = np;
  const int chi = V - E + F;
  if (chi % 2 != 0)
    throw Error(ErrorCode::Internal, "surface_core",
                "odd Euler characteristic");
  s.genus_ = (2 - chi) / 2;

  int zero_order_sum = 0;
  for (int m : s.cone_multiple_) zero_order_sum += m - 1;
  if (zero_order_sum != 2 * s.genus_ - 2)
    throw Error(ErrorCode::Internal, "surface_core",
                "Gauss-Bonnet mismatch between cone angles and genus");

  S doubled(0);
  for (const auto& poly : s.polygons_) doubled += poly.doubled_area();
  s.doubled_area_ = doubled;

  // --- triangulation --------------------------------------------------------
  auto& tri = s.tri_;
  std::map<std::pair<int, int>, typename Triangulation<S>::SideRef>
      boundary_side;  // (polygon, edge) -> side
  std::vector<std::map<std::pair<int, int>, typename Triangulation<S>::SideRef>>
      open_diagonals(np);  // per polygon: ordered vertex pair -> side
  std::vector<int> diagonal_count(np, 0);

  for (int p = 0; p < np; ++p) {
    const auto& poly = s.polygons_[p];
    const int n = poly.size();
    const auto ears = detail::ear_clip(poly);
    for (const auto& t : ears) {
      typename Triangulation<S>::Triangle tr;
      tr.polygon = p;
      tr.vertex = t;
      for (int k = 0; k < 3; ++k) {
        tr.pos[k] = poly.vertices[t[k]];
        tr.cone[k] = s.vertex_class_[p][t[k]];
      }
      const int ti = static_cast<int>(tri.tris.size());
      tri.tris.push_back(tr);
      for (int k = 0; k < 3; ++k) {
        const int u = t[k], v = t[(k + 1) % 3];
        typename Triangulation<S>::SideRef ref{ti, k};
        if ((u + 1) % n == v) {
          boundary_side[{p, u}] = ref;
        } else {
          // interior diagonal; the matching triangle sees it reversed
          const auto key = std::make_pair(v, u);
          auto it = open_diagonals[p].find(key);
          if (it != open_diagonals[p].end()) {
            const auto other = it->second;
            open_diagonals[p].erase(it);
            const int label = tri.label_count++;
            tri.label_source.emplace_back(p, n + diagonal_count[p]++);
            tri.label_rep.push_back(other);
            tri.tris[other.tri].partner[other.side] = ref;
            tri.tris[ti].partner[k] = other;
            tri.tris[other.tri].edge_label[other.side] = label;
            tri.tris[ti].edge_label[k] = label;
          } else {
            open_diagonals[p][{u, v}] = ref;
          }
        }
      }
    }
    if (!open_diagonals[p].empty())
      throw Error(ErrorCode::Internal, "surface_core",
                  "unmatched diagonal after triangulation");
  }

  for (const auto& g : s.gluings_) {
    const auto sa = boundary_side.at({g.polygon_a, g.edge_a});
    const auto sb = boundary_side.at({g.polygon_b, g.edge_b});
    const int label = tri.label_count++;
    tri.label_source.emplace_back(g.polygon_a, g.edge_a);
    tri.label_rep.push_back(sa);
    tri.tris[sa.tri].partner[sa.side] = sb;
    tri.tris[sb.tri].partner[sb.side] = sa;
    tri.tris[sa.tri].edge_label[sa.side] = label;
    tri.tris[sb.tri].edge_label[sb.side] = label;
  }

  // --- fingerprint -----------------------------------------------------------
  Fnv1a h;
  h.update(ScalarModel<S>::name());
  for (const auto& poly : s.polygons_) {
    h.update("P");
    for (const auto& v : poly.vertices) {
      h.update(ScalarModel<S>::to_string(v.x()));
      h.update(",");
      h.update(ScalarModel<S>::to_string(v.y()));
      h.update(";");
    }
  }
  for (const auto& g : s.gluings_) {
    const int vals[4] = {g.polygon_a, g.edge_a, g.polygon_b, g.edge_b};
    h.update(vals, sizeof(vals));
  }
  s.fingerprint_ = h.hex();

  return s;
}

// ---------------------------------------------------------------------------
// Linear action
// ---------------------------------------------------------------------------

template <typename S>
TranslationSurface<S> apply_matrix(const TranslationSurface<S>& s,
                                   const Mat2<S>& m) {
  const S det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  S scale(0);
  if constexpr (!ScalarModel<S>::is_exact) {
    scale = (std::abs(m(0, 0)) + std::abs(m(0, 1))) *
            (std::abs(m(1, 0)) + std::abs(m(1, 1)));
  }
  const int det_sign = ScalarModel<S>::sign(det, scale);
  if (det_sign == 0)
    throw Error(ErrorCode::SingularMatrix, "surface_core",
                "matrix is singular");

  SurfaceDescription<S> out;
  out.polygons.reserve(s.polygons().size());
  for (const auto& poly : s.polygons()) {
    PlanarPolygon<S> q;
    q.vertices.reserve(poly.vertices.size());
    for (const auto& v : poly.vertices) q.vertices.push_back(m * v);
    if (det_sign < 0) std::reverse(q.vertices.begin(), q.vertices.end());
    out.polygons.push_back(std::move(q));
  }
  out.gluings = s.gluings();
  if (det_sign < 0) {
    // reversing the vertex list sends edge j to edge n-2-j (mod n)
    for (auto& g : out.gluings) {
      const int na = out.polygons[g.polygon_a].size();
      const int nb = out.polygons[g.polygon_b].size();
      g.edge_a = ((na - 2 - g.edge_a) % na + na) % na;
      g.edge_b = ((nb - 2 - g.edge_b) % nb + nb) % nb;
    }
  }
  return build_surface(out);
}

template <typename S>
TranslationSurface<double> to_float_model(const TranslationSurface<S>& s) {
  SurfaceDescription<double> out;
  for (const auto& poly : s.polygons()) {
    PlanarPolygon<double> q;
    for (const auto& v : poly.vertices) q.vertices.push_back(to_double(v));
    out.polygons.push_back(std::move(q));
  }
  out.gluings = s.gluings();
  return build_surface(out);
}

// ---------------------------------------------------------------------------
// Canonical form: per polygon, the lexicographically minimal rotation of the
// vertex list translated to start at the origin; polygons sorted, gluings
// remapped. Equality of canonical forms is the surface-isomorphism test used
// by the examples (it detects relabelings and translations, not cut-and-paste
// equivalence).
// ---------------------------------------------------------------------------

template <typename S>
struct CanonicalSurface {
  std::vector<std::vector<Vec2<S>>> polygons;
  std::vector<EdgeIdentification> gluings;

  friend bool operator==(const CanonicalSurface& a, const CanonicalSurface& b) {
    if (a.polygons.size() != b.polygons.size()) return false;
    for (size_t i = 0; i < a.polygons.size(); ++i) {
      if (a.polygons[i].size() != b.polygons[i].size()) return false;
      for (size_t j = 0; j < a.polygons[i].size(); ++j)
        if (!(a.polygons[i][j].x() == b.polygons[i][j].x() &&
              a.polygons[i][j].y() == b.polygons[i][j].y()))
          return false;
    }
    return a.gluings == b.gluings;
  }
};

namespace detail {

template <typename S>
int lex_compare(const std::vector<Vec2<S>>& a, const std::vector<Vec2<S>>& b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].x() < b[i].x()) return -1;
    if (b[i].x() < a[i].x()) return 1;
    if (a[i].y() < b[i].y()) return -1;
    if (b[i].y() < a[i].y()) return 1;
  }
  if (a.size() < b.size()) return -1;
  if (b.size() < a.size()) return 1;
  return 0;
}

template <typename S>
int gluing_list_compare(const std::vector<EdgeIdentification>& a,
                        const std::vector<EdgeIdentification>& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace detail

template <typename S>
CanonicalSurface<S> canonical_form(const TranslationSurface<S>& s) {
  const int np = static_cast<int>(s.polygons().size());

  // best rotation per polygon
  std::vector<std::vector<Vec2<S>>> rotated(np);
  std::vector<int> rotation(np, 0);
  for (int p = 0; p < np; ++p) {
    const auto& verts = s.polygons()[p].vertices;
    const int n = static_cast<int>(verts.size());
    for (int r = 0; r < n; ++r) {
      std::vector<Vec2<S>> cand(n);
      for (int i = 0; i < n; ++i)
        cand[i] = verts[(r + i) % n] - verts[r];
      if (r == 0 || detail::lex_compare(cand, rotated[p]) < 0) {
        rotated[p] = std::move(cand);
        rotation[p] = r;
      }
    }
  }

  // polygon order: sort by rotated vertex list; resolve ties among congruent
  // polygons by minimizing the remapped gluing list
  std::vector<int> order(np);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int c = detail::lex_compare(rotated[a], rotated[b]);
    if (c != 0) return c < 0;
    return a < b;
  });

  auto remap_gluings = [&](const std::vector<int>& ord) {
    std::vector<int> position(np);
    for (int i = 0; i < np; ++i) position[ord[i]] = i;
    std::vector<EdgeIdentification> gs = s.gluings();
    for (auto& g : gs) {
      const int na = static_cast<int>(rotated[g.polygon_a].size());
      const int nb = static_cast<int>(rotated[g.polygon_b].size());
      g.edge_a = ((g.edge_a - rotation[g.polygon_a]) % na + na) % na;
      g.edge_b = ((g.edge_b - rotation[g.polygon_b]) % nb + nb) % nb;
      g.polygon_a = position[g.polygon_a];
      g.polygon_b = position[g.polygon_b];
      if (std::tie(g.polygon_b, g.edge_b) < std::tie(g.polygon_a, g.edge_a)) {
        std::swap(g.polygon_a, g.polygon_b);
        std::swap(g.edge_a, g.edge_b);
      }
    }
    std::sort(gs.begin(), gs.end());
    return gs;
  };

  // permute within groups of identical polygons for the minimal gluing list
  std::vector<EdgeIdentification> best_gluings = remap_gluings(order);
  std::vector<int> best_order = order;
  size_t lo = 0;
  std::vector<std::pair<size_t, size_t>> groups;
  for (size_t i = 1; i <= order.size(); ++i) {
    if (i == order.size() ||
        detail::lex_compare(rotated[order[i]], rotated[order[lo]]) != 0) {
      if (i - lo > 1) groups.emplace_back(lo, i);
      lo = i;
    }
  }
  if (!groups.empty()) {
    std::vector<int> perm = order;
    size_t total = 1;
    for (auto [a, b] : groups)
      for (size_t k = 2; k <= b - a; ++k) total *= k;
    if (total <= 5040) {
      // enumerate permutations group by group (nested next_permutation)
      std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == groups.size()) {
          auto gs = remap_gluings(perm);
          if (detail::gluing_list_compare<S>(gs, best_gluings) < 0) {
            best_gluings = gs;
            best_order = perm;
          }
          return;
        }
        auto [a, b] = groups[gi];
        std::vector<int> slice(perm.begin() + a, perm.begin() + b);
        std::sort(slice.begin(), slice.end());
        do {
          std::copy(slice.begin(), slice.end(), perm.begin() + a);
          rec(gi + 1);
        } while (std::next_permutation(slice.begin(), slice.end()));
      };
      rec(0);
    }
  }

  CanonicalSurface<S> out;
  out.polygons.reserve(np);
  for (int i = 0; i < np; ++i) out.polygons.push_back(rotated[best_order[i]]);
  out.gluings = best_gluings;
  return out;
}

template <typename S>
bool surfaces_isomorphic(const TranslationSurface<S>& a,
                         const TranslationSurface<S>& b) {
  return canonical_form(a) == canonical_form(b);
}

}  // namespace flatgap
