#pragma once
// Combinatorial model of a triangulated unpunctured marked surface. Triangles
// are stored as clockwise triples of edge identifiers; everything else (marked
// points, edge endpoints, adjacency) is derived. Arc order in the input fixes
// the variable indexing of the associated exchange matrix.

#include <array>
#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scl/digest.hpp"
#include "scl/matrix.hpp"

namespace scl {

class Triangulation {
 public:
  // Edge ids: 0..n-1 are arcs (in the given order), then boundary segments.
  Triangulation(std::vector<std::string> arcs, std::vector<std::string> boundary,
                std::vector<std::array<int, 3>> triangles,
                std::vector<std::string> point_names = {})
      : arcs_(std::move(arcs)),
        boundary_(std::move(boundary)),
        triangles_(std::move(triangles)) {
    validate();
    derive_points(std::move(point_names));
    digest_ = compute_digest();
  }

  static Triangulation from_labels(std::vector<std::string> arcs,
                                   std::vector<std::string> boundary,
                                   const std::vector<std::array<std::string, 3>>& tris) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < arcs.size(); ++i) {
      if (!index.emplace(arcs[i], static_cast<int>(i)).second)
        throw Error("bad_surface", "duplicate edge label " + arcs[i]);
    }
    for (size_t i = 0; i < boundary.size(); ++i) {
      if (!index.emplace(boundary[i], static_cast<int>(arcs.size() + i)).second)
        throw Error("bad_surface", "duplicate edge label " + boundary[i]);
    }
    std::vector<std::array<int, 3>> t;
    for (const auto& tri : tris) {
      std::array<int, 3> ids;
      for (int k = 0; k < 3; ++k) {
        auto it = index.find(tri[k]);
        if (it == index.end())
          throw Error("bad_surface", "unknown edge label " + tri[k]);
        ids[k] = it->second;
      }
      t.push_back(ids);
    }
    return Triangulation(std::move(arcs), std::move(boundary), std::move(t));
  }

  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  int num_edges() const { return static_cast<int>(arcs_.size() + boundary_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_points() const { return num_points_; }
  bool is_arc(int e) const { return e >= 0 && e < num_arcs(); }

  const std::vector<std::string>& arcs() const { return arcs_; }
  const std::vector<std::string>& boundary() const { return boundary_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::string& digest() const { return digest_; }

  const std::string& edge_name(int e) const {
    return is_arc(e) ? arcs_[e] : boundary_[e - num_arcs()];
  }

  int edge_id(const std::string& name) const {
    for (int e = 0; e < num_edges(); ++e)
      if (edge_name(e) == name) return e;
    throw Error("bad_surface", "unknown edge label " + name);
  }

  const std::vector<int>& triangles_of(int edge) const { return edge_triangles_[edge]; }

  bool triangle_has(int tri, int edge) const {
    const auto& t = triangles_[tri];
    return t[0] == edge || t[1] == edge || t[2] == edge;
  }

  // The triangle adjacent to `edge` other than `tri`; the edge must be interior.
  int other_triangle(int edge, int tri) const {
    const auto& ts = edge_triangles_[edge];
    if (ts.size() != 2)
      throw Error("bad_curve", "crossed edge " + edge_name(edge) + " is not interior");
    return ts[0] == tri ? ts[1] : ts[0];
  }

  // Remaining side of a triangle known to contain the two given edges.
  int third_side(int tri, int e1, int e2) const {
    for (int s : triangles_[tri])
      if (s != e1 && s != e2) return s;
    throw Error("internal", "triangle sides degenerate");
  }

  // Clockwise cycle of the triangle's sides starting at `from`.
  std::array<int, 3> sides_from(int tri, int from) const {
    const auto& t = triangles_[tri];
    for (int k = 0; k < 3; ++k)
      if (t[k] == from) return {t[k], t[(k + 1) % 3], t[(k + 2) % 3]};
    throw Error("internal", "edge not on triangle");
  }

  // Marked point class at corner k of triangle t (corner k joins side k and
  // side k+1 of the clockwise triple).
  int corner_point(int tri, int k) const { return corner_point_[tri][k]; }
  const std::array<int, 2>& edge_endpoints(int e) const { return edge_endpoints_[e]; }
  const std::string& point_name(int p) const { return point_names_[p]; }
  const std::vector<std::string>& point_names() const { return point_names_; }

  // Signed adjacency matrix: within each clockwise triple, the side that
  // immediately follows tau_i contributes +1 to b_{i,follower} when both are
  // arcs. Summed over all triangles.
  IntMat signed_adjacency() const {
    const int n = num_arcs();
    IntMat B(n, n);
    for (const auto& t : triangles_) {
      for (int k = 0; k < 3; ++k) {
        int a = t[k], b = t[(k + 1) % 3];
        if (is_arc(a) && is_arc(b)) {
          B.at(a, b) += 1;
          B.at(b, a) -= 1;
        }
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        BigInt v = B.at(i, j);
        if (v < -2 || v > 2)
          throw Error("bad_surface", "adjacency entry out of range");
      }
    return B;
  }

  // Replace arc k by the other diagonal of its quadrilateral. The two adjacent
  // triangles (tau,a,b),(tau,c,d) become (tau',b,c),(tau',d,a); the identifier
  // and index of the arc are reused for the new diagonal. Defined after
  // FlipResult below.
  struct FlipResult;
  FlipResult flip(int k) const;

  // Rotation-normalized, order-normalized triangle list; equal keys mean the
  // same combinatorial triangulation.
  std::string canonical_key() const {
    std::vector<std::array<int, 3>> tris;
    for (auto t : triangles_) {
      int best = 0;
      for (int k = 1; k < 3; ++k)
        if (t[k] < t[best]) best = k;
      tris.push_back({t[best], t[(best + 1) % 3], t[(best + 2) % 3]});
    }
    std::sort(tris.begin(), tris.end());
    std::string key;
    for (const auto& t : tris)
      key += std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
             std::to_string(t[2]) + ";";
    return key;
  }

 private:
  void validate() {
    const int ne = num_edges();
    if (triangles_.empty()) throw Error("bad_surface", "no triangles");
    edge_triangles_.assign(ne, {});
    for (size_t t = 0; t < triangles_.size(); ++t) {
      const auto& tri = triangles_[t];
      for (int e : tri)
        if (e < 0 || e >= ne) throw Error("bad_surface", "dangling edge identifier");
      if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
        throw Error("bad_surface", "self-folded or degenerate triangle");
      for (int e : tri) edge_triangles_[e].push_back(static_cast<int>(t));
    }
    for (int e = 0; e < ne; ++e) {
      size_t cnt = edge_triangles_[e].size();
      if (is_arc(e)) {
        if (cnt < 1 || cnt > 2)
          throw Error("bad_surface", "arc " + edge_name(e) + " in " +
                                         std::to_string(cnt) + " triangles");
      } else if (cnt != 1) {
        throw Error("bad_surface", "boundary segment " + edge_name(e) +
                                       " must lie in exactly one triangle");
      }
    }
    // connectivity over shared edges
    std::vector<char> seen(triangles_.size(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int e : triangles_[t])
        for (int u : edge_triangles_[e])
          if (!seen[u]) {
            seen[u] = 1;
            stack.push_back(u);
          }
    }
    for (char s : seen)
      if (!s) throw Error("bad_surface", "triangulated surface is disconnected");
  }

  // Marked points from glued corners. Corner k of a clockwise triple joins
  // side k and side k+1; side at position p runs corner (p+2)%3 -> corner p,
  // and a shared interior edge is traversed oppositely by its two triangles.
  void derive_points(std::vector<std::string> names) {
    const int T = num_triangles();
    std::vector<int> parent(3 * T);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    auto unite = [&](int u, int v) { parent[find(u)] = find(v); };
    auto corner = [&](int t, int k) { return 3 * t + k; };

    for (int e = 0; e < num_edges(); ++e) {
      const auto& ts = edge_triangles_[e];
      if (ts.size() != 2) continue;
      // slot positions of e in each triangle (distinct triangles here; an edge
      // twice in one triangle was rejected as self-folded)
      auto pos_in = [&](int t) {
        const auto& tri = triangles_[t];
        for (int k = 0; k < 3; ++k)
          if (tri[k] == e) return k;
        return -1;
      };
      int p1 = pos_in(ts[0]), p2 = pos_in(ts[1]);
      unite(corner(ts[0], (p1 + 2) % 3), corner(ts[1], p2));
      unite(corner(ts[0], p1), corner(ts[1], (p2 + 2) % 3));
    }
    std::map<int, int> cls;
    corner_point_.assign(T, {});
    for (int t = 0; t < T; ++t)
      for (int k = 0; k < 3; ++k) {
        int root = find(corner(t, k));
        auto [it, fresh] = cls.emplace(root, static_cast<int>(cls.size()));
        corner_point_[t][k] = it->second;
      }
    num_points_ = static_cast<int>(cls.size());
    if (!names.empty()) {
      if (static_cast<int>(names.size()) != num_points_)
        throw Error("bad_surface", "marked point name count mismatch");
      point_names_ = std::move(names);
    } else {
      for (int p = 0; p < num_points_; ++p)
        point_names_.push_back("p" + std::to_string(p));
    }
    edge_endpoints_.assign(num_edges(), {});
    for (int e = 0; e < num_edges(); ++e) {
      int t = edge_triangles_[e][0];
      const auto& tri = triangles_[t];
      int p = 0;
      while (tri[p] != e) ++p;
      edge_endpoints_[e] = {corner_point_[t][(p + 2) % 3], corner_point_[t][p]};
    }
  }

  std::string compute_digest() const {
    std::string s;
    for (const auto& a : arcs_) s += a + "|";
    s += "/";
    for (const auto& b : boundary_) s += b + "|";
    s += "/";
    s += canonical_key();
    return fnv1a64_hex(s);
  }

  std::vector<std::string> arcs_, boundary_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::vector<int>> edge_triangles_;
  std::vector<std::array<int, 3>> corner_point_;
  std::vector<std::array<int, 2>> edge_endpoints_;
  std::vector<std::string> point_names_;
  int num_points_ = 0;
  std::string digest_;
};

struct Triangulation::FlipResult {
  Triangulation T;
  std::array<int, 4> quadrilateral;  // sides in cyclic order; opposite pairs (0,2),(1,3)
};

inline Triangulation::FlipResult Triangulation::flip(int k) const {
  if (!is_arc(k)) throw Error("bad_flip", "cannot flip a boundary segment");
  const auto& ts = edge_triangles_[k];
  if (ts.size() != 2) throw Error("bad_flip", "arc is not interior");
  auto s1 = sides_from(ts[0], k), s2 = sides_from(ts[1], k);
  int a = s1[1], b = s1[2], c = s2[1], d = s2[2];
  std::vector<std::array<int, 3>> tris = triangles_;
  tris[ts[0]] = {k, b, c};
  tris[ts[1]] = {k, d, a};
  Triangulation flipped(arcs_, boundary_, std::move(tris), point_names_);
  return {std::move(flipped), {a, b, c, d}};
}

// A curve as its ordered crossing sequence. Open curves may carry endpoint
// marked points and, when the walk is ambiguous, the first/last triangle
// entered. Closed curves are cyclic words.
struct CurveWord {
  bool closed = false;
  std::vector<int> crossings;
  std::optional<int> base_arc;  // zero-crossing curve coinciding with this arc
  std::optional<std::array<int, 2>> endpoints;  // marked point classes
  std::optional<int> first_triangle;
  std::optional<int> last_triangle;

  int length() const { return static_cast<int>(crossings.size()); }

  bool operator==(const CurveWord& o) const {
    return closed == o.closed && crossings == o.crossings && base_arc == o.base_arc;
  }
  bool operator<(const CurveWord& o) const {
    if (closed != o.closed) return closed < o.closed;
    if (crossings != o.crossings) return crossings < o.crossings;
    return base_arc < o.base_arc;
  }

  std::string str(const Triangulation& T) const {
    if (base_arc && crossings.empty()) return T.edge_name(*base_arc);
    std::string s = closed ? "[" : "(";
    for (size_t i = 0; i < crossings.size(); ++i) {
      if (i) s += ",";
      s += T.edge_name(crossings[i]);
    }
    return s + (closed ? "]" : ")");
  }
};

// Consecutive crossings must be distinct and share a triangle (cyclically for
// closed words); closed words must be nonempty.
inline void validate_word(const Triangulation& T, const CurveWord& w) {
  const int d = w.length();
  for (int c : w.crossings)
    if (!T.is_arc(c)) throw Error("bad_curve", "crossing is not an arc of T");
  if (w.closed && d == 0) throw Error("bad_curve", "closed word must be nonempty");
  const int pairs = w.closed ? d : d - 1;
  for (int j = 0; j < pairs; ++j) {
    int a = w.crossings[j], b = w.crossings[(j + 1) % d];
    if (a == b) throw Error("bad_curve", "consecutive crossings repeat an arc");
    bool share = false;
    for (int t : T.triangles_of(a))
      if (T.triangle_has(t, b)) share = true;
    if (!share)
      throw Error("bad_curve", "consecutive crossed arcs " + T.edge_name(a) + "," +
                                   T.edge_name(b) + " share no triangle");
  }
}

// Canonical forms: closed words take their lexicographically least rotation;
// open words the lexicographically smaller of the word and its reversal (with
// the triangle/endpoint metadata swapped along).
inline CurveWord canonical_word(const CurveWord& w) {
  CurveWord r = w;
  if (w.closed) {
    const int d = w.length();
    std::vector<int> best = w.crossings;
    for (int s = 1; s < d; ++s) {
      std::vector<int> rot(w.crossings.begin() + s, w.crossings.end());
      rot.insert(rot.end(), w.crossings.begin(), w.crossings.begin() + s);
      if (rot < best) best = rot;
    }
    r.crossings = std::move(best);
    r.first_triangle.reset();
    r.last_triangle.reset();
  } else {
    std::vector<int> rev(w.crossings.rbegin(), w.crossings.rend());
    if (rev < w.crossings) {
      r.crossings = std::move(rev);
      r.first_triangle = w.last_triangle;
      r.last_triangle = w.first_triangle;
      if (w.endpoints) r.endpoints = {{(*w.endpoints)[1], (*w.endpoints)[0]}};
    }
  }
  return r;
}

/// The triangles entered along the curve: size d+1, with step j passing from
// triangle j to triangle j+1 across crossing j. For closed words the sequence
// must return to its start. Ambiguous starts (both triangles of the first
// crossed arc admit a valid walk) resolve to the lowest triangle index unless
// the word pins one.
inline std::vector<int> triangle_sequence(const Triangulation& T, const CurveWord& w) {
  validate_word(T, w);
  const int d = w.length();
  if (d == 0) throw Error("bad_curve", "triangle sequence needs at least one crossing");
  auto walk = [&](int start) -> std::optional<std::vector<int>> {
    std::vector<int> seq = {start};
    int cur = start;
    for (int j = 0; j < d; ++j) {
      if (!T.triangle_has(cur, w.crossings[j])) return std::nullopt;
      cur = T.other_triangle(w.crossings[j], cur);
      seq.push_back(cur);
      if (j + 1 < d && !T.triangle_has(cur, w.crossings[j + 1])) return std::nullopt;
    }
    if (w.closed && seq.back() != start) return std::nullopt;
    if (!w.closed && w.last_triangle && seq.back() != *w.last_triangle)
      return std::nullopt;
    return seq;
  };

  std::vector<int> starts;
  if (!w.closed && w.first_triangle) {
    starts = {*w.first_triangle};
  } else {
    starts = T.triangles_of(w.crossings[0]);
    if (w.closed) {
      // the cut triangle also touches the last crossing
      std::vector<int> filtered;
      for (int t : starts)
        if (T.triangle_has(t, w.crossings[d - 1])) filtered.push_back(t);
      starts = filtered;
    }
  }
  std::sort(starts.begin(), starts.end());
  for (int s : starts)
    if (auto seq = walk(s)) return *seq;
  throw Error("bad_curve", "no consistent triangle walk for the word");
}

}  // namespace scl
