#pragma once
// Standard triangulated families: polygon(n) with the fan triangulation and
// annulus(p,q) with the staircase triangulation, together with curve catalogs.
//
// The annulus is modelled on its universal cover, an infinite horizontal
// strip: outer marked points sit on the top edge, inner ones on the bottom,
// and the deck translation shifts x by one period. Arcs are straight segments
// (outer-to-inner) or shallow three-segment polylines hugging one boundary
// (same-boundary arcs); the core loop is the horizontal midline. All
// coordinates are integers and every crossing test is an exact orientation
// test, so crossing words and compatibility counts carry no rounding anywhere.

#include <array>
#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scl/surface.hpp"

namespace scl {

// ---------------------------------------------------------------- polygon --

class PolygonModel {
 public:
  explicit PolygonModel(int n) : n_(n), T_(build(n)) {}

  int n() const { return n_; }
  const Triangulation& T() const { return T_; }

  // Chords (i,j), 1-based vertices, i < j, skipping sides. Vertex v sits
  // between boundary segments b_{v-1} and b_v; fan diagonals are t_k=(1,k+2).
  static bool is_chord(int n, int i, int j) {
    return 1 <= i && i < j && j <= n && j - i >= 2 && !(i == 1 && j == n);
  }

  static bool chords_cross(std::array<int, 2> a, std::array<int, 2> b) {
    auto inside = [](int v, std::array<int, 2> c) { return c[0] < v && v < c[1]; };
    return inside(b[0], a) != inside(b[1], a) && b[0] != a[0] && b[0] != a[1] &&
           b[1] != a[0] && b[1] != a[1];
  }

  CurveWord chord_word(int i, int j) const {
    if (!is_chord(n_, i, j)) throw Error("bad_curve", "not a polygon chord");
    CurveWord w;
    w.closed = false;
    if (i == 1) {
      w.base_arc = j - 3;  // the fan diagonal t_{j-2}, 0-based id j-3
    } else {
      for (int k = i - 1; k <= j - 3; ++k) w.crossings.push_back(k - 1);
    }
    w.endpoints = {{vertex_class(i), vertex_class(j)}};
    return canonical_word(w);
  }

  struct Entry {
    CurveWord word;
    std::array<int, 2> chord;
    std::string desc;
  };

  std::vector<Entry> catalog(int bound) const {
    std::vector<Entry> out;
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 2; j <= n_; ++j) {
        if (!is_chord(n_, i, j)) continue;
        CurveWord w = chord_word(i, j);
        if (w.length() > bound) continue;
        out.push_back({w, {i, j},
                       "chord(" + std::to_string(i) + "," + std::to_string(j) + ")"});
      }
    return out;
  }

  bool compatible(const Entry& a, const Entry& b) const {
    return !chords_cross(a.chord, b.chord);
  }

 private:
  int vertex_class(int v) const {
    for (int p = 0; p < T_.num_points(); ++p)
      if (T_.point_name(p) == std::to_string(v)) return p;
    throw Error("internal", "polygon vertex class missing");
  }

  static Triangulation build(int n) {
    if (n < 4) throw Error("bad_surface", "polygon needs at least 4 vertices");
    std::vector<std::string> arcs, boundary;
    for (int k = 1; k <= n - 3; ++k) arcs.push_back("t" + std::to_string(k));
    for (int k = 1; k <= n; ++k) boundary.push_back("b" + std::to_string(k));
    auto t = [&](int k) { return k - 1; };           // arc ids
    auto b = [&](int k) { return n - 3 + (k - 1); };  // boundary ids
    std::vector<std::array<int, 3>> tris;
    if (n == 4) {
      tris.push_back({b(1), b(2), t(1)});
      tris.push_back({t(1), b(3), b(4)});
    } else {
      tris.push_back({b(1), b(2), t(1)});
      for (int j = 2; j <= n - 3; ++j) tris.push_back({t(j - 1), b(j + 1), t(j)});
      tris.push_back({t(n - 3), b(n - 1), b(n)});
    }
    Triangulation raw({arcs}, {boundary}, {tris});
    // Boundary segment b_k runs vertex k -> k+1 in the clockwise listing, so
    // its stored endpoints name the marked point classes.
    std::vector<std::string> names(raw.num_points());
    for (int k = 1; k <= n; ++k) {
      auto ends = raw.edge_endpoints(raw.edge_id("b" + std::to_string(k)));
      int from = k, to = (k == n) ? 1 : k + 1;
      auto assign = [&](int cls, int v) {
        std::string nm = std::to_string(v);
        if (!names[cls].empty() && names[cls] != nm)
          throw Error("internal", "polygon corner classes inconsistent");
        names[cls] = nm;
      };
      assign(ends[0], from);
      assign(ends[1], to);
    }
    return Triangulation({arcs}, {boundary}, {tris}, names);
  }

  int n_;
  Triangulation T_;
};

// ---------------------------------------------------------------- annulus --

class AnnulusModel {
 public:
  AnnulusModel(int p, int q) : p_(p), q_(q) {
    if (p < 1 || q < 1) throw Error("bad_surface", "annulus needs p,q >= 1");
    L_ = 4ll * p * q;
    build();
  }

  int p() const { return p_; }
  int q() const { return q_; }
  const Triangulation& T() const { return *T_; }

  struct Entry {
    CurveWord word;
    std::string desc;
    bool loop = false;
    bool midline = false;                            // core loop: the line y = Y0/2
    std::vector<std::array<long long, 4>> polyline;  // cover segments x1,y1,x2,y2
  };

  // Cover coordinates. Top point k and bottom point j; tops at even x, bottoms
  // at odd x, so they never collide.
  static constexpr long long Y0 = 1000003;
  long long top_x(long long k) const { return 4ll * q_ * k; }
  long long bot_x(long long j) const { return (4ll * j + 2) * p_ + 1; }

  // Quotient arc id of the cover chord from top a to bottom b.
  int arc_id(long long a, long long b) const {
    auto it = chord_class_.find(class_key(a, b));
    if (it == chord_class_.end()) throw Error("internal", "unknown chord class");
    return it->second;
  }

  std::vector<Entry> catalog(int bound, bool include_loops) const {
    std::vector<Entry> out;
    std::set<std::pair<std::vector<int>, int>> seen;
    auto push = [&](Entry e) {
      int first = e.word.first_triangle.value_or(-1);
      if (e.word.base_arc) first = -2 - *e.word.base_arc;
      if (!seen.insert({e.word.crossings, first}).second) return;
      out.push_back(std::move(e));
    };

    for (int a = 0; a < T_->num_arcs(); ++a) {
      Entry e;
      e.word.closed = false;
      e.word.base_arc = a;
      e.desc = "arc " + T_->arcs()[a];
      e.polyline = {chord_segment_of_arc(a)};
      push(std::move(e));
    }
    const int reach = bound + 3;
    for (int s = 0; s < p_; ++s)
      for (int m = -reach; m <= reach; ++m) {
        std::vector<std::array<long long, 4>> poly = {
            {top_x(s), Y0, bot_x(m), 0}};
        auto w = word_of_polyline(poly);
        if (w.crossings.empty() || w.length() > bound) continue;
        Entry e;
        e.word = w;
        e.desc = "spiral(o" + std::to_string(s) + ",m=" + std::to_string(m) + ")";
        e.polyline = std::move(poly);
        push(std::move(e));
      }
    // Same-boundary arcs: shallow caps enclosing 1..p-1 (resp. q-1) points of
    // their own boundary. Distinct caps get distinct depths, wider caps
    // strictly deeper, so crossing counts between representatives are minimal
    // (a nested narrower cap must stay above the wider one).
    for (int top = 0; top < 2; ++top) {
      int count = top ? p_ : q_;
      for (int s = 0; s < count; ++s)
        for (int w = 2; w <= count; ++w) {
          long long depth = 2 + (w - 2) * (count + 2) + s;
          std::vector<std::array<long long, 4>> poly;
          if (top) {
            long long xa = top_x(s), xb = top_x(s + w);
            poly = {{xa, Y0, xa + 1, Y0 - depth},
                    {xa + 1, Y0 - depth, xb - 1, Y0 - depth},
                    {xb - 1, Y0 - depth, xb, Y0}};
          } else {
            long long xa = bot_x(s), xb = bot_x(s + w);
            poly = {{xa, 0, xa + 1, depth},
                    {xa + 1, depth, xb - 1, depth},
                    {xb - 1, depth, xb, 0}};
          }
          auto word = word_of_polyline(poly);
          if (word.crossings.empty() || word.length() > bound) continue;
          Entry e;
          e.word = word;
          e.desc = std::string(top ? "outer-cap(o" : "inner-cap(i") +
                   std::to_string(s) + ",+" + std::to_string(w) + ")";
          e.polyline = std::move(poly);
          push(std::move(e));
        }
    }
    if (include_loops) {
      Entry z = core_loop();
      for (int k = 1; k * z.word.length() <= bound || k == 1; ++k) {
        Entry e = z;
        e.word.crossings.clear();
        for (int r = 0; r < k; ++r)
          e.word.crossings.insert(e.word.crossings.end(), z.word.crossings.begin(),
                                  z.word.crossings.end());
        e.word = canonical_word(e.word);
        if (e.word.length() > bound) break;
        if (k > 1) e.desc = "loop x" + std::to_string(k);
        out.push_back(std::move(e));
      }
    }
    return out;
  }

  Entry core_loop() const {
    // Chords ordered by where they cross the mid-height line, one period.
    std::vector<std::pair<long long, int>> cuts;
    for (const auto& [key, id] : chord_class_) {
      auto [a, b] = chord_rep_[id];
      long long mid2 = top_x(a) + bot_x(b);  // twice the crossing x
      long long k = floor_div(mid2, 2 * L_);
      mid2 -= k * 2 * L_;
      cuts.push_back({mid2, id});
    }
    std::sort(cuts.begin(), cuts.end());
    Entry e;
    e.loop = true;
    e.midline = true;
    e.word.closed = true;
    for (auto& [x, id] : cuts) e.word.crossings.push_back(id);
    e.word = canonical_word(e.word);
    e.desc = "loop";
    return e;
  }

  // Proper-crossing count between minimal-position representatives, summed
  // over deck translates. This is the compatibility test: compatible means 0.
  long long crossings(const Entry& A, const Entry& B) const {
    if (A.midline && B.midline) return 0;
    if (A.midline || B.midline) {
      const auto& poly = A.midline ? B.polyline : A.polyline;
      long long c = 0;
      for (const auto& s : poly) {
        long long mid = Y0 / 2;
        bool above1 = s[1] > mid, above2 = s[3] > mid;
        if (above1 != above2) ++c;
      }
      return c;
    }
    long long lo = 1e18, hi = -1e18;
    for (const auto& s : A.polyline) {
      lo = std::min({lo, s[0], s[2]});
      hi = std::max({hi, s[0], s[2]});
    }
    long long blo = 1e18, bhi = -1e18;
    for (const auto& s : B.polyline) {
      blo = std::min({blo, s[0], s[2]});
      bhi = std::max({bhi, s[0], s[2]});
    }
    long long kmin = floor_div(lo - bhi, L_) - 1, kmax = floor_div(hi - blo, L_) + 2;
    long long c = 0;
    for (long long k = kmin; k <= kmax; ++k)
      for (const auto& sa : A.polyline)
        for (const auto& sb : B.polyline) {
          std::array<long long, 4> t = {sb[0] + k * L_, sb[1], sb[2] + k * L_, sb[3]};
          if (proper_cross(sa, t)) ++c;
        }
    return c;
  }

 private:
  static long long floor_div(long long a, long long b) {
    long long d = a / b;
    return d * b > a ? d - 1 : d;
  }

  std::pair<long long, long long> class_key(long long a, long long b) const {
    long long k = floor_div(a, p_);
    return {a - k * p_, b - k * q_};
  }

  static long long orient(long long ax, long long ay, long long bx, long long by,
                          long long cx, long long cy) {
    long long v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return (v > 0) - (v < 0);
  }

  static bool proper_cross(const std::array<long long, 4>& s,
                           const std::array<long long, 4>& t) {
    long long o1 = orient(s[0], s[1], s[2], s[3], t[0], t[1]);
    long long o2 = orient(s[0], s[1], s[2], s[3], t[2], t[3]);
    long long o3 = orient(t[0], t[1], t[2], t[3], s[0], s[1]);
    long long o4 = orient(t[0], t[1], t[2], t[3], s[2], s[3]);
    return o1 * o2 < 0 && o3 * o4 < 0;
  }

  std::array<long long, 4> chord_segment(long long a, long long b) const {
    return {top_x(a), Y0, bot_x(b), 0};
  }

  std::array<long long, 4> chord_segment_of_arc(int id) const {
    auto [a, b] = chord_rep_[id];
    return chord_segment(a, b);
  }

  struct Crossing {
    // parameter along the polyline: segment index, then exact t = num/den
    int seg;
    BigInt num, den;  // den > 0
    long long a, b;   // the crossed cover chord
    bool operator<(const Crossing& o) const {
      if (seg != o.seg) return seg < o.seg;
      return num * o.den < o.num * den;
    }
  };

  CurveWord word_of_polyline(const std::vector<std::array<long long, 4>>& poly) const {
    std::vector<Crossing> xs;
    long long lo = 1e18, hi = -1e18;
    for (const auto& s : poly) {
      lo = std::min({lo, s[0], s[2]});
      hi = std::max({hi, s[0], s[2]});
    }
    for (int id = 0; id < T_->num_arcs(); ++id) {
      auto [ra, rb] = chord_rep_[id];
      long long kmin = floor_div(lo - std::max(top_x(ra), bot_x(rb)), L_) - 1;
      long long kmax = floor_div(hi - std::min(top_x(ra), bot_x(rb)), L_) + 2;
      for (long long k = kmin; k <= kmax; ++k) {
        long long a = ra + k * p_, b = rb + k * q_;
        auto ch = chord_segment(a, b);
        for (int si = 0; si < static_cast<int>(poly.size()); ++si) {
          const auto& s = poly[si];
          if (!proper_cross(s, ch)) continue;
          // intersection parameter t on s: t = o(ch, s0) / (o(ch,s0) - o(ch,s1))
          // with unnormalized orientation areas.
          BigInt a0 = BigInt(ch[2] - ch[0]) * (s[1] - ch[1]) -
                      BigInt(ch[3] - ch[1]) * (s[0] - ch[0]);
          BigInt a1 = BigInt(ch[2] - ch[0]) * (s[3] - ch[1]) -
                      BigInt(ch[3] - ch[1]) * (s[2] - ch[0]);
          BigInt den = a0 - a1, num = a0;
          if (den < 0) { den = -den; num = -num; }
          xs.push_back({si, num, den, a, b});
        }
      }
    }
    std::sort(xs.begin(), xs.end());
    CurveWord w;
    w.closed = false;
    for (const auto& c : xs) w.crossings.push_back(arc_id(c.a, c.b));
    if (!xs.empty()) {
      w.first_triangle = triangle_at(xs.front().a, xs.front().b, poly.front()[0],
                                     poly.front()[1]);
      w.last_triangle = triangle_at(xs.back().a, xs.back().b, poly.back()[2],
                                    poly.back()[3]);
    }
    return canonical_word(w);
  }

  // The quotient triangle incident to the cover chord (a,b) having the given
  // cover point as a vertex; this is the triangle a curve sits in just before
  // first crossing that chord (resp. after the last crossing).
  int triangle_at(long long a, long long b, long long px, long long py) const {
    int found = -1;
    for (int t = 0; t < T_->num_triangles(); ++t) {
      const auto& rep = tri_rep_[t];
      // match the chord against the triangle's two chord sides under shift
      for (auto [ca, cb] : rep.top
               ? std::array<std::pair<long long, long long>, 2>{{{rep.a + 1, rep.b},
                                                                 {rep.a, rep.b}}}
               : std::array<std::pair<long long, long long>, 2>{{{rep.a, rep.b + 1},
                                                                 {rep.a, rep.b}}}) {
        long long da = a - ca;
        if (da % p_ != 0) continue;
        long long k = da / p_;
        if (cb + k * q_ != b) continue;
        // shifted triangle vertices
        std::vector<std::array<long long, 2>> verts;
        long long A = rep.a + k * p_, B = rep.b + k * q_;
        if (rep.top)
          verts = {{top_x(A), Y0}, {top_x(A + 1), Y0}, {bot_x(B), 0}};
        else
          verts = {{top_x(A), Y0}, {bot_x(B), 0}, {bot_x(B + 1), 0}};
        for (auto& v : verts)
          if (v[0] == px && v[1] == py) {
            if (found >= 0 && found != t)
              throw Error("internal", "ambiguous entry triangle");
            found = t;
          }
      }
    }
    if (found < 0) throw Error("internal", "entry triangle not found");
    return found;
  }

  void build() {
    // Sweep events of one period; the pair (latest top, latest bottom) starts
    // at (-1,-1). Each event creates one chord and one triangle.
    struct Event {
      long long x;
      bool top;
      long long idx;
    };
    std::vector<Event> events;
    for (long long k = 0; k < p_; ++k) events.push_back({top_x(k), true, k});
    for (long long j = 0; j < q_; ++j) events.push_back({bot_x(j), false, j});
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.x < b.x; });

    // first pass: name chords t1.. in creation order
    long long ca = -1, cb = -1;
    for (const auto& ev : events) {
      if (ev.top) ca = ev.idx; else cb = ev.idx;
      auto key = class_key(ca, cb);
      if (!chord_class_.count(key)) {
        int id = static_cast<int>(chord_class_.size());
        chord_class_[key] = id;
        chord_rep_.push_back({ca, cb});
      }
    }
    if (static_cast<int>(chord_class_.size()) != p_ + q_)
      throw Error("internal", "annulus chord count mismatch");

    std::vector<std::string> arcs, boundary;
    for (int i = 1; i <= p_ + q_; ++i) arcs.push_back("t" + std::to_string(i));
    for (int i = 1; i <= p_; ++i) boundary.push_back("bo" + std::to_string(i));
    for (int i = 1; i <= q_; ++i) boundary.push_back("bi" + std::to_string(i));
    auto bo = [&](long long k) {
      return p_ + q_ + static_cast<int>(((k % p_) + p_) % p_);
    };
    auto bi = [&](long long j) {
      return p_ + q_ + p_ + static_cast<int>(((j % q_) + q_) % q_);
    };

    // second pass: triangles in event order, with cover representatives
    std::vector<std::array<int, 3>> tris;
    ca = -1; cb = -1;
    for (const auto& ev : events) {
      if (ev.top) {
        long long k = ev.idx;
        tris.push_back({bo(k - 1), arc_id(k, cb), arc_id(k - 1, cb)});
        tri_rep_.push_back({true, k - 1, cb});
        ca = k;
      } else {
        long long j = ev.idx;
        tris.push_back({arc_id(ca, j), bi(j - 1), arc_id(ca, j - 1)});
        tri_rep_.push_back({false, ca, j - 1});
        cb = j;
      }
    }

    Triangulation raw(arcs, boundary, tris);
    // Marked point names from the cover: top k -> mo{k mod p}, bottom j -> mi{j mod q}.
    std::vector<std::string> names(raw.num_points());
    for (size_t t = 0; t < tris.size(); ++t) {
      const auto& rep = tri_rep_[t];
      std::array<std::string, 3> corner;
      if (rep.top) {
        corner = {"mo" + std::to_string(((rep.a + 1) % p_ + p_) % p_),
                  "mi" + std::to_string((rep.b % q_ + q_) % q_),
                  "mo" + std::to_string((rep.a % p_ + p_) % p_)};
      } else {
        corner = {"mi" + std::to_string(((rep.b + 1) % q_ + q_) % q_),
                  "mi" + std::to_string((rep.b % q_ + q_) % q_),
                  "mo" + std::to_string((rep.a % p_ + p_) % p_)};
      }
      for (int c = 0; c < 3; ++c) {
        int cls = raw.corner_point(static_cast<int>(t), c);
        if (!names[cls].empty() && names[cls] != corner[c])
          throw Error("internal", "annulus corner classes inconsistent");
        names[cls] = corner[c];
      }
    }
    T_.emplace(arcs, boundary, tris, names);
  }

  struct TriRep {
    bool top;
    long long a, b;
  };

  int p_, q_;
  long long L_;
  std::optional<Triangulation> T_;
  std::map<std::pair<long long, long long>, int> chord_class_;
  std::vector<std::pair<long long, long long>> chord_rep_;
  std::vector<TriRep> tri_rep_;
};

}  // namespace scl
