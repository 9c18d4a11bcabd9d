#pragma once
// Snake graphs of curve crossing words, and band graphs of closed words.
//
// A word of length d unfolds into d unit tiles in the plane, each consecutive
// pair glued right or up. Tile j is split by its diagonal (the j-th crossed
// arc); the two triangles the curve passes through at that crossing occupy the
// two halves, and their remaining sides label the tile's edges. Perfect
// matchings are edge bitmasks; the twist moves between matchings and generates
// all of them from the minimal one, and height functions identify the matching
// lattice with order ideals of a fence poset on the tiles.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "scl/surface.hpp"

namespace scl {

enum TileSide { SIDE_N = 0, SIDE_E = 1, SIDE_S = 2, SIDE_W = 3 };

struct SnakeTile {
  int diagonal = -1;  // arc id of T (or -1 for abstract shapes)
  int rel = 1;        // +1/-1, alternating, tile 0 carries +1
  long long cx = 0, cy = 0;
  std::array<int, 4> label{-1, -1, -1, -1};  // edge-of-T label on N,E,S,W
  // The triangle entered first occupies sides S,W plus the diagonal, the one
  // left through occupies N,E; rel decides which side of each pair takes the
  // clockwise-first label.
  int tri_in = -1, tri_out = -1;
};

struct SnakeEdge {
  long long x1, y1, x2, y2;  // endpoints, normalized so (x1,y1) < (x2,y2)
  int label = -1;            // edge id of T carried by this snake edge
  bool internal = false;     // glue edge between consecutive tiles
  bool horizontal() const { return y1 == y2; }
};

// Fence poset on the tiles: covers (a,b) mean tile a < tile b.
struct FencePoset {
  int n = 0;
  std::vector<std::pair<int, int>> covers;
};

class SnakeGraph {
 public:
  // Snake graph of an open crossing word on T.
  SnakeGraph(const Triangulation& T, const CurveWord& w)
      : SnakeGraph(&T, w.crossings, triangle_sequence(T, w)) {
    if (w.closed) throw Error("bad_curve", "snake graphs take open words");
    validate_word(T, w);
  }

  // Core build from a resolved walk; the band graph reuses it for closed walks
  // (where tri_seq wraps around, tri_seq.front() == tri_seq.back()).
  SnakeGraph(const Triangulation* T, const std::vector<int>& word,
             const std::vector<int>& tri_seq) {
    const int d = static_cast<int>(word.size());
    if (d < 1) throw Error("bad_curve", "snake graph needs at least one crossing");
    if (static_cast<int>(tri_seq.size()) != d + 1)
      throw Error("internal", "walk length mismatch");
    if (d > 16) throw Error("bad_curve", "snake graph capped at 16 tiles");
    T_ = T;
    tiles_.resize(d);
    glue_dir_.assign(d > 1 ? d - 1 : 0, 'R');

    for (int j = 0; j < d; ++j) {
      SnakeTile& t = tiles_[j];
      t.diagonal = word[j];
      t.rel = (j % 2 == 0) ? 1 : -1;
      t.tri_in = tri_seq[j];
      t.tri_out = tri_seq[j + 1];
      if (j > 0) {
        t.cx = tiles_[j - 1].cx + (glue_dir_[j - 1] == 'R' ? 1 : 0);
        t.cy = tiles_[j - 1].cy + (glue_dir_[j - 1] == 'U' ? 1 : 0);
      }
      place_halves(j);
      if (j > 0) {
        // the shared side carries the glue label, the other incoming side the
        // previous diagonal
        int glue_side = glue_dir_[j - 1] == 'R' ? SIDE_W : SIDE_S;
        int other_side = glue_side == SIDE_W ? SIDE_S : SIDE_W;
        int g = T_->third_side(t.tri_in, word[j - 1], word[j]);
        if (t.label[glue_side] != g)
          throw Error("internal", "glue label mismatch between tiles");
        if (t.label[other_side] != word[j - 1])
          throw Error("internal", "carried-over diagonal mismatch");
      }
      if (j + 1 < d) {
        int g = T_->third_side(t.tri_out, word[j], word[j + 1]);
        if (t.label[SIDE_E] == g)
          glue_dir_[j] = 'R';
        else if (t.label[SIDE_N] == g)
          glue_dir_[j] = 'U';
        else
          throw Error("internal", "glue label missing from outgoing half");
      }
    }
    index_edges();
  }

  // Abstract shape from a glue string over {R,U}; labels stay synthetic.
  static SnakeGraph shape(const std::string& glues) {
    SnakeGraph g;
    const int d = static_cast<int>(glues.size()) + 1;
    if (d > 16) throw Error("bad_curve", "snake graph capped at 16 tiles");
    g.tiles_.resize(d);
    for (int j = 0; j < d; ++j) {
      g.tiles_[j].diagonal = j;
      g.tiles_[j].rel = (j % 2 == 0) ? 1 : -1;
      if (j > 0) {
        char c = glues[j - 1];
        if (c != 'R' && c != 'U')
          throw Error("bad_curve", "glue string must use R and U");
        g.tiles_[j].cx = g.tiles_[j - 1].cx + (c == 'R' ? 1 : 0);
        g.tiles_[j].cy = g.tiles_[j - 1].cy + (c == 'U' ? 1 : 0);
      }
    }
    g.glue_dir_.assign(glues.begin(), glues.end());
    g.index_edges();
    return g;
  }

  int tiles() const { return static_cast<int>(tiles_.size()); }
  const SnakeTile& tile(int j) const { return tiles_[j]; }
  const std::vector<char>& glue_dirs() const { return glue_dir_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const SnakeEdge& edge(int e) const { return edges_[e]; }
  int edge_id(int tile, int side) const { return tile_edge_[tile][side]; }

  // The boundary-only matching avoiding both vertical sides of tile 0.
  uint64_t minimal_matching() const {
    uint64_t forbidden = 0;
    for (int e = 0; e < num_edges(); ++e)
      if (edges_[e].internal) forbidden |= 1ull << e;
    forbidden |= 1ull << edge_id(0, SIDE_E);
    forbidden |= 1ull << edge_id(0, SIDE_W);
    auto found = matchings_avoiding(forbidden);
    if (found.size() != 1)
      throw Error("internal", "minimal matching not unique");
    return found[0];
  }

  // The other boundary-only matching.
  uint64_t maximal_matching() const {
    uint64_t forbidden = 0;
    for (int e = 0; e < num_edges(); ++e)
      if (edges_[e].internal) forbidden |= 1ull << e;
    uint64_t pm = minimal_matching();
    auto all = matchings_avoiding(forbidden);
    for (uint64_t m : all)
      if (m != pm) return m;
    throw Error("internal", "maximal matching missing");
  }

  // Tiles whose boundary appears in m as an opposite pair; the twist swaps
  // that pair for the other one.
  bool twistable(uint64_t m, int j, bool& horizontal) const {
    uint64_t ns = (1ull << edge_id(j, SIDE_N)) | (1ull << edge_id(j, SIDE_S));
    uint64_t ew = (1ull << edge_id(j, SIDE_E)) | (1ull << edge_id(j, SIDE_W));
    if ((m & ns) == ns) {
      horizontal = true;
      return true;
    }
    if ((m & ew) == ew) {
      horizontal = false;
      return true;
    }
    return false;
  }

  uint64_t twist(uint64_t m, int j) const {
    bool horiz = false;
    if (!twistable(m, j, horiz)) throw Error("internal", "tile is not twistable");
    uint64_t ns = (1ull << edge_id(j, SIDE_N)) | (1ull << edge_id(j, SIDE_S));
    uint64_t ew = (1ull << edge_id(j, SIDE_E)) | (1ull << edge_id(j, SIDE_W));
    return horiz ? ((m & ~ns) | ew) : ((m & ~ew) | ns);
  }

  // All perfect matchings, generated from the minimal one by twists.
  std::vector<uint64_t> all_matchings() const {
    std::set<uint64_t> seen;
    std::queue<uint64_t> todo;
    uint64_t start = minimal_matching();
    seen.insert(start);
    todo.push(start);
    while (!todo.empty()) {
      uint64_t m = todo.front();
      todo.pop();
      for (int j = 0; j < tiles(); ++j) {
        bool horiz;
        if (!twistable(m, j, horiz)) continue;
        uint64_t t = twist(m, j);
        if (seen.insert(t).second) todo.push(t);
      }
    }
    return {seen.begin(), seen.end()};
  }

  // Enclosed tiles of the cycle set P- xor m, by a downward ray cast.
  uint64_t height_set(uint64_t m) const { return height_set_from(minimal_matching(), m); }

  uint64_t height_set_from(uint64_t pmin, uint64_t m) const {
    uint64_t diff = pmin ^ m;
    uint64_t out = 0;
    for (int j = 0; j < tiles(); ++j) {
      int count = 0;
      for (int e = 0; e < num_edges(); ++e) {
        if (!(diff & (1ull << e)) || !edges_[e].horizontal()) continue;
        if (edges_[e].x1 == tiles_[j].cx && edges_[e].y1 <= tiles_[j].cy) ++count;
      }
      if (count % 2) out |= 1ull << j;
    }
    return out;
  }

  // Fence poset: orientation of the relation between consecutive tiles flips
  // exactly when the glue direction repeats.
  FencePoset fence() const {
    FencePoset f;
    f.n = tiles();
    if (f.n < 2) return f;
    bool ne = glue_dir_[0] == 'R';  // tile 0 < tile 1 when glued right
    f.covers.push_back(ne ? std::make_pair(0, 1) : std::make_pair(1, 0));
    for (int j = 1; j + 1 < f.n; ++j) {
      if (glue_dir_[j] == glue_dir_[j - 1]) ne = !ne;
      f.covers.push_back(ne ? std::make_pair(j, j + 1) : std::make_pair(j + 1, j));
    }
    return f;
  }

  // All order ideals of the fence, as tile bitmasks, ascending.
  std::vector<uint64_t> ideals() const {
    FencePoset f = fence();
    std::vector<uint64_t> out;
    for (uint64_t s = 0; s < (1ull << f.n); ++s) {
      bool ok = true;
      for (auto [lo, hi] : f.covers)
        if ((s & (1ull << hi)) && !(s & (1ull << lo))) {
          ok = false;
          break;
        }
      if (ok) out.push_back(s);
    }
    return out;
  }

  std::string dot() const {
    std::string s = "graph snake {\n  node [shape=point];\n";
    auto vname = [](long long x, long long y) {
      return "v" + std::to_string(x) + "_" + std::to_string(y);
    };
    std::set<std::pair<long long, long long>> verts;
    for (const auto& e : edges_) {
      verts.insert({e.x1, e.y1});
      verts.insert({e.x2, e.y2});
    }
    for (auto [x, y] : verts)
      s += "  " + vname(x, y) + " [pos=\"" + std::to_string(x) + "," +
           std::to_string(y) + "!\"];\n";
    for (const auto& e : edges_) {
      s += "  " + vname(e.x1, e.y1) + " -- " + vname(e.x2, e.y2);
      std::string lbl;
      if (e.label >= 0 && T_) lbl = T_->edge_name(e.label);
      else if (e.label >= 0) lbl = "e" + std::to_string(e.label);
      s += " [label=\"" + lbl + "\"";
      if (e.internal) s += ", style=dashed";
      s += "];\n";
    }
    return s + "}\n";
  }

  // All matchings within an allowed edge set (used for the boundary-only
  // extremes; also a convenient exhaustive check for small graphs).
  std::vector<uint64_t> matchings_avoiding(uint64_t forbidden) const {
    std::vector<std::pair<long long, long long>> verts = vertices();
    std::map<std::pair<long long, long long>, int> vid;
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) vid[verts[i]] = i;
    std::vector<std::array<int, 2>> ends(num_edges());
    for (int e = 0; e < num_edges(); ++e)
      ends[e] = {vid[{edges_[e].x1, edges_[e].y1}], vid[{edges_[e].x2, edges_[e].y2}]};
    std::vector<uint64_t> out;
    uint64_t cover = 0, chosen = 0;
    search_matchings(forbidden, ends, static_cast<int>(verts.size()), cover,
                     chosen, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::pair<long long, long long>> vertices() const {
    std::set<std::pair<long long, long long>> v;
    for (const auto& e : edges_) {
      v.insert({e.x1, e.y1});
      v.insert({e.x2, e.y2});
    }
    return {v.begin(), v.end()};
  }

  const Triangulation* surface() const { return T_; }

 private:
  SnakeGraph() = default;

  // The two clockwise-successor sides of each triangle, taken from its
  // diagonal, land on the tile in an order that flips with rel.
  void place_halves(int j) {
    SnakeTile& t = tiles_[j];
    auto in_cw = T_->sides_from(t.tri_in, t.diagonal);
    auto out_cw = T_->sides_from(t.tri_out, t.diagonal);
    if (t.rel == 1) {
      t.label[SIDE_S] = in_cw[1];
      t.label[SIDE_W] = in_cw[2];
      t.label[SIDE_N] = out_cw[1];
      t.label[SIDE_E] = out_cw[2];
    } else {
      t.label[SIDE_W] = in_cw[1];
      t.label[SIDE_S] = in_cw[2];
      t.label[SIDE_E] = out_cw[1];
      t.label[SIDE_N] = out_cw[2];
    }
  }

  void index_edges() {
    std::map<std::array<long long, 4>, int> key_to_id;
    tile_edge_.assign(tiles(), {-1, -1, -1, -1});
    for (int j = 0; j < tiles(); ++j) {
      const SnakeTile& t = tiles_[j];
      const std::array<std::array<long long, 4>, 4> segs = {{
          {t.cx, t.cy + 1, t.cx + 1, t.cy + 1},  // N
          {t.cx + 1, t.cy, t.cx + 1, t.cy + 1},  // E
          {t.cx, t.cy, t.cx + 1, t.cy},          // S
          {t.cx, t.cy, t.cx, t.cy + 1},          // W
      }};
      for (int s = 0; s < 4; ++s) {
        auto it = key_to_id.find(segs[s]);
        if (it == key_to_id.end()) {
          int id = static_cast<int>(edges_.size());
          key_to_id[segs[s]] = id;
          edges_.push_back({segs[s][0], segs[s][1], segs[s][2], segs[s][3],
                            t.label[s], false});
          tile_edge_[j][s] = id;
        } else {
          SnakeEdge& e = edges_[it->second];
          e.internal = true;
          if (e.label != t.label[s])
            throw Error("internal", "shared edge labelled inconsistently");
          tile_edge_[j][s] = it->second;
        }
      }
    }
    if (num_edges() != 3 * tiles() + 1)
      throw Error("internal", "snake edge count off");
  }

  void search_matchings(uint64_t forbidden,
                        const std::vector<std::array<int, 2>>& ends, int nverts,
                        uint64_t& cover, uint64_t& chosen,
                        std::vector<uint64_t>& out) const {
    int v = -1;
    for (int i = 0; i < nverts; ++i)
      if (!(cover & (1ull << i))) {
        v = i;
        break;
      }
    if (v < 0) {
      out.push_back(chosen);
      return;
    }
    for (int e = 0; e < num_edges(); ++e) {
      if (forbidden & (1ull << e)) continue;
      if (ends[e][0] != v && ends[e][1] != v) continue;
      int w = ends[e][0] == v ? ends[e][1] : ends[e][0];
      if (cover & (1ull << w)) continue;
      cover |= (1ull << v) | (1ull << w);
      chosen |= 1ull << e;
      search_matchings(forbidden, ends, nverts, cover, chosen, out);
      cover &= ~((1ull << v) | (1ull << w));
      chosen &= ~(1ull << e);
    }
  }

  const Triangulation* T_ = nullptr;
  std::vector<SnakeTile> tiles_;
  std::vector<char> glue_dir_;
  std::vector<SnakeEdge> edges_;
  std::vector<std::array<int, 4>> tile_edge_;
};

// Band graph of a closed word: the snake graph of one period, with the two
// copies of the closing triangle's third side marked. Good matchings are the
// lifts using at least one of the marked sides.
class BandGraph {
 public:
  BandGraph(const Triangulation& T, const CurveWord& w) {
    if (!w.closed) throw Error("bad_curve", "band graphs take closed words");
    validate_word(T, w);
    CurveWord cw = canonical_word(w);
    word_ = cw.crossings;
    init(T, triangle_sequence(T, cw));
  }

  // Build at an explicit rotation and cut triangle instead of the canonical
  // ones. The expansion must come out the same; tests lean on that.
  BandGraph(const Triangulation& T, const std::vector<int>& word,
            int start_triangle) {
    CurveWord w;
    w.closed = true;
    w.crossings = word;
    validate_word(T, w);
    word_ = word;
    const int d = static_cast<int>(word_.size());
    std::vector<int> seq = {start_triangle};
    int cur = start_triangle;
    for (int j = 0; j < d; ++j) {
      if (!T.triangle_has(cur, word_[j]))
        throw Error("bad_curve", "cut triangle admits no closed walk");
      cur = T.other_triangle(word_[j], cur);
      seq.push_back(cur);
      if (j + 1 < d && !T.triangle_has(cur, word_[j + 1]))
        throw Error("bad_curve", "cut triangle admits no closed walk");
    }
    if (cur != start_triangle)
      throw Error("bad_curve", "cut triangle admits no closed walk");
    init(T, seq);
  }

 private:
  void init(const Triangulation& T, const std::vector<int>& seq) {
    lift_.emplace(&T, word_, seq);
    const int d = static_cast<int>(word_.size());
    cut_label_ = T.third_side(seq.front(), word_[d - 1], word_[0]);

    auto pick = [&](int j, bool incoming) {
      std::array<int, 2> sides = incoming ? std::array<int, 2>{SIDE_S, SIDE_W}
                                          : std::array<int, 2>{SIDE_N, SIDE_E};
      for (int s : sides)
        if (lift_->tile(j).label[s] == cut_label_) return lift_->edge_id(j, s);
      throw Error("internal", "cut label missing from closing half");
    };
    e_first_ = pick(0, true);
    e_last_ = pick(d - 1, false);
    if (lift_->edge(e_first_).horizontal() != lift_->edge(e_last_).horizontal())
      throw Error("internal", "band closes with a quarter turn");

    uint64_t pmin = lift_->minimal_matching();
    bool first_in = pmin & (1ull << e_first_);
    bool last_in = pmin & (1ull << e_last_);
    if (first_in == last_in)
      throw Error("internal", "exactly one marked side must sit in the minimal matching");
    first_over_last_ = first_in;
  }

 public:
  const SnakeGraph& lift() const { return *lift_; }
  const std::vector<int>& word() const { return word_; }
  int cut_label() const { return cut_label_; }
  int e_first() const { return e_first_; }
  int e_last() const { return e_last_; }

  // true: ideals containing tile 0 must contain the last tile; false: the
  // symmetric constraint. Matches which marked side the minimal matching uses.
  bool first_over_last() const { return first_over_last_; }

  std::vector<uint64_t> good_matchings() const {
    std::vector<uint64_t> out;
    uint64_t specials = (1ull << e_first_) | (1ull << e_last_);
    for (uint64_t m : lift_->all_matchings())
      if (m & specials) out.push_back(m);
    return out;
  }

  std::vector<uint64_t> good_ideals() const {
    const int d = lift_->tiles();
    int from = first_over_last_ ? 0 : d - 1;
    int to = first_over_last_ ? d - 1 : 0;
    std::vector<uint64_t> out;
    for (uint64_t s : lift_->ideals())
      if (!(s & (1ull << from)) || (s & (1ull << to))) out.push_back(s);
    return out;
  }

 private:
  std::vector<int> word_;
  std::optional<SnakeGraph> lift_;
  int cut_label_ = -1;
  int e_first_ = -1, e_last_ = -1;
  bool first_over_last_ = false;
};

}  // namespace scl
