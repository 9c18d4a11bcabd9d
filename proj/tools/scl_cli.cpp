// Command-line front end for the surface cluster algebra toolkit.
//
// Subcommands: expand, mutate, lattice, verify, catalog, bases. Global
// flags pick the surface file, the output format (json, text, or dot for
// the graph-shaped outputs), a worker count for the verification suites,
// and an optional run manifest path. Exit codes: 0 success, 1 a
// verification or cross-check failed, 2 bad usage or malformed input,
// reported as {"error": {...}} on stderr.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "scl/bases.hpp"
#include "scl/json_io.hpp"
#include "scl/version.hpp"

namespace {

using scl::CheckReport;
using scl::Json;

struct Shared {
  std::string surface_path;
  std::string format = "json";
  int jobs = 1;
  long long seed = 0;
  std::string manifest_path;
  std::map<std::string, std::string> input_digests;
  std::string summary;
};

Json load_json(Shared& sh, const std::string& path) {
  std::string bytes = scl::read_file(path);
  sh.input_digests[path] = scl::fnv1a64_hex(bytes);
  return scl::parse_json_text(bytes, path);
}

struct LoadedSurface {
  scl::Triangulation T;
  std::optional<scl::FamilySpec> family;
};

LoadedSurface load_surface(Shared& sh) {
  if (sh.surface_path.empty()) throw scl::Error("usage", "--surface is required");
  Json j = load_json(sh, sh.surface_path);
  return {scl::surface_from_json(j), scl::family_from_json(j)};
}

// The family block is advisory metadata; commands that rely on it must make
// sure it describes the triangulation actually loaded.
std::optional<scl::PolygonModel> as_polygon(const LoadedSurface& s) {
  if (!s.family || s.family->kind != "polygon") return std::nullopt;
  scl::PolygonModel m(s.family->n);
  if (m.T().digest() != s.T.digest())
    throw scl::Error("bad_surface", "family metadata disagrees with the triangulation");
  return m;
}

std::optional<scl::AnnulusModel> as_annulus(const LoadedSurface& s) {
  if (!s.family || s.family->kind != "annulus") return std::nullopt;
  scl::AnnulusModel m(s.family->p, s.family->q);
  if (m.T().digest() != s.T.digest())
    throw scl::Error("bad_surface", "family metadata disagrees with the triangulation");
  return m;
}

std::string gtext(const scl::GVector& g) {
  std::string s = "(";
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g[i]);
  }
  return s + ")";
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void require_graph_format(const Shared& sh) {
  if (sh.format == "dot")
    throw scl::Error("usage", "dot output only exists for expand and lattice");
}

std::vector<int> parse_path(const std::string& text, int n) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t a = tok.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = tok.find_last_not_of(" \t");
    int v = 0;
    try {
      size_t used = 0;
      v = std::stoi(tok.substr(a, b - a + 1), &used);
      if (used != b - a + 1) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw scl::Error("bad_path", "path entries must be integers: " + tok);
    }
    if (v < 1 || v > n)
      throw scl::Error("bad_path",
                       "mutation directions run from 1 to " + std::to_string(n));
    out.push_back(v - 1);
  }
  return out;
}

// Fixed-size worker pool over an indexed task list; results land in task
// order no matter which thread ran them, so output stays deterministic.
std::vector<CheckReport> run_pool(const std::vector<std::function<CheckReport()>>& tasks,
                                  int jobs) {
  std::vector<CheckReport> rows(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        rows[i] = tasks[i]();
      } catch (const scl::Error& e) {
        rows[i] = CheckReport{"error", "task " + std::to_string(i), false,
                              std::string(e.code()) + ": " + e.what()};
      }
    }
  };
  int n = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

int emit_report(Shared& sh, const std::string& suite,
                const std::vector<CheckReport>& rows) {
  size_t passed = 0;
  for (const auto& r : rows)
    if (r.ok) ++passed;
  sh.summary = suite + ": " + std::to_string(passed) + "/" +
               std::to_string(rows.size()) + " checks passed";
  if (sh.format == "text") {
    for (const auto& r : rows)
      std::cout << (r.ok ? "[pass] " : "[FAIL] ") << r.check << " " << r.instance
                << ": " << r.witness << "\n";
    std::cout << sh.summary << "\n";
  } else {
    Json out = Json::object();
    out["suite"] = suite;
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(scl::report_row(r));
    out["checks"] = arr;
    out["passed"] = passed;
    out["total"] = rows.size();
    print_json(out);
  }
  return passed == rows.size() ? 0 : 1;
}

int cmd_expand(Shared& sh, const std::string& curve_path, int kinks) {
  LoadedSurface S = load_surface(sh);
  auto ctx = scl::VarContext::principal(S.T.num_arcs());
  scl::CurveWord w = scl::curve_from_json(load_json(sh, curve_path), S.T);
  if (sh.format == "dot") {
    if (w.crossings.empty())
      throw scl::Error("bad_curve", "a curve with no crossings has no graph to draw");
    if (w.closed) {
      scl::BandGraph B(S.T, w);
      std::cout << B.lift().dot();
    } else {
      scl::SnakeGraph G(S.T, w);
      std::cout << G.dot();
    }
    sh.summary = "dot graph for " + w.str(S.T);
    return 0;
  }
  scl::ExpansionResult r = w.closed ? scl::expand_loop(S.T, ctx, w, kinks)
                                    : scl::expand_arc(S.T, ctx, w, kinks);
  sh.summary = "expanded " + r.word.str(S.T);
  if (sh.format == "text") {
    std::cout << "curve " << r.word.str(S.T) << "\n";
    std::cout << "laurent " << scl::factored_text(r, S.T, ctx) << "\n";
    std::cout << "f-polynomial " << r.f_poly.str() << "\n";
    std::cout << "g-vector " << gtext(r.g) << "\n";
  } else {
    print_json(scl::expansion_to_json(r, S.T, ctx));
  }
  return 0;
}

int cmd_mutate(Shared& sh, const std::string& path_text, int slot_1based,
               const std::string& check_path) {
  require_graph_format(sh);
  LoadedSurface S = load_surface(sh);
  int n = S.T.num_arcs();
  auto ctx = scl::VarContext::principal(n);
  std::vector<int> path = parse_path(path_text, n);
  scl::Seed s = scl::initial_seed(ctx, scl::extend_principal(S.T.signed_adjacency()));
  Json out = Json::object();
  out["initial"] = scl::seed_to_json(s);
  Json trace = Json::array();
  for (int k : path) {
    s = scl::mutate_seed(s, k);
    Json step = Json::object();
    step["direction"] = k + 1;
    step["variable"] = s.cluster[k].str();
    trace.push_back(step);
  }
  out["path"] = path_text;
  out["trace"] = trace;
  out["final"] = scl::seed_to_json(s);
  sh.summary = "mutated along " + std::to_string(path.size()) + " steps";

  int rc = 0;
  if (!check_path.empty()) {
    int slot;
    if (slot_1based > 0) {
      if (slot_1based > n)
        throw scl::Error("usage", "--slot runs from 1 to " + std::to_string(n));
      slot = slot_1based - 1;
    } else if (!path.empty()) {
      slot = path.back();
    } else {
      throw scl::Error("usage", "--check-against-curve needs --slot or a path");
    }
    scl::CurveWord w = scl::curve_from_json(load_json(sh, check_path), S.T);
    scl::ExpansionResult r = w.closed ? scl::expand_loop(S.T, ctx, w)
                                      : scl::expand_arc(S.T, ctx, w);
    Json chk = Json::object();
    chk["slot"] = slot + 1;
    chk["curve"] = w.str(S.T);
    if (s.cluster[slot] == r.laurent) {
      chk["status"] = "match";
    } else {
      chk["status"] = "mismatch";
      chk["mutation_variable"] = s.cluster[slot].str();
      chk["expansion"] = r.laurent.str();
      rc = 1;
    }
    out["check"] = chk;
    sh.summary += rc == 0 ? "; expansion check matched" : "; expansion check FAILED";
  }

  if (sh.format == "text") {
    std::cout << "path " << (path_text.empty() ? "(empty)" : path_text) << "\n";
    for (size_t i = 0; i < s.cluster.size(); ++i)
      std::cout << "x" << (i + 1) << " = " << s.cluster[i].str() << "\n";
    if (!check_path.empty())
      std::cout << "check " << out["check"]["status"].get<std::string>() << "\n";
  } else {
    print_json(out);
  }
  return rc;
}

Json matching_rows(const scl::SnakeGraph& G, const scl::Triangulation& T,
                   const scl::VarContextPtr& ctx, const std::vector<uint64_t>& ms,
                   uint64_t pmin) {
  int n = T.num_arcs();
  Json arr = Json::array();
  for (uint64_t m : ms) {
    Json row = Json::object();
    row["mask"] = m;
    Json edges = Json::array();
    Json labels = Json::array();
    for (int e = 0; e < G.num_edges(); ++e) {
      if (!(m >> e & 1)) continue;
      edges.push_back(e);
      labels.push_back(T.edge_name(G.edge(e).label));
    }
    row["edges"] = edges;
    row["labels"] = labels;
    scl::Expo ye(ctx->names.size(), 0);
    uint64_t hs = G.height_set_from(pmin, m);
    for (int j = 0; j < G.tiles(); ++j)
      if (hs >> j & 1) ye[n + G.tile(j).diagonal] += 1;
    row["height"] = scl::Laurent::monomial(ctx, ye).str();
    arr.push_back(row);
  }
  return arr;
}

int cmd_lattice(Shared& sh, const std::string& curve_path) {
  LoadedSurface S = load_surface(sh);
  auto ctx = scl::VarContext::principal(S.T.num_arcs());
  scl::CurveWord w = scl::curve_from_json(load_json(sh, curve_path), S.T);
  if (w.crossings.empty())
    throw scl::Error("bad_curve", "a curve with no crossings has no matching lattice");
  Json out = Json::object();
  out["curve"] = w.str(S.T);
  bool counts_match = false;
  if (!w.closed) {
    scl::SnakeGraph G(S.T, w);
    if (sh.format == "dot") {
      std::cout << G.dot();
      sh.summary = "dot graph for " + w.str(S.T);
      return 0;
    }
    auto ms = G.all_matchings();
    std::sort(ms.begin(), ms.end());
    size_t ideals = G.ideals().size();
    counts_match = ms.size() == ideals;
    out["kind"] = "snake";
    out["tiles"] = G.tiles();
    out["matchings"] = matching_rows(G, S.T, ctx, ms, G.minimal_matching());
    out["matching_count"] = ms.size();
    out["ideal_count"] = ideals;
    sh.summary = std::to_string(ms.size()) + " matchings on " +
                 std::to_string(G.tiles()) + " tiles";
  } else {
    scl::BandGraph B(S.T, w);
    if (sh.format == "dot") {
      std::cout << B.lift().dot();
      sh.summary = "dot graph for " + w.str(S.T);
      return 0;
    }
    auto good = B.good_matchings();
    std::sort(good.begin(), good.end());
    size_t ideals = B.good_ideals().size();
    uint64_t pmin = B.lift().minimal_matching();
    counts_match = good.size() == ideals;
    out["kind"] = "band";
    out["tiles"] = B.lift().tiles();
    out["cut_label"] = S.T.edge_name(B.cut_label());
    out["matchings"] = matching_rows(B.lift(), S.T, ctx, good, pmin);
    out["matching_count"] = good.size();
    out["ideal_count"] = ideals;
    out["minimal_is_good"] =
        std::binary_search(good.begin(), good.end(), pmin);
    sh.summary = std::to_string(good.size()) + " good matchings on " +
                 std::to_string(B.lift().tiles()) + " tiles";
  }
  out["counts_match"] = counts_match;
  if (sh.format == "text") {
    std::cout << out["kind"].get<std::string>() << " " << out["curve"].get<std::string>()
              << ": " << sh.summary << (counts_match ? "" : " (IDEAL COUNT MISMATCH)")
              << "\n";
  } else {
    print_json(out);
  }
  return counts_match ? 0 : 1;
}

int cmd_catalog(Shared& sh, int bound) {
  require_graph_format(sh);
  LoadedSurface S = load_surface(sh);
  Json arr = Json::array();
  auto push = [&](const std::string& desc, const scl::CurveWord& w, bool loop) {
    Json row = Json::object();
    row["desc"] = desc;
    row["word"] = w.str(S.T);
    row["length"] = w.length();
    row["loop"] = loop;
    arr.push_back(row);
  };
  if (auto P = as_polygon(S)) {
    for (const auto& e : P->catalog(bound)) push(e.desc, e.word, false);
  } else if (auto A = as_annulus(S)) {
    for (const auto& e : A->catalog(bound, true)) push(e.desc, e.word, e.loop);
  } else {
    throw scl::Error("unsupported_family",
                     "catalogs exist for polygon and annulus families only");
  }
  sh.summary = std::to_string(arr.size()) + " curves within bound " +
               std::to_string(bound);
  if (sh.format == "text") {
    for (const auto& row : arr)
      std::cout << row["desc"].get<std::string>() << " "
                << row["word"].get<std::string>() << "\n";
  } else {
    Json out = Json::object();
    out["bound"] = bound;
    out["curves"] = arr;
    print_json(out);
  }
  return 0;
}

int cmd_bases(Shared& sh, int bound, int mult, int maxk, const std::string& variant) {
  require_graph_format(sh);
  LoadedSurface S = load_surface(sh);
  auto ctx = scl::VarContext::principal(S.T.num_arcs());
  scl::BasisBound b{bound, mult, maxk};
  scl::BasisVariant v = variant == "bracelets" ? scl::BasisVariant::bracelets
                                               : scl::BasisVariant::bangles;
  std::vector<scl::BasisElement> els;
  if (auto P = as_polygon(S)) {
    els = scl::enumerate_basis_elements(*P, ctx, b, v);
  } else if (auto A = as_annulus(S)) {
    els = scl::enumerate_basis_elements(*A, ctx, b, v);
  } else {
    throw scl::Error("unsupported_family",
                     "basis enumeration exists for polygon and annulus families only");
  }
  sh.summary = std::to_string(els.size()) + " " + variant + " elements";
  if (sh.format == "text") {
    for (const auto& el : els)
      std::cout << el.label << " g=" << gtext(el.g) << "\n";
  } else {
    Json out = Json::object();
    out["variant"] = variant;
    Json arr = Json::array();
    for (const auto& el : els) {
      Json row = Json::object();
      row["label"] = el.label;
      row["g"] = el.g;
      row["parts"] = el.parts.size();
      row["value"] = el.value.str();
      arr.push_back(row);
    }
    out["elements"] = arr;
    print_json(out);
  }
  return 0;
}

void add_shape_tasks(std::vector<std::function<CheckReport()>>& tasks, int max_tiles) {
  for (int d = 1; d <= max_tiles; ++d) {
    for (uint64_t mask = 0; mask < (1ull << (d - 1)); ++mask) {
      std::string glues;
      for (int i = 0; i < d - 1; ++i)
        glues += (mask >> (d - 2 - i) & 1) ? 'U' : 'R';
      tasks.push_back([glues, d] {
        scl::SnakeGraph G = scl::SnakeGraph::shape(glues);
        auto tw = G.all_matchings();
        std::sort(tw.begin(), tw.end());
        auto brute = G.matchings_avoiding(0);
        bool ok = tw == brute;
        ok = ok && tw.size() == G.ideals().size();
        uint64_t pmin = G.minimal_matching();
        for (uint64_t m : tw) {
          for (int j = 0; j < G.tiles(); ++j) {
            bool horiz = false;
            if (!G.twistable(m, j, horiz)) continue;
            int before = std::popcount(G.height_set_from(pmin, m));
            int after = std::popcount(G.height_set_from(pmin, G.twist(m, j)));
            if (after - before != 1 && before - after != 1) ok = false;
          }
        }
        std::string inst = "tiles=" + std::to_string(d) + " glues=" +
                           (glues.empty() ? "-" : glues);
        return CheckReport{"lattice-parity", inst, ok,
                           std::to_string(tw.size()) + " matchings, " +
                               std::to_string(tw.size()) +
                               " ideals, twists step height by one"};
      });
    }
  }
}

int cmd_verify(Shared& sh, const std::string& suite, int bound, int kk, int mult,
               int max_tiles) {
  require_graph_format(sh);
  std::vector<std::function<CheckReport()>> tasks;

  if (suite == "ptolemy") {
    auto S = std::make_shared<LoadedSurface>(load_surface(sh));
    auto ctx = scl::VarContext::principal(S->T.num_arcs());
    for (int a = 0; a < S->T.num_arcs(); ++a) {
      tasks.push_back([S, ctx, a] {
        try {
          scl::PtolemyReport r = scl::verify_ptolemy(S->T, ctx, a);
          return CheckReport{r.check, r.instance, r.ok, r.witness};
        } catch (const scl::Error& e) {
          return CheckReport{"ptolemy", S->T.edge_name(a), false,
                             std::string(e.code()) + ": " + e.what()};
        }
      });
    }
  } else if (suite == "chebyshev") {
    for (int k = 0; k <= 12; ++k) {
      tasks.push_back([k] {
        scl::ChebPoly p = scl::chebyshev_T(k);
        return CheckReport{"chebyshev-identity", "T_" + std::to_string(k),
                           scl::chebyshev_identity_holds(p), p.str()};
      });
    }
    for (int k = 1; k <= 12; ++k) {
      tasks.push_back([k] {
        scl::ChebCombination c = scl::monomial_to_chebyshev(k);
        auto ctx2 = scl::VarContext::make({"x", "Y"}, 2);
        scl::Expo want(2, 0);
        want[0] = k;
        bool ok = c.resubstituted(ctx2) == scl::Laurent::monomial(ctx2, want);
        for (const auto& t : c.terms)
          if (t.coeff <= 0) ok = false;
        return CheckReport{"chebyshev-rewrite", "x^" + std::to_string(k), ok, c.str()};
      });
    }
    if (!sh.surface_path.empty()) {
      auto S = std::make_shared<LoadedSurface>(load_surface(sh));
      if (auto A = as_annulus(*S)) {
        auto ctx = scl::VarContext::principal(S->T.num_arcs());
        scl::CurveWord loop = A->core_loop().word;
        for (int j = 1; j <= kk; ++j) {
          tasks.push_back([S, ctx, loop, j] {
            return scl::verify_bracelet_chebyshev(S->T, ctx, loop, j);
          });
        }
      }
    }
  } else if (suite == "counts") {
    auto S = std::make_shared<LoadedSurface>(load_surface(sh));
    auto A = as_annulus(*S);
    if (!A)
      throw scl::Error("unsupported_family",
                       "good matching counts need an annulus family");
    scl::CurveWord loop = A->core_loop().word;
    tasks.push_back([S, loop, kk] {
      return scl::verify_good_count_inequality(S->T, loop, kk);
    });
  } else if (suite == "g-injectivity") {
    auto S = std::make_shared<LoadedSurface>(load_surface(sh));
    auto ctx = scl::VarContext::principal(S->T.num_arcs());
    scl::IntMat Bt = scl::extend_principal(S->T.signed_adjacency());
    scl::BasisBound b{bound, mult, kk};
    auto P = as_polygon(*S);
    auto A = as_annulus(*S);
    if (!P && !A)
      throw scl::Error("unsupported_family",
                       "basis enumeration exists for polygon and annulus families only");
    for (scl::BasisVariant v :
         {scl::BasisVariant::bangles, scl::BasisVariant::bracelets}) {
      tasks.push_back([S, ctx, Bt, b, v, P, A] {
        auto els = P ? scl::enumerate_basis_elements(*P, ctx, b, v)
                     : scl::enumerate_basis_elements(*A, ctx, b, v);
        CheckReport r = scl::verify_g_injectivity(els, Bt);
        r.instance += v == scl::BasisVariant::bangles ? " (bangles)" : " (bracelets)";
        return r;
      });
    }
    if (P && S->family->n == 6) {
      auto chords = scl::hexagon_inverting_chords();
      for (size_t i = 0; i < chords.size(); ++i) {
        scl::CurveWord w = chords[i];
        int arc = static_cast<int>(i);
        tasks.push_back([S, ctx, w, arc] {
          return scl::verify_inverted_g(S->T, ctx, w, arc);
        });
      }
    }
  } else if (suite == "lattice-parity") {
    add_shape_tasks(tasks, max_tiles);
    if (!sh.surface_path.empty()) {
      auto S = std::make_shared<LoadedSurface>(load_surface(sh));
      auto P = as_polygon(*S);
      auto A = as_annulus(*S);
      std::vector<std::pair<std::string, scl::CurveWord>> open_words;
      std::vector<std::pair<std::string, scl::CurveWord>> loops;
      if (P) {
        for (const auto& e : P->catalog(max_tiles))
          if (e.word.length() >= 1) open_words.push_back({e.desc, e.word});
      } else if (A) {
        for (const auto& e : A->catalog(max_tiles, true)) {
          if (e.word.length() < 1 || e.word.length() > max_tiles) continue;
          (e.loop ? loops : open_words).push_back({e.desc, e.word});
        }
      } else {
        throw scl::Error("unsupported_family",
                         "surface rows need a polygon or annulus family");
      }
      for (const auto& [desc, w] : open_words) {
        tasks.push_back([S, desc, w] {
          scl::SnakeGraph G(S->T, w);
          auto tw = G.all_matchings();
          std::sort(tw.begin(), tw.end());
          bool ok = tw == G.matchings_avoiding(0) && tw.size() == G.ideals().size();
          return CheckReport{"lattice-parity", desc, ok,
                             std::to_string(tw.size()) + " matchings match the ideals"};
        });
      }
      for (const auto& [desc, w] : loops) {
        tasks.push_back([S, desc, w] {
          scl::BandGraph B(S->T, w);
          auto good = B.good_matchings();
          std::sort(good.begin(), good.end());
          bool ok = good.size() == B.good_ideals().size();
          ok = ok && std::binary_search(good.begin(), good.end(),
                                        B.lift().minimal_matching());
          return CheckReport{"lattice-parity", desc, ok,
                             std::to_string(good.size()) +
                                 " good matchings match the good ideals; minimal is good"};
        });
      }
    }
  } else {
    throw scl::Error("usage", "unknown verify suite " + suite);
  }

  auto rows = run_pool(tasks, sh.jobs);
  return emit_report(sh, suite, rows);
}

void write_manifest(const Shared& sh, const std::string& command, long long elapsed_ms) {
  if (sh.manifest_path.empty()) return;
  Json m = Json::object();
  m["command"] = command;
  Json inputs = Json::object();
  for (const auto& [p, d] : sh.input_digests) inputs[p] = d;
  m["inputs"] = inputs;
  m["library_version"] = scl::library_version;
  m["seed"] = sh.seed;
  m["jobs"] = sh.jobs;
  m["elapsed_ms"] = elapsed_ms;
  m["summary"] = sh.summary;
  std::ofstream out(sh.manifest_path);
  if (!out) throw scl::Error("bad_file", "cannot write " + sh.manifest_path);
  out << m.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Laurent expansions over triangulated surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Shared sh;
  app.add_option("--surface", sh.surface_path, "surface JSON file");
  app.add_option("--format", sh.format, "output format")
      ->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("--jobs", sh.jobs, "parallel workers for verify suites")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", sh.seed, "seed recorded in the run manifest");
  app.add_option("--manifest", sh.manifest_path, "write a run manifest to this file");

  auto* exp = app.add_subcommand("expand", "Laurent expansion of a curve");
  std::string curve_path;
  int kinks = 0;
  exp->add_option("--curve", curve_path, "curve JSON file")->required();
  exp->add_option("--kinks", kinks, "self-intersections carried by the curve");

  auto* mut = app.add_subcommand("mutate", "walk a mutation path from the initial seed");
  std::string path_text;
  int slot = 0;
  std::string check_path;
  mut->add_option("--path", path_text, "comma-separated 1-based directions");
  mut->add_option("--slot", slot, "1-based cluster slot for the expansion check");
  mut->add_option("--check-against-curve", check_path,
                  "curve JSON whose expansion the slot must equal");

  auto* lat = app.add_subcommand("lattice", "matching lattice of a curve's graph");
  std::string lat_curve;
  lat->add_option("--curve", lat_curve, "curve JSON file")->required();

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  int bound = 4, kk = 3, mult = 3, max_tiles = 6;
  ver->add_option("suite", suite,
                  "ptolemy|chebyshev|counts|g-injectivity|lattice-parity")
      ->required();
  ver->add_option("--bound", bound, "word length cap for enumerations");
  ver->add_option("--k", kk, "winding cap");
  ver->add_option("--mult", mult, "total multiplicity cap");
  ver->add_option("--max-tiles", max_tiles, "tile cap for lattice checks")
      ->check(CLI::Range(1, 16));

  auto* cat = app.add_subcommand("catalog", "curves of the surface family");
  int cat_bound = 6;
  cat->add_option("--bound", cat_bound, "word length cap");

  auto* bas = app.add_subcommand("bases", "enumerate basis collections");
  int b_bound = 3, b_mult = 2, b_k = 2;
  std::string variant = "bangles";
  bas->add_option("--bound", b_bound, "word length cap per curve");
  bas->add_option("--mult", b_mult, "total multiplicity cap");
  bas->add_option("--k", b_k, "loop multiplicity cap");
  bas->add_option("--variant", variant, "bangles|bracelets")
      ->check(CLI::IsMember({"bangles", "bracelets"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json err = Json::object();
    err["error"] = Json::object();
    err["error"]["code"] = "usage";
    err["error"]["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 2;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) command += " ";
    command += argv[i];
  }

  auto t0 = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (*exp)
      rc = cmd_expand(sh, curve_path, kinks);
    else if (*mut)
      rc = cmd_mutate(sh, path_text, slot, check_path);
    else if (*lat)
      rc = cmd_lattice(sh, lat_curve);
    else if (*ver)
      rc = cmd_verify(sh, suite, bound, kk, mult, max_tiles);
    else if (*cat)
      rc = cmd_catalog(sh, cat_bound);
    else if (*bas)
      rc = cmd_bases(sh, b_bound, b_mult, b_k, variant);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    write_manifest(sh, command, ms);
  } catch (const scl::Error& e) {
    Json err = Json::object();
    err["error"] = Json::object();
    err["error"]["code"] = e.code();
    err["error"]["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
  return rc;
}
