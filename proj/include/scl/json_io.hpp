#pragma once

// Interchange layer for the command-line tool: surface and curve files come
// in as JSON, expansions and seeds go out as JSON or text. Everything is
// rendered in a fixed order so the same inputs always produce the same bytes.

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scl/bases.hpp"
#include "scl/cluster.hpp"
#include "scl/digest.hpp"
#include "scl/expansion.hpp"
#include "scl/surface.hpp"

namespace scl {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("bad_file", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("bad_json", "cannot parse " + origin);
  return j;
}

namespace detail {

inline std::vector<std::string> string_list(const Json& a, const char* what) {
  if (!a.is_array()) throw Error("bad_surface", std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : a) {
    if (!v.is_string())
      throw Error("bad_surface", std::string(what) + " entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace detail

// {"arcs": [...], "boundary": [...], "triangles": [["a","b","c"], ...]}
// with each triangle listing its sides in clockwise order.
inline Triangulation surface_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("arcs") || !j.contains("boundary") ||
      !j.contains("triangles"))
    throw Error("bad_surface", "surface file needs arcs, boundary, and triangles");
  auto arcs = detail::string_list(j.at("arcs"), "arcs");
  auto boundary = detail::string_list(j.at("boundary"), "boundary");
  if (!j.at("triangles").is_array())
    throw Error("bad_surface", "triangles must be an array");
  std::vector<std::array<std::string, 3>> tris;
  for (const auto& t : j.at("triangles")) {
    if (!t.is_array() || t.size() != 3)
      throw Error("bad_surface", "each triangle lists exactly three sides");
    std::array<std::string, 3> row;
    for (int i = 0; i < 3; ++i) {
      if (!t[i].is_string())
        throw Error("bad_surface", "triangle sides must be edge names");
      row[i] = t[i].get<std::string>();
    }
    tris.push_back(row);
  }
  return Triangulation::from_labels(arcs, boundary, tris);
}

// Optional metadata block naming the standard family a surface file was
// generated from, e.g. {"kind": "polygon", "n": 5} or
// {"kind": "annulus", "p": 1, "q": 1}. Used by commands that need the
// catalog of curves, which only exists for these families.
struct FamilySpec {
  std::string kind;
  int n = 0;
  int p = 0;
  int q = 0;
};

inline std::optional<FamilySpec> family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family")) return std::nullopt;
  const Json& f = j.at("family");
  if (!f.is_object() || !f.contains("kind") || !f.at("kind").is_string())
    throw Error("bad_surface", "family block needs a kind");
  FamilySpec out;
  out.kind = f.at("kind").get<std::string>();
  auto geti = [&](const char* key) {
    if (!f.contains(key) || !f.at(key).is_number_integer())
      throw Error("bad_surface", std::string("family block needs integer ") + key);
    return f.at(key).get<int>();
  };
  if (out.kind == "polygon") {
    out.n = geti("n");
  } else if (out.kind == "annulus") {
    out.p = geti("p");
    out.q = geti("q");
  } else {
    throw Error("bad_surface", "unknown family kind " + out.kind);
  }
  return out;
}

// {"kind": "open"|"closed", "crossings": [edge names], ...} with optional
// "endpoints" (two marked point indices), "base_arc" (for the zero-crossing
// curve that coincides with an arc), and "first_triangle"/"last_triangle"
// pins for resolving ambiguous starts.
inline CurveWord curve_from_json(const Json& j, const Triangulation& T) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw Error("bad_curve", "curve file needs kind open or closed");
  std::string kind = j.at("kind").get<std::string>();
  CurveWord w;
  if (kind == "closed")
    w.closed = true;
  else if (kind != "open")
    throw Error("bad_curve", "curve kind must be open or closed");
  if (j.contains("crossings")) {
    if (!j.at("crossings").is_array())
      throw Error("bad_curve", "crossings must be an array of edge names");
    for (const auto& c : j.at("crossings")) {
      if (!c.is_string()) throw Error("bad_curve", "crossings entries must be edge names");
      w.crossings.push_back(T.edge_id(c.get<std::string>()));
    }
  }
  if (j.contains("base_arc")) {
    if (!j.at("base_arc").is_string())
      throw Error("bad_curve", "base_arc must be an edge name");
    w.base_arc = T.edge_id(j.at("base_arc").get<std::string>());
  }
  if (j.contains("endpoints")) {
    const Json& e = j.at("endpoints");
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw Error("bad_curve", "endpoints must be two marked point indices");
    w.endpoints = std::array<int, 2>{e[0].get<int>(), e[1].get<int>()};
  }
  auto pin = [&](const char* key, std::optional<int>& slot) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number_integer())
      throw Error("bad_curve", std::string(key) + " must be a triangle index");
    slot = j.at(key).get<int>();
  };
  pin("first_triangle", w.first_triangle);
  pin("last_triangle", w.last_triangle);
  validate_word(T, w);
  return w;
}

// Terms smallest-first; the flat canonical form from Laurent::str() lists
// the leading term first instead. Smallest-first reads naturally when the
// expansion is written over a common denominator, since the minimal
// matching contributes the low term.
inline std::string ascending_str(const Laurent& p) {
  const auto& terms = p.terms();
  if (terms.empty()) return "0";
  const auto& names = p.context()->names;
  std::ostringstream out;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    BigInt a = it->second;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    std::string vars;
    for (size_t i = 0; i < it->first.size(); ++i) {
      int e = it->first[i];
      if (e == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += names[i];
      if (e != 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty()) {
      out << a.str();
    } else {
      if (a != 1) out << a.str() << "*";
      out << vars;
    }
  }
  return out.str();
}

// Expansion as numerator over the crossing monomial, the way the matching
// sum is actually assembled: "(1 + y1)*x1^-1" for one crossing of the
// square. Curves with no crossings print flat.
inline std::string factored_text(const ExpansionResult& r, const Triangulation& T,
                                 const VarContextPtr& ctx) {
  if (r.word.crossings.empty()) return ascending_str(r.laurent);
  Laurent cm = crossing_monomial(T, ctx, r.word);
  const Expo& cross = cm.terms().begin()->first;
  Laurent num = r.laurent * cm;
  std::string den;
  for (size_t i = 0; i < cross.size(); ++i) {
    if (cross[i] == 0) continue;
    if (!den.empty()) den += "*";
    den += ctx->names[i] + "^-" + std::to_string(cross[i]);
  }
  return "(" + ascending_str(num) + ")*" + den;
}

inline Json laurent_terms_json(const Laurent& p) {
  Json arr = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json row = Json::object();
    row["coeff"] = c.str();
    row["exponents"] = e;
    arr.push_back(row);
  }
  return arr;
}

inline Json expansion_to_json(const ExpansionResult& r, const Triangulation& T,
                              const VarContextPtr& ctx) {
  Json j = Json::object();
  j["curve"] = r.word.str(T);
  j["kinks"] = r.kinks;
  j["laurent"] = factored_text(r, T, ctx);
  j["terms"] = laurent_terms_json(r.laurent);
  j["f_polynomial"] = r.f_poly.str();
  j["g_vector"] = r.g;
  j["variables"] = ctx->names;
  j["surface_digest"] = r.surface_digest;
  return j;
}

inline Json matrix_json(const IntMat& M) {
  Json rows = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int c = 0; c < M.cols(); ++c)
      row.push_back(M.at(i, c).convert_to<long long>());
    rows.push_back(row);
  }
  return rows;
}

inline Json seed_to_json(const Seed& s) {
  Json j = Json::object();
  j["matrix"] = matrix_json(s.Bt);
  Json cl = Json::array();
  for (const auto& x : s.cluster) cl.push_back(x.str());
  j["cluster"] = cl;
  return j;
}

inline Json report_row(const CheckReport& r) {
  Json j = Json::object();
  j["check"] = r.check;
  j["instance"] = r.instance;
  j["status"] = r.ok ? "pass" : "fail";
  j["witness"] = r.witness;
  return j;
}

}  // namespace scl
