#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "defo/deligne.hpp"
#include "defo/linf.hpp"
#include "defo/report.hpp"

namespace defo::io {

using Json = nlohmann::ordered_json;

/// Canonical text: two-space indentation and a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline Json read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot open '" + p.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string str(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline Rational rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(str(j, "coefficient"));
}

inline int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

inline const Json& array(const Json& j, const char* what, std::size_t size = 0) {
  if (!j.is_array() || (size && j.size() != size)) throw ParseError(std::string(what) + " has the wrong shape");
  return j;
}

inline std::vector<Term> terms(const Json& j) {
  std::vector<Term> out;
  for (const auto& t : array(j, "term list")) {
    array(t, "term", 2);
    out.emplace_back(str(t[0], "basis name"), rational(t[1]));
  }
  return out;
}

inline Json terms_json(const std::vector<Term>& ts) {
  Json out = Json::array();
  for (const auto& [n, c] : ts) out.push_back(Json::array({n, to_string(c)}));
  return out;
}

inline void expect_type(const Json& j, const char* type) {
  if (j.is_object() && j.contains("type") && j["type"] != type)
    throw ParseError(std::string("expected a '") + type + "' document, got '" + j["type"].dump() + "'");
}

}  // namespace detail

// DG Lie algebras: {"type": "dgla", "degrees": {"0": [names]}, "differential": [[x, [[y, "c"]]]],
// "bracket": [[[x, y], [[z, "c"]]]]}. Parsing does not validate; see validate_dgla.

inline Json to_json(const DGLieData& d) {
  Json deg = Json::object();
  for (const auto& [k, names] : d.degrees) deg[std::to_string(k)] = names;
  Json diff = Json::array(), br = Json::array();
  for (const auto& [x, ts] : d.differential) diff.push_back(Json::array({x, detail::terms_json(ts)}));
  for (const auto& [xy, ts] : d.bracket) br.push_back(Json::array({Json::array({xy.first, xy.second}), detail::terms_json(ts)}));
  return Json{{"type", "dgla"}, {"degrees", deg}, {"differential", diff}, {"bracket", br}};
}

inline DGLieData dgla_from_json(const Json& j) {
  detail::expect_type(j, "dgla");
  DGLieData d;
  const auto& deg = detail::field(j, "degrees");
  if (!deg.is_object()) throw ParseError("'degrees' must be an object");
  for (const auto& [k, names] : deg.items()) {
    int key;
    try {
      std::size_t pos;
      key = std::stoi(k, &pos);
      if (pos != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      throw ParseError("degree key '" + k + "' is not an integer");
    }
    std::vector<std::string> ns;
    for (const auto& n : detail::array(names, "name list")) ns.push_back(detail::str(n, "basis name"));
    d.degrees[key] = ns;
  }
  if (j.contains("differential"))
    for (const auto& e : detail::array(j["differential"], "differential")) {
      detail::array(e, "differential entry", 2);
      d.differential.emplace_back(detail::str(e[0], "basis name"), detail::terms(e[1]));
    }
  if (j.contains("bracket"))
    for (const auto& e : detail::array(j["bracket"], "bracket")) {
      detail::array(e, "bracket entry", 2);
      detail::array(e[0], "bracket pair", 2);
      d.bracket.push_back({{detail::str(e[0][0], "basis name"), detail::str(e[0][1], "basis name")}, detail::terms(e[1])});
    }
  return d;
}

inline bool same_data(const DGLieData& a, const DGLieData& b) {
  return a.degrees == b.degrees && a.differential == b.differential && a.bracket == b.bracket;
}

// Strict morphisms: {"type": "morphism", "source": <dgla or path>, "target": <dgla or path>,
// "components": {"i": [[row of "c"]]}} with dim h^i rows and dim g^i columns.

inline Json to_json(const DGLAMorphism& f) {
  Json comps = Json::object();
  for (const auto& [d, m] : f.components()) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
      rows.push_back(row);
    }
    comps[std::to_string(d)] = rows;
  }
  return Json{{"type", "morphism"}, {"source", to_json(f.source()->data())}, {"target", to_json(f.target()->data())}, {"components", comps}};
}

/// An algebra given inline or as a path relative to `base`.
inline DGLAPtr algebra_ref(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) return DGLieAlgebra::make(dgla_from_json(read_file(base / j.get<std::string>())));
  return DGLieAlgebra::make(dgla_from_json(j));
}

inline std::map<int, QMatrix> components_from_json(const Json& j, const DGLieAlgebra& g, const DGLieAlgebra& h) {
  std::map<int, QMatrix> out;
  if (!j.is_object()) throw ParseError("'components' must be an object");
  for (const auto& [k, rows] : j.items()) {
    int d;
    try {
      d = std::stoi(k);
    } catch (const std::exception&) {
      throw ParseError("component key '" + k + "' is not an integer");
    }
    QMatrix m(h.dim(d), g.dim(d));
    detail::array(rows, "component matrix", 0);
    if (rows.size() != m.rows()) throw ParseError("component " + k + " has the wrong number of rows");
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (!rows[r].is_array() || rows[r].size() != m.cols()) throw ParseError("component " + k + " has the wrong number of columns");
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = detail::rational(rows[r][c]);
    }
    out.emplace(d, std::move(m));
  }
  return out;
}

struct MorphismData {
  DGLAPtr source, target;
  std::map<int, QMatrix> components;
};

inline MorphismData morphism_data_from_json(const Json& j, const std::filesystem::path& base = {}) {
  detail::expect_type(j, "morphism");
  MorphismData m{algebra_ref(detail::field(j, "source"), base), algebra_ref(detail::field(j, "target"), base), {}};
  m.components = components_from_json(detail::field(j, "components"), *m.source, *m.target);
  return m;
}

inline MorphismPtr morphism_from_json(const Json& j, const std::filesystem::path& base = {}) {
  auto m = morphism_data_from_json(j, base);
  return DGLAMorphism::make(m.source, m.target, m.components);
}

// Elements of m (x) g: {"type": "element", "degree": i, "terms": [[name, [exponents], "c"]]}.

inline Json to_json(const NilpotentDGLA& L, const Element& e) {
  Json ts = Json::array();
  for (const auto& [n, mon, c] : L.terms(e)) ts.push_back(Json::array({n, mon, to_string(c)}));
  return Json{{"type", "element"}, {"degree", e.degree}, {"terms", ts}};
}

/// Number of parameters used by an element file, or nullopt if it has no terms.
inline std::optional<int> element_params(const Json& j) {
  const auto& ts = detail::field(j, "terms");
  if (!ts.is_array() || ts.empty()) return std::nullopt;
  if (!ts[0].is_array() || ts[0].size() != 3 || !ts[0][1].is_array()) throw ParseError("element term has the wrong shape");
  return static_cast<int>(ts[0][1].size());
}

inline Element element_from_json(const NilpotentDGLA& L, const Json& j) {
  detail::expect_type(j, "element");
  std::vector<ElementTerm> ts;
  for (const auto& t : detail::array(detail::field(j, "terms"), "terms")) {
    detail::array(t, "element term", 3);
    Monomial m;
    for (const auto& x : detail::array(t[1], "monomial")) m.push_back(detail::integer(x, "exponent"));
    ts.emplace_back(detail::str(t[0], "basis name"), m, detail::rational(t[2]));
  }
  int deg = detail::integer(detail::field(j, "degree"), "degree");
  return L.from_terms(ts, deg);
}

// MC paths: {"type": "path", "one_part": [element per power of t], "form_part": [...]}.

inline Json to_json(const NilpotentDGLA& L, const MCPath& p) {
  Json one = Json::array(), form = Json::array();
  for (const auto& c : p.one_part.coeffs) one.push_back(to_json(L, c));
  for (const auto& c : p.form_part.coeffs) form.push_back(to_json(L, c));
  return Json{{"type", "path"}, {"one_part", one}, {"form_part", form}};
}

inline MCPath path_from_json(const NilpotentDGLA& L, const Json& j) {
  detail::expect_type(j, "path");
  MCPath p;
  for (const auto& c : detail::array(detail::field(j, "one_part"), "one_part")) p.one_part.coeffs.push_back(element_from_json(L, c));
  for (const auto& c : detail::array(detail::field(j, "form_part"), "form_part")) p.form_part.coeffs.push_back(element_from_json(L, c));
  return p;
}

// L-infinity morphisms: {"type": "linf", "source", "target", "horizon": W,
// "orders": [{"j": j, "entries": [[[input names], target name, "c"]]}]}. Entry values are F_j on
// canonically sorted inputs (global basis order), signs already normalized.

inline Json to_json(const LInfData& f, int horizon) {
  const auto& gs = f.source->space();
  const auto& hs = f.target->space();
  Json orders = Json::array();
  for (const auto& [j, m] : f.taylor) {
    Json entries = Json::array();
    for (const auto& [w, v] : m)
      for (const auto& [t, c] : v) {
        if (sgn(c) == 0) continue;
        Json in = Json::array();
        for (int i : w) in.push_back(gs.name_of(i));
        entries.push_back(Json::array({in, hs.name_of(t), to_string(c)}));
      }
    if (!entries.empty()) orders.push_back(Json{{"j", j}, {"entries", entries}});
  }
  return Json{{"type", "linf"}, {"source", to_json(f.source->data())}, {"target", to_json(f.target->data())}, {"horizon", horizon}, {"orders", orders}};
}

struct LInfFile {
  LInfData data;
  int horizon = 0;
};

/// Parses without validating. Inputs that are not canonically sorted are rejected.
inline LInfFile linf_from_json(const Json& j, const std::filesystem::path& base = {}) {
  detail::expect_type(j, "linf");
  LInfFile out;
  out.data.source = algebra_ref(detail::field(j, "source"), base);
  out.data.target = algebra_ref(detail::field(j, "target"), base);
  out.horizon = detail::integer(detail::field(j, "horizon"), "horizon");
  const auto& gs = out.data.source->space();
  const auto& hs = out.data.target->space();
  auto index = [](const GradedSpace& s, const std::string& n) {
    auto [d, i] = s.at(n);
    return s.global(d, i);
  };
  for (const auto& o : detail::array(detail::field(j, "orders"), "orders")) {
    int order = detail::integer(detail::field(o, "j"), "j");
    for (const auto& e : detail::array(detail::field(o, "entries"), "entries")) {
      detail::array(e, "linf entry", 3);
      bar::Word w;
      for (const auto& n : detail::array(e[0], "input list")) w.push_back(index(gs, detail::str(n, "basis name")));
      if (static_cast<int>(w.size()) != order) throw ParseError("entry of order " + std::to_string(order) + " has " + std::to_string(w.size()) + " inputs");
      bar::Word c = w;
      if (bar::canonical_sign(*out.data.source, c) != 1 || c != w) throw ParseError("inputs are not canonically sorted");
      out.data.taylor[order][w][index(hs, detail::str(e[1], "basis name"))] += detail::rational(e[2]);
    }
  }
  return out;
}

// Reports: {"ok": bool, "checks": [{"name", "sample", "pass", "detail"}]}.

inline Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"sample", c.sample}, {"pass", c.pass}, {"detail", c.detail}});
  return Json{{"ok", r.ok()}, {"checks", checks}};
}

inline Json to_json(const ValidationReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.violations) vs.push_back(Json{{"axiom", v.axiom}, {"witness", v.witness}, {"detail", v.detail}});
  return Json{{"ok", r.ok()}, {"violations", vs}};
}

inline Json to_json(const NilpotentDGLA& L, const ObstructionClass& c) {
  Json coords = Json::array();
  for (std::size_t i = 0; i < c.monomials.size(); ++i) {
    Json v = Json::array();
    for (const auto& x : c.coordinates[i]) v.push_back(to_string(x));
    coords.push_back(Json{{"monomial", c.monomials[i]}, {"coordinates", v}});
  }
  return Json{{"level", c.level == ObstructionLevel::O2 ? "o2" : "o1"}, {"order", c.order}, {"degree", c.degree},
              {"representative", to_json(L, c.representative)}, {"class", coords}};
}

}  // namespace defo::io
