#pragma once

// JSON documents naming rings, modules, morphisms, diagrams, hexagon frames and
// diagram extensions. Integers below 2^53 in magnitude are JSON numbers; larger
// ones are decimal strings.

#include "hexext/hexagon.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>

namespace hexext::io {

using Json = nlohmann::ordered_json;

/// Malformed JSON; `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

/// Well-formed JSON whose content is not a valid model; `path` locates the entry.
class SemanticError : public std::runtime_error {
 public:
  SemanticError(const std::string& path, const std::string& reason)
      : std::runtime_error(path + ": " + reason), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ModuleEntry {
  std::string ring;
  PresentedModule module;
};

struct MorphismEntry {
  std::string source, target;
  ModuleMorphism morphism;
};

inline const char* const kDiagramObjects[] = {"P", "E", "R", "H", "S", "G", "F", "Q"};
inline const char* const kDiagramSequences[] = {"rowTop", "rowBottom", "colLeft", "colRight"};

struct DiagramEntry {
  std::map<std::string, std::string> objects;                                ///< P..Q → module name
  std::map<std::string, std::pair<std::string, std::string>> sequences;     ///< rowTop.. → (inject, project)
  Diagram3x3 diagram;
};

inline const char* const kFrameMaps[] = {"alpha", "beta", "topB", "d", "r", "s"};

struct HexagonEntry {
  std::map<std::string, std::string> maps;  ///< alpha..s → morphism name
  HexagonFrame frame;
};

struct ExtensionEntry {
  std::string diagram, X, i, j, m, n;
  DiagramExtension extension;
};

struct Document {
  std::map<std::string, RingSpec> rings;
  std::map<std::string, ModuleEntry> modules;
  std::map<std::string, MorphismEntry> morphisms;
  std::map<std::string, DiagramEntry> diagrams;
  std::map<std::string, HexagonEntry> hexagons;
  std::map<std::string, ExtensionEntry> extensions;

  const PresentedModule& module(const std::string& name) const {
    auto it = modules.find(name);
    if (it == modules.end()) throw SemanticError(name, "no such module");
    return it->second.module;
  }
  const ModuleMorphism& morphism(const std::string& name) const {
    auto it = morphisms.find(name);
    if (it == morphisms.end()) throw SemanticError(name, "no such morphism");
    return it->second.morphism;
  }
};

// ---------------------------------------------------------------------------
// integers and matrices

inline Json int_to_json(const Int& v) {
  static const Int limit = Int(1) << 53;
  if (v < limit && v > -limit) return static_cast<long long>(v);
  return v.str();
}

inline Int int_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<unsigned long long>()) : Int(j.get<long long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (k == s.size() || s.find_first_not_of("0123456789", k) != std::string::npos)
      throw SemanticError(path, "expected a decimal integer string");
    return Int(s);
  }
  throw SemanticError(path, "expected an integer");
}

inline std::vector<std::vector<Int>> rows_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SemanticError(path, "expected an array of arrays");
  std::vector<std::vector<Int>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string p = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) throw SemanticError(p, "expected an array");
    std::vector<Int> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(int_from_json(j[r][c], p + "[" + std::to_string(c) + "]"));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// parsing

namespace detail {

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SemanticError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SemanticError(path, std::string("missing \"") + key + "\"");
  return *it;
}

inline std::string name_field(const Json& obj, const char* key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_string()) throw SemanticError(path + "." + key, "expected a name");
  return v.get<std::string>();
}

inline RingSpec parse_ring(const Json& j, const std::string& path) {
  std::string kind = name_field(j, "kind", path);
  if (kind == "Z") return RingSpec::integers();
  if (kind == "Zmod") {
    Int m = int_from_json(field(j, "m", path), path + ".m");
    if (m < 2) throw SemanticError(path + ".m", "modulus must be at least 2");
    return RingSpec::integers_mod(m);
  }
  throw SemanticError(path + ".kind", "unknown ring kind \"" + kind + "\"");
}

inline ModuleEntry parse_module(const Document& doc, const Json& j, const std::string& path) {
  std::string ring;
  if (j.is_object() && j.contains("ring")) {
    ring = name_field(j, "ring", path);
  } else if (doc.rings.size() == 1) {
    ring = doc.rings.begin()->first;
  } else {
    throw SemanticError(path, "missing \"ring\"");
  }
  auto rit = doc.rings.find(ring);
  if (rit == doc.rings.end()) throw SemanticError(path + ".ring", "no such ring \"" + ring + "\"");
  const RingSpec& R = rit->second;
  const Json& g = field(j, "generators", path);
  if (!g.is_number_unsigned()) throw SemanticError(path + ".generators", "expected a non-negative integer");
  const std::size_t n = g.get<std::size_t>();
  std::vector<std::vector<Int>> cols;
  if (j.contains("relations")) cols = rows_from_json(j["relations"], path + ".relations");
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (cols[c].size() != n)
      throw SemanticError(path + ".relations[" + std::to_string(c) + "]",
                          "relation has " + std::to_string(cols[c].size()) + " entries for " + std::to_string(n) +
                              " generators");
  return {ring, PresentedModule(R, n, ExactMatrix::from_columns(R, n, cols))};
}

inline MorphismEntry parse_morphism(const Document& doc, const Json& j, const std::string& path) {
  MorphismEntry e{name_field(j, "source", path), name_field(j, "target", path), {}};
  auto sit = doc.modules.find(e.source), tit = doc.modules.find(e.target);
  if (sit == doc.modules.end()) throw SemanticError(path + ".source", "no such module \"" + e.source + "\"");
  if (tit == doc.modules.end()) throw SemanticError(path + ".target", "no such module \"" + e.target + "\"");
  const PresentedModule& A = sit->second.module;
  const PresentedModule& B = tit->second.module;
  if (A.ring() != B.ring()) throw SemanticError(path, "source and target over different rings");
  auto rows = rows_from_json(field(j, "matrix", path), path + ".matrix");
  const std::size_t expect_rows = B.generators(), expect_cols = A.generators();
  bool shape = rows.size() == expect_rows;
  for (const auto& r : rows) shape = shape && r.size() == expect_cols;
  if (!shape)
    throw SemanticError(path + ".matrix", "expected " + std::to_string(expect_rows) + "×" + std::to_string(expect_cols) +
                                              " (target generators × source generators)");
  ExactMatrix M(A.ring(), expect_rows, expect_cols);
  for (std::size_t r = 0; r < expect_rows; ++r)
    for (std::size_t c = 0; c < expect_cols; ++c) M.set(r, c, rows[r][c]);
  try {
    e.morphism = ModuleMorphism(A, B, M);
  } catch (const Error& err) {
    throw SemanticError(path, err.what());
  }
  return e;
}

inline void expect_ends(const ModuleMorphism& f, const PresentedModule& s, const PresentedModule& t,
                        const std::string& path) {
  if (!f.source().same_presentation(s) || !f.target().same_presentation(t))
    throw SemanticError(path, "morphism does not connect the named objects");
}

inline DiagramEntry parse_diagram(const Document& doc, const Json& j, const std::string& path) {
  DiagramEntry e;
  for (const char* o : kDiagramObjects) {
    e.objects[o] = name_field(j, o, path);
    doc.module(e.objects[o]);
  }
  for (const char* s : kDiagramSequences) {
    const Json& seq = field(j, s, path);
    e.sequences[s] = {name_field(seq, "inject", path + "." + s), name_field(seq, "project", path + "." + s)};
  }
  auto mod = [&](const char* o) { return doc.module(e.objects.at(o)); };
  auto map = [&](const char* s, bool inject) {
    const auto& names = e.sequences.at(s);
    const std::string& n = inject ? names.first : names.second;
    try {
      return doc.morphism(n);
    } catch (const SemanticError&) {
      throw SemanticError(path + "." + s + (inject ? ".inject" : ".project"), "no such morphism \"" + n + "\"");
    }
  };
  auto checked = [&](const char* s, bool inject, const char* from, const char* to) {
    ModuleMorphism f = map(s, inject);
    expect_ends(f, mod(from), mod(to), path + "." + s + (inject ? ".inject" : ".project"));
    return f;
  };
  auto nu = checked("rowTop", true, "P", "E"), e_to_r = checked("rowTop", false, "E", "R");
  auto s_to_g = checked("rowBottom", true, "S", "G"), g_to_q = checked("rowBottom", false, "G", "Q");
  auto mu = checked("colLeft", true, "P", "H"), h_to_s = checked("colLeft", false, "H", "S");
  auto r_to_f = checked("colRight", true, "R", "F"), f_to_q = checked("colRight", false, "F", "Q");
  e.diagram = Diagram3x3{nu, e_to_r, s_to_g, g_to_q, mu, h_to_s, r_to_f, f_to_q};
  return e;
}

inline HexagonEntry parse_hexagon(const Document& doc, const Json& j, const std::string& path) {
  HexagonEntry e;
  std::vector<ModuleMorphism> fs;
  for (const char* k : kFrameMaps) {
    e.maps[k] = name_field(j, k, path);
    try {
      fs.push_back(doc.morphism(e.maps[k]));
    } catch (const SemanticError&) {
      throw SemanticError(path + "." + k, "no such morphism \"" + e.maps[k] + "\"");
    }
  }
  e.frame = HexagonFrame{fs[0], fs[1], fs[2], fs[3], fs[4], fs[5]};
  return e;
}

inline ExtensionEntry parse_extension(const Document& doc, const Json& j, const std::string& path) {
  ExtensionEntry e{name_field(j, "diagram", path), name_field(j, "X", path), name_field(j, "i", path),
                   name_field(j, "j", path),       name_field(j, "m", path), name_field(j, "n", path), {}};
  auto dit = doc.diagrams.find(e.diagram);
  if (dit == doc.diagrams.end()) throw SemanticError(path + ".diagram", "no such diagram \"" + e.diagram + "\"");
  const Diagram3x3& D = dit->second.diagram;
  const PresentedModule& X = doc.module(e.X);
  auto get = [&](const std::string& n, const char* key) {
    try {
      return doc.morphism(n);
    } catch (const SemanticError&) {
      throw SemanticError(path + "." + key, "no such morphism \"" + n + "\"");
    }
  };
  auto i = get(e.i, "i"), jj = get(e.j, "j"), m = get(e.m, "m"), n = get(e.n, "n");
  expect_ends(i, D.H(), X, path + ".i");
  expect_ends(jj, D.E(), X, path + ".j");
  expect_ends(m, X, D.F(), path + ".m");
  expect_ends(n, X, D.G(), path + ".n");
  e.extension = DiagramExtension{X, i, jj, m, n};
  return e;
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k)
    if (text[k] == '\n') ++line;
  return line;
}

template <class F>
void each_entry(const Json& root, const char* key, F f) {
  if (!root.contains(key)) return;
  const Json& sec = root[key];
  if (!sec.is_object()) throw SemanticError(key, "expected an object keyed by name");
  for (auto it = sec.begin(); it != sec.end(); ++it) f(it.key(), it.value(), std::string(key) + "." + it.key());
}

}  // namespace detail

/// Parses a document; throws ParseError for malformed JSON and SemanticError otherwise.
inline Document parse(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string what = e.what();
    // drop the "[json.exception...] parse error at line L, column C: " prefix
    auto col = what.find(", column ");
    auto colon = col == std::string::npos ? std::string::npos : what.find(": ", col);
    throw ParseError(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1),
                     colon == std::string::npos ? what : what.substr(colon + 2));
  }
  if (!root.is_object()) throw SemanticError("document", "top level must be an object");
  for (auto it = root.begin(); it != root.end(); ++it) {
    static const std::set<std::string> known{"rings", "modules", "morphisms", "diagrams", "hexagons", "extensions"};
    if (!known.count(it.key())) throw SemanticError(it.key(), "unknown section");
  }
  Document doc;
  try {
    detail::each_entry(root, "rings", [&](const std::string& n, const Json& j, const std::string& p) {
      doc.rings.emplace(n, detail::parse_ring(j, p));
    });
    detail::each_entry(root, "modules", [&](const std::string& n, const Json& j, const std::string& p) {
      doc.modules.emplace(n, detail::parse_module(doc, j, p));
    });
    detail::each_entry(root, "morphisms", [&](const std::string& n, const Json& j, const std::string& p) {
      doc.morphisms.emplace(n, detail::parse_morphism(doc, j, p));
    });
    detail::each_entry(root, "diagrams", [&](const std::string& n, const Json& j, const std::string& p) {
      doc.diagrams.emplace(n, detail::parse_diagram(doc, j, p));
    });
    detail::each_entry(root, "hexagons", [&](const std::string& n, const Json& j, const std::string& p) {
      doc.hexagons.emplace(n, detail::parse_hexagon(doc, j, p));
    });
    detail::each_entry(root, "extensions", [&](const std::string& n, const Json& j, const std::string& p) {
      doc.extensions.emplace(n, detail::parse_extension(doc, j, p));
    });
  } catch (const Error& e) {
    throw SemanticError("document", e.what());
  } catch (const nlohmann::json::exception& e) {
    throw SemanticError("document", e.what());
  }
  return doc;
}

// ---------------------------------------------------------------------------
// serialization

inline Json matrix_rows_json(const ExactMatrix& M) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < M.cols(); ++c) row.push_back(int_to_json(M(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const Document& doc) {
  Json root = Json::object();
  if (!doc.rings.empty()) {
    Json& rs = root["rings"] = Json::object();
    for (const auto& [n, R] : doc.rings)
      rs[n] = R.is_integers() ? Json{{"kind", "Z"}} : Json{{"kind", "Zmod"}, {"m", int_to_json(R.modulus())}};
  }
  if (!doc.modules.empty()) {
    Json& ms = root["modules"] = Json::object();
    for (const auto& [n, e] : doc.modules) {
      Json cols = Json::array();
      const ExactMatrix& rel = e.module.relations();
      for (std::size_t c = 0; c < rel.cols(); ++c) {
        Json col = Json::array();
        for (std::size_t r = 0; r < rel.rows(); ++r) col.push_back(int_to_json(rel(r, c)));
        cols.push_back(std::move(col));
      }
      ms[n] = Json{{"ring", e.ring}, {"generators", e.module.generators()}, {"relations", std::move(cols)}};
    }
  }
  if (!doc.morphisms.empty()) {
    Json& fs = root["morphisms"] = Json::object();
    for (const auto& [n, e] : doc.morphisms)
      fs[n] = Json{{"source", e.source}, {"target", e.target}, {"matrix", matrix_rows_json(e.morphism.matrix())}};
  }
  if (!doc.diagrams.empty()) {
    Json& ds = root["diagrams"] = Json::object();
    for (const auto& [n, e] : doc.diagrams) {
      Json d = Json::object();
      for (const char* o : kDiagramObjects) d[o] = e.objects.at(o);
      for (const char* s : kDiagramSequences)
        d[s] = Json{{"inject", e.sequences.at(s).first}, {"project", e.sequences.at(s).second}};
      ds[n] = std::move(d);
    }
  }
  if (!doc.hexagons.empty()) {
    Json& hs = root["hexagons"] = Json::object();
    for (const auto& [n, e] : doc.hexagons) {
      Json h = Json::object();
      for (const char* k : kFrameMaps) h[k] = e.maps.at(k);
      hs[n] = std::move(h);
    }
  }
  if (!doc.extensions.empty()) {
    Json& xs = root["extensions"] = Json::object();
    for (const auto& [n, e] : doc.extensions)
      xs[n] = Json{{"diagram", e.diagram}, {"X", e.X}, {"i", e.i}, {"j", e.j}, {"m", e.m}, {"n", e.n}};
  }
  return root;
}

inline std::string serialize(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

inline bool operator==(const Document& a, const Document& b) {
  auto same_keys = [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return false;
    for (auto ix = x.begin(), iy = y.begin(); ix != x.end(); ++ix, ++iy)
      if (ix->first != iy->first) return false;
    return true;
  };
  if (!same_keys(a.rings, b.rings) || !same_keys(a.modules, b.modules) || !same_keys(a.morphisms, b.morphisms) ||
      !same_keys(a.diagrams, b.diagrams) || !same_keys(a.hexagons, b.hexagons) || !same_keys(a.extensions, b.extensions))
    return false;
  for (const auto& [n, R] : a.rings)
    if (R != b.rings.at(n)) return false;
  for (const auto& [n, e] : a.modules) {
    const auto& o = b.modules.at(n);
    if (e.ring != o.ring || !e.module.same_presentation(o.module)) return false;
  }
  for (const auto& [n, e] : a.morphisms) {
    const auto& o = b.morphisms.at(n);
    if (e.source != o.source || e.target != o.target || !(e.morphism.matrix() == o.morphism.matrix())) return false;
  }
  for (const auto& [n, e] : a.diagrams) {
    const auto& o = b.diagrams.at(n);
    if (e.objects != o.objects || e.sequences != o.sequences) return false;
  }
  for (const auto& [n, e] : a.hexagons)
    if (e.maps != b.hexagons.at(n).maps) return false;
  for (const auto& [n, e] : a.extensions) {
    const auto& o = b.extensions.at(n);
    if (e.diagram != o.diagram || e.X != o.X || e.i != o.i || e.j != o.j || e.m != o.m || e.n != o.n) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// building documents from values

/// Adds values under generated names, reusing a ring entry per ring.
class DocumentBuilder {
 public:
  DocumentBuilder() = default;
  explicit DocumentBuilder(Document base) : doc_(std::move(base)) {}

  std::string ring(const RingSpec& R) {
    std::string n = R.name();
    doc_.rings.emplace(n, R);
    return n;
  }
  std::string module(const std::string& name, const PresentedModule& M) {
    doc_.modules[name] = ModuleEntry{ring(M.ring()), M};
    return name;
  }
  std::string morphism(const std::string& name, const std::string& source, const std::string& target,
                       const ModuleMorphism& f) {
    doc_.morphisms[name] = MorphismEntry{source, target, f};
    return name;
  }
  std::string diagram(const std::string& name, const Diagram3x3& D) {
    DiagramEntry e;
    const PresentedModule* objs[] = {&D.P(), &D.E(), &D.R(), &D.H(), &D.S(), &D.G(), &D.F(), &D.Q()};
    for (std::size_t k = 0; k < 8; ++k) e.objects[kDiagramObjects[k]] = module(name + "." + kDiagramObjects[k], *objs[k]);
    auto add = [&](const char* seq, const char* inj, const ModuleMorphism& f, const char* s, const char* t,
                   const char* proj, const ModuleMorphism& g, const char* u) {
      morphism(name + "." + inj, e.objects[s], e.objects[t], f);
      morphism(name + "." + proj, e.objects[t], e.objects[u], g);
      e.sequences[seq] = {name + "." + inj, name + "." + proj};
    };
    add("rowTop", "nu", D.nu, "P", "E", "e_to_r", D.e_to_r, "R");
    add("rowBottom", "s_to_g", D.s_to_g, "S", "G", "g_to_q", D.g_to_q, "Q");
    add("colLeft", "mu", D.mu, "P", "H", "h_to_s", D.h_to_s, "S");
    add("colRight", "r_to_f", D.r_to_f, "R", "F", "f_to_q", D.f_to_q, "Q");
    e.diagram = D;
    doc_.diagrams[name] = std::move(e);
    return name;
  }
  std::string hexagon(const std::string& name, const HexagonFrame& f) {
    HexagonEntry e;
    std::string A1 = module(name + ".A1", f.A1()), B1 = module(name + ".B1", f.B1()), B2 = module(name + ".B2", f.B2());
    std::string A2 = module(name + ".A2", f.A2()), A3 = module(name + ".A3", f.A3()), A4 = module(name + ".A4", f.A4());
    e.maps["alpha"] = morphism(name + ".alpha", A1, B1, f.alpha);
    e.maps["beta"] = morphism(name + ".beta", A1, A2, f.beta);
    e.maps["topB"] = morphism(name + ".topB", B1, B2, f.topB);
    e.maps["d"] = morphism(name + ".d", A2, A3, f.d);
    e.maps["r"] = morphism(name + ".r", B2, A4, f.r);
    e.maps["s"] = morphism(name + ".s", A3, A4, f.s);
    e.frame = f;
    doc_.hexagons[name] = std::move(e);
    return name;
  }
  std::string extension(const std::string& name, const std::string& diagram, const DiagramExtension& x) {
    const DiagramEntry& d = doc_.diagrams.at(diagram);
    ExtensionEntry e;
    e.diagram = diagram;
    e.X = module(name + ".X", x.X);
    e.i = morphism(name + ".i", d.objects.at("H"), e.X, x.i);
    e.j = morphism(name + ".j", d.objects.at("E"), e.X, x.j);
    e.m = morphism(name + ".m", e.X, d.objects.at("F"), x.m);
    e.n = morphism(name + ".n", e.X, d.objects.at("G"), x.n);
    e.extension = x;
    doc_.extensions[name] = std::move(e);
    return name;
  }

  const Document& document() const { return doc_; }

 private:
  Document doc_;
};

}  // namespace hexext::io
