#pragma once

// Command-line front end. Every subcommand prints one JSON report on stdout.
// Exit status: 0 success or property holds, 1 property fails or not extendable,
// 2 input error.

#include "hexext/fuzz.hpp"
#include "hexext/io/document.hpp"
#include "hexext/oracle/brute.hpp"
#include "hexext/samples.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hexext::cli {

using io::Json;

enum Exit : int { kOk = 0, kFails = 1, kInputError = 2 };

/// Thrown for bad command-line input that CLI11 cannot detect.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// report pieces

inline Json ints_json(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(io::int_to_json(x));
  return a;
}

inline Json module_json(const PresentedModule& M) {
  const auto& st = M.structure();
  Json j{{"invariant_factors", ints_json(st.invariant_factors)}, {"free_rank", st.free_rank}};
  if (st.is_finite()) j["order"] = io::int_to_json(st.order());
  return j;
}

inline Json presentation_json(const PresentedModule& M) {
  Json cols = Json::array();
  for (std::size_t c = 0; c < M.relations().cols(); ++c) {
    Json col = Json::array();
    for (std::size_t r = 0; r < M.generators(); ++r) col.push_back(io::int_to_json(M.relations()(r, c)));
    cols.push_back(std::move(col));
  }
  return Json{{"generators", M.generators()}, {"relations", std::move(cols)}};
}

inline Json class_json(const ExtClass& c) {
  std::vector<Int> orders;
  for (std::size_t k = 0; k < c.parent().generator_count(); ++k) orders.push_back(c.parent().generator_order(k));
  const auto& st = c.parent().presentation().structure();
  return Json{{"coords", ints_json(c.coords())},
              {"generator_orders", ints_json(orders)},
              {"invariant_factors", ints_json(st.invariant_factors)},
              {"free_rank", st.free_rank},
              {"zero", c.is_zero()}};
}

inline Json violations_json(const ValidationReport& rep) {
  Json a = Json::array();
  for (const auto& v : rep.violations) a.push_back(Json{{"where", v.where}, {"what", v.what}});
  return a;
}

inline Json extension_json(const DiagramExtension& x) {
  return Json{{"X", module_json(x.X)},
              {"presentation", presentation_json(x.X)},
              {"i", io::matrix_rows_json(x.i.matrix())},
              {"j", io::matrix_rows_json(x.j.matrix())},
              {"m", io::matrix_rows_json(x.m.matrix())},
              {"n", io::matrix_rows_json(x.n.matrix())}};
}

// ---------------------------------------------------------------------------
// inputs

inline std::string read_source(const std::string& path, std::istream& in) {
  std::stringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

template <class Map>
const typename Map::mapped_type& pick(const Map& m, const std::string& name, const char* what) {
  if (name.empty()) {
    if (m.size() == 1) return m.begin()->second;
    throw UsageError(std::string("document has ") + std::to_string(m.size()) + " " + what + "s; name one");
  }
  auto it = m.find(name);
  if (it == m.end()) throw UsageError(std::string("no ") + what + " named \"" + name + "\"");
  return it->second;
}

template <class Map>
std::string pick_name(const Map& m, const std::string& name) {
  return name.empty() && m.size() == 1 ? m.begin()->first : name;
}

/// Reads HEXEXT_BUDGET: either a bare order bound or comma-separated
/// order=N, candidates=N, seconds=X.
inline oracle::EnumerationBudget budget_from_env() {
  oracle::EnumerationBudget b;
  const char* env = std::getenv("HEXEXT_BUDGET");
  if (!env || !*env) return b;
  std::string s = env;
  try {
    if (s.find('=') == std::string::npos) {
      b.max_order = std::stoll(s);
    } else {
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("bad HEXEXT_BUDGET item \"" + item + "\"");
        std::string k = item.substr(0, eq), v = item.substr(eq + 1);
        if (k == "order") b.max_order = std::stoll(v);
        else if (k == "candidates") b.max_candidates = std::stoll(v);
        else if (k == "seconds") b.deadline_seconds = std::stod(v);
        else throw UsageError("unknown HEXEXT_BUDGET key \"" + k + "\"");
      }
    }
  } catch (const std::logic_error&) {
    throw UsageError("HEXEXT_BUDGET is not a valid budget: " + s);
  }
  b.validate();
  return b;
}

inline RingSpec ring_from_flag(const std::string& s) {
  if (s == "Z") return RingSpec::integers();
  if (s.rfind("Zmod", 0) == 0 && s.size() > 4 && s.find_first_not_of("0123456789", 4) == std::string::npos) {
    Int m(s.substr(4));
    if (m >= 2) return RingSpec::integers_mod(m);
  }
  throw UsageError("ring must be Z or ZmodN with N ≥ 2, got \"" + s + "\"");
}

// ---------------------------------------------------------------------------
// fuzz

struct FuzzOptions {
  std::string ring = "Zmod4";
  std::uint64_t seed = 0;
  std::uint64_t count = 100;
  std::uint64_t max_order = 16;
};

/// One seeded random diagram checked against the extension laws.
inline Json fuzz_case(const RingSpec& R, const FuzzOptions& o, std::uint64_t k) {
  fuzz::Rng rng(o.seed + 0x9E3779B97F4A7C15ULL * (k + 1));
  Diagram3x3 D = R.is_integers() ? fuzz::random_integer_diagram(rng, o.max_order)
                                 : fuzz::random_diagram(R, rng, o.max_order);
  Json c{{"case", k},
         {"P", D.P().to_string()},
         {"R", D.R().to_string()},
         {"S", D.S().to_string()},
         {"Q", D.Q().to_string()}};
  bool ok = true;
  auto ob = obstruction(D);
  c["obstruction"] = ints_json(ob.baer_sum.coords());
  c["obstruction_zero"] = ob.is_zero;
  auto r = extend_diagram(D);
  const bool extended = std::holds_alternative<DiagramExtension>(r);
  c["extendable"] = extended;
  ok = ok && extended == ob.is_zero;
  if (R.is_integers()) ok = ok && extended;
  if (extended) {
    const auto& x = std::get<DiagramExtension>(r);
    bool valid = validate_extension(D, x).ok();
    c["valid"] = valid;
    ok = ok && valid;
    c["X"] = x.X.to_string();
    auto u = check_uniqueness(D);
    c["unique"] = u.unique;
    // a scrambled copy of the middle must be compatibly isomorphic to the original
    auto sc = fuzz::scramble(x.X, rng);
    auto iso = compatible_isomorphism(D, x, transport(x, sc.from_original, sc.to_original));
    bool iso_ok = std::holds_alternative<ModuleMorphism>(iso);
    c["self_iso"] = iso_ok;
    ok = ok && iso_ok;
  }
  c["ok"] = ok;
  return c;
}

inline Json run_fuzz(const FuzzOptions& o) {
  const RingSpec R = ring_from_flag(o.ring);
  if (o.max_order < 1) throw UsageError("--max-order must be positive");
  Json cases = Json::array();
  std::uint64_t failures = 0;
  for (std::uint64_t k = 0; k < o.count; ++k) {
    Json c = fuzz_case(R, o, k);
    if (!c["ok"].get<bool>()) ++failures;
    cases.push_back(std::move(c));
  }
  return Json{{"ring", R.name()},     {"seed", o.seed},         {"count", o.count},
              {"max_order", o.max_order}, {"failures", failures}, {"cases", std::move(cases)}};
}

// ---------------------------------------------------------------------------
// samples

inline io::Document sample_document(const std::string& name) {
  io::DocumentBuilder b;
  if (name == "obstructed") b.diagram("A", samples::obstructed_diagram());
  else if (name == "split") b.diagram("split", samples::split_diagram());
  else if (name == "integer") b.diagram("integer", samples::integer_diagram());
  else if (name == "hexagons") {
    b.hexagon("split", samples::split_frame());
    b.hexagon("injective", samples::injective_frame());
    b.hexagon("obstructed", samples::obstructed_frame());
  } else {
    throw UsageError("unknown sample \"" + name + "\" (obstructed, split, integer, hexagons)");
  }
  return b.document();
}

// ---------------------------------------------------------------------------
// entry point

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extensions of 3×3 diagrams and hexagons of finitely generated modules"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string doc_path, a, b, c;
  int degree = 1;
  std::string save_path, save_name;
  FuzzOptions fo;

  auto add_doc = [&](CLI::App* s) { s->add_option("document", doc_path, "document path, - for stdin")->required(); };

  auto* ext = app.add_subcommand("ext", "Ext^i(Q, P) of two named modules");
  add_doc(ext);
  ext->add_option("-i,--degree", degree, "degree 0, 1 or 2")->check(CLI::Range(0, 2));
  ext->add_option("Q", a)->required();
  ext->add_option("P", b)->required();

  auto* obs = app.add_subcommand("obstruction", "obstruction class [E]∪[F] + [H]∪[G] of a diagram");
  add_doc(obs);
  obs->add_option("diagram", a);

  auto* ext_cmd = app.add_subcommand("extend", "complete a diagram with a middle object");
  add_doc(ext_cmd);
  ext_cmd->add_option("diagram", a);
  ext_cmd->add_option("--save", save_path, "write the document with the extension added");
  ext_cmd->add_option("--name", save_name, "name of the saved extension");

  auto* uniq = app.add_subcommand("unique", "whether α: Hom(R⊕S, P) → Ext^1(Q, P) is onto, fixing the class of the middle object");
  add_doc(uniq);
  uniq->add_option("diagram", a);

  auto* iso = app.add_subcommand("iso", "compatible isomorphism between two extensions of a diagram");
  add_doc(iso);
  iso->add_option("diagram", a)->required();
  iso->add_option("ext1", b)->required();
  iso->add_option("ext2", c)->required();

  auto* hex = app.add_subcommand("hexagon", "hexagon frames");
  hex->require_subcommand(1);
  auto* hsolve = hex->add_subcommand("solve", "find the center of a hexagon frame");
  add_doc(hsolve);
  hsolve->add_option("frame", a);

  auto* val = app.add_subcommand("validate", "check a named diagram, frame, extension, module or morphism");
  add_doc(val);
  val->add_option("name", a)->required();

  auto* oc = app.add_subcommand("oracle-compare", "brute-force Ext^1 count against the computed module");
  add_doc(oc);
  oc->add_option("Q", a)->required();
  oc->add_option("P", b)->required();

  auto* fz = app.add_subcommand("fuzz", "seeded random diagrams checked against the extension laws");
  fz->add_option("--ring", fo.ring, "Z or ZmodN")->capture_default_str();
  fz->add_option("--seed", fo.seed)->capture_default_str();
  fz->add_option("--count", fo.count)->capture_default_str();
  fz->add_option("--max-order", fo.max_order, "bound on pairwise products of corner orders")->capture_default_str();

  auto* rt = app.add_subcommand("roundtrip", "parse and re-serialize a document");
  add_doc(rt);

  auto* smp = app.add_subcommand("sample", "print a built-in sample document");
  smp->add_option("name", a, "obstructed, split, integer or hexagons")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  auto emit = [&](const Json& j) { out << j.dump(2) << "\n"; };
  auto load = [&] { return io::parse(read_source(doc_path, in)); };

  try {
    if (*ext) {
      auto doc = load();
      const auto& Q = doc.module(a);
      const auto& P = doc.module(b);
      ExtModule e = ext_module(degree, Q, P);
      std::vector<Int> orders;
      for (std::size_t k = 0; k < e.generator_count(); ++k) orders.push_back(e.generator_order(k));
      emit(Json{{"degree", degree}, {"Q", a}, {"P", b}, {"module", module_json(e.presentation())},
                {"generator_orders", ints_json(orders)}});
      return kOk;
    }
    if (*obs) {
      auto doc = load();
      const auto& D = pick(doc.diagrams, a, "diagram").diagram;
      require_valid(D);
      auto ob = obstruction(D);
      emit(Json{{"diagram", pick_name(doc.diagrams, a)},
                {"yoneda_ef", class_json(ob.yoneda_ef)},
                {"yoneda_hg", class_json(ob.yoneda_hg)},
                {"obstruction", class_json(ob.baer_sum)},
                {"zero", ob.is_zero}});
      return ob.is_zero ? kOk : kFails;
    }
    if (*ext_cmd) {
      auto doc = load();
      const std::string name = pick_name(doc.diagrams, a);
      const auto& D = pick(doc.diagrams, a, "diagram").diagram;
      auto r = extend_diagram(D);
      if (auto* ne = std::get_if<NotExtendable>(&r)) {
        emit(Json{{"diagram", name},
                  {"extendable", false},
                  {"obstruction", class_json(ne->obstruction.baer_sum)},
                  {"delta_tau", class_json(ne->delta_tau)}});
        return kFails;
      }
      const auto& x = std::get<DiagramExtension>(r);
      if (!save_path.empty()) {
        io::DocumentBuilder builder(doc);
        builder.extension(save_name.empty() ? name + ".x" : save_name, name, x);
        std::ofstream f(save_path, std::ios::binary);
        if (!f) throw UsageError("cannot write " + save_path);
        f << io::serialize(builder.document());
      }
      emit(Json{{"diagram", name}, {"extendable", true}, {"extension", extension_json(x)}});
      return kOk;
    }
    if (*uniq) {
      auto doc = load();
      const auto& D = pick(doc.diagrams, a, "diagram").diagram;
      require_valid(D);
      auto u = check_uniqueness(D);
      emit(Json{{"diagram", pick_name(doc.diagrams, a)},
                {"unique", u.unique},
                {"alpha_cokernel", module_json(u.cokernel.module)}});
      return u.unique ? kOk : kFails;
    }
    if (*iso) {
      auto doc = load();
      const auto& D = pick(doc.diagrams, a, "diagram").diagram;
      const auto& x1 = pick(doc.extensions, b, "extension");
      const auto& x2 = pick(doc.extensions, c, "extension");
      if (x1.diagram != a || x2.diagram != a) throw UsageError("extensions must belong to diagram \"" + a + "\"");
      require_valid(D);
      for (const auto* x : {&x1, &x2}) {
        auto rep = validate_extension(D, x->extension);
        if (!rep.ok()) throw UsageError("extension is invalid: " + rep.to_string());
      }
      auto r = compatible_isomorphism(D, x1.extension, x2.extension);
      if (auto* phi = std::get_if<ModuleMorphism>(&r)) {
        emit(Json{{"diagram", a}, {"isomorphic", true}, {"phi", io::matrix_rows_json(phi->matrix())}});
        return kOk;
      }
      emit(Json{{"diagram", a}, {"isomorphic", false}, {"reason", to_string(std::get<IsoFailure>(r))}});
      return kFails;
    }
    if (*hsolve) {
      auto doc = load();
      const std::string name = pick_name(doc.hexagons, a);
      const auto& f = pick(doc.hexagons, a, "hexagon").frame;
      auto r = solve_hexagon(f);
      if (auto* ne = std::get_if<NotExtendable>(&r)) {
        emit(Json{{"frame", name}, {"solved", false}, {"obstruction", class_json(ne->obstruction.baer_sum)}});
        return kFails;
      }
      const auto& h = std::get<SolvedHexagon>(r);
      auto rep = verify_hexagon(h);
      emit(Json{{"frame", name},
                {"solved", true},
                {"center", module_json(h.center)},
                {"presentation", presentation_json(h.center)},
                {"i", io::matrix_rows_json(h.i.matrix())},
                {"j", io::matrix_rows_json(h.j.matrix())},
                {"c", io::matrix_rows_json(h.c.matrix())},
                {"curv", io::matrix_rows_json(h.curv.matrix())},
                {"verified", rep.ok()},
                {"violations", violations_json(rep)}});
      return rep.ok() ? kOk : kFails;
    }
    if (*val) {
      auto doc = load();
      std::string kind;
      ValidationReport rep;
      if (auto it = doc.diagrams.find(a); it != doc.diagrams.end()) {
        kind = "diagram";
        rep = validate_diagram1(it->second.diagram);
      } else if (auto ih = doc.hexagons.find(a); ih != doc.hexagons.end()) {
        kind = "hexagon";
        rep = validate_frame(ih->second.frame);
      } else if (auto ix = doc.extensions.find(a); ix != doc.extensions.end()) {
        kind = "extension";
        rep = validate_extension(doc.diagrams.at(ix->second.diagram).diagram, ix->second.extension);
      } else if (doc.morphisms.count(a)) {
        kind = "morphism";  // certified while loading
      } else if (doc.modules.count(a)) {
        kind = "module";
      } else {
        throw UsageError("nothing named \"" + a + "\"");
      }
      emit(Json{{"name", a}, {"kind", kind}, {"ok", rep.ok()}, {"violations", violations_json(rep)}});
      return rep.ok() ? kOk : kFails;
    }
    if (*oc) {
      auto doc = load();
      const auto& Q = doc.module(a);
      const auto& P = doc.module(b);
      auto budget = budget_from_env();
      auto census = oracle::brute_ext1(Q, P, budget);
      Int computed = ext_module(1, Q, P).presentation().order();
      const bool agree = Int(census.count) == computed;
      emit(Json{{"Q", a},
                {"P", b},
                {"brute_count", census.count},
                {"method", census.method == oracle::Ext1Census::Method::Middles ? "middles" : "factor_sets"},
                {"ext_order", io::int_to_json(computed)},
                {"agree", agree}});
      return agree ? kOk : kFails;
    }
    if (*fz) {
      Json rep = run_fuzz(fo);
      emit(rep);
      return rep["failures"].get<std::uint64_t>() == 0 ? kOk : kFails;
    }
    if (*rt) {
      out << io::serialize(load());
      return kOk;
    }
    if (*smp) {
      out << io::serialize(sample_document(a));
      return kOk;
    }
  } catch (const io::ParseError& e) {
    err << "parse error at line " << e.line() << ": " << e.reason() << "\n";
    return kInputError;
  } catch (const io::SemanticError& e) {
    err << "invalid document: " << e.what() << "\n";
    return kInputError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::Internal ? kFails : kInputError;
  }
  return kInputError;
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), std::cin, std::cout, std::cerr);
}

}  // namespace hexext::cli
