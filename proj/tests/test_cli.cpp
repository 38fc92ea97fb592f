#include "test_support.hpp"

#include "hexext/cli/app.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace hexext;
using namespace hexext::testing;

namespace {

const std::string kSource = HEXEXT_SOURCE_DIR;

std::string fixture(const std::string& name) { return kSource + "/fixtures/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = cli::run(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}

io::Json report(const Outcome& o) { return io::Json::parse(o.out); }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hexext_test_" + name)).string();
}

}  // namespace

TEST_CASE("parsing documents", "[cli][parse]") {
  SECTION("minimal document") {
    auto doc = io::parse(R"({"rings": {"R": {"kind": "Zmod", "m": 4}},
                             "modules": {"two": {"ring": "R", "generators": 1, "relations": [[2]]}}})");
    REQUIRE(doc.modules.size() == 1);
    CHECK(doc.module("two").isomorphic_to(cyc(RingSpec::integers_mod(4), {2})));
  }
  SECTION("ring may be omitted when there is only one") {
    auto doc = io::parse(R"({"rings": {"Z": {"kind": "Z"}}, "modules": {"z": {"generators": 1}}})");
    CHECK(doc.module("z").structure().free_rank == 1);
  }
  SECTION("wrong matrix dimensions are a semantic error") {
    const char* text = R"({"rings": {"R": {"kind": "Zmod", "m": 4}},
      "modules": {"a": {"generators": 1, "relations": [[2]]}, "b": {"generators": 2}},
      "morphisms": {"f": {"source": "a", "target": "b", "matrix": [[1, 0]]}}})";
    CHECK_THROWS_AS(io::parse(text), io::SemanticError);
    try {
      io::parse(text);
    } catch (const io::SemanticError& e) {
      CHECK(e.path() == "morphisms.f.matrix");
    }
  }
  SECTION("ill-defined morphisms are rejected on load") {
    CHECK_THROWS_AS(io::parse(R"({"rings": {"R": {"kind": "Zmod", "m": 4}},
      "modules": {"two": {"generators": 1, "relations": [[2]]}, "four": {"generators": 1}},
      "morphisms": {"f": {"source": "two", "target": "four", "matrix": [[1]]}}})"),
                    io::SemanticError);
  }
  SECTION("syntax errors carry a line") {
    try {
      io::parse("{\n  \"rings\": {\n    \"R\": {\"kind\": \"Z\"},\n  }\n}");
      FAIL("expected a parse error");
    } catch (const io::ParseError& e) {
      CHECK(e.line() == 4);
      CHECK(e.reason().find("parse_error") == std::string::npos);
    }
  }
  SECTION("dangling references") {
    CHECK_THROWS_AS(io::parse(R"({"rings": {"R": {"kind": "Z"}}, "modules": {"a": {"ring": "S", "generators": 1}}})"),
                    io::SemanticError);
    CHECK_THROWS_AS(io::parse(R"({"widgets": {}})"), io::SemanticError);
  }
  SECTION("large integers travel as strings") {
    const RingSpec Z = RingSpec::integers();
    Int big = Int(1) << 70;
    io::DocumentBuilder b;
    b.module("big", PresentedModule::cyclic(Z, big));
    std::string text = io::serialize(b.document());
    CHECK(text.find("\"" + big.str() + "\"") != std::string::npos);
    auto back = io::parse(text);
    CHECK(back == b.document());
    CHECK(back.module("big").order() == big);
  }
  SECTION("the obstructed fixture holds one diagram") {
    auto doc = io::parse(slurp(fixture("obstructed.json")));
    CHECK(doc.diagrams.size() == 1);
    CHECK(doc.diagrams.count("A") == 1);
  }
}

TEST_CASE("round trips", "[cli][roundtrip]") {
  SECTION("fixtures match the built-in samples byte for byte") {
    for (const char* name : {"obstructed", "split", "integer", "hexagons"}) {
      INFO(name);
      CHECK(io::serialize(cli::sample_document(name)) == slurp(fixture(std::string(name) + ".json")));
    }
  }
  SECTION("fixtures") {
    for (const auto& entry : std::filesystem::directory_iterator(kSource + "/fixtures")) {
      INFO(entry.path());
      std::string text = slurp(entry.path().string());
      auto doc = io::parse(text);
      CHECK(io::parse(io::serialize(doc)) == doc);
      CHECK(io::serialize(doc) == text);
    }
  }
  SECTION("fuzz-generated documents") {
    fuzz::Rng rng(41);
    for (const auto& R : {RingSpec::integers_mod(4), RingSpec::integers_mod(9), RingSpec::integers()}) {
      for (int t = 0; t < 6; ++t) {
        io::DocumentBuilder b;
        auto D = R.is_integers() ? fuzz::random_integer_diagram(rng, 16) : fuzz::random_diagram(R, rng, 16);
        b.diagram("D", D);
        auto r = extend_diagram(D);
        if (auto* x = std::get_if<DiagramExtension>(&r)) b.extension("x", "D", *x);
        auto once = io::serialize(b.document());
        auto doc = io::parse(once);
        CHECK(doc == b.document());
        CHECK(io::serialize(doc) == once);
        CHECK(validate_diagram1(doc.diagrams.at("D").diagram).ok());
      }
    }
  }
}

TEST_CASE("subcommands and exit codes", "[cli][run]") {
  SECTION("obstruction on the obstructed fixture") {
    auto o = run({"obstruction", fixture("obstructed.json")});
    CHECK(o.code == 1);
    auto j = report(o);
    CHECK_FALSE(j["zero"].get<bool>());
    CHECK(j["obstruction"]["coords"] == io::Json::array({1}));
    CHECK(j["obstruction"]["invariant_factors"] == io::Json::array({2}));
  }
  SECTION("extend") {
    auto ok = run({"extend", fixture("split.json")});
    CHECK(ok.code == 0);
    CHECK(report(ok)["extendable"].get<bool>());
    auto no = run({"extend", fixture("obstructed.json"), "A"});
    CHECK(no.code == 1);
    CHECK(report(no)["delta_tau"] == report(no)["obstruction"]);
    CHECK(run({"extend", fixture("integer.json")}).code == 0);
  }
  SECTION("unique") {
    CHECK(run({"unique", fixture("split.json")}).code == 1);
  }
  SECTION("ext") {
    auto o = run({"ext", fixture("obstructed.json"), "-i", "2", "A.Q", "A.P"});
    REQUIRE(o.code == 0);
    CHECK(report(o)["module"]["order"] == 2);
    CHECK(run({"ext", fixture("obstructed.json"), "-i", "3", "A.Q", "A.P"}).code == 2);
  }
  SECTION("hexagon solve") {
    for (const char* f : {"split", "injective"}) {
      auto o = run({"hexagon", "solve", fixture("hexagons.json"), f});
      CHECK(o.code == 0);
      CHECK(report(o)["verified"].get<bool>());
    }
    CHECK(run({"hexagon", "solve", fixture("hexagons.json"), "obstructed"}).code == 1);
    CHECK(run({"hexagon", "solve", fixture("hexagons.json")}).code == 2);  // ambiguous
  }
  SECTION("validate") {
    CHECK(run({"validate", fixture("obstructed.json"), "A"}).code == 0);
    CHECK(run({"validate", fixture("hexagons.json"), "obstructed"}).code == 0);
    CHECK(run({"validate", fixture("split.json"), "split.P"}).code == 0);
    CHECK(run({"validate", fixture("split.json"), "nothing"}).code == 2);
    // swap a map to break exactness
    auto doc = io::parse(slurp(fixture("split.json")));
    doc.diagrams.at("split").objects.at("H") = "split.P";
    std::string text = io::serialize(doc);
    CHECK(run({"validate", "-", "split"}, text).code == 2);  // ends no longer match
    auto doc2 = io::parse(slurp(fixture("split.json")));
    io::Json j = io::to_json(doc2);
    j["morphisms"]["split.mu"]["matrix"] = io::Json::array({io::Json::array({0}), io::Json::array({0})});
    auto bad = run({"validate", "-", "split"}, j.dump());
    CHECK(bad.code == 1);
    CHECK_FALSE(report(bad)["violations"].empty());
  }
  SECTION("iso between a saved extension and a rescrambled copy") {
    const std::string saved = temp_path("saved.json");
    REQUIRE(run({"extend", fixture("integer.json"), "--save", saved, "--name", "x1"}).code == 0);
    auto doc = io::parse(slurp(saved));
    const auto& D = doc.diagrams.at("integer").diagram;
    const auto& x1 = doc.extensions.at("x1").extension;
    fuzz::Rng rng(3);
    auto sc = fuzz::scramble(x1.X, rng);
    io::DocumentBuilder b(doc);
    b.extension("x2", "integer", transport(x1, sc.from_original, sc.to_original));
    std::string text = io::serialize(b.document());
    auto o = run({"iso", "-", "integer", "x1", "x2"}, text);
    CHECK(o.code == 0);
    CHECK(report(o)["isomorphic"].get<bool>());
    std::filesystem::remove(saved);
  }
  SECTION("oracle-compare and the budget variable") {
    CHECK(run({"oracle-compare", fixture("split.json"), "split.Q", "split.P"}).code == 0);
    ::setenv("HEXEXT_BUDGET", "1", 1);
    CHECK(run({"oracle-compare", fixture("split.json"), "split.Q", "split.P"}).code == 2);
    ::setenv("HEXEXT_BUDGET", "order=16,seconds=zero", 1);
    CHECK(run({"oracle-compare", fixture("split.json"), "split.Q", "split.P"}).code == 2);
    ::unsetenv("HEXEXT_BUDGET");
  }
  SECTION("input errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"extend", temp_path("missing.json")}).code == 2);
    CHECK(run({"extend", "-"}, "{ not json").code == 2);
    CHECK(run({"obstruction", "-"}, "{}").code == 2);  // no diagram
    CHECK(run({"fuzz", "--ring", "Q"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }
}

TEST_CASE("fuzz determinism", "[cli][fuzz]") {
  auto a = run({"fuzz", "--ring", "Zmod4", "--seed", "7", "--count", "100"});
  auto b = run({"fuzz", "--ring", "Zmod4", "--seed", "7", "--count", "100"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = report(a);
  CHECK(j["cases"].size() == 100);
  CHECK(j["failures"] == 0);
  auto c = run({"fuzz", "--ring", "Zmod4", "--seed", "8", "--count", "100"});
  CHECK(c.out != a.out);
  auto z = run({"fuzz", "--ring", "Z", "--seed", "1", "--count", "20"});
  CHECK(z.code == 0);
}

TEST_CASE("the installed binary", "[cli][process]") {
  const std::string bin = HEXEXT_CLI;
  auto status = [](const std::string& cmd) {
    int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status(bin + " obstruction - < " + fixture("obstructed.json") + " > /dev/null") == 1);
  CHECK(status(bin + " extend " + fixture("split.json") + " > /dev/null") == 0);
  CHECK(status(bin + " extend /nonexistent.json 2> /dev/null") == 2);
  const std::string f1 = temp_path("f1.json"), f2 = temp_path("f2.json");
  REQUIRE(status(bin + " fuzz --ring Zmod9 --seed 7 --count 30 > " + f1) == 0);
  REQUIRE(status(bin + " fuzz --ring Zmod9 --seed 7 --count 30 > " + f2) == 0);
  CHECK(slurp(f1) == slurp(f2));
  std::filesystem::remove(f1);
  std::filesystem::remove(f2);
}
