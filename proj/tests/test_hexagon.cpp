#include "test_support.hpp"

#include "hexext/fuzz.hpp"
#include "hexext/hexagon.hpp"
#include "hexext/samples.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hexext;
using namespace hexext::testing;

namespace {

SolvedHexagon expect_solved(const HexagonResult& r) {
  REQUIRE(std::holds_alternative<SolvedHexagon>(r));
  return std::get<SolvedHexagon>(r);
}

bool frames_equal(const HexagonFrame& a, const HexagonFrame& b) {
  return a.alpha.equals(b.alpha) && a.beta.equals(b.beta) && a.topB.equals(b.topB) && a.d.equals(b.d) &&
         a.r.equals(b.r) && a.s.equals(b.s);
}

}  // namespace

TEST_CASE("folding frames", "[hexagon][fold]") {
  SECTION("zero frame") {
    const RingSpec R = RingSpec::integers_mod(4);
    auto z = PresentedModule::zero(R);
    auto zero = ModuleMorphism::zero(z, z);
    auto ff = fold_frame({zero, zero, zero, zero, zero, zero});
    CHECK(ff.diagram.P().is_zero());
    CHECK(ff.diagram.Q().is_zero());
    CHECK(validate_diagram1(ff.diagram).ok());
  }
  SECTION("split frame folds to the split diagram") {
    auto ff = fold_frame(samples::split_frame());
    const auto& D = ff.diagram;
    CHECK(validate_diagram1(D).ok());
    auto two = cyc(RingSpec::integers_mod(4), {2});
    for (const auto* m : {&D.P(), &D.R(), &D.S(), &D.Q()}) CHECK(m->isomorphic_to(two));
    CHECK(obstruction(D).is_zero);
  }
  SECTION("unfolding round-trips the frame maps") {
    for (const auto& f : {samples::split_frame(), samples::injective_frame(), samples::obstructed_frame()})
      CHECK(frames_equal(unfold_frame(fold_frame(f)), f));
  }
  SECTION("different kernels are rejected") {
    auto f = samples::split_frame();
    f.beta = ModuleMorphism::zero(f.A1(), f.A2());
    CHECK_FALSE(validate_frame(f).ok());
    CHECK_THROWS_AS(fold_frame(f), Error);
    try {
      fold_frame(f);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::FrameInvalid);
    }
  }
}

TEST_CASE("solving hexagons", "[hexagon][solve]") {
  SECTION("split frame") {
    auto h = expect_solved(solve_hexagon(samples::split_frame()));
    CHECK(verify_hexagon(h).ok());
    CHECK(compose(h.c, h.j).equals(h.frame.topB));
    CHECK(compose(h.curv, h.i).equals(h.frame.d));
  }
  SECTION("injective P-part") {
    auto f = samples::injective_frame();
    CHECK(is_injective_module(fold_frame(f).diagram.P()));
    auto h = expect_solved(solve_hexagon(f));
    CHECK(verify_hexagon(h).ok());
  }
  SECTION("obstructed frame") {
    auto r = solve_hexagon(samples::obstructed_frame());
    REQUIRE(std::holds_alternative<NotExtendable>(r));
    CHECK_FALSE(std::get<NotExtendable>(r).obstruction.is_zero);
  }
  SECTION("dropping curv breaks a diagonal") {
    auto h = expect_solved(solve_hexagon(samples::split_frame()));
    h.curv = ModuleMorphism::zero(h.center, h.frame.A3());
    auto rep = verify_hexagon(h);
    CHECK_FALSE(rep.ok());
    bool diagonal = false;
    for (const auto& v : rep.violations) diagonal = diagonal || v.where.rfind("diagonal B1-X-A3", 0) == 0;
    CHECK(diagonal);
  }
}

TEST_CASE("compatible isomorphisms of hexagons", "[hexagon][iso]") {
  auto f = samples::injective_frame();
  auto ff = fold_frame(f);
  auto h1 = expect_solved(solve_hexagon(f));
  fuzz::Rng rng(97);
  int checked = 0;
  for (int t = 0; t < 8; ++t) {
    auto b = hom_of_class(fuzz::random_class(ext_module(0, ff.diagram.S(), ff.diagram.P()), rng));
    auto c = hom_of_class(fuzz::random_class(ext_module(0, ff.diagram.R(), ff.diagram.P()), rng));
    auto x2 = perturb_legs(ff.diagram, extension_of_hexagon(h1), b, c);
    auto sc = fuzz::scramble(x2.X, rng);
    auto h2 = hexagon_of_extension(ff, transport(x2, sc.from_original, sc.to_original));
    REQUIRE(verify_hexagon(h2).ok());
    auto r = hexagon_compatible_iso(h1, h2);
    REQUIRE(std::holds_alternative<ModuleMorphism>(r));
    const auto& phi = std::get<ModuleMorphism>(r);
    CHECK(compose(phi, h1.i).equals(h2.i));
    CHECK(compose(phi, h1.j).equals(h2.j));
    CHECK(compose(h2.c, phi).equals(h1.c));
    CHECK(compose(h2.curv, phi).equals(h1.curv));
    CHECK(is_isomorphism(phi));
    ++checked;
  }
  CHECK(checked == 8);
}
