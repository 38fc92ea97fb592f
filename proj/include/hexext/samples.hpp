#pragma once

// Small named diagrams and frames used by the tests, the acceptance run and the
// shipped fixtures.

#include "hexext/hexagon.hpp"

namespace hexext::samples {

namespace detail {

inline ModuleMorphism map(const PresentedModule& s, const PresentedModule& t,
                          std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<Int>> v;
  for (const auto& r : rows) v.emplace_back(r.begin(), r.end());
  return ModuleMorphism(s, t, ExactMatrix::from_rows(s.ring(), v));
}

inline PresentedModule cyc(const RingSpec& R, std::initializer_list<long long> orders) {
  return PresentedModule::cyclic_sum(R, std::vector<Int>(orders.begin(), orders.end()));
}

}  // namespace detail

/// Every sequence 0 → Z/2 → Z/2 ⊕ Z/2 → Z/2 → 0 split, over Z/4.
inline Diagram3x3 split_diagram() {
  const RingSpec R = RingSpec::integers_mod(4);
  auto two = detail::cyc(R, {2});
  auto s = split_sequence(two, two);
  return Diagram3x3::from_sequences(s, s, s, s);
}

/// Over Z/4 with P = R = S = Q = Z/2; the top row and right column are 0 → Z/2 → Z/4 → Z/2 → 0,
/// the others split. [E] ∪ [F] generates Ext²(Z/2, Z/2), so no middle object exists.
inline Diagram3x3 obstructed_diagram() {
  const RingSpec R = RingSpec::integers_mod(4);
  auto two = detail::cyc(R, {2}), four = detail::cyc(R, {4});
  auto ns = ShortExactSequence::make(detail::map(two, four, {{2}}), detail::map(four, two, {{1}}));
  auto sp = split_sequence(two, two);
  return Diagram3x3::from_sequences(ns, sp, sp, ns);
}

/// Over Z: rows 0 → Z → Z → Z/2 → 0 and 0 → Z/3 → Z/18 → Z/6 → 0,
/// columns 0 → Z → Z → Z/3 → 0 and 0 → Z/2 → Z/12 → Z/6 → 0.
inline Diagram3x3 integer_diagram() {
  const RingSpec R = RingSpec::integers();
  auto Z1 = PresentedModule::free(R, 1);
  auto z2 = detail::cyc(R, {2}), z3 = detail::cyc(R, {3}), z6 = detail::cyc(R, {6});
  auto z12 = detail::cyc(R, {12}), z18 = detail::cyc(R, {18});
  auto top = ShortExactSequence::make(detail::map(Z1, Z1, {{2}}), detail::map(Z1, z2, {{1}}));
  auto left = ShortExactSequence::make(detail::map(Z1, Z1, {{3}}), detail::map(Z1, z3, {{1}}));
  auto right = ShortExactSequence::make(detail::map(z2, z12, {{6}}), detail::map(z12, z6, {{1}}));
  auto bottom = ShortExactSequence::make(detail::map(z3, z18, {{6}}), detail::map(z18, z6, {{1}}));
  return Diagram3x3::from_sequences(top, bottom, left, right);
}

/// Frame over Z/4 folding to the split diagram; A1 = Z/4 and A4 = Z/4 so that
/// the quotient and the image are both proper.
inline HexagonFrame split_frame() {
  const RingSpec R = RingSpec::integers_mod(4);
  auto A1 = detail::cyc(R, {4}), A4 = detail::cyc(R, {4});
  auto V = detail::cyc(R, {2, 2});
  return {detail::map(A1, V, {{1}, {0}}),          detail::map(A1, V, {{1}, {0}}),
          detail::map(V, V, {{0, 1}, {0, 0}}),      detail::map(V, V, {{0, 1}, {0, 0}}),
          detail::map(V, A4, {{0, 2}}),             detail::map(V, A4, {{0, 2}})};
}

/// Frame over Z/4 whose P-part is Z/4, an injective module.
inline HexagonFrame injective_frame() {
  const RingSpec R = RingSpec::integers_mod(4);
  auto A1 = detail::cyc(R, {4}), A4 = detail::cyc(R, {2});
  auto B1 = detail::cyc(R, {4, 2}), A2 = detail::cyc(R, {4, 2});
  auto B2 = detail::cyc(R, {4}), A3 = detail::cyc(R, {4});
  return {detail::map(A1, B1, {{1}, {0}}), detail::map(A1, A2, {{1}, {0}}), detail::map(B1, B2, {{0, 2}}),
          detail::map(A2, A3, {{0, 2}}),   detail::map(B2, A4, {{1}}),       detail::map(A3, A4, {{1}})};
}

/// Frame over Z/4 folding to the obstructed diagram.
inline HexagonFrame obstructed_frame() {
  const RingSpec R = RingSpec::integers_mod(4);
  auto A1 = detail::cyc(R, {2}), A4 = detail::cyc(R, {2});
  auto V = detail::cyc(R, {2, 2}), four = detail::cyc(R, {4});
  return {detail::map(A1, V, {{1}, {0}}),     detail::map(A1, four, {{2}}), detail::map(V, V, {{0, 1}, {0, 0}}),
          detail::map(four, four, {{2}}),     detail::map(V, A4, {{0, 1}}), detail::map(four, A4, {{1}})};
}

}  // namespace hexext::samples
