#pragma once

#include "hexext/matrix.hpp"

#include <initializer_list>
#include <set>
#include <vector>

namespace hexext::testing {

inline ExactMatrix M(const RingSpec& R, std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<Int>> v;
  for (auto& r : rows) {
    std::vector<Int> row;
    for (auto x : r) row.emplace_back(x);
    v.push_back(std::move(row));
  }
  return ExactMatrix::from_rows(R, v);
}

}  // namespace hexext::testing

#include "hexext/constructions.hpp"
#include "hexext/oracle/finite.hpp"

#include <random>

namespace hexext::testing {

inline PresentedModule cyc(const RingSpec& R, std::initializer_list<long long> orders) {
  std::vector<Int> v;
  for (auto o : orders) v.emplace_back(o);
  return PresentedModule::cyclic_sum(R, v);
}

inline ModuleMorphism hom(const PresentedModule& s, const PresentedModule& t,
                          std::initializer_list<std::initializer_list<long long>> rows) {
  if (rows.size() == 0) return ModuleMorphism::zero(s, t);
  return ModuleMorphism(s, t, M(s.ring(), rows));
}

inline Int order_of(const PresentedModule& m) { return m.order(); }

/// Elementwise cardinality via the oracle's concrete group (independent of the SNF path).
inline long long brute_order(const PresentedModule& m) {
  return oracle::ConcreteGroup::from_module(m, 1 << 20).order();
}

/// Same module presented with a random change of generators and a redundant generator.
inline PresentedModule scramble(const PresentedModule& m, std::mt19937_64& rng) {
  const RingSpec& R = m.ring();
  const std::size_t g = m.generators();
  // new generators: old ones plus an extra equal to a random combination
  std::vector<Int> combo(g);
  for (auto& c : combo) c = static_cast<long long>(rng() % 5) - 2;
  // presentation on g+1 generators: old relations, plus e_extra - Σ combo·e_i
  ExactMatrix rel(R, g + 1, m.relations().cols() + 1);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < m.relations().cols(); ++j) rel.set(i, j, m.relations()(i, j));
  for (std::size_t i = 0; i < g; ++i) rel.set(i, m.relations().cols(), -combo[i]);
  rel.set(g, m.relations().cols(), 1);
  // unimodular change of generators
  ExactMatrix T = ExactMatrix::identity(R, g + 1);
  for (int step = 0; step < 4 && g + 1 >= 2; ++step) {
    std::size_t i = rng() % (g + 1), j = rng() % (g + 1);
    if (i == j) continue;
    ExactMatrix E = ExactMatrix::identity(R, g + 1);
    E.set(i, j, static_cast<long long>(rng() % 3) - 1);
    T = E * T;
  }
  return PresentedModule(R, g + 1, T * rel);
}

}  // namespace hexext::testing
