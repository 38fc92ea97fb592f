#pragma once

// Seeded generators for modules, sequences and diagrams. Only raw draws of
// std::mt19937_64 are used (no std distributions), so streams are identical
// on every platform.

#include "hexext/diagram.hpp"

#include <random>
#include <vector>

namespace hexext::fuzz {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

/// Cyclic orders d1 | d2 | ... of every module with order ≤ max_order over a finite ring Z/m,
/// or every finite abelian group of that order bound over Z. Includes the zero module.
inline std::vector<std::vector<Int>> module_types(const RingSpec& R, std::uint64_t max_order) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  // build chains d1 | d2 | ... with every d > 1 dividing the exponent bound
  std::vector<std::uint64_t> divisors;
  std::uint64_t bound = R.is_integers() ? max_order : static_cast<std::uint64_t>(R.modulus());
  for (std::uint64_t d = 2; d <= std::min<std::uint64_t>(bound, max_order); ++d)
    if (R.is_integers() || bound % d == 0) divisors.push_back(d);
  auto rec = [&](auto&& self, std::uint64_t prod, std::uint64_t last) -> void {
    out.push_back(cur);
    for (auto d : divisors) {
      if (d % last != 0 || prod * d > max_order) continue;
      cur.emplace_back(d);
      self(self, prod * d, d);
      cur.pop_back();
    }
  };
  rec(rec, 1, 1);
  return out;
}

inline std::vector<PresentedModule> modules_up_to(const RingSpec& R, std::uint64_t max_order) {
  std::vector<PresentedModule> out;
  for (const auto& t : module_types(R, max_order)) out.push_back(PresentedModule::cyclic_sum(R, t));
  return out;
}

/// A module together with mutually inverse isomorphisms to an original one.
struct Scrambled {
  PresentedModule module;
  ModuleMorphism from_original;
  ModuleMorphism to_original;
};

/// Re-presents M with one redundant generator and a random change of basis.
inline Scrambled scramble(const PresentedModule& M, Rng& rng) {
  const RingSpec& R = M.ring();
  const std::size_t g = M.generators(), r = M.relations().cols();
  std::vector<Int> combo(g);
  for (auto& c : combo) c = static_cast<long long>(below(rng, 5)) - 2;
  ExactMatrix rel(R, g + 1, r + 1);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < r; ++j) rel.set(i, j, M.relations()(i, j));
    rel.set(i, r, -combo[i]);
  }
  rel.set(g, r, 1);
  ExactMatrix T = ExactMatrix::identity(R, g + 1), Tinv = ExactMatrix::identity(R, g + 1);
  for (int step = 0; step < 5 && g >= 1; ++step) {
    std::size_t i = below(rng, g + 1), j = below(rng, g + 1);
    if (i == j) continue;
    Int q = static_cast<long long>(below(rng, 3)) - 1;
    ExactMatrix E = ExactMatrix::identity(R, g + 1), Einv = ExactMatrix::identity(R, g + 1);
    E.set(i, j, q);
    Einv.set(i, j, -q);
    T = E * T;
    Tinv = Tinv * Einv;
  }
  PresentedModule N(R, g + 1, T * rel);
  ExactMatrix embed = vstack(ExactMatrix::identity(R, g), ExactMatrix(R, 1, g));
  ExactMatrix collapse = hstack(ExactMatrix::identity(R, g), ExactMatrix::column(R, combo));
  return {N, ModuleMorphism(M, N, T * embed), ModuleMorphism(N, M, collapse * Tinv)};
}

/// Random module of order ≤ max_order (finite), scrambled when requested.
inline PresentedModule random_module(const RingSpec& R, Rng& rng, std::uint64_t max_order, bool scrambled = true) {
  auto types = module_types(R, max_order);
  auto M = PresentedModule::cyclic_sum(R, types[below(rng, types.size())]);
  return scrambled ? scramble(M, rng).module : M;
}

/// Uniformly random element of a finite Ext module.
inline ExtClass random_class(const ExtModule& e, Rng& rng) {
  std::vector<Int> c(e.generator_count());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Int d = e.generator_order(k);
    std::uint64_t bound = d == 0 ? 7 : static_cast<std::uint64_t>(d);
    c[k] = static_cast<long long>(below(rng, bound));
  }
  return ExtClass(e, c);
}

/// Rebuilds a short exact sequence with its middle module scrambled.
inline ShortExactSequence scramble_middle(const ShortExactSequence& s, Rng& rng) {
  Scrambled x = scramble(s.middle(), rng);
  return ShortExactSequence::unchecked(compose(x.from_original, s.inject()), compose(s.project(), x.to_original));
}

/// Random short exact sequence 0 → P → X → Q → 0 realising a random class.
inline ShortExactSequence random_ses(const PresentedModule& Q, const PresentedModule& P, Rng& rng) {
  ExtModule e = ext_module(1, Q, P);
  return scramble_middle(ses_of_class(random_class(e, rng)), rng);
}

/// Diagram whose four sequences realise the given classes, middles optionally scrambled.
inline Diagram3x3 diagram_of_classes(const ExtClass& e, const ExtClass& f, const ExtClass& h, const ExtClass& g,
                                     Rng* rng = nullptr) {
  auto real = [&](const ExtClass& c) {
    auto s = ses_of_class(c);
    return rng ? scramble_middle(s, *rng) : s;
  };
  return Diagram3x3::from_sequences(real(e), real(g), real(h), real(f));
}

struct Corners {
  PresentedModule P, R, S, Q;
};

/// Corner modules with |P||R|, |P||S|, |R||Q|, |S||Q| all at most max_order.
inline Corners random_corners(const RingSpec& ring, Rng& rng, std::uint64_t max_order) {
  auto types = module_types(ring, max_order);
  auto order = [](const std::vector<Int>& t) {
    Int o = 1;
    for (const auto& d : t) o *= d;
    return o;
  };
  const Int bound = static_cast<long long>(max_order);
  for (;;) {
    const auto& p = types[below(rng, types.size())];
    const auto& r = types[below(rng, types.size())];
    const auto& s = types[below(rng, types.size())];
    const auto& q = types[below(rng, types.size())];
    if (order(p) * order(r) > bound || order(p) * order(s) > bound || order(r) * order(q) > bound ||
        order(s) * order(q) > bound)
      continue;
    return {PresentedModule::cyclic_sum(ring, p), PresentedModule::cyclic_sum(ring, r),
            PresentedModule::cyclic_sum(ring, s), PresentedModule::cyclic_sum(ring, q)};
  }
}

/// Random valid diagram: random corners, random classes, scrambled middles.
inline Diagram3x3 random_diagram(const RingSpec& ring, Rng& rng, std::uint64_t max_order) {
  Corners c = random_corners(ring, rng, max_order);
  auto e = random_class(ext_module(1, c.R, c.P), rng);
  auto f = random_class(ext_module(1, c.Q, c.R), rng);
  auto h = random_class(ext_module(1, c.S, c.P), rng);
  auto g = random_class(ext_module(1, c.Q, c.S), rng);
  return diagram_of_classes(e, f, h, g, &rng);
}

/// Random diagram over Z with finitely generated corners (free summands allowed).
inline Diagram3x3 random_integer_diagram(Rng& rng, std::uint64_t max_order) {
  const RingSpec ZZ = RingSpec::integers();
  auto corner = [&]() {
    auto types = module_types(ZZ, max_order);
    auto t = types[below(rng, types.size())];
    if (below(rng, 3) == 0) t.insert(t.begin(), Int(0));
    return PresentedModule::cyclic_sum(ZZ, t);
  };
  PresentedModule P = corner(), R = corner(), S = corner(), Q = corner();
  auto e = random_class(ext_module(1, R, P), rng);
  auto f = random_class(ext_module(1, Q, R), rng);
  auto h = random_class(ext_module(1, S, P), rng);
  auto g = random_class(ext_module(1, Q, S), rng);
  return diagram_of_classes(e, f, h, g, &rng);
}

}  // namespace hexext::fuzz
