#pragma once

// Brute-force enumerations over concrete finite groups: morphisms, extension
// classes, equivalences, injectivity and middle objects of 3×3 diagrams.

#include "hexext/diagram.hpp"
#include "hexext/oracle/finite.hpp"

#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace hexext::oracle {

namespace detail {

inline ConcreteModule concrete(const PresentedModule& M, i64 max_order) {
  if (M.ring().is_integers()) {
    // the free part would make the group infinite
    if (M.generators() > 0 && full_rank_multiple(M.relations()) == 0)
      throw Error(ErrorKind::InvalidArgument, "oracle needs finite modules");
  }
  return ConcreteModule::make(M, max_order);
}

/// Matrix of a concrete homomorphism, columns taken from canonical target coordinates.
inline ModuleMorphism to_morphism(const ConcreteModule& A, const ConcreteModule& B, const ConcreteHom& h) {
  const RingSpec& R = A.presented.ring();
  ExactMatrix mat(R, B.presented.generators(), A.presented.generators());
  for (std::size_t j = 0; j < h.images.size(); ++j) {
    const auto& c = B.group.coords(h.images[j]);
    for (std::size_t i = 0; i < c.size(); ++i) mat.set(i, j, Int(c[i]));
  }
  return ModuleMorphism(ModuleMorphism::Unchecked{}, A.presented, B.presented, mat);
}

inline void chains(i64 rem, i64 prev, i64 cap, std::vector<i64>& cur, std::vector<std::vector<i64>>& out) {
  if (rem == 1) {
    out.push_back(cur);
    return;
  }
  for (i64 d = prev; d <= rem; d += prev) {
    if (d == 1 || rem % d != 0 || (cap > 0 && cap % d != 0)) continue;
    i64 rest = rem / d;
    if (rest != 1 && rest % d != 0) continue;
    cur.push_back(d);
    chains(rest, d, cap, cur, out);
    cur.pop_back();
  }
}

/// Invariant-factor chains d1 | d2 | … with product n; over Z/m every factor divides m.
inline std::vector<std::vector<i64>> abelian_types(const RingSpec& R, i64 n) {
  std::vector<std::vector<i64>> out;
  std::vector<i64> cur;
  chains(n, 1, R.is_integers() ? 0 : to_i64(R.modulus()), cur, out);
  return out;
}

inline PresentedModule module_of_type(const RingSpec& R, const std::vector<i64>& type) {
  return PresentedModule::cyclic_sum(R, std::vector<Int>(type.begin(), type.end()));
}

template <class Pred>
std::vector<ConcreteHom> homs_where(const ConcreteModule& A, const ConcreteGroup& B, BudgetMeter& meter, Pred keep) {
  auto all = all_homs(A, B, meter);
  std::vector<ConcreteHom> out;
  for (auto& h : all)
    if (keep(h)) out.push_back(std::move(h));
  return out;
}

inline ConcreteHom inverse(const ConcreteHom& h, const ConcreteModule& X) {
  ConcreteHom inv{std::vector<i64>(X.presented.generators()), std::vector<i64>(h.table.size())};
  for (std::size_t a = 0; a < h.table.size(); ++a) inv.table[static_cast<std::size_t>(h.table[a])] = static_cast<i64>(a);
  for (std::size_t k = 0; k < inv.images.size(); ++k)
    inv.images[k] = inv.table[static_cast<std::size_t>(X.group.generator(k))];
  return inv;
}

}  // namespace detail

/// Every morphism A → B, in the lexicographic order of generator images.
inline std::vector<ModuleMorphism> enumerate_morphisms(const PresentedModule& A, const PresentedModule& B,
                                                       const EnumerationBudget& budget = {}) {
  BudgetMeter meter(budget);
  auto CA = detail::concrete(A, budget.max_order), CB = detail::concrete(B, budget.max_order);
  std::vector<ModuleMorphism> out;
  for (const auto& h : all_homs(CA, CB.group, meter)) out.push_back(detail::to_morphism(CA, CB, h));
  return out;
}

/// Equivalence classes of extensions 0 → P → X → Q → 0.
struct Ext1Census {
  enum class Method { Middles, FactorSets };
  i64 count = 0;
  Method method = Method::Middles;
  std::vector<ShortExactSequence> representatives;
};

/// Walks every middle module X of order |P|·|Q|, every pair (ι, π) with im ι = ker π,
/// and groups the pairs into Aut(X)-orbits.
inline Ext1Census brute_ext1_middles(const PresentedModule& Q, const PresentedModule& P,
                                     const EnumerationBudget& budget = {}) {
  BudgetMeter meter(budget);
  const RingSpec& R = P.ring();
  auto CP = detail::concrete(P, budget.max_order), CQ = detail::concrete(Q, budget.max_order);
  const i64 n = CP.order() * CQ.order();
  if (n > budget.max_order) throw Error(ErrorKind::BudgetExceeded, "middle modules exceed the order budget");
  Ext1Census out;
  for (const auto& type : detail::abelian_types(R, n)) {
    auto X = detail::module_of_type(R, type);
    auto CX = detail::concrete(X, n);
    auto autos = detail::homs_where(CX, CX.group, meter, [](const ConcreteHom& h) { return hom_injective(h); });
    auto injs = detail::homs_where(CP, CX.group, meter, [](const ConcreteHom& h) { return hom_injective(h); });
    auto surs = detail::homs_where(CX, CQ.group, meter,
                                   [&](const ConcreteHom& h) { return hom_surjective(h, CQ.order()); });
    std::vector<ConcreteHom> inv;
    inv.reserve(autos.size());
    for (const auto& a : autos) inv.push_back(detail::inverse(a, CX));

    using Key = std::vector<i64>;
    std::map<Key, std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < injs.size(); ++a)
      for (std::size_t b = 0; b < surs.size(); ++b) {
        meter.spend();
        bool exact = true;
        for (auto x : injs[a].table)
          if (surs[b].table[static_cast<std::size_t>(x)] != 0) { exact = false; break; }
        if (!exact) continue;
        Key k = injs[a].images;
        k.insert(k.end(), surs[b].images.begin(), surs[b].images.end());
        pairs.emplace(std::move(k), std::make_pair(a, b));
      }
    std::set<Key> seen;
    for (const auto& [key, ab] : pairs) {
      if (seen.count(key)) continue;
      const auto& iota = injs[ab.first];
      const auto& pi = surs[ab.second];
      for (std::size_t t = 0; t < autos.size(); ++t) {
        meter.spend();
        Key k;
        for (auto x : iota.images) k.push_back(autos[t].table[static_cast<std::size_t>(x)]);
        for (auto x : inv[t].images) k.push_back(pi.table[static_cast<std::size_t>(x)]);
        seen.insert(std::move(k));
      }
      ++out.count;
      out.representatives.push_back(
          ShortExactSequence::unchecked(detail::to_morphism(CP, CX, iota), detail::to_morphism(CX, CQ, pi)));
    }
  }
  return out;
}

/// Counts extensions through factor sets: with F free on the generators of Q and
/// K = ker(F → Q), classes are homomorphisms K → P modulo restrictions of F → P.
/// Each class is realised by the pushout of F ← K → P.
inline Ext1Census brute_ext1_factor_sets(const PresentedModule& Q, const PresentedModule& P,
                                         const EnumerationBudget& budget = {}) {
  BudgetMeter meter(budget);
  const RingSpec& R = P.ring();
  auto CP = detail::concrete(P, budget.max_order), CQ = detail::concrete(Q, budget.max_order);
  const i64 N = R.is_integers() ? CP.order() * CQ.order() : to_i64(R.modulus());
  const std::size_t g = Q.generators(), r = Q.relations().cols(), p = P.generators();
  const i64 np = CP.order();
  std::vector<std::vector<i64>> rho(r, std::vector<i64>(g));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < g; ++i) rho[k][i] = to_i64(mod_floor(Q.relations()(i, k), Int(N)));

  // elements of K ⊂ (Z/N)^g reached from 0 by adding relation columns
  std::map<std::vector<i64>, std::size_t> index;
  std::vector<std::vector<i64>> elems{std::vector<i64>(g, 0)};
  index.emplace(elems[0], 0);
  std::vector<std::vector<std::size_t>> step(1);
  for (std::size_t e = 0; e < elems.size(); ++e) {
    for (std::size_t k = 0; k < r; ++k) {
      meter.spend();
      std::vector<i64> v = elems[e];
      for (std::size_t i = 0; i < g; ++i) v[i] = detail::mod(v[i] + rho[k][i], N);
      auto [it, fresh] = index.emplace(v, elems.size());
      if (fresh) {
        elems.push_back(std::move(v));
        step.emplace_back();
      }
      step[e].push_back(it->second);
    }
  }

  // a tuple of values on the columns extends to K iff the labelling is consistent
  auto consistent = [&](const std::vector<i64>& c) {
    std::vector<i64> label(elems.size(), -1);
    label[0] = 0;
    for (std::size_t e = 0; e < elems.size(); ++e)
      for (std::size_t k = 0; k < r; ++k) {
        i64 v = CP.group.add(label[e], c[k]);
        i64& t = label[step[e][k]];
        if (t < 0) t = v;
        else if (t != v) return false;
      }
    return true;
  };
  auto encode = [&](const std::vector<i64>& c) {
    i64 code = 0;
    for (std::size_t k = r; k-- > 0;) code = code * np + c[k];
    return code;
  };

  std::vector<std::vector<i64>> cocycles;
  {
    std::vector<i64> c(r, 0);
    for (;;) {
      meter.spend(static_cast<i64>(elems.size()));
      if (consistent(c)) cocycles.push_back(c);
      std::size_t k = 0;
      while (k < r && ++c[k] == np) c[k++] = 0;
      if (k == r) break;
    }
  }
  std::set<std::vector<i64>> cob_set;
  {
    std::vector<i64> f(g, 0);
    for (;;) {
      meter.spend();
      std::vector<i64> b(r, 0);
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < g; ++i)
          if (rho[k][i] != 0) b[k] = CP.group.add(b[k], CP.group.mul(rho[k][i], f[i]));
      cob_set.insert(std::move(b));
      std::size_t i = 0;
      while (i < g && ++f[i] == np) f[i++] = 0;
      if (i == g) break;
    }
  }
  std::vector<std::vector<i64>> cobs(cob_set.begin(), cob_set.end());

  Ext1Census out;
  out.method = Ext1Census::Method::FactorSets;
  std::set<i64> seen;
  for (const auto& c : cocycles) {
    if (seen.count(encode(c))) continue;
    for (const auto& b : cobs) {
      meter.spend();
      std::vector<i64> s(r);
      for (std::size_t k = 0; k < r; ++k) s[k] = CP.group.add(c[k], b[k]);
      seen.insert(encode(s));
    }
    ++out.count;
    // X = (P ⊕ F) / (relations of P, (−c_k, ρ_k))
    ExactMatrix rel(R, p + g, P.relations().cols() + r);
    for (std::size_t j = 0; j < P.relations().cols(); ++j)
      for (std::size_t i = 0; i < p; ++i) rel.set(i, j, P.relations()(i, j));
    for (std::size_t k = 0; k < r; ++k) {
      const auto& ck = CP.group.coords(c[k]);
      const std::size_t col = P.relations().cols() + k;
      for (std::size_t i = 0; i < p; ++i) rel.set(i, col, Int(-ck[i]));
      for (std::size_t i = 0; i < g; ++i) rel.set(p + i, col, Q.relations()(i, k));
    }
    PresentedModule X(R, p + g, rel);
    ExactMatrix inc(R, p + g, p), proj(R, g, p + g);
    for (std::size_t i = 0; i < p; ++i) inc.set(i, i, 1);
    for (std::size_t i = 0; i < g; ++i) proj.set(i, p + i, 1);
    out.representatives.push_back(ShortExactSequence::unchecked(ModuleMorphism(ModuleMorphism::Unchecked{}, P, X, inc),
                                                                ModuleMorphism(ModuleMorphism::Unchecked{}, X, Q, proj)));
  }
  return out;
}

/// Middle-module enumeration when |P|·|Q| fits the order budget, factor sets otherwise.
inline Ext1Census brute_ext1(const PresentedModule& Q, const PresentedModule& P, const EnumerationBudget& budget = {}) {
  if (P.ring() != Q.ring()) throw Error(ErrorKind::ArgumentMismatch, "modules over different rings");
  auto CP = detail::concrete(P, budget.max_order), CQ = detail::concrete(Q, budget.max_order);
  if (CP.order() * CQ.order() <= budget.max_order) return brute_ext1_middles(Q, P, budget);
  return brute_ext1_factor_sets(Q, P, budget);
}

/// True iff some isomorphism of middles commutes with the identities on both ends.
inline bool brute_equivalent(const ShortExactSequence& s1, const ShortExactSequence& s2,
                             const EnumerationBudget& budget = {}) {
  if (!s1.left().same_presentation(s2.left()) || !s1.right().same_presentation(s2.right()))
    throw Error(ErrorKind::EndsMismatch, "sequences have different end terms");
  BudgetMeter meter(budget);
  auto A = detail::concrete(s1.left(), budget.max_order), C = detail::concrete(s1.right(), budget.max_order);
  auto B1 = detail::concrete(s1.middle(), budget.max_order), B2 = detail::concrete(s2.middle(), budget.max_order);
  if (B1.order() != B2.order()) return false;
  auto f1 = hom_from_matrix(A, B1, s1.inject().matrix()), f2 = hom_from_matrix(A, B2, s2.inject().matrix());
  auto g1 = hom_from_matrix(B1, C, s1.project().matrix()), g2 = hom_from_matrix(B2, C, s2.project().matrix());
  for (const auto& phi : all_homs(B1, B2.group, meter)) {
    bool ok = true;
    for (std::size_t a = 0; ok && a < f1.table.size(); ++a)
      ok = phi.table[static_cast<std::size_t>(f1.table[a])] == f2.table[a];
    for (std::size_t b = 0; ok && b < phi.table.size(); ++b)
      ok = g2.table[static_cast<std::size_t>(phi.table[b])] == g1.table[b];
    if (ok && hom_injective(phi)) return true;
  }
  return false;
}

/// Baer's criterion: every morphism from an ideal (d) into P extends to the ring.
inline bool brute_injective(const PresentedModule& P, const EnumerationBudget& budget = {}) {
  BudgetMeter meter(budget);
  auto CP = detail::concrete(P, budget.max_order);
  const auto& G = CP.group;
  const RingSpec& R = P.ring();
  // over Z the ideals (d) are free, so d ranges up to |P|; over Z/m the generator d divides m
  const i64 m = R.is_integers() ? 0 : to_i64(R.modulus());
  const i64 top = R.is_integers() ? std::max<i64>(G.order(), 1) : m;
  for (i64 d = 1; d <= top; ++d) {
    if (m > 0 && m % d != 0) continue;
    std::vector<char> multiple(static_cast<std::size_t>(G.order()), 0);
    for (i64 x = 0; x < G.order(); ++x) multiple[static_cast<std::size_t>(G.mul(d, x))] = 1;
    for (i64 y = 0; y < G.order(); ++y) {
      meter.spend();
      // y is the image of d; it must be killed by the annihilator m/d of d
      if (m > 0 && G.mul(m / d, y) != 0) continue;
      if (!multiple[static_cast<std::size_t>(y)]) return false;
    }
  }
  return true;
}

/// Outcome of an exhaustive search for a middle object of a 3×3 diagram.
struct ExtensionSearch {
  std::optional<DiagramExtension> witness;
  i64 middles_examined = 0;
  bool exists() const { return witness.has_value(); }
};

/// Searches every middle module X of order |H|·|F| and every choice of
/// i: H → X, j: E → X, m: X → F, n: X → G completing the diagram.
inline ExtensionSearch brute_extension_exists(const Diagram3x3& D, const EnumerationBudget& budget = {}) {
  BudgetMeter meter(budget);
  const i64 cap = budget.max_order;
  auto CP = detail::concrete(D.P(), cap), CE = detail::concrete(D.E(), cap), CR = detail::concrete(D.R(), cap);
  auto CH = detail::concrete(D.H(), cap), CS = detail::concrete(D.S(), cap), CG = detail::concrete(D.G(), cap);
  auto CF = detail::concrete(D.F(), cap), CQ = detail::concrete(D.Q(), cap);
  const i64 n = CH.order() * CF.order();
  if (n > cap) throw Error(ErrorKind::BudgetExceeded, "middle modules exceed the order budget");
  auto nu = hom_from_matrix(CP, CE, D.nu.matrix()), mu = hom_from_matrix(CP, CH, D.mu.matrix());
  auto e_to_r = hom_from_matrix(CE, CR, D.e_to_r.matrix()), r_to_f = hom_from_matrix(CR, CF, D.r_to_f.matrix());
  auto h_to_s = hom_from_matrix(CH, CS, D.h_to_s.matrix()), s_to_g = hom_from_matrix(CS, CG, D.s_to_g.matrix());
  auto f_to_q = hom_from_matrix(CF, CQ, D.f_to_q.matrix()), g_to_q = hom_from_matrix(CG, CQ, D.g_to_q.matrix());
  auto through = [](const ConcreteHom& outer, const std::vector<i64>& images) {
    std::vector<i64> v;
    for (auto x : images) v.push_back(outer.table[static_cast<std::size_t>(x)]);
    return v;
  };
  const auto want_ni = through(s_to_g, h_to_s.images);  // n∘i on generators of H
  const auto want_mj = through(r_to_f, e_to_r.images);  // m∘j on generators of E

  ExtensionSearch out;
  for (const auto& type : detail::abelian_types(D.ring(), n)) {
    ++out.middles_examined;
    auto X = detail::module_of_type(D.ring(), type);
    auto CX = detail::concrete(X, n);
    auto ms = detail::homs_where(CX, CF.group, meter, [&](const ConcreteHom& h) { return hom_surjective(h, CF.order()); });
    if (ms.empty()) continue;
    auto ns = detail::homs_where(CX, CG.group, meter, [&](const ConcreteHom& h) { return hom_surjective(h, CG.order()); });
    if (ns.empty()) continue;
    auto is = detail::homs_where(CH, CX.group, meter, [](const ConcreteHom& h) { return hom_injective(h); });
    auto js = detail::homs_where(CE, CX.group, meter, [](const ConcreteHom& h) { return hom_injective(h); });
    std::map<std::vector<i64>, std::vector<std::size_t>> by_q;
    for (std::size_t k = 0; k < ns.size(); ++k) by_q[through(g_to_q, ns[k].images)].push_back(k);
    for (const auto& m : ms) {
      auto bucket = by_q.find(through(f_to_q, m.images));
      if (bucket == by_q.end()) continue;
      for (std::size_t nk : bucket->second) {
        const auto& nn = ns[nk];
        std::vector<const ConcreteHom*> ci, cj;
        for (const auto& i : is) {
          meter.spend();
          auto mi = through(m, i.images);
          if (std::all_of(mi.begin(), mi.end(), [](i64 v) { return v == 0; }) && through(nn, i.images) == want_ni)
            ci.push_back(&i);
        }
        if (ci.empty()) continue;
        for (const auto& j : js) {
          meter.spend();
          auto nj = through(nn, j.images);
          if (std::all_of(nj.begin(), nj.end(), [](i64 v) { return v == 0; }) && through(m, j.images) == want_mj)
            cj.push_back(&j);
        }
        for (const auto* i : ci)
          for (const auto* j : cj) {
            meter.spend();
            if (through(*i, mu.images) != through(*j, nu.images)) continue;
            out.witness = DiagramExtension{X, detail::to_morphism(CH, CX, *i), detail::to_morphism(CE, CX, *j),
                                           detail::to_morphism(CX, CF, m), detail::to_morphism(CX, CG, nn)};
            return out;
          }
      }
    }
  }
  return out;
}

}  // namespace hexext::oracle
