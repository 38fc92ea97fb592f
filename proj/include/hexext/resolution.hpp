#pragma once

#include "hexext/constructions.hpp"

#include <array>
#include <memory>

namespace hexext {

/// Free resolution F3 → F2 → F1 → F0 → M built from the cyclic decomposition of M.
///
/// F0 is free on the decomposition's generators. Over Z the resolution stops
/// at F1. Over Z/m each torsion summand Z/d is resolved periodically by ×d and
/// ×(m/d); d3 is kept so that degree-2 cocycles can be recognised.
struct FreeResolution {
  PresentedModule target;
  SimplifiedModule decomposition;
  std::array<std::size_t, 4> rank{};  ///< ranks of F0..F3
  ExactMatrix d1, d2, d3;             ///< d_k : F_k → F_{k-1}, rank[k-1] × rank[k]
  ExactMatrix aug;                    ///< F0 → M (target gens × rank0)
  ExactMatrix section;                ///< M → F0 with aug·section ≡ id, not a morphism in general

  const ExactMatrix& differential(int k) const {
    switch (k) {
      case 1: return d1;
      case 2: return d2;
      case 3: return d3;
    }
    throw Error(ErrorKind::InvalidArgument, "differential index out of range");
  }
  const RingSpec& ring() const { return target.ring(); }
};

inline FreeResolution free_resolution(const PresentedModule& M) {
  const RingSpec& R = M.ring();
  FreeResolution res{M, simplify(M), {}, {}, {}, {}, {}, {}};
  const auto& orders = res.decomposition.orders;
  const std::size_t k = orders.size();
  std::vector<std::size_t> torsion;
  for (std::size_t i = 0; i < k; ++i)
    if (orders[i] != 0) torsion.push_back(i);
  const std::size_t t = torsion.size();
  res.rank[0] = k;
  res.rank[1] = t;
  res.d1 = ExactMatrix(R, k, t);
  for (std::size_t j = 0; j < t; ++j) res.d1.set(torsion[j], j, orders[torsion[j]]);
  if (R.is_integers()) {
    res.rank[2] = res.rank[3] = 0;
    res.d2 = ExactMatrix(R, t, 0);
    res.d3 = ExactMatrix(R, 0, 0);
  } else {
    res.rank[2] = res.rank[3] = t;
    res.d2 = ExactMatrix(R, t, t);
    res.d3 = ExactMatrix(R, t, t);
    for (std::size_t j = 0; j < t; ++j) {
      const Int& d = orders[torsion[j]];
      res.d2.set(j, j, R.modulus() / d);
      res.d3.set(j, j, d);
    }
  }
  res.aug = res.decomposition.to_old.matrix();
  res.section = res.decomposition.to_new.matrix();
  return res;
}

using ResolutionPtr = std::shared_ptr<const FreeResolution>;

inline ResolutionPtr make_resolution(const PresentedModule& M) {
  return std::make_shared<const FreeResolution>(free_resolution(M));
}

/// Components f0..f2 of a chain map F'• → F• lifting f: M' → M.
struct ChainMapLift {
  std::array<ExactMatrix, 3> f;  ///< f[k] : F'_k → F_k, rank_k × rank'_k
};

inline ChainMapLift lift_chain_map(const ModuleMorphism& f, const FreeResolution& src, const FreeResolution& dst) {
  if (!f.source().same_presentation(src.target) || !f.target().same_presentation(dst.target))
    throw Error(ErrorKind::ArgumentMismatch, "morphism does not match the resolutions");
  ChainMapLift out;
  out.f[0] = dst.section * f.matrix() * src.aug;
  for (int k = 1; k <= 2; ++k) {
    ExactMatrix rhs = out.f[k - 1] * src.differential(k);
    auto sol = LinearSolver(dst.differential(k)).solve_columns(rhs);
    if (!sol) throw Error(ErrorKind::Internal, "chain map lift failed at degree " + std::to_string(k));
    out.f[k] = *sol;
  }
  return out;
}

}  // namespace hexext
