#pragma once

#include "hexext/module.hpp"

#include <optional>
#include <vector>

namespace hexext {

/// A submodule with its inclusion.
struct Subobject {
  PresentedModule module;
  ModuleMorphism inclusion;
};

/// A quotient with its projection.
struct Quotient {
  PresentedModule module;
  ModuleMorphism projection;
};

/// Image of f with the inclusion into the target and the corestriction source → image.
struct ImageObject {
  PresentedModule module;
  ModuleMorphism inclusion;
  ModuleMorphism corestriction;
};

namespace detail {

// Columns x with A·x ∈ span(rel), returned as the top `A.cols()` rows of ker [A | rel].
inline ExactMatrix preimage_of_relations(const ExactMatrix& A, const ExactMatrix& rel) {
  ExactMatrix K = kernel_columns(hstack(A, rel));
  return K.block(0, 0, A.cols(), K.cols());
}

}  // namespace detail

/// Submodule of M generated by the columns of `gens`.
inline Subobject submodule_generated(const PresentedModule& M, const ExactMatrix& gens) {
  const RingSpec& R = M.ring();
  if (gens.rows() != M.generators()) throw Error(ErrorKind::InvalidArgument, "generator columns have wrong length");
  const std::size_t k = gens.cols();
  PresentedModule raw(R, k, detail::preimage_of_relations(gens, M.relations()));
  auto s = simplify(raw);
  return {s.module, ModuleMorphism(ModuleMorphism::Unchecked{}, s.module, M, gens * s.to_old.matrix())};
}

/// Quotient of M by the submodule generated by the columns of `gens`.
inline Quotient quotient(const PresentedModule& M, const ExactMatrix& gens) {
  if (gens.rows() != M.generators()) throw Error(ErrorKind::InvalidArgument, "generator columns have wrong length");
  PresentedModule raw(M.ring(), M.generators(), hstack(M.relations(), gens));
  auto s = simplify(raw);
  return {s.module, ModuleMorphism(ModuleMorphism::Unchecked{}, M, s.module, s.to_new.matrix())};
}

inline Subobject kernel(const ModuleMorphism& f) {
  return submodule_generated(f.source(), detail::preimage_of_relations(f.matrix(), f.target().relations()));
}

inline ImageObject image(const ModuleMorphism& f) {
  const RingSpec& R = f.ring();
  const std::size_t k = f.source().generators();
  PresentedModule raw(R, k, detail::preimage_of_relations(f.matrix(), f.target().relations()));
  auto s = simplify(raw);
  ModuleMorphism incl(ModuleMorphism::Unchecked{}, s.module, f.target(), f.matrix() * s.to_old.matrix());
  ModuleMorphism co(ModuleMorphism::Unchecked{}, f.source(), s.module, s.to_new.matrix());
  return {s.module, incl, co};
}

inline Quotient cokernel(const ModuleMorphism& f) { return quotient(f.target(), f.matrix()); }

struct KernelImageCokernel {
  Subobject ker;
  ImageObject im;
  Quotient coker;
};

inline KernelImageCokernel kernel_image_cokernel(const ModuleMorphism& f) {
  return {kernel(f), image(f), cokernel(f)};
}

inline bool is_surjective(const ModuleMorphism& f) {
  const std::size_t n = f.target().generators();
  if (n == 0) return true;
  LinearSolver s(hstack(f.matrix(), f.target().relations()));
  for (std::size_t i = 0; i < n; ++i) {
    ExactMatrix e(f.ring(), n, 1);
    e.set(i, 0, 1);
    if (!s.in_image(e)) return false;
  }
  return true;
}

inline bool is_injective(const ModuleMorphism& f) {
  ExactMatrix K = detail::preimage_of_relations(f.matrix(), f.target().relations());
  return f.source().is_zero_element(K);
}

inline bool is_isomorphism(const ModuleMorphism& f) { return is_injective(f) && is_surjective(f); }

// ---------------------------------------------------------------------------
// sums, pullbacks, pushouts

struct DirectSum {
  PresentedModule module;
  std::vector<ModuleMorphism> injections;
  std::vector<ModuleMorphism> projections;
};

inline DirectSum direct_sum(const std::vector<PresentedModule>& parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "direct sum of no modules");
  const RingSpec& R = parts.front().ring();
  std::size_t g = 0, r = 0;
  for (const auto& p : parts) {
    if (p.ring() != R) throw Error(ErrorKind::ArgumentMismatch, "direct sum over different rings");
    g += p.generators();
    r += p.relations().cols();
  }
  ExactMatrix rel(R, g, r);
  std::size_t go = 0, ro = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.generators(); ++i)
      for (std::size_t j = 0; j < p.relations().cols(); ++j) rel.set(go + i, ro + j, p.relations()(i, j));
    go += p.generators();
    ro += p.relations().cols();
  }
  DirectSum out{PresentedModule(R, g, rel), {}, {}};
  go = 0;
  for (const auto& p : parts) {
    ExactMatrix in(R, g, p.generators()), pr(R, p.generators(), g);
    for (std::size_t i = 0; i < p.generators(); ++i) {
      in.set(go + i, i, 1);
      pr.set(i, go + i, 1);
    }
    out.injections.emplace_back(ModuleMorphism::Unchecked{}, p, out.module, in);
    out.projections.emplace_back(ModuleMorphism::Unchecked{}, out.module, p, pr);
    go += p.generators();
  }
  return out;
}

inline DirectSum direct_sum(const PresentedModule& a, const PresentedModule& b) { return direct_sum({a, b}); }

/// Morphism A⊕B → C given by [f g].
inline ModuleMorphism copair(const DirectSum& sum, const ModuleMorphism& f, const ModuleMorphism& g) {
  return ModuleMorphism(ModuleMorphism::Unchecked{}, sum.module, f.target(), hstack(f.matrix(), g.matrix()));
}

/// Morphism C → A⊕B given by (f, g).
inline ModuleMorphism pair(const DirectSum& sum, const ModuleMorphism& f, const ModuleMorphism& g) {
  return ModuleMorphism(ModuleMorphism::Unchecked{}, f.source(), sum.module, vstack(f.matrix(), g.matrix()));
}

/// f ⊕ g : A⊕B → C⊕D.
inline ModuleMorphism sum_map(const DirectSum& src, const DirectSum& dst, const ModuleMorphism& f,
                              const ModuleMorphism& g) {
  return ModuleMorphism(ModuleMorphism::Unchecked{}, src.module, dst.module, block_diag(f.matrix(), g.matrix()));
}

struct Pullback {
  PresentedModule module;
  ModuleMorphism to_a, to_b;
  ModuleMorphism inclusion;  ///< into A⊕B
  DirectSum sum;
};

/// A ×_C B for f: A → C, g: B → C.
inline Pullback pullback(const ModuleMorphism& f, const ModuleMorphism& g) {
  if (!f.target().same_presentation(g.target())) throw Error(ErrorKind::ArgumentMismatch, "pullback needs a common target");
  DirectSum ab = direct_sum(f.source(), g.source());
  ModuleMorphism diff = copair(ab, f, -g);
  Subobject k = kernel(diff);
  return {k.module, compose(ab.projections[0], k.inclusion), compose(ab.projections[1], k.inclusion), k.inclusion, ab};
}

struct Pushout {
  PresentedModule module;
  ModuleMorphism from_a, from_b;
  ModuleMorphism projection;  ///< from A⊕B
  DirectSum sum;
};

/// A ⊔_C B for f: C → A, g: C → B.
inline Pushout pushout(const ModuleMorphism& f, const ModuleMorphism& g) {
  if (!f.source().same_presentation(g.source())) throw Error(ErrorKind::ArgumentMismatch, "pushout needs a common source");
  DirectSum ab = direct_sum(f.target(), g.target());
  Quotient q = quotient(ab.module, vstack(f.matrix(), (-g).matrix()));
  return {q.module, compose(q.projection, ab.injections[0]), compose(q.projection, ab.injections[1]), q.projection, ab};
}

// ---------------------------------------------------------------------------
// factorisations

/// Solves A·X ≡ B modulo the relations `rel` of the module where both sides live.
inline std::optional<ExactMatrix> solve_modulo(const ExactMatrix& A, const ExactMatrix& B, const ExactMatrix& rel) {
  LinearSolver s(hstack(A, rel));
  auto X = s.solve_columns(B);
  if (!X) return std::nullopt;
  return X->block(0, 0, A.cols(), B.cols());
}

/// k with mono ∘ k = h, when h lands in the image of the monomorphism.
inline std::optional<ModuleMorphism> factor_through_mono(const ModuleMorphism& mono, const ModuleMorphism& h) {
  if (!mono.target().same_presentation(h.target())) throw Error(ErrorKind::ArgumentMismatch, "targets differ");
  auto K = solve_modulo(mono.matrix(), h.matrix(), mono.target().relations());
  if (!K) return std::nullopt;
  auto cert = check_well_defined(h.source(), mono.source(), *K);
  if (std::holds_alternative<Rejection>(cert)) return std::nullopt;
  return ModuleMorphism(ModuleMorphism::Unchecked{}, h.source(), mono.source(), *K);
}

/// Matrix L with epi·L ≡ identity on the target's generators (a set-theoretic section).
inline ExactMatrix lift_through_epi(const ModuleMorphism& epi) {
  const auto& T = epi.target();
  auto L = solve_modulo(epi.matrix(), ExactMatrix::identity(epi.ring(), T.generators()), T.relations());
  if (!L) throw Error(ErrorKind::InvalidArgument, "map is not surjective");
  return *L;
}

/// φ with φ ∘ epi = psi, when psi vanishes on the kernel of the epimorphism.
inline std::optional<ModuleMorphism> factor_through_epi(const ModuleMorphism& epi, const ModuleMorphism& psi) {
  if (!epi.source().same_presentation(psi.source())) throw Error(ErrorKind::ArgumentMismatch, "sources differ");
  ExactMatrix phi = psi.matrix() * lift_through_epi(epi);
  auto cert = check_well_defined(epi.target(), psi.target(), phi);
  if (std::holds_alternative<Rejection>(cert)) return std::nullopt;
  ModuleMorphism out(ModuleMorphism::Unchecked{}, epi.target(), psi.target(), phi);
  if (!compose(out, epi).equals(psi)) return std::nullopt;
  return out;
}

/// Constraint post · J · pre = rhs as maps W → Z, where J: A → B is unknown.
struct MorphismConstraint {
  ExactMatrix post;     ///< Z gens × B gens
  ExactMatrix pre;      ///< A gens × W gens
  ExactMatrix rhs;      ///< Z gens × W gens
  PresentedModule into; ///< Z
};

/// Finds a morphism J: A → B satisfying every constraint, or nullopt.
inline std::optional<ModuleMorphism> solve_morphism(const PresentedModule& A, const PresentedModule& B,
                                                    const std::vector<MorphismConstraint>& cons) {
  const RingSpec& R = A.ring();
  const std::size_t gA = A.generators(), gB = B.generators(), nJ = gA * gB;
  // blocks: well-definedness then each constraint
  std::size_t rows = gB * A.relations().cols(), slack = B.relations().cols() * A.relations().cols();
  for (const auto& c : cons) {
    rows += c.rhs.rows() * c.rhs.cols();
    slack += c.into.relations().cols() * c.rhs.cols();
  }
  ExactMatrix sys(R, rows, nJ + slack);
  ExactMatrix rhs(R, rows, 1);
  std::size_t r0 = 0, s0 = nJ;
  auto place = [&](const ExactMatrix& blk, std::size_t r, std::size_t c) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j)
        if (blk(i, j) != 0) sys.set(r + i, c + j, blk(i, j));
  };
  {
    // vec(J·relA) = (relAᵀ ⊗ I)·vec(J) must lie in span of I ⊗ relB
    const std::size_t w = A.relations().cols();
    place(kron(A.relations().transpose(), ExactMatrix::identity(R, gB)), r0, 0);
    place(-kron(ExactMatrix::identity(R, w), B.relations()), r0, s0);
    r0 += gB * w;
    s0 += B.relations().cols() * w;
  }
  for (const auto& c : cons) {
    if (c.post.cols() != gB || c.pre.rows() != gA || c.rhs.rows() != c.post.rows() || c.rhs.cols() != c.pre.cols() ||
        c.into.generators() != c.post.rows())
      throw Error(ErrorKind::InvalidArgument, "constraint dimensions do not match");
    const std::size_t w = c.rhs.cols();
    place(kron(c.pre.transpose(), c.post), r0, 0);
    place(-kron(ExactMatrix::identity(R, w), c.into.relations()), r0, s0);
    ExactMatrix v = vec(c.rhs);
    for (std::size_t i = 0; i < v.rows(); ++i) rhs.set(r0 + i, 0, v(i, 0));
    r0 += c.rhs.rows() * w;
    s0 += c.into.relations().cols() * w;
  }
  auto sol = LinearSolver(sys).particular(rhs);
  if (!sol) return std::nullopt;
  return ModuleMorphism(ModuleMorphism::Unchecked{}, A, B, unvec(sol->block(0, 0, nJ, 1), gB, gA));
}

// ---------------------------------------------------------------------------
// exactness

enum class ExactnessStatus { Exact, CompositeNonzero, ImageProperInKernel };

inline const char* to_string(ExactnessStatus s) {
  switch (s) {
    case ExactnessStatus::Exact: return "exact";
    case ExactnessStatus::CompositeNonzero: return "composite nonzero";
    case ExactnessStatus::ImageProperInKernel: return "image properly contained in kernel";
  }
  return "?";
}

struct PositionReport {
  std::size_t position;  ///< index of the module in the chain (0 = source of the first map)
  ExactnessStatus status;
};

struct ExactnessReport {
  std::vector<PositionReport> positions;
  bool exact() const {
    for (const auto& p : positions)
      if (p.status != ExactnessStatus::Exact) return false;
    return true;
  }
  std::optional<PositionReport> first_failure() const {
    for (const auto& p : positions)
      if (p.status != ExactnessStatus::Exact) return p;
    return std::nullopt;
  }
};

namespace detail {

// Status at the middle of X -f-> Y -g-> Z.
inline ExactnessStatus exact_at(const ModuleMorphism& f, const ModuleMorphism& g) {
  if (!compose(g, f).is_zero()) return ExactnessStatus::CompositeNonzero;
  ExactMatrix K = preimage_of_relations(g.matrix(), g.target().relations());
  if (K.cols() == 0) return ExactnessStatus::Exact;
  return solve_modulo(f.matrix(), K, f.target().relations()) ? ExactnessStatus::Exact
                                                              : ExactnessStatus::ImageProperInKernel;
}

}  // namespace detail

/// Checks exactness of M0 → M1 → ... → Mn at every interior module, and at the
/// ends when a zero is assumed beyond them.
inline ExactnessReport is_exact(const std::vector<ModuleMorphism>& chain, bool leading_zero, bool trailing_zero) {
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    if (!chain[k].target().same_presentation(chain[k + 1].source()))
      throw Error(ErrorKind::NonComposable, "maps " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                                " are not composable");
  ExactnessReport rep;
  if (chain.empty()) return rep;
  if (leading_zero)
    rep.positions.push_back({0, is_injective(chain.front()) ? ExactnessStatus::Exact
                                                            : ExactnessStatus::ImageProperInKernel});
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    rep.positions.push_back({k + 1, detail::exact_at(chain[k], chain[k + 1])});
  if (trailing_zero)
    rep.positions.push_back({chain.size(), is_surjective(chain.back()) ? ExactnessStatus::Exact
                                                                       : ExactnessStatus::ImageProperInKernel});
  return rep;
}

/// 0 → left → middle → right → 0.
class ShortExactSequence {
 public:
  ShortExactSequence() = default;

  /// Validates exactness; throws NotExact naming the failing position.
  static ShortExactSequence make(const ModuleMorphism& inject, const ModuleMorphism& project) {
    auto rep = is_exact({inject, project}, true, true);
    if (auto bad = rep.first_failure()) {
      static const char* names[] = {"left", "middle", "right"};
      throw Error(ErrorKind::NotExact, std::string("sequence not exact at ") + names[bad->position] + " (" +
                                           to_string(bad->status) + ")");
    }
    return unchecked(inject, project);
  }

  static ShortExactSequence unchecked(const ModuleMorphism& inject, const ModuleMorphism& project) {
    ShortExactSequence s;
    s.inject_ = inject;
    s.project_ = project;
    return s;
  }

  const PresentedModule& left() const { return inject_.source(); }
  const PresentedModule& middle() const { return inject_.target(); }
  const PresentedModule& right() const { return project_.target(); }
  const ModuleMorphism& inject() const { return inject_; }
  const ModuleMorphism& project() const { return project_; }

  ExactnessReport check() const { return is_exact({inject_, project_}, true, true); }

 private:
  ModuleMorphism inject_, project_;
};

/// The split sequence 0 → A → A⊕B → B → 0.
inline ShortExactSequence split_sequence(const PresentedModule& A, const PresentedModule& B) {
  DirectSum s = direct_sum(A, B);
  return ShortExactSequence::unchecked(s.injections[0], s.projections[1]);
}

// ---------------------------------------------------------------------------
// snake lemma

struct SnakeResult {
  Subobject ker_f, ker_g, ker_h;
  Quotient coker_f, coker_g, coker_h;
  ModuleMorphism connecting;          ///< ker h → coker f
  std::vector<ModuleMorphism> chain;  ///< ker f → ker g → ker h → coker f → coker g → coker h
};

/// Connecting map for a commuting ladder of short exact sequences
/// top: 0→A→B→C→0, bottom: 0→A'→B'→C'→0, verticals f: A→A', g: B→B', h: C→C'.
inline SnakeResult snake_connecting(const ShortExactSequence& top, const ShortExactSequence& bottom,
                                    const ModuleMorphism& f, const ModuleMorphism& g, const ModuleMorphism& h) {
  if (!top.check().exact() || !bottom.check().exact()) throw Error(ErrorKind::RowsNotExact, "ladder rows not exact");
  auto fits = [](const ModuleMorphism& m, const PresentedModule& s, const PresentedModule& t) {
    return m.source().same_presentation(s) && m.target().same_presentation(t);
  };
  if (!fits(f, top.left(), bottom.left()) || !fits(g, top.middle(), bottom.middle()) ||
      !fits(h, top.right(), bottom.right()))
    throw Error(ErrorKind::ArgumentMismatch, "vertical maps do not connect the rows");
  if (!compose(g, top.inject()).equals(compose(bottom.inject(), f)) ||
      !compose(h, top.project()).equals(compose(bottom.project(), g)))
    throw Error(ErrorKind::LadderNotCommuting, "ladder squares do not commute");

  SnakeResult out{kernel(f), kernel(g), kernel(h), cokernel(f), cokernel(g), cokernel(h), {}, {}};
  // lift c ∈ ker h to B, push by g, pull back through A' and project to coker f
  ExactMatrix lifted = lift_through_epi(top.project()) * out.ker_h.inclusion.matrix();
  auto pre = solve_modulo(bottom.inject().matrix(), g.matrix() * lifted, bottom.middle().relations());
  if (!pre) throw Error(ErrorKind::Internal, "snake chase left the image of the bottom injection");
  out.connecting = ModuleMorphism(out.ker_h.module, out.coker_f.module, out.coker_f.projection.matrix() * *pre);

  auto k1 = factor_through_mono(out.ker_g.inclusion, compose(top.inject(), out.ker_f.inclusion));
  auto k2 = factor_through_mono(out.ker_h.inclusion, compose(top.project(), out.ker_g.inclusion));
  auto c1 = factor_through_epi(out.coker_f.projection, compose(out.coker_g.projection, bottom.inject()));
  auto c2 = factor_through_epi(out.coker_g.projection, compose(out.coker_h.projection, bottom.project()));
  if (!k1 || !k2 || !c1 || !c2) throw Error(ErrorKind::Internal, "induced maps on kernels/cokernels failed");
  out.chain = {*k1, *k2, out.connecting, *c1, *c2};
  return out;
}

}  // namespace hexext
