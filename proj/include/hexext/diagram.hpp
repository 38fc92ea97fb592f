#pragma once

#include "hexext/ext.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hexext {

/// Two short exact rows and two short exact columns sharing four corners:
///
///     P --nu--> E --> R          rowTop    0 → P → E → R → 0
///     |mu               |         rowBottom 0 → S → G → Q → 0
///     H                 F         colLeft   0 → P → H → S → 0
///     |                 |         colRight  0 → R → F → Q → 0
///     S ------> G ----> Q
struct Diagram3x3 {
  ModuleMorphism nu, e_to_r;    ///< rowTop
  ModuleMorphism s_to_g, g_to_q;  ///< rowBottom
  ModuleMorphism mu, h_to_s;    ///< colLeft
  ModuleMorphism r_to_f, f_to_q;  ///< colRight

  const PresentedModule& P() const { return nu.source(); }
  const PresentedModule& E() const { return nu.target(); }
  const PresentedModule& R() const { return e_to_r.target(); }
  const PresentedModule& H() const { return mu.target(); }
  const PresentedModule& S() const { return h_to_s.target(); }
  const PresentedModule& G() const { return s_to_g.target(); }
  const PresentedModule& F() const { return r_to_f.target(); }
  const PresentedModule& Q() const { return g_to_q.target(); }
  const RingSpec& ring() const { return nu.ring(); }

  ShortExactSequence row_top() const { return ShortExactSequence::unchecked(nu, e_to_r); }
  ShortExactSequence row_bottom() const { return ShortExactSequence::unchecked(s_to_g, g_to_q); }
  ShortExactSequence col_left() const { return ShortExactSequence::unchecked(mu, h_to_s); }
  ShortExactSequence col_right() const { return ShortExactSequence::unchecked(r_to_f, f_to_q); }

  static Diagram3x3 from_sequences(const ShortExactSequence& row_top, const ShortExactSequence& row_bottom,
                                   const ShortExactSequence& col_left, const ShortExactSequence& col_right) {
    return {row_top.inject(),  row_top.project(),  row_bottom.inject(), row_bottom.project(),
            col_left.inject(), col_left.project(), col_right.inject(),  col_right.project()};
  }
};

/// The middle object X with i: H → X, j: E → X, m: X → F, n: X → G.
struct DiagramExtension {
  PresentedModule X;
  ModuleMorphism i, j, m, n;

  ShortExactSequence row_mid() const { return ShortExactSequence::unchecked(i, m); }
  ShortExactSequence col_mid() const { return ShortExactSequence::unchecked(j, n); }
};

struct Violation {
  std::string where;
  std::string what;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const {
    std::string s;
    for (const auto& v : violations) s += v.where + ": " + v.what + "\n";
    return s.empty() ? "ok\n" : s;
  }
};

namespace detail {

inline void check_ses(ValidationReport& rep, const std::string& name, const ModuleMorphism& inj,
                      const ModuleMorphism& proj) {
  if (!inj.target().same_presentation(proj.source())) {
    rep.violations.push_back({name, "maps are not composable"});
    return;
  }
  static const char* names[] = {"left", "middle", "right"};
  auto r = is_exact({inj, proj}, true, true);
  for (const auto& p : r.positions)
    if (p.status != ExactnessStatus::Exact)
      rep.violations.push_back({name + "/" + names[p.position], to_string(p.status)});
}

inline void check_corner(ValidationReport& rep, const std::string& corner, const PresentedModule& a,
                         const PresentedModule& b) {
  if (!a.same_presentation(b)) rep.violations.push_back({corner, "corner objects differ"});
}

inline void check_square(ValidationReport& rep, const std::string& name, const ModuleMorphism& lhs,
                         const ModuleMorphism& rhs) {
  if (!lhs.source().same_presentation(rhs.source()) || !lhs.target().same_presentation(rhs.target()))
    rep.violations.push_back({name, "square has mismatched corners"});
  else if (!lhs.equals(rhs))
    rep.violations.push_back({name, "square does not commute"});
}

}  // namespace detail

inline ValidationReport validate_diagram1(const Diagram3x3& D) {
  ValidationReport rep;
  detail::check_corner(rep, "P", D.nu.source(), D.mu.source());
  detail::check_corner(rep, "R", D.e_to_r.target(), D.r_to_f.source());
  detail::check_corner(rep, "S", D.h_to_s.target(), D.s_to_g.source());
  detail::check_corner(rep, "Q", D.g_to_q.target(), D.f_to_q.target());
  detail::check_ses(rep, "rowTop", D.nu, D.e_to_r);
  detail::check_ses(rep, "rowBottom", D.s_to_g, D.g_to_q);
  detail::check_ses(rep, "colLeft", D.mu, D.h_to_s);
  detail::check_ses(rep, "colRight", D.r_to_f, D.f_to_q);
  return rep;
}

inline void require_valid(const Diagram3x3& D) {
  auto rep = validate_diagram1(D);
  if (!rep.ok())
    throw Error(ErrorKind::InvalidDiagram, rep.violations.front().where + ": " + rep.violations.front().what);
}

inline ValidationReport validate_extension(const Diagram3x3& D, const DiagramExtension& x) {
  ValidationReport rep;
  auto fits = [&](const std::string& name, const ModuleMorphism& f, const PresentedModule& s,
                  const PresentedModule& t) {
    bool ok = f.source().same_presentation(s) && f.target().same_presentation(t);
    if (!ok) rep.violations.push_back({name, "has the wrong source or target"});
    return ok;
  };
  bool shapes = fits("i", x.i, D.H(), x.X) & fits("j", x.j, D.E(), x.X) & fits("m", x.m, x.X, D.F()) &
                fits("n", x.n, x.X, D.G());
  if (!shapes) return rep;
  detail::check_ses(rep, "rowMid", x.i, x.m);
  detail::check_ses(rep, "colMid", x.j, x.n);
  detail::check_square(rep, "square P", compose(x.j, D.nu), compose(x.i, D.mu));
  detail::check_square(rep, "square E", compose(x.m, x.j), compose(D.r_to_f, D.e_to_r));
  detail::check_square(rep, "square H", compose(x.n, x.i), compose(D.s_to_g, D.h_to_s));
  detail::check_square(rep, "square Q", compose(D.g_to_q, x.n), compose(D.f_to_q, x.m));
  return rep;
}

// ---------------------------------------------------------------------------
// obstruction

struct ObstructionReport {
  ExtClass yoneda_ef;  ///< [E] ∪ [F]
  ExtClass yoneda_hg;  ///< [H] ∪ [G]
  ExtClass baer_sum;
  bool is_zero = true;
};

struct DiagramClasses {
  ExtModule ext_rp, ext_qr, ext_sp, ext_qs, ext2_qp;
  ExtClass e, f, h, g;  ///< classes of rowTop, colRight, colLeft, rowBottom
};

inline DiagramClasses diagram_classes(const Diagram3x3& D) {
  DiagramClasses c;
  c.ext_rp = ext_module(1, D.R(), D.P());
  c.ext_qr = ext_module(1, D.Q(), D.R());
  c.ext_sp = ext_module(1, D.S(), D.P());
  c.ext_qs = ext_module(1, D.Q(), D.S());
  c.ext2_qp = ext_module(2, D.Q(), D.P());
  c.e = class_of_ses(D.row_top(), c.ext_rp);
  c.f = class_of_ses(D.col_right(), c.ext_qr);
  c.h = class_of_ses(D.col_left(), c.ext_sp);
  c.g = class_of_ses(D.row_bottom(), c.ext_qs);
  return c;
}

inline ObstructionReport obstruction(const Diagram3x3& D) {
  require_valid(D);
  auto c = diagram_classes(D);
  ObstructionReport r;
  r.yoneda_ef = yoneda_product(c.e, c.f, c.ext2_qp);
  r.yoneda_hg = yoneda_product(c.h, c.g, c.ext2_qp);
  r.baer_sum = r.yoneda_ef + r.yoneda_hg;
  r.is_zero = r.baer_sum.is_zero();
  return r;
}

// ---------------------------------------------------------------------------
// the pullback Y = F ×_Q G

struct YData {
  Pullback pb;                      ///< Y with to_a = p_F, to_b = p_G
  DirectSum rs;                     ///< R ⊕ S
  ModuleMorphism from_r, from_s;    ///< R → Y, S → Y
  ShortExactSequence ses;           ///< 0 → R⊕S → Y → Q → 0
  SnakeResult snake;                ///< ladder (S→Y→F) over (S→G→Q)

  const PresentedModule& Y() const { return pb.module; }
  const ModuleMorphism& p_f() const { return pb.to_a; }
  const ModuleMorphism& p_g() const { return pb.to_b; }
};

inline YData build_Y(const Diagram3x3& D) {
  require_valid(D);
  Pullback pb = pullback(D.f_to_q, D.g_to_q);
  auto from_r = factor_through_mono(pb.inclusion, pair(pb.sum, D.r_to_f, ModuleMorphism::zero(D.R(), D.G())));
  auto from_s = factor_through_mono(pb.inclusion, pair(pb.sum, ModuleMorphism::zero(D.S(), D.F()), D.s_to_g));
  if (!from_r || !from_s) throw Error(ErrorKind::Internal, "R or S does not land in the pullback");
  DirectSum rs = direct_sum(D.R(), D.S());
  ModuleMorphism incl = copair(rs, *from_r, *from_s);
  ModuleMorphism to_q = compose(D.f_to_q, pb.to_a);
  auto ses = ShortExactSequence::make(incl, to_q);
  // ladder 0→S→Y→F→0 over 0→S→G→Q→0; kernels of the verticals are both R
  auto top = ShortExactSequence::make(*from_s, pb.to_a);
  auto snake = snake_connecting(top, D.row_bottom(), ModuleMorphism::identity(D.S()), pb.to_b, D.f_to_q);
  if (!snake.ker_f.module.is_zero() || !snake.coker_g.module.is_zero() || !snake.coker_h.module.is_zero() ||
      !is_isomorphism(snake.chain[1]) || !snake.ker_g.module.isomorphic_to(D.R()))
    throw Error(ErrorKind::Internal, "snake grid for Y does not match the diagram");
  return {pb, rs, *from_r, *from_s, ses, snake};
}

// ---------------------------------------------------------------------------
// extension

/// Everything needed to choose a lift ξ ∈ Ext¹(Y,P) of τ ∈ Ext¹(R⊕S,P).
struct LiftProblem {
  YData y;
  DiagramClasses classes;
  ExtModule ext_y, ext_rs;
  ModuleMorphism restriction;       ///< Ext¹(Y,P) → Ext¹(R⊕S,P)
  ExtClass tau;
  ConnectingMaps connecting;        ///< for 0 → R⊕S → Y → Q → 0 against P
  ExtClass delta_tau;               ///< δ¹(τ) ∈ Ext²(Q,P)
  std::optional<std::vector<Int>> particular;  ///< some lift, when δ¹(τ) = 0
  std::vector<std::vector<Int>> kernel;        ///< generators of ker(restriction)
  std::vector<Int> moduli;                     ///< additive orders of Ext¹(Y,P) generators
};

inline LiftProblem lift_problem(const Diagram3x3& D) {
  YData y = build_Y(D);
  DiagramClasses cl = diagram_classes(D);
  const PresentedModule& P = D.P();
  ConnectingMaps cm = connecting_hom(y.ses, P);
  ExtModule ext_y = cm.ext_b[1], ext_rs = cm.ext_a[1];
  ModuleMorphism rho = cm.ladder[4];  // Ext¹(Y,P) → Ext¹(R⊕S,P)
  ExtClass tau = pull_back_class(cl.e, y.rs.projections[0], ext_rs) + pull_back_class(cl.h, y.rs.projections[1], ext_rs);
  ExtClass dtau = cm.apply_delta1(tau);
  LiftProblem lp{y, cl, ext_y, ext_rs, rho, tau, cm, dtau, std::nullopt, {}, {}};
  for (std::size_t k = 0; k < ext_y.generator_count(); ++k) {
    Int d = ext_y.generator_order(k);
    if (d == 0) throw Error(ErrorKind::Internal, "Ext^1(Y, P) has a free summand");
    lp.moduli.push_back(d);
  }
  if (dtau.is_zero()) {
    auto x = solve_modulo(rho.matrix(), ExactMatrix::column(P.ring(), tau.coords()), ext_rs.presentation().relations());
    if (!x) throw Error(ErrorKind::Internal, "τ has no lift although δ¹(τ) = 0");
    lp.particular = x->column_values(0);
  }
  Subobject ker = kernel(rho);
  for (std::size_t c = 0; c < ker.inclusion.matrix().cols(); ++c) lp.kernel.push_back(ker.inclusion.matrix().column_values(c));
  return lp;
}

/// Every lift of τ, canonical coordinates, when the coset has at most `limit` elements.
inline std::vector<ExtClass> all_lifts(const LiftProblem& lp, std::size_t limit = 4096) {
  std::vector<ExtClass> out;
  if (!lp.particular) return out;
  std::vector<std::vector<Int>> seen;
  std::vector<std::vector<Int>> frontier{lp.ext_y.canonical(*lp.particular)};
  seen.push_back(frontier.front());
  while (!frontier.empty()) {
    std::vector<std::vector<Int>> next;
    for (const auto& x : frontier)
      for (const auto& k : lp.kernel) {
        std::vector<Int> y(x.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + k[i];
        y = lp.ext_y.canonical(y);
        if (std::find(seen.begin(), seen.end(), y) != seen.end()) continue;
        if (seen.size() >= limit) throw Error(ErrorKind::BudgetExceeded, "too many lifts to enumerate");
        seen.push_back(y);
        next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::sort(seen.begin(), seen.end());
  for (const auto& s : seen) out.emplace_back(lp.ext_y, s);
  return out;
}

/// The lift with lexicographically smallest canonical coordinates.
inline ExtClass lex_min_lift(const LiftProblem& lp) {
  if (!lp.particular) throw Error(ErrorKind::InvalidArgument, "τ has no lift");
  return ExtClass(lp.ext_y, lex_min_in_coset(*lp.particular, lp.kernel, lp.moduli));
}

/// Realises X from a cocycle representing a lift and solves for i, j.
inline DiagramExtension extension_from_cocycle(const Diagram3x3& D, const LiftProblem& lp, const ExactMatrix& cocycle) {
  if (!lp.particular) throw Error(ErrorKind::InvalidArgument, "τ has no lift");
  ExtClass xi = ExtClass::of_cocycle(lp.ext_y, cocycle);
  ExtClass restricted(lp.ext_rs, (lp.restriction.matrix() * ExactMatrix::column(D.ring(), xi.coords())).column_values(0));
  if (restricted != lp.tau) throw Error(ErrorKind::InvalidArgument, "cocycle does not restrict to τ");
  auto ses = ses_of_cocycle(lp.ext_y, cocycle);
  const PresentedModule& X = ses.middle();
  ModuleMorphism m = compose(lp.y.p_f(), ses.project());
  ModuleMorphism n = compose(lp.y.p_g(), ses.project());
  // J: C → X with π∘J = (corner → Y)∘(C → corner) and J∘(P → C) = ι
  auto solve_leg = [&](const ModuleMorphism& p_to_c, const ModuleMorphism& to_corner, const ModuleMorphism& from_corner) {
    ModuleMorphism target = compose(from_corner, to_corner);
    std::vector<MorphismConstraint> cons{
        {ses.project().matrix(), ExactMatrix::identity(D.ring(), to_corner.source().generators()), target.matrix(),
         lp.y.Y()},
        {ExactMatrix::identity(D.ring(), X.generators()), p_to_c.matrix(), ses.inject().matrix(), X}};
    auto J = solve_morphism(to_corner.source(), X, cons);
    if (!J) throw Error(ErrorKind::Internal, "no leg into X satisfies the diagram");
    return *J;
  };
  ModuleMorphism i = solve_leg(D.mu, D.h_to_s, lp.y.from_s);
  ModuleMorphism j = solve_leg(D.nu, D.e_to_r, lp.y.from_r);
  return {X, i, j, m, n};
}

inline DiagramExtension extension_from_lift(const Diagram3x3& D, const LiftProblem& lp, const ExtClass& xi) {
  return extension_from_cocycle(D, lp, xi.cocycle());
}

struct NotExtendable {
  ObstructionReport obstruction;
  ExtClass delta_tau;  ///< connecting image of τ, equal to the obstruction
};

using ExtendResult = std::variant<DiagramExtension, NotExtendable>;

inline ExtendResult extend_diagram(const Diagram3x3& D) {
  LiftProblem lp = lift_problem(D);
  ObstructionReport ob = obstruction(D);
  // both routes to the obstruction must agree: δ¹(τ) = [E]∪[F] + [H]∪[G]
  if (lp.delta_tau != ob.baer_sum)
    throw Error(ErrorKind::Internal, "connecting image of τ " + lp.delta_tau.to_string() +
                                         " disagrees with the Yoneda obstruction " + ob.baer_sum.to_string());
  if (!lp.delta_tau.is_zero()) return NotExtendable{ob, lp.delta_tau};
  DiagramExtension x = extension_from_lift(D, lp, lex_min_lift(lp));
  auto rep = validate_extension(D, x);
  if (!rep.ok()) throw Error(ErrorKind::Internal, "constructed extension fails validation: " + rep.to_string());
  return x;
}

// ---------------------------------------------------------------------------
// variants of one extension

/// The same extension carried along an isomorphism X → X' with inverse X' → X.
inline DiagramExtension transport(const DiagramExtension& x, const ModuleMorphism& to, const ModuleMorphism& from) {
  return {to.target(), compose(to, x.i), compose(to, x.j), compose(x.m, from), compose(x.n, from)};
}

/// Another valid choice of legs: i + ι∘b∘(H→S) and j + ι∘c∘(E→R) for b: S → P, c: R → P.
inline DiagramExtension perturb_legs(const Diagram3x3& D, const DiagramExtension& x, const ModuleMorphism& b,
                                     const ModuleMorphism& c) {
  ModuleMorphism iota = compose(x.i, D.mu);
  return {x.X, x.i + compose(iota, compose(b, D.h_to_s)), x.j + compose(iota, compose(c, D.e_to_r)), x.m, x.n};
}

// ---------------------------------------------------------------------------
// uniqueness

struct UniquenessReport {
  bool unique = false;
  ModuleMorphism alpha;  ///< Hom(R⊕S, P) → Ext¹(Q, P) on presentations
  Quotient cokernel;
};

inline UniquenessReport check_uniqueness(const Diagram3x3& D) {
  YData y = build_Y(D);
  ConnectingMaps cm = connecting_hom(y.ses, D.P());
  Quotient q = cokernel(cm.alpha);
  return {q.module.is_zero(), cm.alpha, q};
}

/// Λ: X → P with Λ∘inclusion = λ, or nullopt when no such extension exists.
inline std::optional<ModuleMorphism> extend_homomorphism(const ModuleMorphism& lambda, const ModuleMorphism& inclusion) {
  if (!lambda.source().same_presentation(inclusion.source()))
    throw Error(ErrorKind::ArgumentMismatch, "λ and the inclusion have different sources");
  const PresentedModule& P = lambda.target();
  MorphismConstraint c{ExactMatrix::identity(P.ring(), P.generators()), inclusion.matrix(), lambda.matrix(), P};
  auto L = solve_morphism(inclusion.target(), P, {c});
  if (!L) return std::nullopt;
  if (!compose(*L, inclusion).equals(lambda)) throw Error(ErrorKind::Internal, "extension of λ does not restrict to λ");
  return L;
}

enum class IsoFailure { ClassesDiffer, LambdaNotExtendable };

inline const char* to_string(IsoFailure f) {
  return f == IsoFailure::ClassesDiffer ? "ClassesDiffer" : "LambdaNotExtendable";
}

using IsoResult = std::variant<ModuleMorphism, IsoFailure>;

namespace detail {

inline ModuleMorphism to_y(const YData& y, const DiagramExtension& x) {
  auto p = factor_through_mono(y.pb.inclusion, pair(y.pb.sum, x.m, x.n));
  if (!p) throw Error(ErrorKind::Internal, "(m, n) does not land in the pullback");
  return *p;
}

}  // namespace detail

/// Isomorphism φ′: X1 → X2 with φ′∘i1 = i2, φ′∘j1 = j2, m2∘φ′ = m1, n2∘φ′ = n1.
inline IsoResult compatible_isomorphism(const Diagram3x3& D, const DiagramExtension& x1, const DiagramExtension& x2) {
  for (const auto* x : {&x1, &x2}) {
    auto rep = validate_extension(D, *x);
    if (!rep.ok()) throw Error(ErrorKind::InvalidArgument, "extension fails validation: " + rep.to_string());
  }
  YData y = build_Y(D);
  const PresentedModule& P = D.P();
  // (a) both X_k are extensions of Y by P; compare classes, then realise the equivalence
  ModuleMorphism pi1 = detail::to_y(y, x1), pi2 = detail::to_y(y, x2);
  ModuleMorphism iota1 = compose(x1.i, D.mu), iota2 = compose(x2.i, D.mu);
  ExtModule ext_y = ext_module(1, y.Y(), P);
  ExtClass c1 = class_of_ses(ShortExactSequence::make(iota1, pi1), ext_y);
  ExtClass c2 = class_of_ses(ShortExactSequence::make(iota2, pi2), ext_y);
  if (c1 != c2) return IsoFailure::ClassesDiffer;
  const RingSpec& R = D.ring();
  auto phi = solve_morphism(
      x1.X, x2.X,
      {{pi2.matrix(), ExactMatrix::identity(R, x1.X.generators()), pi1.matrix(), y.Y()},
       {ExactMatrix::identity(R, x2.X.generators()), iota1.matrix(), iota2.matrix(), x2.X}});
  if (!phi) throw Error(ErrorKind::Internal, "equal classes but no equivalence of extensions found");
  // (b) ĩ = i2 − φ∘i1 and j̃ = j2 − φ∘j1 land in P2 = ι2(P)
  auto it = factor_through_mono(iota2, x2.i - compose(*phi, x1.i));
  auto jt = factor_through_mono(iota2, x2.j - compose(*phi, x1.j));
  if (!it || !jt) throw Error(ErrorKind::Internal, "correction terms leave P2");
  // (c) λ = ĩ + j̃ on E1 + H1 = image of E ⊕ H → X1, vanishing on P1
  DirectSum eh = direct_sum(D.E(), D.H());
  ImageObject sum = image(copair(eh, x1.j, x1.i));
  auto lambda = factor_through_epi(sum.corestriction, copair(eh, *jt, *it));
  if (!lambda) throw Error(ErrorKind::Internal, "λ is not well defined on E1 + H1");
  auto on_p1 = factor_through_mono(sum.inclusion, iota1);
  if (!on_p1 || !compose(*lambda, *on_p1).is_zero()) throw Error(ErrorKind::Internal, "λ does not vanish on P1");
  // (d) extend λ to η: X1 → P
  auto eta = extend_homomorphism(*lambda, sum.inclusion);
  if (!eta) return IsoFailure::LambdaNotExtendable;
  // (e) φ′ = φ + ι2∘η
  ModuleMorphism out = *phi + compose(iota2, *eta);
  if (!compose(out, x1.i).equals(x2.i) || !compose(out, x1.j).equals(x2.j) || !compose(x2.m, out).equals(x1.m) ||
      !compose(x2.n, out).equals(x1.n) || !is_isomorphism(out))
    throw Error(ErrorKind::Internal, "compatible isomorphism fails its defining equations");
  return out;
}

// ---------------------------------------------------------------------------
// injectivity

/// Over Z/m: every p-primary cyclic summand has the full order p^v_p(m). Over Z: only 0.
inline bool is_injective_module(const PresentedModule& P) {
  auto st = P.structure();
  const RingSpec& R = P.ring();
  if (R.is_integers()) return st.is_zero();
  const Int& m = R.modulus();
  std::vector<Int> factors = st.invariant_factors;
  for (std::size_t k = 0; k < st.free_rank; ++k) factors.push_back(m);
  for (const auto& p : prime_divisors(m)) {
    const auto full = valuation(m, p);
    for (const auto& d : factors) {
      const auto v = valuation(d, p);
      if (v != 0 && v != full) return false;
    }
  }
  return true;
}

}  // namespace hexext
