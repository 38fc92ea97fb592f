#pragma once

#include "hexext/diagram.hpp"

#include <variant>

namespace hexext {

/// Outer frame of a hexagon with two exact four-term paths sharing A1 and A4:
///
///        B1 --topB--> B2
///   alpha/              \r
///     A1                 A4
///   beta \              /s
///        A2 ----d---> A3
struct HexagonFrame {
  ModuleMorphism alpha;  ///< A1 → B1
  ModuleMorphism beta;   ///< A1 → A2
  ModuleMorphism topB;   ///< B1 → B2
  ModuleMorphism d;      ///< A2 → A3
  ModuleMorphism r;      ///< B2 → A4
  ModuleMorphism s;      ///< A3 → A4

  const PresentedModule& A1() const { return alpha.source(); }
  const PresentedModule& B1() const { return alpha.target(); }
  const PresentedModule& B2() const { return topB.target(); }
  const PresentedModule& A2() const { return beta.target(); }
  const PresentedModule& A3() const { return d.target(); }
  const PresentedModule& A4() const { return r.target(); }
};

inline ValidationReport validate_frame(const HexagonFrame& f) {
  ValidationReport rep;
  auto link = [&](const std::string& name, const ModuleMorphism& a, const ModuleMorphism& b) {
    if (!a.target().same_presentation(b.source())) {
      rep.violations.push_back({name, "maps are not composable"});
      return false;
    }
    return true;
  };
  bool shapes = link("A1-B1-B2", f.alpha, f.topB) & link("B1-B2-A4", f.topB, f.r) & link("A1-A2-A3", f.beta, f.d) &
                link("A2-A3-A4", f.d, f.s);
  if (!f.alpha.source().same_presentation(f.beta.source())) {
    rep.violations.push_back({"A1", "alpha and beta have different sources"});
    shapes = false;
  }
  if (!f.r.target().same_presentation(f.s.target())) {
    rep.violations.push_back({"A4", "r and s have different targets"});
    shapes = false;
  }
  if (!shapes) return rep;
  auto exact_at = [&](const std::string& name, const ModuleMorphism& a, const ModuleMorphism& b) {
    auto e = is_exact({a, b}, false, false);
    if (!e.exact()) rep.violations.push_back({name, to_string(e.positions.front().status)});
  };
  exact_at("B1", f.alpha, f.topB);
  exact_at("B2", f.topB, f.r);
  exact_at("A2", f.beta, f.d);
  exact_at("A3", f.d, f.s);
  // two monomorphisms into the same module with equal images
  auto same_sub = [](const ModuleMorphism& x, const ModuleMorphism& y) {
    return factor_through_mono(x, y).has_value() && factor_through_mono(y, x).has_value();
  };
  if (!same_sub(kernel(f.alpha).inclusion, kernel(f.beta).inclusion))
    rep.violations.push_back({"A1", "ker(alpha) differs from ker(beta)"});
  if (!same_sub(image(f.r).inclusion, image(f.s).inclusion)) rep.violations.push_back({"A4", "im(r) differs from im(s)"});
  return rep;
}

/// A frame folded into a 3×3 diagram, with the identifications needed to unfold it.
struct FoldedFrame {
  HexagonFrame frame;
  Diagram3x3 diagram;
  ModuleMorphism to_p;    ///< A1 → P = A1 / ker(alpha)
  ModuleMorphism r_incl;  ///< R = im(d) → A3
  ModuleMorphism s_incl;  ///< S = im(topB) → B2
  ModuleMorphism q_incl;  ///< Q = im(s) → A4
};

/// P = A1/ker(alpha), E = A2, R = im(d), H = B1, F = A3, S = im(topB), G = B2, Q = im(s).
inline FoldedFrame fold_frame(const HexagonFrame& f) {
  auto rep = validate_frame(f);
  if (!rep.ok())
    throw Error(ErrorKind::FrameInvalid, rep.violations.front().where + ": " + rep.violations.front().what);
  Subobject ka = kernel(f.alpha);
  Quotient p = quotient(f.A1(), ka.inclusion.matrix());
  auto mu = factor_through_epi(p.projection, f.alpha);
  auto nu = factor_through_epi(p.projection, f.beta);
  if (!mu || !nu) throw Error(ErrorKind::Internal, "alpha or beta does not descend to A1/ker(alpha)");
  ImageObject R = image(f.d), S = image(f.topB), Q = image(f.s);
  auto r_to_q = factor_through_mono(Q.inclusion, f.r);
  if (!r_to_q) throw Error(ErrorKind::Internal, "r does not land in im(s)");
  Diagram3x3 D{*nu, R.corestriction, S.inclusion, *r_to_q, *mu, S.corestriction, R.inclusion, Q.corestriction};
  auto drep = validate_diagram1(D);
  if (!drep.ok()) throw Error(ErrorKind::Internal, "folded diagram is invalid: " + drep.to_string());
  return {f, D, p.projection, R.inclusion, S.inclusion, Q.inclusion};
}

/// Rebuilds the frame maps from the folded diagram.
inline HexagonFrame unfold_frame(const FoldedFrame& ff) {
  const Diagram3x3& D = ff.diagram;
  return {compose(D.mu, ff.to_p),         compose(D.nu, ff.to_p),          compose(ff.s_incl, D.h_to_s),
          compose(D.r_to_f, D.e_to_r),    compose(ff.q_incl, D.g_to_q),    compose(ff.q_incl, D.f_to_q)};
}

/// Center module with i: A2 → X, j: B1 → X, c: X → B2, curv: X → A3.
struct SolvedHexagon {
  HexagonFrame frame;
  PresentedModule center;
  ModuleMorphism i, j, c, curv;
};

inline SolvedHexagon hexagon_of_extension(const FoldedFrame& ff, const DiagramExtension& x) {
  return {ff.frame, x.X, x.j, x.i, x.n, x.m};
}

inline DiagramExtension extension_of_hexagon(const SolvedHexagon& h) { return {h.center, h.j, h.i, h.curv, h.c}; }

using HexagonResult = std::variant<SolvedHexagon, NotExtendable>;

inline HexagonResult solve_hexagon(const HexagonFrame& f) {
  FoldedFrame ff = fold_frame(f);
  ExtendResult r = extend_diagram(ff.diagram);
  if (auto* ne = std::get_if<NotExtendable>(&r)) return *ne;
  return hexagon_of_extension(ff, std::get<DiagramExtension>(r));
}

inline ValidationReport verify_hexagon(const SolvedHexagon& h) {
  ValidationReport rep;
  const HexagonFrame& f = h.frame;
  auto fits = [&](const std::string& name, const ModuleMorphism& m, const PresentedModule& s,
                  const PresentedModule& t) {
    bool ok = m.source().same_presentation(s) && m.target().same_presentation(t);
    if (!ok) rep.violations.push_back({name, "has the wrong source or target"});
    return ok;
  };
  bool shapes = fits("i", h.i, f.A2(), h.center) & fits("j", h.j, f.B1(), h.center) &
                fits("c", h.c, h.center, f.B2()) & fits("curv", h.curv, h.center, f.A3());
  if (!shapes) return rep;
  detail::check_ses(rep, "diagonal B1-X-A3", h.j, h.curv);
  detail::check_ses(rep, "diagonal A2-X-B2", h.i, h.c);
  detail::check_square(rep, "c∘j = topB", compose(h.c, h.j), f.topB);
  detail::check_square(rep, "curv∘i = d", compose(h.curv, h.i), f.d);
  detail::check_square(rep, "i∘beta = j∘alpha", compose(h.i, f.beta), compose(h.j, f.alpha));
  detail::check_square(rep, "s∘curv = r∘c", compose(f.s, h.curv), compose(f.r, h.c));
  return rep;
}

/// φ: X1 → X2 with φ∘i1 = i2, φ∘j1 = j2, c2∘φ = c1, curv2∘φ = curv1.
inline IsoResult hexagon_compatible_iso(const SolvedHexagon& h1, const SolvedHexagon& h2) {
  FoldedFrame ff = fold_frame(h1.frame);
  auto r = compatible_isomorphism(ff.diagram, extension_of_hexagon(h1), extension_of_hexagon(h2));
  if (auto* phi = std::get_if<ModuleMorphism>(&r)) {
    if (!compose(*phi, h1.i).equals(h2.i) || !compose(*phi, h1.j).equals(h2.j) || !compose(h2.c, *phi).equals(h1.c) ||
        !compose(h2.curv, *phi).equals(h1.curv))
      throw Error(ErrorKind::Internal, "hexagon isomorphism fails its defining equations");
  }
  return r;
}

}  // namespace hexext
