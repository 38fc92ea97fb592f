#pragma once

#include "hexext/resolution.hpp"

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace hexext {

// Cochains Hom(F_n, P) are stored as gP × rank_n matrices (column j = image of
// the j-th basis element) and vectorised column-major. The cochain differential
// Hom(F_n, P) → Hom(F_{n+1}, P) is φ ↦ φ·d_{n+1}; connecting maps carry the
// sign (−1)^(n+1) when leaving degree n.

/// Ext^i(Q, P) for i ∈ {0, 1, 2}, presented as the homology of Hom(F•, P).
class ExtModule {
 public:
  ExtModule() = default;

  int degree() const { return d_->degree; }
  const PresentedModule& contravariant() const { return d_->Q; }  ///< Q
  const PresentedModule& coefficients() const { return d_->P; }   ///< P
  const FreeResolution& resolution() const { return *d_->res; }
  const ResolutionPtr& resolution_ptr() const { return d_->res; }
  const RingSpec& ring() const { return d_->P.ring(); }

  /// Diagonal presentation of the homology; generator k has order orders()[k] (0 = free).
  const PresentedModule& presentation() const { return d_->H; }
  const std::vector<Int>& orders() const { return d_->orders; }
  std::size_t cochain_rank() const { return d_->res->rank[static_cast<std::size_t>(degree())]; }

  bool same_as(const ExtModule& o) const {
    return d_ == o.d_ || (degree() == o.degree() && d_->Q.same_presentation(o.d_->Q) &&
                          d_->P.same_presentation(o.d_->P));
  }

  /// Canonical coordinates: reduced modulo each generator's order.
  std::vector<Int> canonical(const std::vector<Int>& coords) const {
    if (coords.size() != d_->orders.size()) throw Error(ErrorKind::InvalidArgument, "coordinate length mismatch");
    std::vector<Int> out(coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) {
      out[k] = ring().reduce(coords[k]);
      if (d_->orders[k] != 0) out[k] = mod_floor(out[k], d_->orders[k]);
    }
    return out;
  }

  bool is_cocycle(const ExactMatrix& phi) const {
    check_cochain_shape(phi);
    ExactMatrix next = phi * d_->res->differential(degree() + 1);
    return P_zero(next);
  }

  /// Coordinates of the class of a cocycle F_degree → P.
  std::vector<Int> coords_of_cocycle(const ExactMatrix& phi) const {
    if (!is_cocycle(phi)) throw Error(ErrorKind::InvalidArgument, "cochain is not a cocycle");
    ExactMatrix v = vec(phi);
    auto z = d_->cocycle_solver->particular(v);
    if (!z) throw Error(ErrorKind::Internal, "cocycle outside the computed cocycle module");
    ExactMatrix zz = z->block(0, 0, d_->Z.generators(), 1);
    ExactMatrix h = d_->proj * zz;
    return canonical(h.column_values(0));
  }

  /// A representing cocycle for the given coordinates.
  ExactMatrix cocycle_of(const std::vector<Int>& coords) const {
    ExactMatrix c = ExactMatrix::column(ring(), canonical(coords));
    ExactMatrix v = d_->lift * c;
    return unvec(v, d_->P.generators(), cochain_rank());
  }

  /// Cocycle representing the k-th presentation generator.
  ExactMatrix basis_cocycle(std::size_t k) const {
    std::vector<Int> e(d_->orders.size(), Int(0));
    e.at(k) = 1;
    return cocycle_of(e);
  }

  std::size_t generator_count() const { return d_->orders.size(); }

  /// Additive order of generator k: its torsion order, the modulus for a free
  /// summand over Z/m, or 0 for a free summand over Z.
  Int generator_order(std::size_t k) const {
    const Int& d = d_->orders.at(k);
    return (d == 0 && !ring().is_integers()) ? ring().modulus() : d;
  }

  std::string to_string() const {
    return "Ext^" + std::to_string(degree()) + " = " + d_->H.to_string();
  }

  friend ExtModule ext_module(int degree, const PresentedModule& Q, const PresentedModule& P);
  friend ExtModule ext_module(int degree, const ResolutionPtr& res, const PresentedModule& P);

 private:
  struct Data {
    int degree = 0;
    PresentedModule Q, P;
    ResolutionPtr res;
    PresentedModule C;                   ///< Hom(F_degree, P) as P^rank
    PresentedModule Z;                   ///< cocycles
    PresentedModule H;                   ///< homology, diagonal
    std::vector<Int> orders;
    ExactMatrix incl;                    ///< Z → C
    ExactMatrix proj;                    ///< Z → H
    ExactMatrix lift;                    ///< H gens → C (vectorised cocycles)
    std::shared_ptr<LinearSolver> cocycle_solver;  ///< [incl | rel_C]
  };

  void check_cochain_shape(const ExactMatrix& phi) const {
    if (phi.rows() != d_->P.generators() || phi.cols() != cochain_rank())
      throw Error(ErrorKind::InvalidArgument, "cochain has the wrong shape");
  }
  bool P_zero(const ExactMatrix& m) const { return d_->P.is_zero_element(m); }

  std::shared_ptr<const Data> d_;
};

namespace detail {

// P^n presented by n diagonal copies of P's relations (column-major vectorisation).
inline PresentedModule power(const PresentedModule& P, std::size_t n) {
  return PresentedModule(P.ring(), P.generators() * n, kron(ExactMatrix::identity(P.ring(), n), P.relations()));
}

// Matrix of φ ↦ φ·D on vectorised cochains.
inline ExactMatrix cochain_map(const ExactMatrix& D, std::size_t gP) {
  return kron(D.transpose(), ExactMatrix::identity(D.ring(), gP));
}

}  // namespace detail

inline ExtModule ext_module(int degree, const ResolutionPtr& res, const PresentedModule& P) {
  if (degree < 0 || degree > 2) throw Error(ErrorKind::InvalidArgument, "Ext degree must be 0, 1 or 2");
  if (res->ring() != P.ring()) throw Error(ErrorKind::ArgumentMismatch, "modules over different rings");
  const RingSpec& R = P.ring();
  const std::size_t gP = P.generators();
  const std::size_t n = static_cast<std::size_t>(degree);
  auto data = std::make_shared<ExtModule::Data>();
  data->degree = degree;
  data->Q = res->target;
  data->P = P;
  data->res = res;
  data->C = detail::power(P, res->rank[n]);
  PresentedModule Cnext = detail::power(P, res->rank[n + 1]);
  ModuleMorphism dnext(ModuleMorphism::Unchecked{}, data->C, Cnext,
                       detail::cochain_map(res->differential(degree + 1), gP));
  Subobject Z = kernel(dnext);
  data->Z = Z.module;
  data->incl = Z.inclusion.matrix();
  // coboundaries: image of Hom(F_{n-1}, P)
  ExactMatrix B(R, gP * res->rank[n], 0);
  if (degree > 0) B = detail::cochain_map(res->differential(degree), gP);
  ExactMatrix Bz(R, Z.module.generators(), B.cols());
  if (B.cols() > 0) {
    auto sol = solve_modulo(data->incl, B, data->C.relations());
    if (!sol) throw Error(ErrorKind::Internal, "coboundaries are not cocycles");
    Bz = *sol;
  }
  auto H = simplify(PresentedModule(R, Z.module.generators(), hstack(Z.module.relations(), Bz)));
  data->H = H.module;
  data->orders = H.orders;
  data->proj = H.to_new.matrix();
  ModuleMorphism projm(ModuleMorphism::Unchecked{}, H.to_new.source(), H.module, data->proj);
  data->lift = data->incl * lift_through_epi(projm);
  data->cocycle_solver = std::make_shared<LinearSolver>(hstack(data->incl, data->C.relations()));
  ExtModule e;
  e.d_ = std::move(data);
  return e;
}

inline ExtModule ext_module(int degree, const PresentedModule& Q, const PresentedModule& P) {
  return ext_module(degree, make_resolution(Q), P);
}

/// An element of an Ext module in canonical coordinates.
class ExtClass {
 public:
  ExtClass() = default;
  ExtClass(ExtModule parent, const std::vector<Int>& coords)
      : parent_(std::move(parent)), coords_(parent_.canonical(coords)) {}

  static ExtClass zero(const ExtModule& parent) {
    return ExtClass(parent, std::vector<Int>(parent.generator_count(), Int(0)));
  }
  static ExtClass of_cocycle(const ExtModule& parent, const ExactMatrix& phi) {
    return ExtClass(parent, parent.coords_of_cocycle(phi));
  }

  const ExtModule& parent() const { return parent_; }
  const std::vector<Int>& coords() const { return coords_; }
  ExactMatrix cocycle() const { return parent_.cocycle_of(coords_); }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const ExtClass& a, const ExtClass& b) {
    a.check_same(b);
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const ExtClass& a, const ExtClass& b) { return !(a == b); }

  friend ExtClass operator+(const ExtClass& a, const ExtClass& b) {
    a.check_same(b);
    std::vector<Int> c(a.coords_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coords_[k] + b.coords_[k];
    return ExtClass(a.parent_, c);
  }
  friend ExtClass operator-(const ExtClass& a) {
    std::vector<Int> c(a.coords_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = -a.coords_[k];
    return ExtClass(a.parent_, c);
  }
  friend ExtClass operator-(const ExtClass& a, const ExtClass& b) { return a + (-b); }
  friend ExtClass operator*(const Int& s, const ExtClass& a) {
    std::vector<Int> c(a.coords_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = s * a.coords_[k];
    return ExtClass(a.parent_, c);
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < coords_.size(); ++k) s += (k ? ", " : "") + coords_[k].str();
    return s + ")";
  }

 private:
  void check_same(const ExtClass& b) const {
    if (!parent_.same_as(b.parent_)) throw Error(ErrorKind::ArgumentMismatch, "classes live in different Ext modules");
  }

  ExtModule parent_;
  std::vector<Int> coords_;
};

// ---------------------------------------------------------------------------
// degree 0

/// Hom(Q, P) element as a degree-0 class.
inline ExtClass class_of_hom(const ExtModule& hom, const ModuleMorphism& h) {
  if (hom.degree() != 0) throw Error(ErrorKind::InvalidArgument, "class_of_hom needs Ext^0");
  if (!h.source().same_presentation(hom.contravariant()) || !h.target().same_presentation(hom.coefficients()))
    throw Error(ErrorKind::ArgumentMismatch, "morphism does not match Hom(Q, P)");
  return ExtClass::of_cocycle(hom, h.matrix() * hom.resolution().aug);
}

inline ModuleMorphism hom_of_class(const ExtClass& c) {
  const ExtModule& e = c.parent();
  if (e.degree() != 0) throw Error(ErrorKind::InvalidArgument, "hom_of_class needs Ext^0");
  return ModuleMorphism(e.contravariant(), e.coefficients(), c.cocycle() * e.resolution().section);
}

// ---------------------------------------------------------------------------
// extensions ↔ classes

/// Class in Ext^1(right, left) of a short exact sequence.
inline ExtClass class_of_ses(const ShortExactSequence& s, const ExtModule& ext) {
  if (ext.degree() != 1 || !ext.contravariant().same_presentation(s.right()) ||
      !ext.coefficients().same_presentation(s.left()))
    throw Error(ErrorKind::ArgumentMismatch, "sequence ends do not match the Ext module");
  const FreeResolution& F = ext.resolution();
  ExactMatrix psi0 = lift_through_epi(s.project()) * F.aug;
  auto phi = solve_modulo(s.inject().matrix(), psi0 * F.d1, s.middle().relations());
  if (!phi) throw Error(ErrorKind::NotExact, "lift of the resolution leaves the image of the injection");
  return ExtClass::of_cocycle(ext, *phi);
}

inline ExtClass class_of_ses(const ShortExactSequence& s) {
  if (!s.check().exact()) throw Error(ErrorKind::NotExact, "sequence is not short exact");
  return class_of_ses(s, ext_module(1, s.right(), s.left()));
}

/// Extension 0 → P → X → Q → 0 with X = (P ⊕ F0) / (rel_P, (φ, −d1)) for a degree-1 cocycle φ.
inline ShortExactSequence ses_of_cocycle(const ExtModule& ext, const ExactMatrix& phi) {
  if (ext.degree() != 1) throw Error(ErrorKind::InvalidArgument, "extensions exist for degree 1 only");
  if (!ext.is_cocycle(phi)) throw Error(ErrorKind::InvalidArgument, "cochain is not a cocycle");
  const RingSpec& R = ext.ring();
  const PresentedModule& P = ext.coefficients();
  const FreeResolution& F = ext.resolution();
  const std::size_t gP = P.generators(), k0 = F.rank[0];
  ExactMatrix top = hstack(P.relations(), phi);
  ExactMatrix bottom = hstack(ExactMatrix(R, k0, P.relations().cols()), -F.d1);
  PresentedModule X(R, gP + k0, vstack(top, bottom));
  ExactMatrix iota = vstack(ExactMatrix::identity(R, gP), ExactMatrix(R, k0, gP));
  ExactMatrix pi = hstack(ExactMatrix(R, ext.contravariant().generators(), gP), F.aug);
  ModuleMorphism inj(P, X, iota), proj(X, ext.contravariant(), pi);
  return ShortExactSequence::make(inj, proj);
}

inline ShortExactSequence ses_of_class(const ExtClass& c) { return ses_of_cocycle(c.parent(), c.cocycle()); }

// ---------------------------------------------------------------------------
// functoriality

/// Pullback of a class along f: Q' → Q (contravariant argument).
inline ExtClass pull_back_class(const ExtClass& c, const ModuleMorphism& f, const ExtModule& target_ext) {
  const ExtModule& src = c.parent();
  if (!f.target().same_presentation(src.contravariant()) || !f.source().same_presentation(target_ext.contravariant()) ||
      !target_ext.coefficients().same_presentation(src.coefficients()) || target_ext.degree() != src.degree())
    throw Error(ErrorKind::ArgumentMismatch, "transport does not match the Ext modules");
  auto lift = lift_chain_map(f, target_ext.resolution(), src.resolution());
  return ExtClass::of_cocycle(target_ext, c.cocycle() * lift.f[static_cast<std::size_t>(src.degree())]);
}

/// Pushforward of a class along g: P → P' (covariant argument).
inline ExtClass push_forward_class(const ExtClass& c, const ModuleMorphism& g, const ExtModule& target_ext) {
  const ExtModule& src = c.parent();
  if (!g.source().same_presentation(src.coefficients()) || !g.target().same_presentation(target_ext.coefficients()) ||
      !target_ext.contravariant().same_presentation(src.contravariant()) || target_ext.degree() != src.degree())
    throw Error(ErrorKind::ArgumentMismatch, "transport does not match the Ext modules");
  return ExtClass::of_cocycle(target_ext, g.matrix() * c.cocycle());
}

/// Ext^n(Q, P) → Ext^n(Q', P) induced by f: Q' → Q, as a morphism of presentations.
inline ModuleMorphism ext_map_contravariant(const ModuleMorphism& f, const ExtModule& src, const ExtModule& dst) {
  std::vector<std::vector<Int>> cols;
  for (std::size_t k = 0; k < src.generator_count(); ++k) {
    std::vector<Int> e(src.generator_count(), Int(0));
    e[k] = 1;
    cols.push_back(pull_back_class(ExtClass(src, e), f, dst).coords());
  }
  return ModuleMorphism(src.presentation(), dst.presentation(),
                        ExactMatrix::from_columns(src.ring(), dst.generator_count(), cols));
}

/// Ext^n(Q, P) → Ext^n(Q, P') induced by g: P → P'.
inline ModuleMorphism ext_map_covariant(const ModuleMorphism& g, const ExtModule& src, const ExtModule& dst) {
  std::vector<std::vector<Int>> cols;
  for (std::size_t k = 0; k < src.generator_count(); ++k) {
    std::vector<Int> e(src.generator_count(), Int(0));
    e[k] = 1;
    cols.push_back(push_forward_class(ExtClass(src, e), g, dst).coords());
  }
  return ModuleMorphism(src.presentation(), dst.presentation(),
                        ExactMatrix::from_columns(src.ring(), dst.generator_count(), cols));
}

// ---------------------------------------------------------------------------
// Baer sum

/// Explicit Baer sum: pullback over Q, then the quotient by the skew diagonal copy of P.
inline ShortExactSequence baer_sum_explicit(const ShortExactSequence& s1, const ShortExactSequence& s2) {
  if (!s1.left().same_presentation(s2.left()) || !s1.right().same_presentation(s2.right()))
    throw Error(ErrorKind::EndsMismatch, "Baer sum needs equal end modules");
  Pullback pb = pullback(s1.project(), s2.project());
  // skew diagonal p ↦ (ι1 p, −ι2 p), and the first copy p ↦ (ι1 p, 0)
  ModuleMorphism skew = pair(pb.sum, s1.inject(), -s2.inject());
  ModuleMorphism first = pair(pb.sum, s1.inject(), ModuleMorphism::zero(s1.left(), s2.middle()));
  auto skew_y = factor_through_mono(pb.inclusion, skew);
  auto first_y = factor_through_mono(pb.inclusion, first);
  if (!skew_y || !first_y) throw Error(ErrorKind::Internal, "copies of P do not lie in the pullback");
  Quotient q = quotient(pb.module, skew_y->matrix());
  ModuleMorphism inj = compose(q.projection, *first_y);
  auto proj = factor_through_epi(q.projection, compose(s1.project(), pb.to_a));
  if (!proj) throw Error(ErrorKind::Internal, "projection does not descend to the Baer quotient");
  return ShortExactSequence::make(inj, *proj);
}

/// Baer sum on cocycles: coordinate addition.
inline ExtClass baer_sum_cocycle(const ExtClass& a, const ExtClass& b) { return a + b; }

// ---------------------------------------------------------------------------
// Yoneda product

/// e ∪ g ∈ Ext^2(Q, P) for e ∈ Ext^1(S, P) and g ∈ Ext^1(Q, S).
inline ExtClass yoneda_product(const ExtClass& e, const ExtClass& g, const ExtModule& ext2) {
  const ExtModule& E = e.parent();
  const ExtModule& G = g.parent();
  if (E.degree() != 1 || G.degree() != 1 || ext2.degree() != 2)
    throw Error(ErrorKind::InvalidArgument, "Yoneda product takes two degree-1 classes into degree 2");
  if (!E.contravariant().same_presentation(G.coefficients()))
    throw Error(ErrorKind::ArgumentMismatch, "middle modules differ");
  if (!ext2.contravariant().same_presentation(G.contravariant()) ||
      !ext2.coefficients().same_presentation(E.coefficients()))
    throw Error(ErrorKind::ArgumentMismatch, "target Ext module does not match");
  const FreeResolution& FS = E.resolution();
  const FreeResolution& FQ = ext2.resolution();
  // γ'0 : F1^Q → F0^S lifting γ, then γ'1 : F2^Q → F1^S
  ExactMatrix gamma = g.cocycle();
  ExactMatrix g0 = FS.section * gamma;
  // G's resolution of Q may be a different object with the same shape as ext2's
  auto g1 = LinearSolver(FS.d1).solve_columns(g0 * FQ.d2);
  if (!g1) throw Error(ErrorKind::Internal, "Yoneda lift failed");
  return ExtClass::of_cocycle(ext2, e.cocycle() * *g1);
}

inline ExtClass yoneda_product(const ExtClass& e, const ExtClass& g) {
  return yoneda_product(e, g, ext_module(2, g.parent().resolution_ptr(), e.parent().coefficients()));
}

/// 0 → P → X2 → X1 → Q → 0 as the splice of 0→P→X2→S→0 and 0→S→X1→Q→0.
struct YonedaTwoExtension {
  ShortExactSequence left;   ///< 0 → P → X2 → S → 0
  ShortExactSequence right;  ///< 0 → S → X1 → Q → 0

  std::vector<ModuleMorphism> chain() const {
    return {left.inject(), compose(right.inject(), left.project()), right.project()};
  }
  ExactnessReport check() const { return is_exact(chain(), true, true); }
};

inline YonedaTwoExtension splice(const ShortExactSequence& left, const ShortExactSequence& right) {
  if (!left.right().same_presentation(right.left()))
    throw Error(ErrorKind::ArgumentMismatch, "sequences do not share the middle module");
  return {left, right};
}

/// Degree-2 class of a spliced extension, by lifting the resolution of Q through it.
inline ExtClass class_of_two_extension(const YonedaTwoExtension& y, const ExtModule& ext2) {
  const FreeResolution& F = ext2.resolution();
  const auto& r = y.right;
  const auto& l = y.left;
  ExactMatrix psi0 = lift_through_epi(r.project()) * F.aug;
  auto s = solve_modulo(r.inject().matrix(), psi0 * F.d1, r.middle().relations());
  if (!s) throw Error(ErrorKind::NotExact, "right sequence is not exact");
  ExactMatrix psi1 = lift_through_epi(l.project()) * *s;
  auto phi = solve_modulo(l.inject().matrix(), psi1 * F.d2, l.middle().relations());
  if (!phi) throw Error(ErrorKind::NotExact, "left sequence is not exact");
  return ExtClass::of_cocycle(ext2, *phi);
}

// ---------------------------------------------------------------------------
// long exact sequence in the first variable

/// Connecting maps of Hom(−, P) applied to 0 → A → B → C → 0, with the ladder
/// Hom(C,P) → Hom(B,P) → Hom(A,P) → Ext^1(C,P) → ... → Ext^2(A,P).
struct ConnectingMaps {
  std::array<ExtModule, 3> ext_c, ext_b, ext_a;  ///< indexed by degree
  ModuleMorphism alpha;                          ///< Hom(A,P) → Ext^1(C,P)
  ModuleMorphism delta1;                         ///< Ext^1(A,P) → Ext^2(C,P)
  std::vector<ModuleMorphism> ladder;            ///< the eight maps above, in order
  ExactnessReport exactness;                     ///< with a zero before Hom(C,P)
  ExactMatrix theta1;                            ///< F1(C) → A, representing the class of the sequence

  ExtClass apply_alpha(const ExtClass& h) const { return apply(alpha, ext_c[1], h); }
  ExtClass apply_delta1(const ExtClass& e) const { return apply(delta1, ext_c[2], e); }

 private:
  static ExtClass apply(const ModuleMorphism& m, const ExtModule& dst, const ExtClass& x) {
    return ExtClass(dst, (m.matrix() * ExactMatrix::column(m.ring(), x.coords())).column_values(0));
  }
};

/// Staircase chase through the horseshoe resolution of B built from those of A and C.
inline ConnectingMaps connecting_hom(const ShortExactSequence& s, const PresentedModule& P) {
  if (!s.check().exact()) throw Error(ErrorKind::NotExact, "sequence is not short exact");
  ConnectingMaps out;
  ResolutionPtr FA = make_resolution(s.left()), FB = make_resolution(s.middle()), FC = make_resolution(s.right());
  for (int n = 0; n <= 2; ++n) {
    out.ext_a[static_cast<std::size_t>(n)] = ext_module(n, FA, P);
    out.ext_b[static_cast<std::size_t>(n)] = ext_module(n, FB, P);
    out.ext_c[static_cast<std::size_t>(n)] = ext_module(n, FC, P);
  }
  // horseshoe twists t1 : F1(C) → F0(A), t2 : F2(C) → F1(A)
  ExactMatrix psi0 = lift_through_epi(s.project()) * FC->aug;
  auto theta1 = solve_modulo(s.inject().matrix(), psi0 * FC->d1, s.middle().relations());
  if (!theta1) throw Error(ErrorKind::Internal, "resolution lift left the image of the injection");
  out.theta1 = *theta1;
  ExactMatrix t1 = -(FA->section * *theta1);
  auto t2 = LinearSolver(FA->d1).solve_columns(-(t1 * FC->d2));
  if (!t2) throw Error(ErrorKind::Internal, "horseshoe differential could not be completed");
  // connecting map out of degree n: φ ↦ (−1)^(n+1) φ·t_{n+1}
  auto chase = [&](int n, const ExactMatrix& t) {
    const ExtModule& src = out.ext_a[static_cast<std::size_t>(n)];
    const ExtModule& dst = out.ext_c[static_cast<std::size_t>(n + 1)];
    std::vector<std::vector<Int>> cols;
    const Int sign = (n % 2 == 0) ? Int(-1) : Int(1);
    for (std::size_t k = 0; k < src.generator_count(); ++k)
      cols.push_back(dst.coords_of_cocycle(sign * (src.basis_cocycle(k) * t)));
    return ModuleMorphism(src.presentation(), dst.presentation(),
                          ExactMatrix::from_columns(P.ring(), dst.generator_count(), cols));
  };
  out.alpha = chase(0, t1);
  out.delta1 = chase(1, *t2);
  for (std::size_t n = 0; n <= 2; ++n) {
    out.ladder.push_back(ext_map_contravariant(s.project(), out.ext_c[n], out.ext_b[n]));
    out.ladder.push_back(ext_map_contravariant(s.inject(), out.ext_b[n], out.ext_a[n]));
    if (n == 0) out.ladder.push_back(out.alpha);
    if (n == 1) out.ladder.push_back(out.delta1);
  }
  out.exactness = is_exact(out.ladder, true, false);
  return out;
}

}  // namespace hexext
