#pragma once

#include "hexext/linalg.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hexext {

/// Isomorphism invariants of a finitely presented module: nontrivial invariant
/// factors d1 | d2 | ... and, over Z, the free rank. Over Z/m a free summand is
/// reported as the factor m.
struct ModuleStructure {
  std::vector<Int> invariant_factors;
  std::size_t free_rank = 0;

  bool is_zero() const { return invariant_factors.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }
  /// Cardinality of a finite module.
  Int order() const {
    if (!is_finite()) throw Error(ErrorKind::InvalidArgument, "module is infinite");
    Int n = 1;
    for (const auto& d : invariant_factors) n *= d;
    return n;
  }
  std::string to_string() const;

  friend bool operator==(const ModuleStructure&, const ModuleStructure&) = default;
};

inline std::string ModuleStructure::to_string() const {
  std::string s;
  for (const auto& d : invariant_factors) s += (s.empty() ? "Z/" : " + Z/") + d.str();
  for (std::size_t i = 0; i < free_rank; ++i) s += s.empty() ? "Z" : " + Z";
  return s.empty() ? "0" : s;
}

/// Module given by g generators and a g×r relation matrix (columns are relations).
/// Copies share the immutable presentation and its cached solver.
class PresentedModule {
 public:
  PresentedModule() : PresentedModule(RingSpec::integers(), 0, ExactMatrix(RingSpec::integers(), 0, 0)) {}

  PresentedModule(const RingSpec& ring, std::size_t generators, const ExactMatrix& relations)
      : d_(std::make_shared<Data>()) {
    if (relations.rows() != generators)
      throw Error(ErrorKind::InvalidArgument, "relation matrix must have one row per generator");
    if (relations.ring() != ring) throw Error(ErrorKind::InvalidArgument, "relation matrix over a different ring");
    d_->ring = ring;
    d_->generators = generators;
    d_->relations = relations;
  }

  static PresentedModule zero(const RingSpec& ring) { return PresentedModule(ring, 0, ExactMatrix(ring, 0, 0)); }
  static PresentedModule free(const RingSpec& ring, std::size_t n) { return PresentedModule(ring, n, ExactMatrix(ring, n, 0)); }

  /// Direct sum of cyclic modules R/(d); d = 0 gives a free summand.
  static PresentedModule cyclic_sum(const RingSpec& ring, const std::vector<Int>& orders) {
    std::vector<std::vector<Int>> cols;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (ring.reduce(orders[i]) == 0) continue;
      std::vector<Int> c(orders.size(), Int(0));
      c[i] = orders[i];
      cols.push_back(std::move(c));
    }
    return PresentedModule(ring, orders.size(), ExactMatrix::from_columns(ring, orders.size(), cols));
  }
  static PresentedModule cyclic(const RingSpec& ring, const Int& order) { return cyclic_sum(ring, {order}); }

  const RingSpec& ring() const { return d_->ring; }
  std::size_t generators() const { return d_->generators; }
  const ExactMatrix& relations() const { return d_->relations; }

  /// Solver for systems relations·y = b, built once per presentation.
  const LinearSolver& relation_solver() const {
    std::call_once(d_->solver_once, [this] { d_->solver = std::make_unique<LinearSolver>(d_->relations); });
    return *d_->solver;
  }

  /// True iff every column of `v` (g rows) is zero in the module.
  bool is_zero_element(const ExactMatrix& v) const {
    if (v.rows() != generators()) throw Error(ErrorKind::InvalidArgument, "element has wrong length");
    const auto& s = relation_solver();
    for (std::size_t j = 0; j < v.cols(); ++j)
      if (!v.is_column_zero(j) && !s.in_image(v.column_at(j))) return false;
    return true;
  }
  bool equal_elements(const ExactMatrix& a, const ExactMatrix& b) const { return is_zero_element(a - b); }

  const ModuleStructure& structure() const {
    std::call_once(d_->structure_once, [this] { d_->structure = compute_structure(); });
    return d_->structure;
  }
  bool is_zero() const { return generators() == 0 || structure().is_zero(); }
  bool is_finite() const { return structure().is_finite(); }
  Int order() const { return structure().order(); }

  bool same_presentation(const PresentedModule& o) const {
    return d_ == o.d_ || (ring() == o.ring() && generators() == o.generators() && relations() == o.relations());
  }
  bool isomorphic_to(const PresentedModule& o) const {
    return ring() == o.ring() && structure() == o.structure();
  }

  std::string to_string() const { return structure().to_string(); }

 private:
  struct Data {
    RingSpec ring;
    std::size_t generators = 0;
    ExactMatrix relations;
    std::once_flag solver_once, structure_once;
    std::unique_ptr<LinearSolver> solver;
    ModuleStructure structure;
  };

  ModuleStructure compute_structure() const {
    ModuleStructure out;
    auto dec = snf(relations());
    auto diag = dec.diagonal();
    for (std::size_t i = 0; i < generators(); ++i) {
      Int d = i < diag.size() ? diag[i] : Int(0);
      if (ring().is_integers()) {
        if (d == 0) ++out.free_rank;
        else if (d != 1) out.invariant_factors.push_back(d);
      } else {
        if (d == 0) d = ring().modulus();
        if (d != 1) out.invariant_factors.push_back(d);
      }
    }
    return out;
  }

  std::shared_ptr<Data> d_;
};

/// An element of a presented module as a coefficient column over its generators.
struct ModuleElement {
  PresentedModule parent;
  ExactMatrix coeffs;

  friend bool operator==(const ModuleElement& a, const ModuleElement& b) {
    if (!a.parent.same_presentation(b.parent)) return false;
    return a.parent.equal_elements(a.coeffs, b.coeffs);
  }
};

/// Witness that a matrix defines a morphism: target.relations · witness = matrix · source.relations.
struct WellDefinedCertificate {
  ExactMatrix witness;
};

/// Reason a candidate matrix is not a morphism.
struct Rejection {
  std::size_t relation_column;  ///< first source relation whose image is nonzero
  std::string reason;
};

inline std::variant<WellDefinedCertificate, Rejection> check_well_defined(const PresentedModule& source,
                                                                          const PresentedModule& target,
                                                                          const ExactMatrix& matrix) {
  if (source.ring() != target.ring() || matrix.ring() != source.ring())
    return Rejection{0, "ring mismatch"};
  if (matrix.rows() != target.generators() || matrix.cols() != source.generators())
    return Rejection{0, "matrix dimensions do not match generator counts"};
  const ExactMatrix img = matrix * source.relations();
  const auto& solver = target.relation_solver();
  ExactMatrix witness(source.ring(), target.relations().cols(), img.cols());
  for (std::size_t j = 0; j < img.cols(); ++j) {
    if (img.is_column_zero(j)) continue;
    auto y = solver.particular(img.column_at(j));
    if (!y) return Rejection{j, "relation column " + std::to_string(j) + " does not map to zero"};
    for (std::size_t i = 0; i < witness.rows(); ++i) witness.set(i, j, (*y)(i, 0));
  }
  return WellDefinedCertificate{std::move(witness)};
}

/// Morphism between presented modules; matrix is target generators × source generators.
class ModuleMorphism {
 public:
  ModuleMorphism() = default;

  /// Certifies well-definedness; throws NotWellDefined otherwise.
  ModuleMorphism(PresentedModule source, PresentedModule target, ExactMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    auto cert = check_well_defined(source_, target_, matrix_);
    if (auto* rej = std::get_if<Rejection>(&cert)) throw Error(ErrorKind::NotWellDefined, rej->reason);
  }

  struct Unchecked {};
  /// For matrices already known to be well defined.
  ModuleMorphism(Unchecked, PresentedModule source, PresentedModule target, ExactMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators())
      throw Error(ErrorKind::InvalidArgument, "morphism matrix has wrong shape");
  }

  static ModuleMorphism zero(const PresentedModule& s, const PresentedModule& t) {
    return ModuleMorphism(Unchecked{}, s, t, ExactMatrix(s.ring(), t.generators(), s.generators()));
  }
  static ModuleMorphism identity(const PresentedModule& m) {
    return ModuleMorphism(Unchecked{}, m, m, ExactMatrix::identity(m.ring(), m.generators()));
  }

  const PresentedModule& source() const { return source_; }
  const PresentedModule& target() const { return target_; }
  const ExactMatrix& matrix() const { return matrix_; }
  const RingSpec& ring() const { return source_.ring(); }

  ModuleElement apply(const ModuleElement& x) const {
    if (!x.parent.same_presentation(source_)) throw Error(ErrorKind::ArgumentMismatch, "element not in source");
    return {target_, matrix_ * x.coeffs};
  }

  /// Equality as maps: the difference sends every generator to zero.
  bool equals(const ModuleMorphism& o) const {
    if (!source_.same_presentation(o.source_) || !target_.same_presentation(o.target_)) return false;
    return target_.is_zero_element(matrix_ - o.matrix_);
  }
  bool is_zero() const { return target_.is_zero_element(matrix_); }

  friend bool operator==(const ModuleMorphism& a, const ModuleMorphism& b) { return a.equals(b); }

  friend ModuleMorphism operator+(const ModuleMorphism& a, const ModuleMorphism& b) {
    a.check_parallel(b);
    return ModuleMorphism(Unchecked{}, a.source_, a.target_, a.matrix_ + b.matrix_);
  }
  friend ModuleMorphism operator-(const ModuleMorphism& a, const ModuleMorphism& b) {
    a.check_parallel(b);
    return ModuleMorphism(Unchecked{}, a.source_, a.target_, a.matrix_ - b.matrix_);
  }
  friend ModuleMorphism operator-(const ModuleMorphism& a) {
    return ModuleMorphism(Unchecked{}, a.source_, a.target_, -a.matrix_);
  }

 private:
  void check_parallel(const ModuleMorphism& b) const {
    if (!source_.same_presentation(b.source_) || !target_.same_presentation(b.target_))
      throw Error(ErrorKind::ArgumentMismatch, "morphisms are not parallel");
  }

  PresentedModule source_, target_;
  ExactMatrix matrix_;
};

/// g ∘ f.
inline ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (!f.target().same_presentation(g.source()))
    throw Error(ErrorKind::NonComposable, "target of first map is not the source of the second");
  return ModuleMorphism(ModuleMorphism::Unchecked{}, f.source(), g.target(), g.matrix() * f.matrix());
}

// ---------------------------------------------------------------------------
// cyclic decomposition

/// A module isomorphic to the input presented diagonally, with mutually inverse maps.
struct SimplifiedModule {
  PresentedModule module;   ///< generators carry orders d1 | d2 | ... (0 = free), no unit orders
  std::vector<Int> orders;  ///< order of each new generator, 0 when free
  ModuleMorphism to_new;    ///< original → simplified
  ModuleMorphism to_old;    ///< simplified → original
};

inline SimplifiedModule simplify(const PresentedModule& M) {
  const RingSpec& R = M.ring();
  const std::size_t g = M.generators();
  auto dec = snf(M.relations());
  auto diag = dec.diagonal();
  std::vector<std::size_t> keep;
  std::vector<Int> orders;
  for (std::size_t i = 0; i < g; ++i) {
    Int d = i < diag.size() ? diag[i] : Int(0);
    if (d != 0 && R.is_unit(d)) continue;
    keep.push_back(i);
    orders.push_back(d);
  }
  PresentedModule N = PresentedModule::cyclic_sum(R, orders);
  ExactMatrix fwd = dec.U.select_rows(keep);
  ExactMatrix back = dec.U_inv.select_columns(keep);
  return SimplifiedModule{N, orders, ModuleMorphism(ModuleMorphism::Unchecked{}, M, N, fwd),
                          ModuleMorphism(ModuleMorphism::Unchecked{}, N, M, back)};
}

}  // namespace hexext
