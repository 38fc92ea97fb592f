#pragma once

// Concrete finite abelian groups for brute-force checks. Nothing here calls the
// Smith-form solver: presentations are reduced with a separate modular Hermite
// form in 64-bit arithmetic and every group is materialised as an addition table.

#include "hexext/module.hpp"

#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace hexext::oracle {

using i64 = std::int64_t;

/// Limits on brute-force work. Exceeding any of them throws BudgetExceeded.
struct EnumerationBudget {
  i64 max_order = 16;               ///< largest middle module enumerated explicitly
  i64 max_candidates = 20'000'000;  ///< cap on candidates examined plus table entries stored per call
  double deadline_seconds = 600.0;

  void validate() const {
    if (max_order <= 0 || max_candidates <= 0 || deadline_seconds <= 0)
      throw Error(ErrorKind::InvalidArgument, "budget bounds must be positive");
  }
};

/// Candidate counter shared by one oracle call.
class BudgetMeter {
 public:
  explicit BudgetMeter(const EnumerationBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {
    b.validate();
  }
  void spend(i64 n = 1) {
    used_ += n;
    if (used_ > budget_.max_candidates) throw Error(ErrorKind::BudgetExceeded, "candidate budget exhausted");
    if ((used_ & 0xFFFF) == 0 || n > 0xFFFF) check_clock();
  }
  void check_clock() const {
    std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
    if (el.count() > budget_.deadline_seconds) throw Error(ErrorKind::BudgetExceeded, "deadline exceeded");
  }
  const EnumerationBudget& budget() const { return budget_; }

 private:
  EnumerationBudget budget_;
  std::chrono::steady_clock::time_point start_;
  i64 used_ = 0;
};

namespace detail {

inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 gcd64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// (g, s, t) with s·a + t·b = g.
inline void egcd(i64 a, i64 b, i64& g, i64& s, i64& t) {
  i64 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 tmp = r0 - q * r1; r0 = r1; r1 = tmp;
    tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  g = r0; s = s0; t = t0;
}

// |det| of a nonzero maximal minor of an integer g×r matrix (rank g), by fraction-free
// elimination with column pivoting; 0 when the rank is below g.
inline Int full_rank_multiple(const ExactMatrix& rel) {
  const std::size_t g = rel.rows(), r = rel.cols();
  std::vector<std::vector<Int>> a(g, std::vector<Int>(r));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i][j] = rel(i, j);
  // pick g independent columns greedily by Bareiss on the transpose
  std::vector<std::vector<Int>> rows;  // chosen columns as rows, in echelon form
  std::vector<std::size_t> chosen;
  std::vector<std::vector<Int>> ech;
  std::vector<std::size_t> piv;
  for (std::size_t j = 0; j < r && chosen.size() < g; ++j) {
    std::vector<Int> v(g);
    for (std::size_t i = 0; i < g; ++i) v[i] = a[i][j];
    for (std::size_t k = 0; k < ech.size(); ++k) {
      const Int& p = ech[k][piv[k]];
      Int f = v[piv[k]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < g; ++i) v[i] = v[i] * p - f * ech[k][i];
    }
    std::size_t pc = g;
    for (std::size_t i = 0; i < g; ++i)
      if (v[i] != 0) { pc = i; break; }
    if (pc == g) continue;
    chosen.push_back(j);
    ech.push_back(v);
    piv.push_back(pc);
  }
  if (chosen.size() < g) return 0;
  // Bareiss determinant of the chosen g×g minor
  std::vector<std::vector<Int>> m(g, std::vector<Int>(g));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t k = 0; k < g; ++k) m[i][k] = a[i][chosen[k]];
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < g; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < g && m[s][k] == 0) ++s;
      if (s == g) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < g; ++i)
      for (std::size_t j = k + 1; j < g; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  Int d = m[g - 1][g - 1] * sign;
  return d < 0 ? Int(-d) : d;
}

}  // namespace detail

/// A finite abelian group materialised as canonical vectors over the generators
/// of a presentation, with a full addition table.
class ConcreteGroup {
 public:
  ConcreteGroup() = default;

  /// Builds the group underlying a finite presented module.
  static ConcreteGroup from_module(const PresentedModule& M, i64 max_order) {
    ConcreteGroup G;
    G.gens_ = M.generators();
    i64 N = 0;
    if (M.ring().is_integers()) {
      Int d = M.generators() == 0 ? Int(1) : detail::full_rank_multiple(M.relations());
      if (d == 0) throw Error(ErrorKind::BudgetExceeded, "oracle needs a finite module");
      if (d > Int(1'000'000)) throw Error(ErrorKind::BudgetExceeded, "module too large for the oracle");
      N = static_cast<i64>(d);
    } else {
      if (M.ring().modulus() > Int(1'000'000)) throw Error(ErrorKind::BudgetExceeded, "modulus too large");
      N = static_cast<i64>(M.ring().modulus());
    }
    G.N_ = N;
    const std::size_t g = G.gens_;
    // modular Hermite form of span(relations) + N·Z^g
    std::vector<std::vector<i64>> pending;
    for (std::size_t j = 0; j < M.relations().cols(); ++j) {
      std::vector<i64> v(g);
      for (std::size_t i = 0; i < g; ++i) v[i] = static_cast<i64>(mod_floor(M.relations()(i, j), Int(N)));
      pending.push_back(std::move(v));
    }
    G.basis_.assign(g, std::vector<i64>(g, 0));
    G.pivots_.assign(g, N);
    for (std::size_t c = 0; c < g; ++c) {
      std::vector<i64> p(g, 0);
      p[c] = N;
      for (auto& v : pending) {
        if (v[c] == 0) continue;
        i64 gg, s, t;
        detail::egcd(p[c], v[c], gg, s, t);
        i64 a = p[c] / gg, b = v[c] / gg;
        std::vector<i64> np(g), nv(g);
        for (std::size_t i = c; i < g; ++i) {
          np[i] = detail::mod(s * p[i] + t * v[i], N);
          nv[i] = detail::mod(a * v[i] - b * p[i], N);
        }
        np[c] = gg;
        nv[c] = 0;
        p = std::move(np);
        v = std::move(nv);
      }
      if (p[c] != N) {
        std::vector<i64> w(g, 0);
        i64 k = N / p[c];
        for (std::size_t i = c + 1; i < g; ++i) w[i] = detail::mod(k * p[i], N);
        pending.push_back(std::move(w));
      }
      G.pivots_[c] = p[c];
      G.basis_[c] = std::move(p);
    }
    Int order = 1;
    for (auto p : G.pivots_) order *= p;
    if (order > Int(max_order)) throw Error(ErrorKind::BudgetExceeded, "module order exceeds oracle budget");
    G.n_ = static_cast<i64>(order);
    G.build_tables();
    return G;
  }

  i64 order() const { return n_; }
  std::size_t generator_count() const { return gens_; }

  /// Index of the canonical form of an arbitrary integer coefficient vector.
  i64 index_of(const std::vector<i64>& coeffs) const {
    std::vector<i64> x(gens_);
    for (std::size_t i = 0; i < gens_; ++i) x[i] = detail::mod(coeffs[i], N_);
    for (std::size_t c = 0; c < gens_; ++c) {
      i64 q = x[c] / pivots_[c];
      if (q == 0) continue;
      for (std::size_t i = c; i < gens_; ++i) x[i] = detail::mod(x[i] - q * basis_[c][i], N_);
      x[c] = detail::mod(x[c], pivots_[c]);
    }
    i64 idx = 0;
    for (std::size_t c = 0; c < gens_; ++c) idx = idx * pivots_[c] + x[c];
    return idx;
  }
  i64 index_of(const ExactMatrix& column) const {
    std::vector<i64> v(gens_);
    for (std::size_t i = 0; i < gens_; ++i) v[i] = static_cast<i64>(mod_floor(column(i, 0), Int(N_)));
    return index_of(v);
  }

  /// Canonical coefficient vector of element idx.
  const std::vector<i64>& coords(i64 idx) const { return coords_[static_cast<std::size_t>(idx)]; }

  i64 zero() const { return 0; }
  i64 add(i64 a, i64 b) const { return add_[static_cast<std::size_t>(a * n_ + b)]; }
  i64 neg(i64 a) const { return neg_[static_cast<std::size_t>(a)]; }
  i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
  i64 mul(i64 k, i64 a) const {
    k = detail::mod(k, exponent_);
    i64 r = 0, base = a;
    while (k) {
      if (k & 1) r = add(r, base);
      base = add(base, base);
      k >>= 1;
    }
    return r;
  }
  i64 element_order(i64 a) const { return order_[static_cast<std::size_t>(a)]; }
  i64 exponent() const { return exponent_; }
  /// Index of the i-th presentation generator.
  i64 generator(std::size_t i) const { return gen_idx_[i]; }

  /// Σ coeffs[i]·images[i] for a vector of integer coefficients.
  i64 combine(const std::vector<i64>& coeffs, const std::vector<i64>& images) const {
    i64 r = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) r = add(r, mul(coeffs[i], images[i]));
    return r;
  }

  /// Number of elements killed by d.
  i64 torsion_count(i64 d) const {
    i64 c = 0;
    for (i64 a = 0; a < n_; ++a)
      if (d % element_order(a) == 0) ++c;
    return c;
  }

 private:
  void build_tables() {
    const std::size_t n = static_cast<std::size_t>(n_);
    coords_.assign(n, std::vector<i64>(gens_));
    for (std::size_t idx = 0; idx < n; ++idx) {
      i64 rem = static_cast<i64>(idx);
      for (std::size_t c = gens_; c-- > 0;) {
        coords_[idx][c] = rem % pivots_[c];
        rem /= pivots_[c];
      }
    }
    add_.assign(n * n, 0);
    std::vector<i64> s(gens_);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        for (std::size_t i = 0; i < gens_; ++i) s[i] = coords_[a][i] + coords_[b][i];
        i64 r = index_of(s);
        add_[a * n + b] = r;
        add_[b * n + a] = r;
      }
    neg_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (add_[a * n + b] == 0) { neg_[a] = static_cast<i64>(b); break; }
    order_.assign(n, 1);
    exponent_ = 1;
    for (std::size_t a = 0; a < n; ++a) {
      i64 k = 1;
      i64 x = static_cast<i64>(a);
      while (x != 0) {
        x = add_[static_cast<std::size_t>(x) * n + a];
        ++k;
      }
      order_[a] = (a == 0) ? 1 : k;
      exponent_ = std::lcm(exponent_, order_[a]);
    }
    gen_idx_.resize(gens_);
    for (std::size_t i = 0; i < gens_; ++i) {
      std::vector<i64> e(gens_, 0);
      e[i] = 1;
      gen_idx_[i] = index_of(e);
    }
  }

  std::size_t gens_ = 0;
  i64 N_ = 1;
  i64 n_ = 1;
  std::vector<std::vector<i64>> basis_;
  std::vector<i64> pivots_;
  std::vector<std::vector<i64>> coords_;
  std::vector<i64> add_, neg_, order_, gen_idx_;
  i64 exponent_ = 1;
};

/// A concrete group paired with the relation columns of its presentation.
struct ConcreteModule {
  PresentedModule presented;
  ConcreteGroup group;
  std::vector<std::vector<i64>> relations;  ///< relation columns as integer vectors

  static ConcreteModule make(const PresentedModule& M, i64 max_order) {
    ConcreteModule c{M, ConcreteGroup::from_module(M, max_order), {}};
    for (std::size_t j = 0; j < M.relations().cols(); ++j) {
      std::vector<i64> v(M.generators());
      for (std::size_t i = 0; i < M.generators(); ++i) v[i] = to_i64(M.relations()(i, j));
      c.relations.push_back(std::move(v));
    }
    return c;
  }
  i64 order() const { return group.order(); }
};

/// A homomorphism between concrete groups stored as a full element table.
struct ConcreteHom {
  std::vector<i64> images;  ///< images of the source presentation generators
  std::vector<i64> table;   ///< image of every source element

  bool operator==(const ConcreteHom& o) const { return table == o.table; }
};

/// Extends generator images to a full table, or nullopt when some relation fails.
inline std::optional<ConcreteHom> hom_from_images(const ConcreteModule& A, const ConcreteGroup& B,
                                                  const std::vector<i64>& images) {
  for (const auto& r : A.relations)
    if (B.combine(r, images) != 0) return std::nullopt;
  ConcreteHom h{images, std::vector<i64>(static_cast<std::size_t>(A.order()))};
  for (i64 a = 0; a < A.order(); ++a) h.table[static_cast<std::size_t>(a)] = B.combine(A.group.coords(a), images);
  return h;
}

/// Table of the morphism given by a generator matrix (target gens × source gens).
inline ConcreteHom hom_from_matrix(const ConcreteModule& A, const ConcreteModule& B, const ExactMatrix& mat) {
  std::vector<i64> images(A.presented.generators());
  for (std::size_t j = 0; j < images.size(); ++j) images[j] = B.group.index_of(mat.column_at(j));
  auto h = hom_from_images(A, B.group, images);
  if (!h) throw Error(ErrorKind::NotWellDefined, "matrix does not define a homomorphism");
  return *h;
}

inline bool hom_injective(const ConcreteHom& h) {
  for (std::size_t a = 1; a < h.table.size(); ++a)
    if (h.table[a] == 0) return false;
  return true;
}

inline bool hom_surjective(const ConcreteHom& h, i64 target_order) {
  std::vector<char> hit(static_cast<std::size_t>(target_order), 0);
  i64 count = 0;
  for (auto v : h.table)
    if (!hit[static_cast<std::size_t>(v)]) { hit[static_cast<std::size_t>(v)] = 1; ++count; }
  return count == target_order;
}

/// Every homomorphism A → B, enumerated by generator images.
inline std::vector<ConcreteHom> all_homs(const ConcreteModule& A, const ConcreteGroup& B, BudgetMeter& meter) {
  const std::size_t g = A.presented.generators();
  std::vector<ConcreteHom> out;
  std::vector<i64> images(g, 0);
  // each generator image must be killed by the generator's order in A
  std::vector<std::vector<i64>> cand(g);
  for (std::size_t i = 0; i < g; ++i) {
    i64 ord = A.group.element_order(A.group.generator(i));
    for (i64 b = 0; b < B.order(); ++b)
      if (B.mul(ord, b) == 0) cand[i].push_back(b);
  }
  std::vector<std::size_t> pos(g, 0);
  for (;;) {
    meter.spend();
    for (std::size_t i = 0; i < g; ++i) images[i] = cand[i][pos[i]];
    if (auto h = hom_from_images(A, B, images)) {
      meter.spend(A.order());
      out.push_back(std::move(*h));
    }
    std::size_t k = 0;
    while (k < g && ++pos[k] == cand[k].size()) pos[k++] = 0;
    if (k == g) break;
  }
  return out;
}

}  // namespace hexext::oracle
