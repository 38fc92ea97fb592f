#pragma once

#include "hexext/matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace hexext {

/// U·A·V = D with U, V invertible over the ring and D diagonal with
/// d1 | d2 | ... (zeros last). Over Z/m the diagonal entries are the
/// canonical divisors gcd(d, m) of m (0 once d ≡ 0).
struct SNFDecomposition {
  ExactMatrix U, D, V;
  ExactMatrix U_inv, V_inv;
  std::size_t rank = 0;  ///< number of nonzero diagonal entries
  std::size_t source_rows = 0, source_cols = 0;

  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

// Smith normal form over Z with transforms. Pivot: smallest nonzero |entry|
// of the remaining block, ties to the lowest (row, col) in row-major order.
inline SNFDecomposition snf_integer(const ExactMatrix& A) {
  const RingSpec zz = RingSpec::integers();
  const std::size_t r = A.rows(), c = A.cols();
  SNFDecomposition out;
  out.source_rows = r;
  out.source_cols = c;
  ExactMatrix D = A.over(zz);
  ExactMatrix U = ExactMatrix::identity(zz, r), Ui = ExactMatrix::identity(zz, r);
  ExactMatrix V = ExactMatrix::identity(zz, c), Vi = ExactMatrix::identity(zz, c);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c; ++k) std::swap(D.raw(i, k), D.raw(j, k));
    for (std::size_t k = 0; k < r; ++k) std::swap(U.raw(i, k), U.raw(j, k));
    for (std::size_t k = 0; k < r; ++k) std::swap(Ui.raw(k, i), Ui.raw(k, j));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r; ++k) std::swap(D.raw(k, i), D.raw(k, j));
    for (std::size_t k = 0; k < c; ++k) std::swap(V.raw(k, i), V.raw(k, j));
    for (std::size_t k = 0; k < c; ++k) std::swap(Vi.raw(i, k), Vi.raw(j, k));
  };
  // row_i += q * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < c; ++k)
      if (D(j, k) != 0) D.raw(i, k) += q * D(j, k);
    for (std::size_t k = 0; k < r; ++k)
      if (U(j, k) != 0) U.raw(i, k) += q * U(j, k);
    for (std::size_t k = 0; k < r; ++k)
      if (Ui(k, i) != 0) Ui.raw(k, j) -= q * Ui(k, i);
  };
  // col_j += q * col_i
  auto add_col = [&](std::size_t j, std::size_t i, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < r; ++k)
      if (D(k, i) != 0) D.raw(k, j) += q * D(k, i);
    for (std::size_t k = 0; k < c; ++k)
      if (V(k, i) != 0) V.raw(k, j) += q * V(k, i);
    for (std::size_t k = 0; k < c; ++k)
      if (Vi(j, k) != 0) Vi.raw(i, k) -= q * Vi(j, k);
  };

  std::size_t t = 0;
  const std::size_t n = std::min(r, c);
  for (; t < n; ++t) {
    bool found_any = true;
    for (;;) {
      // pivot search
      std::size_t pi = r, pj = c;
      Int best = 0;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          const Int& v = D(i, j);
          if (v == 0) continue;
          Int a = abs(v);
          if (pi == r || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi == r) {
        found_any = false;
        break;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);
      const Int p = D(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (D(i, t) == 0) continue;
        Int q = D(i, t) / p;
        add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (D(t, j) == 0) continue;
        Int q = D(t, j) / p;
        add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block by the pivot
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (D(i, j) % p != 0) {
            add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (!found_any) break;
    if (D(t, t) < 0) {
      for (std::size_t k = 0; k < c; ++k) D.raw(t, k) = -D(t, k);
      for (std::size_t k = 0; k < r; ++k) U.raw(t, k) = -U(t, k);
      for (std::size_t k = 0; k < r; ++k) Ui.raw(k, t) = -Ui(k, t);
    }
  }
  out.rank = t;
  out.U = std::move(U);
  out.U_inv = std::move(Ui);
  out.V = std::move(V);
  out.V_inv = std::move(Vi);
  out.D = std::move(D);
  return out;
}

}  // namespace detail

/// Smith normal form over the matrix's ring.
inline SNFDecomposition snf(const ExactMatrix& A) {
  const RingSpec& ring = A.ring();
  SNFDecomposition z = detail::snf_integer(A);
  if (ring.is_integers()) return z;

  SNFDecomposition out;
  out.source_rows = z.source_rows;
  out.source_cols = z.source_cols;
  out.U = z.U.over(ring);
  out.U_inv = z.U_inv.over(ring);
  out.V = z.V.over(ring);
  out.V_inv = z.V_inv.over(ring);
  out.D = z.D.over(ring);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < std::min(out.D.rows(), out.D.cols()); ++i) {
    Int d = out.D(i, i);
    if (d == 0) continue;
    Int u = normalizing_unit(ring, d);
    if (u != 1) {
      Int uinv = ring.inverse(u);
      for (std::size_t k = 0; k < out.D.cols(); ++k) out.D.set(i, k, u * out.D(i, k));
      for (std::size_t k = 0; k < out.U.cols(); ++k) out.U.set(i, k, u * out.U(i, k));
      for (std::size_t k = 0; k < out.U_inv.rows(); ++k) out.U_inv.set(k, i, uinv * out.U_inv(k, i));
    }
    ++rank;
  }
  out.rank = rank;
  return out;
}

/// A particular solution of A·x = b plus generators of the solution space of A·x = 0.
struct LinearSolution {
  ExactMatrix particular;  ///< cols(A) × 1
  ExactMatrix kernel;      ///< cols(A) × k
};

/// Reusable solver for A·x = b over A's ring. Over Z/m the system is lifted
/// to Z as [A | m·I]·(x, y) = b, solved there, and x is reduced mod m.
class LinearSolver {
 public:
  explicit LinearSolver(const ExactMatrix& A) : ring_(A.ring()), rows_(A.rows()), cols_(A.cols()) {
    const RingSpec zz = RingSpec::integers();
    ExactMatrix W = A.over(zz);
    if (!ring_.is_integers())
      W = hstack(W, ring_.modulus() * ExactMatrix::identity(zz, rows_));
    snf_ = detail::snf_integer(W);
    diag_ = snf_.diagonal();
    build_kernel();
  }

  const RingSpec& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  /// Particular solution for a single column b, or nullopt when b is not in the column image.
  std::optional<ExactMatrix> particular(const ExactMatrix& b) const {
    if (b.rows() != rows_ || b.cols() != 1) throw Error(ErrorKind::InvalidArgument, "rhs dimension mismatch");
    const RingSpec zz = RingSpec::integers();
    ExactMatrix c = snf_.U * b.over(zz);
    const std::size_t wc = snf_.V.rows();
    ExactMatrix y(zz, wc, 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i < snf_.rank) {
        if (c(i, 0) % diag_[i] != 0) return std::nullopt;
        y.raw(i, 0) = c(i, 0) / diag_[i];
      } else if (c(i, 0) != 0) {
        return std::nullopt;
      }
    }
    ExactMatrix x = snf_.V * y;
    ExactMatrix out(ring_, cols_, 1);
    for (std::size_t i = 0; i < cols_; ++i) out.set(i, 0, x(i, 0));
    return out;
  }

  std::optional<LinearSolution> solve(const ExactMatrix& b) const {
    auto x = particular(b);
    if (!x) return std::nullopt;
    return LinearSolution{*x, kernel_};
  }

  /// Solves column by column; nullopt if any column has no solution.
  std::optional<ExactMatrix> solve_columns(const ExactMatrix& B) const {
    ExactMatrix X(ring_, cols_, B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j) {
      auto x = particular(B.column_at(j));
      if (!x) return std::nullopt;
      for (std::size_t i = 0; i < cols_; ++i) X.set(i, j, (*x)(i, 0));
    }
    return X;
  }

  bool in_image(const ExactMatrix& b) const { return particular(b).has_value(); }

  /// Columns generating {x : A·x = 0}.
  const ExactMatrix& kernel() const { return kernel_; }

 private:
  void build_kernel() {
    std::vector<std::vector<Int>> cols;
    const std::size_t wc = snf_.V.rows();
    for (std::size_t j = snf_.rank; j < wc; ++j) {
      std::vector<Int> v(cols_);
      bool nonzero = false;
      for (std::size_t i = 0; i < cols_; ++i) {
        v[i] = ring_.reduce(snf_.V(i, j));
        if (v[i] != 0) nonzero = true;
      }
      if (nonzero) cols.push_back(std::move(v));
    }
    kernel_ = ExactMatrix::from_columns(ring_, cols_, cols);
  }

  RingSpec ring_;
  std::size_t rows_, cols_;
  SNFDecomposition snf_;
  std::vector<Int> diag_;
  ExactMatrix kernel_;
};

inline std::optional<LinearSolution> solve_linear(const ExactMatrix& A, const ExactMatrix& b) {
  return LinearSolver(A).solve(b);
}

inline ExactMatrix kernel_columns(const ExactMatrix& A) { return LinearSolver(A).kernel(); }

// ---------------------------------------------------------------------------
// lattice echelon form and coset minimisation

/// Row-echelon basis of the integer lattice spanned by `gens` (each of length n):
/// each row has a positive pivot and zeros before it; pivots strictly move right.
inline std::vector<std::vector<Int>> lattice_echelon(std::vector<std::vector<Int>> gens, std::size_t n) {
  std::vector<std::vector<Int>> basis;
  for (std::size_t col = 0; col < n; ++col) {
    for (;;) {
      std::size_t best = gens.size();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (gens[k][col] == 0) continue;
        if (best == gens.size() || abs(gens[k][col]) < abs(gens[best][col])) best = k;
      }
      if (best == gens.size()) break;
      bool others = false;
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (k == best || gens[k][col] == 0) continue;
        Int q = gens[k][col] / gens[best][col];
        for (std::size_t i = col; i < n; ++i) gens[k][i] -= q * gens[best][i];
        if (gens[k][col] != 0) others = true;
      }
      if (others) continue;
      std::vector<Int> row = std::move(gens[best]);
      gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(best));
      if (row[col] < 0)
        for (auto& v : row) v = -v;
      basis.push_back(std::move(row));
      break;
    }
    // drop rows that became zero
    std::erase_if(gens, [](const std::vector<Int>& g) {
      return std::all_of(g.begin(), g.end(), [](const Int& v) { return v == 0; });
    });
  }
  return basis;
}

/// Lexicographically smallest element of x + L, where L is the lattice spanned by
/// `gens` together with moduli[i]·e_i. All moduli must be positive so the
/// minimum exists; coordinates of the result lie in [0, moduli[i]).
inline std::vector<Int> lex_min_in_coset(std::vector<Int> x, const std::vector<std::vector<Int>>& gens,
                                         const std::vector<Int>& moduli) {
  const std::size_t n = x.size();
  std::vector<std::vector<Int>> all = gens;
  for (std::size_t i = 0; i < n; ++i) {
    if (moduli[i] <= 0) throw Error(ErrorKind::InvalidArgument, "lex_min_in_coset needs positive moduli");
    std::vector<Int> e(n, Int(0));
    e[i] = moduli[i];
    all.push_back(std::move(e));
  }
  auto basis = lattice_echelon(std::move(all), n);
  for (const auto& row : basis) {
    std::size_t pc = 0;
    while (row[pc] == 0) ++pc;
    Int q = div_floor(x[pc], row[pc]);
    if (q != 0)
      for (std::size_t i = pc; i < n; ++i) x[i] -= q * row[i];
  }
  return x;
}

}  // namespace hexext
