#pragma once

#include "hexext/ring.hpp"

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace hexext {

/// Dense matrix over a RingSpec, entries kept canonical (reduced mod m).
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(RingSpec ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(const RingSpec& ring, std::size_t n) {
    ExactMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
  }

  static ExactMatrix from_rows(const RingSpec& ring, const std::vector<std::vector<Int>>& rows,
                               std::size_t cols_if_empty = 0) {
    std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
    ExactMatrix m(ring, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  /// Builds a matrix whose columns are the given vectors (each of length `rows`).
  static ExactMatrix from_columns(const RingSpec& ring, std::size_t rows,
                                  const std::vector<std::vector<Int>>& cols) {
    ExactMatrix m(ring, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error(ErrorKind::InvalidArgument, "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
    }
    return m;
  }

  static ExactMatrix column(const RingSpec& ring, const std::vector<Int>& v) {
    return from_columns(ring, v.size(), {v});
  }

  static ExactMatrix diagonal(const RingSpec& ring, const std::vector<Int>& d) {
    ExactMatrix m(ring, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
  }

  const RingSpec& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const Int& v) { data_[r * cols_ + c] = ring_.reduce(v); }

  /// Unreduced mutable access; only meaningful over the integers.
  Int& raw(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  ExactMatrix column_at(std::size_t j) const { return block(0, j, rows_, 1); }

  std::vector<Int> column_values(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    ExactMatrix m(ring_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m.data_[i * nc + j] = (*this)(r0 + i, c0 + j);
    return m;
  }

  ExactMatrix select_columns(const std::vector<std::size_t>& idx) const {
    ExactMatrix m(ring_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m.data_[i * idx.size() + j] = (*this)(i, idx[j]);
    return m;
  }

  ExactMatrix select_rows(const std::vector<std::size_t>& idx) const {
    ExactMatrix m(ring_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.data_[i * cols_ + j] = (*this)(idx[i], j);
    return m;
  }

  ExactMatrix transpose() const {
    ExactMatrix m(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.data_[j * rows_ + i] = (*this)(i, j);
    return m;
  }

  /// Same entries viewed over another ring (lift to Z, or reduce mod m).
  ExactMatrix over(const RingSpec& ring) const {
    ExactMatrix m(ring, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = ring.reduce(data_[k]);
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
  }

  bool is_column_zero(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, j) != 0) return false;
    return true;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "matrix product dimension mismatch");
    ExactMatrix m(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Int& bkj = b(k, j);
          if (bkj != 0) m.data_[i * b.cols_ + j] += aik * bkj;
        }
      }
    if (!a.ring_.is_integers())
      for (auto& v : m.data_) v = a.ring_.reduce(v);
    return m;
  }

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    a.check_same_shape(b);
    ExactMatrix m(a.ring_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) m.data_[k] = a.ring_.reduce(a.data_[k] + b.data_[k]);
    return m;
  }

  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    a.check_same_shape(b);
    ExactMatrix m(a.ring_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) m.data_[k] = a.ring_.reduce(a.data_[k] - b.data_[k]);
    return m;
  }

  friend ExactMatrix operator-(const ExactMatrix& a) {
    ExactMatrix m(a.ring_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) m.data_[k] = a.ring_.reduce(-a.data_[k]);
    return m;
  }

  friend ExactMatrix operator*(const Int& s, const ExactMatrix& a) {
    ExactMatrix m(a.ring_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) m.data_[k] = a.ring_.reduce(s * a.data_[k]);
    return m;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same_shape(const ExactMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
  }

  RingSpec ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

inline ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::InvalidArgument, "hstack row mismatch");
  ExactMatrix m(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) m.set(i, a.cols() + j, b(i, j));
  }
  return m;
}

inline ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidArgument, "vstack column mismatch");
  ExactMatrix m(a.ring(), a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m.set(i, j, a(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i) m.set(a.rows() + i, j, b(i, j));
  }
  return m;
}

inline ExactMatrix block_diag(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix m(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m.set(a.rows() + i, a.cols() + j, b(i, j));
  return m;
}

/// Kronecker product a ⊗ b.
inline ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix m(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) m.set(i * b.rows() + k, j * b.cols() + l, a(i, j) * b(k, l));
    }
  return m;
}

/// Column-major vectorisation: entry (r, c) goes to index c*rows + r.
inline ExactMatrix vec(const ExactMatrix& a) {
  ExactMatrix v(a.ring(), a.rows() * a.cols(), 1);
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) v.set(c * a.rows() + r, 0, a(r, c));
  return v;
}

inline ExactMatrix unvec(const ExactMatrix& v, std::size_t rows, std::size_t cols) {
  ExactMatrix a(v.ring(), rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) a.set(r, c, v(c * rows + r, 0));
  return a;
}

}  // namespace hexext
