#pragma once

// Exact scalar arithmetic and dense linear algebra over F_p and Z/p^e.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homotor/errors.hpp"

namespace homotor {

using Scalar = std::int64_t;
using Vector = std::vector<Scalar>;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class CoefficientRing {
 public:
  enum class Kind { prime_field, cyclic };

  static CoefficientRing prime_field(std::int64_t p) { return CoefficientRing(Kind::prime_field, p, 1); }
  static CoefficientRing cyclic(std::int64_t p, int e) { return CoefficientRing(Kind::cyclic, p, e); }

  Kind kind() const { return kind_; }
  std::int64_t p() const { return p_; }
  int e() const { return e_; }
  std::int64_t modulus() const { return q_; }
  // cyclic(p,1) is the prime field.
  bool is_field() const { return e_ == 1; }

  Scalar reduce(std::int64_t x) const {
    x %= q_;
    return x < 0 ? x + q_ : x;
  }
  Scalar add(Scalar a, Scalar b) const { return reduce(a + b); }
  Scalar sub(Scalar a, Scalar b) const { return reduce(a - b); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : q_ - a; }
  Scalar mul(Scalar a, Scalar b) const { return static_cast<Scalar>((static_cast<__int128>(a) * b) % q_); }
  bool is_unit(Scalar a) const { return reduce(a) % p_ != 0; }

  Scalar inv(Scalar a) const {
    // extended Euclid on lifts
    std::int64_t r0 = q_, r1 = reduce(a), t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (r0 != 1) throw DomainMismatch("inverse of a non-unit in " + name());
    return reduce(t0);
  }

  // p-adic valuation of a residue; zero has valuation e.
  int valuation(Scalar a) const {
    a = reduce(a);
    if (a == 0) return e_;
    int v = 0;
    while (a % p_ == 0) {
      a /= p_;
      ++v;
    }
    return v;
  }

  std::int64_t power_of_p(int k) const {
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r *= p_;
    return r;
  }

  std::string name() const {
    return e_ == 1 ? "F_" + std::to_string(p_) : "Z/" + std::to_string(p_) + "^" + std::to_string(e_);
  }

  friend bool operator==(const CoefficientRing& a, const CoefficientRing& b) { return a.p_ == b.p_ && a.e_ == b.e_; }
  friend bool operator!=(const CoefficientRing& a, const CoefficientRing& b) { return !(a == b); }

 private:
  CoefficientRing(Kind kind, std::int64_t p, int e) : kind_(kind), p_(p), e_(e) {
    if (p <= 2 || !is_prime(p)) throw ValidationError("coefficient prime must be an odd prime, got " + std::to_string(p));
    if (e < 1) throw ValidationError("exponent must be positive");
    q_ = power_of_p(e);
    if (e == 1) kind_ = Kind::prime_field;
  }

  Kind kind_;
  std::int64_t p_;
  int e_;
  std::int64_t q_ = 1;
};

inline void require_same_ring(const CoefficientRing& a, const CoefficientRing& b, const char* where) {
  if (a != b) throw DomainMismatch(std::string(where) + ": " + a.name() + " vs " + b.name());
}

inline void require_field(const CoefficientRing& r, const char* where) {
  if (!r.is_field()) throw DomainMismatch(std::string(where) + " needs a prime field, got " + r.name());
}

class Matrix {
 public:
  explicit Matrix(CoefficientRing ring, std::size_t rows = 0, std::size_t cols = 0)
      : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix zero(CoefficientRing ring, std::size_t rows, std::size_t cols) { return Matrix(ring, rows, cols); }
  static Matrix identity(CoefficientRing ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
  }
  static Matrix from_rows(CoefficientRing ring, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
    Matrix m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw ValidationError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }
  static Matrix from_columns(CoefficientRing ring, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(ring, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw ValidationError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m.data_[i * cols.size() + j] = ring.reduce(cols[j][i]);
    }
    return m;
  }
  static Matrix from_flat(CoefficientRing ring, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& flat) {
    if (flat.size() != rows * cols) throw ValidationError("flat matrix has wrong entry count");
    Matrix m(ring, rows, cols);
    for (std::size_t i = 0; i < flat.size(); ++i) m.data_[i] = ring.reduce(flat[i]);
    return m;
  }

  const CoefficientRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Scalar>& data() const { return data_; }

  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = ring_.reduce(v); }
  void add_to(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = ring_.reduce(data_[r * cols_ + c] + v); }

  Vector row(std::size_t r) const { return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }
  Vector col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = data_[i * cols_ + c];
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw ValidationError("matrix-vector shape mismatch");
    Vector out(rows_, 0);
    const auto q = ring_.modulus();
    for (std::size_t i = 0; i < rows_; ++i) {
      __int128 acc = 0;
      const Scalar* r = &data_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<__int128>(r[j]) * v[j];
      out[i] = static_cast<Scalar>(acc % q);
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
    return t;
  }

  Matrix scaled(std::int64_t c) const {
    Matrix m = *this;
    for (auto& x : m.data_) x = ring_.mul(x, ring_.reduce(c));
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_ring(a.ring_, b.ring_, "matrix product");
    if (a.cols_ != b.rows_) throw ValidationError("matrix product shape mismatch");
    Matrix out(a.ring_, a.rows_, b.cols_);
    const auto q = a.ring_.modulus();
    std::vector<__int128> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Scalar x = a.data_[i * a.cols_ + k];
        if (x == 0) continue;
        const Scalar* br = &b.data_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += static_cast<__int128>(x) * br[j];
      }
      for (std::size_t j = 0; j < b.cols_; ++j) out.data_[i * b.cols_ + j] = static_cast<Scalar>(acc[j] % q);
    }
    return out;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_ring(a.ring_, b.ring_, "matrix sum");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix sum shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.ring_.add(a.data_[i], b.data_[i]);
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(-1); }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  // Copies `block` into this matrix with its top-left corner at (r0, c0).
  void put_block(std::size_t r0, std::size_t c0, const Matrix& block) {
    for (std::size_t i = 0; i < block.rows_; ++i)
      for (std::size_t j = 0; j < block.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = block.data_[i * block.cols_ + j];
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(ring_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(data_[i * cols_ + a], data_[i * cols_ + b]);
  }
  // row[dst] += c * row[src], for columns >= from
  void axpy_row(std::size_t dst, std::size_t src, Scalar c, std::size_t from = 0) {
    if (c == 0) return;
    Scalar* d = &data_[dst * cols_];
    const Scalar* s = &data_[src * cols_];
    const auto q = ring_.modulus();
    if (q < (std::int64_t{1} << 31)) {
      for (std::size_t j = from; j < cols_; ++j)
        if (s[j] != 0) d[j] = (d[j] + c * s[j]) % q;
      return;
    }
    for (std::size_t j = from; j < cols_; ++j)
      if (s[j] != 0) d[j] = ring_.add(d[j], ring_.mul(c, s[j]));
  }
  void axpy_col(std::size_t dst, std::size_t src, Scalar c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if (data_[i * cols_ + src] != 0) data_[i * cols_ + dst] = ring_.add(data_[i * cols_ + dst], ring_.mul(c, data_[i * cols_ + src]));
  }
  void scale_row(std::size_t r, Scalar c, std::size_t from = 0) {
    for (std::size_t j = from; j < cols_; ++j) data_[r * cols_ + j] = ring_.mul(data_[r * cols_ + j], c);
  }

 private:
  CoefficientRing ring_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "hstack");
  if (a.rows() != b.rows()) throw ValidationError("hstack row mismatch");
  Matrix m(a.ring(), a.rows(), a.cols() + b.cols());
  m.put_block(0, 0, a);
  m.put_block(0, a.cols(), b);
  return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "vstack");
  if (a.cols() != b.cols()) throw ValidationError("vstack column mismatch");
  Matrix m(a.ring(), a.rows() + b.rows(), a.cols());
  m.put_block(0, 0, a);
  m.put_block(a.rows(), 0, b);
  return m;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "block_diag");
  Matrix m(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  m.put_block(0, 0, a);
  m.put_block(a.rows(), a.cols(), b);
  return m;
}

// ---- vector helpers ------------------------------------------------------

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, 0);
  v[i] = 1;
  return v;
}

inline void axpy(const CoefficientRing& r, Vector& y, Scalar c, const Vector& x) {
  if (c == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (x[i] != 0) y[i] = r.add(y[i], r.mul(c, x[i]));
}

inline Vector add(const CoefficientRing& r, const Vector& a, const Vector& b) {
  Vector out = a;
  axpy(r, out, 1, b);
  return out;
}

inline Vector scale(const CoefficientRing& r, const Vector& a, Scalar c) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.mul(a[i], r.reduce(c));
  return out;
}

// ---- row reduction ---------------------------------------------

struct RrefResult {
  Matrix form;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

namespace detail {

// Reduced echelon form using unit pivots only. Over a field this is plain
// rref. Over Z/p^e it stops short when every remaining entry is a non-unit;
// `rest_zero` records whether the rows below the pivots vanished.
inline RrefResult unit_pivot_rref(Matrix m, bool& rest_zero) {
  const auto& ring = m.ring();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && !ring.is_unit(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, r);
    // over a field row r vanishes left of c; over Z/p^e skipped columns may
    // still hold non-units
    const std::size_t from = ring.is_field() ? c : 0;
    m.scale_row(r, ring.inv(m(r, c)), from);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m(i, c) != 0) m.axpy_row(i, r, ring.neg(m(i, c)), from);
    pivots.push_back(c);
    ++r;
  }
  rest_zero = true;
  for (std::size_t i = r; i < m.rows() && rest_zero; ++i)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(i, c) != 0) {
        rest_zero = false;
        break;
      }
  return RrefResult{std::move(m), r, std::move(pivots)};
}

}  // namespace detail

inline RrefResult rref(Matrix m) {
  require_field(m.ring(), "rref");
  bool rest_zero = true;
  return detail::unit_pivot_rref(std::move(m), rest_zero);
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

// Kernel basis: one vector per free column f, equal to e_f minus the rref
// column entries placed at the pivot positions. Vectors come in free-column
// order. Over Z/p^e this works exactly when the kernel is free (unit pivots
// clear the matrix); otherwise DomainMismatch.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  bool rest_zero = true;
  auto rr = detail::unit_pivot_rref(m, rest_zero);
  if (!rest_zero) throw DomainMismatch("kernel over " + m.ring().name() + " is not free");
  const auto& ring = m.ring();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  std::vector<Vector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = ring.neg(rr.form(i, f));
    out.push_back(std::move(v));
  }
  return out;
}

// Columns that are free in the kernel basis above.
inline std::vector<std::size_t> kernel_free_columns(const Matrix& m) {
  bool rest_zero = true;
  auto rr = detail::unit_pivot_rref(m, rest_zero);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < m.cols(); ++f)
    if (!is_pivot[f]) out.push_back(f);
  return out;
}

// Linearly independent columns of m (pivot columns), in order.
inline std::vector<Vector> image_basis(const Matrix& m) {
  auto rr = rref(m);
  std::vector<Vector> out;
  for (auto c : rr.pivots) out.push_back(m.col(c));
  return out;
}

inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  require_field(a.ring(), "solve");
  if (b.size() != a.rows()) throw ValidationError("solve: right-hand side length mismatch");
  Matrix aug(a.ring(), a.rows(), a.cols() + 1);
  aug.put_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug.set(i, a.cols(), b[i]);
  auto rr = rref(aug);
  if (!rr.pivots.empty() && rr.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols(), 0);
  for (std::size_t i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = rr.form(i, a.cols());
  return x;
}

// Incrementally maintained subspace of F_p^n in reduced echelon form.
class Subspace {
 public:
  Subspace(CoefficientRing ring, std::size_t ambient) : ring_(ring), n_(ambient) { require_field(ring, "Subspace"); }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& echelon_rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  Vector reduce(Vector v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (v[pivots_[k]] != 0) axpy(ring_, v, ring_.neg(v[pivots_[k]]), rows_[k]);
    return v;
  }
  bool contains(const Vector& v) const { return is_zero(reduce(v)); }

  // Adds v; returns false when v was already in the span.
  bool add(const Vector& v) {
    if (v.size() != n_) throw ValidationError("Subspace::add length mismatch");
    Vector w = reduce(v);
    std::size_t piv = 0;
    while (piv < n_ && w[piv] == 0) ++piv;
    if (piv == n_) return false;
    w = scale(ring_, w, ring_.inv(w[piv]));
    for (auto& row : rows_)
      if (row[piv] != 0) axpy(ring_, row, ring_.neg(row[piv]), w);
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
  }

  // Coordinates of v modulo this subspace, on the non-pivot unit vectors.
  Vector quotient_coords(const Vector& v) const {
    Vector w = reduce(v);
    Vector out;
    out.reserve(n_ - rows_.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (k < pivots_.size() && pivots_[k] == i) {
        ++k;
        continue;
      }
      out.push_back(w[i]);
    }
    return out;
  }
  std::vector<std::size_t> complement_indices() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (k < pivots_.size() && pivots_[k] == i) {
        ++k;
        continue;
      }
      out.push_back(i);
    }
    return out;
  }

 private:
  CoefficientRing ring_;
  std::size_t n_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

// Coordinates with respect to a fixed list of independent vectors.
class CoordinateSolver {
 public:
  CoordinateSolver(CoefficientRing ring, std::size_t ambient, const std::vector<Vector>& basis)
      : ring_(ring), n_(ambient), m_(basis.size()), left_inverse_(ring, basis.size(), ambient), residual_(ring, 0, ambient) {
    require_field(ring, "CoordinateSolver");
    // rref of [B | I] with pivots restricted to the B block.
    Matrix aug(ring, ambient, m_ + ambient);
    for (std::size_t j = 0; j < m_; ++j) {
      if (basis[j].size() != ambient) throw ValidationError("CoordinateSolver: vector length mismatch");
      for (std::size_t i = 0; i < ambient; ++i) aug.set(i, j, basis[j][i]);
    }
    for (std::size_t i = 0; i < ambient; ++i) aug.set(i, m_ + i, 1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t piv = r;
      while (piv < ambient && aug(piv, c) == 0) ++piv;
      if (piv == ambient) throw ValidationError("CoordinateSolver: basis vectors are dependent");
      aug.swap_rows(piv, r);
      aug.scale_row(r, ring.inv(aug(r, c)));
      for (std::size_t i = 0; i < ambient; ++i)
        if (i != r && aug(i, c) != 0) aug.axpy_row(i, r, ring.neg(aug(i, c)));
      ++r;
    }
    left_inverse_ = aug.block(0, m_, m_, ambient);
    residual_ = aug.block(m_, m_, ambient - m_, ambient);
  }

  std::size_t size() const { return m_; }
  bool in_span(const Vector& v) const { return is_zero(residual_.apply(v)); }
  std::optional<Vector> try_coords(const Vector& v) const {
    if (!in_span(v)) return std::nullopt;
    return left_inverse_.apply(v);
  }
  Vector coords(const Vector& v) const {
    auto c = try_coords(v);
    if (!c) throw InvariantFailure("CoordinateSolver: vector outside the span");
    return *c;
  }

 private:
  CoefficientRing ring_;
  std::size_t n_, m_;
  Matrix left_inverse_;
  Matrix residual_;
};

// ---- Z/p^e: inverses and Smith normal form -------------------------------

// Inverse of a square matrix over F_p or Z/p^e (unit pivots only).
inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("inverse of non-square matrix");
  const auto& ring = m.ring();
  std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(ring, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && !ring.is_unit(a(piv, c))) ++piv;
    if (piv == n) throw ValidationError("matrix is not invertible over " + ring.name());
    a.swap_rows(piv, c);
    inv.swap_rows(piv, c);
    Scalar s = ring.inv(a(c, c));
    a.scale_row(c, s);
    inv.scale_row(c, s);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Scalar f = ring.neg(a(i, c));
      a.axpy_row(i, c, f);
      inv.axpy_row(i, c, f);
    }
  }
  return inv;
}

struct SmithResult {
  Matrix diagonal;  // D = U * M * V
  Matrix left;      // U
  Matrix right;     // V
  // Valuation of each diagonal entry D(i,i), i < min(rows, cols); e stands for 0.
  std::vector<int> exponents;
};

// Smith normal form over Z/p^e. Pivot: minimal valuation, then first in
// row-major order of the remaining block. Diagonal entries come out as exact
// powers of p (or 0), ascending.
inline SmithResult smith_normal_form(const Matrix& m) {
  const auto& ring = m.ring();
  Matrix a = m;
  Matrix u = Matrix::identity(ring, m.rows());
  Matrix v = Matrix::identity(ring, m.cols());
  std::size_t n = std::min(m.rows(), m.cols());
  std::vector<int> exps;
  for (std::size_t t = 0; t < n; ++t) {
    int best = ring.e();
    std::size_t br = 0, bc = 0;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        int val = ring.valuation(a(i, j));
        if (val < best) {
          best = val;
          br = i;
          bc = j;
        }
      }
    if (best == ring.e()) {
      for (std::size_t k = t; k < n; ++k) exps.push_back(ring.e());
      break;
    }
    a.swap_rows(t, br);
    u.swap_rows(t, br);
    a.swap_cols(t, bc);
    v.swap_cols(t, bc);
    const std::int64_t pv = ring.power_of_p(best);
    Scalar unit_part = ring.reduce(a(t, t) / pv);
    Scalar s = ring.inv(unit_part);
    a.scale_row(t, s);
    u.scale_row(t, s);
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      if (a(i, t) == 0) continue;
      Scalar c = ring.neg(ring.reduce(a(i, t) / pv));
      a.axpy_row(i, t, c);
      u.axpy_row(i, t, c);
    }
    for (std::size_t j = t + 1; j < a.cols(); ++j) {
      if (a(t, j) == 0) continue;
      Scalar c = ring.neg(ring.reduce(a(t, j) / pv));
      a.axpy_col(j, t, c);
      v.axpy_col(j, t, c);
    }
    exps.push_back(best);
  }
  return SmithResult{std::move(a), std::move(u), std::move(v), std::move(exps)};
}

}  // namespace homotor
