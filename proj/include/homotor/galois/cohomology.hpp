#pragma once

// Inhomogeneous cochains C^n(G, M) = functions G^n -> M. A cochain is a vector
// indexed by (tuple, module coordinate) with the tuple index big-endian in
// base |G| and the module coordinate minor.

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "homotor/complexes.hpp"
#include "homotor/galois/module.hpp"

namespace homotor::galois {

// Defaults for the memory guard on dense cochain matrices.
struct CochainBudget {
  std::size_t max_dim = 200000;        // largest C^n allowed
  std::size_t max_dense = 40000000;    // entries of the largest dense differential
};

inline std::size_t power(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline std::size_t cochain_dim(const GroupModule& M, int n) { return power(M.group()->order(), n) * M.dim(); }

// Column-sparse matrix; duplicate entries add up.
struct SparseMatrix {
  CoefficientRing ring;
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns;

  Vector apply(const Vector& v) const {
    Vector out(rows, 0);
    for (std::size_t j = 0; j < cols; ++j) {
      if (v[j] == 0) continue;
      for (auto [i, x] : columns[j]) out[i] = ring.add(out[i], ring.mul(x, v[j]));
    }
    return out;
  }
  Matrix dense() const {
    Matrix m(ring, rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (auto [i, x] : columns[j]) m.add_to(i, j, x);
    return m;
  }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (auto& c : columns) n += c.size();
    return n;
  }
};

// d^n: C^n -> C^{n+1},
// (df)(g_1..g_{n+1}) = g_1 f(g_2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g_1..g_n).
inline SparseMatrix cochain_differential(const GroupModule& M, int n) {
  const auto& G = *M.group();
  const auto& k = M.field();
  const std::size_t N = G.order(), m = M.dim();
  SparseMatrix d{k, cochain_dim(M, n + 1), cochain_dim(M, n), {}};
  d.columns.assign(d.cols, {});
  std::vector<Element> t(static_cast<std::size_t>(n) + 1);
  const std::size_t rows_t = power(N, n + 1);
  auto index = [&](auto begin, auto end) {
    std::size_t idx = 0;
    for (auto it = begin; it != end; ++it) idx = idx * N + *it;
    return idx;
  };
  for (std::size_t r = 0; r < rows_t; ++r) {
    std::size_t x = r;
    for (int i = n; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = static_cast<Element>(x % N);
      x /= N;
    }
    // g_1 . f(g_2, .., g_{n+1})
    {
      std::size_t c = index(t.begin() + 1, t.end());
      const Matrix& a = M.action(t[0]);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (a(i, j) != 0) d.columns[c * m + j].emplace_back(r * m + i, a(i, j));
    }
    for (int i = 1; i <= n; ++i) {
      std::vector<Element> s;
      for (int j = 0; j <= n; ++j) {
        if (j == i) continue;
        if (j == i - 1)
          s.push_back(G.mul(t[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(j) + 1]));
        else
          s.push_back(t[static_cast<std::size_t>(j)]);
      }
      std::size_t c = index(s.begin(), s.end());
      Scalar sign = i % 2 == 0 ? 1 : k.neg(1);
      for (std::size_t j = 0; j < m; ++j) d.columns[c * m + j].emplace_back(r * m + j, sign);
    }
    {
      std::size_t c = index(t.begin(), t.end() - 1);
      Scalar sign = (n + 1) % 2 == 0 ? 1 : k.neg(1);
      for (std::size_t j = 0; j < m; ++j) d.columns[c * m + j].emplace_back(r * m + j, sign);
    }
  }
  return d;
}

// Pullback C^n(G, M) -> C^n(H, phi^*M): (phi^* f)(h_1..h_n) = f(phi h_1, .., phi h_n).
class CochainRestriction {
 public:
  CochainRestriction(const GroupHom& phi, std::size_t module_dim, int n) : m_(module_dim) {
    const std::size_t NH = phi.source()->order(), NG = phi.target()->order();
    const std::size_t rows = power(NH, n);
    source_of_.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t x = r, c = 0, place = 1;
      for (int i = 0; i < n; ++i) {
        c += phi(static_cast<Element>(x % NH)) * place;
        x /= NH;
        place *= NG;
      }
      source_of_[r] = c;
    }
    source_dim_ = power(NG, n) * m_;
  }
  Vector apply(const Vector& f) const {
    if (f.size() != source_dim_) throw ValidationError("restriction: cochain has the wrong length");
    Vector out(source_of_.size() * m_);
    for (std::size_t r = 0; r < source_of_.size(); ++r)
      for (std::size_t j = 0; j < m_; ++j) out[r * m_ + j] = f[source_of_[r] * m_ + j];
    return out;
  }
  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return source_of_.size() * m_; }

 private:
  std::size_t m_;
  std::size_t source_dim_ = 0;
  std::vector<std::size_t> source_of_;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Kernel basis in the free-column form of kernel_basis, with the free columns.
inline std::pair<std::vector<Vector>, std::vector<std::size_t>> kernel_with_free_columns(const Matrix& m) {
  auto rr = rref(m);
  const auto& ring = m.ring();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  std::vector<std::size_t> free;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = ring.neg(rr.form(i, f));
    basis.push_back(std::move(v));
    free.push_back(f);
  }
  return {std::move(basis), std::move(free)};
}

}  // namespace detail

// Z^n(G, M) = ker d^n with a basis in free-column form: the coordinates of a
// cocycle are its entries at the free columns.
class CocycleSpace {
 public:
  CocycleSpace() = default;
  CocycleSpace(CoefficientRing k, std::size_t ambient, std::vector<Vector> basis, std::vector<std::size_t> free)
      : k_(k), ambient_(ambient), basis_(std::move(basis)), free_(std::move(free)) {}

  // When d has many more rows than columns the kernel is computed from a
  // pseudo-random compression R*d and then checked against d itself, so the
  // result is exact; a failed check falls back to the dense matrix.
  static CocycleSpace of(const SparseMatrix& d, std::uint64_t seed = 1) {
    const auto& k = d.ring;
    if (d.rows <= 2 * d.cols + 16) {
      auto [b, f] = detail::kernel_with_free_columns(d.dense());
      return CocycleSpace(k, d.cols, std::move(b), std::move(f));
    }
    for (int attempt = 0; attempt < 3; ++attempt) {
      const std::size_t kd = d.cols + 8 + static_cast<std::size_t>(attempt) * 16;
      Matrix c(k, kd, d.cols);
      const std::uint64_t s = detail::splitmix(seed + static_cast<std::uint64_t>(attempt) * 7919);
      for (std::size_t j = 0; j < d.cols; ++j)
        for (auto [i, x] : d.columns[j])
          for (std::size_t r = 0; r < kd; ++r) {
            auto h = static_cast<Scalar>(detail::splitmix(s ^ (static_cast<std::uint64_t>(i) * 0x100000001b3ULL + r)) %
                                         static_cast<std::uint64_t>(k.modulus()));
            if (h != 0) c.add_to(r, j, k.mul(h, x));
          }
      auto [b, f] = detail::kernel_with_free_columns(c);
      bool ok = true;
      for (auto& v : b)
        if (!is_zero(d.apply(v))) {
          ok = false;
          break;
        }
      if (ok) return CocycleSpace(k, d.cols, std::move(b), std::move(f));
    }
    auto [b, f] = detail::kernel_with_free_columns(d.dense());
    return CocycleSpace(k, d.cols, std::move(b), std::move(f));
  }

  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return ambient_; }
  const std::vector<Vector>& basis() const { return basis_; }

  Vector coords(const Vector& z) const {
    Vector c(free_.size());
    for (std::size_t i = 0; i < free_.size(); ++i) c[i] = z[free_[i]];
    if (lift(c) != z) throw InvariantFailure("vector is not a cocycle");
    return c;
  }
  Vector lift(const Vector& c) const {
    Vector z(ambient_, 0);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (c[i] != 0) axpy(k_, z, c[i], basis_[i]);
    return z;
  }

 private:
  CoefficientRing k_ = CoefficientRing::prime_field(3);
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> free_;
};

// Cochains C^0..C^T with H^0..H^{T-1} read off the complex and H^T taken as
// dim Z^T - rank d^{T-1}, Z^T from the sparse d^T. H^0 is cross-checked
// against the fixed points computed directly.
struct GroupCohomology {
  ChainComplex complex = ChainComplex::zero(CoefficientRing::prime_field(3));  // C^0..C^T
  std::vector<std::size_t> dims;  // H^0..H^T
  std::size_t fixed_points = 0;
  bool h0_matches = false;
};

inline GroupCohomology cochain_complex(const GroupModule& M, int T, const CochainBudget& budget = {}) {
  if (T < 0) throw ValidationError("top degree must be non-negative");
  const std::size_t top = cochain_dim(M, T);
  const double need = static_cast<double>(top) * static_cast<double>(top + 64);
  if (cochain_dim(M, T + 1) > budget.max_dim || need > static_cast<double>(budget.max_dense))
    throw BudgetExceeded("cochains up to degree " + std::to_string(T + 1) + " need " + std::to_string(cochain_dim(M, T + 1)) +
                             " coordinates",
                         need);
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = 0; n <= T; ++n) dims.push_back(cochain_dim(M, n));
  for (int n = 0; n < T; ++n) diffs.push_back(cochain_differential(M, n).dense());
  GroupCohomology out;
  out.complex = ChainComplex::cochain(M.field(), 0, dims, diffs);
  for (int n = 0; n < T; ++n) out.dims.push_back(cohomology(out.complex, n).dim());
  const std::size_t zt = CocycleSpace::of(cochain_differential(M, T)).dim();
  out.dims.push_back(zt - (T == 0 ? 0 : rank(diffs.back())));
  out.fixed_points = M.fixed_points().size();
  out.h0_matches = out.fixed_points == out.dims[0];
  if (!out.h0_matches) throw InvariantFailure("H^0 differs from the fixed points");
  return out;
}

// The truncation C^0 -> C^1 -> Z^2: its cohomology is H^0, H^1, H^2 and it has
// nothing in degree 3.
struct TruncatedCochains {
  std::shared_ptr<const GroupModule> module;
  Matrix d0;   // C^0 -> C^1
  Matrix d1;   // C^1 -> Z^2 in cocycle coordinates
  CocycleSpace z1, z2;
  ChainComplex complex = ChainComplex::zero(CoefficientRing::prime_field(3));

  std::size_t dim(int n) const { return complex.codim(n); }
};

inline TruncatedCochains truncated_cochains(const GroupModule& M, const CochainBudget& budget = {}) {
  const std::size_t c3 = cochain_dim(M, 3);
  if (c3 > budget.max_dim)
    throw BudgetExceeded("2-cocycles need " + std::to_string(c3) + " coordinates of 3-cochains", static_cast<double>(c3));
  TruncatedCochains t{std::make_shared<const GroupModule>(M), cochain_differential(M, 0).dense(), Matrix(M.field(), 0, 0), {}, {}};
  auto d1 = cochain_differential(M, 1);
  t.z1 = CocycleSpace::of(d1);
  t.z2 = CocycleSpace::of(cochain_differential(M, 2));
  Matrix d1z(M.field(), t.z2.dim(), d1.cols);
  for (std::size_t j = 0; j < d1.cols; ++j) {
    Vector c = t.z2.coords(d1.apply(unit_vector(d1.cols, j)));
    for (std::size_t i = 0; i < c.size(); ++i) d1z.set(i, j, c[i]);
  }
  t.d1 = std::move(d1z);
  t.complex = ChainComplex::cochain(M.field(), 0, {M.dim(), cochain_dim(M, 1), t.z2.dim()}, {t.d0, t.d1});
  return t;
}

struct CocycleDims {
  std::size_t dim_g = 0, h0 = 0, z1 = 0, b1 = 0, h1 = 0;
};

// dim Z^1, B^1, H^1 of a module (Ad rho for the adjoint representation).
inline CocycleDims z1_b1_h1(const GroupModule& M) {
  CocycleDims c;
  c.dim_g = M.dim();
  Matrix d0 = cochain_differential(M, 0).dense();
  c.b1 = rank(d0);
  c.h0 = M.dim() - c.b1;
  c.z1 = CocycleSpace::of(cochain_differential(M, 1)).dim();
  c.h1 = c.z1 - c.b1;
  return c;
}

inline CocycleDims z1_b1_h1(const Representation& rho) { return z1_b1_h1(GroupModule::adjoint(rho)); }

// Coboundaries B^1 of a module as vectors in C^1.
inline std::vector<Vector> coboundaries(const GroupModule& M) { return image_basis(cochain_differential(M, 0).dense()); }

}  // namespace homotor::galois
