#pragma once

// Bounded chain complexes of based modules over F_p or Z/p^e.
//
// Degrees live in an explicit window [lo, hi]; everything outside is zero.
// Cochain complexes are stored with negated degrees (cochain degree n sits at
// chain degree -n) and carry an orientation flag.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homotor/rings.hpp"

namespace homotor {

enum class Orientation { chain, cochain };

class ChainComplex {
 public:
  // differentials[k] is d_{lo+k+1}: C_{lo+k+1} -> C_{lo+k}, for k = 0..hi-lo-1.
  ChainComplex(CoefficientRing ring, int lo, std::vector<std::size_t> dims, std::vector<Matrix> differentials,
               Orientation orientation = Orientation::chain)
      : ring_(ring), lo_(lo), dims_(std::move(dims)), diffs_(std::move(differentials)), orientation_(orientation) {
    validate();
  }

  // Complex with no modules at all.
  static ChainComplex zero(CoefficientRing ring) { return ChainComplex(ring, 0, {0}, {}); }

  // A single module k^dim placed in degree n.
  static ChainComplex concentrated(CoefficientRing ring, int n, std::size_t dim) { return ChainComplex(ring, n, {dim}, {}); }

  // Cochain complex with C^n for n = lo..lo+dims.size()-1 and d^n: C^n -> C^{n+1}.
  static ChainComplex cochain(CoefficientRing ring, int cochain_lo, std::vector<std::size_t> cochain_dims,
                              std::vector<Matrix> cochain_diffs) {
    // chain degree -n; window [-(hi), -lo]
    int hi = cochain_lo + static_cast<int>(cochain_dims.size()) - 1;
    std::vector<std::size_t> dims(cochain_dims.rbegin(), cochain_dims.rend());
    // chain d_{m}: C_m -> C_{m-1} with m = -n is d^n: C^n -> C^{n+1}
    std::vector<Matrix> diffs(cochain_diffs.rbegin(), cochain_diffs.rend());
    return ChainComplex(ring, -hi, std::move(dims), std::move(diffs), Orientation::cochain);
  }

  const CoefficientRing& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  Orientation orientation() const { return orientation_; }
  const std::vector<std::size_t>& dims() const { return dims_; }

  std::size_t dim(int n) const {
    if (n < lo_ || n > hi()) return 0;
    return dims_[static_cast<std::size_t>(n - lo_)];
  }

  // d_n: C_n -> C_{n-1}; zero matrix of the right shape outside the window.
  Matrix d(int n) const {
    if (n <= lo_ || n > hi()) return Matrix::zero(ring_, dim(n - 1), dim(n));
    return diffs_[static_cast<std::size_t>(n - lo_ - 1)];
  }

  // Cochain view: d^n: C^n -> C^{n+1} and C^n.
  std::size_t codim(int n) const { return dim(-n); }
  Matrix cod(int n) const { return d(-n); }

  // Same complex re-tagged with another orientation (no degree change).
  ChainComplex with_orientation(Orientation o) const {
    ChainComplex c = *this;
    c.orientation_ = o;
    return c;
  }

  friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
    return a.ring_ == b.ring_ && a.lo_ == b.lo_ && a.dims_ == b.dims_ && a.diffs_ == b.diffs_ && a.orientation_ == b.orientation_;
  }

  // Drops zero modules at both ends of the window (keeps at least one degree).
  ChainComplex trimmed() const {
    int a = lo_, b = hi();
    while (a < b && dim(a) == 0) ++a;
    while (b > a && dim(b) == 0) --b;
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int n = a; n <= b; ++n) dims.push_back(dim(n));
    for (int n = a + 1; n <= b; ++n) diffs.push_back(d(n));
    return ChainComplex(ring_, a, std::move(dims), std::move(diffs), orientation_);
  }

 private:
  void validate() const {
    if (dims_.empty()) throw ValidationError("complex needs at least one degree");
    if (diffs_.size() + 1 != dims_.size()) throw ValidationError("complex needs one differential between adjacent degrees");
    for (int n = lo_ + 1; n <= hi(); ++n) {
      const Matrix& m = diffs_[static_cast<std::size_t>(n - lo_ - 1)];
      require_same_ring(ring_, m.ring(), "complex differential");
      if (m.rows() != dim(n - 1) || m.cols() != dim(n))
        throw ValidationError("differential d_" + std::to_string(n) + " has shape " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + ", expected " + std::to_string(dim(n - 1)) + "x" + std::to_string(dim(n)));
    }
    for (int n = lo_ + 2; n <= hi(); ++n)
      if (!(d(n - 1) * d(n)).is_zero()) throw ValidationError("d∘d != 0 at degree " + std::to_string(n));
  }

  CoefficientRing ring_;
  int lo_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;
  Orientation orientation_;
};

// Homology of a based complex. Over a field only the dimension matters; over
// Z/p^e the module is a sum of cyclic groups Z/p^k, listed by exponent.
struct ModuleInvariants {
  CoefficientRing ring;
  std::vector<int> exponents;  // ascending, each in [1, e]

  std::size_t dim() const { return exponents.size(); }  // number of cyclic summands
  bool is_zero() const { return exponents.empty(); }
  std::size_t length() const {
    std::size_t l = 0;
    for (int x : exponents) l += static_cast<std::size_t>(x);
    return l;
  }
  friend bool operator==(const ModuleInvariants& a, const ModuleInvariants& b) {
    return a.ring == b.ring && a.exponents == b.exponents;
  }
};

namespace detail {

// Cokernel of R: (Z/p^e)^r <- (Z/p^e)^c, as cyclic summands.
inline std::vector<int> cokernel_exponents(const Matrix& rel) {
  const auto& ring = rel.ring();
  std::vector<int> out;
  auto snf = smith_normal_form(rel);
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    int v = i < snf.exponents.size() ? snf.exponents[i] : ring.e();
    if (v > 0) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline ModuleInvariants homology(const ChainComplex& c, int n) {
  const auto& ring = c.ring();
  const std::size_t dn = c.dim(n);
  if (dn == 0) return ModuleInvariants{ring, {}};
  Matrix out = c.d(n);
  Matrix in = c.d(n + 1);
  if (ring.is_field()) {
    std::size_t h = dn - rank(out) - rank(in);
    return ModuleInvariants{ring, std::vector<int>(h, 1)};
  }
  // Kernel of d_n in SNF coordinates y = V^{-1} x: coordinate i ranges over
  // p^{e-a_i} Z/p^e where p^{a_i} is the diagonal entry (a_i = e past the
  // diagonal), so the cycle module is the sum of Z/p^{a_i}.
  auto snf = smith_normal_form(out);
  std::vector<int> a(dn, ring.e());
  for (std::size_t i = 0; i < snf.exponents.size(); ++i) a[i] = snf.exponents[i];
  Matrix vinv = inverse(snf.right);
  Matrix img = vinv * in;  // columns in y-coordinates
  // Present ker/im as (Z/p^e)^dn / <p^{a_i} e_i, image columns rescaled>.
  Matrix rel(ring, dn, img.cols() + dn);
  for (std::size_t i = 0; i < dn; ++i) {
    const std::int64_t shift = ring.power_of_p(ring.e() - a[i]);
    for (std::size_t j = 0; j < img.cols(); ++j) {
      Scalar y = img(i, j);
      if (y % shift != 0) throw InvariantFailure("boundary not inside the cycle module");
      rel.set(i, j, y / shift);
    }
    rel.set(i, img.cols() + i, ring.power_of_p(a[i]));
  }
  return ModuleInvariants{ring, detail::cokernel_exponents(rel)};
}

// Homology in cochain degree n of a cochain-oriented complex.
inline ModuleInvariants cohomology(const ChainComplex& c, int n) { return homology(c, -n); }

inline std::map<int, std::size_t> homology_dims(const ChainComplex& c) {
  std::map<int, std::size_t> out;
  for (int n = c.lo(); n <= c.hi(); ++n) out[n] = homology(c, n).dim();
  return out;
}

inline long euler_characteristic(const ChainComplex& c) {
  long chi = 0;
  for (int n = c.lo(); n <= c.hi(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(c.dim(n));
  return chi;
}

// Over a field: representatives for H_n and coordinates of cycles.
// Representatives are the first kernel-basis vectors not in the boundary
// span, taken in kernel-basis (column) order.
class HomologyBasis {
 public:
  HomologyBasis(const ChainComplex& c, int n) : ring_(c.ring()), ambient_(c.dim(n)), d_out_(c.d(n)) {
    require_field(ring_, "HomologyBasis");
    Matrix in = c.d(n + 1);
    auto ker = kernel_basis(d_out_);
    auto img = image_basis(in);
    Subspace span(ring_, ambient_);
    for (auto& v : img) span.add(v);
    std::vector<Vector> all;
    for (auto& v : ker)
      if (span.add(v)) reps_.push_back(v);
    all = reps_;
    all.insert(all.end(), img.begin(), img.end());
    solver_.emplace(ring_, ambient_, all);
    boundaries_ = std::move(img);
  }

  std::size_t dim() const { return reps_.size(); }
  const std::vector<Vector>& representatives() const { return reps_; }
  const std::vector<Vector>& boundaries() const { return boundaries_; }
  std::size_t ambient() const { return ambient_; }

  bool is_cycle(const Vector& z) const { return ambient_ == 0 || is_zero(d_out_.apply(z)); }

  // Class of a cycle in the representative basis.
  Vector coords(const Vector& z) const {
    if (!is_cycle(z)) throw InvariantFailure("HomologyBasis::coords on a non-cycle");
    Vector all = solver_->coords(z);
    return Vector(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(reps_.size()));
  }

 private:
  CoefficientRing ring_;
  std::size_t ambient_;
  std::vector<Vector> reps_;
  std::vector<Vector> boundaries_;
  Matrix d_out_;
  std::optional<CoordinateSolver> solver_;
};

class ChainMap {
 public:
  // components[n - lo] : source_n -> target_n for n in the source window.
  ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> components)
      : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
    validate();
  }

  static ChainMap identity(const ChainComplex& c) {
    std::map<int, Matrix> comps;
    for (int n = c.lo(); n <= c.hi(); ++n) comps.emplace(n, Matrix::identity(c.ring(), c.dim(n)));
    return ChainMap(c, c, std::move(comps));
  }
  static ChainMap zero(const ChainComplex& s, const ChainComplex& t) { return ChainMap(s, t, {}); }

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }

  Matrix at(int n) const {
    auto it = comps_.find(n);
    if (it != comps_.end()) return it->second;
    return Matrix::zero(source_.ring(), target_.dim(n), source_.dim(n));
  }

  // Induced map on homology in degree n, in HomologyBasis coordinates.
  Matrix on_homology(int n) const {
    HomologyBasis hs(source_, n), ht(target_, n);
    Matrix f = at(n);
    Matrix m(source_.ring(), ht.dim(), hs.dim());
    for (std::size_t j = 0; j < hs.dim(); ++j) {
      auto c = ht.coords(f.apply(hs.representatives()[j]));
      for (std::size_t i = 0; i < c.size(); ++i) m.set(i, j, c[i]);
    }
    return m;
  }

 private:
  void validate() const {
    require_same_ring(source_.ring(), target_.ring(), "chain map");
    for (auto& [n, m] : comps_) {
      if (m.rows() != target_.dim(n) || m.cols() != source_.dim(n))
        throw ValidationError("chain map component in degree " + std::to_string(n) + " has the wrong shape");
    }
    int lo = std::min(source_.lo(), target_.lo()) - 1, hi = std::max(source_.hi(), target_.hi()) + 1;
    for (int n = lo + 1; n <= hi; ++n)
      if (target_.d(n) * at(n) != at(n - 1) * source_.d(n))
        throw ValidationError("chain map does not commute with differentials in degree " + std::to_string(n));
  }

  ChainComplex source_, target_;
  std::map<int, Matrix> comps_;
};

// Shift: C[k]_n = C_{n-k}, differentials negated when k is odd.
inline ChainComplex shift(const ChainComplex& c, int k) {
  std::vector<Matrix> diffs;
  for (int n = c.lo() + 1; n <= c.hi(); ++n) diffs.push_back(k % 2 != 0 ? c.d(n).scaled(-1) : c.d(n));
  return ChainComplex(c.ring(), c.lo() + k, c.dims(), std::move(diffs), c.orientation());
}

// Mapping cone of f: C -> D with cone_n = D_n (+) C_{n-1} and differential
// [[d_D, f], [0, -d_C]].
inline ChainComplex cone(const ChainMap& f) {
  const auto& c = f.source();
  const auto& dd = f.target();
  const auto& ring = c.ring();
  int lo = std::min(dd.lo(), c.lo() + 1), hi = std::max(dd.hi(), c.hi() + 1);
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) dims.push_back(dd.dim(n) + c.dim(n - 1));
  std::vector<Matrix> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    Matrix m(ring, dd.dim(n - 1) + c.dim(n - 2), dd.dim(n) + c.dim(n - 1));
    m.put_block(0, 0, dd.d(n));
    m.put_block(0, dd.dim(n), f.at(n - 1));
    m.put_block(dd.dim(n - 1), dd.dim(n), c.d(n - 1).scaled(-1));
    diffs.push_back(std::move(m));
  }
  return ChainComplex(ring, lo, std::move(dims), std::move(diffs), dd.orientation());
}

// Tensor product of based free complexes, basis (c_i (x) d_j) ordered by i then j
// inside each summand, summands ordered by ascending degree of C.
inline ChainComplex tensor(const ChainComplex& c, const ChainComplex& d) {
  require_same_ring(c.ring(), d.ring(), "tensor");
  const auto& ring = c.ring();
  int lo = c.lo() + d.lo(), hi = c.hi() + d.hi();
  // offsets[n][i] = start of C_i (x) D_{n-i} inside (C (x) D)_n
  auto offset = [&](int n, int i) {
    std::size_t off = 0;
    for (int a = c.lo(); a < i; ++a) off += c.dim(a) * d.dim(n - a);
    return off;
  };
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) dims.push_back(offset(n, c.hi() + 1));
  std::vector<Matrix> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    Matrix m(ring, dims[static_cast<std::size_t>(n - 1 - lo)], dims[static_cast<std::size_t>(n - lo)]);
    for (int i = c.lo(); i <= c.hi(); ++i) {
      int j = n - i;
      if (j < d.lo() || j > d.hi()) continue;
      std::size_t src = offset(n, i);
      Matrix dc = c.d(i), ddm = d.d(j);
      std::size_t ci = c.dim(i), dj = d.dim(j);
      // dc (x) 1 into C_{i-1} (x) D_j
      if (c.dim(i - 1) > 0) {
        std::size_t tgt = offset(n - 1, i - 1);
        for (std::size_t a = 0; a < ci; ++a)
          for (std::size_t a2 = 0; a2 < c.dim(i - 1); ++a2) {
            Scalar x = dc(a2, a);
            if (x == 0) continue;
            for (std::size_t b = 0; b < dj; ++b) m.add_to(tgt + a2 * dj + b, src + a * dj + b, x);
          }
      }
      // (-1)^i 1 (x) dd into C_i (x) D_{j-1}
      if (d.dim(j - 1) > 0) {
        std::size_t tgt = offset(n - 1, i);
        Scalar sign = (i % 2 == 0) ? 1 : ring.neg(1);
        std::size_t dj1 = d.dim(j - 1);
        for (std::size_t a = 0; a < ci; ++a)
          for (std::size_t b = 0; b < dj; ++b)
            for (std::size_t b2 = 0; b2 < dj1; ++b2) {
              Scalar x = ddm(b2, b);
              if (x == 0) continue;
              m.add_to(tgt + a * dj1 + b2, src + a * dj + b, ring.mul(sign, x));
            }
      }
    }
    diffs.push_back(std::move(m));
  }
  return ChainComplex(ring, lo, std::move(dims), std::move(diffs));
}

// Mapping complex [C, D]_n = prod_m Hom(C_m, D_{m+n}) with
// (Df)(x) = d_D f(x) - (-1)^n f(d_C x). Hom(C_m, D_{m+n}) is flattened
// row-major (rows indexed by D_{m+n}), blocks by ascending m.
inline ChainComplex internal_hom(const ChainComplex& c, const ChainComplex& d) {
  require_same_ring(c.ring(), d.ring(), "internal_hom");
  const auto& ring = c.ring();
  int lo = d.lo() - c.hi(), hi = d.hi() - c.lo();
  auto offset = [&](int n, int m) {
    std::size_t off = 0;
    for (int a = c.lo(); a < m; ++a) off += c.dim(a) * d.dim(a + n);
    return off;
  };
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) dims.push_back(offset(n, c.hi() + 1));
  std::vector<Matrix> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    Matrix m(ring, dims[static_cast<std::size_t>(n - 1 - lo)], dims[static_cast<std::size_t>(n - lo)]);
    Scalar sign = (n % 2 == 0) ? ring.neg(1) : 1;  // -(-1)^n
    for (int a = c.lo(); a <= c.hi(); ++a) {
      std::size_t cm = c.dim(a), dn = d.dim(a + n);
      if (cm == 0 || dn == 0) continue;
      std::size_t src = offset(n, a);
      // d_D o f : Hom(C_a, D_{a+n-1})
      std::size_t dn1 = d.dim(a + n - 1);
      if (dn1 > 0) {
        Matrix dd = d.d(a + n);
        std::size_t tgt = offset(n - 1, a);
        for (std::size_t r = 0; r < dn; ++r)
          for (std::size_t col = 0; col < cm; ++col)
            for (std::size_t r2 = 0; r2 < dn1; ++r2) {
              Scalar x = dd(r2, r);
              if (x != 0) m.add_to(tgt + r2 * cm + col, src + r * cm + col, x);
            }
      }
      // f o d_C : Hom(C_{a+1}, D_{a+n})
      std::size_t cm1 = c.dim(a + 1);
      if (cm1 > 0) {
        Matrix dc = c.d(a + 1);
        std::size_t tgt = offset(n - 1, a + 1);
        for (std::size_t r = 0; r < dn; ++r)
          for (std::size_t col = 0; col < cm; ++col)
            for (std::size_t col2 = 0; col2 < cm1; ++col2) {
              Scalar x = dc(col, col2);
              if (x != 0) m.add_to(tgt + r * cm1 + col2, src + r * cm + col, ring.mul(sign, x));
            }
      }
    }
    diffs.push_back(std::move(m));
  }
  return ChainComplex(ring, lo, std::move(dims), std::move(diffs));
}

// tau_{>=0}: drops negative degrees and replaces X_0 by ker(X_0 -> X_{-1}),
// written in the kernel basis.
inline ChainComplex truncate_nonneg(const ChainComplex& x) {
  require_field(x.ring(), "truncate_nonneg");
  const auto& ring = x.ring();
  if (x.hi() < 0) return ChainComplex::concentrated(ring, 0, 0);
  auto ker = kernel_basis(x.d(0));
  std::vector<std::size_t> dims{ker.size()};
  std::vector<Matrix> diffs;
  for (int n = 1; n <= x.hi(); ++n) dims.push_back(x.dim(n));
  if (x.hi() >= 1) {
    CoordinateSolver solver(ring, x.dim(0), ker);
    Matrix d1 = x.d(1);
    Matrix m(ring, ker.size(), x.dim(1));
    for (std::size_t j = 0; j < x.dim(1); ++j) {
      auto cj = solver.coords(d1.col(j));
      for (std::size_t i = 0; i < cj.size(); ++i) m.set(i, j, cj[i]);
    }
    diffs.push_back(std::move(m));
    for (int n = 2; n <= x.hi(); ++n) diffs.push_back(x.d(n));
  }
  return ChainComplex(ring, 0, std::move(dims), std::move(diffs), x.orientation());
}

}  // namespace homotor
