#pragma once

// Koszul complexes K(f_1..f_s) (x) V with their DG algebra and module
// structures, Koszul homology and Tor algebras.
//
// Coefficients come in weight pieces V_0..V_W with f_i: V_w -> V_{w+deg f_i}.
// A graded ring or module gives one piece per internal degree; a
// FinLocalAlgebra gives a single piece with all deg f_i = 0.

#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homotor/complexes.hpp"
#include "homotor/graded_algebra.hpp"
#include "homotor/koszul/module.hpp"
#include "homotor/local_algebra.hpp"

namespace homotor::koszul {

struct KoszulCoefficients {
  CoefficientRing field = CoefficientRing::prime_field(3);
  std::vector<int> fdeg;                 // degree of each f_i
  std::vector<std::size_t> dims;         // dim V_w, w = 0..W
  std::vector<std::vector<Matrix>> act;  // act[i][w]: V_w -> V_{w + fdeg[i]}, for w + fdeg[i] <= W
  int max_weight() const { return static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int w) const { return w < 0 || w > max_weight() ? 0 : dims[static_cast<std::size_t>(w)]; }
};

// Product of basis vectors: (u, i) x (u', j) -> vector in the target's piece u + u'.
using PieceProduct = std::function<Vector(int u, std::size_t i, int up, std::size_t j)>;

inline KoszulCoefficients koszul_coefficients(const GradedModule& m, const std::vector<GradedElement>& f) {
  KoszulCoefficients c;
  c.field = m.field();
  c.dims = m.dims();
  for (auto& e : f) {
    if (e.degree < 0) throw ValidationError("Koszul element has negative degree");
    if (e.degree == 0 && !is_zero(e.coords)) throw ValidationError("Koszul element is a unit; its Koszul complex is exact");
    if (e.degree == 0) throw ValidationError("Koszul element of degree 0 must have a positive nominal degree");
    c.fdeg.push_back(e.degree);
    std::vector<Matrix> a;
    for (int w = 0; w + e.degree <= m.max_degree(); ++w) a.push_back(m.element_action(e, w));
    c.act.push_back(std::move(a));
  }
  return c;
}

inline KoszulCoefficients koszul_coefficients(const FinLocalAlgebra& a, const std::vector<Vector>& f) {
  KoszulCoefficients c;
  c.field = a.field();
  c.dims = {a.dim()};
  for (auto& x : f) {
    if (x.size() != a.dim()) throw ValidationError("Koszul element has the wrong length");
    if (!a.in_ideal(x)) throw ValidationError("Koszul element is a unit; its Koszul complex is exact");
    c.fdeg.push_back(0);
    c.act.push_back({a.left_multiplication(x)});
  }
  return c;
}

// Subsets of {0..s-1} of size j as bitmasks in colex order.
inline std::vector<std::uint32_t> colex_subsets(std::size_t s, std::size_t j) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << s); ++m)
    if (static_cast<std::size_t>(std::popcount(m)) == j) out.push_back(m);
  return out;
}

// Sign of e_I ^ e_J -> e_{I u J}: parity of pairs i in I, j in J with i > j.
inline int wedge_sign(std::uint32_t I, std::uint32_t J) {
  int inv = 0;
  for (std::uint32_t b = I; b; b &= b - 1) {
    int i = std::countr_zero(b);
    inv += std::popcount(J & ((1u << i) - 1));
  }
  return inv % 2 == 0 ? 1 : -1;
}

class KoszulComplex {
 public:
  explicit KoszulComplex(KoszulCoefficients c) : c_(std::move(c)) {
    if (c_.fdeg.size() > 16) throw BudgetExceeded("Koszul complex on more than 16 elements", static_cast<double>(c_.fdeg.size()));
    build();
  }

  const KoszulCoefficients& coefficients() const { return c_; }
  std::size_t length() const { return c_.fdeg.size(); }
  int max_weight() const { return c_.max_weight(); }
  const CoefficientRing& field() const { return c_.field; }

  // Complex of weight w (homological degrees 0..s).
  const ChainComplex& at_weight(int w) const { return complexes_.at(static_cast<std::size_t>(w)); }

  int subset_degree(std::uint32_t I) const {
    int d = 0;
    for (std::size_t i = 0; i < length(); ++i)
      if (I >> i & 1u) d += c_.fdeg[i];
    return d;
  }

  // Offset of the block e_I (x) V_{w - deg I} inside K_{|I|} of weight w,
  // or nullopt when that block is empty.
  std::optional<std::size_t> block_offset(std::uint32_t I, int w) const {
    const auto& off = offsets_[static_cast<std::size_t>(w)];
    auto it = off.find(I);
    if (it == off.end()) return std::nullopt;
    return it->second;
  }

  // Product of two chains of K (x) V and K (x) V' landing in K (x) V''.
  static Vector product(const KoszulComplex& a, int ja, int wa, const Vector& x, const KoszulComplex& b, int jb, int wb,
                        const Vector& y, const KoszulComplex& target, const PieceProduct& mul) {
    const auto& k = target.field();
    const int w = wa + wb, j = ja + jb;
    if (w > target.max_weight()) throw TruncationError("product beyond the weight window");
    Vector out(target.at_weight(w).dim(j), 0);
    if (j > static_cast<int>(target.length())) return out;
    for (auto I : colex_subsets(a.length(), static_cast<std::size_t>(ja))) {
      auto oi = a.block_offset(I, wa);
      if (!oi) continue;
      const int ua = wa - a.subset_degree(I);
      for (auto J : colex_subsets(b.length(), static_cast<std::size_t>(jb))) {
        if (I & J) continue;
        auto oj = b.block_offset(J, wb);
        if (!oj) continue;
        const int ub = wb - b.subset_degree(J);
        auto ot = target.block_offset(I | J, w);
        if (!ot) continue;
        const int sign = wedge_sign(I, J);
        for (std::size_t p = 0; p < a.c_.dim(ua); ++p) {
          Scalar cx = x[*oi + p];
          if (cx == 0) continue;
          for (std::size_t q = 0; q < b.c_.dim(ub); ++q) {
            Scalar cy = y[*oj + q];
            if (cy == 0) continue;
            Vector v = mul(ua, p, ub, q);
            Scalar c = k.mul(cx, cy);
            if (sign < 0) c = k.neg(c);
            for (std::size_t r = 0; r < v.size(); ++r)
              if (v[r] != 0) out[*ot + r] = k.add(out[*ot + r], k.mul(c, v[r]));
          }
        }
      }
    }
    return out;
  }

 private:
  void build() {
    const std::size_t s = length();
    const int W = max_weight();
    for (std::size_t i = 0; i < s; ++i)
      for (int w = 0; w + c_.fdeg[i] <= W; ++w) {
        const Matrix& m = c_.act[i][static_cast<std::size_t>(w)];
        if (m.rows() != c_.dim(w + c_.fdeg[i]) || m.cols() != c_.dim(w))
          throw ValidationError("Koszul coefficient action has the wrong shape");
      }
    offsets_.assign(static_cast<std::size_t>(W) + 1, {});
    for (int w = 0; w <= W; ++w) {
      std::vector<std::size_t> dims;
      for (std::size_t j = 0; j <= s; ++j) {
        std::size_t n = 0;
        for (auto I : colex_subsets(s, j)) {
          int u = w - subset_degree(I);
          if (u < 0 || c_.dim(u) == 0) continue;
          offsets_[static_cast<std::size_t>(w)][I] = n;
          n += c_.dim(u);
        }
        dims.push_back(n);
      }
      std::vector<Matrix> diffs;
      for (std::size_t j = 1; j <= s; ++j) {
        Matrix d(c_.field, dims[j - 1], dims[j]);
        for (auto I : colex_subsets(s, j)) {
          auto src = block_offset(I, w);
          if (!src) continue;
          const int u = w - subset_degree(I);
          int t = 0;
          for (std::size_t i = 0; i < s; ++i) {
            if (!(I >> i & 1u)) continue;
            std::uint32_t J = I & ~(1u << i);
            auto dst = block_offset(J, w);
            const Matrix& a = c_.act[i][static_cast<std::size_t>(u)];
            if (dst) d.put_block(*dst, *src, t % 2 == 0 ? a : a.scaled(-1));
            ++t;
          }
        }
        diffs.push_back(std::move(d));
      }
      complexes_.emplace_back(c_.field, 0, std::move(dims), std::move(diffs));
    }
  }

  KoszulCoefficients c_;
  std::vector<std::map<std::uint32_t, std::size_t>> offsets_;
  std::vector<ChainComplex> complexes_;
};

// A Koszul complex K(f) (x) R together with the ring multiplication of R,
// so that K (x) R is a DG algebra.
class KoszulAlgebra {
 public:
  KoszulAlgebra(KoszulCoefficients c, PieceProduct mul) : k_(std::move(c)), mul_(std::move(mul)) {}

  const KoszulComplex& complex() const { return k_; }
  const PieceProduct& piece_product() const { return mul_; }

  Vector multiply(int ja, int wa, const Vector& x, int jb, int wb, const Vector& y) const {
    return KoszulComplex::product(k_, ja, wa, x, k_, jb, wb, y, k_, mul_);
  }

 private:
  KoszulComplex k_;
  PieceProduct mul_;
};

struct LeibnizReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::string first_failure;
};

// d(a.b) = da.b + (-1)^|a| a.db on all basis pairs whose weights fit the window.
inline LeibnizReport check_leibniz(const KoszulComplex& a, const KoszulComplex& b, const KoszulComplex& target,
                                   const PieceProduct& mul) {
  LeibnizReport r;
  const auto& k = target.field();
  const int s = static_cast<int>(target.length());
  for (int wa = 0; wa <= a.max_weight(); ++wa)
    for (int wb = 0; wa + wb <= target.max_weight() && wb <= b.max_weight(); ++wb)
      for (int ja = 0; ja <= s; ++ja)
        for (int jb = 0; ja + jb <= s; ++jb) {
          const auto& ca = a.at_weight(wa);
          const auto& cb = b.at_weight(wb);
          const auto& ct = target.at_weight(wa + wb);
          for (std::size_t p = 0; p < ca.dim(ja); ++p)
            for (std::size_t q = 0; q < cb.dim(jb); ++q) {
              ++r.pairs_checked;
              Vector x = unit_vector(ca.dim(ja), p), y = unit_vector(cb.dim(jb), q);
              Vector lhs = ct.d(ja + jb).apply(KoszulComplex::product(a, ja, wa, x, b, jb, wb, y, target, mul));
              Vector rhs(ct.dim(ja + jb - 1), 0);
              if (ja > 0) rhs = KoszulComplex::product(a, ja - 1, wa, ca.d(ja).apply(x), b, jb, wb, y, target, mul);
              if (jb > 0) {
                Vector t = KoszulComplex::product(a, ja, wa, x, b, jb - 1, wb, cb.d(jb).apply(y), target, mul);
                axpy(k, rhs, ja % 2 == 0 ? 1 : k.neg(1), t);
              }
              if (lhs != rhs && r.ok) {
                r.ok = false;
                r.first_failure = "degrees (" + std::to_string(ja) + "," + std::to_string(jb) + "), weights (" +
                                  std::to_string(wa) + "," + std::to_string(wb) + "), basis pair (" + std::to_string(p) + "," +
                                  std::to_string(q) + ")";
              }
            }
        }
  return r;
}

inline LeibnizReport check_leibniz(const KoszulAlgebra& a) { return check_leibniz(a.complex(), a.complex(), a.complex(), a.piece_product()); }

// Koszul complex of f_1..f_s over a graded quotient R (the complex K(f) (x) R).
inline KoszulAlgebra koszul_complex(PolyRingPtr R, const std::vector<GradedElement>& f) {
  auto c = koszul_coefficients(GradedModule::regular(R), f);
  PieceProduct mul = [R](int u, std::size_t i, int up, std::size_t j) { return R->basis_product(u, i, up, j); };
  return KoszulAlgebra(std::move(c), std::move(mul));
}

inline KoszulAlgebra koszul_complex(std::shared_ptr<const FinLocalAlgebra> A, const std::vector<Vector>& f) {
  auto c = koszul_coefficients(*A, f);
  PieceProduct mul = [A](int, std::size_t i, int, std::size_t j) { return to_dense(A->basis_product(i, j), A->dim()); };
  return KoszulAlgebra(std::move(c), std::move(mul));
}

// Homology of a Koszul complex, bigraded by homological degree j and weight w.
class KoszulHomology {
 public:
  explicit KoszulHomology(const KoszulComplex& k) {
    for (int w = 0; w <= k.max_weight(); ++w) {
      std::vector<HomologyBasis> row;
      for (int j = 0; j <= static_cast<int>(k.length()); ++j) row.emplace_back(k.at_weight(w), j);
      hb_.push_back(std::move(row));
    }
    s_ = static_cast<int>(k.length());
  }

  int length() const { return s_; }
  int max_weight() const { return static_cast<int>(hb_.size()) - 1; }
  const HomologyBasis& at(int j, int w) const { return hb_.at(static_cast<std::size_t>(w)).at(static_cast<std::size_t>(j)); }
  std::size_t dim(int j, int w) const {
    if (j < 0 || j > s_ || w < 0 || w > max_weight()) return 0;
    return at(j, w).dim();
  }
  std::size_t total(int j) const {
    std::size_t n = 0;
    for (int w = 0; w <= max_weight(); ++w) n += dim(j, w);
    return n;
  }
  std::vector<std::size_t> totals(int top) const {
    std::vector<std::size_t> out;
    for (int j = 0; j <= top; ++j) out.push_back(total(j));
    return out;
  }
  // Nothing lives in the top weight, so the totals agree with those of the
  // next smaller window.
  bool stabilized() const {
    for (int j = 0; j <= s_; ++j)
      if (dim(j, max_weight()) != 0) return false;
    return true;
  }
  // bigraded[j][w]
  std::vector<std::vector<std::size_t>> bigraded(int top) const {
    std::vector<std::vector<std::size_t>> out;
    for (int j = 0; j <= top; ++j) {
      std::vector<std::size_t> row;
      for (int w = 0; w <= max_weight(); ++w) row.push_back(dim(j, w));
      out.push_back(std::move(row));
    }
    return out;
  }

 private:
  std::vector<std::vector<HomologyBasis>> hb_;
  int s_ = 0;
};

struct TorAlgebra {
  GradedAlgebra algebra;
  std::vector<std::vector<std::size_t>> bigraded;  // [j][w]
  bool stabilized = true;
  std::size_t products_beyond_window = 0;
  LeibnizReport leibniz;
  std::string warning;
};

namespace detail {

inline void require_polynomial(const GradedPolyQuotient& S) {
  if (!S.is_polynomial())
    throw DomainMismatch("the Koszul complex on the variables resolves k only over a polynomial ring; " + S.str() + " has relations");
}

// Offsets of weight blocks inside the flattened degree-j basis.
inline std::vector<std::size_t> weight_offsets(const KoszulHomology& h, int j) {
  std::vector<std::size_t> off;
  std::size_t n = 0;
  for (int w = 0; w <= h.max_weight(); ++w) {
    off.push_back(n);
    n += h.dim(j, w);
  }
  off.push_back(n);
  return off;
}

inline std::pair<int, std::size_t> locate(const std::vector<std::size_t>& off, std::size_t idx) {
  int w = 0;
  while (off[static_cast<std::size_t>(w) + 1] <= idx) ++w;
  return {w, idx - off[static_cast<std::size_t>(w)]};
}

}  // namespace detail

// Homology of a DG Koszul algebra as a graded algebra in degrees 0..top,
// with the weights summed.
inline TorAlgebra koszul_homology_algebra(const KoszulAlgebra& ka, const Vector& unit_chain, int top) {
  const auto& K = ka.complex();
  KoszulHomology h(K);
  const auto& k = K.field();
  std::vector<std::size_t> dims = h.totals(top);
  std::vector<std::vector<std::size_t>> off;
  for (int j = 0; j <= top; ++j) off.push_back(detail::weight_offsets(h, j));
  Vector unit(dims[0], 0);
  {
    Vector c = h.at(0, 0).coords(unit_chain);
    for (std::size_t i = 0; i < c.size(); ++i) unit[off[0][0] + i] = c[i];
  }
  TorAlgebra out{GradedAlgebra(k, dims, top, unit), h.bigraded(top), h.stabilized(), 0, check_leibniz(ka), ""};
  for (int m = 0; m <= top; ++m)
    for (int n = 0; m + n <= top; ++n)
      for (std::size_t i = 0; i < dims[static_cast<std::size_t>(m)]; ++i)
        for (std::size_t j = 0; j < dims[static_cast<std::size_t>(n)]; ++j) {
          Vector v(dims[static_cast<std::size_t>(m + n)], 0);
          auto [wa, ia] = detail::locate(off[static_cast<std::size_t>(m)], i);
          auto [wb, ib] = detail::locate(off[static_cast<std::size_t>(n)], j);
          if (wa + wb > K.max_weight()) {
            ++out.products_beyond_window;
          } else if (m + n <= h.length()) {
            const Vector& x = h.at(m, wa).representatives()[ia];
            const Vector& y = h.at(n, wb).representatives()[ib];
            Vector c = h.at(m + n, wa + wb).coords(ka.multiply(m, wa, x, n, wb, y));
            for (std::size_t r = 0; r < c.size(); ++r) v[off[static_cast<std::size_t>(m + n)][static_cast<std::size_t>(wa + wb)] + r] = c[r];
          }
          out.algebra.set_product(m, i, n, j, std::move(v));
        }
  if (!out.stabilized) out.warning = "homology in the top weight is nonzero; enlarge the degree bound";
  if (out.products_beyond_window > 0)
    out.warning += std::string(out.warning.empty() ? "" : "; ") + std::to_string(out.products_beyond_window) +
                   " products land beyond the weight window and were set to zero";
  return out;
}

// Tor^S_*(R, k) = H_*(K(x) (x)_S R) for a polynomial ring S and an S-algebra
// R given by the images phi(x_i).
inline TorAlgebra tor_algebra(PolyRingPtr S, PolyRingPtr R, const std::vector<GradedElement>& phi, int top) {
  detail::require_polynomial(*S);
  if (phi.size() != S->nvars()) throw ValidationError("structure map needs one image per variable");
  for (std::size_t v = 0; v < phi.size(); ++v)
    if (phi[v].degree != S->degree_of(v)) throw ValidationError("structure map must preserve degrees");
  if (top < 0) throw ValidationError("top degree must be non-negative");
  auto ka = koszul_complex(R, phi);
  return koszul_homology_algebra(ka, unit_vector(1, 0), top);
}

// Tor^{A-poly}: Koszul complex of a FinLocalAlgebra on elements f (single weight).
inline TorAlgebra koszul_homology_algebra(std::shared_ptr<const FinLocalAlgebra> A, const std::vector<Vector>& f, int top) {
  auto ka = koszul_complex(A, f);
  return koszul_homology_algebra(ka, A->unit(), top);
}

struct FreeGenerationCheck {
  bool free = true;
  int failing_degree = -1;
  int failing_weight = -1;
  std::string detail;
};

// H_*(K(x) (x)_S M) for an R-module M, as a module over H_*(K(x) (x)_S R).
class TorModule {
 public:
  TorModule(PolyRingPtr S, PolyRingPtr R, const std::vector<GradedElement>& phi, GradedModule M)
      : R_(R),
        M_(std::move(M)),
        ka_(koszul_complex(R, phi)),
        km_(koszul_coefficients(M_, phi)),
        hr_(ka_.complex()),
        hm_(km_) {
    detail::require_polynomial(*S);
    if (M_.base_ptr() != R && M_.base().str() != R->str()) throw ValidationError("module must be over the algebra R");
    if (M_.max_degree() != R->max_degree()) throw ValidationError("module and algebra must share the degree bound");
    mixed_ = [this](int u, std::size_t i, int up, std::size_t j) {
      GradedElement r{u, unit_vector(R_->dim(u), i)};
      return M_.act(r, up, unit_vector(M_.dim(up), j));
    };
  }

  TorModule(const TorModule&) = delete;
  TorModule& operator=(const TorModule&) = delete;

  const KoszulHomology& algebra_homology() const { return hr_; }
  const KoszulHomology& module_homology() const { return hm_; }
  std::vector<std::vector<std::size_t>> bigraded(int top) const { return hm_.bigraded(top); }
  std::vector<std::size_t> dims(int top) const { return hm_.totals(top); }
  bool stabilized() const { return hm_.stabilized() && hr_.stabilized(); }

  LeibnizReport check_leibniz() const { return koszul::check_leibniz(ka_.complex(), km_, km_, mixed_); }

  // Class of (algebra class (ja, wa, a)) * (module class (jm, wm, m)).
  Vector act(int ja, int wa, std::size_t a, int jm, int wm, std::size_t m) const {
    const Vector& x = hr_.at(ja, wa).representatives()[a];
    const Vector& y = hm_.at(jm, wm).representatives()[m];
    Vector prod = KoszulComplex::product(ka_.complex(), ja, wa, x, km_, jm, wm, y, km_, mixed_);
    return hm_.at(ja + jm, wa + wm).coords(prod);
  }

  // Tor_j(R) (x) Tor_0(M) -> Tor_j(M) is bijective in every bidegree of the window.
  FreeGenerationCheck free_generation_check() const {
    FreeGenerationCheck out;
    const auto& k = km_.field();
    for (int j = 0; j <= hm_.length(); ++j)
      for (int w = 0; w <= hm_.max_weight(); ++w) {
        std::vector<Vector> cols;
        for (int wa = 0; wa <= w; ++wa)
          for (std::size_t a = 0; a < hr_.dim(j, wa); ++a)
            for (std::size_t m = 0; m < hm_.dim(0, w - wa); ++m) cols.push_back(act(j, wa, a, 0, w - wa, m));
        const std::size_t target = hm_.dim(j, w);
        std::size_t r = cols.empty() || target == 0 ? 0 : rank(Matrix::from_columns(k, target, cols));
        if (cols.size() != target || r != target) {
          out.free = false;
          out.failing_degree = j;
          out.failing_weight = w;
          out.detail = "degree " + std::to_string(j) + ", weight " + std::to_string(w) + ": " + std::to_string(cols.size()) +
                       " products of rank " + std::to_string(r) + " against dimension " + std::to_string(target);
          return out;
        }
      }
    return out;
  }

 private:
  PolyRingPtr R_;
  GradedModule M_;
  KoszulAlgebra ka_;
  KoszulComplex km_;
  KoszulHomology hr_, hm_;
  PieceProduct mixed_;
};

}  // namespace homotor::koszul
