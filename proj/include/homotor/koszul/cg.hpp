#pragma once

// Depth and projective dimension of graded modules over a polynomial ring,
// complexes of free graded modules, and the checks of the Calegari-Geraghty
// lemma and corollary.

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "homotor/koszul/koszul.hpp"
#include "homotor/koszul/resolution.hpp"

namespace homotor::koszul {

inline std::vector<GradedElement> variables(const GradedPolyQuotient& S) {
  std::vector<GradedElement> out;
  for (std::size_t v = 0; v < S.nvars(); ++v) out.push_back(S.variable(v));
  return out;
}

// Koszul homology of M on the variables of its base ring.
inline KoszulHomology koszul_homology_on_variables(const GradedModule& M) {
  return KoszulHomology(KoszulComplex(koszul_coefficients(M, variables(M.base()))));
}

struct HilbertDimension {
  int dim = -1;  // -1 for the zero module
  bool stabilized = true;
};

// Krull dimension from the Hilbert function: the smallest k such that the
// k-th differences of h vanish on the tail of the window. Standard grading only.
inline HilbertDimension hilbert_dimension(const GradedModule& M) {
  const auto& S = M.base();
  for (int w : S.degrees())
    if (w != 1) throw DomainMismatch("Hilbert dimension needs all variables in degree 1");
  if (M.is_zero()) return {};
  const int s = static_cast<int>(S.nvars());
  const int tail = s + 2;
  auto estimate = [&](int top) -> int {
    if (top - tail < 0) return -2;
    for (int k = 0; k <= s + 1; ++k) {
      std::vector<long> h;
      for (int d = top - tail; d <= top; ++d) h.push_back(static_cast<long>(M.dim(d)));
      for (int t = 0; t < k; ++t)
        for (std::size_t i = 0; i + 1 < h.size() - static_cast<std::size_t>(t); ++i) h[i] = h[i + 1] - h[i];
      bool zero = true;
      for (std::size_t i = 0; i + static_cast<std::size_t>(k) < h.size(); ++i) zero = zero && h[i] == 0;
      if (zero) return k;
    }
    return -2;
  };
  const int W = M.max_degree();
  int a = estimate(W), b = estimate(W - 1);
  HilbertDimension out;
  out.dim = a < 0 ? s : a;
  out.stabilized = a >= 0 && a == b;
  return out;
}

struct DepthPd {
  int nvars = 0;
  int depth = 0;
  int pd = 0;
  bool auslander_buchsbaum = false;
  bool stabilized = true;
  std::vector<std::size_t> koszul_dims;  // H_i(K(x) (x) M), i = 0..s
  std::vector<std::size_t> betti;        // ranks of the graded minimal resolution
  std::string status;                    // "ok" or "provisional"
};

// depth = s - max{i : H_i(K(x) (x) M) != 0}; pd from a graded minimal resolution.
inline DepthPd depth_and_pd(const GradedModule& M) {
  const auto& S = M.base();
  detail::require_polynomial(S);
  if (M.is_zero()) throw ValidationError("depth of the zero module is not defined");
  const int s = static_cast<int>(S.nvars());
  DepthPd out;
  out.nvars = s;
  auto kh = koszul_homology_on_variables(M);
  out.koszul_dims = kh.totals(s);
  int top = -1;
  for (int i = 0; i <= s; ++i)
    if (out.koszul_dims[static_cast<std::size_t>(i)] != 0) top = i;
  if (top < 0) throw InvariantFailure("Koszul homology of a nonzero module vanished in the window");
  out.depth = s - top;
  auto res = graded_minimal_resolution(M, s + 1);
  out.betti = res.ranks(s + 1);
  if (res.rank(s + 1) != 0) throw InvariantFailure("graded resolution longer than the number of variables");
  out.pd = res.length();
  out.stabilized = kh.stabilized() && res.stabilized;
  out.auslander_buchsbaum = out.depth + out.pd == s;
  out.status = out.stabilized ? "ok" : "provisional";
  return out;
}

// Cochain complex of free graded S-modules D^q = sum S(-a), q = q_lo..q_lo+len.
// diffs[k][row][col] is the entry of D^{q_lo+k} -> D^{q_lo+k+1}, homogeneous
// of degree a_col - a_row.
class FreeGradedComplex {
 public:
  FreeGradedComplex(PolyRingPtr S, int q_lo, std::vector<std::vector<int>> twists, std::vector<std::vector<std::vector<Poly>>> diffs)
      : S_(std::move(S)), q_lo_(q_lo), twists_(std::move(twists)), diffs_(std::move(diffs)) {
    build();
  }

  const GradedPolyQuotient& ring() const { return *S_; }
  PolyRingPtr ring_ptr() const { return S_; }
  int q_lo() const { return q_lo_; }
  int q_hi() const { return q_lo_ + static_cast<int>(twists_.size()) - 1; }
  int length() const { return q_hi() - q_lo_; }
  const std::vector<int>& twists(int q) const { return twists_.at(static_cast<std::size_t>(q - q_lo_)); }
  const GradedModule& term(int q) const { return terms_.at(static_cast<std::size_t>(q - q_lo_)); }
  const std::vector<std::vector<Poly>>& diff(int q) const { return diffs_.at(static_cast<std::size_t>(q - q_lo_)); }

  // d^q in degree d; zero outside the window.
  Matrix differential(int q, int d) const {
    if (q < q_lo_ || q >= q_hi()) {
      std::size_t rows = q + 1 >= q_lo_ && q + 1 <= q_hi() ? term(q + 1).dim(d) : 0;
      std::size_t cols = q >= q_lo_ && q <= q_hi() ? term(q).dim(d) : 0;
      return Matrix::zero(S_->field(), rows, cols);
    }
    return maps_[static_cast<std::size_t>(q - q_lo_)][static_cast<std::size_t>(d)];
  }

  // H^q(D) as a graded S-module.
  GradedModule cohomology(int q) const {
    const int W = S_->max_degree();
    const auto& F = term(q);
    std::vector<std::vector<Vector>> z(static_cast<std::size_t>(W) + 1), b(static_cast<std::size_t>(W) + 1);
    for (int d = 0; d <= W; ++d) {
      z[static_cast<std::size_t>(d)] = kernel_basis(differential(q, d));
      if (q > q_lo_) b[static_cast<std::size_t>(d)] = image_basis(differential(q - 1, d));
    }
    return subquotient(F, z, b).module;
  }

  // D (x)_S k: constant terms of the entries.
  ChainComplex reduction_mod_maximal_ideal() const {
    const auto& k = S_->field();
    std::vector<std::size_t> dims;
    std::vector<Matrix> ds;
    for (int q = q_lo_; q <= q_hi(); ++q) dims.push_back(twists(q).size());
    for (int q = q_lo_; q < q_hi(); ++q) {
      const auto& e = diff(q);
      Matrix m(k, twists(q + 1).size(), twists(q).size());
      Monomial one(S_->nvars(), 0);
      for (std::size_t r = 0; r < e.size(); ++r)
        for (std::size_t c = 0; c < e[r].size(); ++c) {
          auto it = e[r][c].terms().find(one);
          if (it != e[r][c].terms().end()) m.set(r, c, it->second);
        }
      ds.push_back(std::move(m));
    }
    return ChainComplex::cochain(k, q_lo_, dims, std::move(ds));
  }

 private:
  void build() {
    const auto& S = *S_;
    if (twists_.empty()) throw ValidationError("complex needs at least one term");
    if (diffs_.size() + 1 != twists_.size()) throw ValidationError("complex needs one differential between adjacent terms");
    for (auto& t : twists_) terms_.push_back(GradedModule::free(S_, t));
    for (int q = q_lo_; q < q_hi(); ++q) {
      const auto& src = twists(q);
      const auto& dst = twists(q + 1);
      const auto& e = diff(q);
      if (e.size() != dst.size()) throw ValidationError("differential d^" + std::to_string(q) + " has the wrong number of rows");
      std::vector<Vector> images;
      for (std::size_t c = 0; c < src.size(); ++c) {
        Vector img(term(q + 1).dim(src[c]), 0);
        std::size_t off = 0;
        for (std::size_t r = 0; r < dst.size(); ++r) {
          if (e[r].size() != src.size()) throw ValidationError("differential d^" + std::to_string(q) + " has the wrong number of columns");
          const int want = src[c] - dst[r];
          const Poly& f = e[r][c];
          if (!f.is_zero()) {
            if (f.nvars() != S.nvars()) throw ValidationError("entry has the wrong number of variables");
            if (f.degree(S.degrees()) != want)
              throw ValidationError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") of d^" + std::to_string(q) +
                                    " must have degree " + std::to_string(want));
            if (src[c] > S.max_degree()) throw TruncationError("generator degree beyond the expansion bound");
            auto el = S.element(f);
            for (std::size_t i = 0; i < el.coords.size(); ++i) img[off + i] = el.coords[i];
          }
          off += S.dim(src[c] - dst[r]);
        }
        images.push_back(std::move(img));
      }
      maps_.push_back(detail::graded_free_map(term(q), src, images, term(q + 1)));
    }
    for (int q = q_lo_ + 1; q < q_hi(); ++q)
      for (int d = 0; d <= S.max_degree(); ++d)
        if (!(differential(q, d) * differential(q - 1, d)).is_zero())
          throw ValidationError("d^" + std::to_string(q) + " d^" + std::to_string(q - 1) + " != 0 in degree " + std::to_string(d));
  }

  PolyRingPtr S_;
  int q_lo_;
  std::vector<std::vector<int>> twists_;
  std::vector<std::vector<std::vector<Poly>>> diffs_;
  std::vector<GradedModule> terms_;
  std::vector<std::vector<Matrix>> maps_;  // [q - q_lo][d]
};

struct CgLemmaReport {
  std::string status;  // "ok", "vacuous", "violated" or "provisional"
  int nvars = 0;
  int ell = 0;
  int q_m = 0;
  int q_s = 0;
  std::vector<std::size_t> cohomology_dims;  // total dims in the window, q = q_m..q_s
  std::vector<int> krull_dims;                // per q, -1 for zero
  int dim_h = -1;
  int bound = 0;  // depth S - ell
  bool inequality = false;
  bool equality = false;
  bool concentrated = false;  // H^i = 0 for i < q_s
  int top_depth = -1;
  int top_pd = -1;
  bool top_checks = false;  // depth H^{q_s} = s - ell and pd H^{q_s} = ell
  bool stabilized = true;
  std::string detail;
};

inline CgLemmaReport cg_lemma_check(const FreeGradedComplex& D) {
  const auto& S = D.ring();
  detail::require_polynomial(S);
  CgLemmaReport r;
  r.nvars = static_cast<int>(S.nvars());
  r.q_m = D.q_lo();
  r.q_s = D.q_hi();
  r.ell = r.q_s - r.q_m;
  r.bound = r.nvars - r.ell;
  std::vector<GradedModule> H;
  bool any = false;
  for (int q = r.q_m; q <= r.q_s; ++q) {
    H.push_back(D.cohomology(q));
    const auto& h = H.back();
    r.cohomology_dims.push_back(h.total_dim());
    auto hd = hilbert_dimension(h);
    r.krull_dims.push_back(hd.dim);
    r.stabilized = r.stabilized && hd.stabilized;
    r.dim_h = std::max(r.dim_h, hd.dim);
    any = any || !h.is_zero();
  }
  if (!any) {
    r.status = "vacuous";
    r.detail = "H^*(D) vanishes in the window; the lemma says nothing";
    return r;
  }
  r.inequality = r.dim_h >= r.bound;
  r.equality = r.dim_h == r.bound;
  r.concentrated = true;
  for (int q = r.q_m; q < r.q_s; ++q) r.concentrated = r.concentrated && H[static_cast<std::size_t>(q - r.q_m)].is_zero();
  if (r.equality) {
    const auto& top = H.back();
    if (!top.is_zero()) {
      auto dp = depth_and_pd(top);
      r.top_depth = dp.depth;
      r.top_pd = dp.pd;
      r.stabilized = r.stabilized && dp.stabilized;
      r.top_checks = dp.depth == r.nvars - r.ell && dp.pd == r.ell;
    }
  }
  bool ok = r.inequality && (!r.equality || (r.concentrated && r.top_checks));
  if (!ok) {
    r.status = r.stabilized ? "violated" : "provisional";
    r.detail = !r.inequality ? "dim H^*(D) < depth S - ell" : "equality without concentration, depth or pd";
  } else {
    r.status = r.stabilized ? "ok" : "provisional";
    r.detail = r.equality ? "equality: H concentrated in degree q_s with the predicted depth and pd" : "strict inequality";
  }
  return r;
}

struct CgCorollaryReport {
  bool ok = false;
  std::string failed_clause;
  CgLemmaReport lemma;
  std::vector<std::size_t> reduced_dims;  // dim H^{q_s - i}(C (x) k), i = 0..ell
  std::vector<std::size_t> tor_dims;      // dim Tor_i^S(H^{q_s}, k), i = 0..s
  bool kunneth_collapse = false;
  bool action_ok = false;
  bool freely_generated = false;
  std::string free_detail;
  bool stabilized = true;
};

// R must be S/(some variables, identifications) and receive each variable of S
// either as 0 or as one of its own variables, hitting all of them; the
// R-action on H^{q_s} is then the induced one and is checked to be well defined.
inline CgCorollaryReport cg_corollary_check(const FreeGradedComplex& C, PolyRingPtr R, const std::vector<GradedElement>& phi) {
  CgCorollaryReport out;
  const auto S = C.ring_ptr();
  detail::require_polynomial(*S);
  out.lemma = cg_lemma_check(C);
  out.stabilized = out.lemma.status != "provisional";
  if (out.lemma.status == "vacuous") {
    out.failed_clause = "H^*(C) vanishes";
    return out;
  }
  if (!out.lemma.concentrated) {
    out.failed_clause = "H^*(C) is not concentrated in the top degree";
    return out;
  }
  const int ell = out.lemma.ell, s = out.lemma.nvars;
  auto reduced = C.reduction_mod_maximal_ideal();
  for (int i = 0; i <= ell; ++i) out.reduced_dims.push_back(cohomology(reduced, C.q_hi() - i).dim());
  GradedModule top = C.cohomology(C.q_hi());
  auto kh = koszul_homology_on_variables(top);
  out.tor_dims = kh.totals(s);
  out.stabilized = out.stabilized && kh.stabilized();
  out.kunneth_collapse = true;
  for (int i = 0; i <= s; ++i) {
    std::size_t lhs = i <= ell ? out.reduced_dims[static_cast<std::size_t>(i)] : 0;
    if (lhs != out.tor_dims[static_cast<std::size_t>(i)]) out.kunneth_collapse = false;
  }
  if (!out.kunneth_collapse) {
    out.failed_clause = "Kunneth collapse: dim H^{q_s-i}(C (x) k) differs from dim Tor_i(H^{q_s}, k)";
    return out;
  }
  // induced R-action on the top cohomology
  if (phi.size() != S->nvars()) throw ValidationError("structure map needs one image per variable");
  std::vector<int> lift(R->nvars(), -1);
  std::vector<int> hit(S->nvars(), -1);
  for (std::size_t v = 0; v < phi.size(); ++v) {
    if (is_zero(phi[v].coords)) continue;
    for (std::size_t j = 0; j < R->nvars(); ++j)
      if (phi[v].degree == R->degree_of(j) && phi[v].coords == R->variable(j).coords) hit[v] = static_cast<int>(j);
    if (hit[v] < 0) throw DomainMismatch("structure map must send each variable to 0 or to a variable of R");
    if (lift[static_cast<std::size_t>(hit[v])] < 0) lift[static_cast<std::size_t>(hit[v])] = static_cast<int>(v);
  }
  for (auto l : lift)
    if (l < 0) throw DomainMismatch("structure map must be surjective");
  out.action_ok = true;
  for (std::size_t v = 0; v < phi.size() && out.action_ok; ++v)
    for (int d = 0; d + S->degree_of(v) <= top.max_degree(); ++d) {
      const Matrix& a = top.action(v, d);
      bool good = hit[v] < 0 ? a.is_zero() : a == top.action(static_cast<std::size_t>(lift[static_cast<std::size_t>(hit[v])]), d);
      if (!good) {
        out.action_ok = false;
        break;
      }
    }
  std::optional<GradedModule> top_r;
  if (out.action_ok) {
    std::vector<std::vector<Matrix>> act;
    for (std::size_t j = 0; j < R->nvars(); ++j) {
      std::vector<Matrix> per;
      for (int d = 0; d + R->degree_of(j) <= top.max_degree(); ++d) per.push_back(top.action(static_cast<std::size_t>(lift[j]), d));
      act.push_back(std::move(per));
    }
    try {
      top_r.emplace(R, top.dims(), std::move(act));
    } catch (const ValidationError&) {
      out.action_ok = false;
    }
  }
  if (!out.action_ok) {
    out.failed_clause = "the kernel of S -> R does not annihilate H^{q_s}";
    return out;
  }
  TorModule tm(S, R, phi, *top_r);
  auto fg = tm.free_generation_check();
  out.freely_generated = fg.free;
  out.free_detail = fg.detail;
  out.stabilized = out.stabilized && tm.stabilized();
  if (!fg.free) {
    out.failed_clause = "Tor_*(H^{q_s}) is not freely generated over Tor_*(R) by Tor_0";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace homotor::koszul
