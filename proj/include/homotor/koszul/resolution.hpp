#pragma once

// Minimal free resolutions: over a FinLocalAlgebra (ungraded) and over a
// GradedPolyQuotient degree by degree.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homotor/complexes.hpp"
#include "homotor/koszul/module.hpp"
#include "homotor/local_algebra.hpp"

namespace homotor::koszul {

// ... -> A^{b_1} -> A^{b_0} -> M. differentials[i-1] is F_i -> F_{i-1};
// columns of generator h are the A-coefficient vectors of its image.
struct LocalResolution {
  std::vector<std::size_t> ranks;
  std::vector<FreeModuleMap> differentials;
  std::optional<Matrix> augmentation;  // F_0 -> M as a k-matrix
  bool complete = false;  // the kernel vanished before the requested length
};

namespace detail {

// Rows of F = A^rank at the unit coordinate of each generator are zero.
inline bool in_maximal_ideal_times_free(const FinLocalAlgebra& a, const Vector& v) {
  for (std::size_t g = 0; g * a.dim() < v.size(); ++g)
    if (v[g * a.dim()] != 0) return false;
  return true;
}

// k-matrix of the A-linear map A^{gens.size()} -> target sending e_h to gens[h],
// where `act(i, v)` multiplies a target vector by the basis element e_i.
template <class Act>
Matrix free_map_matrix(const FinLocalAlgebra& a, const std::vector<Vector>& gens, std::size_t target_dim, Act act) {
  Matrix m(a.field(), target_dim, gens.size() * a.dim());
  for (std::size_t h = 0; h < gens.size(); ++h)
    for (std::size_t i = 0; i < a.dim(); ++i) {
      Vector col = act(i, gens[h]);
      for (std::size_t r = 0; r < target_dim; ++r) m.set(r, h * a.dim() + i, col[r]);
    }
  return m;
}

}  // namespace detail

inline LocalResolution minimal_free_resolution(const LocalModule& M, int length) {
  const auto& A = M.algebra();
  const auto& k = A.field();
  if (length < 0) throw ValidationError("resolution length must be non-negative");
  LocalResolution res;
  // generators of M: a basis of M modulo mM
  Subspace mm(k, M.dim());
  for (auto i : A.ideal_basis())
    for (std::size_t c = 0; c < M.dim(); ++c) mm.add(M.action(i).col(c));
  std::vector<Vector> gens;
  for (std::size_t c = 0; c < M.dim(); ++c)
    if (mm.add(unit_vector(M.dim(), c))) gens.push_back(unit_vector(M.dim(), c));
  res.ranks.push_back(gens.size());
  res.augmentation = detail::free_map_matrix(A, gens, M.dim(), [&](std::size_t i, const Vector& v) { return M.action(i).apply(v); });
  Matrix current = *res.augmentation;
  for (int step = 1; step <= length; ++step) {
    const std::size_t prev_rank = res.ranks.back();
    auto ker = kernel_basis(current);
    if (ker.empty()) {
      res.complete = true;
      return res;
    }
    auto next = minimal_generators(A, ker, current.cols());
    for (auto& g : next)
      if (!detail::in_maximal_ideal_times_free(A, g))
        throw InvariantFailure("resolution step " + std::to_string(step) + " is not minimal");
    Matrix d = detail::free_map_matrix(A, next, prev_rank * A.dim(), [&](std::size_t i, const Vector& v) { return act_on_free(A, i, v); });
    // exactness: the image of d is the whole kernel
    if (rank(d) != ker.size()) throw InvariantFailure("resolution step " + std::to_string(step) + " is not exact");
    res.ranks.push_back(next.size());
    res.differentials.push_back(FreeModuleMap{next.size(), prev_rank, d});
    current = d;
  }
  res.complete = kernel_basis(current).empty();
  return res;
}

// dim Tor_i^A(M, N) for i = 0..length via F (x)_A N.
inline std::vector<std::size_t> tor_dims_via_resolution(const LocalModule& M, const LocalModule& N, int length) {
  const auto& A = M.algebra();
  const auto& k = A.field();
  if (A.dim() != N.algebra().dim()) throw DomainMismatch("modules over different algebras");
  // one extra step so that the top requested degree sees its incoming differential
  auto res = minimal_free_resolution(M, length + 1);
  const std::size_t n = N.dim();
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (std::size_t i = 0; i < res.ranks.size(); ++i) dims.push_back(res.ranks[i] * n);
  for (auto& d : res.differentials) {
    // generator h of F_i goes to sum_g c_{g,h} e_g with c_{g,h} in A
    Matrix t(k, d.target_rank * n, d.source_rank * n);
    for (std::size_t h = 0; h < d.source_rank; ++h)
      for (std::size_t g = 0; g < d.target_rank; ++g) {
        Matrix act = Matrix::zero(k, n, n);
        for (std::size_t j = 0; j < A.dim(); ++j) {
          Scalar c = d.k_matrix(g * A.dim() + j, h * A.dim());
          if (c != 0) act = act + N.action(j).scaled(c);
        }
        t.put_block(g * n, h * n, act);
      }
    diffs.push_back(std::move(t));
  }
  ChainComplex c(k, 0, dims, std::move(diffs));
  std::vector<std::size_t> out;
  for (int i = 0; i <= length; ++i) out.push_back(i < static_cast<int>(dims.size()) ? homology(c, i).dim() : 0);
  return out;
}

inline std::vector<std::size_t> tor_dims_via_resolution(const LocalModule& M, int length) {
  return tor_dims_via_resolution(M, LocalModule::residue_field(M.algebra_ptr()), length);
}

// Graded minimal free resolution F_i = sum S(-a) of a graded module, exact in
// all degrees <= the module's bound.
struct GradedResolution {
  std::vector<std::vector<int>> generator_degrees;  // per step
  std::vector<GradedModule> free_modules;
  // images[i][h]: image of generator h of F_{i+1} in F_i, in degree generator_degrees[i+1][h]
  std::vector<std::vector<Vector>> images;
  bool complete = false;  // kernel vanished within the window before the length cap
  bool stabilized = true;  // no generator sits in the top degree

  std::size_t rank(int i) const {
    return i < 0 || i >= static_cast<int>(generator_degrees.size()) ? 0 : generator_degrees[static_cast<std::size_t>(i)].size();
  }
  std::vector<std::size_t> ranks(int length) const {
    std::vector<std::size_t> out;
    for (int i = 0; i <= length; ++i) out.push_back(rank(i));
    return out;
  }
  // Graded Betti numbers: betti(i)[d] = number of generators of F_i in degree d.
  std::map<int, std::size_t> betti(int i) const {
    std::map<int, std::size_t> out;
    if (i >= 0 && i < static_cast<int>(generator_degrees.size()))
      for (int d : generator_degrees[static_cast<std::size_t>(i)]) ++out[d];
    return out;
  }
  // Length of the resolution (pd) when complete.
  int length() const {
    int l = -1;
    for (std::size_t i = 0; i < generator_degrees.size(); ++i)
      if (!generator_degrees[i].empty()) l = static_cast<int>(i);
    return l;
  }
};

namespace detail {

// Degree-wise matrices of F -> T sending generator h (degree a_h) to gens[h].
inline std::vector<Matrix> graded_free_map(const GradedModule& F, const std::vector<int>& degs, const std::vector<Vector>& gens,
                                           const GradedModule& T) {
  const auto& S = F.base();
  std::vector<Matrix> out;
  for (int d = 0; d <= F.max_degree(); ++d) {
    Matrix m(F.field(), T.dim(d), F.dim(d));
    std::size_t col = 0;
    for (std::size_t h = 0; h < gens.size(); ++h) {
      const int e = d - degs[h];
      for (std::size_t i = 0; i < S.dim(e); ++i, ++col) {
        Vector v = T.monomial_matrix(S.basis(e)[i], degs[h]).apply(gens[h]);
        for (std::size_t r = 0; r < v.size(); ++r) m.set(r, col, v[r]);
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Minimal homogeneous generators of the graded submodule of T spanned in each
// degree by `sub[d]`: vectors independent modulo m*sub.
inline std::pair<std::vector<int>, std::vector<Vector>> graded_generators(const GradedModule& T, const std::vector<std::vector<Vector>>& sub) {
  const auto& S = T.base();
  std::vector<int> degs;
  std::vector<Vector> gens;
  for (int d = 0; d <= T.max_degree(); ++d) {
    Subspace span(T.field(), T.dim(d));
    for (std::size_t v = 0; v < S.nvars(); ++v) {
      int e = d - S.degree_of(v);
      if (e < 0) continue;
      for (auto& x : sub[static_cast<std::size_t>(e)]) span.add(T.action(v, e).apply(x));
    }
    for (auto& x : sub[static_cast<std::size_t>(d)])
      if (span.add(x)) {
        degs.push_back(d);
        gens.push_back(x);
      }
  }
  return {degs, gens};
}

}  // namespace detail

inline GradedResolution graded_minimal_resolution(const GradedModule& M, int length) {
  if (length < 0) throw ValidationError("resolution length must be non-negative");
  const int W = M.max_degree();
  if (W != M.base().max_degree()) throw ValidationError("module and ring must share the degree bound");
  GradedResolution res;
  std::vector<std::vector<Vector>> prev_ker;
  std::vector<std::vector<Vector>> whole(static_cast<std::size_t>(W) + 1);
  for (int d = 0; d <= W; ++d)
    for (std::size_t i = 0; i < M.dim(d); ++i) whole[static_cast<std::size_t>(d)].push_back(unit_vector(M.dim(d), i));
  auto [degs, gens] = detail::graded_generators(M, whole);
  const GradedModule* target = &M;
  std::vector<GradedModule> frees;
  frees.reserve(static_cast<std::size_t>(length) + 1);
  for (int step = 0; step <= length; ++step) {
    for (int a : degs)
      if (a == W) res.stabilized = false;
    frees.push_back(GradedModule::free(M.base_ptr(), degs));
    res.generator_degrees.push_back(degs);
    if (step > 0) res.images.push_back(gens);
    if (degs.empty()) {
      res.complete = true;
      break;
    }
    const GradedModule& F = frees.back();
    auto maps = detail::graded_free_map(F, degs, gens, *target);
    // minimality: no generator image has a unit coefficient
    if (step > 0) {
      const auto& prev = res.generator_degrees[static_cast<std::size_t>(step) - 1];
      for (std::size_t h = 0; h < gens.size(); ++h) {
        std::size_t off = 0;
        for (int a : prev) {
          const int e = degs[h] - a;
          if (e == 0 && gens[h][off] != 0) throw InvariantFailure("graded resolution step " + std::to_string(step) + " is not minimal");
          off += M.base().dim(e);
        }
      }
    }
    std::vector<std::vector<Vector>> ker(static_cast<std::size_t>(W) + 1);
    for (int d = 0; d <= W; ++d) ker[static_cast<std::size_t>(d)] = kernel_basis(maps[static_cast<std::size_t>(d)]);
    if (step > 0) {
      // exactness at F_{step-1}: the image is the whole previous kernel
      for (int d = 0; d <= W; ++d)
        if (homotor::rank(maps[static_cast<std::size_t>(d)]) != prev_ker[static_cast<std::size_t>(d)].size())
          throw InvariantFailure("graded resolution is not exact in degree " + std::to_string(d));
    }
    prev_ker = ker;
    auto next = detail::graded_generators(F, ker);
    degs = std::move(next.first);
    gens = std::move(next.second);
    target = &frees.back();
    if (step == length) {
      bool empty = degs.empty();
      res.complete = empty;
      for (int a : degs)
        if (a == W) res.stabilized = false;
    }
  }
  res.free_modules = std::move(frees);
  return res;
}

}  // namespace homotor::koszul
