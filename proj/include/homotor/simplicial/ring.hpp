#pragma once

// Truncated simplicial commutative rings with local artinian levels, the
// shuffle product, the graded ring pi_*, and the two-sided bar construction.

#include <memory>
#include <vector>

#include "homotor/graded_algebra.hpp"
#include "homotor/local_algebra.hpp"
#include "homotor/simplicial/module.hpp"

namespace homotor::simplicial {

using AlgebraPtr = std::shared_ptr<const FinLocalAlgebra>;

class TruncatedSimplicialRing {
 public:
  TruncatedSimplicialRing(TruncatedSimplicialModule module, std::vector<AlgebraPtr> levels)
      : module_(std::move(module)), levels_(std::move(levels)) {
    validate();
  }

  static TruncatedSimplicialRing constant(AlgebraPtr a, int D) {
    return TruncatedSimplicialRing(TruncatedSimplicialModule::constant(a->field(), a->dim(), D),
                                   std::vector<AlgebraPtr>(static_cast<std::size_t>(D) + 1, a));
  }

  const TruncatedSimplicialModule& module() const { return module_; }
  const FinLocalAlgebra& level(int n) const { return *levels_.at(static_cast<std::size_t>(n)); }
  AlgebraPtr level_ptr(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
  int level_bound() const { return module_.level_bound(); }
  const CoefficientRing& field() const { return module_.ring(); }

 private:
  void validate() const {
    const int D = module_.level_bound();
    require_field(module_.ring(), "simplicial ring");
    if (levels_.size() != static_cast<std::size_t>(D) + 1) throw ValidationError("need one algebra per level");
    for (int n = 0; n <= D; ++n) {
      if (!levels_[static_cast<std::size_t>(n)]) throw ValidationError("missing level algebra");
      require_same_ring(level(n).field(), module_.ring(), "simplicial ring level");
      if (level(n).dim() != module_.dim(n)) throw ValidationError("level algebra dimension mismatch at level " + std::to_string(n));
    }
    for (int n = 1; n <= D; ++n)
      for (int i = 0; i <= n; ++i) {
        try {
          check_algebra_map(level(n), level(n - 1), module_.face(n, i));
        } catch (const ValidationError& e) {
          throw ValidationError("face d_" + std::to_string(i) + " at level " + std::to_string(n) + ": " + e.what());
        }
      }
    for (int n = 0; n < D; ++n)
      for (int j = 0; j <= n; ++j) {
        try {
          check_algebra_map(level(n), level(n + 1), module_.degeneracy(n, j));
        } catch (const ValidationError& e) {
          throw ValidationError("degeneracy s_" + std::to_string(j) + " at level " + std::to_string(n) + ": " + e.what());
        }
      }
  }

  TruncatedSimplicialModule module_;
  std::vector<AlgebraPtr> levels_;
};

// A simplicial module M over A: level-wise A_n-modules (one action matrix per
// basis element of A_n) whose structure maps are compatible with A's.
class TruncatedSimplicialRingModule {
 public:
  TruncatedSimplicialRingModule(std::shared_ptr<const TruncatedSimplicialRing> ring, TruncatedSimplicialModule module,
                                std::vector<std::vector<Matrix>> actions)
      : ring_(std::move(ring)), module_(std::move(module)), actions_(std::move(actions)) {
    validate();
  }

  static TruncatedSimplicialRingModule regular(std::shared_ptr<const TruncatedSimplicialRing> ring) {
    std::vector<std::vector<Matrix>> act;
    for (int n = 0; n <= ring->level_bound(); ++n) {
      act.emplace_back();
      for (std::size_t i = 0; i < ring->level(n).dim(); ++i) act.back().push_back(ring->level(n).basis_multiplication(i));
    }
    auto m = ring->module();
    return TruncatedSimplicialRingModule(std::move(ring), std::move(m), std::move(act));
  }

  const TruncatedSimplicialRing& ring() const { return *ring_; }
  const TruncatedSimplicialModule& module() const { return module_; }

  // u in A_n acting on x in M_n.
  Vector act(int n, const Vector& u, const Vector& x) const {
    const auto& k = module_.ring();
    Vector out(x.size(), 0);
    const auto& acts = actions_[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] != 0) axpy(k, out, u[i], acts[i].apply(x));
    return out;
  }

 private:
  void validate() const {
    const int D = module_.level_bound();
    if (ring_->level_bound() != D) throw ValidationError("module and ring truncation levels differ");
    if (actions_.size() != static_cast<std::size_t>(D) + 1) throw ValidationError("need actions at every level");
    for (int n = 0; n <= D; ++n) {
      auto a = ring_->level_ptr(n);
      LocalModule check(a, actions_[static_cast<std::size_t>(n)]);
      if (check.dim() != module_.dim(n)) throw ValidationError("action size mismatch at level " + std::to_string(n));
    }
    // theta^*(u x) = theta^*(u) theta^*(x) for faces and degeneracies on basis elements
    auto compatible = [&](int from, int to, const Matrix& fa, const Matrix& fm) {
      for (std::size_t i = 0; i < ring_->level(from).dim(); ++i)
        for (std::size_t c = 0; c < module_.dim(from); ++c) {
          Vector x = unit_vector(module_.dim(from), c);
          Vector lhs = fm.apply(actions_[static_cast<std::size_t>(from)][i].apply(x));
          Vector rhs = act(to, fa.col(i), fm.apply(x));
          if (lhs != rhs) return false;
        }
      return true;
    };
    for (int n = 1; n <= D; ++n)
      for (int i = 0; i <= n; ++i)
        if (!compatible(n, n - 1, ring_->module().face(n, i), module_.face(n, i)))
          throw ValidationError("module face d_" + std::to_string(i) + " is not compatible with the ring at level " + std::to_string(n));
    for (int n = 0; n < D; ++n)
      for (int j = 0; j <= n; ++j)
        if (!compatible(n, n + 1, ring_->module().degeneracy(n, j), module_.degeneracy(n, j)))
          throw ValidationError("module degeneracy s_" + std::to_string(j) + " is not compatible at level " + std::to_string(n));
  }

  std::shared_ptr<const TruncatedSimplicialRing> ring_;
  TruncatedSimplicialModule module_;
  std::vector<std::vector<Matrix>> actions_;
};

namespace detail {

template <class Product>
Vector shuffle_sum(const TruncatedSimplicialModule& left, const TruncatedSimplicialModule& right, int m, const Vector& a, int n,
                   const Vector& x, std::size_t out_dim, Product product) {
  const int total = m + n;
  if (total > left.level_bound() || total > right.level_bound())
    throw TruncationError("shuffle product lands in level " + std::to_string(total) + " beyond the truncation");
  if (a.size() != left.dim(m) || x.size() != right.dim(n)) throw ValidationError("shuffle factors have the wrong length");
  const auto& k = left.ring();
  Vector out(out_dim, 0);
  for (auto& sh : shuffles(m, n)) {
    Vector pa = left.pullback(shuffle_surjection(sh.sigma, total)).apply(a);
    Vector px = right.pullback(shuffle_surjection(sh.tau, total)).apply(x);
    Vector term = product(pa, px);
    axpy(k, out, sh.sign > 0 ? 1 : k.neg(1), term);
  }
  return out;
}

}  // namespace detail

// a in A_m, x in A_n: sum over P_{m,n} of sign(sigma, tau) A(sigma)(a) A(tau)(x).
inline Vector shuffle_multiply(const TruncatedSimplicialRing& A, int m, const Vector& a, int n, const Vector& x) {
  const int total = m + n;
  return detail::shuffle_sum(A.module(), A.module(), m, a, n, x, total <= A.level_bound() ? A.level(total).dim() : 0,
                             [&](const Vector& u, const Vector& v) { return A.level(total).multiply(u, v); });
}

// a in A_m acting on x in M_n.
inline Vector shuffle_multiply(const TruncatedSimplicialRingModule& M, int m, const Vector& a, int n, const Vector& x) {
  const int total = m + n;
  return detail::shuffle_sum(M.ring().module(), M.module(), m, a, n, x, total <= M.module().level_bound() ? M.module().dim(total) : 0,
                             [&](const Vector& u, const Vector& v) { return M.act(total, u, v); });
}

// pi_0..pi_t of A with products for all pairs of total degree <= t. Needs t < D.
inline GradedAlgebra homotopy_ring(const TruncatedSimplicialRing& A, int t) {
  const int D = A.level_bound();
  if (t < 0) throw ValidationError("top degree must be non-negative");
  if (t >= D) throw TruncationError("pi_" + std::to_string(t) + " needs truncation level > " + std::to_string(t));
  auto norm = normalization(A.module());
  std::vector<HomologyBasis> hb;
  std::vector<std::size_t> dims;
  for (int n = 0; n <= t; ++n) {
    hb.emplace_back(norm.complex, n);
    dims.push_back(hb.back().dim());
  }
  Vector unit = hb[0].coords(norm.coords(0, A.level(0).unit()));
  GradedAlgebra g(A.field(), dims, t, unit);
  for (int m = 0; m <= t; ++m)
    for (int n = 0; m + n <= t; ++n)
      for (std::size_t i = 0; i < dims[static_cast<std::size_t>(m)]; ++i)
        for (std::size_t j = 0; j < dims[static_cast<std::size_t>(n)]; ++j) {
          Vector a = norm.embed(m, hb[static_cast<std::size_t>(m)].representatives()[i]);
          Vector x = norm.embed(n, hb[static_cast<std::size_t>(n)].representatives()[j]);
          Vector prod = shuffle_multiply(A, m, a, n, x);
          g.set_product(m, i, n, j, hb[static_cast<std::size_t>(m + n)].coords(norm.coords(m + n, prod)));
        }
  return g;
}

// Bar construction B (x) A^{(x) n} for f: A -> B and the augmentation A -> k.
// Basis index is big-endian mixed radix (b, a_1, ..., a_n).
// d_0 multiplies f(a_1) into b, d_i multiplies a_i a_{i+1}, d_n applies the
// augmentation to a_n, and s_j inserts 1 after the j-th tensor factor.
inline TruncatedSimplicialRing bar_simplicial_ring(const FinLocalAlgebra& B, const FinLocalAlgebra& A, const Matrix& f, int D) {
  require_same_ring(A.field(), B.field(), "bar construction");
  check_algebra_map(A, B, f);
  if (D < 1) throw ValidationError("bar construction needs D >= 1");
  if (D > 12) throw TruncationError("bar construction above level 12");
  const auto& k = A.field();
  const std::size_t na = A.dim(), nb = B.dim();
  double total = static_cast<double>(nb);
  for (int n = 0; n < D; ++n) total *= static_cast<double>(na);
  if (total > 20000) throw BudgetExceeded("bar construction level " + std::to_string(D) + " is too large", total);

  std::vector<AlgebraPtr> levels{std::make_shared<const FinLocalAlgebra>(B)};
  for (int n = 1; n <= D; ++n) levels.push_back(std::make_shared<const FinLocalAlgebra>(FinLocalAlgebra::tensor(*levels.back(), A)));
  std::vector<std::size_t> dims;
  for (auto& l : levels) dims.push_back(l->dim());

  auto digits = [&](std::size_t idx, int n) {
    std::vector<std::size_t> d(static_cast<std::size_t>(n) + 1);
    for (int i = n; i >= 1; --i) {
      d[static_cast<std::size_t>(i)] = idx % na;
      idx /= na;
    }
    d[0] = idx;
    return d;
  };
  auto index_of = [&](const std::vector<std::size_t>& d) {
    std::size_t idx = d[0];
    for (std::size_t i = 1; i < d.size(); ++i) idx = idx * na + d[i];
    return idx;
  };

  std::vector<std::vector<Matrix>> faces(static_cast<std::size_t>(D) + 1), degens(static_cast<std::size_t>(D) + 1);
  for (int n = 1; n <= D; ++n) {
    for (int i = 0; i <= n; ++i) {
      Matrix m(k, dims[static_cast<std::size_t>(n - 1)], dims[static_cast<std::size_t>(n)]);
      for (std::size_t col = 0; col < dims[static_cast<std::size_t>(n)]; ++col) {
        auto d = digits(col, n);
        std::vector<std::size_t> out;
        if (i == 0) {
          // b * f(a_1)
          Vector fb = B.multiply(unit_vector(nb, d[0]), f.col(d[1]));
          for (std::size_t b2 = 0; b2 < nb; ++b2) {
            if (fb[b2] == 0) continue;
            out = {b2};
            out.insert(out.end(), d.begin() + 2, d.end());
            m.add_to(index_of(out), col, fb[b2]);
          }
        } else if (i < n) {
          for (auto [t, c] : A.basis_product(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(i) + 1])) {
            out.assign(d.begin(), d.begin() + i);
            out.push_back(t);
            out.insert(out.end(), d.begin() + i + 2, d.end());
            m.add_to(index_of(out), col, c);
          }
        } else {
          Scalar eps = d[static_cast<std::size_t>(n)] == 0 ? 1 : 0;
          if (eps != 0) {
            out.assign(d.begin(), d.end() - 1);
            m.add_to(index_of(out), col, eps);
          }
        }
      }
      faces[static_cast<std::size_t>(n)].push_back(std::move(m));
    }
  }
  for (int n = 0; n < D; ++n)
    for (int j = 0; j <= n; ++j) {
      Matrix m(k, dims[static_cast<std::size_t>(n + 1)], dims[static_cast<std::size_t>(n)]);
      for (std::size_t col = 0; col < dims[static_cast<std::size_t>(n)]; ++col) {
        auto d = digits(col, n);
        d.insert(d.begin() + j + 1, 0);
        m.set(index_of(d), col, 1);
      }
      degens[static_cast<std::size_t>(n)].push_back(std::move(m));
    }
  return TruncatedSimplicialRing(TruncatedSimplicialModule(k, D, dims, std::move(faces), std::move(degens)), std::move(levels));
}

}  // namespace homotor::simplicial
