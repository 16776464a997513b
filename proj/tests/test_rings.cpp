#include <gtest/gtest.h>

#include <random>
#include <set>

#include "homotor/local_algebra.hpp"
#include "homotor/rings.hpp"

using namespace homotor;

namespace {

const auto F3 = CoefficientRing::prime_field(3);
const auto F5 = CoefficientRing::prime_field(5);

Matrix random_matrix(std::mt19937& rng, CoefficientRing r, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<std::int64_t> dist(0, r.modulus() - 1);
  Matrix m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, dist(rng));
  return m;
}

}  // namespace

TEST(CoefficientRing, RejectsEvenOrCompositePrimes) {
  EXPECT_THROW(CoefficientRing::prime_field(2), ValidationError);
  EXPECT_THROW(CoefficientRing::prime_field(9), ValidationError);
  EXPECT_THROW(CoefficientRing::cyclic(3, 0), ValidationError);
}

TEST(CoefficientRing, CyclicExponentOneIsPrimeField) {
  auto c = CoefficientRing::cyclic(5, 1);
  EXPECT_EQ(c, F5);
  EXPECT_TRUE(c.is_field());
  EXPECT_EQ(c.kind(), CoefficientRing::Kind::prime_field);
}

TEST(CoefficientRing, UnitInverseAndValuation) {
  auto z27 = CoefficientRing::cyclic(3, 3);
  for (Scalar a = 1; a < 27; ++a) {
    if (a % 3 == 0) {
      EXPECT_THROW(z27.inv(a), DomainMismatch);
      continue;
    }
    EXPECT_EQ(z27.mul(a, z27.inv(a)), 1);
  }
  EXPECT_EQ(z27.valuation(0), 3);
  EXPECT_EQ(z27.valuation(18), 2);
  EXPECT_EQ(z27.valuation(5), 0);
}

TEST(Rref, Identity) {
  auto r = rref(Matrix::identity(F5, 3));
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.form, Matrix::identity(F5, 3));
}

TEST(Rref, ZeroMatrix) {
  EXPECT_EQ(rref(Matrix::zero(F3, 2, 4)).rank, 0u);
}

TEST(Rref, RankOneExample) {
  auto r = rref(Matrix::from_rows(F5, {{1, 2}, {2, 4}}));
  EXPECT_EQ(r.rank, 1u);
  ASSERT_EQ(r.pivots.size(), 1u);
  EXPECT_EQ(r.pivots[0], 0u);
  EXPECT_EQ(r.form, Matrix::from_rows(F5, {{1, 2}, {0, 0}}));
}

TEST(Rref, RejectsNonField) {
  EXPECT_THROW(rref(Matrix::identity(CoefficientRing::cyclic(3, 2), 2)), DomainMismatch);
}

TEST(Matrix, MixedRingsAreRejected) {
  EXPECT_THROW(Matrix::identity(F3, 2) * Matrix::identity(F5, 2), DomainMismatch);
}

TEST(Kernel, Examples) {
  EXPECT_TRUE(kernel_basis(Matrix::identity(F3, 2)).empty());
  EXPECT_EQ(kernel_basis(Matrix::zero(F3, 2, 3)).size(), 3u);
  auto k = kernel_basis(Matrix::from_rows(F5, {{1, 1, 0}}));
  ASSERT_EQ(k.size(), 2u);
  for (auto& v : k) EXPECT_EQ(F5.add(v[0], v[1]), 0);
  // spans {x + y = 0}: (4,1,0) and (0,0,1)
  EXPECT_EQ(k[0], (Vector{4, 1, 0}));
  EXPECT_EQ(k[1], (Vector{0, 0, 1}));
}

TEST(Kernel, RankNullityOnRandomMatrices) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = rng() % 7, cols = rng() % 7;
    auto r = (trial % 2) ? F3 : F5;
    auto m = random_matrix(rng, r, rows, cols);
    auto ker = kernel_basis(m);
    EXPECT_EQ(ker.size() + rank(m), cols);
    Subspace s(r, cols);
    for (auto& v : ker) {
      EXPECT_TRUE(is_zero(m.apply(v)));
      EXPECT_TRUE(s.add(v));
    }
  }
}

TEST(Solve, FindsSolutionsAndDetectsInconsistency) {
  auto a = Matrix::from_rows(F5, {{1, 2}, {2, 4}});
  auto x = solve(a, {3, 1});
  ASSERT_TRUE(x);
  EXPECT_EQ(a.apply(*x), (Vector{3, 1}));
  EXPECT_FALSE(solve(a, {1, 1}));
}

TEST(Smith, Examples) {
  auto z9 = CoefficientRing::cyclic(3, 2);
  auto s = smith_normal_form(Matrix::from_rows(z9, {{3}}));
  EXPECT_EQ(s.diagonal, Matrix::from_rows(z9, {{3}}));
  EXPECT_EQ(smith_normal_form(Matrix::identity(z9, 3)).diagonal, Matrix::identity(z9, 3));
  auto m = Matrix::from_rows(z9, {{2, 4}, {4, 8}});
  auto r = smith_normal_form(m);
  EXPECT_EQ(r.diagonal, Matrix::from_rows(z9, {{1, 0}, {0, 0}}));
  EXPECT_EQ(r.exponents, (std::vector<int>{0, 2}));
  EXPECT_EQ(r.left * m * r.right, r.diagonal);
}

// Counting oracle: |{y in im M : p^j y = 0}| for each j determines the
// invariant factors, independently of any elimination.
static std::vector<std::size_t> torsion_profile_by_enumeration(const Matrix& m) {
  const auto& r = m.ring();
  std::set<Vector> image;
  std::size_t total = 1;
  for (std::size_t i = 0; i < m.cols(); ++i) total *= static_cast<std::size_t>(r.modulus());
  for (std::size_t code = 0; code < total; ++code) {
    Vector x(m.cols());
    std::size_t c = code;
    for (auto& xi : x) {
      xi = static_cast<Scalar>(c % static_cast<std::size_t>(r.modulus()));
      c /= static_cast<std::size_t>(r.modulus());
    }
    image.insert(m.apply(x));
  }
  std::vector<std::size_t> prof;
  for (int j = 0; j <= r.e(); ++j) {
    std::size_t n = 0;
    for (auto& y : image)
      if (is_zero(scale(r, y, r.power_of_p(j)))) ++n;
    prof.push_back(n);
  }
  return prof;
}

static std::vector<std::size_t> torsion_profile_from_diagonal(const SmithResult& s, const CoefficientRing& r) {
  std::vector<std::size_t> prof;
  for (int j = 0; j <= r.e(); ++j) {
    std::size_t n = 1;
    // D(i,i) = p^a spans a cyclic group of order p^{e-a}; its p^j-torsion has order p^{min(j, e-a)}.
    for (int a : s.exponents) n *= static_cast<std::size_t>(r.power_of_p(std::min(j, r.e() - a)));
    prof.push_back(n);
  }
  return prof;
}

TEST(Smith, PropertiesAgainstEnumerationOracle) {
  std::mt19937 rng(11);
  for (auto r : {CoefficientRing::cyclic(3, 2), CoefficientRing::cyclic(3, 3), CoefficientRing::cyclic(5, 2)}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 2;
      auto m = random_matrix(rng, r, rows, cols);
      // bias toward non-units
      if (trial % 3 == 0) m = m.scaled(r.p());
      auto s = smith_normal_form(m);
      EXPECT_EQ(s.left * m * s.right, s.diagonal);
      EXPECT_NO_THROW(inverse(s.left));
      EXPECT_NO_THROW(inverse(s.right));
      for (std::size_t i = 0; i < s.diagonal.rows(); ++i)
        for (std::size_t j = 0; j < s.diagonal.cols(); ++j)
          if (i != j) EXPECT_EQ(s.diagonal(i, j), 0);
      for (std::size_t i = 0; i + 1 < s.exponents.size(); ++i) EXPECT_LE(s.exponents[i], s.exponents[i + 1]);
      for (std::size_t i = 0; i < s.exponents.size(); ++i) {
        Scalar expect = s.exponents[i] == r.e() ? 0 : r.power_of_p(s.exponents[i]);
        EXPECT_EQ(s.diagonal(i, i), expect);
      }
      if (cols <= 2) EXPECT_EQ(torsion_profile_by_enumeration(m), torsion_profile_from_diagonal(s, r));
    }
  }
}

TEST(FinLocalAlgebra, ValidatesStructureConstants) {
  auto a = FinLocalAlgebra::truncated_polynomial(F3, 3);
  EXPECT_EQ(a.dim(), 3u);
  // non-commutative table
  std::vector<std::vector<SparseVector>> t(2, std::vector<SparseVector>(2));
  t[0][0] = {{0, 1}};
  t[0][1] = {{1, 1}};
  t[1][0] = {{1, 1}};
  t[1][1] = {{0, 1}};  // x^2 = 1: not nilpotent, not local
  EXPECT_THROW(FinLocalAlgebra(F3, t, {1}), ValidationError);
  t[1][1] = {};
  EXPECT_NO_THROW(FinLocalAlgebra(F3, t, {1}));
  EXPECT_THROW(FinLocalAlgebra(F3, t, {}), ValidationError);
}

TEST(FinLocalAlgebra, TensorProductIsLocal) {
  auto a = FinLocalAlgebra::truncated_polynomial(F3, 2);
  auto b = FinLocalAlgebra::truncated_polynomial(F3, 3);
  auto t = FinLocalAlgebra::tensor(a, b);
  EXPECT_EQ(t.dim(), 6u);
  // Re-validating through the public constructor must succeed.
  EXPECT_NO_THROW(FinLocalAlgebra(F3, t.table(), t.ideal_basis()));
}

namespace {

FreeModuleMap multiplication_map(const FinLocalAlgebra& a, const Vector& elt) {
  return FreeModuleMap{1, 1, a.left_multiplication(elt)};
}

}  // namespace

TEST(LocalAlgebraLinear, KernelGeneratorExamples) {
  auto a = FinLocalAlgebra::truncated_polynomial(F3, 2);
  auto gens = kernel_generators(a, multiplication_map(a, {0, 1}));
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_EQ(gens[0], (Vector{0, 1}));
  EXPECT_TRUE(kernel_generators(a, FreeModuleMap{1, 1, Matrix::identity(F3, 2)}).empty());
  auto zero_gens = kernel_generators(a, FreeModuleMap{1, 1, Matrix::zero(F3, 2, 2)});
  ASSERT_EQ(zero_gens.size(), 1u);
  EXPECT_EQ(zero_gens[0][0], 1);  // the unit
}

TEST(LocalAlgebraLinear, RejectsNonLinearMaps) {
  auto a = FinLocalAlgebra::truncated_polynomial(F3, 2);
  // swaps 1 and x: k-linear but not A-linear
  EXPECT_THROW(kernel_generators(a, FreeModuleMap{1, 1, Matrix::from_rows(F3, {{0, 1}, {1, 0}})}), ValidationError);
  EXPECT_THROW(solve_over_local_algebra(a, FreeModuleMap{1, 1, Matrix::from_rows(F3, {{0, 1}, {1, 0}})}, {1, 0}),
               ValidationError);
}

TEST(LocalAlgebraLinear, SolveOverLocalAlgebra) {
  auto a = FinLocalAlgebra::truncated_polynomial(F3, 3);
  auto m = multiplication_map(a, {0, 1, 0});  // times x
  auto sol = solve_over_local_algebra(a, m, {0, 0, 2});
  ASSERT_TRUE(sol);
  EXPECT_EQ(m.k_matrix.apply(*sol), (Vector{0, 0, 2}));
  EXPECT_FALSE(solve_over_local_algebra(a, m, {1, 0, 0}));
}

// Exhaustive oracle: smallest subset of K that generates K as an A-module.
static std::size_t min_generating_set_size(const FinLocalAlgebra& a, const std::vector<Vector>& k_basis, std::size_t ambient) {
  const auto& f = a.field();
  std::vector<Vector> elements;
  std::size_t total = 1;
  for (std::size_t i = 0; i < k_basis.size(); ++i) total *= static_cast<std::size_t>(f.p());
  for (std::size_t code = 1; code < total; ++code) {
    Vector v(ambient, 0);
    std::size_t c = code;
    for (auto& b : k_basis) {
      axpy(f, v, static_cast<Scalar>(c % static_cast<std::size_t>(f.p())), b);
      c /= static_cast<std::size_t>(f.p());
    }
    elements.push_back(v);
  }
  auto generates = [&](const std::vector<const Vector*>& set) {
    Subspace s(f, ambient);
    for (auto* v : set)
      for (std::size_t i = 0; i < a.dim(); ++i) s.add(act_on_free(a, i, *v));
    return s.dim() == k_basis.size();
  };
  if (k_basis.empty()) return 0;
  for (std::size_t size = 1; size <= 3; ++size) {
    std::vector<std::size_t> idx(size);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) -> bool {
      if (pos == size) {
        std::vector<const Vector*> set;
        for (auto i : idx) set.push_back(&elements[i]);
        return generates(set);
      }
      for (std::size_t i = start; i < elements.size(); ++i) {
        idx[pos] = i;
        if (rec(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return size;
  }
  return 99;
}

TEST(LocalAlgebraLinear, NakayamaCountMatchesExhaustiveSearch) {
  auto a = FinLocalAlgebra::truncated_polynomial(F3, 2);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dist(0, 2);
  for (int trial = 0; trial < 12; ++trial) {
    // A^2 -> A^1 determined by images of the two generators
    std::size_t src = 2, tgt = 1, n = a.dim();
    Matrix km(F3, tgt * n, src * n);
    for (std::size_t g = 0; g < src; ++g) {
      Vector img(tgt * n);
      for (auto& x : img) x = dist(rng);
      for (std::size_t j = 0; j < n; ++j) {
        auto col = act_on_free(a, j, img);
        for (std::size_t i = 0; i < col.size(); ++i) km.set(i, g * n + j, col[i]);
      }
    }
    FreeModuleMap m{src, tgt, km};
    auto ker = kernel_basis(km);
    if (ker.size() > 4) continue;
    auto gens = kernel_generators(a, m);
    EXPECT_EQ(gens.size(), min_generating_set_size(a, ker, src * n)) << "trial " << trial;
  }
}
