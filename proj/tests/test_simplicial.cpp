#include <gtest/gtest.h>

#include <random>

#include "homotor/simplicial/module.hpp"
#include "homotor/simplicial/ring.hpp"
#include "homotor/simplicial/set.hpp"

using namespace homotor;
using namespace homotor::simplicial;

namespace {

const auto F3 = CoefficientRing::prime_field(3);
const auto F5 = CoefficientRing::prime_field(5);

std::size_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

// All order-preserving maps [m] -> [n].
std::vector<OrderMap> all_maps(int m, int n) {
  std::vector<OrderMap> out;
  OrderMap t{n, std::vector<int>(static_cast<std::size_t>(m) + 1, 0)};
  std::function<void(int, int)> rec = [&](int pos, int min) {
    if (pos > m) {
      out.push_back(t);
      return;
    }
    for (int v = min; v <= n; ++v) {
      t.values[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

ChainComplex random_nonneg_complex(std::mt19937& rng, CoefficientRing r, int top, std::size_t max_dim) {
  std::uniform_int_distribution<std::int64_t> coef(0, r.modulus() - 1);
  std::vector<std::size_t> dims;
  for (int i = 0; i <= top; ++i) dims.push_back(rng() % (max_dim + 1));
  std::vector<Matrix> diffs;
  for (int k = 1; k <= top; ++k) {
    std::size_t tgt = dims[static_cast<std::size_t>(k - 1)], src = dims[static_cast<std::size_t>(k)];
    std::vector<Vector> ker;
    if (k == 1)
      for (std::size_t i = 0; i < tgt; ++i) ker.push_back(unit_vector(tgt, i));
    else
      ker = kernel_basis(diffs.back());
    Matrix d(r, tgt, src);
    for (std::size_t j = 0; j < src; ++j) {
      Vector col(tgt, 0);
      for (auto& v : ker) axpy(r, col, coef(rng), v);
      for (std::size_t i = 0; i < tgt; ++i) d.set(i, j, col[i]);
    }
    diffs.push_back(std::move(d));
  }
  return ChainComplex(r, 0, dims, diffs);
}

Matrix random_invertible(std::mt19937& rng, CoefficientRing r, std::size_t n) {
  std::uniform_int_distribution<std::int64_t> coef(0, r.modulus() - 1);
  while (true) {
    Matrix m(r, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, coef(rng));
    if (rank(m) == n) return m;
  }
}

// Conjugate every level by a random automorphism: still simplicial, but the
// normalized subcomplex no longer sits on coordinate vectors.
TruncatedSimplicialModule twist(std::mt19937& rng, const TruncatedSimplicialModule& m) {
  const int D = m.level_bound();
  std::vector<Matrix> phi, phinv;
  for (int n = 0; n <= D; ++n) {
    phi.push_back(random_invertible(rng, m.ring(), m.dim(n)));
    phinv.push_back(inverse(phi.back()));
  }
  std::vector<std::vector<Matrix>> faces(static_cast<std::size_t>(D) + 1), degens(static_cast<std::size_t>(D) + 1);
  for (int n = 1; n <= D; ++n)
    for (int i = 0; i <= n; ++i)
      faces[static_cast<std::size_t>(n)].push_back(phi[static_cast<std::size_t>(n - 1)] * m.face(n, i) * phinv[static_cast<std::size_t>(n)]);
  for (int n = 0; n < D; ++n)
    for (int j = 0; j <= n; ++j)
      degens[static_cast<std::size_t>(n)].push_back(phi[static_cast<std::size_t>(n + 1)] * m.degeneracy(n, j) * phinv[static_cast<std::size_t>(n)]);
  return TruncatedSimplicialModule(m.ring(), D, m.dims(), faces, degens);
}

}  // namespace

TEST(Delta, SurjectionCountsAndOrder) {
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) EXPECT_EQ(surjections(n, k).size(), binom(n, k));
  auto s = surjections(2, 1);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].values, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(s[1].values, (std::vector<int>{0, 1, 1}));
  EXPECT_TRUE(surjections(3, 3)[0].is_identity());
}

TEST(Delta, ElementaryFactorizationReassemblesTheMap) {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      for (auto& theta : all_maps(m, n)) {
        OrderMap acc = identity_map(n);
        // theta = theta_1 o ... o theta_r where op i pulls back along theta_i
        for (auto& op : elementary_factorization(theta))
          acc = compose(acc, op.kind == Elementary::face ? coface(op.level, op.index) : codegeneracy(op.level - 0, op.index));
        EXPECT_EQ(acc, theta);
      }
}

TEST(Delta, EpiMonoFactorization) {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 3; ++n)
      for (auto& theta : all_maps(m, n)) {
        auto em = epi_mono(theta);
        EXPECT_EQ(compose(em.mono, em.epi), theta);
        EXPECT_EQ(em.epi.values.back(), em.epi.target);
      }
}

TEST(Delta, ShuffleSignSymmetry) {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      auto pmn = shuffles(m, n);
      EXPECT_EQ(pmn.size(), binom(m + n, m));
      auto pnm = shuffles(n, m);
      for (auto& s : pmn) {
        auto it = std::find_if(pnm.begin(), pnm.end(), [&](const Shuffle& t) { return t.sigma == s.tau && t.tau == s.sigma; });
        ASSERT_NE(it, pnm.end());
        EXPECT_EQ(s.sign, ((m * n) % 2 == 0 ? 1 : -1) * it->sign);
      }
    }
  auto p11 = shuffles(1, 1);
  ASSERT_EQ(p11.size(), 2u);
  EXPECT_EQ(p11[0].sign + p11[1].sign, 0);
}

TEST(SimplicialModule, ConstantModule) {
  auto c = dold_kan(ChainComplex::concentrated(F3, 0, 1), 4);
  EXPECT_EQ(c, TruncatedSimplicialModule::constant(F3, 1, 4));
  auto n = normalize(c);
  EXPECT_EQ(n.dims(), (std::vector<std::size_t>{1, 0, 0, 0, 0}));
}

TEST(SimplicialModule, DoldKanLevelDims) {
  auto m = dold_kan(ChainComplex::concentrated(F3, 1, 1), 5);
  EXPECT_EQ(m.dims(), (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
  auto b2 = abelian_b2(F3, 1, 4);
  EXPECT_EQ(b2.dims(), (std::vector<std::size_t>{0, 0, 1, 3, 6}));
  auto pi = homotopy_groups(b2);
  EXPECT_EQ(pi.dims(), (std::vector<std::size_t>{0, 0, 1, 0}));
  EXPECT_EQ(homotopy_groups(abelian_b2(F3, 2, 3)).at(2).dim(), 2u);
  EXPECT_THROW(pi.at(4), TruncationError);
}

TEST(SimplicialModule, DoldKanRoundTrip) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    int top = 1 + static_cast<int>(rng() % 4);
    auto c = random_nonneg_complex(rng, F5, top, 3);
    auto m = dold_kan(c, top);
    EXPECT_EQ(normalize(m), c);
    auto pi = homotopy_groups(m);
    for (int n = 0; n < top; ++n) EXPECT_EQ(pi.at(n).dim(), homology(c, n).dim());
  }
}

TEST(SimplicialModule, DoldKanOverCyclicRing) {
  auto z9 = CoefficientRing::cyclic(3, 2);
  ChainComplex c(z9, 0, {1, 1, 1}, {Matrix::from_rows(z9, {{3}}), Matrix::from_rows(z9, {{3}})});
  EXPECT_EQ(normalize(dold_kan(c, 2)), c);
  auto pi = homotopy_groups(dold_kan(c, 3));
  EXPECT_EQ(pi.at(0).exponents, (std::vector<int>{1}));
  EXPECT_TRUE(pi.at(1).is_zero());
  EXPECT_EQ(pi.at(2).exponents, (std::vector<int>{1}));
}

TEST(SimplicialModule, NormalizedAndUnnormalizedHomologyAgree) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    int top = 2 + static_cast<int>(rng() % 2);
    auto m = twist(rng, direct_sum(dold_kan(random_nonneg_complex(rng, F3, top, 2), top + 1),
                                   dold_kan(random_nonneg_complex(rng, F3, top, 2), top + 1)));
    auto n = normalize(m);
    auto c = unnormalized_chains(m);
    for (int d = 0; d <= top; ++d) EXPECT_EQ(homology(n, d).dim(), homology(c, d).dim());
  }
}

TEST(SimplicialModule, DirectSumDimsAdd) {
  auto a = dold_kan(ChainComplex::concentrated(F3, 1, 1), 3);
  auto b = dold_kan(ChainComplex::concentrated(F3, 2, 2), 3);
  auto pi = homotopy_groups(direct_sum(a, b));
  EXPECT_EQ(pi.dims(), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(SimplicialModule, IdentityCheckerRejectsEveryPerturbedFace) {
  std::mt19937 rng(8);
  auto c = random_nonneg_complex(rng, F3, 3, 2);
  while (c.dim(0) == 0 || c.dim(1) == 0) c = random_nonneg_complex(rng, F3, 3, 2);
  auto m = dold_kan(c, 3);
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i <= n; ++i) {
      auto faces = m.faces();
      auto& f = faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
      if (f.rows() == 0 || f.cols() == 0) continue;
      f.add_to(rng() % f.rows(), rng() % f.cols(), 1);
      EXPECT_THROW(TruncatedSimplicialModule(F3, 3, m.dims(), faces, m.degeneracies()), ValidationError) << n << "," << i;
    }
}

TEST(SimplicialRing, ConstantRingAndScalarShuffle) {
  auto a = std::make_shared<const FinLocalAlgebra>(FinLocalAlgebra::truncated_polynomial(F3, 2));
  auto r = TruncatedSimplicialRing::constant(a, 3);
  auto g = homotopy_ring(r, 2);
  EXPECT_EQ(g.dims(), (std::vector<std::size_t>{2, 0, 0}));
  // m = 0 product is level-wise multiplication after degeneracies
  Vector x{1, 2};
  EXPECT_EQ(shuffle_multiply(r, 0, Vector{0, 1}, 1, x), a->multiply({0, 1}, x));
  EXPECT_TRUE(g.check_laws().ok());
}

TEST(SimplicialRing, RejectsNonHomomorphicFaces) {
  auto a = FinLocalAlgebra::truncated_polynomial(F3, 2);
  auto m = TruncatedSimplicialModule::constant(F3, 2, 1);
  auto faces = m.faces();
  // swap 1 and x in both faces: still simplicial, not unital
  faces[1][0] = Matrix::from_rows(F3, {{0, 1}, {1, 0}});
  faces[1][1] = faces[1][0];
  auto degens = m.degeneracies();
  degens[0][0] = faces[1][0];
  TruncatedSimplicialModule bad(F3, 1, m.dims(), faces, degens);
  auto p = std::make_shared<const FinLocalAlgebra>(a);
  EXPECT_THROW(TruncatedSimplicialRing(bad, {p, p}), ValidationError);
}

TEST(BarConstruction, TrivialAlgebra) {
  auto B = FinLocalAlgebra::truncated_polynomial(F3, 2);
  auto k = FinLocalAlgebra::residue_field(F3);
  Matrix f = Matrix::from_rows(F3, {{1}, {0}});
  auto bar = bar_simplicial_ring(B, k, f, 3);
  EXPECT_EQ(bar.module().dims(), (std::vector<std::size_t>{2, 2, 2, 2}));
  EXPECT_EQ(homotopy_groups(bar.module()).dims(), (std::vector<std::size_t>{2, 0, 0}));
}

TEST(BarConstruction, DualNumbersTor) {
  auto A = FinLocalAlgebra::truncated_polynomial(F3, 2);
  auto k = FinLocalAlgebra::residue_field(F3);
  Matrix f = Matrix::from_rows(F3, {{1, 0}});
  auto bar = bar_simplicial_ring(k, A, f, 4);
  EXPECT_EQ(homotopy_groups(bar.module()).dims(), (std::vector<std::size_t>{1, 1, 1, 1}));
  auto g = homotopy_ring(bar, 3);
  auto laws = g.check_laws();
  EXPECT_TRUE(laws.ok()) << laws.first_failure;
  // the square of the degree-1 generator vanishes
  EXPECT_TRUE(is_zero(g.basis_product(1, 0, 1, 0)));
  EXPECT_THROW(g.basis_product(2, 0, 2, 0), TruncationError);
  EXPECT_THROW(homotopy_ring(bar, 4), TruncationError);
}

TEST(BarConstruction, RejectsNonUnitalMap) {
  auto A = FinLocalAlgebra::truncated_polynomial(F3, 2);
  auto k = FinLocalAlgebra::residue_field(F3);
  EXPECT_THROW(bar_simplicial_ring(k, A, Matrix::from_rows(F3, {{0, 0}}), 3), ValidationError);
}

TEST(BarConstruction, ProductIndependentOfRepresentative) {
  auto A = FinLocalAlgebra::truncated_polynomial(F3, 3);
  auto k = FinLocalAlgebra::residue_field(F3);
  auto bar = bar_simplicial_ring(k, A, Matrix::from_rows(F3, {{1, 0, 0}}), 4);
  auto norm = normalization(bar.module());
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::int64_t> coef(0, 2);
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; m + n <= 3; ++n) {
      HomologyBasis hm(norm.complex, m), hn(norm.complex, n), hmn(norm.complex, m + n);
      for (std::size_t i = 0; i < hm.dim(); ++i)
        for (std::size_t j = 0; j < hn.dim(); ++j) {
          Vector a = hm.representatives()[i], x = hn.representatives()[j];
          auto base = hmn.coords(norm.coords(m + n, shuffle_multiply(bar, m, norm.embed(m, a), n, norm.embed(n, x))));
          for (int t = 0; t < 5; ++t) {
            Vector a2 = a, x2 = x;
            for (auto& b : hm.boundaries()) axpy(F3, a2, coef(rng), b);
            for (auto& b : hn.boundaries()) axpy(F3, x2, coef(rng), b);
            auto other = hmn.coords(norm.coords(m + n, shuffle_multiply(bar, m, norm.embed(m, a2), n, norm.embed(n, x2))));
            EXPECT_EQ(base, other);
          }
        }
    }
}

TEST(BarConstruction, PlaneSquareZeroDegreeOne) {
  // k[x,y]/(x,y)^2: basis 1, x, y
  std::vector<std::vector<SparseVector>> t(3, std::vector<SparseVector>(3));
  t[0][0] = {{0, 1}};
  t[0][1] = t[1][0] = {{1, 1}};
  t[0][2] = t[2][0] = {{2, 1}};
  FinLocalAlgebra A(F3, t, {1, 2});
  auto k = FinLocalAlgebra::residue_field(F3);
  auto bar = bar_simplicial_ring(k, A, Matrix::from_rows(F3, {{1, 0, 0}}), 3);
  auto g = homotopy_ring(bar, 2);
  EXPECT_EQ(g.dim(1), 2u);
  EXPECT_TRUE(g.check_laws().ok());
}

TEST(SimplicialSet, NerveOfZ2) {
  auto x = std::make_shared<const TruncatedSimplicialSet>(nerve(FiniteGroup::cyclic(2), 3));
  EXPECT_EQ(x->sizes(), (std::vector<std::size_t>{1, 2, 4, 8}));
  auto p = pi1(x);
  EXPECT_TRUE(groups_isomorphic(p, FiniteGroup::cyclic(2)));
}

TEST(SimplicialSet, NerveOfS3RecoversGroup) {
  auto g = FiniteGroup::symmetric(3);
  auto x = std::make_shared<const TruncatedSimplicialSet>(nerve(g, 3));
  auto p = pi1(x);
  EXPECT_TRUE(groups_isomorphic(p, g));
  EXPECT_FALSE(groups_isomorphic(p, FiniteGroup::cyclic(6)));
}

TEST(SimplicialSet, NerveOfSurjectionIsFibration) {
  auto z4 = FiniteGroup::cyclic(4), z2 = FiniteGroup::cyclic(2);
  auto f = nerve_map(z4, z2, {0, 1, 0, 1}, 3);
  auto r = horn_fill_check(f, 3);
  EXPECT_TRUE(r.ok) << r.describe();
  EXPECT_GT(r.problems_checked, 0u);
}

TEST(SimplicialSet, HornInclusionIsNotFibration) {
  auto h = std::make_shared<const TruncatedSimplicialSet>(horn(2, 1, 3));
  auto inc = inclusion_into_simplex(h, 2, 1);
  auto r = horn_fill_check(inc, 3);
  EXPECT_FALSE(r.ok);
  // the edge 0 -> 2 of Delta^2 has no lift starting at vertex 0
  EXPECT_EQ(r.level, 1);
}

TEST(SimplicialSet, StandardSimplexSizesAndKanness) {
  auto d2 = standard_simplex(2, 3);
  EXPECT_EQ(d2.sizes(), (std::vector<std::size_t>{3, 6, 10, 15}));
  EXPECT_EQ(boundary_simplex(2, 2).sizes(), (std::vector<std::size_t>{3, 6, 9}));
  EXPECT_EQ(horn(2, 1, 2).sizes(), (std::vector<std::size_t>{3, 5, 7}));
  // Delta^n is not Kan for n >= 1; Delta^0 and nerves are.
  auto kd = kan_check(std::make_shared<const TruncatedSimplicialSet>(d2), 3);
  EXPECT_FALSE(kd.ok);
  EXPECT_EQ(kd.level, 2);
  EXPECT_TRUE(kan_check(std::make_shared<const TruncatedSimplicialSet>(standard_simplex(0, 3)), 3).ok);
  EXPECT_TRUE(kan_check(std::make_shared<const TruncatedSimplicialSet>(nerve(FiniteGroup::symmetric(3), 3)), 3).ok);
  EXPECT_FALSE(kan_check(std::make_shared<const TruncatedSimplicialSet>(horn(2, 1, 3)), 3).ok);
}

TEST(SimplicialSet, Pi1RefusesNonKan) {
  auto s1 = std::make_shared<const TruncatedSimplicialSet>(circle(3));
  EXPECT_EQ(s1->sizes(), (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_THROW(pi1(s1), ValidationError);
}

TEST(SimplicialSet, IdentityCheckerRejectsBadFace) {
  auto x = nerve(FiniteGroup::cyclic(3), 2);
  auto faces = x.faces();
  std::swap(faces[2][1][1], faces[2][1][2]);
  EXPECT_THROW(TruncatedSimplicialSet(2, x.sizes(), faces, x.degeneracies()), ValidationError);
}
