#include <gtest/gtest.h>

#include <random>

#include "homotor/galois/liftings.hpp"
#include "homotor/galois/numerology.hpp"
#include "homotor/galois/random.hpp"

using namespace homotor;
using namespace homotor::galois;

namespace {

const auto F3 = CoefficientRing::prime_field(3);
const auto F5 = CoefficientRing::prime_field(5);

Representation diag_z2() {
  auto z2 = share(FiniteGroup::cyclic(2));
  return Representation(z2, F3, {Matrix::identity(F3, 2), Matrix::from_rows(F3, {{1, 0}, {0, -1}})});
}

}  // namespace

TEST(GroupModule, ValidatesActions) {
  auto z2 = share(FiniteGroup::cyclic(2));
  EXPECT_THROW(Representation(z2, F3, {Matrix::identity(F3, 2), Matrix::from_rows(F3, {{1, 1}, {0, 1}})}), ValidationError);
  EXPECT_THROW(Representation(z2, F3, {Matrix::identity(F3, 1), Matrix::identity(F3, 1)}, std::vector<Scalar>{1, 0}), ValidationError);
  auto ad = GroupModule::adjoint(diag_z2());
  EXPECT_EQ(ad.dim(), 4u);
  EXPECT_EQ(ad.fixed_points().size(), 2u);
  auto chi = Representation(z2, F3, diag_z2().matrices(), std::vector<Scalar>{1, 2});
  auto dual = GroupModule::twisted_dual_adjoint(chi);
  // the off-diagonal entries flip sign under Ad and again under chi
  EXPECT_EQ(dual.fixed_points().size(), 2u);
}

TEST(GroupHom, Validation) {
  auto z4 = share(FiniteGroup::cyclic(4));
  auto z2 = share(FiniteGroup::cyclic(2));
  EXPECT_THROW(GroupHom(z2, z4, {0, 1}), ValidationError);
  GroupHom ok(z2, z4, {0, 2});
  EXPECT_FALSE(ok.surjective());
  auto inc = GroupHom::subgroup_inclusion(share(FiniteGroup::symmetric(3)), {1});
  EXPECT_LE(inc.source()->order(), 3u);
}

TEST(Cochains, SpecExamples) {
  auto z2 = share(FiniteGroup::cyclic(2));
  auto z3 = share(FiniteGroup::cyclic(3));
  EXPECT_EQ(cochain_complex(GroupModule::trivial(z2, F3, 1), 3).dims, (std::vector<std::size_t>{1, 0, 0, 0}));
  EXPECT_EQ(cochain_complex(GroupModule::trivial(z3, F3, 1), 3).dims, (std::vector<std::size_t>{1, 1, 1, 1}));
  auto ad = cochain_complex(GroupModule::adjoint(diag_z2()), 2);
  EXPECT_EQ(ad.dims, (std::vector<std::size_t>{2, 0, 0}));
  EXPECT_TRUE(ad.h0_matches);
}

TEST(Cochains, MemoryGuard) {
  auto g = share(FiniteGroup::cyclic(12));
  CochainBudget tight{1000, 100000};
  EXPECT_THROW(cochain_complex(GroupModule::trivial(g, F3, 4), 3, tight), BudgetExceeded);
}

TEST(Cochains, CocycleSpaceMatchesDenseKernel) {
  // the compressed kernel equals the dense one
  auto a4 = share(FiniteGroup::alternating4());
  std::mt19937_64 rng(3);
  auto rho = random_representation(a4, F3, 2, rng);
  auto M = GroupModule::adjoint(rho);
  auto d2 = cochain_differential(M, 2);
  auto z = CocycleSpace::of(d2);
  EXPECT_EQ(z.dim(), d2.cols - rank(d2.dense()));
  for (auto& v : z.basis()) EXPECT_TRUE(is_zero(d2.apply(v)));
}

TEST(Cocycles, SpecExamples) {
  auto z2 = share(FiniteGroup::cyclic(2));
  auto triv = z1_b1_h1(Representation::trivial(z2, F3, 2));
  EXPECT_EQ(triv.z1, 0u);
  EXPECT_EQ(triv.h1, 0u);
  auto d = z1_b1_h1(diag_z2());
  EXPECT_EQ(d.z1, 2u);
  EXPECT_EQ(d.b1, 2u);
  EXPECT_EQ(d.h1, 0u);
  // direct sums of modules add up
  auto z3 = share(FiniteGroup::cyclic(3));
  auto a = GroupModule::trivial(z3, F3, 1);
  auto b = GroupModule::adjoint(Representation(z3, F3, {Matrix::identity(F3, 2), Matrix::from_rows(F3, {{1, 1}, {0, 1}}),
                                                          Matrix::from_rows(F3, {{1, 2}, {0, 1}})}));
  auto s = z1_b1_h1(GroupModule::direct_sum(a, b));
  auto da = z1_b1_h1(a), db = z1_b1_h1(b);
  EXPECT_EQ(s.z1, da.z1 + db.z1);
  EXPECT_EQ(s.b1, da.b1 + db.b1);
  EXPECT_EQ(s.h1, da.h1 + db.h1);
}

// dim Z^1 - dim B^1 = dim H^1 and dim B^1 = dim g - dim H^0, with H^1 taken
// from the cochain complex independently.
TEST(Cocycles, BookkeepingProperty) {
  std::mt19937_64 rng(11);
  auto groups = small_groups();
  for (int trial = 0; trial < 25; ++trial) {
    auto G = groups[static_cast<std::size_t>(trial) % groups.size()];
    auto k = trial % 2 ? F3 : F5;
    auto rho = random_representation(G, k, 1 + static_cast<std::size_t>(trial % 2), rng);
    auto M = GroupModule::adjoint(rho);
    auto c = z1_b1_h1(M);
    auto t = truncated_cochains(M);
    EXPECT_EQ(c.z1 - c.b1, c.h1);
    EXPECT_EQ(c.b1, c.dim_g - c.h0);
    EXPECT_EQ(c.h1, cohomology(t.complex, 1).dim());
    EXPECT_EQ(c.h0, M.fixed_points().size());
  }
}

// p does not divide |G| and M^G = 0: every H^i vanishes in the window.
TEST(Cochains, CoprimeVanishing) {
  auto z2 = share(FiniteGroup::cyclic(2));
  GroupModule sign(z2, F3, 1, {Matrix::identity(F3, 1), Matrix::from_rows(F3, {{-1}})});
  auto h = cochain_complex(sign, 2);
  long chi = 0;
  for (std::size_t i = 0; i < h.dims.size(); ++i) chi += (i % 2 ? -1 : 1) * static_cast<long>(h.dims[i]);
  EXPECT_EQ(h.dims, (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_EQ(chi, 0);
  auto z4 = share(FiniteGroup::cyclic(4));
  // Z/4 acting on F_5 through i
  GroupModule m(z4, F5, 1, {Matrix::identity(F5, 1), Matrix::from_rows(F5, {{2}}), Matrix::from_rows(F5, {{4}}), Matrix::from_rows(F5, {{3}})});
  EXPECT_EQ(cochain_complex(m, 2).dims, (std::vector<std::size_t>{0, 0, 0}));
}

TEST(Liftings, SpecExamples) {
  auto d = brute_force_liftings(diag_z2());
  EXPECT_EQ(d.liftings, 9u);
  EXPECT_EQ(d.dims.z1, 2u);
  EXPECT_TRUE(d.count_matches);
  EXPECT_EQ(d.orbits, 1u);
  auto trivial = brute_force_liftings(Representation::trivial(share(FiniteGroup::trivial()), F3, 2));
  EXPECT_EQ(trivial.liftings, 1u);
  auto z3 = brute_force_liftings(Representation::trivial(share(FiniteGroup::cyclic(3)), F3, 1));
  EXPECT_EQ(z3.liftings, 3u);
  EXPECT_EQ(z3.dims.z1, 1u);
  EXPECT_TRUE(z3.h1_asserted);
  EXPECT_TRUE(z3.orbit_matches);
}

TEST(Liftings, BudgetRefusal) {
  auto s3 = share(FiniteGroup::symmetric(3));
  std::mt19937_64 rng(5);
  auto rho = random_representation(s3, F5, 2, rng);
  LiftingBudget tiny{1000, 1};
  try {
    brute_force_liftings(rho, tiny);
    FAIL() << "expected a refusal";
  } catch (const BudgetExceeded& e) {
    EXPECT_GT(e.required(), 1000.0);
  }
}

// Enumeration and linear algebra agree: #liftings = p^{dim Z^1}; orbits are
// cosets of B^1, so their number is p^{dim H^1} with stabilizers of order p^{h0}.
TEST(Liftings, CountProperty) {
  std::mt19937_64 rng(17);
  std::vector<GroupPtr> groups{share(FiniteGroup::cyclic(2)), share(FiniteGroup::cyclic(3)), share(FiniteGroup::cyclic(4)),
                               share(FiniteGroup::klein_four()), share(FiniteGroup::symmetric(3))};
  for (int trial = 0; trial < 12; ++trial) {
    auto G = groups[static_cast<std::size_t>(trial) % groups.size()];
    std::size_t n = G->generators().size() == 1 ? 2 : 1 + static_cast<std::size_t>(trial % 2);
    auto rho = random_representation(G, F3, n, rng);
    auto c = brute_force_liftings(rho);
    EXPECT_TRUE(c.count_matches) << G->name() << " n=" << n << ": " << c.liftings << " vs " << c.p_pow_z1;
    EXPECT_EQ(c.orbits, c.p_pow_h1);
    EXPECT_EQ(c.stabilizer_order, power(3, static_cast<int>(c.dims.h0)));
  }
}

TEST(Selmer, EmptyLocalSet) {
  SelmerDatum d(diag_z2(), {});
  auto s = selmer_complex(d);
  auto t = truncated_cochains(GroupModule::adjoint(diag_z2()));
  for (int i = 0; i <= 2; ++i) EXPECT_EQ(s.dims[static_cast<std::size_t>(i)], cohomology(t.complex, i).dim());
  EXPECT_EQ(s.dims[3], 0u);
  auto les = selmer_les_check(d);
  EXPECT_TRUE(les.exact);
  EXPECT_EQ(les.alternating_sum, 0);
}

TEST(Selmer, FullConditionAtSurjectivePlace) {
  auto z3 = share(FiniteGroup::cyclic(3));
  auto rho = Representation::trivial(z3, F3, 1);
  auto phi = GroupHom::identity(z3);
  auto gv = GroupModule::adjoint(rho).restrict(phi);
  SelmerDatum d(rho, {LocalPlace{"v", phi, full_condition(gv), true, true}});
  auto s = selmer_complex(d);
  EXPECT_EQ(s.dims[1], z1_b1_h1(rho).h1);
  EXPECT_TRUE(selmer_les_check(d).exact);
}

TEST(Selmer, ZeroLocalCondition) {
  auto rho = diag_z2();
  auto phi = GroupHom::identity(rho.group());
  auto gv = GroupModule::adjoint(rho).restrict(phi);
  SelmerDatum d(rho, {LocalPlace{"v", phi, unramified_like_condition(gv), true, true}});
  auto les = selmer_les_check(d);
  EXPECT_TRUE(les.exact);
  EXPECT_EQ(les.alternating_sum, 0);
  EXPECT_TRUE(les.local_side_matches);
  EXPECT_EQ(les.l_local, (std::vector<std::size_t>{0}));
}

TEST(Selmer, RejectsBadData) {
  auto rho = diag_z2();
  auto phi = GroupHom::identity(rho.group());
  // a non-cocycle
  Vector junk(8, 0);
  junk[0] = 1;
  EXPECT_THROW(SelmerDatum(rho, {LocalPlace{"v", phi, {junk}, false, true}}), ValidationError);
  // flagged as containing B^1 but empty
  EXPECT_THROW(SelmerDatum(rho, {LocalPlace{"v", phi, {}, true, true}}), ValidationError);
  // map into another group
  auto z4 = share(FiniteGroup::cyclic(4));
  EXPECT_THROW(SelmerDatum(rho, {LocalPlace{"v", GroupHom::identity(z4), {}, false, true}}), ValidationError);
  // a valid datum whose L~_v misses B^1 has no Selmer complex
  SelmerDatum partial(rho, {LocalPlace{"v", phi, {}, false, true}});
  EXPECT_THROW(selmer_complex(partial), ValidationError);
}

TEST(Selmer, RandomExactness) {
  std::mt19937_64 rng(2025);
  for (int trial = 0; trial < 30; ++trial) {
    auto d = random_selmer_datum(rng);
    auto les = selmer_les_check(d);
    EXPECT_TRUE(les.exact) << "trial " << trial;
    EXPECT_EQ(les.alternating_sum, 0);
    EXPECT_TRUE(les.local_side_matches);
  }
}

TEST(Tangent, SpecExamples) {
  SelmerDatum empty(diag_z2(), {});
  auto t = tangent_complex_table(empty);
  EXPECT_EQ(t.t[0], 0u);
  EXPECT_TRUE(t.matches);
  EXPECT_EQ(t.framed_t0, 2u);

  auto rho = diag_z2();
  auto phi = GroupHom::identity(rho.group());
  auto gv = GroupModule::adjoint(rho).restrict(phi);
  SelmerDatum one(rho, {LocalPlace{"v", phi, unramified_like_condition(gv), true, true}});
  auto t1 = tangent_complex_table(one);
  ASSERT_EQ(t1.local.size(), 1u);
  EXPECT_EQ(t1.local[0].t_minus1, 1);  // H^0 = diagonal matrices, modulo scalars
  EXPECT_EQ(t1.local[0].t0, 0);
  EXPECT_TRUE(t1.local[0].map_check);
  auto s = selmer_complex(one);
  if (s.dims[2] == 0) EXPECT_EQ(t1.t[1], 0u);

  SelmerDatum rough(rho, {LocalPlace{"v", phi, unramified_like_condition(gv), true, false}});
  EXPECT_THROW(tangent_complex_table(rough), ValidationError);
}

TEST(Tangent, MatchesSelmerShift) {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    auto d = random_selmer_datum(rng);
    bool flagged = true;
    for (auto& v : d.places()) flagged = flagged && v.contains_coboundaries;
    if (!flagged) continue;
    auto t = tangent_complex_table(d);
    auto s = selmer_dims(d);
    EXPECT_EQ(t.t, (std::vector<std::size_t>{s[1], s[2], s[3]}));
    EXPECT_TRUE(t.matches) << "trial " << trial;
    if (s[3] == 0) EXPECT_EQ(t.t[2], 0u);
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

TEST(Numerology, PresentationBound) {
  NumerologyInput in;
  in.h1_S_perp = 1;
  in.h0_global = 1;
  in.h0_infinite = {1};
  EXPECT_EQ(presentation_bound_g(in).g, 1);
  // adding r Taylor-Wiles places with dim L_v - h0_v = n adds n r
  in.n = 2;
  auto base = presentation_bound_g(in).g;
  for (int r = 1; r <= 3; ++r) {
    auto aug = in;
    for (int i = 0; i < r; ++i) aug.places.push_back(PlaceDims{3, 1});
    EXPECT_EQ(presentation_bound_g(aug).g - base, 2 * r);
  }
  in.h0_infinite = {5};
  EXPECT_FALSE(presentation_bound_g(in).consistent);
  in.h1_S = -1;
  EXPECT_THROW(presentation_bound_g(in), ValidationError);
}

TEST(Numerology, TwFormula) {
  EXPECT_EQ(tw_g_formula(1, 1, 1, 1).g, 1);
  auto t = tw_g_formula(2, 3, 0, 1);
  EXPECT_EQ(t.g, 5);
  EXPECT_EQ(t.dim_gap, 1);
  EXPECT_THROW(tw_g_formula(2, 0, 0, 1), ValidationError);
}

TEST(Numerology, Oddness) {
  // GL_2 over Q: l0 = 0, [F:Q](dim G - dim B) = 1, h0 = 1
  EXPECT_TRUE(oddness_check({2}, 0, 1, 4, 3, 1));
  EXPECT_FALSE(oddness_check({4}, 0, 1, 4, 3, 1));
  EXPECT_EQ(involution_h0(1, 1), 2u);
  EXPECT_EQ(involution_h0(2, 0), 4u);
  EXPECT_EQ(involution_h0(2, 1), 5u);
  for (long N = 1; N <= 5; ++N) {
    std::size_t best = 1000;
    for (std::size_t a = 0; a <= static_cast<std::size_t>(N); ++a) best = std::min(best, involution_h0(a, static_cast<std::size_t>(N) - a));
    EXPECT_EQ(static_cast<long>(best), minimal_h0_at_real(N)) << "N = " << N;
  }
}

TEST(Numerology, TaylorWilesPrimes) {
  auto a = tw_prime_check(7, 3, 1, {"1", "2"});
  EXPECT_EQ(a.level, 1);
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(delta_v_order(7, 3, 2), 9);
  EXPECT_EQ(tw_prime_check(19, 3, 2, {"a", "b"}).level, 2);
  EXPECT_FALSE(tw_prime_check(7, 3, 1, {"a", "a"}).strongly_regular);
  EXPECT_FALSE(tw_prime_check(7, 3, 2, {"a", "b"}).level_ok);
  EXPECT_THROW(tw_prime_check(9, 3, 1, {"a"}), ValidationError);
}

TEST(Numerology, SmRing) {
  auto c = sm_ring_check(3, 1, 2);
  EXPECT_EQ(c.rank, 3u);
  EXPECT_TRUE(c.ok);
  auto z = sm_ring_check(3, 0, 2);
  EXPECT_EQ(z.rank, 1u);
  EXPECT_TRUE(z.ok);
  EXPECT_TRUE(sm_ring_check(5, 1, 1).ok);
  EXPECT_TRUE(sm_ring_check(3, 2, 3).ok);
  EXPECT_TRUE(j_containment(3, 1, 2, 2));
  EXPECT_TRUE(j_containment(5, 0, 1, 2));
  // J_1 does not lie in J_2 (degrees)
  EXPECT_THROW(j_containment(3, 2, 1, 2), ValidationError);
}

TEST(Numerology, LocallySymmetric) {
  auto gso = gso_invariants(3, 1);
  EXPECT_EQ(gso.q0, 1);
  EXPECT_EQ(gso.l0, 1);
  EXPECT_EQ(gso.q0 + gso.l0, 2);
  auto c = gl_invariants(2, 0, 1);
  EXPECT_EQ(c.l0, 1);
  EXPECT_EQ(c.q0, 1);
  auto r = gl_invariants(2, 1, 0);
  EXPECT_EQ(r.l0, 0);
  EXPECT_EQ(r.q0, 1);
  EXPECT_EQ(r.d, 2);
  for (long N = 1; N <= 6; ++N)
    for (long r1 = 0; r1 <= 3; ++r1)
      for (long r2 = 0; r2 <= 3; ++r2) {
        if (r1 + r2 == 0) continue;
        auto s = gl_invariants(N, r1, r2);
        EXPECT_EQ(2 * s.q0 + s.l0, s.d);
        EXPECT_TRUE(s.check);
        // the oddness remark: l0 + [F:Q](dim G - dim B) + 1 = [(N^2+1)/2] r1 + (N^2) r2
        EXPECT_EQ(s.l0 + (r1 + 2 * r2) * (N * N - N) / 2 + 1, minimal_h0_at_real(N) * r1 + N * N * r2);
      }
  EXPECT_THROW(gso_invariants(1, 1), ValidationError);
}

TEST(Numerology, LocalConditions) {
  EXPECT_EQ(local_condition_dim("minimal", 1, 4, 3), 0);
  EXPECT_EQ(local_condition_dim("ordinary", 1, 4, 3), 1);
  EXPECT_EQ(local_condition_dim("fontaine_laffaille", 2, 9, 6), 6);
  EXPECT_THROW(local_condition_dim("crystalline", 1, 4, 3), ValidationError);
}

// GL_2 over an imaginary quadratic field: one complex place with h0 = dim g,
// ordinary at p contributing [F:Q](dim G - dim B) = 2, so h1_S - h1_S_perp = -l0.
TEST(Numerology, ImaginaryQuadraticGl2) {
  auto inv = gl_invariants(2, 0, 1);
  NumerologyInput in;
  in.n = 2;
  in.h0_global = 1;
  in.h0_infinite = {4};
  in.places = {PlaceDims{local_condition_dim("ordinary", 2, 4, 3), 0}, PlaceDims{1, 1}};
  for (long perp = 1; perp <= 4; ++perp) {
    in.h1_S_perp = perp;
    EXPECT_EQ(presentation_bound_g(in).g - perp, -inv.l0);
  }
  EXPECT_TRUE(oddness_check({4}, inv.l0, 2, 4, 3, 1));
}

// Adding r Taylor-Wiles places with H^1_{S_Q perp} = 0 gives the same g as the
// closed form n r + h1_S - h1_S_perp.
TEST(Numerology, TwFormulaMatchesPresentation) {
  for (long n = 1; n <= 4; ++n)
    for (long perp = 0; perp <= 3; ++perp)
      for (long extra = 0; extra <= 3; ++extra) {
        NumerologyInput base;
        base.n = n;
        base.h0_global = 1;
        base.h0_infinite = {1};
        base.h1_S_perp = perp;
        base.places = {PlaceDims{extra + 2, 2}};
        const long h1_S = presentation_bound_g(base).g;
        if (h1_S < 0) continue;
        for (long r = perp; r <= perp + 3; ++r) {
          auto q = base;
          q.h1_S_perp = 0;
          for (long i = 0; i < r; ++i) q.places.push_back(PlaceDims{n + 1, 1});
          EXPECT_EQ(presentation_bound_g(q).g, tw_g_formula(n, r, h1_S, perp).g);
        }
      }
}
