#pragma once

// The nine acceptance checks, shared by the acceptance binary and the
// `selftest` subcommand. Each returns a pass flag, wall time, and a one-line
// detail string; nothing here prints.

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homotor/galois/liftings.hpp"
#include "homotor/galois/numerology.hpp"
#include "homotor/galois/random.hpp"
#include "homotor/galois/selmer.hpp"
#include "homotor/koszul/cg.hpp"
#include "homotor/koszul/oracle.hpp"
#include "homotor/simplicial/delta.hpp"
#include "homotor/simplicial/module.hpp"
#include "homotor/simplicial/ring.hpp"

namespace homotor::selftest {

struct Criterion {
  int id = 0;
  std::string name;
  double limit_seconds = 0;
  bool passed = false;
  double seconds = 0;
  std::string detail;
};

namespace detail {

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Random complex over r in degrees 0..top with dims <= max_dim: each
// differential's columns are random combinations of a kernel basis of the
// previous one, so d o d = 0 by construction.
inline ChainComplex random_nonneg_complex(std::mt19937_64& rng, const CoefficientRing& r, int top, std::size_t max_dim) {
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

inline koszul::PolyRingPtr ring(const CoefficientRing& k, const std::string& text, int W) {
  return std::make_shared<const koszul::GradedPolyQuotient>(koszul::GradedPolyQuotient::parse(k, text, W));
}

inline std::vector<std::vector<koszul::Poly>> polys(const koszul::GradedPolyQuotient& S, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<koszul::Poly>> out;
  for (auto& row : rows) {
    std::vector<koszul::Poly> r;
    for (auto& t : row) r.push_back(koszul::parse_poly(t, S.names(), S.field()));
    out.push_back(std::move(r));
  }
  return out;
}

inline koszul::FreeGradedComplex two_term(koszul::PolyRingPtr S, std::vector<int> t0, std::vector<int> t1,
                                          const std::vector<std::vector<std::string>>& d) {
  auto p = polys(*S, d);
  return koszul::FreeGradedComplex(std::move(S), 0, {std::move(t0), std::move(t1)}, {p});
}

// The A/B suite of the triple-oracle comparison, over F_3.
struct TorCase {
  std::string a, b;
  std::vector<std::string> phi;
};

inline std::vector<TorCase> tor_suite() {
  return {
      {"k[x]/(x^2)", "k[t]/(t)", {"0"}},
      {"k[x]/(x^2)", "k[t]/(t^2)", {"t"}},
      {"k[x]/(x^3)", "k[t]/(t)", {"0"}},
      {"k[x]/(x^3)", "k[t]/(t^2)", {"t"}},
      {"k[x,y]/(x^2, x*y, y^2)", "k[t]/(t)", {"0", "0"}},
      {"k[x,y]/(x^2, x*y, y^2)", "k[t]/(t^2)", {"t", "0"}},
  };
}

}  // namespace detail

// 1. N(DK(C)) = C and pi_n(DK(C)) = H_n(C), n <= 3, on 200 random complexes over F_5.
inline Criterion dold_kan_round_trip(std::uint64_t seed) {
  Criterion c{1, "Dold-Kan round trip", 10};
  const auto F5 = CoefficientRing::prime_field(5);
  std::mt19937_64 rng(seed);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto C = detail::random_nonneg_complex(rng, F5, 4, 3);
    auto M = simplicial::dold_kan(C, 4);
    bool ok = simplicial::normalize(M) == C;
    auto pi = simplicial::homotopy_groups(M);
    for (int n = 0; n <= 3; ++n) ok = ok && pi.at(n) == homology(C, n);
    if (!ok) ++bad;
  }
  c.passed = bad == 0;
  c.detail = "200 complexes over F_5, degrees 0..4, dims <= 3; mismatches: " + std::to_string(bad);
  return c;
}

// 2. Graded commutativity and odd squares on every computed homotopy ring, and
// the shuffle sign identity sign(mu,nu) = (-1)^{mn} sign(nu,mu) on P_{1,1}, P_{1,2}, P_{2,2}.
inline Criterion shuffle_ring_laws(std::uint64_t) {
  Criterion c{2, "Shuffle-ring laws", 30};
  const auto F3 = CoefficientRing::prime_field(3);
  bool ok = true;
  std::size_t rings = 0, pairs = 0;
  std::string fail;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    auto pmn = simplicial::shuffles(m, n), pnm = simplicial::shuffles(n, m);
    for (auto& s : pmn) {
      auto it = std::find_if(pnm.begin(), pnm.end(), [&](const simplicial::Shuffle& t) { return t.sigma == s.tau && t.tau == s.sigma; });
      if (it == pnm.end() || s.sign != ((m * n) % 2 == 0 ? 1 : -1) * it->sign) {
        ok = false;
        fail = "shuffle sign identity fails on P_{" + std::to_string(m) + "," + std::to_string(n) + "}";
      }
    }
  }
  auto check = [&](const GradedAlgebra& g, const std::string& what) {
    auto laws = g.check_laws();
    ++rings;
    pairs += laws.pairs_checked;
    if (!laws.ok()) {
      ok = false;
      if (fail.empty()) fail = what + ": " + laws.first_failure;
    }
  };
  // constant ring and the bar constructions of the Tor suite
  {
    auto A = std::make_shared<const FinLocalAlgebra>(FinLocalAlgebra::truncated_polynomial(F3, 3));
    check(simplicial::homotopy_ring(simplicial::TruncatedSimplicialRing::constant(A, 3), 2), "constant k[x]/(x^3)");
  }
  for (auto& tc : detail::tor_suite()) {
    auto A = koszul::GradedPolyQuotient::parse(F3, tc.a, 12);
    auto B = koszul::GradedPolyQuotient::parse(F3, tc.b, 12);
    auto phi = koszul::structure_map(A, B, tc.phi);
    auto f = koszul::detail::local_algebra_map(A, B, phi, *A.socle_degree(), *B.socle_degree());
    auto bar = simplicial::bar_simplicial_ring(B.to_local_algebra().first, A.to_local_algebra().first, f, 4);
    check(simplicial::homotopy_ring(bar, 3), tc.a + " -> " + tc.b);
  }
  c.passed = ok;
  c.detail = std::to_string(rings) + " homotopy rings, " + std::to_string(pairs) + " basis pairs" + (fail.empty() ? "" : "; " + fail);
  return c;
}

// 3. Bar construction, minimal resolution and Koszul homology agree.
inline Criterion tor_triple_oracle(std::uint64_t) {
  Criterion c{3, "Triple-oracle Tor agreement", 60};
  const auto F3 = CoefficientRing::prime_field(3);
  bool ok = true;
  std::string fail;
  for (auto& tc : detail::tor_suite()) {
    auto r = koszul::tor_oracles(F3, tc.a, tc.b, tc.phi, 3, 3, 12);
    if (!r.agree || r.bar != r.resolution || !r.koszul_applicable) {
      ok = false;
      if (fail.empty()) fail = tc.a + " / " + tc.b + ": " + r.detail;
    }
  }
  auto dual = koszul::tor_oracles(F3, "k[x]/(x^2)", "k[t]/(t)", {"0"}, 3, 3, 12);
  bool dual_ok = dual.bar == std::vector<std::size_t>{1, 1, 1, 1};
  auto S = detail::ring(F3, "k[x,y]", 8), R = detail::ring(F3, "k", 8);
  auto plane = koszul::tor_algebra(S, R, koszul::structure_map(*S, *R, {"0", "0"}), 2);
  bool plane_ok = plane.algebra.dims() == std::vector<std::size_t>{1, 2, 1};
  c.passed = ok && dual_ok && plane_ok;
  c.detail = "6 pairs agree: " + std::string(ok ? "yes" : "no") + "; Tor^{k[x]/(x^2)}(k,k) = " + detail::join(dual.bar) +
             "; Tor^{k[x,y]}(k,k) = " + detail::join(plane.algebra.dims()) + (fail.empty() ? "" : "; " + fail);
  return c;
}

// 4. Lemma on three examples (one equality case) and corollary on two patched examples.
inline Criterion calegari_geraghty(std::uint64_t) {
  Criterion c{4, "Calegari-Geraghty lemma and corollary", 30};
  const auto F3 = CoefficientRing::prime_field(3);
  auto S = detail::ring(F3, "k[x]", 8);
  auto r1 = koszul::cg_lemma_check(detail::two_term(S, {1}, {0}, {{"x"}}));
  auto r2 = koszul::cg_lemma_check(detail::two_term(S, {0}, {0}, {{"0"}}));
  auto r3 = koszul::cg_lemma_check(koszul::FreeGradedComplex(S, 0, {{0}}, {}));
  bool lemma = r1.status == "ok" && r1.equality && r1.concentrated && r1.top_pd == r1.ell && r1.top_checks && r2.status == "ok" &&
               r2.inequality && !r2.equality && r3.status == "ok" && r3.equality;

  auto k = detail::ring(F3, "k", 8);
  auto c1 = koszul::cg_corollary_check(detail::two_term(S, {1}, {0}, {{"x"}}), k, koszul::structure_map(*S, *k, {"0"}));
  auto S2 = detail::ring(F3, "k[x,y]", 8), R2 = detail::ring(F3, "k[y]", 8);
  auto c2 = koszul::cg_corollary_check(detail::two_term(S2, {1}, {0}, {{"x"}}), R2, koszul::structure_map(*S2, *R2, {"0", "y"}));
  bool corollary = c1.ok && c1.kunneth_collapse && c1.freely_generated && c2.ok && c2.kunneth_collapse && c2.freely_generated;
  c.passed = lemma && corollary;
  c.detail = "lemma: " + r1.status + "/" + r2.status + "/" + r3.status + " (equality case pd = " + std::to_string(r1.top_pd) +
             ", ell = " + std::to_string(r1.ell) + "); corollary reduced dims " + detail::join(c1.reduced_dims) + " and " +
             detail::join(c2.reduced_dims) + ", tor dims " + detail::join(c1.tor_dims) + " and " + detail::join(c2.tor_dims) +
             (corollary ? "" : "; failed: " + c1.failed_clause + c2.failed_clause);
  return c;
}

// 5. Ten-term exactness on 100 random Selmer data.
inline Criterion selmer_exactness(std::uint64_t seed) {
  Criterion c{5, "Selmer ten-term exactness", 60};
  std::mt19937_64 rng(seed);
  int bad = 0, places = 0;
  std::size_t max_order = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto d = galois::random_selmer_datum(rng);
    places += static_cast<int>(d.places().size());
    max_order = std::max(max_order, d.rho().group()->order());
    auto les = galois::selmer_les_check(d);
    if (!les.exact || les.alternating_sum != 0) ++bad;
  }
  c.passed = bad == 0;
  c.detail = "100 data, " + std::to_string(places) + " local places, |G| <= " + std::to_string(max_order) +
             "; failures: " + std::to_string(bad);
  return c;
}

// 6. Lifting counts against p^{dim Z^1}, and tangent tables against Selmer dims.
inline Criterion deformation_tangent(std::uint64_t seed) {
  Criterion c{6, "Deformation tangent oracle", 60};
  const auto F3 = CoefficientRing::prime_field(3);
  std::mt19937_64 rng(seed);
  std::vector<galois::Representation> reps;
  auto z2 = galois::share(FiniteGroup::cyclic(2));
  reps.emplace_back(z2, F3, std::vector<Matrix>{Matrix::identity(F3, 2), Matrix::from_rows(F3, {{1, 0}, {0, -1}})});
  reps.push_back(galois::Representation::trivial(galois::share(FiniteGroup::trivial()), F3, 2));
  reps.push_back(galois::Representation::trivial(galois::share(FiniteGroup::cyclic(3)), F3, 1));
  std::vector<galois::GroupPtr> groups{galois::share(FiniteGroup::cyclic(2)), galois::share(FiniteGroup::cyclic(3)),
                                       galois::share(FiniteGroup::cyclic(4)), galois::share(FiniteGroup::cyclic(6)),
                                       galois::share(FiniteGroup::klein_four()), galois::share(FiniteGroup::symmetric(3))};
  for (std::size_t i = 0; i < 9; ++i) {
    auto G = groups[i % groups.size()];
    std::size_t n = G->generators().size() == 1 ? 2 : 1;
    reps.push_back(galois::random_representation(G, F3, n, rng));
  }
  int bad_count = 0, bad_tangent = 0;
  bool example = false;
  for (auto& rho : reps) {
    auto l = galois::brute_force_liftings(rho);
    if (!l.count_matches) ++bad_count;
    if (&rho == &reps.front()) example = l.liftings == 9 && l.dims.h1 == 0;
    auto phi = galois::GroupHom::identity(rho.group());
    auto gv = galois::GroupModule::adjoint(rho).restrict(phi);
    for (int variant = 0; variant < 2; ++variant) {
      std::vector<galois::LocalPlace> places;
      if (variant == 1) places.push_back({"v", phi, galois::unramified_like_condition(gv), true, true});
      galois::SelmerDatum d(rho, places);
      auto t = galois::tangent_complex_table(d);
      auto s = galois::selmer_dims(d);
      if (t.t != std::vector<std::size_t>{s[1], s[2], s[3]} || !t.matches) ++bad_tangent;
    }
  }
  c.passed = bad_count == 0 && bad_tangent == 0 && example && reps.size() >= 10;
  c.detail = std::to_string(reps.size()) + " lifting instances, count mismatches " + std::to_string(bad_count) +
             "; Z/2 diag(1,-1): " + (example ? "9 liftings, H^1 = 0" : "wrong") + "; tangent mismatches " +
             std::to_string(bad_tangent) + " of " + std::to_string(2 * reps.size());
  return c;
}

// 7. Locally symmetric invariants, Taylor-Wiles additivity, oddness minimum.
inline Criterion numerology(std::uint64_t) {
  Criterion c{7, "Numerology", 5};
  auto gso = galois::gso_invariants(3, 1);
  bool gso_ok = gso.q0 + gso.l0 == 2;
  int descriptors = 0;
  bool gl_ok = true;
  for (long N = 1; N <= 5 && descriptors < 50; ++N)
    for (long r1 = 0; r1 <= 3 && descriptors < 50; ++r1)
      for (long r2 = 0; r2 <= 3 && descriptors < 50; ++r2) {
        if (r1 + r2 == 0) continue;
        auto s = galois::gl_invariants(N, r1, r2);
        gl_ok = gl_ok && 2 * s.q0 + s.l0 == s.d && s.check;
        ++descriptors;
      }
  bool add_ok = true;
  for (long n = 1; n <= 4; ++n)
    for (long perp = 0; perp <= 2; ++perp) {
      galois::NumerologyInput base;
      base.n = n;
      base.h0_global = 1;
      base.h0_infinite = {1};
      base.h1_S_perp = perp;
      base.places = {galois::PlaceDims{3, 1}};
      const long gS = galois::presentation_bound_g(base).g;
      for (long r = perp; r <= perp + 3; ++r) {
        auto q = base;
        for (long i = 0; i < r; ++i) q.places.push_back(galois::PlaceDims{n + 1, 1});
        add_ok = add_ok && galois::presentation_bound_g(q).g - gS == n * r;
        auto qs = q;
        qs.h1_S_perp = 0;
        add_ok = add_ok && galois::presentation_bound_g(qs).g == galois::tw_g_formula(n, r, gS, perp).g;
        add_ok = add_ok && galois::tw_g_formula(n, r, gS, perp).g - galois::tw_g_formula(n, 0, gS, 0).g + perp == n * r;
      }
    }
  bool odd_ok = true;
  for (long N = 1; N <= 5; ++N) {
    std::size_t best = static_cast<std::size_t>(N * N);
    for (long a = 0; a <= N; ++a)
      best = std::min(best, galois::involution_h0(static_cast<std::size_t>(a), static_cast<std::size_t>(N - a)));
    odd_ok = odd_ok && static_cast<long>(best) == galois::minimal_h0_at_real(N);
  }
  c.passed = gso_ok && gl_ok && add_ok && odd_ok && descriptors == 50;
  c.detail = "GSO(3,1): q0 + l0 = " + std::to_string(gso.q0 + gso.l0) + "; " + std::to_string(descriptors) +
             " GL descriptors 2q0 + l0 = d: " + (gl_ok ? "yes" : "no") + "; additivity: " + (add_ok ? "yes" : "no") +
             "; oddness minimum N <= 5: " + (odd_ok ? "yes" : "no");
  return c;
}

// 8. Auslander-Buchsbaum on the graded test modules and the hand values.
inline Criterion depth_pd(std::uint64_t seed) {
  Criterion c{8, "Depth and projective dimension", 10};
  const auto F3 = CoefficientRing::prime_field(3);
  auto S = detail::ring(F3, "k[x,y]", 8);
  auto free = koszul::depth_and_pd(koszul::GradedModule::free(S, {0}));
  auto k = koszul::depth_and_pd(koszul::presented(S, {0}, detail::polys(*S, {{"x"}, {"y"}})));
  auto sx = koszul::depth_and_pd(koszul::presented(S, {0}, detail::polys(*S, {{"x"}})));
  bool hand = free.depth == 2 && free.pd == 0 && k.depth == 0 && k.pd == 2 && sx.depth == 1 && sx.pd == 1;
  int modules = 3, bad = 0;
  for (auto* d : {&free, &k, &sx})
    if (!d->auslander_buchsbaum) ++bad;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(0, 2);
  auto S3 = detail::ring(F3, "k[x,y,z]", 7);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int trial = 0; trial < 12; ++trial) {
    auto R = trial % 2 ? S3 : S;
    const std::size_t nv = R->nvars();
    std::vector<std::vector<std::string>> rels;
    for (int r = 0; r < 1 + trial % 3; ++r) {
      std::string p;
      for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t w = v; w < nv; ++w) p += " + " + std::to_string(coef(rng)) + "*" + names[v] + "*" + names[w];
      rels.push_back({p.substr(3)});
    }
    auto M = koszul::presented(R, {0}, detail::polys(*R, rels));
    if (M.is_zero()) continue;
    auto d = koszul::depth_and_pd(M);
    ++modules;
    if (d.stabilized && !d.auslander_buchsbaum) ++bad;
  }
  c.passed = hand && bad == 0;
  c.detail = "hand values (free, k, S/(x)) = (" + std::to_string(free.depth) + "," + std::to_string(free.pd) + "), (" +
             std::to_string(k.depth) + "," + std::to_string(k.pd) + "), (" + std::to_string(sx.depth) + "," + std::to_string(sx.pd) +
             "); Auslander-Buchsbaum failures " + std::to_string(bad) + " of " + std::to_string(modules) + " modules";
  return c;
}

// 9. H^i(Z/3, F_3) and vanishing when p does not divide |G|. The window is
// H^0..H^3 when 3-cochains are small enough, else H^0..H^2.
inline Criterion group_cohomology(std::uint64_t seed) {
  Criterion c{9, "Group cohomology", 30};
  const auto F3 = CoefficientRing::prime_field(3);
  auto z3 = galois::cochain_complex(galois::GroupModule::trivial(galois::share(FiniteGroup::cyclic(3)), F3, 1), 3);
  bool z3_ok = z3.dims == std::vector<std::size_t>{1, 1, 1, 1};
  std::mt19937_64 rng(seed);
  int instances = 0, bad = 0, deep = 0;
  for (auto& G : galois::small_groups())
    for (std::int64_t p : {3, 5}) {
      if (G->order() % static_cast<std::size_t>(p) == 0) continue;
      auto k = CoefficientRing::prime_field(p);
      std::vector<galois::GroupModule> mods{galois::GroupModule::trivial(G, k, 1),
                                            galois::GroupModule::adjoint(galois::random_representation(G, k, 2, rng))};
      for (auto& M : mods) {
        const int T = galois::cochain_dim(M, 3) <= 800 ? 3 : 2;
        auto h = galois::cochain_complex(M, T);
        ++instances;
        if (T == 3) ++deep;
        for (int i = 1; i <= T; ++i)
          if (h.dims[static_cast<std::size_t>(i)] != 0) ++bad;
      }
    }
  c.passed = z3_ok && bad == 0;
  c.detail = "H^*(Z/3, F_3) = " + detail::join(z3.dims) + "; " + std::to_string(instances) + " coprime instances (" +
             std::to_string(deep) + " through H^3), nonzero H^{>=1}: " + std::to_string(bad);
  return c;
}

inline std::vector<std::function<Criterion(std::uint64_t)>> all_criteria() {
  return {dold_kan_round_trip, shuffle_ring_laws, tor_triple_oracle, calegari_geraghty, selmer_exactness,
          deformation_tangent, numerology,         depth_pd,          group_cohomology};
}

// Runs one criterion with timing; exceptions count as failures.
inline Criterion run(const std::function<Criterion(std::uint64_t)>& f, int id, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  Criterion c;
  try {
    c = f(seed);
  } catch (const std::exception& e) {
    c.id = id;
    c.name = "criterion " + std::to_string(id);
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.limit_seconds > 0 && c.seconds > c.limit_seconds) {
    c.passed = false;
    c.detail += "; over the time limit";
  }
  return c;
}

}  // namespace homotor::selftest
