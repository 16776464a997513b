#pragma once

// Dimension formulas around Selmer groups, Taylor-Wiles data and locally
// symmetric spaces. Inputs are integers; nothing here is computed from a
// representation except the involution centralizers.

#include <set>
#include <string>
#include <vector>

#include "homotor/galois/module.hpp"

namespace homotor::galois {

struct PlaceDims {
  long l_dim = 0;  // dim L_v
  long h0 = 0;     // dim H^0(Gamma_v, g)
};

struct NumerologyInput {
  long n = 0;  // rank of G
  long r = 0;  // number of Taylor-Wiles places
  long h0_global = 0;
  long h0_global_dual = 0;
  std::vector<long> h0_infinite;  // dim H^0(Gamma_v, g) for v | infinity
  std::vector<PlaceDims> places;  // v in S
  long h1_S = 0;
  long h1_S_perp = 0;
  long l0 = 0;
  long fv_degree = 0;  // [F_v : Q_p]
  long dim_G = 0;
  long dim_B = 0;
  long r1 = 0, r2 = 0;

  void validate() const {
    auto neg = [](long x) { return x < 0; };
    bool bad = neg(n) || neg(r) || neg(h0_global) || neg(h0_global_dual) || neg(h1_S) || neg(h1_S_perp) || neg(l0) ||
               neg(fv_degree) || neg(dim_G) || neg(dim_B) || neg(r1) || neg(r2);
    for (auto x : h0_infinite) bad = bad || neg(x);
    for (auto& p : places) bad = bad || neg(p.l_dim) || neg(p.h0);
    if (bad) throw ValidationError("numerology inputs must be non-negative");
  }
};

struct PresentationBound {
  long g = 0;
  bool consistent = false;  // g >= 0
};

// g = h1_S_perp + h0 - h0* - sum_{v|inf} h0_v + sum_{v in S} (dim L_v - h0_v)
inline PresentationBound presentation_bound_g(const NumerologyInput& in) {
  in.validate();
  long g = in.h1_S_perp + in.h0_global - in.h0_global_dual;
  for (auto x : in.h0_infinite) g -= x;
  for (auto& p : in.places) g += p.l_dim - p.h0;
  return {g, g >= 0};
}

struct TwFormula {
  long g = 0;
  long dim_gap = 0;  // dim S_inf - dim R_inf = h1_S_perp - h1_S
};

inline TwFormula tw_g_formula(long n, long r, long h1_S, long h1_S_perp) {
  if (n < 0 || r < 0 || h1_S < 0 || h1_S_perp < 0) throw ValidationError("numerology inputs must be non-negative");
  if (r < h1_S_perp) throw ValidationError("need r >= dim H^1 of the dual Selmer group (r = " + std::to_string(r) + ")");
  return {n * r + h1_S - h1_S_perp, h1_S_perp - h1_S};
}

// sum_{v|inf} h0_v = l0 + [F:Q](dim G - dim B) + h0_global
inline bool oddness_check(const std::vector<long>& h0_infinite, long l0, long f_degree, long dim_G, long dim_B, long h0_global) {
  long s = 0;
  for (auto x : h0_infinite) s += x;
  return s == l0 + f_degree * (dim_G - dim_B) + h0_global;
}

inline long minimal_h0_at_real(long N) { return (N * N + 1) / 2; }

// dim of the centralizer of diag(1^a, (-1)^b) in gl_{a+b}(F_p), as H^0 of Z/2
// acting by the adjoint action.
inline std::size_t involution_h0(std::size_t a, std::size_t b, std::int64_t p = 3) {
  auto k = CoefficientRing::prime_field(p);
  auto z2 = share(FiniteGroup::cyclic(2));
  const std::size_t N = a + b;
  Matrix c = Matrix::identity(k, N);
  for (std::size_t i = a; i < N; ++i) c.set(i, i, -1);
  auto rho = Representation(z2, k, {Matrix::identity(k, N), c});
  return GroupModule::adjoint(rho).fixed_points().size();
}

inline long p_valuation(long x, long p) {
  if (x == 0) throw ValidationError("valuation of 0");
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

struct TwPrimeCheck {
  long level = 0;            // largest m with q = 1 mod p^m
  bool level_ok = false;     // level >= requested m
  bool strongly_regular = false;
  bool ok = false;
  long delta_order = 0;
};

// |Delta_v| = p^{n v_p(q - 1)}
inline long delta_v_order(long q, long p, long n) {
  if (q % p == 0) throw ValidationError("q_v must be prime to p");
  long e = n * p_valuation(q - 1, p), out = 1;
  for (long i = 0; i < e; ++i) out *= p;
  return out;
}

// Strong regularity for GL_n: the Frobenius eigenvalues (labels in some
// extension) are pairwise distinct.
inline TwPrimeCheck tw_prime_check(long q, long p, long m, const std::vector<std::string>& eigenvalues) {
  if (q % p == 0) throw ValidationError("q_v must be prime to p");
  TwPrimeCheck c;
  c.level = q == 1 ? 0 : p_valuation(q - 1, p);
  c.level_ok = c.level >= m;
  c.strongly_regular = std::set<std::string>(eigenvalues.begin(), eigenvalues.end()).size() == eigenvalues.size();
  c.ok = c.level_ok && c.strongly_regular;
  c.delta_order = delta_v_order(q, p, static_cast<long>(eigenvalues.size()));
  return c;
}

namespace detail {

using Poly = std::vector<Scalar>;  // coefficients, low degree first

inline Poly poly_mul(const CoefficientRing& r, const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = r.add(out[i + j], r.mul(a[i], b[j]));
  return out;
}

// (1 + X)^N - 1
inline Poly j_generator(const CoefficientRing& r, std::size_t N) {
  Poly f{1}, base{1, 1};
  for (std::size_t i = 0; i < N; ++i) f = poly_mul(r, f, base);
  f[0] = r.sub(f[0], 1);
  return f;
}

// Remainder modulo a monic polynomial.
inline Poly poly_mod(const CoefficientRing& r, Poly a, const Poly& f) {
  const std::size_t d = f.size() - 1;
  if (f.back() != 1) throw ValidationError("division by a non-monic polynomial");
  for (std::size_t i = a.size(); i-- > d;) {
    Scalar c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) a[i - d + j] = r.sub(a[i - d + j], r.mul(c, f[j]));
  }
  a.resize(d, 0);
  return a;
}

}  // namespace detail

struct SmRingCheck {
  std::size_t rank = 0;
  bool relation_vanishes = false;  // (1 + (g - 1))^{p^m} - 1 = 0 in the group algebra
  bool bijective = false;
  bool multiplicative = false;
  bool ok = false;
};

// (Z/p^e)[X]/((1+X)^{p^m} - 1) -> (Z/p^e)[Z/p^m], X -> g - 1.
inline SmRingCheck sm_ring_check(std::int64_t p, int m, int e) {
  if (m < 0 || e < 1) throw ValidationError("need m >= 0 and e >= 1");
  auto r = e == 1 ? CoefficientRing::prime_field(p) : CoefficientRing::cyclic(p, e);
  std::size_t N = 1;
  for (int i = 0; i < m; ++i) N *= static_cast<std::size_t>(p);
  SmRingCheck c;
  auto f = detail::j_generator(r, N);
  c.rank = f.size() - 1;
  // group algebra elements are length-N vectors on g^0..g^{N-1}
  auto gmul = [&](const Vector& a, const Vector& b) {
    Vector out(N, 0);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out[(i + j) % N] = r.add(out[(i + j) % N], r.mul(a[i], b[j]));
    return out;
  };
  Vector gm1(N, 0);
  gm1[0] = r.sub(gm1[0], 1);
  gm1[1 % N] = r.add(gm1[1 % N], 1);
  // images of X^0..X^{2N-2}
  std::vector<Vector> pw{unit_vector(N, 0)};
  for (std::size_t i = 1; i < 2 * N - 1 || i <= N; ++i) pw.push_back(gmul(pw.back(), gm1));
  auto image = [&](const detail::Poly& a) {
    Vector out(N, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) axpy(r, out, a[i], pw[i]);
    return out;
  };
  c.relation_vanishes = is_zero(image(f));
  Matrix psi(r, N, N);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < N; ++i) psi.set(i, j, pw[j][i]);
  try {
    Matrix inv = inverse(psi);
    c.bijective = inv * psi == Matrix::identity(r, N);
  } catch (const std::exception&) {
    c.bijective = false;
  }
  c.multiplicative = true;
  for (std::size_t i = 0; i < N && c.multiplicative; ++i)
    for (std::size_t j = 0; j < N && c.multiplicative; ++j) {
      detail::Poly xij(i + j + 1, 0);
      xij[i + j] = 1;
      c.multiplicative = image(detail::poly_mod(r, xij, f)) == gmul(pw[i], pw[j]);
    }
  c.ok = c.rank == N && c.relation_vanishes && c.bijective && c.multiplicative;
  return c;
}

// J_{m2} is contained in J_{m1} for m1 <= m2: (1+X)^{p^m1} - 1 divides (1+X)^{p^m2} - 1.
inline bool j_containment(std::int64_t p, int m1, int m2, int e) {
  if (m1 > m2) throw ValidationError("need m1 <= m2");
  auto r = e == 1 ? CoefficientRing::prime_field(p) : CoefficientRing::cyclic(p, e);
  std::size_t N1 = 1, N2 = 1;
  for (int i = 0; i < m1; ++i) N1 *= static_cast<std::size_t>(p);
  for (int i = 0; i < m2; ++i) N2 *= static_cast<std::size_t>(p);
  auto rem = detail::poly_mod(r, detail::j_generator(r, N2), detail::j_generator(r, N1));
  return is_zero(rem);
}

struct SymmetricInvariants {
  long q0 = 0, l0 = 0, d = 0;
  bool check = true;  // GL: 2 q0 + l0 = (N^2+N)/2 r1 + N^2 r2 - 1
};

inline SymmetricInvariants gl_invariants(long N, long r1, long r2) {
  if (N < 1 || r1 < 0 || r2 < 0 || r1 + r2 == 0) throw ValidationError("GL descriptor needs N >= 1 and r1 + r2 >= 1");
  SymmetricInvariants s;
  s.q0 = (N * N / 4) * r1 + (N * N - N) / 2 * r2;
  s.l0 = (N - N / 2) * r1 + N * r2 - 1;
  s.d = 2 * s.q0 + s.l0;
  s.check = s.d == (N * N + N) / 2 * r1 + N * N * r2 - 1;
  return s;
}

inline SymmetricInvariants gso_invariants(long a, long b) {
  if (a < 0 || b < 0) throw ValidationError("GSO signature must be non-negative");
  if (a + b <= 2) throw ValidationError("GSO(a,b) is abelian when a + b <= 2");
  SymmetricInvariants s;
  s.q0 = a * b / 2;
  s.l0 = (a + b) / 2 - a / 2 - b / 2;
  s.d = 2 * s.q0 + s.l0;
  return s;
}

// dim L_v - dim H^0(Gamma_v, g) for the standard local conditions.
inline long local_condition_dim(const std::string& kind, long fv_degree, long dim_G, long dim_B) {
  if (fv_degree < 0 || dim_G < 0 || dim_B < 0) throw ValidationError("parameters must be non-negative");
  if (kind == "minimal") return 0;
  if (kind == "ordinary" || kind == "fontaine_laffaille") return fv_degree * (dim_G - dim_B);
  throw ValidationError("unknown local condition \"" + kind + "\"");
}

}  // namespace homotor::galois
