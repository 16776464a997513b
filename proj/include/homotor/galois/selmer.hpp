#pragma once

// Selmer complexes as the shifted cone of global-to-local restriction with
// local conditions, the ten-term exact sequence, and tangent-complex tables.
//
// All group cochain complexes are truncated to C^0 -> C^1 -> Z^2, so that H^3
// vanishes as it does for the Galois groups being modelled.

#include <memory>
#include <string>
#include <vector>

#include "homotor/galois/cohomology.hpp"

namespace homotor::galois {

struct LocalPlace {
  std::string name;
  GroupHom phi;                          // Gamma_v -> Gamma
  std::vector<Vector> ltilde;            // spanning cocycles in C^1(Gamma_v, g)
  bool contains_coboundaries = true;     // L~_v contains B^1(Gamma_v, g)
  bool formally_smooth = true;
};

class SelmerDatum {
 public:
  SelmerDatum(Representation rho, std::vector<LocalPlace> places)
      : rho_(std::move(rho)), g_(GroupModule::adjoint(rho_)), places_(std::move(places)) {
    for (auto& v : places_) {
      if (v.phi.target()->table() != rho_.group()->table())
        throw ValidationError("place " + v.name + ": map does not land in the global group");
      GroupModule gv = g_.restrict(v.phi);
      const std::size_t c1 = cochain_dim(gv, 1);
      auto d1 = cochain_differential(gv, 1);
      for (auto& z : v.ltilde) {
        if (z.size() != c1) throw ValidationError("place " + v.name + ": local cochain has the wrong length");
        if (!is_zero(d1.apply(z))) throw ValidationError("place " + v.name + ": spanning vector is not a cocycle");
      }
      if (v.contains_coboundaries) {
        Subspace span(rho_.field(), c1);
        for (auto& z : v.ltilde) span.add(z);
        for (auto& b : coboundaries(gv))
          if (!span.contains(b)) throw ValidationError("place " + v.name + ": L~_v does not contain B^1");
      }
    }
  }

  const Representation& rho() const { return rho_; }
  const GroupModule& adjoint() const { return g_; }
  const std::vector<LocalPlace>& places() const { return places_; }

 private:
  Representation rho_;
  GroupModule g_;
  std::vector<LocalPlace> places_;
};

// Helpers for L~_v choices.
inline std::vector<Vector> full_condition(const GroupModule& gv) { return CocycleSpace::of(cochain_differential(gv, 1)).basis(); }
inline std::vector<Vector> unramified_like_condition(const GroupModule& gv) { return coboundaries(gv); }

struct SelmerComplex {
  TruncatedCochains global;
  std::vector<TruncatedCochains> local;
  std::vector<Subspace> ltilde;
  std::vector<std::vector<std::size_t>> quotient_basis;  // complement unit vectors of L~_v in C^1_v
  std::vector<CochainRestriction> res1, res2;
  // D: 0 -> (+) C^1_v / L~_v -> (+) Z^2_v
  ChainComplex local_side = ChainComplex::zero(CoefficientRing::prime_field(3));
  // C_S^i = C^i (+) D^{i-1}, d(c, y) = (dc, res c - dy)
  ChainComplex complex = ChainComplex::zero(CoefficientRing::prime_field(3));
  std::vector<std::size_t> dims;  // H^0_S..H^3_S

  // D^1 coordinates of the restriction of a global 1-cochain; D^2 coordinates
  // of the restriction of a global 2-cocycle (given in Z^2 coordinates).
  Vector restrict1(const Vector& c) const {
    Vector out;
    for (std::size_t v = 0; v < local.size(); ++v) {
      auto q = ltilde[v].quotient_coords(res1[v].apply(c));
      out.insert(out.end(), q.begin(), q.end());
    }
    return out;
  }
  Vector restrict2(const Vector& zc) const {
    Vector z = global.z2.lift(zc);
    Vector out;
    for (std::size_t v = 0; v < local.size(); ++v) {
      auto q = local[v].z2.coords(res2[v].apply(z));
      out.insert(out.end(), q.begin(), q.end());
    }
    return out;
  }
};

inline SelmerComplex selmer_complex(const SelmerDatum& datum, const CochainBudget& budget = {}) {
  const auto& k = datum.rho().field();
  const auto& g = datum.adjoint();
  SelmerComplex s{truncated_cochains(g, budget), {}, {}, {}, {}, {}};
  std::size_t q_total = 0, z2_total = 0;
  for (auto& v : datum.places()) {
    GroupModule gv = g.restrict(v.phi);
    s.local.push_back(truncated_cochains(gv, budget));
    Subspace L(k, cochain_dim(gv, 1));
    for (auto& z : v.ltilde) L.add(z);
    for (auto& b : coboundaries(gv))
      if (!L.contains(b))
        throw ValidationError("place " + v.name + ": L~_v does not contain B^1, so restriction does not descend to C^1_v/L~_v");
    s.quotient_basis.push_back(L.complement_indices());
    q_total += s.quotient_basis.back().size();
    z2_total += s.local.back().z2.dim();
    s.ltilde.push_back(std::move(L));
    s.res1.emplace_back(v.phi, g.dim(), 1);
    s.res2.emplace_back(v.phi, g.dim(), 2);
  }
  // d_D: C^1_v / L~_v -> Z^2_v
  Matrix dD(k, z2_total, q_total);
  {
    std::size_t row = 0, col = 0;
    for (std::size_t v = 0; v < s.local.size(); ++v) {
      auto d1 = cochain_differential(*s.local[v].module, 1);
      for (auto idx : s.quotient_basis[v]) {
        Vector c = s.local[v].z2.coords(d1.apply(unit_vector(d1.cols, idx)));
        for (std::size_t i = 0; i < c.size(); ++i) dD.set(row + i, col, c[i]);
        ++col;
      }
      row += s.local[v].z2.dim();
    }
  }
  s.local_side = ChainComplex::cochain(k, 0, {0, q_total, z2_total}, {Matrix(k, q_total, 0), dD});

  const auto& G = s.global;
  const std::size_t c0 = G.dim(0), c1 = G.dim(1), z2 = G.dim(2);
  Matrix ds1(k, z2 + q_total, c1);
  ds1.put_block(0, 0, G.d1);
  for (std::size_t j = 0; j < c1; ++j) {
    Vector r = s.restrict1(unit_vector(c1, j));
    for (std::size_t i = 0; i < r.size(); ++i) ds1.set(z2 + i, j, r[i]);
  }
  Matrix ds2(k, z2_total, z2 + q_total);
  for (std::size_t j = 0; j < z2; ++j) {
    Vector r = s.restrict2(unit_vector(z2, j));
    for (std::size_t i = 0; i < r.size(); ++i) ds2.set(i, j, r[i]);
  }
  ds2.put_block(0, z2, dD.scaled(-1));
  s.complex = ChainComplex::cochain(k, 0, {c0, c1, z2 + q_total, z2_total}, {G.d0, ds1, ds2});
  for (int i = 0; i <= 3; ++i) s.dims.push_back(cohomology(s.complex, i).dim());
  if (s.dims[0] != cohomology(G.complex, 0).dim()) throw InvariantFailure("H^0_S differs from H^0(Gamma, g)");
  return s;
}

inline std::vector<std::size_t> selmer_dims(const SelmerDatum& datum) { return selmer_complex(datum).dims; }

namespace detail {

// Matrix of the map induced on cohomology by a cochain-level matrix f.
inline Matrix induced(const HomologyBasis& src, const HomologyBasis& dst, const std::function<Vector(const Vector&)>& f,
                      const CoefficientRing& k) {
  Matrix m(k, dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    auto c = dst.coords(f(src.representatives()[j]));
    for (std::size_t i = 0; i < c.size(); ++i) m.set(i, j, c[i]);
  }
  return m;
}

}  // namespace detail

struct LesNode {
  std::string name;
  std::size_t dim = 0;
  bool exact = false;
};

struct LesReport {
  std::vector<LesNode> nodes;
  long alternating_sum = 0;
  bool exact = false;
  // independent cross-checks of the local side
  std::vector<std::size_t> h1_local, l_local, h2_local;
  bool local_side_matches = false;
  std::vector<std::size_t> selmer_dims;
};

// 0 -> H^0_S -> H^0 -> 0 -> H^1_S -> H^1 -> (+)H^1_v/L_v -> H^2_S -> H^2 -> (+)H^2_v -> H^3_S -> 0
inline LesReport selmer_les_check(const SelmerDatum& datum, const CochainBudget& budget = {}) {
  const auto& k = datum.rho().field();
  auto s = selmer_complex(datum, budget);
  const auto& G = s.global;
  std::vector<HomologyBasis> HS, HG, HD;
  for (int i = 0; i <= 3; ++i) HS.emplace_back(s.complex, -i);
  for (int i = 0; i <= 2; ++i) HG.emplace_back(G.complex, -i);
  for (int i = 0; i <= 2; ++i) HD.emplace_back(s.local_side, -i);
  const std::size_t z2 = G.dim(2);

  auto first = [](std::size_t n) { return [n](const Vector& x) { return Vector(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)); }; };
  auto p0 = detail::induced(HS[0], HG[0], first(G.dim(0)), k);
  auto p1 = detail::induced(HS[1], HG[1], first(G.dim(1)), k);
  auto p2 = detail::induced(HS[2], HG[2], first(z2), k);
  auto r1 = detail::induced(HG[1], HD[1], [&](const Vector& c) { return s.restrict1(c); }, k);
  auto r2 = detail::induced(HG[2], HD[2], [&](const Vector& z) { return s.restrict2(z); }, k);
  auto d1 = detail::induced(HD[1], HS[2], [&](const Vector& y) {
        Vector out(z2, 0);
        out.insert(out.end(), y.begin(), y.end());
        return out;
      }, k);
  auto d2 = detail::induced(HD[2], HS[3], [](const Vector& y) { return y; }, k);

  struct Node {
    std::string name;
    std::size_t dim;
    Matrix in, out;
  };
  auto zero = [&](std::size_t r, std::size_t c) { return Matrix(k, r, c); };
  std::vector<Node> nodes{
      {"H0_S", HS[0].dim(), zero(HS[0].dim(), 0), p0},
      {"H0", HG[0].dim(), p0, zero(0, HG[0].dim())},
      {"0", 0, zero(0, HG[0].dim()), zero(HS[1].dim(), 0)},
      {"H1_S", HS[1].dim(), zero(HS[1].dim(), 0), p1},
      {"H1", HG[1].dim(), p1, r1},
      {"(+)H1_v/L_v", HD[1].dim(), r1, d1},
      {"H2_S", HS[2].dim(), d1, p2},
      {"H2", HG[2].dim(), p2, r2},
      {"(+)H2_v", HD[2].dim(), r2, d2},
      {"H3_S", HS[3].dim(), d2, zero(0, HS[3].dim())},
  };
  LesReport rep;
  rep.exact = true;
  long sign = 1;
  for (auto& n : nodes) {
    bool composite_zero = n.out.rows() == 0 || n.in.cols() == 0 || (n.out * n.in).is_zero();
    bool ok = composite_zero && rank(n.in) + rank(n.out) == n.dim;
    rep.nodes.push_back(LesNode{n.name, n.dim, ok});
    rep.exact = rep.exact && ok;
    rep.alternating_sum += sign * static_cast<long>(n.dim);
    sign = -sign;
  }
  // the local side against the local complexes themselves
  std::size_t h1_quot = 0, h2_sum = 0;
  for (std::size_t v = 0; v < s.local.size(); ++v) {
    const auto& L = s.local[v];
    std::size_t h1 = cohomology(L.complex, 1).dim(), h2 = cohomology(L.complex, 2).dim();
    std::size_t b1 = rank(L.d0);
    rep.h1_local.push_back(h1);
    rep.h2_local.push_back(h2);
    std::size_t ldim = s.ltilde[v].dim();
    rep.l_local.push_back(datum.places()[v].contains_coboundaries ? ldim - b1 : ldim);
    // H^1(D) summand is Z^1_v / L~_v
    h1_quot += L.z1.dim() - ldim;
    h2_sum += h2;
  }
  rep.local_side_matches = h1_quot == HD[1].dim() && h2_sum == HD[2].dim();
  rep.selmer_dims = s.dims;
  return rep;
}

struct LocalTangent {
  std::string name;
  long t_minus1 = 0;  // dim H^0(Gamma_v, g)/z
  long t0 = 0;        // dim L_v
  bool map_check = false;  // kernel and cokernel of g/z -> L~_v match
};

struct TangentTable {
  std::vector<std::size_t> t;  // t^0, t^1, t^2 = dim H^1_S, H^2_S, H^3_S
  std::vector<std::size_t> from_sequence;  // t^0..t^2 from the tangent exact sequence
  std::size_t framed_t0 = 0;   // dim Z^1(Gamma, g)
  std::vector<LocalTangent> local;
  long sequence_alternating_sum = 0;
  bool matches = false;
};

// t^i = dim H^{i+1}_S. The same numbers are recomputed from
// 0 -> t^0 -> H^1 (+) (+)L_v -> (+)H^1_v -> t^1 -> H^2 -> (+)H^2_v -> t^2 -> 0
// using only the global and local complexes.
inline TangentTable tangent_complex_table(const SelmerDatum& datum, const CochainBudget& budget = {}) {
  for (auto& v : datum.places()) {
    if (!v.formally_smooth) throw ValidationError("place " + v.name + " is not formally smooth; the tangent identification needs R_v smooth");
    if (!v.contains_coboundaries) throw ValidationError("place " + v.name + ": L~_v must contain B^1 so that L_v is defined");
  }
  const auto& k = datum.rho().field();
  auto s = selmer_complex(datum, budget);
  TangentTable tab;
  tab.t = {s.dims[1], s.dims[2], s.dims[3]};
  tab.framed_t0 = s.global.z1.dim();

  const auto& G = s.global;
  HomologyBasis H0(G.complex, 0), H1(G.complex, -1), H2(G.complex, -2);
  std::size_t h1v_total = 0, h2v_total = 0, l_total = 0;
  std::vector<HomologyBasis> H1v, H2v;
  std::vector<std::vector<Vector>> Lclasses;
  long h0v_sum = 0;
  for (std::size_t v = 0; v < s.local.size(); ++v) {
    const auto& L = s.local[v];
    H1v.emplace_back(L.complex, -1);
    H2v.emplace_back(L.complex, -2);
    h1v_total += H1v.back().dim();
    h2v_total += H2v.back().dim();
    // L_v as classes in H^1_v
    Subspace span(k, H1v.back().dim());
    std::vector<Vector> cls;
    for (auto& z : s.ltilde[v].echelon_rows()) {
      auto c = H1v.back().coords(z);
      if (span.add(c)) cls.push_back(c);
    }
    l_total += cls.size();
    Lclasses.push_back(std::move(cls));

    LocalTangent lt;
    lt.name = datum.places()[v].name;
    const std::size_t n2 = datum.adjoint().dim();
    const std::size_t h0v = n2 - rank(L.d0);
    h0v_sum += static_cast<long>(h0v);
    lt.t_minus1 = static_cast<long>(h0v) - 1;
    lt.t0 = static_cast<long>(s.ltilde[v].dim()) - static_cast<long>(rank(L.d0));
    // g/z -> L~_v, X -> dX: kernel H^0_v/z, cokernel L_v
    Vector scalar(n2, 0);
    const std::size_t n = datum.rho().n();
    for (std::size_t i = 0; i < n; ++i) scalar[i * n + i] = 1;
    bool scalars_die = is_zero(L.d0.apply(scalar));
    const long r = static_cast<long>(rank(L.d0));
    lt.map_check = scalars_die && (static_cast<long>(n2) - 1 - r) == lt.t_minus1 &&
                   static_cast<long>(s.ltilde[v].dim()) - r == lt.t0;
    tab.local.push_back(lt);
  }
  // alpha: H^1 (+) (+)L_v -> (+)H^1_v, (c, l) -> res c - l
  const std::size_t a_cols = H1.dim() + l_total;
  Matrix alpha(k, h1v_total, a_cols);
  {
    std::size_t row = 0, lcol = H1.dim();
    for (std::size_t v = 0; v < s.local.size(); ++v) {
      for (std::size_t j = 0; j < H1.dim(); ++j) {
        auto c = H1v[v].coords(s.res1[v].apply(H1.representatives()[j]));
        for (std::size_t i = 0; i < c.size(); ++i) alpha.set(row + i, j, c[i]);
      }
      for (auto& l : Lclasses[v]) {
        for (std::size_t i = 0; i < l.size(); ++i) alpha.set(row + i, lcol, k.neg(l[i]));
        ++lcol;
      }
      row += H1v[v].dim();
    }
  }
  // beta: H^2 -> (+)H^2_v
  Matrix beta(k, h2v_total, H2.dim());
  {
    std::size_t row = 0;
    for (std::size_t v = 0; v < s.local.size(); ++v) {
      for (std::size_t j = 0; j < H2.dim(); ++j) {
        Vector z = G.z2.lift(H2.representatives()[j]);
        auto c = H2v[v].coords(s.local[v].z2.coords(s.res2[v].apply(z)));
        for (std::size_t i = 0; i < c.size(); ++i) beta.set(row + i, j, c[i]);
      }
      row += H2v[v].dim();
    }
  }
  const std::size_t ra = rank(alpha), rb = rank(beta);
  tab.from_sequence = {a_cols - ra, (h1v_total - ra) + (H2.dim() - rb), h2v_total - rb};
  // alternating sum over the full tangent sequence, t^{-1} = dim H^0/z
  const long nplaces = static_cast<long>(s.local.size());
  const long tm1 = static_cast<long>(H0.dim()) - 1;
  const long A0 = (static_cast<long>(H0.dim()) - 1) + (h0v_sum - nplaces), B0 = h0v_sum - nplaces;
  tab.sequence_alternating_sum = tm1 - A0 + B0 - static_cast<long>(tab.t[0]) + static_cast<long>(a_cols) -
                                 static_cast<long>(h1v_total) + static_cast<long>(tab.t[1]) - static_cast<long>(H2.dim()) +
                                 static_cast<long>(h2v_total) - static_cast<long>(tab.t[2]);
  tab.matches = tab.t == tab.from_sequence && tab.sequence_alternating_sum == 0;
  for (auto& l : tab.local) tab.matches = tab.matches && l.map_check;
  return tab;
}

}  // namespace homotor::galois
