#pragma once

// Tor^A(B, k) for a graded artinian A = k[x..]/J and an A-algebra B, computed
// four ways: homotopy of the bar simplicial ring, a minimal free resolution
// over A as a FinLocalAlgebra, a graded minimal resolution, and (in weights
// below the lowest relation degree of A) Koszul homology over the polynomial
// ring on A's variables.

#include <memory>
#include <string>
#include <vector>

#include "homotor/koszul/cg.hpp"
#include "homotor/simplicial/ring.hpp"

namespace homotor::koszul {

struct TorOracleReport {
  std::string a, b;
  int top = 0;      // Tor degrees 0..top compared for the resolutions
  int bar_top = 0;  // degrees computed through the bar construction
  std::vector<std::size_t> bar;         // pi_n of B (x)^L_A k
  std::vector<std::size_t> resolution;  // ungraded minimal resolution
  std::vector<std::size_t> graded;      // graded minimal resolution, weights summed
  std::vector<std::vector<std::size_t>> graded_bigraded;  // [j][w]
  bool koszul_applicable = false;
  int koszul_below = 0;  // weights < this are compared
  std::vector<std::vector<std::size_t>> koszul_bigraded;  // [j][w] over the polynomial ring
  std::vector<std::size_t> koszul_totals;                 // over the polynomial ring, all weights
  bool graded_stabilized = true;
  GradedAlgebra::LawReport bar_laws;
  bool agree = false;
  std::string detail;
};

namespace detail {

// Algebra map A -> B of FinLocalAlgebras induced by x_i -> phi[i].
inline Matrix local_algebra_map(const GradedPolyQuotient& A, const GradedPolyQuotient& B, const std::vector<GradedElement>& phi,
                                int a_top, int b_top) {
  std::size_t na = 0, nb = 0;
  std::vector<std::size_t> boff;
  for (int d = 0; d <= a_top; ++d) na += A.dim(d);
  for (int d = 0; d <= b_top; ++d) {
    boff.push_back(nb);
    nb += B.dim(d);
  }
  Matrix f(A.field(), nb, na);
  std::size_t col = 0;
  for (int d = 0; d <= a_top; ++d)
    for (auto& m : A.basis(d)) {
      GradedElement img = B.one();
      for (std::size_t v = 0; v < m.size(); ++v)
        for (int t = 0; t < m[v]; ++t) {
          if (img.degree + phi[v].degree > B.max_degree()) {
            img = GradedElement{B.max_degree(), Vector(B.dim(B.max_degree()), 0)};
            continue;
          }
          img = B.multiply(img, phi[v]);
        }
      if (img.degree <= b_top)
        for (std::size_t r = 0; r < img.coords.size(); ++r) f.set(boff[static_cast<std::size_t>(img.degree)] + r, col, img.coords[r]);
      ++col;
    }
  return f;
}

}  // namespace detail

// phi: images of A's variables as polynomials in B's variables.
inline TorOracleReport tor_oracles(const CoefficientRing& k, const std::string& a_text, const std::string& b_text,
                                   const std::vector<std::string>& phi_text, int top, int bar_top, int window) {
  TorOracleReport r;
  r.a = a_text;
  r.b = b_text;
  r.top = top;
  r.bar_top = bar_top;
  auto A = std::make_shared<const GradedPolyQuotient>(GradedPolyQuotient::parse(k, a_text, window));
  auto B = std::make_shared<const GradedPolyQuotient>(GradedPolyQuotient::parse(k, b_text, window));
  auto phi = structure_map(*A, *B, phi_text);
  auto [a_loc, a_w] = A->to_local_algebra();
  auto [b_loc, b_w] = B->to_local_algebra();
  auto a_ptr = std::make_shared<const FinLocalAlgebra>(a_loc);
  Matrix f = detail::local_algebra_map(*A, *B, phi, *A->socle_degree(), *B->socle_degree());

  // (a) bar construction
  auto bar = simplicial::bar_simplicial_ring(b_loc, a_loc, f, bar_top + 1);
  auto ring = simplicial::homotopy_ring(bar, bar_top);
  r.bar = ring.dims();
  r.bar_laws = ring.check_laws();

  // (b) minimal free resolution over A
  auto M = LocalModule::restriction(a_ptr, b_loc, f);
  r.resolution = tor_dims_via_resolution(M, top);

  // (b') graded minimal resolution
  auto Mg = restrict_scalars(GradedModule::regular(B), A, phi);
  auto gres = graded_minimal_resolution(Mg, top);
  r.graded_stabilized = gres.stabilized;
  r.graded = gres.ranks(top);
  for (int j = 0; j <= top; ++j) {
    std::vector<std::size_t> row(static_cast<std::size_t>(window) + 1, 0);
    for (auto [d, n] : gres.betti(j)) row[static_cast<std::size_t>(d)] = n;
    r.graded_bigraded.push_back(std::move(row));
  }

  // (c) Koszul homology over the polynomial ring on A's variables
  int lowest = -1;
  for (auto& rel : A->relations()) {
    int d = rel.degree(A->degrees());
    if (d > 0 && (lowest < 0 || d < lowest)) lowest = d;
  }
  r.koszul_applicable = lowest >= 2;
  std::string why;
  bool ok = true;
  auto cmp = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y, int upto, const char* what) {
    for (int j = 0; j <= upto; ++j)
      if (x[static_cast<std::size_t>(j)] != y[static_cast<std::size_t>(j)]) {
        ok = false;
        if (why.empty()) why = std::string(what) + " differ in degree " + std::to_string(j);
      }
  };
  if (r.koszul_applicable) {
    r.koszul_below = lowest;
    auto S = std::make_shared<const GradedPolyQuotient>(k, A->names(), A->degrees(), std::vector<Poly>{}, window);
    auto Ms = restrict_scalars(GradedModule::regular(B), S, phi);
    auto kh = koszul_homology_on_variables(Ms);
    r.koszul_bigraded = kh.bigraded(static_cast<int>(S->nvars()));
    r.koszul_totals = kh.totals(static_cast<int>(S->nvars()));
    for (int j = 0; j <= top; ++j)
      for (int w = 0; w < lowest && w <= window; ++w) {
        std::size_t kz = j <= static_cast<int>(S->nvars()) ? kh.dim(j, w) : 0;
        if (kz != r.graded_bigraded[static_cast<std::size_t>(j)][static_cast<std::size_t>(w)]) {
          ok = false;
          if (why.empty()) why = "Koszul and graded resolution differ at (" + std::to_string(j) + "," + std::to_string(w) + ")";
        }
      }
  }
  cmp(r.bar, r.resolution, std::min(bar_top, top), "bar and resolution");
  cmp(r.resolution, r.graded, top, "resolution and graded resolution");
  if (!r.graded_stabilized) {
    ok = false;
    if (why.empty()) why = "graded resolution has generators in the top degree of the window";
  }
  if (!r.bar_laws.ok()) {
    ok = false;
    if (why.empty()) why = "bar homotopy ring fails " + r.bar_laws.first_failure;
  }
  r.agree = ok;
  r.detail = ok ? "all oracles agree" : why;
  return r;
}

}  // namespace homotor::koszul
