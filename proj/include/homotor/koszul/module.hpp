#pragma once

// Graded modules over a GradedPolyQuotient, expanded degree by degree:
// a k-space M_d for each 0 <= d <= bound and one matrix per variable
// M_d -> M_{d + deg x}.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homotor/koszul/poly.hpp"

namespace homotor::koszul {

class GradedModule {
 public:
  // action[v][d] : M_d -> M_{d + deg x_v}, present for d + deg x_v <= bound.
  GradedModule(PolyRingPtr base, std::vector<std::size_t> dims, std::vector<std::vector<Matrix>> action)
      : base_(std::move(base)), dims_(std::move(dims)), action_(std::move(action)) {
    validate();
  }

  // Free module with generators in the given degrees. Degree d has basis
  // (generator g, standard monomial of degree d - a_g), generator-major.
  static GradedModule free(PolyRingPtr base, std::vector<int> gen_degrees) {
    const auto& S = *base;
    const int W = S.max_degree();
    for (int a : gen_degrees)
      if (a < 0) throw ValidationError("generator degrees must be non-negative");
    std::vector<std::size_t> dims;
    for (int d = 0; d <= W; ++d) {
      std::size_t n = 0;
      for (int a : gen_degrees) n += S.dim(d - a);
      dims.push_back(n);
    }
    std::vector<std::vector<Matrix>> act(S.nvars());
    for (std::size_t v = 0; v < S.nvars(); ++v) {
      const int e = S.degree_of(v);
      GradedElement x = S.variable(v);
      for (int d = 0; d + e <= W; ++d) {
        Matrix m(S.field(), dims[static_cast<std::size_t>(d + e)], dims[static_cast<std::size_t>(d)]);
        std::size_t ro = 0, co = 0;
        for (int a : gen_degrees) {
          if (d - a >= 0) m.put_block(ro, co, element_matrix(S, x, d - a));
          ro += S.dim(d + e - a);
          co += S.dim(d - a);
        }
        act[v].push_back(std::move(m));
      }
    }
    GradedModule out(std::move(base), std::move(dims), std::move(act));
    out.gen_degrees_ = std::move(gen_degrees);
    return out;
  }

  // The ring itself as a module over itself.
  static GradedModule regular(PolyRingPtr base) { return free(std::move(base), {0}); }

  // Multiplication by a ring element of degree e as a matrix R_d -> R_{d+e}.
  static Matrix element_matrix(const GradedPolyQuotient& S, const GradedElement& r, int d) {
    Matrix m(S.field(), S.dim(d + r.degree), S.dim(d));
    for (std::size_t i = 0; i < r.coords.size(); ++i)
      if (r.coords[i] != 0) m = m + S.multiplication_matrix(r.degree, i, d).scaled(r.coords[i]);
    return m;
  }

  PolyRingPtr base_ptr() const { return base_; }
  const GradedPolyQuotient& base() const { return *base_; }
  const CoefficientRing& field() const { return base_->field(); }
  int max_degree() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int d) const { return d < 0 || d > max_degree() ? 0 : dims_[static_cast<std::size_t>(d)]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const {
    std::size_t n = 0;
    for (auto d : dims_) n += d;
    return n;
  }
  bool is_zero() const { return total_dim() == 0; }
  // Generator degrees when built by free(), else empty.
  const std::vector<int>& generator_degrees() const { return gen_degrees_; }

  const Matrix& action(std::size_t v, int d) const {
    if (d < 0 || d + base_->degree_of(v) > max_degree()) throw TruncationError("variable action beyond the expansion bound");
    return action_[v][static_cast<std::size_t>(d)];
  }

  // Matrix of a standard monomial M_d -> M_{d + deg m}.
  Matrix monomial_matrix(const Monomial& m, int d) const {
    Matrix out = Matrix::identity(field(), dim(d));
    int cur = d;
    for (std::size_t v = 0; v < m.size(); ++v)
      for (int t = 0; t < m[v]; ++t) {
        out = action(v, cur) * out;
        cur += base_->degree_of(v);
      }
    return out;
  }

  // Matrix of a ring element M_d -> M_{d + deg r}.
  Matrix element_action(const GradedElement& r, int d) const {
    Matrix out = Matrix::zero(field(), dim(d + r.degree), dim(d));
    if (d + r.degree > max_degree()) throw TruncationError("element action beyond the expansion bound");
    for (std::size_t i = 0; i < r.coords.size(); ++i)
      if (r.coords[i] != 0) out = out + monomial_matrix(base_->basis(r.degree)[i], d).scaled(r.coords[i]);
    return out;
  }

  Vector act(const GradedElement& r, int d, const Vector& x) const { return element_action(r, d).apply(x); }

  // Sum of x_v M_{d - deg x_v}: the degree-d part of m*M.
  Subspace maximal_ideal_image(int d) const {
    Subspace s(field(), dim(d));
    for (std::size_t v = 0; v < base_->nvars(); ++v) {
      int e = d - base_->degree_of(v);
      if (e < 0) continue;
      const Matrix& a = action(v, e);
      for (std::size_t c = 0; c < a.cols(); ++c) s.add(a.col(c));
    }
    return s;
  }

  std::string describe() const {
    std::string out = "graded module over " + base_->str() + ", dims";
    for (auto d : dims_) out += " " + std::to_string(d);
    return out;
  }

 private:
  void validate() const {
    const auto& S = *base_;
    if (dims_.empty()) throw ValidationError("graded module needs degree 0");
    if (max_degree() > S.max_degree()) throw ValidationError("module bound exceeds the ring's expansion bound");
    if (action_.size() != S.nvars()) throw ValidationError("graded module needs one action per variable");
    for (std::size_t v = 0; v < S.nvars(); ++v) {
      const int e = S.degree_of(v);
      const auto expected = static_cast<std::size_t>(std::max(0, max_degree() - e + 1));
      if (action_[v].size() != expected) throw ValidationError("action of " + S.names()[v] + " has the wrong number of degrees");
      for (int d = 0; d + e <= max_degree(); ++d) {
        const Matrix& m = action_[v][static_cast<std::size_t>(d)];
        require_same_ring(S.field(), m.ring(), "graded module action");
        if (m.rows() != dim(d + e) || m.cols() != dim(d))
          throw ValidationError("action of " + S.names()[v] + " in degree " + std::to_string(d) + " has the wrong shape");
      }
    }
    // variables commute
    for (std::size_t u = 0; u < S.nvars(); ++u)
      for (std::size_t v = u + 1; v < S.nvars(); ++v) {
        const int eu = S.degree_of(u), ev = S.degree_of(v);
        for (int d = 0; d + eu + ev <= max_degree(); ++d)
          if (action(u, d + ev) * action(v, d) != action(v, d + eu) * action(u, d))
            throw ValidationError("actions of " + S.names()[u] + " and " + S.names()[v] + " do not commute in degree " +
                                  std::to_string(d));
      }
    // relations act as zero
    for (auto& r : S.relations()) {
      int e = r.degree(S.degrees());
      if (e < 0) continue;
      for (int d = 0; d + e <= max_degree(); ++d) {
        Matrix m = Matrix::zero(S.field(), dim(d + e), dim(d));
        for (auto& [mono, c] : r.terms()) m = m + monomial_matrix(mono, d).scaled(c);
        if (!m.is_zero()) throw ValidationError("relation " + r.str(S.names()) + " does not act as zero in degree " + std::to_string(d));
      }
    }
  }

  PolyRingPtr base_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix>> action_;
  std::vector<int> gen_degrees_;
};

// A graded subquotient Z/B of an ambient module, with Z and B given by
// spanning vectors per degree. Basis: the vectors of a basis of Z that are
// independent modulo B, in order.
struct Subquotient {
  GradedModule module;
  std::vector<std::vector<Vector>> reps;  // per degree, in ambient coordinates
  std::vector<std::vector<Vector>> boundary;
  std::vector<CoordinateSolver> solvers;

  // Class of an ambient vector lying in Z_d.
  Vector coords(int d, const Vector& z) const {
    Vector all = solvers[static_cast<std::size_t>(d)].coords(z);
    return Vector(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(reps[static_cast<std::size_t>(d)].size()));
  }
};

inline Subquotient subquotient(const GradedModule& ambient, const std::vector<std::vector<Vector>>& z_span,
                               const std::vector<std::vector<Vector>>& b_span) {
  const auto& S = ambient.base();
  const int W = ambient.max_degree();
  const auto& k = ambient.field();
  if (z_span.size() != static_cast<std::size_t>(W) + 1 || b_span.size() != z_span.size())
    throw ValidationError("subquotient needs spanning sets for every degree");
  std::vector<std::vector<Vector>> reps(z_span.size()), bnd(z_span.size());
  std::vector<CoordinateSolver> solvers;
  std::vector<std::size_t> dims;
  for (int d = 0; d <= W; ++d) {
    const std::size_t n = ambient.dim(d);
    Subspace bsp(k, n);
    for (auto& b : b_span[static_cast<std::size_t>(d)])
      if (bsp.add(b)) bnd[static_cast<std::size_t>(d)].push_back(b);
    Subspace zsp(k, n);
    for (auto& b : bnd[static_cast<std::size_t>(d)]) zsp.add(b);
    for (auto& z : z_span[static_cast<std::size_t>(d)])
      if (zsp.add(z)) reps[static_cast<std::size_t>(d)].push_back(z);
    // B must lie in Z
    Subspace zonly(k, n);
    for (auto& z : z_span[static_cast<std::size_t>(d)]) zonly.add(z);
    for (auto& b : bnd[static_cast<std::size_t>(d)])
      if (!zonly.contains(b)) throw ValidationError("subquotient: B is not contained in Z in degree " + std::to_string(d));
    std::vector<Vector> all = reps[static_cast<std::size_t>(d)];
    all.insert(all.end(), bnd[static_cast<std::size_t>(d)].begin(), bnd[static_cast<std::size_t>(d)].end());
    solvers.emplace_back(k, n, all);
    dims.push_back(reps[static_cast<std::size_t>(d)].size());
  }
  std::vector<std::vector<Matrix>> act(S.nvars());
  for (std::size_t v = 0; v < S.nvars(); ++v) {
    const int e = S.degree_of(v);
    for (int d = 0; d + e <= W; ++d) {
      Matrix m(k, dims[static_cast<std::size_t>(d + e)], dims[static_cast<std::size_t>(d)]);
      for (std::size_t c = 0; c < dims[static_cast<std::size_t>(d)]; ++c) {
        Vector img = ambient.action(v, d).apply(reps[static_cast<std::size_t>(d)][c]);
        auto all = solvers[static_cast<std::size_t>(d + e)].try_coords(img);
        if (!all) throw ValidationError("subquotient: Z is not a submodule in degree " + std::to_string(d + e));
        for (std::size_t r = 0; r < dims[static_cast<std::size_t>(d + e)]; ++r) m.set(r, c, (*all)[r]);
      }
      act[v].push_back(std::move(m));
    }
  }
  GradedModule mod(ambient.base_ptr(), std::move(dims), std::move(act));
  return Subquotient{std::move(mod), std::move(reps), std::move(bnd), std::move(solvers)};
}

// Cokernel of a map from a free module: relations[j] lists one polynomial per
// generator, homogeneous of degree (relation degree - generator degree).
inline GradedModule presented(PolyRingPtr base, std::vector<int> gen_degrees, const std::vector<std::vector<Poly>>& relations) {
  GradedModule F = GradedModule::free(base, gen_degrees);
  const auto& S = *base;
  const int W = S.max_degree();
  std::vector<std::vector<Vector>> z(static_cast<std::size_t>(W) + 1), b(static_cast<std::size_t>(W) + 1);
  for (int d = 0; d <= W; ++d)
    for (std::size_t i = 0; i < F.dim(d); ++i) z[static_cast<std::size_t>(d)].push_back(unit_vector(F.dim(d), i));
  for (auto& rel : relations) {
    if (rel.size() != gen_degrees.size()) throw ValidationError("relation needs one entry per generator");
    int rdeg = -1;
    for (std::size_t g = 0; g < rel.size(); ++g) {
      int e = rel[g].degree(S.degrees());
      if (e < 0) continue;
      if (rdeg >= 0 && rdeg != e + gen_degrees[g]) throw ValidationError("relation is not homogeneous");
      rdeg = e + gen_degrees[g];
    }
    if (rdeg < 0 || rdeg > W) continue;
    Vector vec(F.dim(rdeg), 0);
    std::size_t off = 0;
    for (std::size_t g = 0; g < rel.size(); ++g) {
      int e = rdeg - gen_degrees[g];
      if (e >= 0 && !rel[g].is_zero()) {
        auto el = S.element(rel[g]);
        for (std::size_t i = 0; i < el.coords.size(); ++i) vec[off + i] = el.coords[i];
      }
      off += S.dim(e);
    }
    for (int d = rdeg; d <= W; ++d)
      for (std::size_t i = 0; i < S.dim(d - rdeg); ++i) {
        GradedElement s{d - rdeg, unit_vector(S.dim(d - rdeg), i)};
        b[static_cast<std::size_t>(d)].push_back(F.act(s, rdeg, vec));
      }
  }
  return subquotient(F, z, b).module;
}

// An R-module viewed over S through x_i -> phi[i]; phi[i] must have the degree of x_i.
inline GradedModule restrict_scalars(const GradedModule& m, PolyRingPtr S, const std::vector<GradedElement>& phi) {
  if (phi.size() != S->nvars()) throw ValidationError("structure map needs one image per variable");
  require_same_ring(S->field(), m.field(), "restriction of scalars");
  const int W = std::min(m.max_degree(), S->max_degree());
  std::vector<std::size_t> dims(m.dims().begin(), m.dims().begin() + W + 1);
  std::vector<std::vector<Matrix>> act(S->nvars());
  for (std::size_t v = 0; v < S->nvars(); ++v) {
    const int e = S->degree_of(v);
    if (phi[v].degree != e) throw ValidationError("structure map must preserve degrees (" + S->names()[v] + ")");
    for (int d = 0; d + e <= W; ++d) act[v].push_back(m.element_action(phi[v], d));
  }
  return GradedModule(std::move(S), std::move(dims), std::move(act));
}

// Structure map images given as polynomials in R's variables.
inline std::vector<GradedElement> structure_map(const GradedPolyQuotient& S, const GradedPolyQuotient& R,
                                                const std::vector<std::string>& images) {
  if (images.size() != S.nvars()) throw ValidationError("structure map needs one image per variable");
  std::vector<GradedElement> out;
  for (std::size_t v = 0; v < images.size(); ++v) {
    GradedElement e = R.element(images[v]);
    bool zero = is_zero(e.coords);
    if (zero) e = GradedElement{S.degree_of(v), Vector(R.dim(S.degree_of(v)), 0)};
    if (e.degree != S.degree_of(v)) throw ValidationError("image of " + S.names()[v] + " has the wrong degree");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace homotor::koszul
