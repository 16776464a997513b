#pragma once

// Finite-dimensional commutative local k-algebras given by structure
// constants, and linear algebra over them.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homotor/rings.hpp"

namespace homotor {

using SparseVector = std::vector<std::pair<std::uint32_t, Scalar>>;

inline SparseVector to_sparse(const Vector& v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

inline Vector to_dense(const SparseVector& s, std::size_t n) {
  Vector v(n, 0);
  for (auto [i, c] : s) v[i] = c;
  return v;
}

// Basis element 0 is the unit; the remaining basis elements span the
// maximal ideal.
class FinLocalAlgebra {
 public:
  // products[i][j] = e_i * e_j. Validates unit, commutativity, associativity,
  // ideal closure and nilpotence.
  FinLocalAlgebra(CoefficientRing field, std::vector<std::vector<SparseVector>> products, std::vector<std::size_t> ideal,
                  std::vector<std::string> labels = {})
      : field_(field), table_(std::move(products)), ideal_(std::move(ideal)), labels_(std::move(labels)) {
    validate();
  }

  // k itself.
  static FinLocalAlgebra residue_field(CoefficientRing field) {
    return FinLocalAlgebra(field, {{SparseVector{{0, 1}}}}, {}, {"1"});
  }

  // k[x]/(x^n), basis 1, x, ..., x^{n-1}.
  static FinLocalAlgebra truncated_polynomial(CoefficientRing field, std::size_t n) {
    if (n == 0) throw ValidationError("k[x]/(x^0) is the zero ring");
    std::vector<std::vector<SparseVector>> t(n, std::vector<SparseVector>(n));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
      for (std::size_t j = 0; j < n; ++j)
        if (i + j < n) t[i][j] = {{static_cast<std::uint32_t>(i + j), 1}};
    }
    std::vector<std::size_t> ideal;
    for (std::size_t i = 1; i < n; ++i) ideal.push_back(i);
    return FinLocalAlgebra(field, std::move(t), std::move(ideal), std::move(labels));
  }

  // A (x) B with basis index i*dim(B)+j. Factors are already validated.
  static FinLocalAlgebra tensor(const FinLocalAlgebra& a, const FinLocalAlgebra& b) {
    require_same_ring(a.field_, b.field_, "tensor of algebras");
    const auto& f = a.field_;
    std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
    std::vector<std::vector<SparseVector>> t(n, std::vector<SparseVector>(n));
    for (std::size_t i1 = 0; i1 < na; ++i1)
      for (std::size_t j1 = 0; j1 < nb; ++j1)
        for (std::size_t i2 = 0; i2 < na; ++i2)
          for (std::size_t j2 = 0; j2 < nb; ++j2) {
            SparseVector out;
            for (auto [ka, ca] : a.table_[i1][i2])
              for (auto [kb, cb] : b.table_[j1][j2]) out.emplace_back(static_cast<std::uint32_t>(ka * nb + kb), f.mul(ca, cb));
            t[i1 * nb + j1][i2 * nb + j2] = std::move(out);
          }
    std::vector<std::size_t> ideal;
    for (std::size_t i = 1; i < n; ++i) ideal.push_back(i);
    std::vector<std::string> labels;
    if (!a.labels_.empty() && !b.labels_.empty())
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) labels.push_back(a.labels_[i] + "(x)" + b.labels_[j]);
    return FinLocalAlgebra(f, std::move(t), std::move(ideal), std::move(labels), Trusted{});
  }

  const CoefficientRing& field() const { return field_; }
  std::size_t dim() const { return table_.size(); }
  const std::vector<std::size_t>& ideal_basis() const { return ideal_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const SparseVector& basis_product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  const std::vector<std::vector<SparseVector>>& table() const { return table_; }

  Vector unit() const { return unit_vector(dim(), 0); }
  Scalar augmentation(const Vector& a) const { return a[0]; }

  Vector multiply(const Vector& a, const Vector& b) const {
    Vector out(dim(), 0);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < dim(); ++j)
      if (b[j] != 0) nz.push_back(j);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j : nz) {
        Scalar c = field_.mul(a[i], b[j]);
        for (auto [k, v] : table_[i][j]) out[k] = field_.add(out[k], field_.mul(c, v));
      }
    }
    return out;
  }

  // Matrix of x -> a*x.
  Matrix left_multiplication(const Vector& a) const {
    Matrix m(field_, dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        for (auto [k, v] : table_[i][j]) m.add_to(k, j, field_.mul(a[i], v));
    }
    return m;
  }
  Matrix basis_multiplication(std::size_t i) const { return left_multiplication(unit_vector(dim(), i)); }

  bool in_ideal(const Vector& a) const { return a[0] == 0; }

 private:
  struct Trusted {};
  FinLocalAlgebra(CoefficientRing field, std::vector<std::vector<SparseVector>> products, std::vector<std::size_t> ideal,
                  std::vector<std::string> labels, Trusted)
      : field_(field), table_(std::move(products)), ideal_(std::move(ideal)), labels_(std::move(labels)) {}

  void validate() {
    require_field(field_, "FinLocalAlgebra");
    const std::size_t n = table_.size();
    if (n == 0) throw ValidationError("algebra must have positive dimension");
    for (auto& row : table_) {
      if (row.size() != n) throw ValidationError("structure constant table is not square");
      for (auto& sv : row) {
        for (auto& [k, c] : sv) {
          if (k >= n) throw ValidationError("structure constant index out of range");
          c = field_.reduce(c);
        }
        std::sort(sv.begin(), sv.end());
        SparseVector merged;
        for (auto [k, c] : sv) {
          if (!merged.empty() && merged.back().first == k)
            merged.back().second = field_.add(merged.back().second, c);
          else
            merged.emplace_back(k, c);
        }
        std::erase_if(merged, [](auto& e) { return e.second == 0; });
        sv = std::move(merged);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (to_dense(table_[0][i], n) != unit_vector(n, i) || to_dense(table_[i][0], n) != unit_vector(n, i))
        throw ValidationError("basis element 0 is not the unit");
      for (std::size_t j = 0; j < n; ++j)
        if (table_[i][j] != table_[j][i]) throw ValidationError("multiplication is not commutative");
    }
    Vector lhs(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          std::fill(lhs.begin(), lhs.end(), 0);
          std::fill(rhs.begin(), rhs.end(), 0);
          for (auto [l, c] : table_[i][j])
            for (auto [m, d] : table_[l][k]) lhs[m] = field_.add(lhs[m], field_.mul(c, d));
          for (auto [l, c] : table_[j][k])
            for (auto [m, d] : table_[i][l]) rhs[m] = field_.add(rhs[m], field_.mul(c, d));
          if (lhs != rhs) throw ValidationError("multiplication is not associative");
        }
    // Maximal ideal: codimension 1, excludes the unit, closed, nilpotent.
    if (ideal_.size() + 1 != n) throw ValidationError("maximal ideal must have codimension 1");
    std::vector<bool> seen(n, false);
    for (auto i : ideal_) {
      if (i == 0 || i >= n || seen[i]) throw ValidationError("maximal ideal basis must be the non-unit basis elements");
      seen[i] = true;
    }
    for (auto i : ideal_)
      for (std::size_t j = 0; j < n; ++j)
        for (auto [k, c] : table_[i][j])
          if (k == 0 && c != 0) throw ValidationError("maximal ideal is not closed under multiplication");
    // m^t for increasing t until zero or stuck.
    std::vector<Vector> power;
    for (auto i : ideal_) power.push_back(unit_vector(n, i));
    for (std::size_t t = 0; t <= n && !power.empty(); ++t) {
      Subspace next(field_, n);
      for (auto i : ideal_)
        for (auto& x : power) next.add(multiply(unit_vector(n, i), x));
      if (next.dim() == power.size() && next.dim() != 0) throw ValidationError("maximal ideal is not nilpotent");
      power = next.echelon_rows();
    }
    if (!power.empty()) throw ValidationError("maximal ideal is not nilpotent");
  }

  CoefficientRing field_;
  std::vector<std::vector<SparseVector>> table_;
  std::vector<std::size_t> ideal_;
  std::vector<std::string> labels_;
};

// Action of the algebra basis element e_i on the free module A^rank
// (coordinates ordered generator-major: g*dim + j).
inline Matrix free_module_action(const FinLocalAlgebra& a, std::size_t rank, std::size_t i) {
  Matrix blockm = a.basis_multiplication(i);
  Matrix m(a.field(), rank * a.dim(), rank * a.dim());
  for (std::size_t g = 0; g < rank; ++g) m.put_block(g * a.dim(), g * a.dim(), blockm);
  return m;
}

// Vector in A^rank obtained from x by multiplying with e_i.
inline Vector act_on_free(const FinLocalAlgebra& a, std::size_t i, const Vector& x) {
  const std::size_t n = a.dim();
  const auto& f = a.field();
  Vector out(x.size(), 0);
  for (std::size_t g = 0; g * n < x.size(); ++g)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar c = x[g * n + j];
      if (c == 0) continue;
      for (auto [k, v] : a.basis_product(i, j)) out[g * n + k] = f.add(out[g * n + k], f.mul(c, v));
    }
  return out;
}

// An A-linear map A^source -> A^target written as a k-matrix.
struct FreeModuleMap {
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  Matrix k_matrix;
};

inline void check_a_linear(const FinLocalAlgebra& a, const FreeModuleMap& m) {
  const std::size_t n = a.dim();
  if (m.k_matrix.rows() != m.target_rank * n || m.k_matrix.cols() != m.source_rank * n)
    throw ValidationError("A-linear map has the wrong k-dimensions");
  require_same_ring(a.field(), m.k_matrix.ring(), "A-linear map");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < m.k_matrix.cols(); ++c) {
      Vector x = unit_vector(m.k_matrix.cols(), c);
      if (m.k_matrix.apply(act_on_free(a, i, x)) != act_on_free(a, i, m.k_matrix.col(c)))
        throw ValidationError("map is not A-linear (fails against basis element " + std::to_string(i) + ")");
    }
}

// Minimal generators of an A-submodule of A^rank given by a k-basis:
// vectors of the basis that stay independent modulo m*K (Nakayama).
inline std::vector<Vector> minimal_generators(const FinLocalAlgebra& a, const std::vector<Vector>& k_basis, std::size_t ambient) {
  Subspace span(a.field(), ambient);
  for (auto i : a.ideal_basis())
    for (auto& v : k_basis) span.add(act_on_free(a, i, v));
  std::vector<Vector> gens;
  for (auto& v : k_basis)
    if (span.add(v)) gens.push_back(v);
  return gens;
}

inline std::vector<Vector> kernel_generators(const FinLocalAlgebra& a, const FreeModuleMap& m) {
  check_a_linear(a, m);
  return minimal_generators(a, kernel_basis(m.k_matrix), m.k_matrix.cols());
}

inline std::optional<Vector> solve_over_local_algebra(const FinLocalAlgebra& a, const FreeModuleMap& m, const Vector& target) {
  check_a_linear(a, m);
  return solve(m.k_matrix, target);
}

// A finite module over a FinLocalAlgebra: a k-space with one action matrix
// per algebra basis element.
class LocalModule {
 public:
  LocalModule(std::shared_ptr<const FinLocalAlgebra> algebra, std::vector<Matrix> action)
      : algebra_(std::move(algebra)), action_(std::move(action)) {
    validate();
  }

  static LocalModule residue_field(std::shared_ptr<const FinLocalAlgebra> a) {
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(i == 0 ? Matrix::identity(a->field(), 1) : Matrix::zero(a->field(), 1, 1));
    return LocalModule(std::move(a), std::move(act));
  }

  static LocalModule regular(std::shared_ptr<const FinLocalAlgebra> a) {
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(a->basis_multiplication(i));
    return LocalModule(std::move(a), std::move(act));
  }

  // B regarded as an A-module through an algebra map f: A -> B (matrix dim B x dim A).
  static LocalModule restriction(std::shared_ptr<const FinLocalAlgebra> a, const FinLocalAlgebra& b, const Matrix& f) {
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(b.left_multiplication(f.col(i)));
    return LocalModule(std::move(a), std::move(act));
  }

  const FinLocalAlgebra& algebra() const { return *algebra_; }
  std::shared_ptr<const FinLocalAlgebra> algebra_ptr() const { return algebra_; }
  std::size_t dim() const { return action_.empty() ? 0 : action_[0].rows(); }
  const Matrix& action(std::size_t i) const { return action_[i]; }

 private:
  void validate() const {
    const auto& a = *algebra_;
    if (action_.size() != a.dim()) throw ValidationError("module needs one action matrix per algebra basis element");
    std::size_t d = action_[0].rows();
    for (auto& m : action_)
      if (m.rows() != d || m.cols() != d) throw ValidationError("module action matrices must be square of equal size");
    if (action_[0] != Matrix::identity(a.field(), d)) throw ValidationError("unit must act as identity");
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        Matrix rhs = Matrix::zero(a.field(), d, d);
        for (auto [k, c] : a.basis_product(i, j)) rhs = rhs + action_[k].scaled(c);
        if (action_[i] * action_[j] != rhs) throw ValidationError("module action is not multiplicative");
      }
  }

  std::shared_ptr<const FinLocalAlgebra> algebra_;
  std::vector<Matrix> action_;
};

// Checks that f: A -> B (dim B x dim A) is a unital algebra map.
inline void check_algebra_map(const FinLocalAlgebra& a, const FinLocalAlgebra& b, const Matrix& f) {
  if (f.rows() != b.dim() || f.cols() != a.dim()) throw ValidationError("algebra map has wrong shape");
  if (f.col(0) != b.unit()) throw ValidationError("algebra map is not unital");
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < a.dim(); ++i) cols.push_back(f.col(i));
  const auto& k = a.field();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) {
      Vector lhs(b.dim(), 0);
      for (auto [t, c] : a.basis_product(i, j)) axpy(k, lhs, c, cols[t]);
      if (lhs != b.multiply(cols[i], cols[j])) throw ValidationError("algebra map is not multiplicative");
    }
}

}  // namespace homotor
