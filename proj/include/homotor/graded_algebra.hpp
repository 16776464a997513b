#pragma once

// Finite graded k-algebras in degrees 0..top with a basis per degree.
// Products are only known for m + n <= product_top; asking for more throws.

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "homotor/rings.hpp"

namespace homotor {

class GradedAlgebra {
 public:
  GradedAlgebra(CoefficientRing field, std::vector<std::size_t> dims, int product_top, Vector unit)
      : field_(field), dims_(std::move(dims)), product_top_(product_top), unit_(std::move(unit)) {
    require_field(field_, "GradedAlgebra");
    if (dims_.empty()) throw ValidationError("graded algebra needs degree 0");
    if (unit_.size() != dims_[0]) throw ValidationError("unit must live in degree 0");
  }

  const CoefficientRing& field() const { return field_; }
  int top() const { return static_cast<int>(dims_.size()) - 1; }
  int product_top() const { return product_top_; }
  std::size_t dim(int n) const { return n < 0 || n > top() ? 0 : dims_[static_cast<std::size_t>(n)]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const Vector& unit() const { return unit_; }

  void set_product(int m, std::size_t i, int n, std::size_t j, Vector v) {
    if (m + n > product_top_) throw TruncationError("product beyond the computed window");
    if (v.size() != dim(m + n)) throw ValidationError("product vector has the wrong length");
    table_[{m, n}].resize(dim(m) * dim(n));
    table_[{m, n}][i * dim(n) + j] = std::move(v);
  }

  const Vector& basis_product(int m, std::size_t i, int n, std::size_t j) const {
    if (m + n > product_top_)
      throw TruncationError("product of degrees " + std::to_string(m) + " and " + std::to_string(n) + " is outside the window");
    auto it = table_.find({m, n});
    if (it == table_.end() || it->second[i * dim(n) + j].size() != dim(m + n))
      throw TruncationError("product not computed");
    return it->second[i * dim(n) + j];
  }

  Vector multiply(int m, const Vector& a, int n, const Vector& b) const {
    Vector out(dim(m + n), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] == 0) continue;
        axpy(field_, out, field_.mul(a[i], b[j]), basis_product(m, i, n, j));
      }
    }
    return out;
  }

  struct LawReport {
    bool graded_commutative = true;
    bool odd_squares_vanish = true;
    bool unital = true;
    bool associative = true;
    std::size_t pairs_checked = 0;
    std::string first_failure;
    bool ok() const { return graded_commutative && odd_squares_vanish && unital && associative; }
  };

  // Checks a.b = (-1)^{mn} b.a and a.a = 0 (a odd) on all basis pairs,
  // odd squares on random odd elements, unit and associativity on basis triples.
  LawReport check_laws(std::uint64_t seed = 1, int random_trials = 20) const {
    LawReport r;
    auto note = [&](bool& flag, const std::string& what) {
      if (r.first_failure.empty()) r.first_failure = what;
      flag = false;
    };
    for (int m = 0; m <= top(); ++m)
      for (int n = 0; m + n <= product_top_; ++n)
        for (std::size_t i = 0; i < dim(m); ++i)
          for (std::size_t j = 0; j < dim(n); ++j) {
            ++r.pairs_checked;
            Vector ab = basis_product(m, i, n, j);
            Vector ba = basis_product(n, j, m, i);
            if ((m * n) % 2 != 0) ba = scale(field_, ba, field_.neg(1));
            if (ab != ba) note(r.graded_commutative, "commutativity in degrees " + std::to_string(m) + "," + std::to_string(n));
            if (m == n && i == j && m % 2 != 0 && !is_zero(ab)) note(r.odd_squares_vanish, "square in degree " + std::to_string(m));
          }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Scalar> coef(0, field_.p() - 1);
    for (int m = 1; 2 * m <= product_top_; m += 2) {
      if (dim(m) == 0) continue;
      for (int t = 0; t < random_trials; ++t) {
        Vector a(dim(m));
        for (auto& x : a) x = coef(rng);
        if (!is_zero(multiply(m, a, m, a))) note(r.odd_squares_vanish, "random square in degree " + std::to_string(m));
      }
    }
    for (int n = 0; n <= product_top_; ++n)
      for (std::size_t j = 0; j < dim(n); ++j)
        if (multiply(0, unit_, n, unit_vector(dim(n), j)) != unit_vector(dim(n), j)) note(r.unital, "unit in degree " + std::to_string(n));
    for (int a = 0; a <= product_top_; ++a)
      for (int b = 0; a + b <= product_top_; ++b)
        for (int c = 0; a + b + c <= product_top_; ++c)
          for (std::size_t i = 0; i < dim(a); ++i)
            for (std::size_t j = 0; j < dim(b); ++j)
              for (std::size_t k = 0; k < dim(c); ++k) {
                Vector left = multiply(a + b, basis_product(a, i, b, j), c, unit_vector(dim(c), k));
                Vector right = multiply(a, unit_vector(dim(a), i), b + c, basis_product(b, j, c, k));
                if (left != right) note(r.associative, "associativity");
              }
    return r;
  }

 private:
  CoefficientRing field_;
  std::vector<std::size_t> dims_;
  int product_top_;
  Vector unit_;
  std::map<std::pair<int, int>, std::vector<Vector>> table_;
};

}  // namespace homotor
