#pragma once

// Graded polynomial rings k[x_1..x_s]/(homogeneous relations), expanded
// degree by degree up to a fixed bound.

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "homotor/local_algebra.hpp"
#include "homotor/rings.hpp"

namespace homotor::koszul {

using Monomial = std::vector<int>;

// Sparse polynomial: exponent vector -> nonzero coefficient.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, Scalar c) {
    Poly p(nvars);
    if (c != 0) p.terms_[Monomial(nvars, 0)] = c;
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    Poly p(nvars);
    Monomial m(nvars, 0);
    m[i] = 1;
    p.terms_[m] = 1;
    return p;
  }
  static Poly monomial(const Monomial& m, Scalar c = 1) {
    Poly p(m.size());
    if (c != 0) p.terms_[m] = c;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const CoefficientRing& k, const Monomial& m, Scalar c) {
    Scalar v = k.add(terms_.count(m) ? terms_[m] : 0, k.reduce(c));
    if (v == 0)
      terms_.erase(m);
    else
      terms_[m] = v;
  }

  Poly plus(const CoefficientRing& k, const Poly& o) const {
    Poly r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(k, m, c);
    return r;
  }
  Poly times(const CoefficientRing& k, const Poly& o) const {
    Poly r(nvars_);
    for (auto& [m1, c1] : terms_)
      for (auto& [m2, c2] : o.terms_) {
        Monomial m(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) m[i] = m1[i] + m2[i];
        r.add_term(k, m, k.mul(c1, c2));
      }
    return r;
  }
  Poly scaled(const CoefficientRing& k, Scalar c) const {
    Poly r(nvars_);
    for (auto& [m, v] : terms_) r.add_term(k, m, k.mul(v, k.reduce(c)));
    return r;
  }

  // Weighted degree of a homogeneous polynomial; -1 for zero; throws if not homogeneous.
  int degree(const std::vector<int>& weights) const {
    int d = -1;
    for (auto& [m, c] : terms_) {
      int e = 0;
      for (std::size_t i = 0; i < nvars_; ++i) e += m[i] * weights[i];
      if (d >= 0 && e != d) throw ValidationError("polynomial is not homogeneous");
      d = e;
    }
    return d;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      auto& [m, c] = *it;
      if (!out.empty()) out += " + ";
      bool unit_mono = true;
      std::string mono;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        unit_mono = false;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      if (unit_mono)
        out += std::to_string(c);
      else if (c == 1)
        out += mono;
      else
        out += std::to_string(c) + "*" + mono;
    }
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

 private:
  std::size_t nvars_ = 0;
  std::map<Monomial, Scalar> terms_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& names, const CoefficientRing& k)
      : s_(text), names_(names), k_(k) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("cannot parse polynomial \"" + s_ + "\" at position " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long long integer() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000000000LL) fail("number too large");
    }
    return v;
  }
  Poly expr() {
    Poly p(names_.size());
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (eat('-'))
        sign = -1;
      else if (!first && !eat('+'))
        break;
      else if (first)
        eat('+');
      p = p.plus(k_, term().scaled(k_, sign));
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return p;
  }
  Poly term() {
    Poly p = factor();
    while (eat('*')) p = p.times(k_, factor());
    return p;
  }
  Poly factor() {
    skip();
    Poly base(names_.size());
    if (eat('(')) {
      base = expr();
      if (!eat(')')) fail("expected ')'");
    } else if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      base = Poly::constant(names_.size(), k_.reduce(static_cast<std::int64_t>(integer() % k_.modulus())));
    } else {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name.empty()) fail("expected a variable, number or '('");
      std::size_t i = 0;
      while (i < names_.size() && names_[i] != name) ++i;
      if (i == names_.size()) fail("unknown variable '" + name + "'");
      base = Poly::variable(names_.size(), i);
    }
    if (eat('^')) {
      long long e = integer();
      Poly r = Poly::constant(names_.size(), 1);
      for (long long t = 0; t < e; ++t) r = r.times(k_, base);
      return r;
    }
    return base;
  }

  std::string s_;
  std::vector<std::string> names_;
  CoefficientRing k_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(const std::string& text, const std::vector<std::string>& names, const CoefficientRing& k) {
  return detail::PolyParser(text, names, k).parse();
}

// Homogeneous element of a graded quotient: coordinates in the quotient
// basis of one degree.
struct GradedElement {
  int degree = 0;
  Vector coords;
};

class GradedPolyQuotient {
 public:
  GradedPolyQuotient(CoefficientRing field, std::vector<std::string> names, std::vector<int> degrees, std::vector<Poly> relations,
                     int max_degree)
      : field_(field), names_(std::move(names)), weights_(std::move(degrees)), relations_(std::move(relations)), dmax_(max_degree) {
    require_field(field_, "GradedPolyQuotient");
    build();
  }

  // "k[x,y]/(x^2, x*y)" or "k[x,y]"; the coefficient letter before '[' is ignored.
  static GradedPolyQuotient parse(const CoefficientRing& field, const std::string& text, int max_degree,
                                  std::vector<int> degrees = {}) {
    std::string trimmed;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "k" || trimmed == "k[]") return GradedPolyQuotient(field, {}, {}, {}, max_degree);
    auto open = text.find('[');
    auto close = text.find(']');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ValidationError("ring must look like k[x,y]/(relations)");
    std::vector<std::string> names;
    std::string cur;
    for (std::size_t i = open + 1; i <= close; ++i) {
      char c = text[i];
      if (c == ',' || c == ']') {
        if (cur.empty()) throw ValidationError("empty variable name in \"" + text + "\"");
        names.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    std::vector<Poly> rels;
    std::string rest = text.substr(close + 1);
    auto slash = rest.find('/');
    if (slash != std::string::npos) {
      auto lp = rest.find('(', slash);
      auto rp = rest.rfind(')');
      if (lp == std::string::npos || rp == std::string::npos || rp < lp) throw ValidationError("relations must be inside (...)");
      std::string body = rest.substr(lp + 1, rp - lp - 1);
      int depth = 0;
      std::string piece;
      for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
          rels.push_back(parse_poly(piece, names, field));
          piece.clear();
        } else {
          piece += c;
        }
      }
      if (!piece.empty()) rels.push_back(parse_poly(piece, names, field));
    }
    if (degrees.empty()) degrees.assign(names.size(), 1);
    return GradedPolyQuotient(field, std::move(names), std::move(degrees), std::move(rels), max_degree);
  }

  // Same ring, expanded to another degree bound.
  GradedPolyQuotient with_max_degree(int max_degree) const {
    return GradedPolyQuotient(field_, names_, weights_, relations_, max_degree);
  }

  const CoefficientRing& field() const { return field_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& degrees() const { return weights_; }
  int degree_of(std::size_t v) const { return weights_[v]; }
  const std::vector<Poly>& relations() const { return relations_; }
  bool is_polynomial() const { return relations_.empty(); }
  int max_degree() const { return dmax_; }

  std::size_t dim(int d) const { return d < 0 || d > dmax_ ? 0 : basis_[static_cast<std::size_t>(d)].size(); }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (int d = 0; d <= dmax_; ++d) out.push_back(dim(d));
    return out;
  }
  // Standard monomials spanning degree d of the quotient.
  const std::vector<Monomial>& basis(int d) const { return basis_.at(static_cast<std::size_t>(d)); }
  const std::vector<Monomial>& monomials(int d) const { return monomials_.at(static_cast<std::size_t>(d)); }

  int monomial_degree(const Monomial& m) const {
    int e = 0;
    for (std::size_t i = 0; i < m.size(); ++i) e += m[i] * weights_[i];
    return e;
  }

  // Normal form of a homogeneous polynomial of degree <= max_degree.
  GradedElement element(const Poly& p) const {
    if (p.nvars() != nvars()) throw ValidationError("polynomial has the wrong number of variables");
    int d = p.degree(weights_);
    if (d < 0) return GradedElement{0, Vector(dim(0), 0)};
    if (d > dmax_) throw TruncationError("element of degree " + std::to_string(d) + " is beyond the expansion bound");
    const auto& mons = monomials(d);
    Vector v(mons.size(), 0);
    for (auto& [m, c] : p.terms()) v[index_.at(m)] = c;
    return GradedElement{d, reduce(d, v)};
  }
  GradedElement element(const std::string& text) const { return element(parse_poly(text, names_, field_)); }
  GradedElement variable(std::size_t v) const { return element(Poly::variable(nvars(), v)); }
  GradedElement one() const { return GradedElement{0, unit_vector(1, 0)}; }

  // Polynomial with the standard monomials of an element.
  Poly to_poly(const GradedElement& e) const {
    Poly p(nvars());
    for (std::size_t i = 0; i < e.coords.size(); ++i)
      if (e.coords[i] != 0) p.add_term(field_, basis(e.degree)[i], e.coords[i]);
    return p;
  }

  GradedElement multiply(const GradedElement& a, const GradedElement& b) const {
    return element(to_poly(a).times(field_, to_poly(b)));
  }

  // Product of standard monomials i (degree a) and j (degree b).
  const Vector& basis_product(int a, std::size_t i, int b, std::size_t j) const {
    if (a + b > dmax_) throw TruncationError("product beyond the expansion bound");
    auto key = std::make_tuple(a, i, b, j);
    auto it = product_cache_->find(key);
    if (it != product_cache_->end()) return it->second;
    Monomial m = basis(a)[i];
    const auto& mj = basis(b)[j];
    for (std::size_t t = 0; t < m.size(); ++t) m[t] += mj[t];
    return product_cache_->emplace(key, element(Poly::monomial(m)).coords).first->second;
  }

  // Matrix of multiplication by a standard monomial of degree e: R_d -> R_{d+e}.
  Matrix multiplication_matrix(int e, std::size_t i, int d) const {
    Matrix m(field_, dim(d + e), dim(d));
    for (std::size_t j = 0; j < dim(d); ++j) {
      const Vector& v = basis_product(e, i, d, j);
      for (std::size_t r = 0; r < v.size(); ++r) m.set(r, j, v[r]);
    }
    return m;
  }

  // Highest degree with a nonzero piece once the ring is seen to vanish in
  // max-variable-degree consecutive degrees; nullopt if that is not visible.
  std::optional<int> socle_degree() const {
    int wmax = 1;
    for (int w : weights_) wmax = std::max(wmax, w);
    int run = 0, top = 0;
    for (int d = 0; d <= dmax_; ++d) {
      if (dim(d) == 0) {
        if (++run >= wmax) return top;
      } else {
        run = 0;
        top = d;
      }
    }
    return std::nullopt;
  }

  // The (artinian) ring as a FinLocalAlgebra, basis ordered by degree then
  // standard monomial; weights[i] is the degree of basis element i.
  std::pair<FinLocalAlgebra, std::vector<int>> to_local_algebra() const {
    auto top = socle_degree();
    if (!top) throw TruncationError("ring is not visibly artinian within the expansion bound");
    std::vector<std::pair<int, std::size_t>> index;
    std::vector<std::size_t> offset;
    std::vector<std::string> labels;
    std::vector<int> weights;
    for (int d = 0; d <= *top; ++d) {
      offset.push_back(index.size());
      for (std::size_t i = 0; i < dim(d); ++i) {
        index.emplace_back(d, i);
        weights.push_back(d);
        labels.push_back(Poly::monomial(basis(d)[i]).str(names_));
      }
    }
    const std::size_t n = index.size();
    std::vector<std::vector<SparseVector>> t(n, std::vector<SparseVector>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto [da, ia] = index[a];
        auto [db, ib] = index[b];
        if (da + db > *top) continue;
        const Vector& v = basis_product(da, ia, db, ib);
        for (std::size_t r = 0; r < v.size(); ++r)
          if (v[r] != 0) t[a][b].emplace_back(static_cast<std::uint32_t>(offset[static_cast<std::size_t>(da + db)] + r), v[r]);
      }
    std::vector<std::size_t> ideal;
    for (std::size_t i = 1; i < n; ++i) ideal.push_back(i);
    return {FinLocalAlgebra(field_, std::move(t), std::move(ideal), std::move(labels)), std::move(weights)};
  }

  std::string str() const {
    std::string out = "k[";
    for (std::size_t i = 0; i < names_.size(); ++i) out += (i ? "," : "") + names_[i];
    out += "]";
    if (!relations_.empty()) {
      out += "/(";
      for (std::size_t i = 0; i < relations_.size(); ++i) out += (i ? ", " : "") + relations_[i].str(names_);
      out += ")";
    }
    return out;
  }

 private:
  // Reduces a vector over the monomials of degree d to quotient coordinates.
  Vector reduce(int d, const Vector& v) const {
    const auto& sub = ideal_[static_cast<std::size_t>(d)];
    Vector w = sub.reduce(v);
    Vector out;
    out.reserve(dim(d));
    for (auto c : standard_[static_cast<std::size_t>(d)]) out.push_back(w[c]);
    return out;
  }

  void build() {
    if (dmax_ < 0) throw ValidationError("expansion bound must be non-negative");
    if (dmax_ > 64) throw BudgetExceeded("expansion bound above 64", dmax_);
    if (weights_.size() != names_.size()) throw ValidationError("one degree per variable is required");
    for (int w : weights_)
      if (w < 1) throw ValidationError("variable degrees must be positive");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw ValidationError("duplicate variable name " + names_[i]);
    std::vector<int> rel_deg;
    for (auto& r : relations_) {
      if (r.nvars() != nvars()) throw ValidationError("relation has the wrong number of variables");
      int d = r.degree(weights_);
      if (d == 0) throw ValidationError("relation of degree 0 is a unit; the quotient would be zero");
      rel_deg.push_back(d);
    }
    // monomials of each degree, lexicographically descending exponent vectors
    monomials_.assign(static_cast<std::size_t>(dmax_) + 1, {});
    Monomial m(nvars(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t v, int deg) {
      if (v == nvars()) {
        monomials_[static_cast<std::size_t>(deg)].push_back(m);
        return;
      }
      for (int e = (dmax_ - deg) / weights_[v]; e >= 0; --e) {
        m[v] = e;
        rec(v + 1, deg + e * weights_[v]);
      }
      m[v] = 0;
    };
    rec(0, 0);
    for (auto& list : monomials_)
      for (std::size_t i = 0; i < list.size(); ++i) index_[list[i]] = i;

    for (int d = 0; d <= dmax_; ++d) {
      const auto& mons = monomials(d);
      Subspace sub(field_, mons.size());
      std::vector<Vector> gens;
      for (std::size_t r = 0; r < relations_.size(); ++r) {
        int e = d - rel_deg[r];
        if (rel_deg[r] < 0 || e < 0) continue;
        for (auto& mm : monomials(e)) {
          Vector v(mons.size(), 0);
          for (auto& [rm, c] : relations_[r].terms()) {
            Monomial prod = rm;
            for (std::size_t t = 0; t < prod.size(); ++t) prod[t] += mm[t];
            v[index_.at(prod)] = c;
          }
          gens.push_back(v);
          sub.add(v);
        }
      }
      // independent rank of the relation matrix in this degree
      std::size_t r = gens.empty() ? 0 : rank(Matrix::from_columns(field_, mons.size(), gens));
      if (r != sub.dim()) throw InvariantFailure("relation rank mismatch in degree " + std::to_string(d));
      auto comp = sub.complement_indices();
      std::vector<Monomial> std_mons;
      for (auto c : comp) std_mons.push_back(mons[c]);
      if (std_mons.size() + r != mons.size()) throw InvariantFailure("quotient dimension mismatch in degree " + std::to_string(d));
      standard_.push_back(std::move(comp));
      basis_.push_back(std::move(std_mons));
      ideal_.push_back(std::move(sub));
    }
    if (dim(0) != 1) throw InvariantFailure("degree 0 of a graded quotient must be k");
    product_cache_ = std::make_shared<std::map<std::tuple<int, std::size_t, int, std::size_t>, Vector>>();
  }

  CoefficientRing field_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<Poly> relations_;
  int dmax_;
  std::vector<std::vector<Monomial>> monomials_;
  std::map<Monomial, std::size_t> index_;
  std::vector<Subspace> ideal_;
  std::vector<std::vector<std::size_t>> standard_;
  std::vector<std::vector<Monomial>> basis_;
  std::shared_ptr<std::map<std::tuple<int, std::size_t, int, std::size_t>, Vector>> product_cache_;
};

using PolyRingPtr = std::shared_ptr<const GradedPolyQuotient>;

}  // namespace homotor::koszul
