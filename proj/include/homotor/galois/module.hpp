#pragma once

// Group homomorphisms, representations over F_p and the modules with group
// action built from them (trivial, adjoint, twisted dual, restriction).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homotor/group.hpp"
#include "homotor/rings.hpp"

namespace homotor::galois {

using GroupPtr = std::shared_ptr<const FiniteGroup>;
using Element = FiniteGroup::Element;

inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

// phi: source -> target, phi[x] for every element of the source.
class GroupHom {
 public:
  GroupHom(GroupPtr source, GroupPtr target, std::vector<Element> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->order()) throw ValidationError("homomorphism needs one image per source element");
    for (auto x : images_)
      if (x >= target_->order()) throw ValidationError("homomorphism image out of range");
    for (Element a = 0; a < source_->order(); ++a)
      for (Element b = 0; b < source_->order(); ++b)
        if (images_[source_->mul(a, b)] != target_->mul(images_[a], images_[b]))
          throw ValidationError("map is not a group homomorphism");
  }

  static GroupHom identity(GroupPtr g) {
    std::vector<Element> im(g->order());
    for (Element a = 0; a < g->order(); ++a) im[a] = a;
    return GroupHom(g, g, std::move(im));
  }

  // Inclusion of the subgroup generated by `gens`; the subgroup is re-indexed
  // by its sorted element list.
  static GroupHom subgroup_inclusion(GroupPtr g, const std::vector<Element>& gens) {
    auto elems = g->generated_by(gens);
    std::vector<std::vector<Element>> t(elems.size(), std::vector<Element>(elems.size()));
    auto index = [&](Element x) {
      return static_cast<Element>(std::lower_bound(elems.begin(), elems.end(), x) - elems.begin());
    };
    for (std::size_t a = 0; a < elems.size(); ++a)
      for (std::size_t b = 0; b < elems.size(); ++b) t[a][b] = index(g->mul(elems[a], elems[b]));
    auto sub = share(FiniteGroup(std::move(t), "<" + g->name() + " subgroup of order " + std::to_string(elems.size()) + ">"));
    return GroupHom(sub, g, elems);
  }

  // Z/m -> g, i -> x^i (needs x^m = 1).
  static GroupHom from_cyclic(GroupPtr g, Element x, std::size_t m) {
    auto c = share(FiniteGroup::cyclic(m));
    std::vector<Element> im(m);
    Element y = g->identity();
    for (std::size_t i = 0; i < m; ++i) {
      im[i] = y;
      y = g->mul(y, x);
    }
    return GroupHom(c, g, std::move(im));
  }

  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  Element operator()(Element a) const { return images_[a]; }
  const std::vector<Element>& images() const { return images_; }
  bool surjective() const {
    std::vector<bool> hit(target_->order(), false);
    for (auto x : images_) hit[x] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

 private:
  GroupPtr source_, target_;
  std::vector<Element> images_;
};

// rho: group -> GL_n(F_p), one matrix per element; optional character chi.
class Representation {
 public:
  Representation(GroupPtr group, CoefficientRing field, std::vector<Matrix> matrices, std::optional<std::vector<Scalar>> chi = std::nullopt)
      : group_(std::move(group)), field_(field), rho_(std::move(matrices)), chi_(std::move(chi)) {
    require_field(field_, "Representation");
    if (rho_.size() != group_->order()) throw ValidationError("representation needs one matrix per group element");
    n_ = rho_[0].rows();
    for (auto& m : rho_) {
      require_same_ring(field_, m.ring(), "representation");
      if (m.rows() != n_ || m.cols() != n_) throw ValidationError("representation matrices must all be n x n");
    }
    if (rho_[group_->identity()] != Matrix::identity(field_, n_)) throw ValidationError("rho(1) is not the identity");
    for (Element a = 0; a < group_->order(); ++a)
      for (Element b = 0; b < group_->order(); ++b)
        if (rho_[group_->mul(a, b)] != rho_[a] * rho_[b])
          throw ValidationError("rho(gh) != rho(g)rho(h) for g = " + std::to_string(a) + ", h = " + std::to_string(b));
    if (chi_) {
      if (chi_->size() != group_->order()) throw ValidationError("character needs one value per group element");
      for (auto& c : *chi_) {
        c = field_.reduce(c);
        if (c == 0) throw ValidationError("character values must be units");
      }
      for (Element a = 0; a < group_->order(); ++a)
        for (Element b = 0; b < group_->order(); ++b)
          if ((*chi_)[group_->mul(a, b)] != field_.mul((*chi_)[a], (*chi_)[b])) throw ValidationError("character is not multiplicative");
    }
  }

  static Representation trivial(GroupPtr g, CoefficientRing field, std::size_t n) {
    std::vector<Matrix> m(g->order(), Matrix::identity(field, n));
    return Representation(std::move(g), field, std::move(m));
  }

  // Determined by images of generators: extends along words and validates.
  static Representation from_generators(GroupPtr g, CoefficientRing field, const std::vector<Element>& gens,
                                        const std::vector<Matrix>& images) {
    if (gens.size() != images.size()) throw ValidationError("one matrix per generator is required");
    if (images.empty()) {
      if (g->order() != 1) throw ValidationError("generators do not generate the group");
      return trivial(g, field, 1);
    }
    const std::size_t n = images[0].rows();
    std::vector<std::optional<Matrix>> rho(g->order());
    rho[g->identity()] = Matrix::identity(field, n);
    std::vector<Element> queue{g->identity()};
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Element y = g->mul(queue[head], gens[k]);
        if (!rho[y]) {
          rho[y] = *rho[queue[head]] * images[k];
          queue.push_back(y);
        }
      }
    std::vector<Matrix> out;
    for (auto& m : rho) {
      if (!m) throw ValidationError("generators do not generate the group");
      out.push_back(*m);
    }
    return Representation(std::move(g), field, std::move(out));
  }

  const GroupPtr& group() const { return group_; }
  const CoefficientRing& field() const { return field_; }
  std::size_t n() const { return n_; }
  const Matrix& operator()(Element g) const { return rho_[g]; }
  const std::vector<Matrix>& matrices() const { return rho_; }
  const std::optional<std::vector<Scalar>>& chi() const { return chi_; }

  Representation restrict(const GroupHom& phi) const {
    if (phi.target().get() != group_.get() && phi.target()->table() != group_->table())
      throw DomainMismatch("restriction along a map into a different group");
    std::vector<Matrix> m;
    std::optional<std::vector<Scalar>> chi;
    if (chi_) chi.emplace();
    for (Element a = 0; a < phi.source()->order(); ++a) {
      m.push_back(rho_[phi(a)]);
      if (chi_) chi->push_back((*chi_)[phi(a)]);
    }
    return Representation(phi.source(), field_, std::move(m), std::move(chi));
  }

  static Representation direct_sum(const Representation& a, const Representation& b) {
    if (a.group_->table() != b.group_->table()) throw DomainMismatch("direct sum of representations of different groups");
    std::vector<Matrix> m;
    for (Element g = 0; g < a.group_->order(); ++g) m.push_back(block_diag(a.rho_[g], b.rho_[g]));
    return Representation(a.group_, a.field_, std::move(m));
  }

 private:
  GroupPtr group_;
  CoefficientRing field_;
  std::vector<Matrix> rho_;
  std::optional<std::vector<Scalar>> chi_;
  std::size_t n_ = 0;
};

// A finite-dimensional F_p[G]-module: action[g] is the matrix of g.
class GroupModule {
 public:
  GroupModule(GroupPtr group, CoefficientRing field, std::size_t dim, std::vector<Matrix> action, std::string name = "M")
      : group_(std::move(group)), field_(field), dim_(dim), action_(std::move(action)), name_(std::move(name)) {
    require_field(field_, "GroupModule");
    if (action_.size() != group_->order()) throw ValidationError("module needs one matrix per group element");
    for (auto& m : action_)
      if (m.rows() != dim_ || m.cols() != dim_) throw ValidationError("module action matrices have the wrong shape");
    if (action_[group_->identity()] != Matrix::identity(field_, dim_)) throw ValidationError("identity does not act trivially");
    for (Element a = 0; a < group_->order(); ++a)
      for (Element b = 0; b < group_->order(); ++b)
        if (action_[group_->mul(a, b)] != action_[a] * action_[b]) throw ValidationError("module action is not a homomorphism");
  }

  static GroupModule trivial(GroupPtr g, CoefficientRing field, std::size_t dim) {
    std::vector<Matrix> act(g->order(), Matrix::identity(field, dim));
    return GroupModule(std::move(g), field, dim, std::move(act), "k^" + std::to_string(dim));
  }

  static GroupModule from_representation(const Representation& r) {
    return GroupModule(r.group(), r.field(), r.n(), r.matrices(), "V");
  }

  // g = gl_n with g.X = rho(g) X rho(g)^{-1}; basis E_ij in row-major order.
  static GroupModule adjoint(const Representation& r) {
    const std::size_t n = r.n();
    const auto& k = r.field();
    std::vector<Matrix> act;
    for (Element g = 0; g < r.group()->order(); ++g) {
      Matrix a = r(g), ai = inverse(r(g));
      Matrix m(k, n * n, n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          // a E_ij a^{-1} has (s, t) entry a[s][i] * ai[j][t]
          for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t) m.set(s * n + t, i * n + j, k.mul(a(s, i), ai(j, t)));
        }
      act.push_back(std::move(m));
    }
    return GroupModule(r.group(), k, n * n, std::move(act), "ad");
  }

  // g* = Hom(g, k(1)): (g.f)(X) = chi(g) f(g^{-1}.X); basis dual to E_ij.
  static GroupModule twisted_dual_adjoint(const Representation& r) {
    if (!r.chi()) throw ValidationError("the twisted dual needs a character chi");
    auto ad = adjoint(r);
    std::vector<Matrix> act;
    for (Element g = 0; g < r.group()->order(); ++g)
      act.push_back(ad.action(r.group()->inv(g)).transpose().scaled((*r.chi())[g]));
    return GroupModule(r.group(), r.field(), ad.dim(), std::move(act), "ad*(1)");
  }

  static GroupModule direct_sum(const GroupModule& a, const GroupModule& b) {
    if (a.group_->table() != b.group_->table()) throw DomainMismatch("direct sum of modules over different groups");
    std::vector<Matrix> act;
    for (Element g = 0; g < a.group_->order(); ++g) act.push_back(block_diag(a.action_[g], b.action_[g]));
    return GroupModule(a.group_, a.field_, a.dim_ + b.dim_, std::move(act), a.name_ + "+" + b.name_);
  }

  GroupModule restrict(const GroupHom& phi) const {
    if (phi.target()->table() != group_->table()) throw DomainMismatch("restriction along a map into a different group");
    std::vector<Matrix> act;
    for (Element a = 0; a < phi.source()->order(); ++a) act.push_back(action_[phi(a)]);
    return GroupModule(phi.source(), field_, dim_, std::move(act), name_);
  }

  const GroupPtr& group() const { return group_; }
  const CoefficientRing& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Matrix& action(Element g) const { return action_[g]; }
  const std::string& name() const { return name_; }

  // M^G computed directly: common kernel of (g - 1) over all g.
  std::vector<Vector> fixed_points() const {
    Matrix stacked(field_, 0, dim_);
    for (Element g = 0; g < group_->order(); ++g) stacked = vstack(stacked, action_[g] - Matrix::identity(field_, dim_));
    return kernel_basis(stacked);
  }

 private:
  GroupPtr group_;
  CoefficientRing field_;
  std::size_t dim_;
  std::vector<Matrix> action_;
  std::string name_;
};

}  // namespace homotor::galois
