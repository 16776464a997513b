#pragma once

// Random small groups, representations and Selmer data for property checks.

#include <algorithm>
#include <random>
#include <vector>

#include "homotor/galois/selmer.hpp"

namespace homotor::galois {

// Groups of order <= 12 with explicit tables.
inline std::vector<GroupPtr> small_groups() {
  std::vector<GroupPtr> out;
  for (std::size_t n = 1; n <= 12; ++n) out.push_back(share(FiniteGroup::cyclic(n)));
  out.push_back(share(FiniteGroup::klein_four()));
  out.push_back(share(FiniteGroup::symmetric(3)));
  out.push_back(share(FiniteGroup::dihedral(4)));
  out.push_back(share(FiniteGroup::dihedral(5)));
  out.push_back(share(FiniteGroup::dihedral(6)));
  out.push_back(share(FiniteGroup::alternating4()));
  out.push_back(share(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4))));
  out.push_back(share(FiniteGroup::product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3))));
  out.push_back(share(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(6))));
  return out;
}

// All of GL_n(F_p), in a fixed order.
inline std::vector<Matrix> general_linear(const CoefficientRing& k, std::size_t n) {
  const auto p = static_cast<std::size_t>(k.modulus());
  std::size_t total = 1;
  for (std::size_t i = 0; i < n * n; ++i) total *= p;
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < total; ++c) {
    Matrix m(k, n, n);
    std::size_t x = c;
    for (std::size_t i = 0; i < n * n; ++i) {
      m.set(i / n, i % n, static_cast<Scalar>(x % p));
      x /= p;
    }
    if (rank(m) == n) out.push_back(std::move(m));
  }
  return out;
}

namespace detail {

inline Matrix matrix_power(const Matrix& a, std::size_t e) {
  Matrix r = Matrix::identity(a.ring(), a.rows());
  for (std::size_t i = 0; i < e; ++i) r = r * a;
  return r;
}

}  // namespace detail

// A random homomorphism G -> GL_n(F_p): generator images drawn from a shuffled
// GL_n with the right orders, first one that extends to a homomorphism wins.
template <class Rng>
Representation random_representation(GroupPtr G, const CoefficientRing& k, std::size_t n, Rng& rng, std::size_t max_tries = 400) {
  auto gl = general_linear(k, n);
  std::shuffle(gl.begin(), gl.end(), rng);
  const auto gens = G->generators();
  std::vector<std::vector<const Matrix*>> options(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::size_t ord = G->element_order(gens[g]);
    for (auto& m : gl)
      if (detail::matrix_power(m, ord) == Matrix::identity(k, n)) options[g].push_back(&m);
  }
  std::size_t tries = 0;
  std::vector<Matrix> chosen;
  std::optional<Representation> found;
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (found || tries >= max_tries) return;
    if (g == gens.size()) {
      ++tries;
      try {
        found = Representation::from_generators(G, k, gens, chosen);
      } catch (const ValidationError&) {
      }
      return;
    }
    for (auto* m : options[g]) {
      chosen.push_back(*m);
      rec(g + 1);
      chosen.pop_back();
      if (found || tries >= max_tries) return;
    }
  };
  rec(0);
  if (found) return *found;
  return Representation::trivial(G, k, n);
}

struct RandomDatumOptions {
  std::size_t max_order = 12;
  std::size_t max_n = 2;
  std::vector<std::int64_t> primes{3, 5};
  std::size_t max_places = 2;
  bool require_coboundaries = true;  // otherwise L~_v may miss B^1
};

template <class Rng>
SelmerDatum random_selmer_datum(Rng& rng, const RandomDatumOptions& opt = {}) {
  auto groups = small_groups();
  groups.erase(std::remove_if(groups.begin(), groups.end(), [&](const GroupPtr& g) { return g->order() > opt.max_order; }),
               groups.end());
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  GroupPtr G = groups[pick(groups.size())];
  auto k = CoefficientRing::prime_field(opt.primes[pick(opt.primes.size())]);
  const std::size_t n = 1 + pick(opt.max_n);
  auto rho = random_representation(G, k, n, rng);
  auto g = GroupModule::adjoint(rho);
  std::vector<LocalPlace> places;
  const std::size_t nplaces = pick(opt.max_places + 1);
  for (std::size_t v = 0; v < nplaces; ++v) {
    auto x = static_cast<Element>(pick(G->order()));
    std::optional<GroupHom> phi;
    switch (pick(3)) {
      case 0:
        phi = GroupHom::subgroup_inclusion(G, {x});
        break;
      case 1:
        phi = GroupHom::subgroup_inclusion(G, {x, static_cast<Element>(pick(G->order()))});
        break;
      default:
        // a cyclic group mapping onto <x> with a kernel
        phi = GroupHom::from_cyclic(G, x, G->element_order(x) * (1 + pick(2)));
    }
    GroupModule gv = g.restrict(*phi);
    LocalPlace place{"v" + std::to_string(v), *phi, {}, true, true};
    auto z1 = full_condition(gv);
    switch (pick(4)) {
      case 0:
        place.ltilde = unramified_like_condition(gv);
        break;
      case 1:
        place.ltilde = z1;
        break;
      case 2: {
        place.ltilde = unramified_like_condition(gv);
        for (auto& z : z1)
          if (pick(2) == 0) place.ltilde.push_back(z);
        break;
      }
      default: {
        // a random subspace of Z^1 that need not contain B^1
        for (auto& z : z1)
          if (pick(2) == 0) place.ltilde.push_back(z);
        Subspace span(k, cochain_dim(gv, 1));
        for (auto& z : place.ltilde) span.add(z);
        bool contains = true;
        for (auto& b : coboundaries(gv)) contains = contains && span.contains(b);
        if (!contains && opt.require_coboundaries) {
          for (auto& b : coboundaries(gv)) place.ltilde.push_back(b);
          contains = true;
        }
        place.contains_coboundaries = contains;
      }
    }
    places.push_back(std::move(place));
  }
  return SelmerDatum(std::move(rho), std::move(places));
}

}  // namespace homotor::galois
