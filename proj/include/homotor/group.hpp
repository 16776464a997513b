#pragma once

// Finite groups by multiplication table.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "homotor/errors.hpp"

namespace homotor {

class FiniteGroup {
 public:
  using Element = std::uint32_t;

  // table[a][b] = a*b. Validates closure, identity, inverses and associativity.
  explicit FiniteGroup(std::vector<std::vector<Element>> table, std::string name = "G")
      : table_(std::move(table)), name_(std::move(name)) {
    validate();
  }

  static FiniteGroup trivial() { return cyclic(1); }

  static FiniteGroup cyclic(std::size_t n) {
    if (n == 0) throw ValidationError("cyclic group of order 0");
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Element>((a + b) % n);
    return FiniteGroup(std::move(t), "Z/" + std::to_string(n));
  }

  // Group of permutations of {0..degree-1} generated by `gens`; element 0 is the identity.
  static FiniteGroup from_permutations(const std::vector<std::vector<std::size_t>>& gens, std::size_t degree, std::string name,
                                       std::size_t max_order = 5040) {
    using Perm = std::vector<std::size_t>;
    for (auto& g : gens) {
      if (g.size() != degree) throw ValidationError("permutation has the wrong degree");
      Perm sorted = g;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < degree; ++i)
        if (sorted[i] != i) throw ValidationError("not a permutation");
    }
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> elems{id};
    std::map<Perm, Element> index{{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head)
      for (auto& g : gens) {
        Perm p(degree);
        for (std::size_t i = 0; i < degree; ++i) p[i] = g[elems[head][i]];
        if (!index.count(p)) {
          if (elems.size() >= max_order) throw BudgetExceeded("permutation group too large", static_cast<double>(max_order));
          index.emplace(p, static_cast<Element>(elems.size()));
          elems.push_back(std::move(p));
        }
      }
    std::size_t n = elems.size();
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        // (a*b)(i) = a(b(i))
        Perm p(degree);
        for (std::size_t i = 0; i < degree; ++i) p[i] = elems[a][elems[b][i]];
        t[a][b] = index.at(p);
      }
    FiniteGroup g(std::move(t), std::move(name));
    g.permutations_ = std::move(elems);
    return g;
  }

  // Dihedral group of order 2n acting on an n-gon.
  static FiniteGroup dihedral(std::size_t n) {
    if (n < 2) throw ValidationError("dihedral group needs n >= 2");
    std::vector<std::size_t> r(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = (i + 1) % n;
      s[i] = (n - i) % n;
    }
    if (n == 2) {
      // D_2 = Klein four; act on 4 points
      return from_permutations({{1, 0, 3, 2}, {2, 3, 0, 1}}, 4, "D_2");
    }
    return from_permutations({r, s}, n, "D_" + std::to_string(n));
  }

  static FiniteGroup symmetric(std::size_t n) {
    if (n < 1) throw ValidationError("symmetric group needs n >= 1");
    if (n == 1) return from_permutations({}, 1, "S_1");
    std::vector<std::size_t> cyc(n), tr(n);
    for (std::size_t i = 0; i < n; ++i) {
      cyc[i] = (i + 1) % n;
      tr[i] = i;
    }
    std::swap(tr[0], tr[1]);
    return from_permutations({cyc, tr}, n, "S_" + std::to_string(n));
  }

  static FiniteGroup alternating4() { return from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}, 4, "A_4"); }
  static FiniteGroup klein_four() { return from_permutations({{1, 0, 3, 2}, {2, 3, 0, 1}}, 4, "V_4"); }

  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
    std::size_t ng = g.order(), nh = h.order();
    std::vector<std::vector<Element>> t(ng * nh, std::vector<Element>(ng * nh));
    for (std::size_t a = 0; a < ng * nh; ++a)
      for (std::size_t b = 0; b < ng * nh; ++b)
        t[a][b] = static_cast<Element>(g.mul(static_cast<Element>(a / nh), static_cast<Element>(b / nh)) * nh +
                                       h.mul(static_cast<Element>(a % nh), static_cast<Element>(b % nh)));
    FiniteGroup out(std::move(t), g.name() + "x" + h.name());
    return out;
  }

  std::size_t order() const { return table_.size(); }
  const std::string& name() const { return name_; }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return table_[a][b]; }
  Element inv(Element a) const { return inverse_[a]; }
  const std::vector<std::vector<Element>>& table() const { return table_; }
  // Permutation images when built from permutations, else empty.
  const std::vector<std::vector<std::size_t>>& permutations() const { return permutations_; }

  std::size_t element_order(Element a) const {
    std::size_t k = 1;
    for (Element x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  // Subgroup generated by `gens`, as a sorted element list.
  std::vector<Element> generated_by(const std::vector<Element>& gens) const {
    std::vector<bool> seen(order(), false);
    std::vector<Element> stack{identity_}, out;
    seen[identity_] = true;
    while (!stack.empty()) {
      Element x = stack.back();
      stack.pop_back();
      out.push_back(x);
      for (Element g : gens) {
        Element y = mul(x, g);
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Greedy generating set: repeatedly add the smallest element outside the
  // current subgroup.
  std::vector<Element> generators() const {
    std::vector<Element> gens;
    std::vector<Element> sub = generated_by(gens);
    while (sub.size() < order()) {
      Element next = 0;
      while (std::binary_search(sub.begin(), sub.end(), next)) ++next;
      gens.push_back(next);
      sub = generated_by(gens);
    }
    return gens;
  }

  bool is_abelian() const {
    for (Element a = 0; a < order(); ++a)
      for (Element b = 0; b < a; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

 private:
  void validate() {
    const std::size_t n = table_.size();
    if (n == 0) throw ValidationError("group must be non-empty");
    for (auto& row : table_) {
      if (row.size() != n) throw ValidationError("group table must be square");
      for (auto x : row)
        if (x >= n) throw ValidationError("group table entry out of range");
    }
    bool found = false;
    for (Element e = 0; e < n && !found; ++e) {
      bool ok = true;
      for (Element a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
      if (ok) {
        identity_ = e;
        found = true;
      }
    }
    if (!found) throw ValidationError("group table has no identity");
    inverse_.assign(n, 0);
    for (Element a = 0; a < n; ++a) {
      bool ok = false;
      for (Element b = 0; b < n; ++b)
        if (table_[a][b] == identity_) {
          if (table_[b][a] != identity_) throw ValidationError("left and right inverses differ");
          inverse_[a] = b;
          ok = true;
          break;
        }
      if (!ok) throw ValidationError("element without inverse");
    }
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) throw ValidationError("group table is not associative");
  }

  std::vector<std::vector<Element>> table_;
  std::string name_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
  std::vector<std::vector<std::size_t>> permutations_;
};

// Backtracking isomorphism test: images of a generating set determine the map.
inline bool groups_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  using E = FiniteGroup::Element;
  if (g.order() != h.order()) return false;
  if (g.is_abelian() != h.is_abelian()) return false;
  auto order_profile = [](const FiniteGroup& x) {
    std::vector<std::size_t> o;
    for (E a = 0; a < x.order(); ++a) o.push_back(x.element_order(a));
    std::sort(o.begin(), o.end());
    return o;
  };
  if (order_profile(g) != order_profile(h)) return false;
  auto gens = g.generators();
  // word for each element of g in terms of the generators (BFS)
  std::vector<std::vector<std::size_t>> word(g.order());
  std::vector<bool> seen(g.order(), false);
  std::vector<E> queue{g.identity()};
  seen[g.identity()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      E y = g.mul(queue[head], gens[k]);
      if (!seen[y]) {
        seen[y] = true;
        word[y] = word[queue[head]];
        word[y].push_back(k);
        queue.push_back(y);
      }
    }
  std::vector<E> images(gens.size());
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      std::vector<E> phi(g.order());
      std::vector<bool> hit(h.order(), false);
      for (E a = 0; a < g.order(); ++a) {
        E x = h.identity();
        for (auto w : word[a]) x = h.mul(x, images[w]);
        phi[a] = x;
        if (hit[x]) return false;
        hit[x] = true;
      }
      for (E a = 0; a < g.order(); ++a)
        for (E b = 0; b < g.order(); ++b)
          if (phi[g.mul(a, b)] != h.mul(phi[a], phi[b])) return false;
      return true;
    }
    for (E x = 0; x < h.order(); ++x) {
      if (h.element_order(x) != g.element_order(gens[k])) continue;
      images[k] = x;
      if (rec(k + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace homotor
