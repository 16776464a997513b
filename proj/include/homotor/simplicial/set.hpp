#pragma once

// Truncated simplicial sets: standard simplices, horns, boundaries, nerves of
// finite groups, simplicial maps, horn filling and pi_1 of reduced Kan complexes.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "homotor/group.hpp"
#include "homotor/simplicial/delta.hpp"

namespace homotor::simplicial {

using Index = std::uint32_t;
using IndexMap = std::vector<Index>;

class TruncatedSimplicialSet {
 public:
  // faces[n][i]: X_n -> X_{n-1} (1 <= n <= D), degeneracies[n][j]: X_n -> X_{n+1} (n < D).
  TruncatedSimplicialSet(int D, std::vector<std::size_t> sizes, std::vector<std::vector<IndexMap>> faces,
                         std::vector<std::vector<IndexMap>> degeneracies, std::string name = "X")
      : D_(D), sizes_(std::move(sizes)), faces_(std::move(faces)), degens_(std::move(degeneracies)), name_(std::move(name)) {
    check_shapes();
    check_identities();
  }

  int level_bound() const { return D_; }
  std::size_t size(int n) const { return sizes_.at(static_cast<std::size_t>(n)); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  Index face(int n, int i, Index x) const { return faces_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][x]; }
  Index degeneracy(int n, int j, Index x) const { return degens_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)][x]; }
  const std::vector<std::vector<IndexMap>>& faces() const { return faces_; }
  const std::vector<std::vector<IndexMap>>& degeneracies() const { return degens_; }
  const std::string& name() const { return name_; }

  bool is_degenerate(int n, Index x) const {
    for (int j = 0; j < n; ++j)
      if (degeneracy(n - 1, j, face(n, j, x)) == x) return true;
    return false;
  }

 private:
  void check_shapes() const {
    if (D_ < 0) throw ValidationError("truncation level must be non-negative");
    const auto L = static_cast<std::size_t>(D_) + 1;
    if (sizes_.size() != L || faces_.size() != L || degens_.size() != L) throw ValidationError("simplicial set needs data for levels 0..D");
    for (int n = 0; n <= D_; ++n) {
      const auto& fs = faces_[static_cast<std::size_t>(n)];
      const auto& ss = degens_[static_cast<std::size_t>(n)];
      if (fs.size() != (n == 0 ? 0u : static_cast<std::size_t>(n) + 1)) throw ValidationError("wrong number of face maps");
      if (ss.size() != (n == D_ ? 0u : static_cast<std::size_t>(n) + 1)) throw ValidationError("wrong number of degeneracy maps");
      for (auto& f : fs) {
        if (f.size() != size(n)) throw ValidationError("face map has the wrong domain size");
        for (auto v : f)
          if (v >= size(n - 1)) throw ValidationError("face map value out of range");
      }
      for (auto& s : ss) {
        if (s.size() != size(n)) throw ValidationError("degeneracy map has the wrong domain size");
        for (auto v : s)
          if (v >= size(n + 1)) throw ValidationError("degeneracy map value out of range");
      }
    }
  }

  void fail(const std::string& what, int n, int i, int j) const {
    throw ValidationError("simplicial identity " + what + " fails at level " + std::to_string(n) + " (i=" + std::to_string(i) +
                          ", j=" + std::to_string(j) + ")");
  }

  void check_identities() const {
    for (int n = 0; n <= D_; ++n)
      for (Index x = 0; x < size(n); ++x) {
        if (n >= 2)
          for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
              if (face(n - 1, i, face(n, j, x)) != face(n - 1, j - 1, face(n, i, x))) fail("d_i d_j = d_{j-1} d_i", n, i, j);
        if (n + 1 > D_) continue;
        for (int j = 0; j <= n; ++j) {
          Index s = degeneracy(n, j, x);
          if (face(n + 1, j, s) != x || face(n + 1, j + 1, s) != x) fail("d_j s_j = d_{j+1} s_j = id", n, j, j);
          for (int i = 0; i <= n + 1; ++i) {
            if (i < j && face(n + 1, i, s) != degeneracy(n - 1, j - 1, face(n, i, x))) fail("d_i s_j = s_{j-1} d_i", n, i, j);
            if (i > j + 1 && face(n + 1, i, s) != degeneracy(n - 1, j, face(n, i - 1, x))) fail("d_i s_j = s_j d_{i-1}", n, i, j);
          }
          if (n + 2 <= D_)
            for (int i = 0; i <= j; ++i)
              if (degeneracy(n + 1, i, s) != degeneracy(n + 1, j + 1, degeneracy(n, i, x))) fail("s_i s_j = s_{j+1} s_i", n, i, j);
        }
      }
  }

  int D_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<IndexMap>> faces_;
  std::vector<std::vector<IndexMap>> degens_;
  std::string name_;
};

// Level-wise maps commuting with faces and degeneracies.
class SimplicialSetMap {
 public:
  SimplicialSetMap(std::shared_ptr<const TruncatedSimplicialSet> source, std::shared_ptr<const TruncatedSimplicialSet> target,
                   std::vector<IndexMap> levels)
      : source_(std::move(source)), target_(std::move(target)), levels_(std::move(levels)) {
    validate();
  }

  const TruncatedSimplicialSet& source() const { return *source_; }
  const TruncatedSimplicialSet& target() const { return *target_; }
  int level_bound() const { return std::min(source_->level_bound(), target_->level_bound()); }
  Index operator()(int n, Index x) const { return levels_[static_cast<std::size_t>(n)][x]; }

 private:
  void validate() const {
    const int D = level_bound();
    if (levels_.size() < static_cast<std::size_t>(D) + 1) throw ValidationError("simplicial map needs every level up to D");
    for (int n = 0; n <= D; ++n) {
      const auto& f = levels_[static_cast<std::size_t>(n)];
      if (f.size() != source_->size(n)) throw ValidationError("simplicial map has the wrong domain size");
      for (auto v : f)
        if (v >= target_->size(n)) throw ValidationError("simplicial map value out of range");
      for (Index x = 0; x < source_->size(n); ++x) {
        if (n >= 1)
          for (int i = 0; i <= n; ++i)
            if ((*this)(n - 1, source_->face(n, i, x)) != target_->face(n, i, f[x]))
              throw ValidationError("map does not commute with d_" + std::to_string(i) + " at level " + std::to_string(n));
        if (n < D)
          for (int j = 0; j <= n; ++j)
            if ((*this)(n + 1, source_->degeneracy(n, j, x)) != target_->degeneracy(n, j, f[x]))
              throw ValidationError("map does not commute with s_" + std::to_string(j) + " at level " + std::to_string(n));
      }
    }
  }

  std::shared_ptr<const TruncatedSimplicialSet> source_, target_;
  std::vector<IndexMap> levels_;
};

namespace detail {

// Sub-simplicial set of Delta^n on the simplices accepted by `keep` (which
// must be closed under faces and degeneracies), with its inclusion data.
struct DeltaSub {
  std::vector<std::vector<std::vector<int>>> simplices;  // per level, monotone sequences
  std::vector<std::map<std::vector<int>, Index>> index;
};

inline DeltaSub delta_simplices(int n, int D, const std::function<bool(const std::vector<int>&)>& keep) {
  DeltaSub out;
  for (int m = 0; m <= D; ++m) {
    std::vector<std::vector<int>> level;
    std::vector<int> seq(static_cast<std::size_t>(m) + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int min) {
      if (pos > m) {
        if (keep(seq)) level.push_back(seq);
        return;
      }
      for (int v = min; v <= n; ++v) {
        seq[static_cast<std::size_t>(pos)] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
    std::map<std::vector<int>, Index> idx;
    for (std::size_t i = 0; i < level.size(); ++i) idx.emplace(level[i], static_cast<Index>(i));
    out.simplices.push_back(std::move(level));
    out.index.push_back(std::move(idx));
  }
  return out;
}

inline TruncatedSimplicialSet delta_subcomplex(int n, int D, const std::function<bool(const std::vector<int>&)>& keep, std::string name) {
  auto sub = delta_simplices(n, D, keep);
  std::vector<std::size_t> sizes;
  std::vector<std::vector<IndexMap>> faces(static_cast<std::size_t>(D) + 1), degens(static_cast<std::size_t>(D) + 1);
  for (int m = 0; m <= D; ++m) {
    const auto& level = sub.simplices[static_cast<std::size_t>(m)];
    sizes.push_back(level.size());
    if (m >= 1)
      for (int i = 0; i <= m; ++i) {
        IndexMap f;
        for (auto& s : level) {
          auto t = s;
          t.erase(t.begin() + i);
          f.push_back(sub.index[static_cast<std::size_t>(m - 1)].at(t));
        }
        faces[static_cast<std::size_t>(m)].push_back(std::move(f));
      }
    if (m < D)
      for (int j = 0; j <= m; ++j) {
        IndexMap f;
        for (auto& s : level) {
          auto t = s;
          t.insert(t.begin() + j, s[static_cast<std::size_t>(j)]);
          f.push_back(sub.index[static_cast<std::size_t>(m + 1)].at(t));
        }
        degens[static_cast<std::size_t>(m)].push_back(std::move(f));
      }
  }
  return TruncatedSimplicialSet(D, std::move(sizes), std::move(faces), std::move(degens), std::move(name));
}

inline bool covers_all_but(const std::vector<int>& s, int n, int skip) {
  std::vector<bool> hit(static_cast<std::size_t>(n) + 1, false);
  for (int v : s) hit[static_cast<std::size_t>(v)] = true;
  for (int v = 0; v <= n; ++v)
    if (v != skip && !hit[static_cast<std::size_t>(v)]) return false;
  return true;
}

}  // namespace detail

// Delta^n truncated at level D; level m lists monotone maps [m] -> [n] in lex order.
inline TruncatedSimplicialSet standard_simplex(int n, int D) {
  if (n < 0) throw ValidationError("negative simplex dimension");
  return detail::delta_subcomplex(n, D, [](const std::vector<int>&) { return true; }, "Delta^" + std::to_string(n));
}

// Boundary of Delta^n: simplices missing at least one vertex.
inline TruncatedSimplicialSet boundary_simplex(int n, int D) {
  if (n < 1) throw ValidationError("boundary needs n >= 1");
  return detail::delta_subcomplex(n, D, [n](const std::vector<int>& s) { return !detail::covers_all_but(s, n, -1); },
                                  "dDelta^" + std::to_string(n));
}

// Horn Lambda^n_k: simplices whose image together with k is not all of [n].
inline TruncatedSimplicialSet horn(int n, int k, int D) {
  if (n < 1 || k < 0 || k > n) throw ValidationError("horn needs 0 <= k <= n, n >= 1");
  return detail::delta_subcomplex(n, D, [n, k](const std::vector<int>& s) { return !detail::covers_all_but(s, n, k); },
                                  "Lambda^" + std::to_string(n) + "_" + std::to_string(k));
}

// Inclusion of a subcomplex of Delta^n built by the helpers above into Delta^n.
inline SimplicialSetMap inclusion_into_simplex(std::shared_ptr<const TruncatedSimplicialSet> sub, int n, int k_or_minus1) {
  const int D = sub->level_bound();
  auto full = std::make_shared<const TruncatedSimplicialSet>(standard_simplex(n, D));
  auto keep = [n, k_or_minus1](const std::vector<int>& s) { return !detail::covers_all_but(s, n, k_or_minus1); };
  auto small = detail::delta_simplices(n, D, keep);
  auto big = detail::delta_simplices(n, D, [](const std::vector<int>&) { return true; });
  std::vector<IndexMap> levels;
  for (int m = 0; m <= D; ++m) {
    IndexMap f;
    for (auto& s : small.simplices[static_cast<std::size_t>(m)]) f.push_back(big.index[static_cast<std::size_t>(m)].at(s));
    if (f.size() != sub->size(m)) throw ValidationError("subcomplex does not match the requested horn or boundary");
    levels.push_back(std::move(f));
  }
  return SimplicialSetMap(std::move(sub), std::move(full), std::move(levels));
}

// Nerve: level n = G^n as tuples (g_1..g_n), index big-endian mixed radix.
// d_0 drops g_1, d_i multiplies g_i g_{i+1}, d_n drops g_n, s_j inserts e at slot j.
inline TruncatedSimplicialSet nerve(const FiniteGroup& g, int D) {
  if (D < 0) throw ValidationError("truncation level must be non-negative");
  const std::size_t q = g.order();
  double total = 1;
  for (int n = 0; n < D; ++n) total *= static_cast<double>(q);
  if (total > 5e6) throw BudgetExceeded("nerve level " + std::to_string(D) + " too large", total);
  auto decode = [&](Index idx, int n) {
    std::vector<Index> t(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = static_cast<Index>(idx % q);
      idx = static_cast<Index>(idx / q);
    }
    return t;
  };
  auto encode = [&](const std::vector<Index>& t) {
    Index idx = 0;
    for (auto x : t) idx = static_cast<Index>(idx * q + x);
    return idx;
  };
  std::vector<std::size_t> sizes;
  std::vector<std::vector<IndexMap>> faces(static_cast<std::size_t>(D) + 1), degens(static_cast<std::size_t>(D) + 1);
  std::size_t sz = 1;
  for (int n = 0; n <= D; ++n) {
    sizes.push_back(sz);
    if (n >= 1)
      for (int i = 0; i <= n; ++i) {
        IndexMap f(sz);
        for (Index x = 0; x < sz; ++x) {
          auto t = decode(x, n);
          if (i == 0) {
            t.erase(t.begin());
          } else if (i == n) {
            t.pop_back();
          } else {
            t[static_cast<std::size_t>(i - 1)] = g.mul(t[static_cast<std::size_t>(i - 1)], t[static_cast<std::size_t>(i)]);
            t.erase(t.begin() + i);
          }
          f[x] = encode(t);
        }
        faces[static_cast<std::size_t>(n)].push_back(std::move(f));
      }
    if (n < D)
      for (int j = 0; j <= n; ++j) {
        IndexMap f(sz);
        for (Index x = 0; x < sz; ++x) {
          auto t = decode(x, n);
          t.insert(t.begin() + j, g.identity());
          f[x] = encode(t);
        }
        degens[static_cast<std::size_t>(n)].push_back(std::move(f));
      }
    sz *= q;
  }
  return TruncatedSimplicialSet(D, std::move(sizes), std::move(faces), std::move(degens), "B" + g.name());
}

// Nerve of a homomorphism phi: G -> H given by images of all elements.
inline SimplicialSetMap nerve_map(const FiniteGroup& g, const FiniteGroup& h, const std::vector<FiniteGroup::Element>& phi, int D) {
  if (phi.size() != g.order()) throw ValidationError("homomorphism needs one image per element");
  for (FiniteGroup::Element a = 0; a < g.order(); ++a) {
    if (phi[a] >= h.order()) throw ValidationError("homomorphism image out of range");
    for (FiniteGroup::Element b = 0; b < g.order(); ++b)
      if (phi[g.mul(a, b)] != h.mul(phi[a], phi[b])) throw ValidationError("map of groups is not a homomorphism");
  }
  auto src = std::make_shared<const TruncatedSimplicialSet>(nerve(g, D));
  auto tgt = std::make_shared<const TruncatedSimplicialSet>(nerve(h, D));
  std::vector<IndexMap> levels;
  std::size_t sz = 1;
  for (int n = 0; n <= D; ++n) {
    IndexMap f(sz);
    for (Index x = 0; x < sz; ++x) {
      Index idx = x, out = 0, place = 1;
      for (int i = 0; i < n; ++i) {
        out += static_cast<Index>(phi[idx % g.order()] * place);
        idx = static_cast<Index>(idx / g.order());
        place = static_cast<Index>(place * h.order());
      }
      f[x] = out;
    }
    levels.push_back(std::move(f));
    sz *= g.order();
  }
  return SimplicialSetMap(std::move(src), std::move(tgt), std::move(levels));
}

// S^1 = Delta^1 / dDelta^1: the base point plus the maps [n] -> [1] that
// hit both vertices. Reduced, and not Kan.
inline TruncatedSimplicialSet circle(int D) {
  auto sub = detail::delta_simplices(1, D, [](const std::vector<int>& s) { return s.front() != s.back(); });
  auto index_of = [&](int m, const std::vector<int>& s) -> Index {
    if (s.front() == s.back()) return 0;
    return sub.index[static_cast<std::size_t>(m)].at(s) + 1;
  };
  std::vector<std::size_t> sizes;
  std::vector<std::vector<IndexMap>> faces(static_cast<std::size_t>(D) + 1), degens(static_cast<std::size_t>(D) + 1);
  for (int m = 0; m <= D; ++m) {
    std::vector<std::vector<int>> level{std::vector<int>(static_cast<std::size_t>(m) + 1, 0)};
    for (auto& s : sub.simplices[static_cast<std::size_t>(m)]) level.push_back(s);
    sizes.push_back(level.size());
    if (m >= 1)
      for (int i = 0; i <= m; ++i) {
        IndexMap f;
        for (auto& s : level) {
          auto t = s;
          t.erase(t.begin() + i);
          f.push_back(index_of(m - 1, t));
        }
        faces[static_cast<std::size_t>(m)].push_back(std::move(f));
      }
    if (m < D)
      for (int j = 0; j <= m; ++j) {
        IndexMap f;
        for (auto& s : level) {
          auto t = s;
          t.insert(t.begin() + j, s[static_cast<std::size_t>(j)]);
          f.push_back(index_of(m + 1, t));
        }
        degens[static_cast<std::size_t>(m)].push_back(std::move(f));
      }
  }
  return TruncatedSimplicialSet(D, std::move(sizes), std::move(faces), std::move(degens), "S^1");
}

// Map to Delta^0.
inline SimplicialSetMap to_point(std::shared_ptr<const TruncatedSimplicialSet> x) {
  auto pt = std::make_shared<const TruncatedSimplicialSet>(standard_simplex(0, x->level_bound()));
  std::vector<IndexMap> levels;
  for (int n = 0; n <= x->level_bound(); ++n) levels.emplace_back(x->size(n), 0);
  return SimplicialSetMap(std::move(x), std::move(pt), std::move(levels));
}

struct HornFillReport {
  bool ok = true;
  std::size_t problems_checked = 0;
  int level = -1;  // failing n
  int k = -1;
  std::vector<Index> horn;  // faces (x_i)_{i != k} in X_{n-1}
  Index target = 0;         // y in Y_n

  std::string describe() const {
    if (ok) return "all " + std::to_string(problems_checked) + " horn lifting problems solved";
    std::ostringstream s;
    s << "no filler for Lambda^" << level << "_" << k << " with faces (";
    for (std::size_t i = 0; i < horn.size(); ++i) s << (i ? "," : "") << horn[i];
    s << ") over simplex " << target;
    return s.str();
  }
};

// Enumerates every lifting problem Lambda^n_k -> X, Delta^n -> Y for
// 1 <= n <= max_level and reports the first one without a solution.
inline HornFillReport horn_fill_check(const SimplicialSetMap& f, int max_level, double budget = 2e7) {
  const auto& X = f.source();
  const auto& Y = f.target();
  max_level = std::min(max_level, f.level_bound());
  HornFillReport report;
  for (int n = 1; n <= max_level; ++n)
    for (int k = 0; k <= n; ++k) {
      auto horn_key = [&](const auto& S, Index x) {
        std::vector<Index> key;
        for (int i = 0; i <= n; ++i)
          if (i != k) key.push_back(S.face(n, i, x));
        return key;
      };
      std::map<std::vector<Index>, std::vector<Index>> fills;  // X-horn -> f(fillers)
      for (Index x = 0; x < X.size(n); ++x) fills[horn_key(X, x)].push_back(f(n, x));
      std::map<std::vector<Index>, std::vector<Index>> targets;  // Y-horn -> simplices
      for (Index y = 0; y < Y.size(n); ++y) targets[horn_key(Y, y)].push_back(y);

      std::vector<int> slots;
      for (int i = 0; i <= n; ++i)
        if (i != k) slots.push_back(i);
      std::vector<Index> chosen(slots.size());
      bool failed = false;
      std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (failed) return;
        if (pos == slots.size()) {
          std::vector<Index> image;
          for (std::size_t a = 0; a < slots.size(); ++a) image.push_back(f(n - 1, chosen[a]));
          auto it = targets.find(image);
          if (it == targets.end()) return;
          auto fit = fills.find(chosen);
          for (Index y : it->second) {
            ++report.problems_checked;
            if (static_cast<double>(report.problems_checked) > budget)
              throw BudgetExceeded("horn filling enumeration exceeds budget", static_cast<double>(report.problems_checked));
            bool solved = fit != fills.end() && std::find(fit->second.begin(), fit->second.end(), y) != fit->second.end();
            if (!solved) {
              report = HornFillReport{false, report.problems_checked, n, k, chosen, y};
              failed = true;
              return;
            }
          }
          return;
        }
        int j = slots[pos];
        for (Index x = 0; x < X.size(n - 1); ++x) {
          // compatibility d_a x_j = d_{j-1} x_a for earlier slots a < j
          bool ok = true;
          if (n >= 2)
            for (std::size_t b = 0; b < pos && ok; ++b) {
              int a = slots[b];
              ok = X.face(n - 1, a, x) == X.face(n - 1, j - 1, chosen[b]);
            }
          if (!ok) continue;
          chosen[pos] = x;
          rec(pos + 1);
          if (failed) return;
        }
      };
      rec(0);
      if (failed) return report;
    }
  return report;
}

inline HornFillReport kan_check(std::shared_ptr<const TruncatedSimplicialSet> x, int max_level) {
  return horn_fill_check(to_point(std::move(x)), max_level);
}

// pi_1 of a reduced Kan complex by edge paths: classes of 1-simplices, with
// [x][y] = [d_1 w] for any 2-simplex w having d_2 w = x and d_0 w = y.
inline FiniteGroup pi1(std::shared_ptr<const TruncatedSimplicialSet> x) {
  const auto& X = *x;
  if (X.level_bound() < 3) throw ValidationError("pi_1 needs truncation level >= 3");
  if (X.size(0) != 1) throw ValidationError("pi_1 is only implemented for reduced simplicial sets");
  auto kan = kan_check(x, 3);
  if (!kan.ok) throw ValidationError("refusing pi_1 on a non-Kan complex: " + kan.describe());
  const Index base = X.degeneracy(0, 0, 0);
  std::vector<Index> parent(X.size(1));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Index(Index)> find = [&](Index a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (Index w = 0; w < X.size(2); ++w)
    if (X.face(2, 0, w) == base) parent[find(X.face(2, 2, w))] = find(X.face(2, 1, w));
  std::map<Index, FiniteGroup::Element> cls;
  std::vector<Index> reps;
  for (Index e = 0; e < X.size(1); ++e) {
    Index r = find(e);
    if (!cls.count(r)) {
      cls.emplace(r, static_cast<FiniteGroup::Element>(reps.size()));
      reps.push_back(r);
    }
  }
  const std::size_t n = reps.size();
  std::vector<std::vector<FiniteGroup::Element>> table(n, std::vector<FiniteGroup::Element>(n, static_cast<FiniteGroup::Element>(n)));
  for (Index w = 0; w < X.size(2); ++w) {
    auto a = cls.at(find(X.face(2, 2, w))), b = cls.at(find(X.face(2, 0, w))), c = cls.at(find(X.face(2, 1, w)));
    if (table[a][b] == n)
      table[a][b] = c;
    else if (table[a][b] != c)
      throw InvariantFailure("edge-path product is not well defined");
  }
  return FiniteGroup(std::move(table), "pi1(" + X.name() + ")");
}

}  // namespace homotor::simplicial
