#pragma once

// The simplex category: order-preserving maps [m] -> [n], epi-mono
// factorization, decomposition into elementary faces and degeneracies,
// surjection enumeration and (m,n)-shuffles.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "homotor/errors.hpp"

namespace homotor::simplicial {

// theta: [m] -> [n] stored as its values theta(0..m).
struct OrderMap {
  int target = 0;
  std::vector<int> values;

  int source() const { return static_cast<int>(values.size()) - 1; }
  bool is_identity() const {
    if (source() != target) return false;
    for (int i = 0; i <= target; ++i)
      if (values[static_cast<std::size_t>(i)] != i) return false;
    return true;
  }
  friend bool operator==(const OrderMap&, const OrderMap&) = default;
};

inline OrderMap identity_map(int n) {
  OrderMap t{n, {}};
  for (int i = 0; i <= n; ++i) t.values.push_back(i);
  return t;
}

// delta^i: [n-1] -> [n], skips i.
inline OrderMap coface(int n, int i) {
  OrderMap t{n, {}};
  for (int j = 0; j < n; ++j) t.values.push_back(j < i ? j : j + 1);
  return t;
}

// sigma^j: [n+1] -> [n], hits j twice.
inline OrderMap codegeneracy(int n, int j) {
  OrderMap t{n, {}};
  for (int k = 0; k <= n + 1; ++k) t.values.push_back(k <= j ? k : k - 1);
  return t;
}

// (a o b)(x) = a(b(x)).
inline OrderMap compose(const OrderMap& a, const OrderMap& b) {
  if (b.target != a.source()) throw std::invalid_argument("compose: maps are not composable");
  OrderMap t{a.target, {}};
  for (int v : b.values) t.values.push_back(a.values[static_cast<std::size_t>(v)]);
  return t;
}

struct EpiMono {
  OrderMap epi;   // [m] ->> [s]
  OrderMap mono;  // [s] >-> [n]
};

inline EpiMono epi_mono(const OrderMap& theta) {
  EpiMono f{{0, {}}, {theta.target, {}}};
  for (std::size_t j = 0; j < theta.values.size(); ++j) {
    if (j == 0 || theta.values[j] != theta.values[j - 1]) f.mono.values.push_back(theta.values[j]);
    f.epi.values.push_back(static_cast<int>(f.mono.values.size()) - 1);
  }
  f.epi.target = f.mono.source();
  return f;
}

// Step code of a surjection sigma: [n] ->> [k]: bit (n - i) holds
// sigma(i) - sigma(i-1), so lexicographic order on step vectors is numeric
// order on codes. The identity is the largest code 2^n - 1.
inline std::uint32_t step_code(const OrderMap& sigma) {
  std::uint32_t code = 0;
  int n = sigma.source();
  for (int i = 1; i <= n; ++i)
    if (sigma.values[static_cast<std::size_t>(i)] != sigma.values[static_cast<std::size_t>(i - 1)]) code |= 1u << (n - i);
  return code;
}

inline OrderMap surjection_from_code(int n, std::uint32_t code) {
  OrderMap t{0, {0}};
  for (int i = 1; i <= n; ++i) t.values.push_back(t.values.back() + static_cast<int>((code >> (n - i)) & 1u));
  t.target = t.values.back();
  return t;
}

inline int code_rank(std::uint32_t code) { return std::popcount(code); }

// All surjections [n] ->> [k], lexicographic in step vectors.
inline std::vector<OrderMap> surjections(int n, int k) {
  if (n > 24) throw TruncationError("surjection enumeration beyond level 24");
  std::vector<OrderMap> out;
  for (std::uint32_t c = 0; c < (1u << n); ++c)
    if (code_rank(c) == k) out.push_back(surjection_from_code(n, c));
  return out;
}

// Elementary operator acting on a simplicial object, applied in list order.
struct Elementary {
  enum Kind { face, degeneracy } kind;
  int index;
  int level;  // level of the input
};

// theta^*: X_n -> X_m written as elementary operators in application order.
// theta = mono o epi; for mono missing c_1 < ... < c_r the faces go
// d_{c_r} first, for epi flat at j_1 < ... < j_t the degeneracies go s_{j_1} first.
inline std::vector<Elementary> elementary_factorization(const OrderMap& theta) {
  auto em = epi_mono(theta);
  std::vector<Elementary> ops;
  int level = theta.target;
  std::vector<int> missing;
  {
    std::size_t k = 0;
    for (int v = 0; v <= theta.target; ++v) {
      if (k < em.mono.values.size() && em.mono.values[k] == v)
        ++k;
      else
        missing.push_back(v);
    }
  }
  for (auto it = missing.rbegin(); it != missing.rend(); ++it) ops.push_back({Elementary::face, *it, level--});
  for (int j = 0; j + 1 < static_cast<int>(em.epi.values.size()); ++j)
    if (em.epi.values[static_cast<std::size_t>(j)] == em.epi.values[static_cast<std::size_t>(j + 1)])
      ops.push_back({Elementary::degeneracy, j, level++});
  return ops;
}

// (sigma, tau) in P_{m,n}: sigma_1 < ... < sigma_m and tau_1 < ... < tau_n
// partition {1..m+n}; sign is the parity of the permutation (sigma, tau).
struct Shuffle {
  std::vector<int> sigma, tau;
  int sign = 1;
};

inline int permutation_sign(const std::vector<int>& seq) {
  std::size_t inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

inline std::vector<Shuffle> shuffles(int m, int n) {
  std::vector<Shuffle> out;
  int total = m + n;
  if (total > 24) throw TruncationError("shuffle enumeration beyond 24");
  for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
    if (std::popcount(mask) != m) continue;
    Shuffle s;
    for (int i = 1; i <= total; ++i) ((mask >> (i - 1)) & 1u ? s.sigma : s.tau).push_back(i);
    std::vector<int> seq = s.sigma;
    seq.insert(seq.end(), s.tau.begin(), s.tau.end());
    s.sign = permutation_sign(seq);
    out.push_back(std::move(s));
  }
  return out;
}

// The surjection [m+n] ->> [m] of an increasing sequence 1 <= c_1 < ... < c_m <= m+n:
// j maps to #{i : c_i <= j}.
inline OrderMap shuffle_surjection(const std::vector<int>& c, int total) {
  OrderMap t{static_cast<int>(c.size()), {}};
  for (int j = 0; j <= total; ++j) {
    int count = 0;
    for (int ci : c)
      if (ci <= j) ++count;
    t.values.push_back(count);
  }
  return t;
}

}  // namespace homotor::simplicial
