#pragma once

// Exhaustive enumeration of liftings rho: G -> GL_n(k[e]) of rhobar, with
// k[e] = k[t]/(t^2). A lifting is rho(g) = rhobar(g) + e B(g); it is fixed by
// the B on a generating set, so p^{n^2 #gens} candidates are tried.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>
#include <vector>

#include "homotor/galois/cohomology.hpp"

namespace homotor::galois {

struct LiftingBudget {
  double max_states = 1e7;
  unsigned threads = 0;  // 0: HOMOTOR_THREADS or hardware concurrency
};

struct LiftingCount {
  std::size_t candidates = 0;
  std::size_t liftings = 0;
  std::size_t orbits = 0;                           // under conjugation by 1 + e gl_n
  std::map<std::size_t, std::size_t> orbit_sizes;   // size -> number of orbits
  std::size_t stabilizer_order = 0;                 // |{Y : Y commutes with rhobar}|
  CocycleDims dims;
  std::size_t p_pow_z1 = 0;
  std::size_t p_pow_h1 = 0;
  bool count_matches = false;   // liftings == p^{dim Z^1}
  bool h1_asserted = false;     // H^0 = z, so orbits are compared with p^{dim H^1}
  bool orbit_matches = false;
};

inline unsigned thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HOMOTOR_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : std::min(h, 8u);
}

inline LiftingCount brute_force_liftings(const Representation& rho, const LiftingBudget& budget = {}) {
  const auto& G = *rho.group();
  const auto& k = rho.field();
  const std::size_t n = rho.n(), n2 = n * n;
  const auto p = static_cast<std::size_t>(k.modulus());
  const auto gens = G.generators();
  const double states = std::pow(static_cast<double>(p), static_cast<double>(n2 * gens.size()));
  if (states > budget.max_states)
    throw BudgetExceeded("lifting enumeration needs " + std::to_string(static_cast<long double>(states)) + " states", states);
  const std::size_t total = static_cast<std::size_t>(states + 0.5);

  // word for each element in the generators, by breadth-first search
  std::vector<std::vector<std::size_t>> word(G.order());
  {
    std::vector<bool> seen(G.order(), false);
    std::vector<Element> queue{G.identity()};
    seen[G.identity()] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Element y = G.mul(queue[head], gens[g]);
        if (!seen[y]) {
          seen[y] = true;
          word[y] = word[queue[head]];
          word[y].push_back(g);
          queue.push_back(y);
        }
      }
  }
  auto decode = [&](std::size_t code) {
    std::vector<Matrix> B;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Matrix b(k, n, n);
      for (std::size_t i = 0; i < n2; ++i) {
        b.set(i / n, i % n, static_cast<Scalar>(code % p));
        code /= p;
      }
      B.push_back(std::move(b));
    }
    return B;
  };
  // rho(g) = A + e B multiplies as (A + eB)(C + eD) = AC + e(AD + BC)
  auto is_lifting = [&](std::size_t code) {
    auto Bg = decode(code);
    std::vector<Matrix> A(G.order(), Matrix(k, n, n)), B(G.order(), Matrix(k, n, n));
    for (Element x = 0; x < G.order(); ++x) {
      Matrix a = Matrix::identity(k, n), b(k, n, n);
      for (auto g : word[x]) {
        const Matrix& ga = rho(gens[g]);
        b = a * Bg[g] + b * ga;
        a = a * ga;
      }
      A[x] = std::move(a);
      B[x] = std::move(b);
    }
    for (Element x = 0; x < G.order(); ++x)
      for (Element y = 0; y < G.order(); ++y) {
        Element xy = G.mul(x, y);
        if (A[x] * B[y] + B[x] * A[y] != B[xy]) return false;
      }
    return true;
  };

  const unsigned T = std::max(1u, std::min<unsigned>(thread_count(budget.threads), static_cast<unsigned>(std::max<std::size_t>(1, total / 64))));
  std::vector<std::vector<std::size_t>> found(T);
  {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < T; ++t)
      pool.emplace_back([&, t] {
        const std::size_t lo = total * t / T, hi = total * (t + 1) / T;
        for (std::size_t c = lo; c < hi; ++c)
          if (is_lifting(c)) found[t].push_back(c);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<std::size_t> lifts;
  for (auto& f : found) lifts.insert(lifts.end(), f.begin(), f.end());

  LiftingCount out;
  out.candidates = total;
  out.liftings = lifts.size();

  // conjugation by 1 + eY sends B(g) to B(g) + Y A(g) - A(g) Y on generators
  auto encode = [&](const std::vector<Matrix>& B) {
    std::size_t code = 0, place = 1;
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (std::size_t i = 0; i < n2; ++i) {
        code += static_cast<std::size_t>(B[g](i / n, i % n)) * place;
        place *= p;
      }
    return code;
  };
  const std::size_t ny = static_cast<std::size_t>(std::pow(static_cast<double>(p), static_cast<double>(n2)) + 0.5);
  std::vector<bool> seen(lifts.size(), false);
  out.stabilizer_order = 0;
  for (std::size_t y = 0; y < ny; ++y) {
    Matrix Y(k, n, n);
    std::size_t c = y;
    for (std::size_t i = 0; i < n2; ++i) {
      Y.set(i / n, i % n, static_cast<Scalar>(c % p));
      c /= p;
    }
    bool commutes = true;
    for (auto g : gens) commutes = commutes && Y * rho(g) == rho(g) * Y;
    if (commutes) ++out.stabilizer_order;
  }
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    if (seen[i]) continue;
    ++out.orbits;
    auto B = decode(lifts[i]);
    std::size_t size = 0;
    for (std::size_t y = 0; y < ny; ++y) {
      Matrix Y(k, n, n);
      std::size_t c = y;
      for (std::size_t e = 0; e < n2; ++e) {
        Y.set(e / n, e % n, static_cast<Scalar>(c % p));
        c /= p;
      }
      std::vector<Matrix> C;
      for (std::size_t g = 0; g < gens.size(); ++g) C.push_back(B[g] + Y * rho(gens[g]) - rho(gens[g]) * Y);
      auto it = std::lower_bound(lifts.begin(), lifts.end(), encode(C));
      if (it == lifts.end() || *it != encode(C)) throw InvariantFailure("conjugate of a lifting is not a lifting");
      auto j = static_cast<std::size_t>(it - lifts.begin());
      if (!seen[j]) {
        seen[j] = true;
        ++size;
      }
    }
    ++out.orbit_sizes[size];
  }

  out.dims = z1_b1_h1(rho);
  out.p_pow_z1 = power(p, static_cast<int>(out.dims.z1));
  out.p_pow_h1 = power(p, static_cast<int>(out.dims.h1));
  out.count_matches = out.liftings == out.p_pow_z1;
  out.h1_asserted = out.dims.h0 == 1;
  out.orbit_matches = out.orbits == out.p_pow_h1;
  return out;
}

}  // namespace homotor::galois
