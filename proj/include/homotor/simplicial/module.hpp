#pragma once

// Simplicial modules truncated at level D, Dold-Kan, normalized and
// unnormalized chains, homotopy groups.

#include <string>
#include <vector>

#include "homotor/complexes.hpp"
#include "homotor/simplicial/delta.hpp"

namespace homotor::simplicial {

class TruncatedSimplicialModule {
 public:
  // faces[n][i] = d_i: M_n -> M_{n-1} for 1 <= n <= D (faces[0] empty);
  // degeneracies[n][j] = s_j: M_n -> M_{n+1} for 0 <= n < D.
  TruncatedSimplicialModule(CoefficientRing ring, int D, std::vector<std::size_t> dims,
                            std::vector<std::vector<Matrix>> faces, std::vector<std::vector<Matrix>> degeneracies)
      : ring_(ring), D_(D), dims_(std::move(dims)), faces_(std::move(faces)), degens_(std::move(degeneracies)) {
    check_shapes();
    check_identities();
  }

  // Constant simplicial module on k^dim.
  static TruncatedSimplicialModule constant(CoefficientRing ring, std::size_t dim, int D) {
    std::vector<std::vector<Matrix>> faces(static_cast<std::size_t>(D) + 1), degens(static_cast<std::size_t>(D) + 1);
    for (int n = 1; n <= D; ++n) faces[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, Matrix::identity(ring, dim));
    for (int n = 0; n < D; ++n) degens[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, Matrix::identity(ring, dim));
    return TruncatedSimplicialModule(ring, D, std::vector<std::size_t>(static_cast<std::size_t>(D) + 1, dim), std::move(faces),
                                     std::move(degens));
  }

  const CoefficientRing& ring() const { return ring_; }
  int level_bound() const { return D_; }
  std::size_t dim(int n) const { return dims_.at(static_cast<std::size_t>(n)); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const Matrix& face(int n, int i) const { return faces_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i)); }
  const Matrix& degeneracy(int n, int j) const {
    return degens_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(j));
  }
  const std::vector<std::vector<Matrix>>& faces() const { return faces_; }
  const std::vector<std::vector<Matrix>>& degeneracies() const { return degens_; }

  // theta^*: M_n -> M_m for theta: [m] -> [n].
  Matrix pullback(const OrderMap& theta) const {
    if (theta.source() > D_ || theta.target > D_) throw TruncationError("pullback beyond level " + std::to_string(D_));
    Matrix out = Matrix::identity(ring_, dim(theta.target));
    for (auto& op : elementary_factorization(theta))
      out = (op.kind == Elementary::face ? face(op.level, op.index) : degeneracy(op.level, op.index)) * out;
    return out;
  }

  friend bool operator==(const TruncatedSimplicialModule& a, const TruncatedSimplicialModule& b) {
    return a.ring_ == b.ring_ && a.D_ == b.D_ && a.dims_ == b.dims_ && a.faces_ == b.faces_ && a.degens_ == b.degens_;
  }

 private:
  void check_shapes() const {
    if (D_ < 0) throw ValidationError("truncation level must be non-negative");
    const auto L = static_cast<std::size_t>(D_) + 1;
    if (dims_.size() != L) throw ValidationError("need one dimension per level 0..D");
    if (faces_.size() != L || degens_.size() != L) throw ValidationError("face/degeneracy arrays must have D+1 levels");
    for (int n = 0; n <= D_; ++n) {
      const auto& fs = faces_[static_cast<std::size_t>(n)];
      const auto& ss = degens_[static_cast<std::size_t>(n)];
      if (fs.size() != (n == 0 ? 0u : static_cast<std::size_t>(n) + 1))
        throw ValidationError("level " + std::to_string(n) + " has the wrong number of faces");
      if (ss.size() != (n == D_ ? 0u : static_cast<std::size_t>(n) + 1))
        throw ValidationError("level " + std::to_string(n) + " has the wrong number of degeneracies");
      for (auto& f : fs) {
        require_same_ring(f.ring(), ring_, "simplicial face");
        if (f.rows() != dim(n - 1) || f.cols() != dim(n))
          throw ValidationError("face at level " + std::to_string(n) + " has the wrong shape");
      }
      for (auto& s : ss) {
        require_same_ring(s.ring(), ring_, "simplicial degeneracy");
        if (s.rows() != dim(n + 1) || s.cols() != dim(n))
          throw ValidationError("degeneracy at level " + std::to_string(n) + " has the wrong shape");
      }
    }
  }

  void fail(const std::string& what, int n, int i, int j) const {
    throw ValidationError("simplicial identity " + what + " fails at level " + std::to_string(n) + " (i=" + std::to_string(i) +
                          ", j=" + std::to_string(j) + ")");
  }

  void check_identities() const {
    for (int n = 0; n <= D_; ++n) {
      // d_i d_j = d_{j-1} d_i, i < j, on M_n
      if (n >= 2)
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i)
            if (face(n - 1, i) * face(n, j) != face(n - 1, j - 1) * face(n, i)) fail("d_i d_j = d_{j-1} d_i", n, i, j);
      if (n + 1 > D_) continue;
      for (int j = 0; j <= n; ++j) {
        const Matrix& s = degeneracy(n, j);
        // d_j s_j = d_{j+1} s_j = id
        Matrix id = Matrix::identity(ring_, dim(n));
        if (face(n + 1, j) * s != id) fail("d_j s_j = id", n, j, j);
        if (face(n + 1, j + 1) * s != id) fail("d_{j+1} s_j = id", n, j + 1, j);
        for (int i = 0; i <= n + 1; ++i) {
          if (i < j) {
            // d_i s_j = s_{j-1} d_i
            if (face(n + 1, i) * s != degeneracy(n - 1, j - 1) * face(n, i)) fail("d_i s_j = s_{j-1} d_i", n, i, j);
          } else if (i > j + 1) {
            // d_i s_j = s_j d_{i-1}
            if (face(n + 1, i) * s != degeneracy(n - 1, j) * face(n, i - 1)) fail("d_i s_j = s_j d_{i-1}", n, i, j);
          }
        }
        // s_i s_j = s_{j+1} s_i, i <= j
        if (n + 2 <= D_)
          for (int i = 0; i <= j; ++i)
            if (degeneracy(n + 1, i) * s != degeneracy(n + 1, j + 1) * degeneracy(n, i)) fail("s_i s_j = s_{j+1} s_i", n, i, j);
      }
    }
  }

  CoefficientRing ring_;
  int D_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix>> faces_;
  std::vector<std::vector<Matrix>> degens_;
};

// DK(C)_n = sum over surjections [n] ->> [k] of C_k, summands in step-code
// order. On the summand of sigma, theta^* factors sigma o theta = d o t and
// acts by identity if d = id, by (-1)^k partial_k if d is the last coface
// delta^k: [k-1] -> [k], and by zero otherwise. The sign makes N(DK(C)) = C
// on the nose with N's differential (-1)^n d_n.
class DoldKanLayout {
 public:
  DoldKanLayout(const ChainComplex& c, int D) : c_(c), D_(D) {
    if (D > 20) throw TruncationError("Dold-Kan level bound above 20");
    for (int n = 0; n <= D; ++n) {
      std::vector<std::size_t> off{0};
      for (std::uint32_t code = 0; code < (1u << n); ++code) off.push_back(off.back() + c.dim(code_rank(code)));
      offsets_.push_back(std::move(off));
    }
  }
  std::size_t dim(int n) const { return offsets_[static_cast<std::size_t>(n)].back(); }
  std::size_t offset(int n, std::uint32_t code) const { return offsets_[static_cast<std::size_t>(n)][code]; }

  Matrix structure_map(const OrderMap& theta) const {
    const auto& ring = c_.ring();
    int n = theta.target, m = theta.source();
    Matrix out(ring, dim(m), dim(n));
    for (std::uint32_t code = 0; code < (1u << n); ++code) {
      int k = code_rank(code);
      std::size_t ck = c_.dim(k);
      if (ck == 0) continue;
      auto sigma = surjection_from_code(n, code);
      auto em = epi_mono(compose(sigma, theta));
      int s = em.epi.target;
      std::size_t src = offset(n, code), tgt = offset(m, step_code(em.epi));
      if (s == k) {
        for (std::size_t a = 0; a < ck; ++a) out.set(tgt + a, src + a, 1);
      } else if (s == k - 1 && em.mono == coface(k, k)) {
        Matrix dk = c_.d(k);
        if (k % 2 != 0) dk = dk.scaled(-1);
        out.put_block(tgt, src, dk);
      }
    }
    return out;
  }

 private:
  const ChainComplex& c_;
  int D_;
  std::vector<std::vector<std::size_t>> offsets_;
};

inline TruncatedSimplicialModule dold_kan(const ChainComplex& c, int D) {
  if (D < 0) throw ValidationError("level bound must be non-negative");
  if (c.lo() < 0 && c.trimmed().lo() < 0) throw ValidationError("Dold-Kan needs a complex concentrated in degrees >= 0");
  DoldKanLayout layout(c, D);
  std::vector<std::size_t> dims;
  std::vector<std::vector<Matrix>> faces(static_cast<std::size_t>(D) + 1), degens(static_cast<std::size_t>(D) + 1);
  for (int n = 0; n <= D; ++n) {
    dims.push_back(layout.dim(n));
    if (n >= 1)
      for (int i = 0; i <= n; ++i) faces[static_cast<std::size_t>(n)].push_back(layout.structure_map(coface(n, i)));
    if (n < D)
      for (int j = 0; j <= n; ++j) degens[static_cast<std::size_t>(n)].push_back(layout.structure_map(codegeneracy(n, j)));
  }
  return TruncatedSimplicialModule(c.ring(), D, std::move(dims), std::move(faces), std::move(degens));
}

// N(M) together with the basis of each N_n inside M_n.
struct Normalization {
  ChainComplex complex;
  std::vector<std::vector<Vector>> basis;          // basis[n] lies in M_n
  std::vector<std::vector<std::size_t>> free_cols;  // coordinates of x in N_n are x at these columns

  Vector coords(int n, const Vector& x) const {
    const auto& cols = free_cols[static_cast<std::size_t>(n)];
    const auto& b = basis[static_cast<std::size_t>(n)];
    const auto& ring = complex.ring();
    Vector out;
    Vector back(x.size(), 0);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out.push_back(x[cols[i]]);
      axpy(ring, back, x[cols[i]], b[i]);
    }
    if (back != x) throw InvariantFailure("vector is not in the normalized subcomplex");
    return out;
  }
  Vector embed(int n, const Vector& y) const {
    const auto& b = basis[static_cast<std::size_t>(n)];
    Vector out(b.empty() ? 0 : b[0].size(), 0);
    if (b.empty()) return out;
    for (std::size_t i = 0; i < b.size(); ++i) axpy(complex.ring(), out, y[i], b[i]);
    return out;
  }
};

inline Normalization normalization(const TruncatedSimplicialModule& m) {
  const auto& ring = m.ring();
  const int D = m.level_bound();
  std::vector<std::vector<Vector>> basis;
  std::vector<std::vector<std::size_t>> free_cols;
  for (int n = 0; n <= D; ++n) {
    if (n == 0) {
      std::vector<Vector> b;
      std::vector<std::size_t> cols;
      for (std::size_t i = 0; i < m.dim(0); ++i) {
        b.push_back(unit_vector(m.dim(0), i));
        cols.push_back(i);
      }
      basis.push_back(std::move(b));
      free_cols.push_back(std::move(cols));
      continue;
    }
    Matrix stacked(ring, 0, m.dim(n));
    for (int i = 0; i < n; ++i) stacked = vstack(stacked, m.face(n, i));
    basis.push_back(kernel_basis(stacked));
    free_cols.push_back(kernel_free_columns(stacked));
  }
  std::vector<std::size_t> dims;
  for (auto& b : basis) dims.push_back(b.size());
  Normalization result{ChainComplex::zero(ring), std::move(basis), std::move(free_cols)};
  std::vector<Matrix> diffs;
  for (int n = 1; n <= D; ++n) {
    Matrix d = m.face(n, n);
    if (n % 2 != 0) d = d.scaled(-1);
    const auto& src = result.basis[static_cast<std::size_t>(n)];
    Matrix out(ring, dims[static_cast<std::size_t>(n - 1)], src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      auto y = result.coords(n - 1, d.apply(src[j]));
      for (std::size_t i = 0; i < y.size(); ++i) out.set(i, j, y[i]);
    }
    diffs.push_back(std::move(out));
  }
  result.complex = ChainComplex(ring, 0, std::move(dims), std::move(diffs));
  return result;
}

inline ChainComplex normalize(const TruncatedSimplicialModule& m) { return normalization(m).complex; }

// C(M)_n = M_n with differential sum_i (-1)^i d_i.
inline ChainComplex unnormalized_chains(const TruncatedSimplicialModule& m) {
  const auto& ring = m.ring();
  std::vector<Matrix> diffs;
  for (int n = 1; n <= m.level_bound(); ++n) {
    Matrix d(ring, m.dim(n - 1), m.dim(n));
    for (int i = 0; i <= n; ++i) d = d + (i % 2 == 0 ? m.face(n, i) : m.face(n, i).scaled(-1));
    diffs.push_back(std::move(d));
  }
  return ChainComplex(ring, 0, m.dims(), std::move(diffs));
}

// pi_n for n < D. Asking beyond the window throws; it is never reported as zero.
class HomotopyGroups {
 public:
  HomotopyGroups(int D, std::vector<ModuleInvariants> groups) : D_(D), groups_(std::move(groups)) {}
  int known_below() const { return D_; }
  const ModuleInvariants& at(int n) const {
    if (n < 0) throw ValidationError("negative homotopy degree");
    if (n >= D_) throw TruncationError("pi_" + std::to_string(n) + " is unknown at truncation level " + std::to_string(D_));
    return groups_[static_cast<std::size_t>(n)];
  }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (auto& g : groups_) out.push_back(g.dim());
    return out;
  }

 private:
  int D_;
  std::vector<ModuleInvariants> groups_;
};

inline HomotopyGroups homotopy_groups(const TruncatedSimplicialModule& m) {
  // Over Z/p^e the normalized subcomplex need not be free; C(M) always is.
  ChainComplex c = m.ring().is_field() ? normalize(m) : unnormalized_chains(m);
  std::vector<ModuleInvariants> groups;
  for (int n = 0; n < m.level_bound(); ++n) groups.push_back(homology(c, n));
  return HomotopyGroups(m.level_bound(), std::move(groups));
}

// Level-wise direct sum.
inline TruncatedSimplicialModule direct_sum(const TruncatedSimplicialModule& a, const TruncatedSimplicialModule& b) {
  require_same_ring(a.ring(), b.ring(), "direct sum");
  if (a.level_bound() != b.level_bound()) throw ValidationError("direct sum needs equal truncation levels");
  int D = a.level_bound();
  std::vector<std::size_t> dims;
  std::vector<std::vector<Matrix>> faces(static_cast<std::size_t>(D) + 1), degens(static_cast<std::size_t>(D) + 1);
  for (int n = 0; n <= D; ++n) {
    dims.push_back(a.dim(n) + b.dim(n));
    if (n >= 1)
      for (int i = 0; i <= n; ++i) faces[static_cast<std::size_t>(n)].push_back(block_diag(a.face(n, i), b.face(n, i)));
    if (n < D)
      for (int j = 0; j <= n; ++j) degens[static_cast<std::size_t>(n)].push_back(block_diag(a.degeneracy(n, j), b.degeneracy(n, j)));
  }
  return TruncatedSimplicialModule(a.ring(), D, std::move(dims), std::move(faces), std::move(degens));
}

// B^2 of an elementary abelian group presented as F_p^r: DK(Z[2]).
inline TruncatedSimplicialModule abelian_b2(CoefficientRing field, std::size_t rank, int D) {
  require_field(field, "abelian_b2");
  if (D < 3) throw ValidationError("abelian_b2 needs D >= 3");
  return dold_kan(ChainComplex::concentrated(field, 2, rank), D);
}

}  // namespace homotor::simplicial
