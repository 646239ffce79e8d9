#pragma once

// Path-model representation of TL_n(d) and B_n on walks over the line graph
// G_k (sites 1..k-1), with d = 2 cos(pi/k) and A = i exp(-i pi/(2k)).

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tlbraid/braid.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/kauffman.hpp"
#include "tlbraid/linalg.hpp"

namespace tlbraid {

struct ModelParams {
  int k = 0;
  double theta = 0.0;
  Complex a;  // A
  double d = 0.0;
  std::vector<double> lambda;  // lambda_j = sin(j theta), j = 0..k

  explicit ModelParams(int k_) : k(k_) {
    if (k < 3) throw DomainError("path model requires k >= 3");
    theta = kPi / k;
    a = kI * unit_phase(-theta / 2);
    d = 2 * std::cos(theta);
    lambda.resize(k + 1);
    for (int j = 0; j <= k; ++j) lambda[j] = std::sin(j * theta);
    lambda[0] = 0.0;
    lambda[k] = 0.0;
  }

  double lam(int j) const { return (j <= 0 || j >= k) ? 0.0 : lambda[j]; }
  Complex a_inv() const { return 1.0 / a; }
};

/// One walk: step j (0-based) is +1 or -1; site(j) is the position before step j.
struct PathState {
  std::vector<int> steps;
  std::vector<int> sites;  // length steps.size()+1, sites[0] == 1

  int end() const { return sites.back(); }
};

/// Canonically ordered walks of n steps on G_k from site 1.  The order is
/// lexicographic on the step sequence with +1 < -1.
class PathBasis {
 public:
  PathBasis(int n, int k, std::optional<int> endpoint = std::nullopt)
      : n_(n), k_(k), endpoint_(endpoint) {
    if (n < 0) throw DomainError("enumerate_basis: n must be non-negative");
    if (n > 62) throw DomainError("enumerate_basis: n too large");
    if (k < 3) throw DomainError("enumerate_basis: k must be at least 3");
    if (endpoint && (*endpoint < 1 || *endpoint > k - 1))
      throw DomainError("enumerate_basis: endpoint outside [1, k-1]");
    std::vector<int> steps;
    steps.reserve(n);
    enumerate(1, steps);
    for (std::size_t j = 0; j < keys_.size(); ++j) index_.emplace(keys_[j], static_cast<int>(j));
  }

  int steps() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::optional<int> endpoint() const noexcept { return endpoint_; }
  int size() const noexcept { return static_cast<int>(keys_.size()); }

  PathState path(int idx) const {
    PathState p;
    p.sites.push_back(1);
    for (int j = 0; j < n_; ++j) {
      int s = step(idx, j);
      p.steps.push_back(s);
      p.sites.push_back(p.sites.back() + s);
    }
    return p;
  }

  /// +1 or -1
  int step(int idx, int j) const { return ((keys_[idx] >> (n_ - 1 - j)) & 1u) ? -1 : 1; }
  /// site before step j (j may equal n for the endpoint)
  int site(int idx, int j) const { return sites_[static_cast<std::size_t>(idx) * (n_ + 1) + j]; }

  std::optional<int> index_of(const std::vector<int>& steps) const {
    if (static_cast<int>(steps.size()) != n_) return std::nullopt;
    std::uint64_t key = 0;
    for (int s : steps) key = (key << 1) | (s < 0 ? 1u : 0u);
    return index_of_key(key);
  }

  std::optional<int> index_of_key(std::uint64_t key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::uint64_t key(int idx) const { return keys_[idx]; }
  /// key of the path with steps j and j+1 exchanged
  std::uint64_t swapped_key(int idx, int j) const {
    const std::uint64_t mask = (std::uint64_t{3} << (n_ - 2 - j));
    return keys_[idx] ^ mask;
  }

 private:
  void enumerate(int site, std::vector<int>& steps) {
    if (static_cast<int>(steps.size()) == n_) {
      if (endpoint_ && site != *endpoint_) return;
      std::uint64_t key = 0;
      for (int s : steps) key = (key << 1) | (s < 0 ? 1u : 0u);
      keys_.push_back(key);
      int z = 1;
      sites_.push_back(z);
      for (int s : steps) sites_.push_back(z += s);
      return;
    }
    const int remaining = n_ - static_cast<int>(steps.size());
    for (int s : {1, -1}) {
      const int next = site + s;
      if (next < 1 || next > k_ - 1) continue;
      if (endpoint_ && std::abs(next - *endpoint_) > remaining - 1) continue;
      steps.push_back(s);
      enumerate(next, steps);
      steps.pop_back();
    }
  }

  int n_, k_;
  std::optional<int> endpoint_;
  std::vector<std::uint64_t> keys_;
  std::vector<int> sites_;
  std::unordered_map<std::uint64_t, int> index_;
};

inline PathBasis enumerate_basis(int n, int k, std::optional<int> endpoint = std::nullopt) {
  return PathBasis(n, k, endpoint);
}

/// Nonzero entry (row, value) of a column of Phi_i.
struct SparseEntry {
  int row;
  double value;
};

/// The representation on a fixed basis: sparse Phi_i columns plus helpers for
/// dense generator matrices and matrix-free application of braid words.
class PathModel {
 public:
  PathModel(int n, int k, std::optional<int> endpoint = 1)
      : params_(k), basis_(n, k, endpoint) {
    const int dim = basis_.size();
    phi_.assign(std::max(0, n - 1), std::vector<std::vector<SparseEntry>>(dim));
    for (int i = 1; i <= n - 1; ++i) {
      for (int p = 0; p < dim; ++p) {
        const int s1 = basis_.step(p, i - 1), s2 = basis_.step(p, i);
        if (s1 == s2) continue;  // up-up / down-down are annihilated
        const int z = basis_.site(p, i - 1);
        const double lz = params_.lam(z);
        const double off = std::sqrt(params_.lam(z + 1) * params_.lam(z - 1)) / lz;
        const double diag = (s1 < 0) ? params_.lam(z - 1) / lz : params_.lam(z + 1) / lz;
        auto& col = phi_[i - 1][p];
        col.push_back({p, diag});
        if (off != 0.0) {
          if (auto q = basis_.index_of_key(basis_.swapped_key(p, i - 1))) col.push_back({*q, off});
        }
      }
    }
  }

  const ModelParams& params() const noexcept { return params_; }
  const PathBasis& basis() const noexcept { return basis_; }
  int dim() const noexcept { return basis_.size(); }
  int strands() const noexcept { return basis_.steps(); }

  void check_index(int i) const {
    if (i < 1 || i > strands() - 1) throw DomainError("generator index out of range");
  }

  const std::vector<std::vector<SparseEntry>>& phi_columns(int i) const {
    check_index(i);
    return phi_[i - 1];
  }

  ComplexMatrix phi_matrix(int i) const {
    check_index(i);
    ComplexMatrix m = ComplexMatrix::Zero(dim(), dim());
    for (int p = 0; p < dim(); ++p)
      for (const auto& e : phi_[i - 1][p]) m(e.row, p) = e.value;
    return m;
  }

  /// rho(sigma_i) = A Phi_i + A^-1 for sign +1, its inverse (adjoint) for sign -1.
  ComplexMatrix rho_generator(int i, int sign = 1) const {
    const Complex a = sign > 0 ? params_.a : params_.a_inv();
    return a * phi_matrix(i) + (1.0 / a) * ComplexMatrix::Identity(dim(), dim());
  }

  /// v <- rho(letter) v
  void apply_letter(int letter, ComplexVector& v) const {
    const int i = std::abs(letter);
    check_index(i);
    const Complex a = letter > 0 ? params_.a : params_.a_inv();
    const Complex ainv = 1.0 / a;
    ComplexVector out = ainv * v;
    const auto& cols = phi_[i - 1];
    for (int p = 0; p < dim(); ++p) {
      if (v(p) == Complex(0.0)) continue;
      for (const auto& e : cols[p]) out(e.row) += a * e.value * v(p);
    }
    v.swap(out);
  }

  /// v <- rho(b) v, where rho(b) is the ordered product with the first letter leftmost.
  void apply_word(const std::vector<int>& letters, ComplexVector& v) const {
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) apply_letter(*it, v);
  }

  ComplexMatrix rho_of_letters(const std::vector<int>& letters) const {
    ComplexMatrix m = ComplexMatrix::Identity(dim(), dim());
    // right-multiply by each generator: M <- M rho(l)
    for (int l : letters) m = m * rho_generator(std::abs(l), l > 0 ? 1 : -1);
    return m;
  }

  ComplexMatrix rho_of_word(const BraidWord& b) const {
    if (b.strands != strands()) throw DomainError("rho_of_word: strand count mismatch");
    return rho_of_letters(b.letters);
  }

  /// index of the zig-zag path 1 -> 2 -> 1 -> 2 ...
  int zigzag_index() const {
    std::vector<int> steps(strands());
    for (int j = 0; j < strands(); ++j) steps[j] = (j % 2 == 0) ? 1 : -1;
    auto idx = basis_.index_of(steps);
    if (!idx) throw DomainError("zig-zag path not in basis");
    return *idx;
  }

 private:
  ModelParams params_;
  PathBasis basis_;
  std::vector<std::vector<std::vector<SparseEntry>>> phi_;
};

inline ComplexMatrix phi_matrix(int i, const PathModel& model) { return model.phi_matrix(i); }

inline ComplexMatrix rho_generator(int i, const PathModel& model, int sign) {
  return model.rho_generator(i, sign);
}

inline ComplexMatrix rho_of_word(const BraidWord& b, const PathModel& model) {
  return model.rho_of_word(b);
}

/// <alpha| rho(b) |alpha> on the endpoint-1 sector.
inline Complex alpha_expectation(const BraidWord& b, const PathModel& model) {
  if (b.strands % 2 != 0) throw DomainError("alpha_expectation: odd strand count");
  if (b.strands != model.strands()) throw DomainError("alpha_expectation: strand count mismatch");
  const int alpha = model.zigzag_index();
  ComplexVector v = ComplexVector::Zero(model.dim());
  v(alpha) = 1.0;
  model.apply_word(b.letters, v);
  return v(alpha);
}

inline Complex alpha_expectation(const BraidWord& b, int k) {
  if (b.strands % 2 != 0) throw DomainError("alpha_expectation: odd strand count");
  return alpha_expectation(b, PathModel(b.strands, k, 1));
}

/// dim H_{n,k,l} for l = 0..k (entries 0 and k are always zero).
inline std::vector<double> sector_dimensions(int n, int k) {
  if (k < 3) throw DomainError("k must be at least 3");
  std::vector<double> count(k + 1, 0.0);
  count[1] = 1.0;
  for (int s = 0; s < n; ++s) {
    std::vector<double> next(k + 1, 0.0);
    for (int z = 1; z <= k - 1; ++z) {
      if (z - 1 >= 1) next[z - 1] += count[z];
      if (z + 1 <= k - 1) next[z + 1] += count[z];
    }
    count.swap(next);
  }
  return count;
}

/// N = sum_l lambda_l dim H_{n,k,l}
inline double big_n(int n, int k) {
  if (n < 0) throw DomainError("big_n: n must be non-negative");
  const ModelParams p(k);
  const auto dims = sector_dimensions(n, k);
  double total = 0.0;
  for (int l = 1; l <= k - 1; ++l) total += p.lam(l) * dims[l];
  return total;
}

/// The approximation scale (lambda_1 / N) d^{n-1} (-A)^{3w}.
inline Complex delta_scale(const BraidWord& b, int k) {
  if (b.strands % 2 != 0) throw DomainError("delta_scale: odd strand count");
  const ModelParams p(k);
  const int n = b.strands;
  const int w = writhe(b);
  return p.lam(1) / big_n(n, k) * std::pow(p.d, n - 1) * std::pow(-p.a, 3 * w);
}

}  // namespace tlbraid
