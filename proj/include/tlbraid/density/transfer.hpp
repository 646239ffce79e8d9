#pragma once

// Auxiliary generators (the k -> infinity eigenvectors with level-k0
// eigenvalues) and the transfer of a commutator net over them to level k by
// replacing each auxiliary letter with 2m copies of the level-k generator.

#include <cmath>
#include <string>
#include <vector>

#include "tlbraid/density/generators.hpp"
#include "tlbraid/density/net.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/linalg.hpp"
#include "tlbraid/pathmodel.hpp"

namespace tlbraid {

namespace detail {

inline ComplexMatrix two_by_two(double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace detail

/// Diagonalizing matrix of the 2x2 blocks of Phi_i at level k, site z, in the
/// basis order (up-down, down-up).
inline ComplexMatrix m_matrix(int k, int z) {
  const ModelParams p(k);
  if (z < 1 || z > k - 2) throw DomainError("m_matrix: site out of range");
  const double up = p.lam(z + 1), down = p.lam(z - 1);
  const double s = std::sqrt(up + down);
  return detail::two_by_two(std::sqrt(up) / s, -std::sqrt(down) / s, std::sqrt(down) / s, std::sqrt(up) / s);
}

/// k -> infinity limit: (1/sqrt(2z)) [[sqrt(z+1), -sqrt(z-1)], [sqrt(z-1), sqrt(z+1)]].
inline ComplexMatrix m_infinity(int z) {
  if (z < 1) throw DomainError("m_infinity: site must be positive");
  const double s = std::sqrt(2.0 * z);
  return detail::two_by_two(std::sqrt(z + 1.0) / s, -std::sqrt(z - 1.0) / s, std::sqrt(z - 1.0) / s,
                            std::sqrt(z + 1.0) / s);
}

/// m = floor(((2 + k0)/k0) / (4/k))
inline int transfer_m(int k, int k0) {
  if (k < 3 || k0 < 3) throw DomainError("transfer_m: levels must be at least 3");
  return static_cast<int>((static_cast<long long>(2 + k0) * k) / (4LL * k0));
}

inline void check_aux_level(int k0) {
  if (k0 < 3) throw DomainError("auxiliary level k0 must be at least 5");
  if (k0 == 3 || k0 == 4 || k0 == 6)
    throw FiniteImageError("auxiliary level k0 = " + std::to_string(k0) + " has a finite image");
}

/// The auxiliary generator hat-rho_i on H_{8,k,1}.
inline ComplexMatrix aux_generator(int i, int k0) {
  check_aux_level(k0);
  if (i < 1 || i > 7) throw DomainError("aux_generator: index out of range");
  // the 14 paths are the same for every k >= 7; a wide graph gives the
  // k -> infinity zero pattern
  const PathBasis basis(8, 64, 1);
  const Complex a0 = root_parameter(k0);
  const Complex ainv = 1.0 / a0;
  const Complex nontrivial = -unit_phase(-2 * kPi / k0);
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = nontrivial;
  diag(1, 1) = 1.0;
  const int dim = basis.size();
  ComplexMatrix r = ComplexMatrix::Zero(dim, dim);
  for (int p = 0; p < dim; ++p) {
    const int s1 = basis.step(p, i - 1), s2 = basis.step(p, i);
    if (s1 == s2) {
      r(p, p) = ainv;
      continue;
    }
    const int z = basis.site(p, i - 1);
    if (z == 1) {
      r(p, p) = ainv * nontrivial;  // up-down from site 1 has no partner
      continue;
    }
    if (s1 < 0) continue;  // filled from the up-down partner
    const int q = *basis.index_of_key(basis.swapped_key(p, i - 1));
    const ComplexMatrix mz = m_infinity(z);
    const ComplexMatrix block = ainv * mz * diag * mz.adjoint();
    r(p, p) = block(0, 0);
    r(p, q) = block(0, 1);
    r(q, p) = block(1, 0);
    r(q, q) = block(1, 1);
  }
  return r;
}

/// hat-rho_{generators}, optionally restricted to a labelled invariant block.
inline GeneratorSet aux_generators(int k0, std::vector<int> generators = {1, 2, 3, 4, 5, 6, 7},
                                   std::vector<int> labels = {}) {
  check_aux_level(k0);
  const std::vector<int> idx = labels.empty() ? std::vector<int>{} : label_indices(7, labels);
  GeneratorSet g;
  g.name = "rho_hat";
  g.provenance = "auxiliary k0=" + std::to_string(k0);
  g.level = k0;
  for (int i : generators) {
    ComplexMatrix r = aux_generator(i, k0);
    if (!idx.empty()) {
      check_block_invariant(r, idx);
      r = restrict_to(r, idx);
    }
    g.elements.push_back(std::move(r));
    g.generator_index.push_back(i);
  }
  g.labels = std::move(labels);
  g.finalize();
  return g;
}

/// Numerical stand-ins for the level thresholds: how far M_k is from M_inf
/// and how far the level-k eigenvalue power is from the level-k0 one.
struct TransferBounds {
  int m = 0;
  double eigen_mismatch = 0.0;  // |e^{-i pi (2+k0)/k0} - e^{-4 m pi i / k}|
  double m_deviation = 0.0;     // max_z |M_k(z) - M_inf(z)|, z = 2..5
  double letter_bound = 0.0;    // 2 m_deviation + eigen_mismatch
  double letter_measured = 0.0; // max_i projdist(rho_i^{2m}, hat-rho_i)
};

inline TransferBounds transfer_bounds(int k, int k0) {
  check_aux_level(k0);
  if (k < 7) throw DomainError("transfer: level k must be at least 7");
  TransferBounds b;
  b.m = transfer_m(k, k0);
  b.eigen_mismatch = std::abs(unit_phase(-kPi * (2.0 + k0) / k0) - unit_phase(-4.0 * b.m * kPi / k));
  for (int z = 2; z <= 5; ++z) b.m_deviation = std::max(b.m_deviation, operator_norm(m_matrix(k, z) - m_infinity(z)));
  b.letter_bound = 2 * b.m_deviation + b.eigen_mismatch;
  const PathModel model(8, k, 1);
  for (int i = 1; i <= 7; ++i)
    b.letter_measured = std::max(
        b.letter_measured, proj_distance(matrix_power(model.rho_generator(i, 1), 2LL * b.m), aux_generator(i, k0)));
  return b;
}

struct TransferOptions {
  bool strict = true;  // throw when an entry deviates by more than eps/2
  bool certify = true;
  int coverage_samples = 1000;
  unsigned seed = 2024;
};

struct TransferResult {
  EpsilonNet net;
  TransferBounds bounds;
  double max_proj_deviation = 0.0;
  double max_plain_deviation = 0.0;  // operator norm, no phase freedom
  std::size_t worst_entry = 0;
  std::vector<double> deviations;
};

/// Replaces each letter of each hat-net word by 2m copies of the level-k
/// generator with the same index and verifies every entry.
inline TransferResult transfer_net(const EpsilonNet& hat, int k, int k0, const TransferOptions& opt = {}) {
  if (hat.generators.provenance.rfind("auxiliary", 0) != 0)
    throw DomainError("transfer_net: the source net must be built from auxiliary generators");
  if (hat.generators.level != k0) throw DomainError("transfer_net: net level differs from k0");
  TransferResult res;
  res.bounds = transfer_bounds(k, k0);
  const long long reps = 2LL * res.bounds.m;
  const GeneratorSet gens = path_model_generators(k, hat.generators.generator_index, hat.generators.labels);

  res.net.eps = hat.eps;
  res.net.max_len = static_cast<int>(hat.max_len * reps);
  res.net.commutators = hat.commutators;
  res.net.generators = gens;
  for (std::size_t j = 0; j < hat.entries.size(); ++j) {
    const auto& src = hat.entries[j];
    NetEntry e;
    for (int l : src.word) e.word.insert(e.word.end(), static_cast<std::size_t>(reps), l);
    e.matrix = gens.evaluate(e.word);
    e.dist_check = 0.0;
    const double dev = proj_distance(e.matrix, src.matrix);
    const double plain = operator_norm(e.matrix - src.matrix);
    res.deviations.push_back(dev);
    if (dev > res.max_proj_deviation) {
      res.max_proj_deviation = dev;
      res.worst_entry = j;
    }
    res.max_plain_deviation = std::max(res.max_plain_deviation, plain);
    if (opt.strict && dev > hat.eps / 2) {
      std::string w;
      for (int l : src.word) w += (w.empty() ? "" : " ") + std::to_string(l);
      throw TransferError("transfer_net: entry " + std::to_string(j) + " [" + w + "] deviates by " +
                          std::to_string(dev) + " > eps/2 at k = " + std::to_string(k));
    }
    res.net.entries.push_back(std::move(e));
  }
  if (opt.certify) res.net.coverage = certify_coverage(res.net, opt.coverage_samples, opt.seed);
  return res;
}

}  // namespace tlbraid
