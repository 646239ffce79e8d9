#pragma once

// epsilon-nets: words over a generating set whose evaluations are pairwise more
// than eps/2 apart projectively, together with a sampled coverage certificate.

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "tlbraid/density/generators.hpp"
#include "tlbraid/density/quaternion.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/linalg.hpp"

namespace tlbraid {

struct NetEntry {
  GeneratorWord word;
  ComplexMatrix matrix;
  double dist_check = 0.0;  // projdist(matrix, evaluate(word))
};

struct CoverageCertificate {
  int samples = 0;
  int covered = 0;
  double fraction = 0.0;
  double eps = 0.0;
  unsigned seed = 0;
};

/// Lower bound on proj_distance from the trace: sqrt(2 - 2|tr(U^dagger V)|/d).
inline double proj_distance_lower_bound(const ComplexMatrix& u, const ComplexMatrix& v) {
  const double d = static_cast<double>(u.rows());
  const double t = std::abs((u.adjoint() * v).trace());
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * t / d));
}

struct EpsilonNet {
  double eps = 0.0;
  int max_len = 0;
  bool commutators = false;  // every entry is a group commutator of two words
  GeneratorSet generators;
  std::vector<NetEntry> entries;
  CoverageCertificate coverage;

  int dim() const { return generators.dim(); }
  std::size_t size() const noexcept { return entries.size(); }

  /// index and projective distance of the closest entry
  std::pair<std::size_t, double> nearest(const ComplexMatrix& target) const {
    if (entries.empty()) throw DomainError("nearest: empty net");
    if (use_index()) {
      sync_index();
      const auto [id, d] = index_->nearest(to_quaternion(su_project_unchecked(target)), eps);
      if (id >= 0) return {static_cast<std::size_t>(id), d};
    }
    std::size_t best = 0;
    double best_d = 1e300;
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (proj_distance_lower_bound(entries[j].matrix, target) >= best_d) continue;
      const double d = proj_distance_unchecked(entries[j].matrix, target);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    return {best, best_d};
  }

  /// true when some entry lies within `radius` of m
  bool covers(const ComplexMatrix& m, double radius) const {
    if (use_index() && radius <= eps) {
      sync_index();
      return index_->nearest(to_quaternion(su_project_unchecked(m)), radius).first >= 0;
    }
    for (const auto& e : entries) {
      if (proj_distance_lower_bound(e.matrix, m) > radius) continue;
      if (proj_distance_unchecked(e.matrix, m) <= radius) return true;
    }
    return false;
  }

 private:
  // SU(2) nets keep a grid index over the entries; rebuilt lazily after edits
  bool use_index() const { return !entries.empty() && entries[0].matrix.rows() == 2 && eps > 0; }
  void sync_index() const {
    if (!index_ || indexed_ > entries.size()) {
      index_.emplace(eps);
      indexed_ = 0;
    }
    for (; indexed_ < entries.size(); ++indexed_)
      index_->insert(to_quaternion(su_project_unchecked(entries[indexed_].matrix)), static_cast<int>(indexed_));
  }
  mutable std::optional<QuaternionIndex> index_;
  mutable std::size_t indexed_ = 0;
};

struct NetOptions {
  std::size_t max_entries = 200000;
  int coverage_samples = 1000;
  unsigned seed = 2024;
  int max_base = 400;  // base words for commutator nets
};

/// Fraction of Haar-random unitaries within net.eps of some entry.
inline CoverageCertificate certify_coverage(const EpsilonNet& net, int samples, unsigned seed) {
  CoverageCertificate c;
  c.samples = samples;
  c.eps = net.eps;
  c.seed = seed;
  std::mt19937 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix u = haar_unitary(net.dim(), rng);
    if (net.covers(u, net.eps)) ++c.covered;
  }
  c.fraction = samples > 0 ? static_cast<double>(c.covered) / samples : 0.0;
  return c;
}

namespace detail {

/// letters in increasing signed order, so breadth-first discovery breaks ties
/// by shorter word, then lexicographically
inline std::vector<int> ordered_letters(int m) {
  std::vector<int> letters;
  for (int g = m; g >= 1; --g) letters.push_back(-g);
  for (int g = 1; g <= m; ++g) letters.push_back(g);
  return letters;
}

inline bool try_insert(EpsilonNet& net, GeneratorWord word, ComplexMatrix m) {
  if (net.covers(m, net.eps / 2)) return false;
  NetEntry e;
  e.word = std::move(word);
  e.dist_check = proj_distance_unchecked(m, net.generators.evaluate(e.word));
  e.matrix = std::move(m);
  net.entries.push_back(std::move(e));
  return true;
}

}  // namespace detail

/// Breadth-first enumeration of words up to max_len, expanding only words that
/// were kept after deduplication at eps/2.
inline EpsilonNet build_net(const GeneratorSet& gens, double eps, int max_len, const NetOptions& opt = {}) {
  if (!(eps > 0)) throw DomainError("build_net: eps must be positive");
  if (max_len < 0) throw DomainError("build_net: max_len must be non-negative");
  EpsilonNet net;
  net.eps = eps;
  net.max_len = max_len;
  net.generators = gens;
  const int d = gens.dim();
  detail::try_insert(net, {}, ComplexMatrix::Identity(d, d));
  const auto letters = detail::ordered_letters(gens.size());
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty() && net.size() < opt.max_entries) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    if (static_cast<int>(net.entries[cur].word.size()) >= max_len) continue;
    for (int l : letters) {
      const auto& w = net.entries[cur].word;
      if (!w.empty() && w.back() == -l) continue;
      ComplexMatrix m = net.entries[cur].matrix * gens.letter(l);
      if (detail::try_insert(net, concat(w, {l}), std::move(m))) frontier.push_back(net.size() - 1);
      if (net.size() >= opt.max_entries) break;
    }
  }
  net.coverage = certify_coverage(net, opt.coverage_samples, opt.seed);
  return net;
}

/// Net whose entries are group commutators [u, v] of breadth-first words of
/// length <= base_len.
inline EpsilonNet build_commutator_net(const GeneratorSet& gens, double eps, int base_len,
                                       const NetOptions& opt = {}) {
  if (!(eps > 0)) throw DomainError("build_commutator_net: eps must be positive");
  // base material, deduplicated finely so distinct group elements survive
  NetOptions base_opt = opt;
  base_opt.max_entries = static_cast<std::size_t>(opt.max_base);
  base_opt.coverage_samples = 0;
  const EpsilonNet base = build_net(gens, eps / 4, base_len, base_opt);

  EpsilonNet net;
  net.eps = eps;
  net.max_len = 4 * base_len;
  net.commutators = true;
  net.generators = gens;
  const int d = gens.dim();
  detail::try_insert(net, {}, ComplexMatrix::Identity(d, d));
  const auto& b = base.entries;
  for (std::size_t j = 1; j < b.size() && net.size() < opt.max_entries; ++j)
    for (std::size_t i = 0; i < j && net.size() < opt.max_entries; ++i) {
      ComplexMatrix m = b[i].matrix * b[j].matrix * b[i].matrix.adjoint() * b[j].matrix.adjoint();
      if (net.covers(m, eps / 2)) continue;
      detail::try_insert(net, commutator_word(b[i].word, b[j].word), std::move(m));
    }
  net.coverage = certify_coverage(net, opt.coverage_samples, opt.seed);
  return net;
}

}  // namespace tlbraid
