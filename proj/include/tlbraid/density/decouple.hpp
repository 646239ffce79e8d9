#pragma once

// Search for a word acting as a chosen unitary on one representation and as
// (nearly) the identity on another.  Near-kernel elements of tau_b come from
// powers of short words and from commutators and conjugates of such elements;
// a beam search then multiplies them together to steer tau_a onto the target.

#include <algorithm>
#include <random>
#include <vector>

#include "tlbraid/density/generators.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/linalg.hpp"

namespace tlbraid {

struct DecoupleOptions {
  int base_elements = 2000;  // breadth-first words used as raw material
  int max_power = 64;
  int kernel_size = 300;     // near-kernel elements kept
  int beam_width = 16;
  double kernel_tol = 0.0;   // max tau_b distance of a kernel element; 0 means eps / 4
  unsigned seed = 5;
};

struct DecoupleResult {
  GeneratorWord word;
  double dist_a = 0.0;  // projdist(tau_a(w), target)
  double dist_b = 0.0;  // projdist(tau_b(w), 1)
  bool success = false;
  long long evaluations = 0;
};

namespace detail {

struct PairElement {
  GeneratorWord word;
  ComplexMatrix a, b;
  double db = 0.0;
};

}  // namespace detail

/// Best-effort: returns the best word found; success when both distances < eps.
inline DecoupleResult decouple_search(const GeneratorSet& tau_a, const GeneratorSet& tau_b,
                                      const ComplexMatrix& target_a, double eps, long long budget,
                                      const DecoupleOptions& opt = {}) {
  if (tau_a.size() != tau_b.size()) throw DomainError("decouple_search: representations differ in size");
  if (target_a.rows() != tau_a.dim()) throw DomainError("decouple_search: target dimension mismatch");
  if (!(eps > 0)) throw DomainError("decouple_search: eps must be positive");
  require_unitary(target_a, "decouple_search");
  const int da = tau_a.dim(), dbim = tau_b.dim();
  const ComplexMatrix ia = ComplexMatrix::Identity(da, da), ib = ComplexMatrix::Identity(dbim, dbim);
  const double ktol = opt.kernel_tol > 0 ? opt.kernel_tol : eps / 4;

  DecoupleResult best;
  best.dist_a = proj_distance(ia, target_a);
  best.dist_b = 0.0;
  best.success = best.dist_a < eps;
  if (best.success) return best;
  long long evals = 0;

  auto consider = [&](const detail::PairElement& e) {
    ++evals;
    const double d_a = proj_distance(e.a, target_a);
    if (std::max(d_a, e.db) < std::max(best.dist_a, best.dist_b)) {
      best.word = e.word;
      best.dist_a = d_a;
      best.dist_b = e.db;
      best.success = d_a < eps && e.db < eps;
    }
    return best.success;
  };
  auto finish = [&] {
    best.evaluations = evals;
    return best;
  };
  auto out_of_budget = [&] { return evals >= budget; };

  // raw material: reduced words in breadth-first order
  const long long base_cap = std::max<long long>(tau_a.size() * 2 + 1, std::min<long long>(opt.base_elements, budget / 20));
  std::vector<detail::PairElement> base;
  base.push_back({{}, ia, ib, 0.0});
  for (std::size_t head = 0; head < base.size() && static_cast<long long>(base.size()) < base_cap; ++head) {
    for (int g = 1; g <= tau_a.size() && static_cast<long long>(base.size()) < base_cap; ++g)
      for (int l : {g, -g}) {
        const auto& cur = base[head];
        if (!cur.word.empty() && cur.word.back() == -l) continue;
        detail::PairElement e{concat(cur.word, {l}), cur.a * tau_a.letter(l), cur.b * tau_b.letter(l), 0.0};
        e.db = proj_distance(e.b, ib);
        if (consider(e)) return finish();
        base.push_back(std::move(e));
        if (out_of_budget()) return finish();
      }
  }
  if (base.size() < 2) return finish();

  // coarse near-kernel elements: powers of base words that come back near 1 on B
  const double coarse = std::max(0.4, 2 * ktol);
  std::vector<detail::PairElement> pool, kernel;
  auto useful = [&](const detail::PairElement& e) { return proj_distance(e.a, ia) > ktol; };
  auto keep = [&](detail::PairElement e) {
    if (e.db < ktol && useful(e)) kernel.push_back(e);
    if (e.db < coarse) pool.push_back(std::move(e));
  };
  for (std::size_t j = 1; j < base.size() && evals < budget / 4; ++j) {
    ComplexMatrix pa = base[j].a, pb = base[j].b;
    for (int p = 2; p <= opt.max_power; ++p) {
      pa = pa * base[j].a;
      pb = pb * base[j].b;
      ++evals;
      const double db = proj_distance(pb, ib);
      if (db < coarse) {
        detail::PairElement e{repeat_word(base[j].word, p), pa, pb, db};
        if (consider(e)) return finish();
        keep(std::move(e));
        break;
      }
    }
  }
  for (const auto& e : base)
    if (!e.word.empty() && e.db < coarse) keep(e);

  std::mt19937 rng(opt.seed);
  // commutators of near-kernel elements are closer to 1 on B
  for (int level = 0; level < 4 && pool.size() >= 2 && static_cast<int>(kernel.size()) < opt.kernel_size &&
                      evals < budget / 2;
       ++level) {
    std::sort(pool.begin(), pool.end(), [](const auto& x, const auto& y) { return x.db < y.db; });
    if (pool.size() > 200) pool.resize(200);
    std::vector<detail::PairElement> parents = std::move(pool);
    pool.clear();
    std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
    const std::size_t tries = 8 * parents.size();
    for (std::size_t t = 0; t < tries && evals < budget / 2 && static_cast<int>(kernel.size()) < opt.kernel_size;
         ++t) {
      const auto& x = parents[pick(rng)];
      const auto& y = parents[pick(rng)];
      detail::PairElement e{commutator_word(x.word, y.word), x.a * y.a * x.a.adjoint() * y.a.adjoint(),
                            x.b * y.b * x.b.adjoint() * y.b.adjoint(), 0.0};
      e.db = proj_distance(e.b, ib);
      if (consider(e)) return finish();
      keep(std::move(e));
    }
  }
  if (kernel.empty()) return finish();

  // conjugates keep the B distance and rotate the A part
  std::uniform_int_distribution<std::size_t> pick_base(1, base.size() - 1);
  for (std::size_t j = 0; static_cast<int>(kernel.size()) < opt.kernel_size && evals < budget / 2; ++j) {
    const auto& k = kernel[j % kernel.size()];
    const auto& g = base[pick_base(rng)];
    const GeneratorWord gi = inverse_word(g.word);
    detail::PairElement e{concat({&g.word, &k.word, &gi}), g.a * k.a * g.a.adjoint(), g.b * k.b * g.b.adjoint(),
                          0.0};
    e.db = proj_distance(e.b, ib);
    if (consider(e)) return finish();
    kernel.push_back(std::move(e));
  }

  // beam search over products of kernel elements and their inverses
  std::vector<detail::PairElement> moves;
  for (const auto& k : kernel) {
    moves.push_back(k);
    moves.push_back({inverse_word(k.word), k.a.adjoint(), k.b.adjoint(), k.db});
  }
  struct State {
    detail::PairElement e;
    double score;
  };
  std::vector<State> beam{{{{}, ia, ib, 0.0}, proj_distance(ia, target_a)}};
  while (!out_of_budget()) {
    std::vector<State> next;
    for (const auto& s : beam) {
      for (const auto& m : moves) {
        detail::PairElement e{concat(s.e.word, m.word), s.e.a * m.a, s.e.b * m.b, 0.0};
        e.db = proj_distance(e.b, ib);
        if (consider(e)) return finish();
        const double score = std::max(proj_distance(e.a, target_a), e.db);
        next.push_back({std::move(e), score});
        if (out_of_budget()) return finish();
      }
    }
    const auto width = std::min<std::size_t>(opt.beam_width, next.size());
    std::partial_sort(next.begin(), next.begin() + static_cast<long>(width), next.end(),
                      [](const State& x, const State& y) { return x.score < y.score; });
    next.resize(width);
    beam = std::move(next);
  }
  return finish();
}

}  // namespace tlbraid
