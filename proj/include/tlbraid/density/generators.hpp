#pragma once

// Finite generating sets of unitaries and words over them.

#include <cstdlib>
#include <string>
#include <vector>

#include "tlbraid/encoding.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/linalg.hpp"
#include "tlbraid/pathmodel.hpp"

namespace tlbraid {

/// Signed 1-based generator indices; letter -j is the inverse of generator j.
using GeneratorWord = std::vector<int>;

inline GeneratorWord inverse_word(const GeneratorWord& w) {
  GeneratorWord r(w.rbegin(), w.rend());
  for (int& l : r) l = -l;
  return r;
}

inline GeneratorWord concat(GeneratorWord a, const GeneratorWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline GeneratorWord concat(std::initializer_list<const GeneratorWord*> parts) {
  GeneratorWord r;
  for (const auto* p : parts) r.insert(r.end(), p->begin(), p->end());
  return r;
}

/// u v u^-1 v^-1
inline GeneratorWord commutator_word(const GeneratorWord& u, const GeneratorWord& v) {
  const auto ui = inverse_word(u), vi = inverse_word(v);
  return concat({&u, &v, &ui, &vi});
}

inline GeneratorWord repeat_word(const GeneratorWord& w, long long times) {
  const GeneratorWord& base = w;
  const GeneratorWord inv = inverse_word(w);
  const GeneratorWord& unit = times >= 0 ? base : inv;
  GeneratorWord r;
  r.reserve(unit.size() * static_cast<std::size_t>(std::llabs(times)));
  for (long long j = 0; j < std::llabs(times); ++j) r.insert(r.end(), unit.begin(), unit.end());
  return r;
}

struct GeneratorSet {
  std::string name;
  std::string provenance;  // "pathmodel k=..", "auxiliary k0=..", "abstract"
  int level = 0;           // k or k0 when the set comes from a path model
  std::vector<ComplexMatrix> elements;
  std::vector<ComplexMatrix> inverses;
  /// which rho_i each element realizes (0 when not applicable)
  std::vector<int> generator_index;
  /// basis labels (1..14) of the invariant block the set is restricted to;
  /// empty for the full space
  std::vector<int> labels;

  GeneratorSet() = default;
  GeneratorSet(std::string name_, std::vector<ComplexMatrix> elems, std::string prov = "abstract")
      : name(std::move(name_)), provenance(std::move(prov)), elements(std::move(elems)) {
    finalize();
  }

  void finalize() {
    if (elements.empty()) throw DomainError("GeneratorSet: no elements");
    inverses.clear();
    for (const auto& e : elements) {
      if (e.rows() != elements[0].rows()) throw DomainError("GeneratorSet: mixed dimensions");
      require_unitary(e, "GeneratorSet", 1e-10);
      inverses.push_back(e.adjoint());
    }
    if (generator_index.empty()) generator_index.assign(elements.size(), 0);
  }

  int dim() const { return static_cast<int>(elements.at(0).rows()); }
  int size() const { return static_cast<int>(elements.size()); }

  const ComplexMatrix& letter(int l) const {
    if (l == 0 || std::abs(l) > size()) throw DomainError("GeneratorWord: letter out of range");
    return l > 0 ? elements[l - 1] : inverses[-l - 1];
  }

  void validate(const GeneratorWord& w) const {
    for (int l : w) letter(l);
  }

  /// Product with the first letter leftmost.
  ComplexMatrix evaluate(const GeneratorWord& w) const {
    ComplexMatrix m = ComplexMatrix::Identity(dim(), dim());
    for (int l : w) m = m * letter(l);
    return m;
  }
};

/// rho_i restricted to the rows/columns `indices` of the H_{8,k,1} basis.
inline ComplexMatrix restrict_to(const ComplexMatrix& m, const std::vector<int>& indices) {
  const auto n = static_cast<Eigen::Index>(indices.size());
  ComplexMatrix r(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) r(a, b) = m(indices[a], indices[b]);
  return r;
}

/// basis indices of the given Table-1 labels at level k
inline std::vector<int> label_indices(int k, const std::vector<int>& labels) {
  const auto lab = reconstruct_labels(k);
  std::vector<int> idx;
  for (int l : labels) {
    bool found = false;
    for (std::size_t p = 0; p < lab.label.size(); ++p)
      if (lab.label[p] == l) {
        idx.push_back(static_cast<int>(p));
        found = true;
      }
    if (!found) throw DomainError("label " + std::to_string(l) + " not present at this k");
  }
  return idx;
}

inline void check_block_invariant(const ComplexMatrix& m, const std::vector<int>& idx) {
  double leak = 0.0;
  std::vector<char> in(m.rows(), 0);
  for (int i : idx) in[i] = 1;
  for (int i : idx)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (!in[r]) leak += std::abs(m(r, i));
  if (leak > 1e-12) throw DomainError("restriction: the chosen labels do not span an invariant block");
}

/// rho_{generators} on H_{8,k,1}, optionally restricted to an invariant block
/// given by Table-1 labels.
inline GeneratorSet path_model_generators(int k, std::vector<int> generators = {1, 2, 3, 4, 5, 6, 7},
                                          std::vector<int> labels = {}) {
  const PathModel model(8, k, 1);
  const std::vector<int> idx = labels.empty() ? std::vector<int>{} : label_indices(k, labels);
  GeneratorSet g;
  g.name = "rho";
  g.provenance = "pathmodel k=" + std::to_string(k);
  g.level = k;
  for (int i : generators) {
    ComplexMatrix r = model.rho_generator(i, 1);
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

/// rho_1, rho_2 on the two-dimensional block {1,2}.
inline GeneratorSet su2_block_generators(int k) {
  if (k == 3 || k == 4) throw FiniteImageError("k = " + std::to_string(k) + " has no dense 2x2 block");
  return path_model_generators(k, {1, 2}, {1, 2});
}

}  // namespace tlbraid
