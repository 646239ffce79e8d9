#pragma once

// 4-step qubit encoding on H_{4n,k,1}: bit 0 is the path 1-2-1-2-1, bit 1 is
// 1-2-3-2-1.  Qubit 1 is the most significant bit of a basis string.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tlbraid/braid.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/linalg.hpp"
#include "tlbraid/pathmodel.hpp"

namespace tlbraid {

inline constexpr std::array<int, 4> kBitZeroSteps{1, -1, 1, -1};
inline constexpr std::array<int, 4> kBitOneSteps{1, 1, -1, -1};

class EncodedBasis {
 public:
  EncodedBasis(int qubits, int k) : qubits_(qubits), basis_(4 * qubits, k, 1) {
    if (qubits < 1) throw DomainError("EncodedBasis: need at least one qubit");
    if (k < 4) throw DomainError("EncodedBasis: the encoding needs k >= 4");
    if (qubits > 15) throw DomainError("EncodedBasis: too many qubits");
    index_.resize(std::size_t{1} << qubits);
    for (std::size_t x = 0; x < index_.size(); ++x) {
      auto idx = basis_.index_of(steps_of(x));
      if (!idx) throw DomainError("EncodedBasis: encoded path missing");
      index_[x] = *idx;
    }
  }

  int qubits() const noexcept { return qubits_; }
  int k() const noexcept { return basis_.k(); }
  const PathBasis& basis() const noexcept { return basis_; }
  int dim() const noexcept { return basis_.size(); }
  std::size_t strings() const noexcept { return index_.size(); }

  /// basis index of the encoded string x
  int index(std::size_t x) const { return index_.at(x); }
  const std::vector<int>& indices() const noexcept { return index_; }

  std::vector<int> steps_of(std::size_t x) const {
    std::vector<int> steps;
    steps.reserve(4 * qubits_);
    for (int q = 0; q < qubits_; ++q) {
      const bool bit = (x >> (qubits_ - 1 - q)) & 1u;
      const auto& s = bit ? kBitOneSteps : kBitZeroSteps;
      steps.insert(steps.end(), s.begin(), s.end());
    }
    return steps;
  }

  /// isometry from C^{2^n} onto S
  ComplexMatrix isometry() const {
    ComplexMatrix p = ComplexMatrix::Zero(dim(), static_cast<Eigen::Index>(strings()));
    for (std::size_t x = 0; x < strings(); ++x) p(index_[x], static_cast<Eigen::Index>(x)) = 1.0;
    return p;
  }

 private:
  int qubits_;
  PathBasis basis_;
  std::vector<int> index_;
};

/// I (x) U (x) I on n qubits, with U acting on qubits first..first+q-1.
inline ComplexMatrix embed_on_qubits(const ComplexMatrix& u, int first, int qubits) {
  const int q = [&] {
    int r = 0;
    while ((Eigen::Index{1} << r) < u.rows()) ++r;
    return r;
  }();
  if ((Eigen::Index{1} << q) != u.rows() || u.rows() != u.cols())
    throw DomainError("embed_on_qubits: gate dimension is not a power of two");
  if (first < 1 || first + q - 1 > qubits) throw DomainError("embed_on_qubits: position out of range");
  const int left = first - 1, right = qubits - (first + q - 1);
  ComplexMatrix full = ComplexMatrix::Zero(Eigen::Index{1} << qubits, Eigen::Index{1} << qubits);
  const Eigen::Index lr = Eigen::Index{1} << right;
  for (Eigen::Index a = 0; a < (Eigen::Index{1} << left); ++a)
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      for (Eigen::Index c = 0; c < u.cols(); ++c)
        for (Eigen::Index b = 0; b < lr; ++b)
          full((a * u.rows() + r) * lr + b, (a * u.cols() + c) * lr + b) = u(r, c);
  return full;
}

/// Sum_xy U_xy |x><y| on S plus the identity on its orthogonal complement.
/// `full` acts on all n encoded qubits.
inline ComplexMatrix encode_full(const ComplexMatrix& full, const EncodedBasis& enc) {
  if (full.rows() != static_cast<Eigen::Index>(enc.strings()))
    throw DomainError("encode_gate: dimension mismatch");
  require_unitary(full, "encode_gate", 1e-10);
  ComplexMatrix m = ComplexMatrix::Identity(enc.dim(), enc.dim());
  for (std::size_t x = 0; x < enc.strings(); ++x)
    for (std::size_t y = 0; y < enc.strings(); ++y)
      m(enc.index(x), enc.index(y)) = full(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  return m;
}

/// Encoded gate for U acting on qubits first.. of an n-qubit register.
inline ComplexMatrix encode_gate(const ComplexMatrix& u, int first, const EncodedBasis& enc) {
  require_unitary(u, "encode_gate", 1e-10);
  return encode_full(embed_on_qubits(u, first, enc.qubits()), enc);
}

inline ComplexMatrix encode_gate(const ComplexMatrix& u, int first, int qubits, int k) {
  return encode_gate(u, first, EncodedBasis(qubits, k));
}

/// Generator indices 1..7 acting on the two-qubit block at position s.
inline BraidWord reduce_to_b8(const std::vector<int>& b8_word, int s, int qubits) {
  if (qubits < 2) throw DomainError("reduce_to_b8: need at least two qubits");
  if (s < 1 || s > qubits - 1) throw DomainError("reduce_to_b8: position out of range");
  BraidWord out(4 * qubits, {});
  out.letters.reserve(b8_word.size());
  const int shift = 4 * (s - 1);
  for (int l : b8_word) {
    if (l == 0 || std::abs(l) > 7) throw DomainError("reduce_to_b8: letter outside 1..7");
    out.letters.push_back(l > 0 ? l + shift : l - shift);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Block structure of Phi_i on H_{8,k,1}

struct Block {
  std::vector<int> members;  // basis indices, ascending
  bool nontrivial = false;   // Phi_i != 0 on the block
};

struct BlockStructure {
  int generator = 0;
  std::vector<Block> blocks;

  std::vector<Block> nontrivial() const {
    std::vector<Block> r;
    for (const auto& b : blocks)
      if (b.nontrivial) r.push_back(b);
    return r;
  }
};

inline BlockStructure block_structure(int i, const PathModel& model) {
  const int dim = model.dim();
  const auto& cols = model.phi_columns(i);
  std::vector<int> parent(dim);
  for (int p = 0; p < dim; ++p) parent[p] = p;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> nonzero(dim, 0);
  for (int p = 0; p < dim; ++p)
    for (const auto& e : cols[p]) {
      if (e.value == 0.0) continue;
      nonzero[p] = nonzero[e.row] = 1;
      parent[find(p)] = find(e.row);
    }
  std::map<int, Block> by_root;
  for (int p = 0; p < dim; ++p) {
    Block& b = by_root[find(p)];
    b.members.push_back(p);
    b.nontrivial = b.nontrivial || nonzero[p];
  }
  BlockStructure bs;
  bs.generator = i;
  for (auto& [root, b] : by_root) bs.blocks.push_back(std::move(b));
  std::sort(bs.blocks.begin(), bs.blocks.end(),
            [](const Block& x, const Block& y) { return x.members < y.members; });
  return bs;
}

inline BlockStructure block_structure(int i, int k) {
  if (k < 5) throw DomainError("block_structure: k must be at least 5");
  if (i < 1 || i > 7) throw DomainError("block_structure: generator index outside 1..7");
  return block_structure(i, PathModel(8, k, 1));
}

/// Non-trivial blocks of rho_1..rho_7 on the 14 labelled paths, as published.
inline std::vector<std::vector<std::vector<int>>> reference_block_table(int k) {
  std::vector<std::vector<std::vector<int>>> t = {
      {{1}, {3}, {5}, {7}, {9}},
      {{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 12}},
      {{1}, {3}, {6, 10}, {8, 11}, {12, 13}},
      {{1, 5}, {2, 6}, {3, 7}, {4, 8}, {13, 14}},
      {{1}, {2}, {7, 9}, {8, 12}, {11, 13}},
      {{1, 3}, {2, 4}, {5, 7}, {6, 8}, {10, 11}},
      {{1}, {2}, {5}, {6}, {10}},
  };
  if (k == 5) {
    // path 14 leaves the graph: its pairs shrink to singletons
    for (auto& row : t)
      for (auto& blk : row) std::erase(blk, 14);
  }
  return t;
}

struct Labeling {
  std::vector<int> label;  // label[basis index] in 1..14
  long long solutions = 0;  // number of consistent labelings found (capped)
  bool ambiguous() const { return solutions > 1; }
};

/// Search for a bijection basis -> labels under which the computed non-trivial
/// blocks of Phi_1..Phi_7 equal the reference table.  The lexicographically
/// least labeling (in basis order) is returned.
inline Labeling reconstruct_labels(int k, long long max_solutions = 1000) {
  if (k < 5) throw DomainError("reconstruct_labels: k must be at least 5");
  const PathModel model(8, k, 1);
  const int dim = model.dim();
  const auto table = reference_block_table(k);
  const int labels = (k == 5) ? 13 : 14;
  if (dim != labels) throw DomainError("reconstruct_labels: unexpected basis size");

  // partner[i][x] for basis (computed) and label (reference) sides:
  // -2 trivial, -1 non-trivial singleton, otherwise the pair partner.
  std::vector<std::vector<int>> comp(7, std::vector<int>(dim, -2));
  for (int i = 1; i <= 7; ++i)
    for (const auto& b : block_structure(i, model).blocks) {
      if (!b.nontrivial) continue;
      if (b.members.size() == 1) comp[i - 1][b.members[0]] = -1;
      else if (b.members.size() == 2) {
        comp[i - 1][b.members[0]] = b.members[1];
        comp[i - 1][b.members[1]] = b.members[0];
      } else {
        throw Error("reconstruct_labels: block larger than two");
      }
    }
  std::vector<std::vector<int>> ref(7, std::vector<int>(labels + 1, -2));
  for (int i = 0; i < 7; ++i)
    for (const auto& blk : table[i]) {
      if (blk.size() == 1) ref[i][blk[0]] = -1;
      else {
        ref[i][blk[0]] = blk[1];
        ref[i][blk[1]] = blk[0];
      }
    }

  std::vector<int> assign(dim, 0), owner(labels + 1, -1);
  Labeling result;
  auto consistent = [&](int p, int l) {
    for (int i = 0; i < 7; ++i) {
      const int c = comp[i][p], r = ref[i][l];
      if ((c < 0 || r < 0) && c != r) return false;
      if (c >= 0) {
        // pair: the partner's label (if assigned) must be the reference partner
        if (assign[c] != 0 && assign[c] != r) return false;
        if (owner[r] >= 0 && owner[r] != c) return false;
      }
    }
    return true;
  };
  auto search = [&](auto&& self, int p) -> void {
    if (result.solutions >= max_solutions) return;
    if (p == dim) {
      if (result.solutions++ == 0) result.label = assign;
      return;
    }
    for (int l = 1; l <= labels; ++l) {
      if (owner[l] >= 0 || !consistent(p, l)) continue;
      assign[p] = l;
      owner[l] = p;
      self(self, p + 1);
      assign[p] = 0;
      owner[l] = -1;
    }
  };
  search(search, 0);
  if (result.solutions == 0)
    throw Error("reconstruct_labels: no labeling reproduces the reference block table");
  return result;
}

/// The computed non-trivial blocks of generator i, relabelled and sorted.
inline std::set<std::set<int>> labelled_blocks(int i, const PathModel& model, const Labeling& lab) {
  std::set<std::set<int>> out;
  for (const auto& b : block_structure(i, model).blocks) {
    if (!b.nontrivial) continue;
    std::set<int> s;
    for (int m : b.members) s.insert(lab.label[m]);
    out.insert(std::move(s));
  }
  return out;
}

}  // namespace tlbraid
