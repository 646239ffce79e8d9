#include <gtest/gtest.h>

#include <random>

#include "tlbraid/encoding.hpp"

using namespace tlbraid;

namespace {

ComplexMatrix pauli_x() {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

}  // namespace

TEST(EncodedBasis, EncodedPaths) {
  const EncodedBasis enc(2, 7);
  EXPECT_EQ(enc.basis().path(enc.index(0)).sites, (std::vector<int>{1, 2, 1, 2, 1, 2, 1, 2, 1}));
  EXPECT_EQ(enc.basis().path(enc.index(1)).sites, (std::vector<int>{1, 2, 1, 2, 1, 2, 3, 2, 1}));
  EXPECT_EQ(enc.basis().path(enc.index(2)).sites, (std::vector<int>{1, 2, 3, 2, 1, 2, 1, 2, 1}));
  const PathModel model(8, 7, 1);
  EXPECT_EQ(enc.index(0), model.zigzag_index());
  EXPECT_THROW(EncodedBasis(1, 3), DomainError);
}

TEST(EncodeGate, TrivialCases) {
  const EncodedBasis enc1(1, 5);
  EXPECT_LT((encode_gate(ComplexMatrix::Identity(2, 2), 1, enc1) - ComplexMatrix::Identity(enc1.dim(), enc1.dim())).norm(), 1e-15);
  const auto x = encode_gate(pauli_x(), 1, enc1);
  EXPECT_EQ(x(enc1.index(0), enc1.index(1)), Complex(1.0));
  EXPECT_EQ(x(enc1.index(0), enc1.index(0)), Complex(0.0));
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2) * 1.5;
  EXPECT_THROW(encode_gate(bad, 1, enc1), DomainError);
  EXPECT_THROW(encode_gate(pauli_x(), 2, enc1), DomainError);
}

TEST(EncodeGate, ZeroAmplitudeAndInvariance) {
  std::mt19937 rng(51);
  const EncodedBasis enc(3, 7);
  const auto p = enc.isometry();
  const auto proj = p * p.adjoint();
  const auto id = ComplexMatrix::Identity(enc.dim(), enc.dim());
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix u = haar_unitary(4, rng);
    const int s = 1 + t % 2;
    const auto e = encode_gate(u, s, enc);
    EXPECT_LT(unitarity_defect(e), 1e-10);
    EXPECT_EQ(e(enc.index(0), enc.index(0)), embed_on_qubits(u, s, 3)(0, 0));
    // S -> S and identity on the complement
    EXPECT_LT(((id - proj) * e * proj).norm(), 1e-14);
    EXPECT_LT(((e - id) * (id - proj)).norm(), 1e-14);
    const ComplexMatrix v = haar_unitary(4, rng);
    EXPECT_LT((encode_gate(u * v, s, enc) - encode_gate(u, s, enc) * encode_gate(v, s, enc)).norm(), 1e-10);
  }
}

TEST(EmbedOnQubits, KroneckerOrder) {
  // X on qubit 1 of two flips the most significant bit
  const auto x1 = embed_on_qubits(pauli_x(), 1, 2);
  EXPECT_EQ(x1(2, 0), Complex(1.0));
  const auto x2 = embed_on_qubits(pauli_x(), 2, 2);
  EXPECT_EQ(x2(1, 0), Complex(1.0));
}

TEST(ReduceToB8, IndexShift) {
  EXPECT_TRUE(reduce_to_b8({}, 1, 2).letters.empty());
  EXPECT_EQ(reduce_to_b8({}, 1, 2).strands, 8);
  EXPECT_EQ(reduce_to_b8({1}, 2, 3).letters, (std::vector<int>{5}));
  EXPECT_EQ(reduce_to_b8({1}, 2, 3).strands, 12);
  EXPECT_EQ(reduce_to_b8({-7, 3}, 2, 3).letters, (std::vector<int>{-11, 7}));
  EXPECT_THROW(reduce_to_b8({1}, 3, 3), DomainError);
  EXPECT_THROW(reduce_to_b8({8}, 1, 3), DomainError);
}

TEST(ReduceToB8, FactorizesOnEncodedStates) {
  std::mt19937 rng(52);
  const int n = 3, k = 7;
  const EncodedBasis enc(n, k);
  const PathModel big(4 * n, k, 1), small(8, k, 1);
  std::uniform_int_distribution<int> letter(1, 7), sign(0, 1), pick(0, (1 << n) - 1), pos(1, n - 1);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> word;
    for (int j = 0; j < 10; ++j) word.push_back(sign(rng) ? letter(rng) : -letter(rng));
    const int s = pos(rng);
    const int x = pick(rng);
    ComplexVector v = ComplexVector::Zero(big.dim());
    v(enc.index(x)) = 1.0;
    big.apply_word(reduce_to_b8(word, s, n).letters, v);

    // (I (x) rho_8 (x) I) on the middle eight steps
    const auto steps = enc.steps_of(x);
    const int off = 4 * (s - 1);
    std::vector<int> mid(steps.begin() + off, steps.begin() + off + 8);
    const auto r8 = small.rho_of_letters(word);
    const int col = *small.basis().index_of(mid);
    ComplexVector expect = ComplexVector::Zero(big.dim());
    for (int q = 0; q < small.dim(); ++q) {
      auto full = steps;
      const auto qs = small.basis().path(q).steps;
      std::copy(qs.begin(), qs.end(), full.begin() + off);
      expect(*big.basis().index_of(full)) += r8(q, col);
    }
    EXPECT_LT((v - expect).norm(), 1e-9);
  }
}

TEST(BlockStructure, PublishedRows) {
  auto count = [](const BlockStructure& bs, std::size_t size) {
    int c = 0;
    for (const auto& b : bs.nontrivial()) c += b.members.size() == size;
    return c;
  };
  const auto b7 = block_structure(7, 7);
  EXPECT_EQ(count(b7, 1), 5);
  EXPECT_EQ(count(b7, 2), 0);
  const auto b4 = block_structure(4, 7);
  EXPECT_EQ(count(b4, 2), 5);
  const auto b1 = block_structure(1, 7);
  EXPECT_EQ(count(b1, 1), 5);
  EXPECT_EQ(b1.nontrivial().size(), 5u);
  // row 1: the non-trivial singletons are the paths starting up-down
  const PathModel model(8, 7, 1);
  for (const auto& b : b1.nontrivial()) {
    const auto p = model.basis().path(b.members[0]);
    EXPECT_EQ(p.steps[0], 1);
    EXPECT_EQ(p.steps[1], -1);
  }
  EXPECT_THROW(block_structure(1, 4), DomainError);
  EXPECT_THROW(block_structure(8, 7), DomainError);
}

TEST(BlockStructure, BlocksAreComponentsOfThePattern) {
  for (int k : {5, 7, 9}) {
    const PathModel model(8, k, 1);
    for (int i = 1; i <= 7; ++i) {
      const auto f = model.phi_matrix(i);
      const auto bs = block_structure(i, model);
      std::vector<int> which(model.dim(), -1);
      for (std::size_t b = 0; b < bs.blocks.size(); ++b)
        for (int m : bs.blocks[b].members) which[m] = static_cast<int>(b);
      for (int r = 0; r < model.dim(); ++r)
        for (int c = 0; c < model.dim(); ++c)
          if (f(r, c) != Complex(0.0)) {
            EXPECT_EQ(which[r], which[c]);
          }
      for (const auto& b : bs.blocks) {
        double mass = 0;
        for (int r : b.members)
          for (int c : b.members) mass += std::abs(f(r, c));
        EXPECT_EQ(b.nontrivial, mass > 0);
      }
    }
  }
}

TEST(Labels, ReconstructionMatchesTable) {
  for (int k : {7, 5}) {
    const auto lab = reconstruct_labels(k);
    const PathModel model(8, k, 1);
    const auto table = reference_block_table(k);
    std::set<int> used(lab.label.begin(), lab.label.end());
    EXPECT_EQ(used.size(), static_cast<std::size_t>(model.dim()));
    if (k == 5) {
      EXPECT_EQ(used.count(14), 0u);
    }
    for (int i = 1; i <= 7; ++i) {
      std::set<std::set<int>> expect;
      for (const auto& blk : table[i - 1]) expect.insert(std::set<int>(blk.begin(), blk.end()));
      EXPECT_EQ(labelled_blocks(i, model, lab), expect) << "generator " << i << " k " << k;
    }
  }
}
