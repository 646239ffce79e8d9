#include <gtest/gtest.h>

#include <random>

#include "tlbraid/kauffman.hpp"
#include "tlbraid/pathmodel.hpp"

using namespace tlbraid;

namespace {

BraidWord random_braid(std::mt19937& rng, int n, int m) {
  std::uniform_int_distribution<int> gen(1, n - 1), sign(0, 1);
  BraidWord b(n, {});
  for (int j = 0; j < m; ++j) b.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
  return b;
}

const int kLevels[] = {5, 7, 8, 10, 12};

}  // namespace

TEST(ModelParams, Invariants) {
  for (int k : kLevels) {
    ModelParams p(k);
    EXPECT_NEAR(p.lambda[0], 0.0, 1e-12);
    EXPECT_NEAR(p.lambda[k], 0.0, 1e-12);
    for (int j = 1; j < k; ++j) EXPECT_GT(p.lambda[j], 0.0);
    EXPECT_NEAR(std::abs(-(p.a * p.a + 1.0 / (p.a * p.a)) - p.d), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(p.a - root_parameter(k)), 0.0, 1e-15);
  }
  EXPECT_THROW(ModelParams(2), DomainError);
}

TEST(PathBasis, KnownDimensions) {
  EXPECT_EQ(enumerate_basis(8, 7, 1).size(), 14);
  EXPECT_EQ(enumerate_basis(8, 5, 1).size(), 13);
  EXPECT_EQ(enumerate_basis(2, 5, 1).size(), 1);
  EXPECT_EQ(enumerate_basis(0, 5).size(), 1);
  // no upper wall for large k: Catalan numbers
  EXPECT_EQ(enumerate_basis(10, 12, 1).size(), 42);
}

TEST(PathBasis, OrderAndContents) {
  const auto basis = enumerate_basis(6, 6);
  for (int j = 0; j < basis.size(); ++j) {
    const auto p = basis.path(j);
    EXPECT_EQ(p.sites.front(), 1);
    for (int z : p.sites) {
      EXPECT_GE(z, 1);
      EXPECT_LE(z, 5);
    }
    EXPECT_EQ(basis.index_of(p.steps).value(), j);
    if (j > 0) {
      // lexicographic with +1 < -1
      auto q = basis.path(j - 1).steps;
      auto neg = [](std::vector<int> s) {
        for (int& x : s) x = -x;
        return s;
      };
      EXPECT_LT(neg(q), neg(p.steps));
    }
  }
}

TEST(PathBasis, SectorsPartitionTheFullSpace) {
  for (int k : {5, 7}) {
    int total = 0;
    for (int l = 1; l <= k - 1; ++l) total += enumerate_basis(7, k, l).size();
    EXPECT_EQ(total, enumerate_basis(7, k).size());
  }
  EXPECT_THROW(enumerate_basis(4, 5, 0), DomainError);
  EXPECT_THROW(enumerate_basis(4, 5, 5), DomainError);
}

TEST(Phi, PublishedEntries) {
  const PathModel model(4, 5, std::nullopt);
  const auto phi = model.phi_matrix(2);
  const double golden = std::sin(kPi / 5) / std::sin(2 * kPi / 5);
  // path 1-2-1-2: steps 2,3 form down-up at z = 2
  const int du = *model.basis().index_of({1, -1, 1, -1});
  EXPECT_NEAR(phi(du, du).real(), golden, 1e-12);
  EXPECT_NEAR(golden, 0.6180339887, 1e-9);
  // up-up columns vanish
  const int uu = *model.basis().index_of({1, 1, 1, -1});
  EXPECT_NEAR(phi.col(uu).norm(), 0.0, 0.0);
  // at z = 1 the up-down singleton has no partner
  const auto phi1 = model.phi_matrix(1);
  const int ud = *model.basis().index_of({1, -1, 1, 1});
  EXPECT_NEAR(phi1(ud, ud).real(), model.params().d, 1e-12);
  EXPECT_EQ((phi1.col(ud).array().abs() > 0).count(), 1);
  EXPECT_THROW(model.phi_matrix(0), DomainError);
  EXPECT_THROW(model.phi_matrix(4), DomainError);
}

TEST(Rho, UnitarityArtinAndTemperleyLieb) {
  for (int n = 2; n <= 10; n += 2)
    for (int k : kLevels) {
      const PathModel model(n, k, 1);
      const auto id = ComplexMatrix::Identity(model.dim(), model.dim());
      const double d = model.params().d;
      for (int i = 1; i < n; ++i) {
        const auto r = model.rho_generator(i, 1);
        const auto f = model.phi_matrix(i);
        EXPECT_LT((r * r.adjoint() - id).norm(), 1e-10);
        EXPECT_LT((r * model.rho_generator(i, -1) - id).norm(), 1e-10);
        EXPECT_LT((f * f - d * f).norm(), 1e-10);
        EXPECT_LT(f.imag().norm(), 0.0 + 1e-300);
        if (i + 1 < n) {
          const auto s = model.rho_generator(i + 1, 1);
          const auto g = model.phi_matrix(i + 1);
          EXPECT_LT((r * s * r - s * r * s).norm(), 1e-10);
          EXPECT_LT((f * g * f - f).norm(), 1e-10);
          EXPECT_LT((g * f * g - g).norm(), 1e-10);
        }
        for (int j = i + 2; j < n; ++j) {
          const auto s = model.rho_generator(j, 1);
          EXPECT_LT((r * s - s * r).norm(), 1e-10);
        }
      }
    }
}

TEST(Rho, SectorPreservation) {
  const PathModel model(7, 7, std::nullopt);
  for (int i = 1; i < 7; ++i) {
    const auto f = model.phi_matrix(i);
    for (int r = 0; r < model.dim(); ++r)
      for (int c = 0; c < model.dim(); ++c)
        if (model.basis().site(r, 7) != model.basis().site(c, 7)) {
          EXPECT_EQ(f(r, c), Complex(0.0));
        }
  }
}

TEST(Rho, BlocksHaveEqualSpectraAndClosedForm) {
  for (int k : {5, 7, 10}) {
    const PathModel model(8, k, 1);
    const auto& p = model.params();
    const Complex ainv = p.a_inv();
    const Complex e2 = -unit_phase(-2 * p.theta);
    for (int i = 1; i < 8; ++i) {
      const auto r = model.rho_generator(i, 1);
      for (int x = 0; x < model.dim(); ++x) {
        if (model.basis().step(x, i - 1) != 1 || model.basis().step(x, i) != -1) continue;
        auto y = model.basis().index_of_key(model.basis().swapped_key(x, i - 1));
        if (!y) continue;
        // block in (up-down, down-up) order
        Eigen::Matrix2cd blk;
        blk << r(x, x), r(x, *y), r(*y, x), r(*y, *y);
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(blk);
        auto ev = es.eigenvalues();
        const bool match = (std::abs(ev(0) - ainv) < 1e-10 && std::abs(ev(1) - ainv * e2) < 1e-10) ||
                           (std::abs(ev(1) - ainv) < 1e-10 && std::abs(ev(0) - ainv * e2) < 1e-10);
        EXPECT_TRUE(match);
        const int z = model.basis().site(x, i - 1);
        const double lp = p.lam(z + 1), lm = p.lam(z - 1), nrm = std::sqrt(lp + lm);
        Eigen::Matrix2cd m;
        m << std::sqrt(lp) / nrm, -std::sqrt(lm) / nrm, std::sqrt(lm) / nrm, std::sqrt(lp) / nrm;
        Eigen::Matrix2cd diag = Eigen::Matrix2cd::Zero();
        diag(0, 0) = e2;
        diag(1, 1) = 1.0;
        EXPECT_LT((ainv * m * diag * m.adjoint() - blk).norm(), 1e-10);
      }
    }
  }
}

TEST(Rho, WordProducts) {
  const PathModel model(4, 7, 1);
  const auto id = ComplexMatrix::Identity(model.dim(), model.dim());
  EXPECT_LT((model.rho_of_word(BraidWord(4, {})) - id).norm(), 1e-12);
  EXPECT_LT((model.rho_of_word(BraidWord(4, {1, -1})) - id).norm(), 1e-10);
  const PathModel odd(3, 7, std::nullopt);
  EXPECT_LT((odd.rho_of_word(BraidWord(3, {1, 2, 1})) - odd.rho_of_word(BraidWord(3, {2, 1, 2}))).norm(), 1e-10);
  EXPECT_THROW(model.rho_of_word(BraidWord(6, {})), DomainError);

  std::mt19937 rng(41);
  for (int t = 0; t < 20; ++t) {
    auto b1 = random_braid(rng, 6, 7), b2 = random_braid(rng, 6, 5);
    const PathModel m6(6, 7, 1);
    const auto lhs = m6.rho_of_word(compose(b1, b2));
    EXPECT_LT((lhs - m6.rho_of_word(b1) * m6.rho_of_word(b2)).norm(), 1e-9 * 12);
    // matrix-free application agrees with the dense product
    ComplexVector v = ComplexVector::Zero(m6.dim());
    v(t % m6.dim()) = 1.0;
    ComplexVector w = v;
    m6.apply_word(b1.letters, w);
    EXPECT_LT((w - m6.rho_of_word(b1) * v).norm(), 1e-10);
  }
}

TEST(Alpha, SmallValues) {
  for (int n : {2, 4, 6})
    for (int k : {5, 7}) EXPECT_NEAR(std::abs(alpha_expectation(BraidWord(n, {}), k) - 1.0), 0.0, 1e-12);
  const ModelParams p5(5);
  const Complex single = alpha_expectation(BraidWord(2, {1}), 5);
  EXPECT_NEAR(std::abs(single - p5.a * unit_phase(-p5.theta)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(single), 1.0, 1e-12);
  const Complex s7 = alpha_expectation(BraidWord(2, {1}), 7);
  EXPECT_NEAR(std::abs(alpha_expectation(BraidWord(2, {1, 1, 1}), 7) - s7 * s7 * s7), 0.0, 1e-12);
  EXPECT_THROW(alpha_expectation(BraidWord(3, {1}), 5), DomainError);
}

TEST(Alpha, BoundedByOne) {
  std::mt19937 rng(42);
  for (int t = 0; t < 30; ++t) {
    auto b = random_braid(rng, 6, 15);
    EXPECT_LE(std::abs(alpha_expectation(b, 7)), 1.0 + 1e-12);
  }
}

TEST(BigN, SmallValues) {
  const ModelParams p(5);
  EXPECT_NEAR(big_n(0, 5), p.lam(1), 1e-12);
  EXPECT_NEAR(big_n(1, 5), p.lam(2), 1e-12);
  EXPECT_NEAR(big_n(2, 5), p.lam(1) + p.lam(3), 1e-12);
  // lambda_{z-1} + lambda_{z+1} = d lambda_z makes N geometric in n
  for (int k : kLevels)
    for (int n = 0; n <= 12; ++n) EXPECT_NEAR(big_n(n, k), ModelParams(k).lam(1) * std::pow(ModelParams(k).d, n), 1e-9);
}

TEST(DeltaScale, Values) {
  const ModelParams p(5);
  EXPECT_NEAR(std::abs(delta_scale(BraidWord(2, {}), 5) - p.lam(1) / big_n(2, 5) * p.d), 0.0, 1e-12);
  const double m1 = std::abs(delta_scale(BraidWord(4, {1, 2, -3}), 7));
  EXPECT_NEAR(std::abs(delta_scale(BraidWord(4, {-3, 2, 1}), 7)), m1, 1e-12);
  EXPECT_THROW(delta_scale(BraidWord(3, {}), 5), DomainError);
}

TEST(Correspondence, JonesIsCalibratedAlphaExpectation) {
  std::mt19937 rng(43);
  for (int t = 0; t < 30; ++t) {
    const int n = (t % 2) ? 4 : 6;
    const int k = (t % 3 == 0) ? 5 : (t % 3 == 1 ? 7 : 10);
    auto b = random_braid(rng, n, t % 9);
    const int w = writhe(b);
    const Complex a = ModelParams(k).a;
    // calibrate on the identity braid of the same width
    const Complex c0 = jones_at_root(BraidWord(n, {}), k) / alpha_expectation(BraidWord(n, {}), k);
    const Complex c = c0 * std::pow(-a, 3 * w);
    EXPECT_NEAR(std::abs(c * alpha_expectation(b, k) - jones_at_root(b, k)), 0.0, 1e-8) << serialize_braid(b);
  }
}
