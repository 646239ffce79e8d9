#pragma once

// Approximating SU(2) targets by words in two generators: a near-identity
// element g = w1 w2^-1 is found by breadth-first search, the target is
// factored as R(a1) S(a2) R(a3) [S(a4) R(a5)] with R(phi) the one-parameter
// group through g and S(phi) = T^-1 R(phi) T, and each angle is rounded to a
// multiple of the rotation angle of g.

#include <array>
#include <cmath>
#include <deque>
#include <random>
#include <unordered_map>
#include <vector>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "tlbraid/density/generators.hpp"
#include "tlbraid/density/quaternion.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/linalg.hpp"

namespace tlbraid {

struct Su2Options {
  int max_elements = 400000;  // breadth-first search budget
  int starts = 24;            // multi-start count for the angle fit
  int rounds = 6;             // times the near-identity threshold may be halved
  unsigned seed = 7;
};

struct Su2Result {
  GeneratorWord word;
  double distance = 0.0;
  double near_identity_angle = 0.0;  // rotation angle of g; 0 if not needed
  int factors = 0;                   // 0 (direct hit), 3 or 5
  int searched = 0;                  // elements visited by the search
};

namespace detail {

struct Su2Node {
  GeneratorWord word;
  Quaternion q;
};

/// Residual of R/S products against a target: vector part of V^dagger P.
struct AngleFit {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const ComplexMatrix* basis;      // U with g = U^-1 diag(e^{i l}, e^{-i l}) U
  const ComplexMatrix* twist;      // T
  const ComplexMatrix* target;
  int factors = 3;

  int inputs() const { return factors; }
  int values() const { return std::max(3, factors); }

  ComplexMatrix product(const Eigen::VectorXd& x) const {
    ComplexMatrix p = ComplexMatrix::Identity(2, 2);
    for (int j = 0; j < factors; ++j) {
      ComplexMatrix d = ComplexMatrix::Zero(2, 2);
      d(0, 0) = unit_phase(x(j));
      d(1, 1) = unit_phase(-x(j));
      ComplexMatrix r = basis->adjoint() * d * (*basis);
      if (j % 2 == 1) r = twist->adjoint() * r * (*twist);
      p = p * r;
    }
    return p;
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const ComplexMatrix m = target->adjoint() * product(x);
    f.setZero(values());
    const double sign = m(0, 0).real() >= 0 ? 1.0 : -1.0;
    f(0) = sign * m(0, 0).imag();
    f(1) = sign * m(1, 0).real();
    f(2) = sign * m(1, 0).imag();
    return 0;
  }
};

}  // namespace detail

/// Word over {g1, g2} whose evaluation is within eps of `target` up to phase.
inline Su2Result su2_generate(const ComplexMatrix& g1, const ComplexMatrix& g2, const ComplexMatrix& target,
                              double eps, const Su2Options& opt = {}) {
  if (g1.rows() != 2 || g2.rows() != 2 || target.rows() != 2)
    throw DomainError("su2_generate: expects 2x2 matrices");
  if (!(eps > 0)) throw DomainError("su2_generate: eps must be positive");
  require_unitary(target, "su2_generate");
  const GeneratorSet gens("su2", {g1, g2});
  const ComplexMatrix tgt = su_project(target);
  const Quaternion tq = to_quaternion(tgt);
  std::array<ComplexMatrix, 4> letters = {su_project(g1), su_project(g2), su_project(g1).adjoint(),
                                          su_project(g2).adjoint()};
  const std::array<int, 4> letter_id = {1, 2, -1, -2};

  Su2Result result;
  auto measure = [&](const GeneratorWord& w) { return proj_distance(gens.evaluate(w), target); };

  // Breadth-first search over group elements, deduplicated projectively.
  std::vector<detail::Su2Node> nodes;
  nodes.push_back({{}, to_quaternion(ComplexMatrix::Identity(2, 2))});
  const double dup_tol = 1e-9;
  double threshold = eps / 4;  // wanted rotation angle of g
  QuaternionIndex dedup(1e-3), pairs(threshold);
  dedup.insert(nodes[0].q, 0);
  pairs.insert(nodes[0].q, 0);
  std::deque<int> queue{0};

  if (su2_distance(nodes[0].q, tq) < eps) {
    result.distance = measure({});
    if (result.distance < eps) return result;
  }

  std::mt19937 rng(opt.seed);
  for (int round = 0; round <= opt.rounds; ++round) {
    // search for a near-identity element with angle below the threshold
    ComplexMatrix g;
    GeneratorWord g_word;
    bool found = false;
    while (!found) {
      if (queue.empty())
        throw FiniteImageError("su2_generate: the generated group is finite (" + std::to_string(nodes.size()) +
                               " projective elements)");
      if (static_cast<int>(nodes.size()) >= opt.max_elements)
        throw BudgetError("su2_generate: search budget exhausted");
      const int cur = queue.front();
      queue.pop_front();
      const ComplexMatrix cm = from_quaternion(nodes[cur].q);
      for (int l = 0; l < 4; ++l) {
        const ComplexMatrix x = cm * letters[l];
        const Quaternion xq = to_quaternion(x);
        if (dedup.nearest(xq, dup_tol).first >= 0) continue;
        GeneratorWord w = nodes[cur].word;
        w.push_back(letter_id[l]);
        if (su2_distance(xq, tq) < eps) {
          const double d = measure(w);
          if (d < eps) {
            result.word = std::move(w);
            result.distance = d;
            result.searched = static_cast<int>(nodes.size());
            return result;
          }
        }
        auto [near, dist] = pairs.nearest(xq, threshold);
        if (!found && near >= 0 && dist > dup_tol) {
          ComplexMatrix cand = x * from_quaternion(nodes[near].q).adjoint();
          const double comm = std::max((cand * letters[0] - letters[0] * cand).norm(),
                                       (cand * letters[1] - letters[1] * cand).norm());
          if (comm > 1e-6 * dist) {
            g = cand;
            g_word = concat(w, inverse_word(nodes[near].word));
            found = true;
          }
        }
        const int id = static_cast<int>(nodes.size());
        nodes.push_back({std::move(w), xq});
        dedup.insert(xq, id);
        pairs.insert(xq, id);
        queue.push_back(id);
      }
    }
    result.searched = static_cast<int>(nodes.size());

    // g = U^-1 diag(e^{il}, e^{-il}) U with 0 < l < pi/2 after a sign fix
    if (g.trace().real() < 0) g = -g;
    auto eig = unitary_eigen(g);
    double lambda = std::arg(eig.values(0));
    ComplexMatrix basis = eig.vectors.adjoint();
    if (lambda < 0) {
      lambda = -lambda;
      basis.row(0).swap(basis.row(1));
    }
    const ComplexMatrix tw0 = letters[0], tw1 = letters[1];
    const bool use_first = (g * tw0 - tw0 * g).norm() >= (g * tw1 - tw1 * g).norm();
    const ComplexMatrix twist = use_first ? tw0 : tw1;
    const GeneratorWord twist_word{use_first ? 1 : 2};
    const GeneratorWord twist_inv = inverse_word(twist_word);

    auto factor = [&](int j, long long power) {
      ComplexMatrix d = ComplexMatrix::Zero(2, 2);
      d(0, 0) = unit_phase(power * lambda);
      d(1, 1) = unit_phase(-power * lambda);
      ComplexMatrix r = basis.adjoint() * d * basis;
      if (j % 2 == 1) r = twist.adjoint() * r * twist;
      return r;
    };
    auto rounded_distance = [&](const std::vector<long long>& p) {
      ComplexMatrix m = ComplexMatrix::Identity(2, 2);
      for (std::size_t j = 0; j < p.size(); ++j) m = m * factor(static_cast<int>(j), p[j]);
      return su2_distance(to_quaternion(m), tq);
    };

    for (int factors : {3, 5}) {
      detail::AngleFit fit{&basis, &twist, &tgt, factors};
      Eigen::NumericalDiff<detail::AngleFit> diff(fit);
      std::uniform_real_distribution<double> angle(-kPi, kPi);
      double best_res = 1e9;
      Eigen::VectorXd best_x;
      for (int s = 0; s < opt.starts && best_res > 1e-10; ++s) {
        Eigen::VectorXd x(factors);
        for (int j = 0; j < factors; ++j) x(j) = angle(rng);
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<detail::AngleFit>, double> lm(diff);
        lm.minimize(x);
        Eigen::VectorXd f(fit.values());
        fit(x, f);
        if (f.norm() < best_res) {
          best_res = f.norm();
          best_x = x;
        }
      }
      if (best_res > eps / 8) continue;

      // round each angle to a multiple of lambda; R(phi + pi) = -R(phi)
      std::vector<long long> p(factors);
      for (int j = 0; j < factors; ++j) {
        const double a = std::remainder(best_x(j), kPi);
        p[j] = std::llround(a / lambda);
      }
      double cur = rounded_distance(p);
      for (bool improved = true; improved;) {
        improved = false;
        for (int j = 0; j < factors; ++j)
          for (int delta : {-2, -1, 1, 2}) {
            auto q = p;
            q[j] += delta;
            const double d = rounded_distance(q);
            if (d < cur - 1e-15) {
              cur = d;
              p = q;
              improved = true;
            }
          }
      }
      if (cur >= eps) continue;

      GeneratorWord word;
      for (int j = 0; j < factors; ++j) {
        const GeneratorWord r = repeat_word(g_word, p[j]);
        if (j % 2 == 1) {
          word = concat({&word, &twist_inv, &r, &twist_word});
        } else {
          word = concat(word, r);
        }
      }
      const double measured = measure(word);
      if (measured < eps) {
        result.word = std::move(word);
        result.distance = measured;
        result.near_identity_angle = lambda;
        result.factors = factors;
        return result;
      }
    }
    // look for a closer pair
    threshold /= 2;
    QuaternionIndex finer(threshold);
    for (std::size_t j = 0; j < nodes.size(); ++j) finer.insert(nodes[j].q, static_cast<int>(j));
    pairs = std::move(finer);
  }
  throw BudgetError("su2_generate: no word within eps after refinement rounds");
}

/// The same on the {1,2} block of rho_1, rho_2 at level k.
inline Su2Result su2_generate(int k, const ComplexMatrix& target, double eps, const Su2Options& opt = {}) {
  // k = 6 is not special-cased: the search closes on the finite group
  const auto gens = su2_block_generators(k);
  return su2_generate(gens.elements[0], gens.elements[1], target, eps, opt);
}

}  // namespace tlbraid
