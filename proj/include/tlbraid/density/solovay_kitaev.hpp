#pragma once

// Solovay-Kitaev refinement over an epsilon-net with balanced group
// commutators: U_n = V W V^-1 W^-1 U_{n-1} where [V, W] approximates
// U U_{n-1}^-1.

#include <cmath>
#include <vector>

#include "tlbraid/density/generators.hpp"
#include "tlbraid/density/net.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/linalg.hpp"

namespace tlbraid {

struct SkOptions {
  bool allow_uncertified = false;   // run even when coverage < min_coverage
  double min_coverage = 0.99;
  double fallback_angle = 1e-6;     // below this the commutator step is skipped
};

struct SkResult {
  GeneratorWord word;
  double distance = 0.0;  // projective, measured on the evaluated word
  int depth = 0;
  int fallbacks = 0;      // commutator steps replaced by the previous level
};

namespace detail {

inline ComplexMatrix pauli(int j) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  if (j == 0) p << 0, 1, 1, 0;
  if (j == 1) p << 0, Complex(0, -1), Complex(0, 1), 0;
  if (j == 2) p << 1, 0, 0, -1;
  return p;
}

/// exp(-i phi/2 n.sigma)
inline ComplexMatrix su2_rotation(int axis, double phi) {
  return std::cos(phi / 2) * ComplexMatrix::Identity(2, 2) - kI * std::sin(phi / 2) * pauli(axis);
}

/// Unitary S with S x S^dagger = y for unitaries x, y with equal spectra.
inline ComplexMatrix similarity(const ComplexMatrix& x, const ComplexMatrix& y) {
  auto ex = unitary_eigen(x), ey = unitary_eigen(y);
  const auto n = x.rows();
  // pair eigenvectors by eigenphase
  std::vector<Eigen::Index> ox(n), oy(n);
  for (Eigen::Index j = 0; j < n; ++j) ox[j] = oy[j] = j;
  std::sort(ox.begin(), ox.end(), [&](auto a, auto b) { return std::arg(ex.values(a)) < std::arg(ex.values(b)); });
  std::sort(oy.begin(), oy.end(), [&](auto a, auto b) { return std::arg(ey.values(a)) < std::arg(ey.values(b)); });
  ComplexMatrix px(n, n), py(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    px.col(j) = ex.vectors.col(ox[j]);
    py.col(j) = ey.vectors.col(oy[j]);
  }
  return py * px.adjoint();
}

/// V, W in SU(2) with V W V^dagger W^dagger = delta (delta in SU(2) near 1).
inline std::pair<ComplexMatrix, ComplexMatrix> su2_balanced_commutator(const ComplexMatrix& delta) {
  const double c = std::clamp(delta.trace().real() / 2, -1.0, 1.0);  // cos(theta/2)
  const double s2 = std::sqrt(std::max(0.0, (1 - c) / 2));            // sin^2(phi/2)
  const double phi = 2 * std::asin(std::sqrt(s2));
  const ComplexMatrix v = su2_rotation(0, phi), w = su2_rotation(1, phi);
  const ComplexMatrix comm = v * w * v.adjoint() * w.adjoint();
  const ComplexMatrix s = similarity(comm, delta);
  return {s * v * s.adjoint(), s * w * s.adjoint()};
}

/// V = exp(iF), W = exp(iG) with [V, W] = delta to second order: F is diagonal
/// and G off-diagonal in a basis where log(delta) has zero diagonal.
inline std::pair<ComplexMatrix, ComplexMatrix> balanced_commutator(const ComplexMatrix& delta) {
  const auto d = delta.rows();
  if (d == 2) return su2_balanced_commutator(delta);
  ComplexMatrix h = log_unitary(delta);
  h -= (h.trace() / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  // Fourier change of basis: the diagonal of h becomes tr(h)/d = 0
  ComplexMatrix fourier(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      fourier(a, b) = unit_phase(2 * kPi * static_cast<double>(a * b) / static_cast<double>(d)) /
                      std::sqrt(static_cast<double>(d));
  const ComplexMatrix basis = es.eigenvectors() * fourier;
  const ComplexMatrix hb = basis.adjoint() * h * basis;
  Eigen::VectorXd f(d);
  for (Eigen::Index j = 0; j < d; ++j) f(j) = static_cast<double>(j) - static_cast<double>(d - 1) / 2;
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      if (a != b) g(a, b) = -kI * hb(a, b) / (f(a) - f(b));
  // [F, G] = -i h is invariant under F -> sF, G -> G/s; balance the norms
  const double nf = f.norm(), ng = g.norm();
  const double scale = ng > 0 ? std::sqrt(ng / nf) : 1.0;
  ComplexMatrix fm = ComplexMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) fm(j, j) = f(j) * scale;
  g /= scale;
  const ComplexMatrix fa = basis * fm * basis.adjoint(), ga = basis * g * basis.adjoint();
  return {exp_i_hermitian(0.5 * (fa + fa.adjoint())), exp_i_hermitian(0.5 * (ga + ga.adjoint()))};
}

/// rotation size of a near-identity unitary: the largest |eigenphase|
inline double max_eigenphase(const ComplexMatrix& u) {
  const auto e = unitary_eigen(u);
  double m = 0.0;
  for (Eigen::Index j = 0; j < e.values.size(); ++j) m = std::max(m, std::abs(std::arg(e.values(j))));
  return m;
}

inline GeneratorWord sk_recurse(const ComplexMatrix& u, int depth, const EpsilonNet& net, const SkOptions& opt,
                                int& fallbacks) {
  if (depth == 0) return net.entries[net.nearest(u).first].word;
  const GeneratorWord prev = sk_recurse(u, depth - 1, net, opt, fallbacks);
  const ComplexMatrix up = net.generators.evaluate(prev);
  const ComplexMatrix delta = nearest_identity_representative(su_project_unchecked(u * up.adjoint()));
  if (max_eigenphase(delta) < opt.fallback_angle) {
    ++fallbacks;
    return prev;
  }
  const auto [v, w] = balanced_commutator(delta);
  const GeneratorWord vw = sk_recurse(v, depth - 1, net, opt, fallbacks);
  const GeneratorWord ww = sk_recurse(w, depth - 1, net, opt, fallbacks);
  const GeneratorWord vi = inverse_word(vw), wi = inverse_word(ww);
  return concat({&vw, &ww, &vi, &wi, &prev});
}

}  // namespace detail

/// Word over net.generators approximating target to SK depth `depth`.
inline SkResult solovay_kitaev(const ComplexMatrix& target, const EpsilonNet& net, int depth,
                               const SkOptions& opt = {}) {
  if (depth < 0) throw DomainError("solovay_kitaev: depth must be non-negative");
  if (target.rows() != net.dim() || target.cols() != net.dim())
    throw DomainError("solovay_kitaev: target dimension differs from the net");
  if (net.entries.empty()) throw DomainError("solovay_kitaev: empty net");
  require_unitary(target, "solovay_kitaev");
  if (!opt.allow_uncertified && net.coverage.fraction < opt.min_coverage)
    throw CoverageError("solovay_kitaev: net coverage " + std::to_string(net.coverage.fraction) + " at eps " +
                        std::to_string(net.eps) + " is below " + std::to_string(opt.min_coverage) + " (" +
                        std::to_string(net.coverage.covered) + "/" + std::to_string(net.coverage.samples) +
                        " samples covered)");
  SkResult r;
  r.depth = depth;
  r.word = detail::sk_recurse(su_project_unchecked(target), depth, net, opt, r.fallbacks);
  r.distance = proj_distance(net.generators.evaluate(r.word), target);
  return r;
}

}  // namespace tlbraid
