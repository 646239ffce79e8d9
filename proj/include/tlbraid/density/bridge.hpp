#pragma once

// Constructive density from a bridge: products of exact SU(A) and SU(B)
// elements and a mixing transformation W between orthogonal subspaces A, B.
//
// VectorMover drives an arbitrary vector onto a fixed v* in B with W v* in B;
// each pass of W~ = U_a W multiplies the residual A amplitude by |a|.
// bridge_synthesize builds SU(B_i), B_i = B_{i-1} + u_i, one basis vector of A
// at a time, factoring a target through one of its eigenvectors as
// U = W_psi^-1 V2 T^-1 V1 T W_psi.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "tlbraid/error.hpp"
#include "tlbraid/linalg.hpp"

namespace tlbraid {

enum class FactorKind { SubA, SubB, Bridge, BridgeInverse };

struct Factor {
  FactorKind kind;
  ComplexMatrix matrix;  // ambient
};

/// Factors in the order they are applied: the product is f_L ... f_2 f_1.
struct FactorSequence {
  std::vector<Factor> factors;

  std::size_t size() const noexcept { return factors.size(); }
  bool empty() const noexcept { return factors.empty(); }

  void append(const FactorSequence& later) {
    factors.insert(factors.end(), later.factors.begin(), later.factors.end());
  }
  void append(Factor f) { factors.push_back(std::move(f)); }

  FactorSequence inverse() const {
    FactorSequence inv;
    inv.factors.reserve(factors.size());
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      FactorKind kind = it->kind;
      if (kind == FactorKind::Bridge) kind = FactorKind::BridgeInverse;
      else if (kind == FactorKind::BridgeInverse) kind = FactorKind::Bridge;
      inv.factors.push_back({kind, it->matrix.adjoint()});
    }
    return inv;
  }

  ComplexMatrix evaluate(int dim) const {
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    for (const auto& f : factors) m = f.matrix * m;
    return m;
  }

  std::size_t count(FactorKind kind) const {
    std::size_t c = 0;
    for (const auto& f : factors) c += f.kind == kind;
    return c;
  }
};

/// Orthonormal basis columns for the coordinate vectors `indices` of C^dim.
inline ComplexMatrix coordinate_subspace(int dim, const std::vector<int>& indices) {
  ComplexMatrix q = ComplexMatrix::Zero(dim, static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 0 || indices[j] >= dim) throw DomainError("coordinate_subspace: index out of range");
    q(indices[j], static_cast<Eigen::Index>(j)) = 1.0;
  }
  return q;
}

/// q u q^dagger on span(q), identity on its complement.
inline ComplexMatrix embed_in_subspace(const ComplexMatrix& q, const ComplexMatrix& u) {
  const auto n = q.rows();
  return ComplexMatrix::Identity(n, n) - q * q.adjoint() + q * u * q.adjoint();
}

/// Unitary with first column v (v a unit vector).
inline ComplexMatrix complete_basis(const ComplexVector& v) {
  const ComplexMatrix column = v;
  Eigen::HouseholderQR<ComplexMatrix> qr(column);
  ComplexMatrix q = qr.householderQ();
  const Complex c = q.col(0).dot(v);
  q.col(0) *= c / std::abs(c);
  return q;
}

/// Element of SU(dim) taking the unit vector x exactly to the unit vector y;
/// dim >= 2.
inline ComplexMatrix su_mover(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("su_mover: need equal sizes >= 2");
  const ComplexMatrix bx = complete_basis(x / x.norm());
  ComplexMatrix by = complete_basis(y / y.norm());
  const Complex det = (by * bx.adjoint()).determinant();
  by.col(by.cols() - 1) *= std::conj(det) / std::abs(det);
  return by * bx.adjoint();
}

struct BridgeOptions {
  int max_iterations = 100000;  // per vector-mover run
  int retries = 5;              // tolerance tightenings in bridge_synthesize
  unsigned seed = 11;
};

/// Approximates an element of SU(B) (given in ambient form) by a sequence.
using SubRealizer = std::function<FactorSequence(const ComplexMatrix&)>;

struct MoverRun {
  FactorSequence factors;
  std::vector<double> residuals;  // component orthogonal to v*, after each pass
  int iterations = 0;
};

/// Moves vectors of A + B onto v* using exact SU(A) moves, SU(B) moves from a
/// realizer, and the bridge.  The subspaces may sit inside a larger ambient space.
class VectorMover {
 public:
  VectorMover(ComplexMatrix qa, ComplexMatrix qb, FactorSequence bridge, SubRealizer realize_b = {})
      : qa_(std::move(qa)), qb_(std::move(qb)), realize_b_(std::move(realize_b)) {
    const auto n = qa_.rows();
    if (qb_.rows() != n) throw DomainError("VectorMover: subspace dimension mismatch");
    if (qa_.cols() < 1 || qb_.cols() <= qa_.cols())
      throw DomainError("VectorMover: requires dim B > dim A >= 1");
    if ((qa_.adjoint() * qb_).norm() > 1e-8) throw DomainError("VectorMover: subspaces are not orthogonal");
    if (!realize_b_) {
      realize_b_ = [](const ComplexMatrix& m) {
        FactorSequence s;
        s.append({FactorKind::SubB, m});
        return s;
      };
    }
    const ComplexMatrix w = bridge.evaluate(static_cast<int>(n));

    // v* spans (part of) the kernel of P_A W restricted to B
    Eigen::JacobiSVD<ComplexMatrix> ker(qa_.adjoint() * w * qb_, Eigen::ComputeFullV);
    vstar_coords_ = ker.matrixV().col(qb_.cols() - 1);
    vstar_ = qb_ * vstar_coords_;

    // u* maximizes the projection of W u* on B
    Eigen::JacobiSVD<ComplexMatrix> mix(qb_.adjoint() * w * qa_, Eigen::ComputeFullV);
    if (mix.singularValues()(0) < 1e-8) throw NotABridgeError("W does not mix the two subspaces");
    ustar_coords_ = mix.matrixV().col(0);
    ustar_ = qa_ * ustar_coords_;

    tilde_ = std::move(bridge);
    const ComplexVector wu = w * ustar_;
    const ComplexVector a_part = qa_.adjoint() * wu;
    if (qa_.cols() >= 2 && a_part.norm() > 1e-14) {
      tilde_.append({FactorKind::SubA, embed_in_subspace(qa_, su_mover(a_part / a_part.norm(), ustar_coords_))});
    }
    tilde_matrix_ = tilde_.evaluate(static_cast<int>(n));
    amplitude_ = std::abs(ustar_.dot(tilde_matrix_ * ustar_));
  }

  const ComplexVector& vstar() const noexcept { return vstar_; }
  const ComplexVector& ustar() const noexcept { return ustar_; }
  /// |a| for W~ u* = a u* + b v
  double amplitude() const noexcept { return amplitude_; }
  const ComplexMatrix& tilde_matrix() const noexcept { return tilde_matrix_; }

  /// P with P psi = c v* + r, c > 0, |r| <= tol.
  MoverRun to_vstar(const ComplexVector& psi, double tol, int max_iterations) const {
    const int n = static_cast<int>(qa_.rows());
    MoverRun run;
    ComplexVector s = psi / psi.norm();

    auto move_b = [&] {
      const ComplexVector y = qb_.adjoint() * s;
      const double ny = y.norm();
      if (ny < 1e-15 || (y / ny - vstar_coords_).norm() < 1e-15) return;
      const FactorSequence f = realize_b_(embed_in_subspace(qb_, su_mover(y / ny, vstar_coords_)));
      s = f.evaluate(n) * s;
      run.factors.append(f);
    };
    auto residual = [&] { return (s - vstar_.dot(s) * vstar_).norm(); };

    const ComplexVector x = qa_.adjoint() * s;
    if (qa_.cols() >= 2 && x.norm() > 1e-15) {
      const ComplexMatrix ua = embed_in_subspace(qa_, su_mover(x / x.norm(), ustar_coords_));
      s = ua * s;
      run.factors.append({FactorKind::SubA, ua});
    }
    move_b();
    run.residuals.push_back(residual());
    while (run.residuals.back() > tol) {
      if (run.iterations >= max_iterations)
        throw BudgetError("vector mover: no convergence after " + std::to_string(max_iterations) + " passes");
      if (run.iterations >= 64 && run.residuals.back() > 0.999 * run.residuals[run.residuals.size() - 33])
        throw BudgetError("vector mover: residual stalled at " + std::to_string(run.residuals.back()));
      run.factors.append(tilde_);
      s = tilde_matrix_ * s;
      move_b();
      ++run.iterations;
      run.residuals.push_back(residual());
    }
    return run;
  }

  /// psi -> phi (both unit vectors), each leg run to tol.
  MoverRun move(const ComplexVector& psi, const ComplexVector& phi, double tol, int max_iterations) const {
    MoverRun a = to_vstar(psi, tol, max_iterations);
    const MoverRun b = to_vstar(phi, tol, max_iterations);
    a.factors.append(b.factors.inverse());
    a.iterations += b.iterations;
    return a;
  }

 private:
  ComplexMatrix qa_, qb_;
  SubRealizer realize_b_;
  ComplexVector vstar_coords_, vstar_, ustar_coords_, ustar_;
  FactorSequence tilde_;
  ComplexMatrix tilde_matrix_;
  double amplitude_ = 0.0;
};

namespace detail {

inline void check_bridge_inputs(const ComplexMatrix& qa, const ComplexMatrix& qb, const ComplexMatrix& w) {
  if (qa.rows() != qb.rows() || w.rows() != qa.rows() || w.cols() != qa.rows())
    throw DomainError("bridge: dimension mismatch");
  if (qa.cols() < 1 || qb.cols() <= qa.cols()) throw DomainError("bridge: requires dim B > dim A >= 1");
  if ((qa.adjoint() * qa - ComplexMatrix::Identity(qa.cols(), qa.cols())).norm() > 1e-9 ||
      (qb.adjoint() * qb - ComplexMatrix::Identity(qb.cols(), qb.cols())).norm() > 1e-9)
    throw DomainError("bridge: subspace bases must be orthonormal");
  require_unitary(w, "bridge");
}

inline FactorSequence single(FactorKind kind, const ComplexMatrix& m) {
  FactorSequence s;
  s.append({kind, m});
  return s;
}

}  // namespace detail

struct BridgeMove {
  FactorSequence factors;
  double distance = 0.0;   // |P psi - phi|
  double amplitude = 0.0;  // |a|
  int iterations = 0;      // passes of W~ on the psi leg
  std::vector<double> residuals;
};

/// Product of SU(A), SU(B) elements and W taking psi to within eps of phi.
inline BridgeMove bridge_move(const ComplexMatrix& qa, const ComplexMatrix& qb, const ComplexMatrix& w,
                              const ComplexVector& psi, const ComplexVector& phi, double eps,
                              const BridgeOptions& opt = {}) {
  detail::check_bridge_inputs(qa, qb, w);
  if (!(eps > 0)) throw DomainError("bridge_move: eps must be positive");
  const ComplexVector p = psi / psi.norm(), f = phi / phi.norm();
  BridgeMove result;
  if ((p - f).norm() < 1e-14) return result;
  const VectorMover mover(qa, qb, detail::single(FactorKind::Bridge, w));
  result.amplitude = mover.amplitude();
  const int n = static_cast<int>(qa.rows());
  for (double tol = eps / 4;; tol /= 16) {
    MoverRun leg = mover.to_vstar(p, tol, opt.max_iterations);
    const MoverRun back = mover.to_vstar(f, tol, opt.max_iterations);
    result.iterations = leg.iterations;
    result.residuals = leg.residuals;
    result.factors = leg.factors;
    result.factors.append(back.factors.inverse());
    result.distance = (result.factors.evaluate(n) * p - f).norm();
    if (result.distance < eps || tol < 1e-14) return result;
  }
}

/// T taking u_t (column t of qa) to v_1 (column 0 of qb) while approximately
/// fixing the other columns of qa.
inline FactorSequence peel_mover(const ComplexMatrix& qa, const ComplexMatrix& qb, const FactorSequence& bridge,
                                 int t, double tol, std::mt19937& rng, const BridgeOptions& opt) {
  const auto a = qa.cols();
  const int n = static_cast<int>(qa.rows());
  const ComplexVector v1 = qb.col(0);
  // order[0] is the vector to move; the others are peeled off from the back
  std::vector<Eigen::Index> order{t};
  for (Eigen::Index j = 0; j < a; ++j)
    if (j != t) order.push_back(j);
  FactorSequence w = bridge;
  for (Eigen::Index level = 0;; ++level) {
    const Eigen::Index size = a - level;
    ComplexMatrix sub(n, size);
    for (Eigen::Index j = 0; j < size; ++j) sub.col(j) = qa.col(order[j]);
    const VectorMover mover(sub, qb, w);
    const ComplexVector last = sub.col(size - 1);
    // the intermediate movers are conjugated into the next bridge, whose leak
    // out of the remaining subspace bounds the final accuracy
    const double level_tol = size == 1 ? tol : std::max(tol * 1e-4, 1e-13);
    FactorSequence tj = mover.move(last, v1, level_tol, opt.max_iterations).factors;
    if (size == 1) return tj;
    // W' = T^-1 U V' T fixes the peeled vector and still mixes what is left
    FactorSequence next = tj;
    next.append({FactorKind::SubA, embed_in_subspace(sub, haar_special_unitary(static_cast<int>(size), rng))});
    if (qb.cols() >= 3) {
      const ComplexMatrix rest = qb.rightCols(qb.cols() - 1);
      next.append({FactorKind::SubB, embed_in_subspace(rest, haar_special_unitary(static_cast<int>(rest.cols()), rng))});
    }
    next.append(tj.inverse());
    w = std::move(next);
  }
}

struct BridgeSynthesis {
  FactorSequence factors;
  double distance = 0.0;  // projective
  double tolerance = 0.0;  // internal mover tolerance of the accepted attempt
};

namespace detail {

class BridgeSynthesizer {
 public:
  BridgeSynthesizer(ComplexMatrix qa, ComplexMatrix qb, ComplexMatrix w, double tol, const BridgeOptions& opt)
      : qa_(std::move(qa)), qb_(std::move(qb)), w_(std::move(w)), n_(static_cast<int>(qa_.rows())), tol_(tol),
        opt_(opt), rng_(opt.seed), peel_(qa_.cols()) {}

  /// basis of B_i = B + span{u_1..u_i}
  ComplexMatrix stage_basis(int i) const {
    ComplexMatrix q(n_, qb_.cols() + i);
    q << qb_, qa_.leftCols(i);
    return q;
  }

  /// Approximate an element of SU(B_i) given in ambient form.
  FactorSequence realize(int i, const ComplexMatrix& v) {
    const ComplexMatrix q = stage_basis(i);
    const ComplexMatrix block = su_project_unchecked(nearest_unitary(q.adjoint() * v * q));
    const auto bdim = block.rows();
    if ((block - ComplexMatrix::Identity(bdim, bdim)).norm() < 1e-14) return {};
    if (i == 0) return single(FactorKind::SubB, embed_in_subspace(q, block));

    const ComplexMatrix vi = embed_in_subspace(q, block);
    const auto eig = unitary_eigen(block);
    const ComplexVector psi = q * eig.vectors.col(0);
    const double theta = std::arg(eig.values(0));
    const ComplexVector ui = qa_.col(i - 1);

    const FactorSequence& t = peel(i);
    const ComplexMatrix tm = t.evaluate(n_);
    const ComplexMatrix prev = stage_basis(i - 1);
    const VectorMover mover(ui, prev, t, [this, i](const ComplexMatrix& m) { return realize(i - 1, m); });
    const FactorSequence wpsi = mover.move(psi, ui, tol_, opt_.max_iterations).factors;
    const ComplexMatrix wm = wpsi.evaluate(n_);

    ComplexMatrix v1 = ComplexMatrix::Identity(n_, n_);
    const ComplexVector b1 = qb_.col(0), b2 = qb_.col(1);
    v1 += (unit_phase(theta) - 1.0) * b1 * b1.adjoint() + (unit_phase(-theta) - 1.0) * b2 * b2.adjoint();
    const FactorSequence s1 = realize(i - 1, v1);
    const ComplexMatrix x = tm.adjoint() * s1.evaluate(n_) * tm;
    const ComplexMatrix u1 = wm * vi * wm.adjoint();
    const FactorSequence s2 = realize(i - 1, u1 * x.adjoint());

    FactorSequence out = wpsi;
    out.append(t);
    out.append(s1);
    out.append(t.inverse());
    out.append(s2);
    out.append(wpsi.inverse());
    return out;
  }

 private:
  const FactorSequence& peel(int i) {
    auto& slot = peel_[i - 1];
    if (!slot) slot = peel_mover(qa_, qb_, single(FactorKind::Bridge, w_), i - 1, tol_, rng_, opt_);
    return *slot;
  }

  ComplexMatrix qa_, qb_, w_;
  int n_;
  double tol_;
  BridgeOptions opt_;
  std::mt19937 rng_;
  std::vector<std::optional<FactorSequence>> peel_;
};

}  // namespace detail

/// Approximates target in SU(A + B) by a product of SU(A), SU(B) elements and W.
inline BridgeSynthesis bridge_synthesize(const ComplexMatrix& qa, const ComplexMatrix& qb, const ComplexMatrix& w,
                                         const ComplexMatrix& target, double eps, const BridgeOptions& opt = {}) {
  detail::check_bridge_inputs(qa, qb, w);
  if (!(eps > 0)) throw DomainError("bridge_synthesize: eps must be positive");
  const int n = static_cast<int>(qa.rows());
  if (target.rows() != n || target.cols() != n) throw DomainError("bridge_synthesize: target dimension mismatch");
  if (qa.cols() + qb.cols() != n) throw DomainError("bridge_synthesize: A + B must be the whole space");
  require_unitary(target, "bridge_synthesize");
  const ComplexMatrix tgt = su_project_unchecked(target);

  BridgeSynthesis result;
  result.distance = proj_distance(ComplexMatrix::Identity(n, n), tgt);
  if (result.distance < 1e-12) return result;

  // target acting on B alone, up to phase
  {
    const ComplexMatrix ab = qa.adjoint() * tgt * qa;
    const Complex c = ab.trace() / static_cast<double>(ab.rows());
    if (std::abs(c) > 1e-12) {
      const ComplexMatrix scaled = tgt * (std::abs(c) / c);
      const ComplexMatrix b_block = su_project_unchecked(nearest_unitary(qb.adjoint() * scaled * qb));
      const ComplexMatrix f = embed_in_subspace(qb, b_block);
      const double d = proj_distance(f, tgt);
      if (d < std::min(eps, 1e-9)) {
        result.factors = detail::single(FactorKind::SubB, f);
        result.distance = d;
        return result;
      }
    }
  }

  const int stages = static_cast<int>(qa.cols());
  double tol = eps / 16;
  for (int attempt = 0; attempt <= opt.retries; ++attempt, tol /= 16) {
    detail::BridgeSynthesizer synth(qa, qb, w, tol, opt);
    FactorSequence seq = synth.realize(stages, tgt);
    const double d = proj_distance(seq.evaluate(n), tgt);
    if (attempt == 0 || d < result.distance) {
      result.factors = std::move(seq);
      result.distance = d;
      result.tolerance = tol;
    }
    if (result.distance < eps) return result;
  }
  return result;
}

}  // namespace tlbraid
