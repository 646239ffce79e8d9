#pragma once

// Dense complex linear algebra shared by the representation, encoding and
// synthesis code.  Matrices are small (dimension <= a few hundred), so every
// routine works on explicit dense Eigen matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "tlbraid/error.hpp"

namespace tlbraid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

inline Complex unit_phase(double angle) { return std::polar(1.0, angle); }

/// Largest singular value.
inline double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

inline double unitarity_defect(const ComplexMatrix& u) {
  return (u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.rows())).norm();
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-8) {
  return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

inline void require_unitary(const ComplexMatrix& u, const char* who, double tol = 1e-8) {
  if (u.rows() != u.cols()) throw DomainError(std::string(who) + ": matrix is not square");
  if (unitarity_defect(u) > tol) throw DomainError(std::string(who) + ": matrix is not unitary");
}

/// Eigen-decomposition of a unitary (normal) matrix through the complex Schur
/// form: for normal input T is diagonal and Q is unitary.
struct UnitaryEigen {
  ComplexVector values;
  ComplexMatrix vectors;
};

inline UnitaryEigen unitary_eigen(const ComplexMatrix& u) {
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  return {schur.matrixT().diagonal(), schur.matrixU()};
}

/// Length of the shortest arc of the unit circle that contains all the
/// given phases.  min over phi of max_j |e^{i a_j} - e^{i phi}| equals
/// 2 sin(arc/4).
inline double covering_arc(std::vector<double> angles) {
  if (angles.size() <= 1) return 0.0;
  std::sort(angles.begin(), angles.end());
  double largest_gap = angles.front() + 2 * kPi - angles.back();
  for (std::size_t j = 1; j < angles.size(); ++j)
    largest_gap = std::max(largest_gap, angles[j] - angles[j - 1]);
  return 2 * kPi - largest_gap;
}

/// min over phi of ||U - e^{i phi} V|| for unitaries, without argument checks.
/// For unitaries the difference has the same norm as U V^dagger - e^{i phi}, whose
/// singular values are the chord lengths from e^{i phi} to the eigenvalues of
/// U V^dagger, so the minimum is attained at the centre of the covering arc.
inline double proj_distance_unchecked(const ComplexMatrix& u, const ComplexMatrix& v) {
  ComplexMatrix w = u * v.adjoint();
  ComplexVector ev;
  if (w.rows() == 1) {
    ev = w.diagonal();
  } else {
    ev = unitary_eigen(w).values;
  }
  std::vector<double> angles(ev.size());
  for (Eigen::Index j = 0; j < ev.size(); ++j) angles[j] = std::arg(ev(j));
  return 2.0 * std::sin(covering_arc(std::move(angles)) / 4.0);
}

/// Projective (global-phase-insensitive) operator-norm distance of two unitaries.
inline double proj_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DomainError("proj_distance: dimension mismatch");
  require_unitary(u, "proj_distance");
  require_unitary(v, "proj_distance");
  return proj_distance_unchecked(u, v);
}

/// The phase minimizing the Frobenius distance ||X - e^{i phi} Y||_F, i.e. the
/// argument of tr(Y^dagger X); 0 when that trace vanishes.
inline double frobenius_phase(const ComplexMatrix& x, const ComplexMatrix& y) {
  Complex t = (y.adjoint() * x).trace();
  return std::abs(t) > 0.0 ? std::arg(t) : 0.0;
}

struct PhaseAlignment {
  double distance = 0.0;
  double phase = 0.0;  // X is closest to e^{i phase} Y
};

/// min over phi of ||X - e^{i phi} Y|| (operator norm) for arbitrary equally-shaped
/// matrices: a scan over `samples` phases followed by golden-section refinement
/// around the best sample.
inline PhaseAlignment phase_aligned_distance(const ComplexMatrix& x, const ComplexMatrix& y,
                                             int samples = 1000) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DomainError("phase_aligned_distance: dimension mismatch");
  auto f = [&](double phi) { return operator_norm(x - unit_phase(phi) * y); };
  double best_phi = frobenius_phase(x, y);
  double best = f(best_phi);
  const double step = 2 * kPi / samples;
  for (int s = 0; s < samples; ++s) {
    double phi = s * step;
    double val = f(phi);
    if (val < best) {
      best = val;
      best_phi = phi;
    }
  }
  double lo = best_phi - step, hi = best_phi + step;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = f(d);
    }
  }
  double mid = 0.5 * (lo + hi);
  double fm = f(mid);
  if (fm < best) {
    best = fm;
    best_phi = mid;
  }
  return {best, std::remainder(best_phi, 2 * kPi)};
}

/// (det U)^{-1/d} U with the principal branch of the root.
inline ComplexMatrix su_project_unchecked(const ComplexMatrix& u) {
  Complex det = u.determinant();
  return unit_phase(-std::arg(det) / static_cast<double>(u.rows())) * u;
}

inline ComplexMatrix su_project(const ComplexMatrix& u) {
  require_unitary(u, "su_project");
  return su_project_unchecked(u);
}

/// Among the determinant-preserving scalar multiples omega*U (omega a d-th root
/// of unity), the one closest to the identity.
inline ComplexMatrix nearest_identity_representative(const ComplexMatrix& u) {
  const auto d = static_cast<double>(u.rows());
  const Complex tr = u.trace();
  ComplexMatrix best = u;
  double best_re = tr.real();
  for (int j = 1; j < static_cast<int>(d); ++j) {
    Complex w = unit_phase(2 * kPi * j / d);
    double re = (w * tr).real();
    if (re > best_re) {
      best_re = re;
      best = w * u;
    }
  }
  return best;
}

/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
template <class Rng>
ComplexMatrix haar_unitary(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) z(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    Complex rjj = r(j, j);
    q.col(j) *= std::abs(rjj) > 0 ? rjj / std::abs(rjj) : Complex(1.0);
  }
  return q;
}

template <class Rng>
ComplexMatrix haar_special_unitary(int dim, Rng& rng) {
  return su_project_unchecked(haar_unitary(dim, rng));
}

template <class Rng>
ComplexVector random_unit_vector(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(dim);
  for (int j = 0; j < dim; ++j) v(j) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

/// exp(i H) for Hermitian H.
inline ComplexMatrix exp_i_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  ComplexVector phases(h.rows());
  for (Eigen::Index j = 0; j < h.rows(); ++j) phases(j) = unit_phase(es.eigenvalues()(j));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Hermitian H with exp(i H) = U and eigenvalues of H in (-pi, pi].
inline ComplexMatrix log_unitary(const ComplexMatrix& u) {
  auto eig = unitary_eigen(u);
  ComplexVector angles(u.rows());
  for (Eigen::Index j = 0; j < u.rows(); ++j) angles(j) = std::arg(eig.values(j));
  ComplexMatrix h = eig.vectors * angles.asDiagonal() * eig.vectors.adjoint();
  return 0.5 * (h + h.adjoint());
}

/// Closest unitary in Frobenius norm (polar factor).
inline ComplexMatrix nearest_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// Integer power of a square matrix by repeated squaring; negative powers use
/// the adjoint (the argument is assumed unitary).
inline ComplexMatrix matrix_power(const ComplexMatrix& m, long long exponent) {
  ComplexMatrix base = exponent < 0 ? ComplexMatrix(m.adjoint()) : m;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-exponent)
                                      : static_cast<unsigned long long>(exponent);
  ComplexMatrix result = ComplexMatrix::Identity(m.rows(), m.cols());
  while (e) {
    if (e & 1ull) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

}  // namespace tlbraid
