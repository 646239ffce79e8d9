#pragma once

// Unit quaternions for SU(2) and a projective grid index over them.

#include <array>
#include <cmath>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tlbraid/linalg.hpp"

namespace tlbraid {

using Quaternion = std::array<double, 4>;

/// SU(2) element [[a, -b*], [b, a*]] as (Re a, Im a, Re b, Im b).
inline Quaternion to_quaternion(const ComplexMatrix& u) {
  const Complex a = u(0, 0), b = u(1, 0);
  return {a.real(), a.imag(), b.real(), b.imag()};
}

inline ComplexMatrix from_quaternion(const Quaternion& q) {
  ComplexMatrix u(2, 2);
  const Complex a(q[0], q[1]), b(q[2], q[3]);
  u << a, -std::conj(b), b, std::conj(a);
  return u;
}

/// Projective distance between SU(2) elements, sqrt(2 - 2|<p,q>|), computed
/// as min(|p - q|, |p + q|) to keep precision near zero.
inline double su2_distance(const Quaternion& p, const Quaternion& q) {
  double minus = 0.0, plus = 0.0;
  for (int j = 0; j < 4; ++j) {
    minus += (p[j] - q[j]) * (p[j] - q[j]);
    plus += (p[j] + q[j]) * (p[j] + q[j]);
  }
  return std::sqrt(std::min(minus, plus));
}

/// Grid hash over the unit 3-sphere; a query also visits the antipode, so
/// lookups are projective.
class QuaternionIndex {
 public:
  explicit QuaternionIndex(double cell) : cell_(cell) {}

  void insert(const Quaternion& q, int id) { grid_[key(q)].push_back({q, id}); }

  /// nearest stored point within `radius` (radius <= cell); -1 if none
  std::pair<int, double> nearest(const Quaternion& q, double radius) const {
    int best = -1;
    double best_d = radius;
    for (int s : {1, -1}) {
      const Quaternion p{s * q[0], s * q[1], s * q[2], s * q[3]};
      const auto base = cell_of(p);
      for (int o = 0; o < 81; ++o) {
        std::array<long long, 4> c = base;
        int t = o;
        for (int j = 0; j < 4; ++j, t /= 3) c[j] += (t % 3) - 1;
        auto it = grid_.find(hash(c));
        if (it == grid_.end()) continue;
        for (const auto& [stored, id] : it->second) {
          const double d = su2_distance(stored, q);
          if (d <= best_d) {
            best_d = d;
            best = id;
          }
        }
      }
    }
    return {best, best_d};
  }

 private:
  std::array<long long, 4> cell_of(const Quaternion& q) const {
    std::array<long long, 4> c{};
    for (int j = 0; j < 4; ++j) c[j] = static_cast<long long>(std::floor(q[j] / cell_));
    return c;
  }
  static long long hash(const std::array<long long, 4>& c) {
    long long h = 0;
    for (long long x : c) h = h * 1000003LL + (x + 4096);
    return h;
  }
  long long key(const Quaternion& q) const { return hash(cell_of(q)); }

  double cell_;
  std::unordered_map<long long, std::vector<std::pair<Quaternion, int>>> grid_;
};

}  // namespace tlbraid
