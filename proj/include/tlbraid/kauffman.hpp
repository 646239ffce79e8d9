#pragma once

// Kauffman bracket and Jones polynomial of plat closures.
//
// Each crossing sigma_i resolves as A E_i + A^-1 1 (and sigma_i^-1 as
// A^-1 E_i + A 1); the smoothed plat diagram is evaluated by composing
// Temperley-Lieb tangles from the cap row down to the cup row and counting the
// closed loops.  bracket() is the brute-force 2^m state sum; bracket_fast()
// accumulates the same sum over planar matchings row by row.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "tlbraid/braid.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/laurent.hpp"

namespace tlbraid {

/// A crossingless tangle from `top` upper points to `bottom` lower points.
/// Points 0..top-1 are the upper boundary, top..top+bottom-1 the lower one.
class TLDiagram {
 public:
  TLDiagram() = default;
  TLDiagram(int top, int bottom, std::vector<int> partner, int loops = 0)
      : top_(top), bottom_(bottom), partner_(std::move(partner)), loops_(loops) {}

  static TLDiagram identity(int n) {
    std::vector<int> p(2 * n);
    for (int j = 0; j < n; ++j) p[j] = n + j, p[n + j] = j;
    return {n, n, std::move(p)};
  }

  /// E_i for 1 <= i <= n-1: cup on the upper pegs i,i+1 and cap on the lower ones.
  static TLDiagram generator(int n, int i) {
    if (i < 1 || i > n - 1) throw DomainError("TLDiagram::generator: index out of range");
    TLDiagram d = identity(n);
    const int a = i - 1, b = i;
    d.partner_[a] = b;
    d.partner_[b] = a;
    d.partner_[n + a] = n + b;
    d.partner_[n + b] = n + a;
    return d;
  }

  /// Caps joining lower points (1,2),(3,4),...: a tangle from 0 to n points.
  static TLDiagram cap_row(int n) {
    std::vector<int> p(n);
    for (int j = 0; j + 1 < n; j += 2) p[j] = j + 1, p[j + 1] = j;
    return {0, n, std::move(p)};
  }

  /// Cups joining upper points (1,2),(3,4),...: a tangle from n to 0 points.
  static TLDiagram cup_row(int n) {
    std::vector<int> p(n);
    for (int j = 0; j + 1 < n; j += 2) p[j] = j + 1, p[j + 1] = j;
    return {n, 0, std::move(p)};
  }

  int top() const noexcept { return top_; }
  int bottom() const noexcept { return bottom_; }
  int loops() const noexcept { return loops_; }
  const std::vector<int>& partner() const noexcept { return partner_; }

  bool is_planar() const {
    // boundary points read clockwise: upper left-to-right, lower right-to-left
    const int total = top_ + bottom_;
    auto pos = [&](int p) { return p < top_ ? p : top_ + (bottom_ - 1 - (p - top_)); };
    for (int p = 0; p < total; ++p) {
      int q = partner_[p];
      if (q < 0 || q >= total || partner_[q] != p || q == p) return false;
      int a = std::min(pos(p), pos(q)), b = std::max(pos(p), pos(q));
      for (int r = 0; r < total; ++r) {
        int s = partner_[r];
        int c = pos(r), e = pos(s);
        bool r_in = c > a && c < b, s_in = e > a && e < b;
        if (r_in != s_in && r != p && r != q && s != p && s != q) return false;
      }
    }
    return true;
  }

  /// Same boundary matching (loop counts are compared separately).
  friend bool operator==(const TLDiagram& x, const TLDiagram& y) {
    return x.top_ == y.top_ && x.bottom_ == y.bottom_ && x.partner_ == y.partner_;
  }

  /// `upper` stacked on top of `lower`; new closed loops are added to the count.
  friend TLDiagram compose(const TLDiagram& upper, const TLDiagram& lower) {
    if (upper.bottom_ != lower.top_) throw DomainError("TLDiagram compose: shape mismatch");
    const int t = upper.top_, mid = upper.bottom_, b = lower.bottom_;
    std::vector<int> partner(t + b, -1);
    std::vector<char> seen(mid, 0);
    // Follow an arc from a point of `upper` (side 0) or `lower` (side 1) until
    // it exits through an outer boundary point; returns the result index.
    auto follow = [&](int side, int p) {
      while (true) {
        if (side == 0) {
          int q = upper.partner_[p];
          if (q < t) return q;
          int j = q - t;
          seen[j] = 1;
          side = 1;
          p = j;  // upper point j of `lower`
        } else {
          int q = lower.partner_[p];
          if (q >= mid) return t + (q - mid);
          seen[q] = 1;
          side = 0;
          p = t + q;  // lower point q of `upper`
        }
      }
    };
    for (int p = 0; p < t; ++p)
      if (partner[p] < 0) {
        int q = follow(0, p);
        partner[p] = q;
        partner[q] = p;
      }
    for (int p = 0; p < b; ++p)
      if (partner[t + p] < 0) {
        int q = follow(1, mid + p);
        partner[t + p] = q;
        partner[q] = t + p;
      }
    int loops = upper.loops_ + lower.loops_;
    for (int j = 0; j < mid; ++j) {
      if (seen[j]) continue;
      ++loops;
      // walk the closed loop through middle point j
      int cur = j;
      do {
        seen[cur] = 1;
        int q = lower.partner_[cur];  // q is another middle point (closed loop)
        seen[q] = 1;
        int r = upper.partner_[t + q] - t;
        cur = r;
      } while (!seen[cur]);
    }
    return {t, b, std::move(partner), loops};
  }

 private:
  int top_ = 0, bottom_ = 0;
  std::vector<int> partner_;
  int loops_ = 0;
};

struct BracketOptions {
  /// the brute-force oracle refuses words longer than this
  int max_crossings = 30;
};

/// Kauffman bracket of the plat closure, normalized so a single unknot gives 1.
/// Brute-force sum over all 2^m smoothing states.
inline LaurentPolynomial bracket(const BraidWord& b, const BracketOptions& opt = {}) {
  const PlatDiagram pd = plat_close(b);
  const int n = pd.strands;
  const int m = static_cast<int>(pd.crossings.size());
  if (m > opt.max_crossings)
    throw BudgetError("bracket: " + std::to_string(m) + " crossings exceed the brute-force budget of " +
                      std::to_string(opt.max_crossings));

  std::vector<TLDiagram> e_rows;
  e_rows.reserve(m);
  for (const auto& c : pd.crossings) e_rows.push_back(TLDiagram::generator(n, c.position));
  const TLDiagram cups = TLDiagram::cup_row(n);

  // counts[(exponent of A, loop count)]
  std::map<std::pair<int, int>, std::uint64_t> counts;
  // depth-first over states with prefix sharing
  struct Frame {
    TLDiagram diagram;
    int row;
    int exponent;
  };
  std::vector<Frame> stack;
  stack.push_back({TLDiagram::cap_row(n), 0, 0});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.row == m) {
      TLDiagram closed = compose(f.diagram, cups);
      ++counts[{f.exponent, closed.loops()}];
      continue;
    }
    const int s = pd.crossings[f.row].sign;
    stack.push_back({f.diagram, f.row + 1, f.exponent - s});                         // identity
    stack.push_back({compose(f.diagram, e_rows[f.row]), f.row + 1, f.exponent + s});  // E_i
  }

  const LaurentPolynomial d = LaurentPolynomial::loop_value();
  std::map<int, LaurentPolynomial> d_powers;
  LaurentPolynomial result;
  for (const auto& [key, count] : counts) {
    const auto [e, loops] = key;
    auto it = d_powers.find(loops);
    if (it == d_powers.end()) it = d_powers.emplace(loops, d.pow(loops - 1)).first;
    result += it->second.shifted(e) * LaurentPolynomial(static_cast<long long>(count));
  }
  return result;
}

/// Same value as bracket(), accumulated over the planar matchings of n points
/// (at most Catalan(n/2) states per row), so the cost is linear in the number
/// of crossings.
inline LaurentPolynomial bracket_fast(const BraidWord& b) {
  const PlatDiagram pd = plat_close(b);
  const int n = pd.strands;
  const LaurentPolynomial d = LaurentPolynomial::loop_value();

  std::map<std::vector<int>, LaurentPolynomial> states;
  states.emplace(TLDiagram::cap_row(n).partner(), LaurentPolynomial(1));
  for (const auto& c : pd.crossings) {
    const TLDiagram e = TLDiagram::generator(n, c.position);
    std::map<std::vector<int>, LaurentPolynomial> next;
    for (const auto& [partner, weight] : states) {
      next[partner] += weight.shifted(-c.sign);
      TLDiagram smoothed = compose(TLDiagram(0, n, partner), e);
      LaurentPolynomial w = weight.shifted(c.sign);
      if (smoothed.loops() > 0) w *= d.pow(static_cast<unsigned>(smoothed.loops()));
      next[smoothed.partner()] += w;
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    states = std::move(next);
  }
  const TLDiagram cups = TLDiagram::cup_row(n);
  LaurentPolynomial result;
  for (const auto& [partner, weight] : states) {
    int loops = compose(TLDiagram(0, n, partner), cups).loops();
    result += weight * d.pow(static_cast<unsigned>(loops - 1));
  }
  return result;
}

/// (-A)^e as a Laurent polynomial.
inline LaurentPolynomial minus_a_power(int e) {
  return LaurentPolynomial::monomial(e, (e % 2 == 0) ? 1 : -1);
}

/// Jones polynomial of the plat closure as a Laurent polynomial in A
/// (t = A^-4): V = (-A)^{3w} <b^pl>, with the right-handed writhe convention,
/// so the unknot evaluates to 1.
inline LaurentPolynomial jones(const BraidWord& b, const BracketOptions& opt = {}) {
  return minus_a_power(3 * writhe(b)) * bracket(b, opt);
}

inline LaurentPolynomial jones_fast(const BraidWord& b) {
  return minus_a_power(3 * writhe(b)) * bracket_fast(b);
}

/// The unitary path-model value A = i exp(-i pi / (2k)).
inline std::complex<double> root_parameter(int k) {
  if (k < 3) throw DomainError("k must be at least 3");
  return std::complex<double>(0.0, 1.0) * std::polar(1.0, -std::numbers::pi / (2.0 * k));
}

inline std::complex<double> jones_at_root(const BraidWord& b, int k, const BracketOptions& opt = {}) {
  return jones(b, opt).evaluate(root_parameter(k));
}

}  // namespace tlbraid
