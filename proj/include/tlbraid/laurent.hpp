#pragma once

// Exact Laurent polynomials in one formal variable A with arbitrary-precision
// integer coefficients.

#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "tlbraid/error.hpp"

namespace tlbraid {

using BigInt = boost::multiprecision::cpp_int;

class LaurentPolynomial {
 public:
  using Terms = std::map<int, BigInt>;

  LaurentPolynomial() = default;
  LaurentPolynomial(long long constant) {  // NOLINT: implicit from integers is convenient
    if (constant != 0) terms_.emplace(0, BigInt(constant));
  }

  /// c * A^exponent
  static LaurentPolynomial monomial(int exponent, BigInt coefficient = 1) {
    LaurentPolynomial p;
    if (coefficient != 0) p.terms_.emplace(exponent, std::move(coefficient));
    return p;
  }

  /// The loop value d = -A^2 - A^-2.
  static LaurentPolynomial loop_value() {
    return monomial(2, -1) + monomial(-2, -1);
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  BigInt coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPolynomial& operator*=(const LaurentPolynomial& o) {
    *this = *this * o;
    return *this;
  }

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a += b;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a -= b;
  }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a) {
    LaurentPolynomial r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return !(a == b);
  }

  /// Multiply by A^shift.
  LaurentPolynomial shifted(int shift) const {
    LaurentPolynomial r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + shift, c);
    return r;
  }

  /// Substitute A -> A^-1.
  LaurentPolynomial mirrored() const {
    LaurentPolynomial r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  /// Non-negative integer power by repeated squaring.
  LaurentPolynomial pow(unsigned exponent) const {
    LaurentPolynomial result(1), base(*this);
    while (exponent) {
      if (exponent & 1u) result *= base;
      exponent >>= 1;
      if (exponent) base *= base;
    }
    return result;
  }

  /// Sum of c_e a^e.  Throws DomainError for a == 0.
  std::complex<double> evaluate(std::complex<double> a) const {
    if (a == std::complex<double>(0.0, 0.0))
      throw DomainError("laurent_eval: zero base");
    std::complex<double> sum(0.0, 0.0);
    for (const auto& [e, c] : terms_) sum += c.convert_to<double>() * std::pow(a, e);
    return sum;
  }

  /// "exponent:coefficient" pairs in increasing exponent order, comma separated.
  /// The zero polynomial serializes to "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << ',';
      os << e << ':' << c;
      first = false;
    }
    return os.str();
  }

  static LaurentPolynomial parse(const std::string& text) {
    LaurentPolynomial p;
    if (text == "0" || text.empty()) return p;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos)
        throw DomainError("laurent parse: missing ':' in '" + item + "'");
      int e = std::stoi(item.substr(0, colon));
      BigInt c(item.substr(colon + 1));
      p.add_term(e, c);
    }
    return p;
  }

 private:
  void add_term(int e, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPolynomial& p) {
  return os << p.to_string();
}

inline std::complex<double> laurent_eval(const LaurentPolynomial& p, std::complex<double> a) {
  return p.evaluate(a);
}

}  // namespace tlbraid
