#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace pavecount {

/// Exact nonnegative counts (stable-set counts, matroid tallies, binomials).
using BigCount = boost::multiprecision::cpp_int;

/// Exact rationals for the bound exponents (delta_n, |V|/(Delta+1), ...).
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigCount& x) { return x.str(); }

inline BigCount pow2(std::uint64_t e) {
  BigCount v = 1;
  v <<= static_cast<unsigned>(e);
  return v;
}

inline BigCount ipow(BigCount base, std::uint64_t e) {
  BigCount acc = 1;
  while (e != 0) {
    if (e & 1U) acc *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return acc;
}

/// Base-2 logarithm of an exact count. log2(0) is a distinguished
/// minus-infinity marker rather than a finite number.
class LogValue {
public:
  constexpr LogValue() = default;

  static LogValue of(const BigCount& x) {
    if (x <= 0) return minus_infinity();
    // Keep the top 63 bits; relative error of the mantissa is below 2^-62.
    const auto top = static_cast<std::int64_t>(boost::multiprecision::msb(x));
    if (top < 63) return LogValue(std::log2(static_cast<long double>(x.convert_to<std::uint64_t>())));
    const auto shift = static_cast<unsigned>(top - 62);
    const auto head = static_cast<std::uint64_t>(x >> shift);
    return LogValue(static_cast<long double>(shift) + std::log2(static_cast<long double>(head)));
  }

  static constexpr LogValue minus_infinity() {
    LogValue v;
    v.neg_inf_ = true;
    return v;
  }

  constexpr explicit LogValue(long double v) : value_(v) {}

  bool is_minus_infinity() const noexcept { return neg_inf_; }

  /// Finite value; -infinity when the marker is set.
  double value() const noexcept {
    return neg_inf_ ? -std::numeric_limits<double>::infinity() : static_cast<double>(value_);
  }

  long double precise() const noexcept {
    return neg_inf_ ? -std::numeric_limits<long double>::infinity() : value_;
  }

  friend bool operator==(const LogValue& a, const LogValue& b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }

private:
  long double value_ = 0.0L;
  bool neg_inf_ = false;
};

inline long double log2_of(const BigCount& x) { return LogValue::of(x).precise(); }

/// Sign of  a^p - b^q  for nonnegative integers and nonnegative exponents,
/// computed exactly.
inline int compare_powers(const BigCount& a, std::uint64_t p, const BigCount& b, std::uint64_t q) {
  const BigCount lhs = ipow(a, p);
  const BigCount rhs = ipow(b, q);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

}  // namespace pavecount
