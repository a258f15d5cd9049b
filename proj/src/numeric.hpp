#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace lim {

// Exact arithmetic everywhere by default. mpq_class keeps values canonical
// (gcd-reduced, positive denominator), which the whole library relies on.
using Rational = mpq_class;

// Parses "7", "-3/4" or "0.125" into an exact rational. Decimal literals map
// to power-of-ten denominators; floats never enter the pipeline.
Rational parse_number(const std::string& text);

// gmpxx does not canonicalize two-argument construction; route raw
// numerator/denominator pairs through here.
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Canonical rendering: "p" when the denominator is 1, else "p/q".
std::string format_number(const Rational& q);

// Opt-in floating backend. All order/zero decisions go through NumOps so the
// solver code stays oblivious to which backend it runs on.
struct FloatNum {
  double v = 0.0;

  FloatNum() = default;
  FloatNum(double x) : v(x) {}

  FloatNum operator-() const { return {-v}; }
  FloatNum& operator+=(const FloatNum& o) { v += o.v; return *this; }
  FloatNum& operator-=(const FloatNum& o) { v -= o.v; return *this; }
  FloatNum& operator*=(const FloatNum& o) { v *= o.v; return *this; }
  FloatNum& operator/=(const FloatNum& o) { v /= o.v; return *this; }

  friend FloatNum operator+(FloatNum a, const FloatNum& b) { return a += b; }
  friend FloatNum operator-(FloatNum a, const FloatNum& b) { return a -= b; }
  friend FloatNum operator*(FloatNum a, const FloatNum& b) { return a *= b; }
  friend FloatNum operator/(FloatNum a, const FloatNum& b) { return a /= b; }
};

template <class T>
struct NumOps;

template <>
struct NumOps<Rational> {
  static int sign(const Rational& x) { return sgn(x); }
  static bool is_zero(const Rational& x) { return sign(x) == 0; }
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool lt(const Rational& a, const Rational& b) { return a < b; }
  static bool le(const Rational& a, const Rational& b) { return a <= b; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static std::string str(const Rational& x) { return format_number(x); }
};

template <>
struct NumOps<FloatNum> {
  static constexpr double kEps = 1e-9;
  static int sign(const FloatNum& x) { return x.v > kEps ? 1 : (x.v < -kEps ? -1 : 0); }
  static bool is_zero(const FloatNum& x) { return sign(x) == 0; }
  static bool eq(const FloatNum& a, const FloatNum& b) { return sign({a.v - b.v}) == 0; }
  static bool lt(const FloatNum& a, const FloatNum& b) { return sign({a.v - b.v}) < 0; }
  static bool le(const FloatNum& a, const FloatNum& b) { return sign({a.v - b.v}) <= 0; }
  static double to_double(const FloatNum& x) { return x.v; }
  static FloatNum from_rational(const Rational& q) { return {q.get_d()}; }
  static FloatNum abs(const FloatNum& x) { return {std::fabs(x.v)}; }
  static std::string str(const FloatNum& x);
};

template <class T>
std::vector<T> from_rationals(const std::vector<Rational>& in) {
  std::vector<T> out;
  out.reserve(in.size());
  for (const auto& q : in) out.push_back(NumOps<T>::from_rational(q));
  return out;
}

// FNV-1a 64-bit, used for stable content fingerprints in reports.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const std::string& content);

}  // namespace lim
