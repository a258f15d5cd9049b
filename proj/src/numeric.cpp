#include "numeric.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace lim {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_number(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw Error(ErrorCode::Number, "empty numeric literal");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw Error(ErrorCode::Number, "bare sign is not a number: '" + text + "'");

  Rational out;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorCode::Number, "malformed fraction: '" + text + "'");
    mpz_class d(den);
    if (d == 0) throw Error(ErrorCode::Number, "zero denominator: '" + text + "'");
    out = Rational(mpz_class(num), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    if (!all_digits(whole) || !all_digits(frac))
      throw Error(ErrorCode::Number, "malformed decimal: '" + text + "'");
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    out = Rational(mpz_class(whole) * scale + mpz_class(frac), scale);
  } else {
    if (!all_digits(s)) throw Error(ErrorCode::Number, "malformed number: '" + text + "'");
    out = Rational(mpz_class(s));
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string format_number(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string NumOps<FloatNum>::str(const FloatNum& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x.v);
  return buf;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& content) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(content.data(), content.size())));
  return buf;
}

}  // namespace lim
