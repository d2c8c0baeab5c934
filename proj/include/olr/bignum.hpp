#pragma once

#include <span>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "olr/error.hpp"

namespace olr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// 50 significant decimal digits; all log-domain bound arithmetic uses this.
using Real = boost::multiprecision::cpp_bin_float_50;

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (long long i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

inline BigInt factorial(long long n) {
  BigInt out = 1;
  for (long long i = 2; i <= n; ++i) out *= i;
  return out;
}

/// (k_1 + ... + k_q)! / (k_1! ... k_q!), built as a product of binomials.
inline BigInt multinomial(std::span<const long long> parts) {
  BigInt out = 1;
  long long total = 0;
  for (long long k : parts) {
    if (k < 0) return 0;
    total += k;
    out *= binomial(total, k);
  }
  return out;
}

inline BigInt pow_int(const BigInt& base, long long exp) {
  BigInt out = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) out *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return out;
}

/// ceil(num / den) for den > 0.
inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if (q * den != num && num > 0) q += 1;
  return q;
}

inline Rational pow_rational(const Rational& base, long long exp) {
  if (exp < 0) return pow_rational(1 / base, -exp);
  Rational out = 1;
  Rational b = base;
  while (exp > 0) {
    if (exp & 1) out *= b;
    b *= b;
    exp >>= 1;
  }
  return out;
}

inline BigInt ceil_rational(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;
  if (q * den != num && num > 0) q += 1;
  return q;
}

inline Real to_real(const BigInt& x) { return Real(x); }
inline Real to_real(const Rational& x) { return Real(boost::multiprecision::numerator(x)) / Real(boost::multiprecision::denominator(x)); }

inline const Real& ln2() {
  static const Real value = boost::multiprecision::log(Real(2));
  return value;
}

inline Real log2_real(const Real& x) { return boost::multiprecision::log(x) / ln2(); }
inline Real log2_big(const BigInt& x) { return log2_real(to_real(x)); }
inline Real log2_rational(const Rational& x) { return log2_real(to_real(x)); }

/// log2 of C(n, k) for real n >= k >= 0 via lgamma.
inline Real log2_binomial(const Real& n, const Real& k) {
  using boost::math::lgamma;
  return (lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1)) / ln2();
}

/// log2(2^a + 2^b) without overflow.
inline Real log2_add(const Real& a, const Real& b) {
  const Real hi = a > b ? a : b;
  const Real lo = a > b ? b : a;
  return hi + log2_real(1 + boost::multiprecision::pow(Real(2), lo - hi));
}

/// Ceiling of a high-precision real; values within 1e-30 of an integer are
/// treated as that integer so exact powers do not pick up a spurious +1.
inline BigInt ceil_real(const Real& x) {
  Real r = boost::multiprecision::round(x);
  if (boost::multiprecision::abs(x - r) < Real("1e-30")) return BigInt(r);
  return BigInt(boost::multiprecision::ceil(x));
}

inline BigInt floor_real(const Real& x) {
  Real r = boost::multiprecision::round(x);
  if (boost::multiprecision::abs(x - r) < Real("1e-30")) return BigInt(r);
  return BigInt(boost::multiprecision::floor(x));
}

/// Parses "0.25", "1/4" or "3" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      BigInt den = pow_int(10, static_cast<long long>(text.size() - dot - 1));
      return Rational(BigInt(digits.empty() ? "0" : digits), den);
    }
    return Rational(BigInt(text));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "not a number: '" + text + "'");
  }
}

}  // namespace olr
