#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace dfree {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  return r.str();
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

}  // namespace dfree
