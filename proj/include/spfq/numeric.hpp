#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace spfq {

using Real = boost::multiprecision::mpfr_float;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr unsigned kDefaultPrecisionBits = 128;
inline constexpr unsigned kMinPrecisionBits = 113;

// Working precision of newly created Real values. Throws InvalidArgument
// below kMinPrecisionBits.
void set_working_precision_bits(unsigned bits);
unsigned working_precision_bits();

// Applies SPFQ_PRECISION if set; returns the precision in effect.
unsigned apply_precision_env();

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Real to_real(const Rational& r);
Real real_from_int(long long v);
double to_double(const Real& x);

// Accepts "3", "-11/25", "0.1", "1e-3".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
long long to_ll(const BigInt& v);

long long ceil_ll(const Real& x);

}  // namespace spfq
