#include "spfq/numeric.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "spfq/error.hpp"

namespace spfq {

namespace {

unsigned g_bits = 0;

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

void set_working_precision_bits(unsigned bits) {
  if (bits < kMinPrecisionBits)
    throw Error(Errc::InvalidArgument, "working precision must be at least " + std::to_string(kMinPrecisionBits) + " bits");
  Real::default_precision(digits10_for_bits(bits));
  g_bits = bits;
}

unsigned working_precision_bits() {
  if (g_bits == 0) set_working_precision_bits(kDefaultPrecisionBits);
  return g_bits;
}

unsigned apply_precision_env() {
  if (const char* env = std::getenv("SPFQ_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) throw Error(Errc::InvalidArgument, "SPFQ_PRECISION must be a positive integer");
    set_working_precision_bits(static_cast<unsigned>(v));
  }
  return working_precision_bits();
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_(working_precision_bits()) {
  set_working_precision_bits(bits);
}

PrecisionScope::~PrecisionScope() { set_working_precision_bits(saved_); }

Real to_real(const Rational& r) {
  working_precision_bits();
  Real num(boost::multiprecision::numerator(r));
  Real den(boost::multiprecision::denominator(r));
  return num / den;
}

Real real_from_int(long long v) {
  working_precision_bits();
  return Real(v);
}

double to_double(const Real& x) { return x.convert_to<double>(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational { throw Error(Errc::InvalidArgument, "not a rational number: '" + s + "'"); };
  if (s.empty()) return fail();
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt n(s.substr(0, slash));
      BigInt d(s.substr(slash + 1));
      if (d == 0) return fail();
      return Rational(n, d);
    }
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    BigInt mant = 0;
    long long exp10 = 0;
    bool digits = false, dot = false;
    for (; pos < s.size(); ++pos) {
      const char c = s[pos];
      if (c >= '0' && c <= '9') {
        mant = mant * 10 + (c - '0');
        digits = true;
        if (dot) --exp10;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
    }
    if (!digits) return fail();
    if (pos < s.size()) {
      if (s[pos] != 'e' && s[pos] != 'E') return fail();
      const std::string rest = s.substr(pos + 1);
      if (rest.empty()) return fail();
      std::size_t used = 0;
      exp10 += std::stoll(rest, &used);
      if (used != rest.size()) return fail();
    }
    Rational r(mant);
    BigInt p10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    r = exp10 < 0 ? r / Rational(p10) : r * Rational(p10);
    return negative ? Rational(-r) : r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    return fail();
  }
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

long long to_ll(const BigInt& v) { return v.convert_to<long long>(); }

long long ceil_ll(const Real& x) { return boost::multiprecision::ceil(x).convert_to<long long>(); }

}  // namespace spfq
