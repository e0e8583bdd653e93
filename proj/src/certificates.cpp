#include <string>

#include "spfq/analysis.hpp"
#include "spfq/error.hpp"
#include "spfq/field.hpp"

namespace spfq {

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

Threshold T(const char* published, const char* effective = nullptr) {
  const Rational p = parse_rational(published);
  return {p, effective ? parse_rational(effective) : p};
}

LadderStep S(Rational eta, Rational lo, Rational hi, Threshold f1, Threshold f2) {
  return {std::move(eta), std::move(lo), std::move(hi), std::move(f1), std::move(f2), std::nullopt};
}

}  // namespace

const std::vector<PeskyCert>& pesky_certs() {
  static const std::vector<PeskyCert> certs = {
      {"pesky_1", R(-11, 25), R(5, 43), T("0.0008"), T("-0.3")},
      {"pesky_2", R(-23, 40), R(1, 5), T("0.006"), T("-0.4")},
      {"pesky_3", R(-11, 20), R(9, 50), T("0.007"), T("-0.4")},
      {"pesky_4", R(-9, 16), R(19, 100), T("0.0006"), T("-0.4")},
      {"pesky_5", R(-19, 40), R(7, 50), T("0.001"), T("-0.3")},
      {"pesky_6", R(-2, 5), R(2, 25), T("0.004"), T("-0.3")},
      {"pesky_7", R(-1, 3), R(1, 20), T("0.001"), T("-0.28")},
      {"pesky_8", R(-1, 4), R(1, 53), T("0.00003"), T("-0.23")},
      {"pesky_9", R(-19, 100), R(1, 200), T("0.00004"), T("-0.17")},
      {"pesky_10", R(-23, 150), R(1, 750), T("0.00002"), T("-0.13")},
      {"pesky_11", R(-33, 250), R(1, 2000), T("0.000001"), T("-0.12")},
  };
  return certs;
}

const std::vector<PowerCert>& power_certs() {
  static const std::vector<PowerCert> certs = {
      {"power_1", 2, R(-9, 20), R(1, 5), T("0.006")},
      {"power_2", 3, R(-7, 10), R(1, 5), T("0.005")},
      {"power_3", 4, R(-9, 10), R(1, 5), T("0.01")},
      {"power_4", 6, R(-6, 5), R(1, 5), T("0.02")},
      {"power_5", 7, R(-61, 50), R(1, 5), T("0.003")},
      {"power_6", 8, R(-5, 4), R(9, 50), T("0.01")},
      {"power_7", 10, R(-7, 5), R(19, 100), T("0.004")},
      {"power_8", 12, R(-3, 2), R(9, 50), T("0.01")},
      {"power_9", 15, R(-7, 5), R(7, 50), T("0.006")},
      {"power_10", 22, R(-5, 4), R(2, 25), T("0.005")},
      {"power_11", 30, R(-8, 7), R(1, 20), T("0.001")},
      {"power_12", 46, R(-49, 50), R(1, 53), T("0.013", "0.0011")},
      {"power_13", 60, R(-4, 5), R(1, 200), T("0.0007")},
      {"power_14", 72, R(-7, 10), R(1, 750), T("0.0004")},
      {"power_15", 88, R(-3, 5), R(1, 2000), T("0.00004")},
  };
  return certs;
}

const std::vector<CertificateRow>& certificate_rows() {
  static const std::vector<CertificateRow> rows = [] {
    std::vector<CertificateRow> v;
    auto row = [&](std::uint64_t lo, std::uint64_t hi, Rational c4, Rational b0, const char* pesky, const char* power,
                   Rational gamma, Rational delta, Rational end, Rational witness, Rational margin, Threshold mmin,
                   Threshold f1e, Threshold f1w, Threshold F1p, Threshold F2p, std::vector<LadderStep> ladder) {
      v.push_back({lo, hi, std::move(c4), std::move(b0), pesky, power, std::move(gamma), std::move(delta),
                   std::move(end), std::move(witness), std::move(margin), std::move(mmin), std::move(f1e),
                   std::move(f1w), std::move(F1p), std::move(F2p), std::move(ladder), {}});
    };
    row(2, 2, R(43, 3), R(6, 43), "pesky_1", "", R(-11, 25), R(0), R(5, 43), R(7, 43), R(89, 15), T("0"), T("0.04"),
        T("-0.03"), T("-2.7"), T("21"), {S(R(99, 100), R(5, 43), R(6, 43), T("0.004"), T("0.2"))});
    row(3, 3, R(8), R(1, 4), "pesky_2", "power_1", R(-23, 40), R(-9, 20), R(1, 5), R(1, 4), R(313, 80), T("0"),
        T("0.0008"), T("-0.03"), T("-2.1"), T("9"),
        {S(R(39, 40), R(1, 5), R(6, 25), T("0.01"), T("0.08")),
         S(R(123, 125), R(6, 25), R(1, 4), T("0.0002"), T("0.05"))});
    row(4, 4, R(25, 4), R(8, 25), "pesky_2", "power_2", R(-23, 40), R(-7, 10), R(1, 5), R(1, 3), R(31, 12), T("2.5"),
        T("0.03"), T("-0.01"), T("-1.9"), T("7.5"),
        {S(R(18, 19), R(1, 5), R(31, 100), T("0.009"), T("0.04")),
         S(R(49, 50), R(31, 100), R(8, 25), T("0.02"), T("0.008"))});
    row(5, 5, R(16, 3), R(3, 8), "pesky_2", "power_3", R(-23, 40), R(-9, 10), R(1, 5), R(1, 3), R(907, 480),
        T("1.8"), T("0.04"), T("-0.003"), T("-1.8"), T("6.6"),
        {S(R(11, 12), R(1, 5), R(9, 25), T("0.002"), T("0.07")),
         S(R(19, 20), R(9, 25), R(3, 8), T("0.008"), T("0.75"))});
    row(7, 7, R(13, 3), R(6, 13), "pesky_2", "power_4", R(-23, 40), R(-6, 5), R(1, 5), R(1, 3), R(271, 240),
        T("1.1"), T("0.02"), T("-0.01"), T("-1.7"), T("5.7"),
        {S(R(6, 7), R(1, 5), R(2, 5), T("0.03"), T("0.01")), S(R(24, 25), R(2, 5), R(6, 13), T("0.03"), T("0.14"))});
    row(8, 8, R(4), R(1, 2), "pesky_2", "power_5", R(-23, 40), R(-61, 50), R(1, 5), R(1, 3), R(309, 350),
        T("0.88"), T("0.01"), T("-0.01"), T("-1.6"), T("5.4"),
        {S(R(5, 6), R(1, 5), R(21, 50), T("0.03"), T("0.08")),
         S(R(24, 25), R(21, 50), R(1, 2), T("0.02"), T("0.003"))});
    row(9, 9, R(11, 3), R(6, 11), "pesky_3", "power_6", R(-11, 20), R(-5, 4), R(9, 50), R(1, 4), R(77, 120),
        T("0.64"), T("0.008"), T("-0.01"), T("-1.5"), T("5.1"),
        {S(R(39, 50), R(9, 50), R(21, 50), T("0.03"), T("0.03")),
         S(R(17, 18), R(21, 50), R(53, 100), T("0.01"), T("0.02")),
         S(R(31, 32), R(53, 100), R(6, 11), T("0.01"), T("0.02"))});
    row(11, 11, R(7, 2), R(4, 7), "pesky_4", "power_7", R(-9, 16), R(-7, 5), R(19, 100), R(1, 4), R(433, 800),
        T("0.54"), T("0.004"), T("-0.01"), T("-1.5"), T("5.2"),
        {S(R(39, 50), R(19, 100), R(19, 40), T("0.01"), T("0.04")),
         S(R(23, 24), R(19, 40), R(4, 7), T("0.03"), T("0.002"))});
    row(13, 13, R(10, 3), R(3, 5), "pesky_3", "power_8", R(-11, 20), R(-3, 2), R(9, 50), R(1, 5), R(107, 240),
        T("0.44"), T("0.04", "0.004"), T("-0.0004"), T("-1.5"), T("5.3"),
        {S(R(37, 50), R(9, 50), R(24, 50), T("0.02"), T("0.07")),
         S(R(23, 25), R(24, 50), R(3, 5), T("0.01"), T("0.5"))});
    row(16, 19, R(3), R(2, 3), "pesky_5", "power_9", R(-19, 40), R(-7, 5), R(7, 50), R(1, 5), R(4, 15), T("0.26"),
        T("0.005"), T("-0.006"), T("-1.4"), T("4.9"),
        {S(R(3, 5), R(7, 50), R(17, 40), T("0.06"), T("0.07")),
         S(R(4, 5), R(17, 40), R(14, 25), T("0.02"), T("0.8")),
         S(R(19, 20), R(14, 25), R(2, 3), T("0.009"), T("0.17"))});
    row(23, 29, R(8, 3), R(3, 4), "pesky_6", "power_10", R(-2, 5), R(-5, 4), R(2, 25), R(1, 10), R(133, 1320),
        T("0.1"), T("0.002"), T("-0.0002"), T("-1.2"), T("4.7"),
        {S(R(2, 5), R(2, 25), R(7, 20), T("0.1"), T("0.01")),
         S(R(21, 25), R(7, 20), R(13, 20), T("0.02"), T("0.02")),
         S(R(24, 25), R(13, 20), R(37, 50), T("0.01"), T("0.07")),
         S(R(39, 40), R(37, 50), R(3, 4), T("0.01"), T("0.05"))});
    row(31, 43, R(5, 2), R(4, 5), "pesky_7", "power_11", R(-1, 3), R(-8, 7), R(1, 20), R(1, 12), R(16, 315),
        T("0.05"), T("0.001"), T("-0.0009"), T("-1.2"), T("4.6"),
        {S(R(1, 5), R(1, 20), R(1, 4), T("0.06"), T("0.09")),
         S(R(7, 10), R(1, 4), R(3, 5), T("0.05"), T("0.08")),
         S(R(11, 12), R(3, 5), R(3, 4), T("0.01"), T("0.4")),
         S(R(29, 30), R(3, 4), R(4, 5), T("0.0002"), T("0.2"))});
    row(47, 59, R(7, 3), R(6, 7), "pesky_8", "power_12", R(-1, 4), R(-49, 50), R(1, 53), R(1, 35), R(181, 13800),
        T("0.013"), T("0.0002"), T("-0.00001"), T("-1.1"), T("4.8", "4.5"),
        {S(R(1, 9), R(1, 53), R(1, 5), T("0.06"), T("0.007")),
         S(R(3, 5), R(1, 5), R(3, 5), T("0.06"), T("0.06")),
         S(R(16, 17), R(3, 5), R(4, 5), T("0.04"), T("0.01")),
         S(R(44, 45), R(4, 5), R(6, 7), T("0.003"), T("0.07"))});
    row(61, 71, R(9, 4), R(8, 9), "pesky_9", "power_13", R(-19, 100), R(-4, 5), R(1, 200), R(1, 25), R(61, 6000),
        T("0.01"), T("0.0002"), T("-0.0001"), T("-1.1"), T("4.5"),
        {S(R(1, 25), R(1, 200), R(2, 25), T("0.08"), T("0.03", "0.003")),
         S(R(1, 4), R(2, 25), R(2, 5), T("0.04"), T("0.1")),
         S(R(5, 6), R(2, 5), R(39, 50), T("0.01"), T("0.07")),
         S(R(41, 42), R(39, 50), R(22, 25), T("0.004"), T("0.01")),
         S(R(74, 75), R(22, 25), R(8, 9), T("0.004"), T("0.009"))});
    row(73, 83, R(11, 5), R(10, 11), "pesky_10", "power_14", R(-23, 150), R(-7, 10), R(1, 750), R(1, 30),
        R(19, 2700), T("0.07", "0.007"), T("0.00005"), T("-0.00002"), T("-1"), T("4.5"),
        {S(R(1, 50), R(1, 750), R(1, 40), T("0.06"), T("0.0009")),
         S(R(1, 8), R(1, 40), R(3, 11), T("0.1"), T("0.03", "0.003")),
         S(R(2, 3), R(3, 11), R(7, 10), T("0.03"), T("0.1")),
         S(R(26, 27), R(7, 10), R(7, 8), T("0.01"), T("0.02")),
         S(R(72, 73), R(7, 8), R(181, 200), T("0.001"), T("0.003")),
         S(R(87, 88), R(181, 200), R(227, 250), T("0.001"), T("0.002")),
         S(R(88, 89), R(227, 250), R(909, 1000), T("0.00009"), T("0.01")),
         S(R(89, 90), R(909, 1000), R(10, 11), T("0.001", "0.0001"), T("0.005"))});
    row(89, 0, R(13, 6), R(12, 13), "pesky_11", "power_15", R(-33, 250), R(-3, 5), R(1, 2000), R(1, 40),
        R(239, 66000), T("0.003"), T("0.00001"), T("-0.00005"), T("-1"), T("4.5"),
        {S(R(1, 80), R(1, 2000), R(1, 200), T("0.02"), T("0.001")),
         S(R(1, 28), R(1, 200), R(11, 100), T("0.07"), T("0.0005")),
         S(R(2, 5), R(11, 100), R(11, 20), T("0.09"), T("0.01")),
         S(R(12, 13), R(11, 20), R(6, 7), T("0.02"), T("0.02")),
         S(R(69, 70), R(6, 7), R(183, 200), T("0.005"), T("0.005")),
         {R(101, 100), R(183, 200), R(12, 13), T("0.0006"), T("0.02", "0.002"), R(100, 101)}});

    auto note = [&](std::uint64_t q, std::string text) {
      for (auto& r : v)
        if (r.q_lo == q) r.notes.push_back(std::move(text));
    };
    note(2, "published small-beta margin is 89/15; the exact value is 709/75 (both positive)");
    note(3, "a closing display states c4 >= 4 where c4 >= 8 is required; 8 is used");
    for (std::uint64_t q : {5, 7, 8, 9, 11, 13, 16, 23, 31, 47, 61, 73, 89})
      note(q, "the margin display reads c - 2 + ...; its value matches c - 2q/(q-1) + ..., which is used");
    for (std::uint64_t q : {47, 61, 73, 89})
      note(q, "the entropy bound is printed as (1-x)^(1-x) <= x^(gamma x); the certified form has exponent -(1-x)");
    note(8, "c4 appears once as 1/2; 4 is used since c4 * beta0 = 2");
    note(9, "delta appears once as -5/40; -5/4 is the certified value");
    note(13, "the first interval end appears once as 9/500; 9/50 is used");
    note(13, "published f1(9/50) > 0.04; the value is about 0.0049 and is checked against 0.004");
    note(13, "the two F2 evaluation points are printed swapped; F2 is checked at each step's lower end");
    note(47, "published F2' > 4.8 at the inflection point; the value is about 4.57 and is checked against 4.5");
    note(61, "gamma appears once as -19/50; -19/100 is the certified value");
    note(61, "published F2(1/200) > 0.03 at eta = 1/25; the value is about 0.0031 and is checked against 0.003");
    note(73, "sigma is printed with a trailing factor n");
    note(73, "an interval end appears once as 2/11; 3/11 is used");
    note(73, "published margin > 0.07; the value 19/2700 is about 0.0070 and is checked against 0.007");
    note(73, "published F2(1/40) > 0.03 at eta = 1/8; the value is about 0.0031 and is checked against 0.003");
    note(73, "published F1(10/11) > 0.001 at eta = 89/90; the value is about 0.00013 and is checked against 0.0001");
    note(89, "the power bound is printed with base 72; 88 = q - 1 is used");
    note(89, "the last step uses eta = 101/100, outside (0, 1); it is evaluated and flagged, and eta = 100/101 decides");
    note(89, "published F2(183/200) > 0.02 for the last step; with eta = 100/101 the value is about 0.0022 and is checked against 0.002");
    return v;
  }();
  return rows;
}

const PeskyCert& pesky_cert(std::string_view id) {
  for (const auto& c : pesky_certs())
    if (c.id == id) return c;
  throw Error(Errc::InvalidArgument, "unknown certificate " + std::string(id));
}

const PowerCert& power_cert(std::string_view id) {
  for (const auto& c : power_certs())
    if (c.id == id) return c;
  throw Error(Errc::InvalidArgument, "unknown certificate " + std::string(id));
}

const CertificateRow& certificate_row_for(std::uint64_t q) {
  if (!prime_power(q)) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  for (const auto& r : certificate_rows())
    if (r.contains(q)) return r;
  throw Error(Errc::NotPrimePower, "no certificate row for q = " + std::to_string(q));
}

}  // namespace spfq
