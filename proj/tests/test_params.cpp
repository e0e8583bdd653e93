#include <gtest/gtest.h>

#include <cmath>

#include "spfq/error.hpp"
#include "spfq/field.hpp"
#include "spfq/params.hpp"

using namespace spfq;

namespace {

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

// Smallest c with q^c >= bound, by repeated integer multiplication.
long long min_power(std::uint64_t q, long long bound) {
  long long c = 0;
  long double v = 1;
  while (v < bound) {
    v *= q;
    ++c;
  }
  return c;
}

const ComparisonItem* find_item(const ComparisonReport& r, const std::string& table, const std::string& field) {
  for (const auto& it : r.items)
    if (it.table == table && it.field == field) return &it;
  return nullptr;
}

}  // namespace

TEST(Params, ScheduleLookup) {
  EXPECT_EQ(table_row(2), std::make_pair(Rational(43, 3), Rational(6, 43)));
  EXPECT_EQ(table_row(25), std::make_pair(Rational(8, 3), Rational(3, 4)));
  EXPECT_EQ(code_of([] { table_row(6); }), Errc::NotPrimePower);
}

TEST(Params, ScheduleCoversEveryPrimePowerOnce) {
  for (std::uint64_t q = 2; q < 2000; ++q) {
    if (!prime_power(q)) continue;
    int hits = 0;
    for (const TableRow& r : table_rows()) hits += r.contains(q);
    EXPECT_EQ(hits, 1) << q;
  }
  EXPECT_EQ(table_rows().size(), 16u);
  EXPECT_EQ(table_row_keys().size(), 16u);
}

TEST(Params, ProductOfScheduleConstantsIsTwo) {
  for (const TableRow& r : table_rows()) EXPECT_EQ(r.c4 * r.beta0, Rational(2)) << r.q_lo;
}

TEST(Params, DerivedAtTenthForQ2) {
  const PreconditionerParams p = derive_params(2, Rational(1, 10));
  EXPECT_EQ(p.c2, 9);
  EXPECT_EQ(p.ell, 8);
  EXPECT_EQ(p.delta, 2);
  EXPECT_EQ(p.k_min, 33);
  EXPECT_EQ(p.sigma, Rational(43, 2));
  EXPECT_EQ(p.tau, 17);
  EXPECT_EQ(p.upsilon, 41);
  EXPECT_EQ(p.c3, Rational(43));
}

TEST(Params, DerivedAtTenthForQ9) {
  const PreconditionerParams p = derive_params(9, Rational(1, 10));
  EXPECT_EQ(p.c2, 3);
  EXPECT_EQ(p.ell, 3);
  EXPECT_EQ(p.sigma, Rational(88, 9));
  EXPECT_EQ(p.tau, 6);
  EXPECT_EQ(p.upsilon, 124);
}

TEST(Params, EpsilonOutsideUnitIntervalRejected) {
  EXPECT_EQ(code_of([] { derive_params(2, Rational(1)); }), Errc::BadEpsilon);
  EXPECT_EQ(code_of([] { derive_params(2, Rational(0)); }), Errc::BadEpsilon);
}

TEST(Params, RowCountsMatchIntegerPowers) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 13u, 16u, 31u, 89u, 199u, 401u, 1024u}) {
    for (long long inv : {2LL, 10LL, 100LL}) {
      const PreconditionerParams p = derive_params(q, Rational(1, inv));
      EXPECT_EQ(p.c2, std::max(2LL, min_power(q, 40 * inv))) << q;
      const long long ell = static_cast<long long>(q) >= 20 * inv + 1 ? 0 : min_power(q, 20 * inv);
      EXPECT_EQ(p.ell, ell) << q;
      EXPECT_EQ(p.tau, p.c2 + p.ell);
      EXPECT_EQ(p.upsilon, p.ell + p.k_min);
    }
  }
}

TEST(Params, KMinFollowsFromDelta) {
  // k_min = ceil((5/(4 eps) + 1)(Delta-hat + 1)) with Delta-hat evaluated in long double.
  for (const TableRow& r : table_rows()) {
    for (long long inv : {4LL, 10LL, 1000LL}) {
      const PreconditionerParams p = derive_params(r.q_lo, Rational(1, inv));
      const long double dh = r.delta_slope.convert_to<long double>() * std::log(static_cast<long double>(inv)) +
                             r.delta_intercept.convert_to<long double>();
      EXPECT_EQ(p.delta, static_cast<long long>(std::ceil(dh))) << r.q_lo;
      EXPECT_EQ(p.k_min, static_cast<long long>(std::ceil((1.25L * inv + 1) * (dh + 1)))) << r.q_lo;
      // The rational coefficients bound the exact logarithmic expression from above.
      const long double b0 = r.beta0.convert_to<long double>();
      const long double exact =
          (std::log(static_cast<long double>(inv)) + std::log(10.0L) - std::log1p(-b0)) / -std::log(b0) - 1;
      EXPECT_GE(dh, exact - 1e-15L) << r.q_lo;
      EXPECT_EQ(p.delta_tight, static_cast<long long>(std::ceil(exact))) << r.q_lo;
    }
  }
}

TEST(Params, MonotoneInEpsilon) {
  for (const TableRow& r : table_rows()) {
    PreconditionerParams prev = derive_params(r.q_lo, Rational(9, 10));
    for (long long inv : {2LL, 5LL, 10LL, 50LL, 1000LL, 100000LL}) {
      const PreconditionerParams p = derive_params(r.q_lo, Rational(1, inv));
      EXPECT_GE(p.delta, prev.delta);
      EXPECT_GE(p.k_min, prev.k_min);
      EXPECT_GE(p.c2, prev.c2);
      EXPECT_GE(p.ell, prev.ell);
      prev = p;
    }
  }
}

TEST(Params, SigmaBounds) {
  Rational prev_coeff(1000);
  for (const TableRow& r : table_rows()) {
    const std::uint64_t q = r.q_lo;
    const PreconditionerParams p = derive_params(q, Rational(1, 10));
    const Rational frac(static_cast<long long>(q - 1), static_cast<long long>(q));
    EXPECT_LE(p.sigma, Rational(43, 2)) << q;
    EXPECT_GE(p.sigma, Rational(6) * frac) << q;
    EXPECT_EQ(p.sigma, Rational(3) * p.c4 * frac) << q;
    // 3 c4 strictly decreases down the schedule.
    EXPECT_LT(Rational(3) * r.c4, prev_coeff) << q;
    prev_coeff = Rational(3) * r.c4;
  }
}

TEST(Params, AsymptoticConstants) {
  const PreconditionerParams p = theorem2_params(18, Rational(1, 10), 297);
  EXPECT_EQ(p.c4, Rational(37, 18));
  EXPECT_EQ(p.beta0, Rational(36, 37));
  EXPECT_EQ(p.source, ParamSource::theorem2);
  EXPECT_EQ(code_of([] { theorem2_params(18, Rational(1, 10), 256); }), Errc::FieldTooSmallForN);
  EXPECT_EQ(code_of([] { theorem2_params(17, Rational(1, 10), 1000); }), Errc::NBelow18);
  EXPECT_EQ(code_of([] { theorem2_stated(18, 289); }), Errc::FieldTooSmallForN);
}

TEST(Params, AsymptoticKMinIndependentEvaluation) {
  for (int N : {18, 25, 40}) {
    for (long long inv : {10LL, 100LL}) {
      const std::uint64_t q = 16ULL * N + 9;
      const PreconditionerParams p = theorem2_params(N, Rational(1, inv), q);
      const long double m = 2.0L * N + 1;
      const long double dh = m * std::log(static_cast<long double>(inv)) + m * std::log(m) + m * std::log(10.0L) - 1;
      EXPECT_EQ(p.k_min, static_cast<long long>(std::ceil((1.25L * inv + 1) * (dh + 1)))) << N;
    }
  }
  EXPECT_EQ(theorem2_params(18, Rational(1, 10), 297).k_min, 4104);
}

TEST(Params, AsymptoticSigmaLimit) {
  for (int N : {18, 19, 50, 1000}) {
    for (std::uint64_t q : {16ULL * N + 9, 100003ULL}) {
      const Theorem2Params t = theorem2_stated(N, q);
      const Rational frac = Rational(1) - Rational(1, static_cast<long long>(q));
      EXPECT_EQ(t.sigma - Rational(6) * frac, Rational(3) * frac / N);
      EXPECT_EQ(theorem2_params(N, Rational(1, 10), q).sigma, Rational(3) * Rational(2 * N + 1, N) * frac);
    }
  }
}

TEST(Params, AsymptoticTauIsTwoNotOne) {
  const PreconditionerParams p = theorem2_params(18, Rational(1, 10), 297);
  EXPECT_EQ(p.ell, 0);
  EXPECT_EQ(p.c2, 2);
  EXPECT_EQ(p.tau, 2);
  EXPECT_EQ(theorem2_stated(18, 297).tau, 1);
}

TEST(Params, ComparisonQ2AllConfirmed) {
  const ComparisonReport r = compare_with_paper(derive_params(2, Rational(1, 10)));
  ASSERT_TRUE(r.applicable);
  EXPECT_TRUE(r.discrepancies().empty());
  const ComparisonItem* u = find_item(r, "summary", "upsilon");
  ASSERT_NE(u, nullptr);
  EXPECT_EQ(u->published, "41");
  EXPECT_EQ(u->derived, "41");
}

TEST(Params, ComparisonQ3ReportsUpsilonOffByOne) {
  const ComparisonReport r = compare_with_paper(derive_params(3, Rational(1, 10)));
  const auto d = r.discrepancies();
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].table, "summary");
  EXPECT_EQ(d[0].field, "upsilon");
  EXPECT_EQ(d[0].published, "55");
  EXPECT_EQ(d[0].derived, "54");
  EXPECT_NE(d[0].note.find("5 + 49"), std::string::npos);
}

TEST(Params, ComparisonQ31Confirmed) {
  const ComparisonReport r = compare_with_paper(derive_params(31, Rational(1, 10)));
  EXPECT_TRUE(r.discrepancies().empty());
  EXPECT_EQ(find_item(r, "summary", "upsilon")->derived, "381");
}

TEST(Params, ComparisonAcrossSchedule) {
  int summary_ok = 0;
  for (std::uint64_t q : table_row_keys()) {
    const ComparisonReport r = compare_with_paper(derive_params(q, Rational(1, 10)));
    for (const char* t : {"c4_beta0", "delta", "k", "c2_ell"}) EXPECT_TRUE(r.table_confirmed(t)) << q << ' ' << t;
    summary_ok += r.table_confirmed("summary");
    for (const auto& it : r.discrepancies()) {
      EXPECT_EQ(it.field, "upsilon") << q;
      EXPECT_EQ(std::llabs(std::stoll(it.published) - std::stoll(it.derived)), 1) << q;
    }
  }
  EXPECT_GE(summary_ok, 12);
}

TEST(Params, ComparisonNeedsTenth) {
  const ComparisonReport r = compare_with_paper(derive_params(2, Rational(1, 5)));
  EXPECT_FALSE(r.applicable);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Params, PublishedBundle) {
  const auto p = published_params(2);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->source, ParamSource::paper_table);
  EXPECT_EQ(p->upsilon, 41);
  EXPECT_EQ(p->sigma, Rational(43, 2));
}

TEST(Params, MinExponent) {
  EXPECT_EQ(min_exponent(2, Rational(400)), 9);
  EXPECT_EQ(min_exponent(2, Rational(256)), 8);
  EXPECT_EQ(min_exponent(3, Rational(1, 2)), 0);
}
