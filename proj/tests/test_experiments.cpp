#include <gtest/gtest.h>

#include <cmath>

#include "spfq/error.hpp"
#include "spfq/experiments.hpp"

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

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(WeightEnum, IdentityBasis) {
  const WeightEnumerator e = weight_enum(SparseMatrix::identity(Field::of_order(2), 2));
  EXPECT_EQ(e.a, (std::vector<std::uint64_t>{1, 2, 1}));
}

TEST(WeightEnum, CoordinateSubspacesClosedForm) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    const Field f = Field::of_order(q);
    for (std::size_t m = 1; m <= 5; ++m) {
      const std::size_t n = m + 3;
      std::vector<SparseRow> rows;
      for (std::size_t i = 0; i < m; ++i) rows.push_back({{static_cast<std::uint32_t>(i + 2), 1}});
      const WeightEnumerator e = weight_enum(SparseMatrix::from_rows(f, n, rows));
      for (std::size_t j = 0; j <= n; ++j) {
        std::uint64_t expect = 0;
        if (j <= m) {
          expect = binom(m, j);
          for (std::size_t t = 0; t < j; ++t) expect *= q - 1;
        }
        EXPECT_EQ(e.a[j], expect) << q << ' ' << m << ' ' << j;
      }
    }
  }
}

TEST(WeightEnum, EmptyBasis) {
  const WeightEnumerator e = weight_enum(SparseMatrix(Field::of_order(3), 0, 4));
  EXPECT_EQ(e.a, (std::vector<std::uint64_t>{1, 0, 0, 0, 0}));
  EXPECT_TRUE(check_props_1_2(e, 11).overall());
}

TEST(WeightEnum, Cardinality) {
  const SparseMatrix b = gen_rank_m(Field::of_order(2), 8, 16, std::nullopt, 4);
  const WeightEnumerator e = weight_enum(b);
  std::uint64_t sum = 0;
  for (auto v : e.a) sum += v;
  EXPECT_EQ(sum, 256u);
}

TEST(WeightEnum, Limits) {
  EXPECT_EQ(code_of([] { weight_enum(SparseMatrix::identity(Field::of_order(2), 21)); }), Errc::SpaceTooLarge);
  const SparseMatrix dep = SparseMatrix::from_dense(Field::of_order(2), 2, 2, {1, 1, 1, 1});
  EXPECT_EQ(code_of([&] { weight_enum(dep); }), Errc::InvalidArgument);
}

TEST(WeightEnum, BoundsOnIdentityAndRandomSubspaces) {
  EXPECT_TRUE(check_props_1_2(weight_enum(SparseMatrix::identity(Field::of_order(3), 4)), 21).overall());
  Rng rng = Rng::stream(77, "subspaces");
  for (int t = 0; t < 40; ++t) {
    const std::uint64_t q = 2 + rng.below(3);
    const std::size_t m = 1 + rng.below(8);
    const std::size_t n = m + rng.below(6);
    const SparseMatrix b = gen_rank_m(Field::of_order(q), m, n, std::nullopt, rng.next());
    EXPECT_TRUE(check_props_1_2(weight_enum(b), 21).overall()) << q << ' ' << m << ' ' << n;
  }
}

TEST(Binomial, SmallestCase) {
  // k = 2, j = 1: C(2,1) = 2 <= (2^{1/2} 2^{1/2})^2 = 4.
  EXPECT_LE(2.0, std::pow(std::pow(0.5, -0.5) * std::pow(0.5, -0.5), 2));
  EXPECT_TRUE(check_binomial_bound(2).overall());
}

TEST(Binomial, ExhaustiveTo100) {
  const CertificateReport r = check_binomial_bound(100);
  EXPECT_TRUE(r.overall());
  EXPECT_EQ(code_of([] { check_binomial_bound(501); }), Errc::InvalidArgument);
}

TEST(DenseEnumeration, HandCountedCases) {
  const DenseLemmaResult a = exhaustive_dense_lemma(2, 2, 0);
  EXPECT_EQ(a.total, 16u);
  EXPECT_EQ(a.exact, Rational(10, 16));
  EXPECT_TRUE(a.holds);
  // 4x2 over GF(2): (16-1)(16-2) full-rank matrices of 256.
  const DenseLemmaResult b = exhaustive_dense_lemma(2, 2, 2);
  EXPECT_EQ(b.exact, Rational(256 - 15 * 14, 256));
  EXPECT_LE(b.exact, Rational(1, 4));
  const DenseLemmaResult c = exhaustive_dense_lemma(3, 1, 1);
  EXPECT_EQ(c.exact, Rational(1, 9));
  EXPECT_EQ(c.bound, Rational(1, 3));
  EXPECT_EQ(code_of([] { exhaustive_dense_lemma(2, 5, 0); }), Errc::TooLarge);
}

TEST(Trials, SingleTrial) {
  const TrialStats s = run_trials(Field::of_order(2), 60, 10, Rational(1, 10), 1, 5);
  EXPECT_TRUE(s.success_rate == 0.0 || s.success_rate == 1.0);
  EXPECT_EQ(s.records.size(), 1u);
}

TEST(Trials, Deterministic) {
  const TrialStats a = run_trials(Field::of_order(3), 80, 20, Rational(1, 10), 20, 99);
  const TrialStats b = run_trials(Field::of_order(3), 80, 20, Rational(1, 10), 20, 99);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].seed, b.records[i].seed);
    EXPECT_EQ(a.records[i].added_nnz, b.records[i].added_nnz);
    EXPECT_EQ(a.records[i].rank, b.records[i].rank);
  }
  EXPECT_EQ(a.mean_added_nonzeros, b.mean_added_nonzeros);
  const std::string csv = trials_csv(a);
  EXPECT_EQ(csv, trials_csv(b));
}

TEST(Trials, SuccessAndWeightGates) {
  const std::size_t trials = 200;
  const TrialStats s = run_trials(Field::of_order(2), 400, 50, Rational(1, 10), trials, 12345);
  EXPECT_EQ(s.path, PlanPath::sparse);
  EXPECT_GE(s.success_rate, 0.9 - 3 * std::sqrt(0.09 / trials));
  EXPECT_LE(s.mean_added_nonzeros, s.weight_bound + 3 * s.se_added_nonzeros);
  EXPECT_LE(s.ci_low, s.success_rate);
  EXPECT_GE(s.ci_high, s.success_rate);
}

TEST(Trials, SparseDensityInput) {
  const TrialStats s = run_trials(Field::of_order(3), 80, 40, Rational(1, 10), 10, 3, 0.1);
  EXPECT_EQ(s.trials, 10u);
  for (const auto& r : s.records) EXPECT_LE(r.rank, 80u);
}
