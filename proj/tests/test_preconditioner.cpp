#include <gtest/gtest.h>

#include <cmath>

#include "spfq/error.hpp"
#include "spfq/experiments.hpp"
#include "spfq/matrix.hpp"
#include "spfq/params.hpp"
#include "spfq/preconditioner.hpp"

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

const Rational kTenth(1, 10);

}  // namespace

TEST(Plan, SparseExample) {
  const PreconditionPlan p = plan(2, 400, 50, kTenth);
  EXPECT_EQ(p.path, PlanPath::sparse);
  EXPECT_EQ(p.k, 341);
  EXPECT_NEAR(p.z, 1 - 43 * std::log(400.0) / 341, 1e-12);
  EXPECT_NEAR(p.z, 0.2445, 1e-4);
  EXPECT_EQ(p.sparse_rows(), 341u);
  EXPECT_EQ(p.dense_rows(), 17u);
  EXPECT_EQ(p.total_rows(), 358u);
}

TEST(Plan, DenseWhenKBelowLogThreshold) {
  const PreconditionPlan p = plan(2, 300, 240, kTenth);
  EXPECT_EQ(p.path, PlanPath::all_dense);
  EXPECT_EQ(p.k, 51);
  EXPECT_LT(51, 43 * std::log(300.0));
  EXPECT_EQ(p.total_rows(), 300u - 240u + 8u);
}

TEST(Plan, SparseNeedsBothThresholds) {
  for (const TableRow& r : table_rows()) {
    for (std::size_t n : {50u, 200u, 800u, 3000u}) {
      for (std::size_t m : {0ul, n / 4, n / 2}) {
        const PreconditionPlan p = plan(r.q_lo, n, m, kTenth);
        const PreconditionerParams d = derive_params(r.q_lo, kTenth);
        const bool expect = p.k > d.c3.convert_to<double>() * std::log(static_cast<double>(n)) && p.k >= d.k_min;
        if (p.path != PlanPath::large_field) EXPECT_EQ(p.path == PlanPath::sparse, expect) << r.q_lo << ' ' << n;
      }
    }
  }
}

TEST(Plan, LargeField) {
  const PreconditionPlan p = plan(1009, 20, 5, kTenth);
  EXPECT_EQ(p.path, PlanPath::large_field);
  EXPECT_EQ(p.effective_q_hat, largest_prime_power_at_most(400));
  EXPECT_EQ(p.effective_q_hat, 397u);
  EXPECT_EQ(p.ell, 0);
  EXPECT_EQ(p.total_rows(), 15u);
}

TEST(Plan, TinyLargeFieldFallsBack) {
  const PreconditionPlan p = plan(1009, 5, 1, kTenth);
  EXPECT_EQ(p.path, PlanPath::all_dense);
  EXPECT_EQ(p.total_rows(), 4u);
  EXPECT_NEAR(p.schwartz_zippel_bound, 5.0 / 1009, 1e-15);
}

TEST(Plan, NothingToAdd) {
  for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u, 11u}) {
    const PreconditionPlan p = plan(q, 40, 40, kTenth);
    EXPECT_EQ(p.total_rows(), static_cast<std::size_t>(derive_params(q, kTenth).ell)) << q;
  }
}

TEST(Plan, BadShapes) {
  EXPECT_EQ(code_of([] { plan(2, 10, 11, kTenth); }), Errc::BadShape);
  EXPECT_EQ(code_of([] { plan(2, 0, 0, kTenth); }), Errc::BadShape);
}

TEST(Rows, DegenerateDensities) {
  PreconditionPlan p = plan(2, 400, 50, kTenth);
  Rng rng = Rng::stream(1, "rows");
  p.zero_cut = ~0ULL;
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(gen_sparse_row(p, rng).empty());
  p.zero_cut = 0;
  std::size_t total = 0;
  const std::size_t rows = 100000, n = p.n;
  for (std::size_t i = 0; i < rows; ++i) total += gen_sparse_row(p, rng).size();
  EXPECT_NEAR(static_cast<double>(total) / rows, n / 2.0, n / 2.0 * 0.01);
}

TEST(Rows, SparseRowRequiresSparsePlan) {
  const PreconditionPlan p = plan(2, 300, 240, kTenth);
  Rng rng = Rng::stream(1, "rows");
  EXPECT_EQ(code_of([&] { gen_sparse_row(p, rng); }), Errc::WrongPath);
}

TEST(Rows, GenerationIsDeterministic) {
  const PreconditionPlan p = plan(2, 400, 50, kTenth);
  const GeneratedRows a = generate(p, 7), b = generate(p, 7), c = generate(p, 8);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.row_weights, b.row_weights);
  EXPECT_FALSE(a.rows == c.rows);
  EXPECT_EQ(a.rows.rows(), p.total_rows());
  for (std::size_t i = 0; i < a.rows.rows(); ++i) EXPECT_EQ(a.row_weights[i], a.rows.row(i).size());
}

TEST(Rows, ExpectedWeightOnSparsePath) {
  const PreconditionPlan p = plan(2, 400, 50, kTenth);
  const PreconditionerParams& d = p.params;
  const double n = 400, q = 2;
  const double expected = (q - 1) / q * (d.c3.convert_to<double>() * n * std::log(n) + (d.c2 + d.ell) * n);
  double sum = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) sum += static_cast<double>(generate(p, 1000 + t).rows.nnz());
  EXPECT_NEAR(sum / trials, expected, 0.03 * expected);
}

TEST(Precondition, EmptyInput) {
  const Field f = Field::of_order(2);
  const Preconditioned r = precondition(SparseMatrix(f, 0, 50), kTenth, 3);
  EXPECT_EQ(r.matrix.rows(), 58u);
  EXPECT_EQ(r.matrix.cols(), 50u);
}

TEST(Precondition, IdentityInputStaysFullRank) {
  for (std::uint64_t q : {2u, 3u, 16u}) {
    const Field f = Field::of_order(q);
    const SparseMatrix A = SparseMatrix::identity(f, 30);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Preconditioned r = precondition(A, kTenth, s);
      EXPECT_EQ(r.matrix.rows(), 30u + static_cast<std::size_t>(derive_params(q, kTenth).ell));
      EXPECT_EQ(matrix_rank(r.matrix), 30u);
    }
  }
}

TEST(Precondition, ShapeAndPrefix) {
  for (std::uint64_t q : {2u, 5u, 1009u}) {
    const Field f = Field::of_order(q);
    for (std::size_t n : {20u, 120u}) {
      const SparseMatrix A = gen_rank_m(f, n / 3, n, std::nullopt, 9);
      const Preconditioned r = precondition(A, kTenth, 4);
      const PreconditionPlan& p = r.added.plan;
      const std::size_t expected = p.path == PlanPath::large_field ? n : n + static_cast<std::size_t>(p.ell);
      EXPECT_EQ(r.matrix.rows(), expected) << q << ' ' << n;
      for (std::size_t i = 0; i < A.rows(); ++i) EXPECT_EQ(r.matrix.row(i), A.row(i));
    }
  }
}

TEST(Precondition, RankCheck) {
  const Field f = Field::of_order(3);
  const SparseMatrix A = SparseMatrix::from_dense(f, 2, 3, {1, 2, 0, 2, 1, 0});
  EXPECT_EQ(code_of([&] { precondition(A, kTenth, 1); }), Errc::RankDeficientInput);
  EXPECT_NO_THROW(precondition(A, kTenth, 1, false));
}

TEST(Precondition, ByteIdenticalOutput) {
  const Field f = Field::of_order(2);
  const SparseMatrix A = gen_rank_m(f, 50, 400, std::nullopt, 5);
  EXPECT_EQ(to_sms(precondition(A, kTenth, 7).matrix), to_sms(precondition(A, kTenth, 7).matrix));
}

TEST(Precondition, FullRankOnSparsePath) {
  const Field f = Field::of_order(2);
  const SparseMatrix A = gen_rank_m(f, 50, 400, std::nullopt, 5);
  int full = 0;
  const int trials = 100;
  for (int s = 0; s < trials; ++s) full += matrix_rank(precondition(A, kTenth, s).matrix) == 400;
  EXPECT_GE(full, static_cast<int>(trials * (0.9 - 3 * std::sqrt(0.09 / trials))));
}
