#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spfq/matrix.hpp"
#include "spfq/params.hpp"
#include "spfq/rng.hpp"

namespace spfq {

enum class PlanPath { sparse, all_dense, large_field };

const char* path_name(PlanPath p);

struct PreconditionPlan {
  PreconditionerParams params;  // for large_field: the row of q_hat
  std::uint64_t q = 0;          // actual field order
  std::size_t n = 0;
  std::size_t m = 0;
  PlanPath path = PlanPath::all_dense;
  long long k = 0;        // n - m - c2 (may be negative)
  double z = 0;           // zero probability of a sparse entry
  std::uint64_t zero_cut = 0;  // an entry is zero iff a raw 64-bit draw is below this
  bool sparse_pattern = false;  // sparse rows in use (sparse path, or large_field with a sparse q_hat plan)
  std::uint64_t effective_q_hat = 0;
  std::uint64_t sample_set_size = 0;
  long long ell = 0;       // dense extra rows actually used
  // Set when n < 7 and q > n^2: the plan falls back to n - m dense rows and
  // this is the Schwartz-Zippel failure bound n/q.
  double schwartz_zippel_bound = 0;

  std::size_t sparse_rows() const;
  std::size_t dense_rows() const;
  std::size_t total_rows() const { return sparse_rows() + dense_rows(); }
};

// BadShape unless 1 <= n and m <= n.
PreconditionPlan plan(std::uint64_t q, std::size_t n, std::size_t m, const Rational& epsilon);

// One sparse row: each entry is zero with probability z (one raw draw),
// otherwise uniform over all q elements. WrongPath unless sparse rows are in use.
SparseRow gen_sparse_row(const PreconditionPlan& plan, Rng& rng);
SparseRow gen_dense_row(std::uint64_t q, std::size_t n, Rng& rng);

struct GeneratedRows {
  SparseMatrix rows;
  std::vector<std::size_t> row_weights;
  std::uint64_t seed = 0;
  PreconditionPlan plan;
};

// Row i is drawn from child stream i of the master stream for seed.
GeneratedRows generate(const PreconditionPlan& plan, std::uint64_t seed);
GeneratedRows generate(const PreconditionPlan& plan, std::uint64_t seed, const Field& field);

struct Preconditioned {
  SparseMatrix matrix;
  GeneratedRows added;
};

// B = [A; generated rows]. RankDeficientInput unless rank(A) = rows(A);
// check_rank = false skips that test, which voids the success guarantee.
Preconditioned precondition(const SparseMatrix& A, const Rational& epsilon, std::uint64_t seed, bool check_rank = true);

}  // namespace spfq
