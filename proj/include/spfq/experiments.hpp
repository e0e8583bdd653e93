#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spfq/analysis.hpp"
#include "spfq/matrix.hpp"
#include "spfq/preconditioner.hpp"

namespace spfq {

inline constexpr int kMaxRedraws = 100;

// m x n matrix of rank m. Rows are uniform, or with density d each entry is
// nonzero (uniform over F*) with probability d. Dependent rows are redrawn,
// at most kMaxRedraws times in total; GenerationFailed beyond that.
SparseMatrix gen_rank_m(const Field& field, std::size_t m, std::size_t n, std::optional<double> density,
                        std::uint64_t seed);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t rank = 0;
  std::size_t added_nnz = 0;
  bool success = false;
};

struct TrialStats {
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  Rational epsilon;
  std::uint64_t seed = 0;
  std::optional<double> density;
  PlanPath path = PlanPath::all_dense;
  std::size_t added_rows = 0;

  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0;
  double ci_low = 0;   // 95% Wilson interval
  double ci_high = 0;
  double mean_added_nonzeros = 0;
  double sd_added_nonzeros = 0;
  double se_added_nonzeros = 0;
  std::size_t max_added_nonzeros = 0;
  // sparse path: sigma n ln n + tau n; otherwise (q-1)/q (n-m+ell) n
  double weight_bound = 0;
  // sparse path: (q-1)/q (c3 n ln n + (c2+ell) n); otherwise same as weight_bound
  double expected_weight = 0;
  double wall_time = 0;
  std::vector<TrialRecord> records;
};

// Trial t uses seed ^ t for both the input matrix and the added rows.
TrialStats run_trials(const Field& field, std::size_t n, std::size_t m, const Rational& epsilon, std::size_t trials,
                      std::uint64_t seed, std::optional<double> density = std::nullopt);

std::string trials_csv(const TrialStats& s);

struct WeightEnumerator {
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::uint64_t> a;  // a[j] = number of vectors of weight j, j = 0..n
};

// Exhaustive census of the row space; SpaceTooLarge when q^m > 2^20,
// InvalidArgument when the rows are dependent.
WeightEnumerator weight_enum(const SparseMatrix& basis);

// Prefix-sum bound for every i, and a(r) <= (1 + (q-1) r)^m at r_samples
// evenly spaced rationals in [0, 1], all in exact arithmetic.
CertificateReport check_props_1_2(const WeightEnumerator& e, std::size_t r_samples);

// C(k, j) <= (beta^-beta (1-beta)^-(1-beta))^k for 2 <= k <= k_max,
// checked exactly and in high precision. InvalidArgument for k_max > 500.
CertificateReport check_binomial_bound(long long k_max);

struct DenseLemmaResult {
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::size_t ell = 0;
  std::uint64_t total = 0;
  std::uint64_t failures = 0;  // rank < n
  Rational exact;              // failures / total
  Rational bound;              // q^-ell
  bool holds = false;
};

// Enumerates every (n+ell) x n matrix; TooLarge when q^{(n+ell) n} > 2^24.
DenseLemmaResult exhaustive_dense_lemma(std::uint64_t q, std::size_t n, std::size_t ell);

}  // namespace spfq
