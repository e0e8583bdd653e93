#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spfq/numeric.hpp"

namespace spfq {

enum class ParamSource { paper_table, derived_formula, theorem2 };

const char* source_name(ParamSource s);

// One row of the (c4, beta0) schedule, keyed by a range of field orders.
// delta_slope and delta_intercept are rational upper bounds for
// 1/ln(1/beta0) and (ln 10 - ln(1 - beta0))/ln(1/beta0) - 1, so that
// delta_slope*ln(1/eps) + delta_intercept bounds the exact Delta-hat.
struct TableRow {
  std::uint64_t q_lo;
  std::uint64_t q_hi;  // 0: unbounded
  Rational c4;
  Rational beta0;
  Rational delta_slope;
  Rational delta_intercept;

  bool contains(std::uint64_t q) const { return q >= q_lo && (q_hi == 0 || q <= q_hi); }
};

const std::vector<TableRow>& table_rows();

// Row covering q; throws NotPrimePower.
const TableRow& table_row_for(std::uint64_t q);
std::pair<Rational, Rational> table_row(std::uint64_t q);

struct PreconditionerParams {
  std::uint64_t q = 0;
  Rational epsilon;
  Rational c4;
  Rational beta0;
  Rational c3;
  long long c2 = 0;
  long long ell = 0;
  long long delta = 0;
  long long k_min = 0;
  Rational sigma;
  long long tau = 0;
  long long upsilon = 0;
  ParamSource source = ParamSource::derived_formula;
  int N = 0;  // asymptotic regime only

  Real delta_hat;              // real value whose ceiling is delta
  long long delta_tight = 0;   // ceiling of the exact logarithmic expression
};

// Smallest c with q^c >= bound (bound > 0), computed exactly.
long long min_exponent(std::uint64_t q, const Rational& bound);

PreconditionerParams derive_params(std::uint64_t q, const Rational& epsilon);

// Constants as stated for the asymptotic regime (N >= 18, q >= 16N+9).
struct Theorem2Params {
  int N = 0;
  std::uint64_t q_min = 0;
  Rational sigma;
  long long upsilon = 0;  // ceil((2N+1) ln(2N+1) + (167/5)(2N+1))
  long long tau = 1;
};

Theorem2Params theorem2_stated(int N, std::uint64_t q);
PreconditionerParams theorem2_params(int N, const Rational& epsilon, std::uint64_t q);

struct ComparisonItem {
  std::string table;   // summary, c4_beta0, delta, k, c2_ell
  std::string field;
  std::string published;
  std::string derived;
  bool confirmed = false;
  std::string note;
};

struct ComparisonReport {
  std::uint64_t q = 0;
  bool applicable = false;
  std::string reason;
  std::vector<ComparisonItem> items;

  bool table_confirmed(const std::string& table) const;
  std::vector<ComparisonItem> discrepancies() const;
};

// Field-by-field diff against the published tables at eps = 1/10.
ComparisonReport compare_with_paper(const PreconditionerParams& params);

// Published summary-table row covering q, as a paper_table bundle
// (k_min is upsilon - ell; delta is not part of the summary).
std::optional<PreconditionerParams> published_params(std::uint64_t q);

// Lowest q of every schedule row, in table order.
std::vector<std::uint64_t> table_row_keys();

}  // namespace spfq
