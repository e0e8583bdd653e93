#include "spfq/params.hpp"

#include <sstream>

#include "spfq/error.hpp"
#include "spfq/field.hpp"

namespace spfq {

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

// Published values, one entry per schedule row.
struct PublishedRow {
  std::uint64_t q_lo;
  // summary table
  long long ell;
  Rational sigma;   // value when !sigma_in_q, else coefficient of (q-1)/q
  bool sigma_in_q;
  const char* sigma_text;
  long long tau;
  long long upsilon;
  // Delta = ceil(a ln(1/eps) + b)
  Rational da, db;
  // k >= ceil(A/eps ln(1/eps) + B/eps + a ln(1/eps) + C); value at eps = 1/10
  Rational kA, kB, ka, kC;
  long long k_at_tenth;
  // c2 and ell at eps = 1/10
  long long c2_tab, ell_tab;
};

const std::vector<PublishedRow>& published_rows() {
  static const std::vector<PublishedRow> rows = {
      {2, 8, R(43, 2), false, "43/2", 17, 41, R(51, 100), R(1, 4), R(51, 80), R(25, 16), R(51, 100), R(5, 4), 33, 9, 8},
      {3, 5, R(16), false, "16", 11, 55, R(73, 100), R(9, 10), R(73, 80), R(19, 8), R(73, 100), R(19, 10), 49, 6, 5},
      {4, 4, R(225, 16), false, "225/16", 9, 65, R(22, 25), R(7, 5), R(11, 10), R(3), R(22, 25), R(12, 5), 60, 5, 4},
      {5, 4, R(64, 5), false, "64/5", 8, 75, R(51, 50), R(19, 10), R(51, 40), R(29, 8), R(51, 50), R(29, 10), 71, 4, 4},
      {7, 3, R(78, 7), false, "78/7", 7, 96, R(13, 10), R(14, 5), R(13, 8), R(19, 4), R(13, 10), R(19, 5), 92, 4, 3},
      {8, 3, R(21, 2), false, "21/2", 6, 108, R(29, 20), R(17, 5), R(29, 16), R(11, 2), R(29, 20), R(22, 5), 105, 3, 3},
      {9, 3, R(88, 9), false, "88/9", 6, 124, R(33, 20), R(41, 10), R(33, 16), R(51, 8), R(33, 20), R(51, 10), 121, 3, 3},
      {11, 3, R(105, 11), false, "105/11", 6, 136, R(179, 100), R(47, 10), R(179, 80), R(57, 8), R(179, 100), R(57, 10), 133, 3, 3},
      {13, 3, R(120, 13), false, "120/13", 6, 150, R(49, 25), R(107, 20), R(49, 20), R(127, 16), R(49, 25), R(127, 20), 147, 3, 3},
      {16, 2, R(9), true, "9(q-1)/q", 5, 194, R(99, 40), R(37, 5), R(99, 32), R(21, 2), R(99, 40), R(42, 5), 191, 3, 2},
      {23, 2, R(8), true, "8(q-1)/q", 4, 285, R(87, 25), R(119, 10), R(87, 20), R(129, 8), R(87, 25), R(129, 10), 283, 2, 2},
      {31, 2, R(15, 2), true, "15(q-1)/(2q)", 4, 381, R(9, 2), R(50, 3), R(45, 8), R(265, 12), R(9, 2), R(53, 3), 379, 2, 2},
      {47, 2, R(7), true, "7(q-1)/q", 4, 577, R(13, 2), R(133, 5), R(65, 8), R(69, 2), R(13, 2), R(138, 5), 575, 2, 2},
      {61, 2, R(27, 4), true, "27(q-1)/(4q)", 4, 783, R(17, 2), R(149, 4), R(85, 8), R(765, 16), R(17, 2), R(153, 4), 781, 2, 2},
      {73, 2, R(33, 5), true, "33(q-1)/(5q)", 4, 996, R(21, 2), R(242, 5), R(105, 8), R(247, 4), R(21, 2), R(247, 5), 994, 2, 2},
      {89, 2, R(13, 2), true, "13(q-1)/(2q)", 4, 1213, R(25, 2), R(599, 10), R(125, 8), R(609, 8), R(25, 2), R(609, 10), 1211, 2, 2},
  };
  return rows;
}

const PublishedRow& published_row_for(std::uint64_t q) {
  const auto& rows = published_rows();
  const TableRow& t = table_row_for(q);
  for (const auto& r : rows)
    if (r.q_lo == t.q_lo) return r;
  throw Error(Errc::InvalidArgument, "no published row");
}

Rational sigma_of(const Rational& c4, std::uint64_t q) {
  return Rational(3) * c4 * Rational(static_cast<long long>(q - 1), static_cast<long long>(q));
}

void check_epsilon(const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw Error(Errc::BadEpsilon, "epsilon must lie in (0, 1), got " + to_string(eps));
}

// c2 and ell from exact powers of q.
void fill_rows(PreconditionerParams& p) {
  const Rational inv_eps = Rational(1) / p.epsilon;
  p.c2 = std::max<long long>(2, min_exponent(p.q, Rational(40) * inv_eps));
  if (Rational(static_cast<long long>(p.q)) >= Rational(20) * inv_eps + 1)
    p.ell = 0;
  else
    p.ell = min_exponent(p.q, Rational(20) * inv_eps);
  p.c3 = Rational(3) * p.c4;
  p.sigma = sigma_of(p.c4, p.q);
  p.tau = p.c2 + p.ell;
  p.upsilon = p.ell + p.k_min;
}

long long k_from_delta_hat(const Rational& eps, const Real& delta_hat) {
  const Real factor = to_real(Rational(5, 4) / eps + 1);
  return ceil_ll(factor * (delta_hat + 1));
}

std::string str(long long v) { return std::to_string(v); }

}  // namespace

const char* source_name(ParamSource s) {
  switch (s) {
    case ParamSource::paper_table: return "paper_table";
    case ParamSource::derived_formula: return "derived_formula";
    case ParamSource::theorem2: return "theorem2";
  }
  return "unknown";
}

const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = {
      {2, 2, R(43, 3), R(6, 43), R(51, 100), R(1, 4)},
      {3, 3, R(8), R(1, 4), R(73, 100), R(9, 10)},
      {4, 4, R(25, 4), R(8, 25), R(22, 25), R(7, 5)},
      {5, 5, R(16, 3), R(3, 8), R(51, 50), R(19, 10)},
      {7, 7, R(13, 3), R(6, 13), R(13, 10), R(14, 5)},
      {8, 8, R(4), R(1, 2), R(29, 20), R(17, 5)},
      {9, 9, R(11, 3), R(6, 11), R(33, 20), R(41, 10)},
      {11, 11, R(7, 2), R(4, 7), R(179, 100), R(47, 10)},
      {13, 13, R(10, 3), R(3, 5), R(49, 25), R(107, 20)},
      {16, 19, R(3), R(2, 3), R(99, 40), R(37, 5)},
      {23, 29, R(8, 3), R(3, 4), R(87, 25), R(119, 10)},
      {31, 43, R(5, 2), R(4, 5), R(9, 2), R(50, 3)},
      {47, 59, R(7, 3), R(6, 7), R(13, 2), R(133, 5)},
      {61, 71, R(9, 4), R(8, 9), R(17, 2), R(149, 4)},
      {73, 83, R(11, 5), R(10, 11), R(21, 2), R(242, 5)},
      {89, 0, R(13, 6), R(12, 13), R(25, 2), R(599, 10)},
  };
  return rows;
}

std::vector<std::uint64_t> table_row_keys() {
  std::vector<std::uint64_t> keys;
  for (const auto& r : table_rows()) keys.push_back(r.q_lo);
  return keys;
}

const TableRow& table_row_for(std::uint64_t q) {
  if (!prime_power(q)) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  for (const auto& r : table_rows())
    if (r.contains(q)) return r;
  // every prime power lies in some row; reaching here means the table is broken
  throw Error(Errc::NotPrimePower, "no schedule row for q = " + std::to_string(q));
}

std::pair<Rational, Rational> table_row(std::uint64_t q) {
  const TableRow& r = table_row_for(q);
  return {r.c4, r.beta0};
}

long long min_exponent(std::uint64_t q, const Rational& bound) {
  if (q < 2) throw Error(Errc::InvalidArgument, "q must be at least 2");
  long long c = 0;
  Rational pw(1);
  while (pw < bound) {
    pw *= static_cast<long long>(q);
    ++c;
  }
  return c;
}

PreconditionerParams derive_params(std::uint64_t q, const Rational& epsilon) {
  const TableRow& row = table_row_for(q);
  check_epsilon(epsilon);
  PreconditionerParams p;
  p.q = q;
  p.epsilon = epsilon;
  p.c4 = row.c4;
  p.beta0 = row.beta0;
  p.source = ParamSource::derived_formula;

  const Real ln_inv_eps = boost::multiprecision::log(to_real(Rational(1) / epsilon));
  const Real b0 = to_real(row.beta0);
  const Real ln_inv_b0 = -boost::multiprecision::log(b0);
  const Real exact = (ln_inv_eps + boost::multiprecision::log(real_from_int(10)) - boost::multiprecision::log1p(-b0)) / ln_inv_b0 - 1;
  p.delta_tight = ceil_ll(exact);
  // Rational-coefficient bound; it dominates the exact expression for every eps in (0,1).
  p.delta_hat = to_real(row.delta_slope) * ln_inv_eps + to_real(row.delta_intercept);
  p.delta = ceil_ll(p.delta_hat);
  p.k_min = k_from_delta_hat(epsilon, p.delta_hat);
  fill_rows(p);
  return p;
}

Theorem2Params theorem2_stated(int N, std::uint64_t q) {
  if (N < 18) throw Error(Errc::NBelow18, "N must be at least 18");
  const std::uint64_t q_min = 16ULL * static_cast<std::uint64_t>(N) + 9;
  if (q < q_min) throw Error(Errc::FieldTooSmallForN, "q = " + std::to_string(q) + " is below 16N+9 = " + std::to_string(q_min));
  Theorem2Params t;
  t.N = N;
  t.q_min = q_min;
  t.sigma = (Rational(1) - Rational(1, static_cast<long long>(q))) * (Rational(6) + Rational(3, N));
  const Real m = real_from_int(2LL * N + 1);
  t.upsilon = ceil_ll(m * boost::multiprecision::log(m) + to_real(Rational(167, 5)) * m);
  t.tau = 1;
  return t;
}

PreconditionerParams theorem2_params(int N, const Rational& epsilon, std::uint64_t q) {
  if (N < 18) throw Error(Errc::NBelow18, "N must be at least 18");
  const std::uint64_t q_min = 16ULL * static_cast<std::uint64_t>(N) + 9;
  if (q < q_min) throw Error(Errc::FieldTooSmallForN, "q = " + std::to_string(q) + " is below 16N+9 = " + std::to_string(q_min));
  check_epsilon(epsilon);
  PreconditionerParams p;
  p.q = q;
  p.epsilon = epsilon;
  p.N = N;
  p.source = ParamSource::theorem2;
  p.c4 = Rational(2) + Rational(1, N);
  p.beta0 = Rational(2LL * N, 2LL * N + 1);
  const Real m = real_from_int(2LL * N + 1);
  const Real ln_inv_eps = boost::multiprecision::log(to_real(Rational(1) / epsilon));
  const Real b0 = to_real(p.beta0);
  const Real exact = (ln_inv_eps + boost::multiprecision::log(real_from_int(10)) - boost::multiprecision::log1p(-b0)) /
                         (-boost::multiprecision::log(b0)) -
                     1;
  p.delta_tight = ceil_ll(exact);
  p.delta_hat = m * ln_inv_eps + m * boost::multiprecision::log(m) + m * boost::multiprecision::log(real_from_int(10)) - 1;
  p.delta = ceil_ll(p.delta_hat);
  p.k_min = k_from_delta_hat(epsilon, p.delta_hat);
  fill_rows(p);
  return p;
}

std::optional<PreconditionerParams> published_params(std::uint64_t q) {
  const TableRow& t = table_row_for(q);
  const PublishedRow& r = published_row_for(q);
  PreconditionerParams p;
  p.q = q;
  p.epsilon = Rational(1, 10);
  p.c4 = t.c4;
  p.beta0 = t.beta0;
  p.c3 = Rational(3) * t.c4;
  p.ell = r.ell;
  p.tau = r.tau;
  p.upsilon = r.upsilon;
  p.k_min = r.k_at_tenth;
  p.c2 = r.c2_tab;
  p.sigma = r.sigma_in_q ? r.sigma * Rational(static_cast<long long>(q - 1), static_cast<long long>(q)) : r.sigma;
  p.source = ParamSource::paper_table;
  return p;
}

bool ComparisonReport::table_confirmed(const std::string& table) const {
  bool any = false;
  for (const auto& it : items)
    if (it.table == table) {
      any = true;
      if (!it.confirmed) return false;
    }
  return any;
}

std::vector<ComparisonItem> ComparisonReport::discrepancies() const {
  std::vector<ComparisonItem> out;
  for (const auto& it : items)
    if (!it.confirmed) out.push_back(it);
  return out;
}

ComparisonReport compare_with_paper(const PreconditionerParams& p) {
  ComparisonReport rep;
  rep.q = p.q;
  if (p.source != ParamSource::derived_formula || p.epsilon != Rational(1, 10)) {
    rep.reason = "comparison needs derived parameters at epsilon = 1/10";
    return rep;
  }
  rep.applicable = true;
  const TableRow& t = table_row_for(p.q);
  const PublishedRow& r = published_row_for(p.q);
  auto add = [&](const char* table, const char* field, const std::string& pub, const std::string& der, bool ok,
                 std::string note = {}) {
    rep.items.push_back({table, field, pub, der, ok, std::move(note)});
  };

  add("c4_beta0", "c4", to_string(t.c4), to_string(p.c4), t.c4 == p.c4);
  add("c4_beta0", "beta0", to_string(t.beta0), to_string(p.beta0), t.beta0 == p.beta0);

  const Real ln10 = boost::multiprecision::log(real_from_int(10));
  const long long pub_delta = ceil_ll(to_real(r.da) * ln10 + to_real(r.db));
  std::string dnote;
  if (p.delta_tight != p.delta)
    dnote = "ceiling of the exact expression is " + str(p.delta_tight) + "; the tabulated coefficients round up to " +
            str(pub_delta);
  add("delta", "delta", str(pub_delta) + " = ceil(" + to_string(r.da) + " ln 10 + " + to_string(r.db) + ")",
      str(p.delta), pub_delta == p.delta, dnote);

  add("k", "k_min", str(r.k_at_tenth), str(p.k_min), r.k_at_tenth == p.k_min);
  const Real ten = real_from_int(10);
  const long long closed = ceil_ll(to_real(r.kA) * ten * ln10 + to_real(r.kB) * ten + to_real(r.ka) * ln10 + to_real(r.kC));
  add("k", "closed_form_at_eps", str(r.k_at_tenth), str(closed), closed == r.k_at_tenth,
      "tabulated closed form evaluated at eps = 1/10");
  const bool expansion = r.kA == Rational(5, 4) * r.da && r.kB == Rational(5, 4) * (r.db + 1) && r.ka == r.da &&
                         r.kC == r.db + 1;
  add("k", "coefficients", to_string(r.kA) + ", " + to_string(r.kB) + ", " + to_string(r.ka) + ", " + to_string(r.kC),
      "(5/4 eps^-1 + 1)(" + to_string(r.da) + " ln(1/eps) + " + to_string(r.db + 1) + ")", expansion,
      "closed form equals (5/4 eps^-1 + 1)(Delta-hat + 1) with the tabulated Delta-hat coefficients");

  if (p.q <= 89) {
    add("c2_ell", "c2", str(r.c2_tab), str(p.c2), r.c2_tab == p.c2);
    add("c2_ell", "ell", str(r.ell_tab), str(p.ell), r.ell_tab == p.ell);
  }

  add("summary", "ell", str(r.ell), str(p.ell), r.ell == p.ell);
  const Rational pub_sigma =
      r.sigma_in_q ? r.sigma * Rational(static_cast<long long>(p.q - 1), static_cast<long long>(p.q)) : r.sigma;
  std::string snote = std::string("published as ") + r.sigma_text;
  if (r.q_lo == 73) snote += "; printed with a trailing factor n, read as a typo since sigma is dimensionless";
  add("summary", "sigma", to_string(pub_sigma), to_string(p.sigma), pub_sigma == p.sigma, snote);
  add("summary", "tau", str(r.tau), str(p.tau), r.tau == p.tau);
  std::string unote;
  if (r.upsilon != p.upsilon)
    unote = "ell + k_min = " + str(p.ell) + " + " + str(p.k_min) + " = " + str(p.upsilon) + "; published " + str(r.upsilon);
  add("summary", "upsilon", str(r.upsilon), str(p.upsilon), r.upsilon == p.upsilon, unote);
  return rep;
}

}  // namespace spfq
