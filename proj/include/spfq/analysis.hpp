#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spfq/numeric.hpp"
#include "spfq/params.hpp"

namespace spfq {

enum class AnalysisFn { f, f1, F1, F2, g_core, h_log, h_prime, H_big, g1, g2, g_pesky, h_power };

const char* fn_name(AnalysisFn fn);
AnalysisFn parse_fn(std::string_view name);  // InvalidArgument

// Symbol -> value. Keys used: q, c4 (or c), gamma, delta, eta, zeta, beta, n.
using FnParams = std::map<std::string, Rational>;

// Throws DomainError outside the function's domain and InvalidArgument
// when a required symbol is missing. f takes x > 1 (the field size
// variable); every other function takes 0 < x < 1.
Real eval(AnalysisFn fn, const FnParams& params, const Real& x);

// Derivatives used by the certificate checks.
Real F1_prime(const Real& x, const Rational& q);
Real F2_prime(const Real& x, const Rational& q, const Rational& c4);
Real pesky_prime(const Real& x, const Rational& gamma);

// ---- reports ---------------------------------------------------------

enum class Status { pass, fail, inconclusive, flagged };
const char* status_name(Status s);

// Values this close to a threshold are reported as inconclusive.
inline constexpr double kInconclusiveBand = 1e-12;

struct Check {
  std::string label;
  std::string relation;    // <, <=, >, >=, ==
  std::string threshold;   // the threshold actually applied
  std::string published;   // published threshold when it differs from the applied one
  double value = 0;
  std::string value_text;  // high-precision rendering
  Status status = Status::fail;
  std::string note;
};

struct CertificateReport {
  std::string name;
  std::uint64_t q = 0;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  // Conjunction over every check that is not flagged.
  bool overall() const;
  void append(const CertificateReport& other, const std::string& prefix);
};

// Compare a real value against a rational threshold.
Check compare_check(std::string label, const Real& value, std::string_view relation, const Rational& threshold);
// Exact comparison of rationals; never inconclusive.
Check exact_check(std::string label, const Rational& value, std::string_view relation, const Rational& threshold);

// ---- certificate data ------------------------------------------------

struct Threshold {
  Rational published;
  Rational effective;
  bool corrected() const { return published != effective; }
};

struct PeskyCert {
  std::string id;
  Rational gamma;
  Rational end;
  Threshold g_min;    // g(end) > g_min
  Threshold gp_max;   // g'(end) < gp_max
};

struct PowerCert {
  std::string id;
  long long zeta;
  Rational delta;
  Rational rho;
  Threshold h_min;    // h(rho) > h_min
};

struct LadderStep {
  Rational eta;
  Rational lo;   // Gamma_L
  Rational hi;   // Gamma_H
  Threshold F1_min;  // F1(hi) > F1_min
  Threshold F2_min;  // F2(lo) > F2_min
  // Set when the published eta lies outside (0, 1); the substitute decides pass/fail.
  std::optional<Rational> substitute_eta;
};

struct CertificateRow {
  std::uint64_t q_lo;
  std::uint64_t q_hi;  // 0: unbounded
  Rational c4;
  Rational beta0;
  std::string pesky_id;
  std::string power_id;  // empty when (q-1)^x <= x^{0} already holds (q = 2)
  Rational gamma;
  Rational delta;
  Rational small_end;      // Delta
  Rational small_witness;  // Delta-hat
  Rational margin_published;
  Threshold margin_min;
  Threshold f1_end_min;       // f1(Delta) > .
  Threshold f1_witness_max;   // f1(Delta-hat) < .
  Threshold F1p_max;          // F1'(beta0) < .
  Threshold F2p_min;          // F2'(test point) > .
  std::vector<LadderStep> ladder;
  std::vector<std::string> notes;

  bool contains(std::uint64_t q) const { return q >= q_lo && (q_hi == 0 || q <= q_hi); }
};

const std::vector<PeskyCert>& pesky_certs();
const std::vector<PowerCert>& power_certs();
const std::vector<CertificateRow>& certificate_rows();
const PeskyCert& pesky_cert(std::string_view id);
const PowerCert& power_cert(std::string_view id);
const CertificateRow& certificate_row_for(std::uint64_t q);  // NotPrimePower

// ---- certificate checks ----------------------------------------------

// g(x) = gamma x ln x + (1-x) ln(1-x): g(end) >= 0 and g'(end) < 0.
CertificateReport check_pesky_certificate(const Rational& gamma, const Rational& delta_end,
                                          const PeskyCert* thresholds = nullptr);
// h(x) = delta x ln x - x ln zeta: h(rho) >= 0.
CertificateReport check_power_certificate(long long zeta, const Rational& delta, const Rational& rho,
                                          const PowerCert* thresholds = nullptr);

// Thresholds are applied only when q is the row's smallest field size;
// for other q the checks are sign-only.
CertificateReport check_small_beta(const CertificateRow& row, std::uint64_t q);
CertificateReport check_mid_beta(const CertificateRow& row, std::uint64_t q);

// Monotonicity of f in x >= q; PreconditionUnmet for q < 16.
CertificateReport check_f_decreasing(std::uint64_t q, const Rational& c4, const Rational& beta0, long long n);

struct GridResult {
  double max_gap = 0;       // over the whole grid
  double argmax = 0;
  double tail_max_gap = 0;  // over the logarithmic part near 0
  std::size_t points = 0;
  Status status = Status::fail;  // pass iff max_gap <= 0
};

// max over beta in (0, beta0] of g(beta) - 1; grid_points >= 1000.
GridResult grid_check_core(std::uint64_t q, const Rational& c4, const Rational& beta0, std::size_t grid_points);

CertificateReport check_asymptotic(int N, std::uint64_t q, std::size_t grid_points);

struct RhoBudget {
  Rational epsilon;
  long long k = 0;
  Rational theta;
  Rational zeta;
  Rational rho1;
  Rational dense;
  Rational total;
  CertificateReport report;
};

RhoBudget rho_budget(const PreconditionerParams& params, long long k);  // KTooSmall

struct Rho0Sums {
  Real lhs;
  Real rhs;
  long long terms = 0;
};

// KTooLarge for k > 200.
Rho0Sums rho0_bruteforce(std::uint64_t q, long long k, long long n, long long m, const Rational& c4,
                         const Rational& beta0);

struct PlotPoint {
  Real beta;
  Real gap;
};

// points >= 2 samples beta = beta0*i/points, i = 1..points.
std::vector<PlotPoint> plot_data(std::uint64_t q, const Rational& c4, const Rational& beta0, std::size_t points);
std::string plot_csv(const std::vector<PlotPoint>& pts);

// ---- batch verification ----------------------------------------------

inline constexpr std::size_t kVerifyGridPoints = 10000;

// Every check for the row covering q.
CertificateReport verify_row(std::uint64_t q, std::size_t grid_points = kVerifyGridPoints);

struct VerifyReport {
  std::vector<CertificateReport> reports;
  bool overall() const;
};

// All schedule rows, monotonicity delegation, the asymptotic regime and
// a negative control.
VerifyReport verify_all(std::size_t grid_points = kVerifyGridPoints);

}  // namespace spfq
