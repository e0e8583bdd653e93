#include "spfq/experiments.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "spfq/error.hpp"

namespace spfq {

namespace bmp = boost::multiprecision;

namespace {

SparseRow draw_row(const Field& F, std::size_t n, std::optional<double> density, Rng& rng) {
  SparseRow row;
  for (std::size_t j = 0; j < n; ++j) {
    Element v;
    if (density) {
      if (!(rng.unit() < *density)) continue;
      v = 1 + rng.below(F.q() - 1);
    } else {
      v = rng.below(F.q());
    }
    if (v != 0) row.push_back({static_cast<std::uint32_t>(j), v});
  }
  return row;
}

// Row echelon form with unit pivots, over dense vectors.
class Echelon {
 public:
  Echelon(const Field& F, std::size_t n) : F_(F), n_(n) {}

  bool try_add(std::vector<Element> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Element f = v[pivots_[r]];
      if (f == 0) continue;
      const auto& b = rows_[r];
      for (std::size_t j = pivots_[r]; j < n_; ++j)
        if (b[j]) v[j] = F_.sub(v[j], F_.mul(f, b[j]));
    }
    std::size_t p = 0;
    while (p < n_ && v[p] == 0) ++p;
    if (p == n_) return false;
    const Element inv = F_.inv(v[p]);
    for (std::size_t j = p; j < n_; ++j) v[j] = F_.mul(v[j], inv);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  const Field& F_;
  std::size_t n_;
  std::vector<std::vector<Element>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<Element> to_dense(const SparseRow& r, std::size_t n) {
  std::vector<Element> v(n, 0);
  for (const auto& e : r) v[e.col] = e.val;
  return v;
}

// q^e, or nullopt when it exceeds limit.
std::optional<std::uint64_t> bounded_pow(std::uint64_t q, std::uint64_t e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > limit / q) return std::nullopt;
    r *= q;
  }
  return r;
}

}  // namespace

SparseMatrix gen_rank_m(const Field& F, std::size_t m, std::size_t n, std::optional<double> density,
                        std::uint64_t seed) {
  if (m > n) throw Error(Errc::BadShape, "rank " + std::to_string(m) + " exceeds n = " + std::to_string(n));
  if (density && !(*density > 0 && *density <= 1)) throw Error(Errc::InvalidArgument, "density must lie in (0, 1]");
  const Rng master = Rng::stream(seed, "matrix");
  std::vector<Rng> streams;
  std::vector<SparseRow> rows;
  streams.reserve(m);
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    streams.push_back(master.child(i));
    rows.push_back(draw_row(F, n, density, streams.back()));
  }
  SparseMatrix A = SparseMatrix::from_rows(F, n, rows);
  if (matrix_rank(A) == m) return A;

  int redraws = 0;
  Echelon ech(F, n);
  for (std::size_t i = 0; i < m; ++i) {
    while (!ech.try_add(to_dense(rows[i], n))) {
      if (++redraws > kMaxRedraws)
        throw Error(Errc::GenerationFailed, "no rank-" + std::to_string(m) + " matrix after " +
                                                std::to_string(kMaxRedraws) + " redraws");
      rows[i] = draw_row(F, n, density, streams[i]);
    }
  }
  A = SparseMatrix::from_rows(F, n, std::move(rows));
  if (matrix_rank(A) != m) throw Error(Errc::GenerationFailed, "generated matrix failed the rank check");
  return A;
}

TrialStats run_trials(const Field& F, std::size_t n, std::size_t m, const Rational& epsilon, std::size_t trials,
                      std::uint64_t seed, std::optional<double> density) {
  if (trials < 1) throw Error(Errc::InvalidArgument, "trials must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  const PreconditionPlan p = plan(F.q(), n, m, epsilon);
  TrialStats s;
  s.q = F.q();
  s.n = n;
  s.m = m;
  s.epsilon = epsilon;
  s.seed = seed;
  s.density = density;
  s.path = p.path;
  s.added_rows = p.total_rows();
  s.trials = trials;

  double sum = 0, sumsq = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t ts = seed ^ static_cast<std::uint64_t>(t);
    const SparseMatrix A = gen_rank_m(F, m, n, density, ts);
    const Preconditioned B = precondition(A, epsilon, ts, false);
    TrialRecord r;
    r.trial = t;
    r.seed = ts;
    r.rank = matrix_rank(B.matrix);
    r.added_nnz = B.added.rows.nnz();
    r.success = r.rank == n;
    s.successes += r.success;
    sum += static_cast<double>(r.added_nnz);
    sumsq += static_cast<double>(r.added_nnz) * static_cast<double>(r.added_nnz);
    s.max_added_nonzeros = std::max(s.max_added_nonzeros, r.added_nnz);
    s.records.push_back(r);
  }
  const double T = static_cast<double>(trials);
  s.success_rate = static_cast<double>(s.successes) / T;
  const double z = 1.959963984540054;
  const double denom = 1 + z * z / T;
  const double centre = (s.success_rate + z * z / (2 * T)) / denom;
  const double half = z * std::sqrt(s.success_rate * (1 - s.success_rate) / T + z * z / (4 * T * T)) / denom;
  s.ci_low = std::max(0.0, centre - half);
  s.ci_high = std::min(1.0, centre + half);
  s.mean_added_nonzeros = sum / T;
  s.sd_added_nonzeros = trials > 1 ? std::sqrt(std::max(0.0, (sumsq - sum * sum / T) / (T - 1))) : 0;
  s.se_added_nonzeros = s.sd_added_nonzeros / std::sqrt(T);

  const double nn = static_cast<double>(n), lnn = std::log(nn);
  const double frac = static_cast<double>(F.q() - 1) / static_cast<double>(F.q());
  if (p.sparse_pattern) {
    s.weight_bound = p.params.sigma.convert_to<double>() * nn * lnn + static_cast<double>(p.params.tau) * nn;
    s.expected_weight =
        frac * (p.params.c3.convert_to<double>() * nn * lnn + static_cast<double>(p.params.c2 + p.ell) * nn);
  } else {
    s.weight_bound = frac * static_cast<double>(p.total_rows()) * nn;
    s.expected_weight = s.weight_bound;
  }
  s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

std::string trials_csv(const TrialStats& s) {
  std::ostringstream os;
  os << "trial,seed,rank,added_nnz,success\n";
  for (const auto& r : s.records)
    os << r.trial << ',' << r.seed << ',' << r.rank << ',' << r.added_nnz << ',' << (r.success ? 1 : 0) << '\n';
  return os.str();
}

WeightEnumerator weight_enum(const SparseMatrix& basis) {
  const Field& F = basis.field();
  const std::uint64_t q = F.q();
  const std::size_t m = basis.rows(), n = basis.cols();
  const auto size = bounded_pow(q, m, 1ULL << 20);
  if (!size) throw Error(Errc::SpaceTooLarge, "row space has more than 2^20 vectors");
  if (matrix_rank(basis) != m) throw Error(Errc::InvalidArgument, "basis rows are linearly dependent");
  WeightEnumerator e;
  e.q = q;
  e.n = n;
  e.m = m;
  e.a.assign(n + 1, 0);
  std::vector<Element> v(n, 0);
  std::vector<std::uint64_t> c(m, 0);
  std::size_t weight = 0;
  e.a[0] = 1;
  for (std::uint64_t step = 1; step < *size; ++step) {
    std::size_t i = 0;
    while (true) {
      // Coefficient i moves from code c[i] to c[i] + 1 (mod q): add the difference times row i.
      const Element next = c[i] + 1 < q ? c[i] + 1 : 0;
      const Element diff = F.sub(next, c[i]);
      for (const auto& en : basis.row(i)) {
        const bool was = v[en.col] != 0;
        v[en.col] = F.add(v[en.col], F.mul(diff, en.val));
        const bool now = v[en.col] != 0;
        if (was && !now) --weight;
        if (!was && now) ++weight;
      }
      c[i] = next;
      if (next != 0) break;
      ++i;
    }
    ++e.a[weight];
  }
  return e;
}

CertificateReport check_props_1_2(const WeightEnumerator& e, std::size_t r_samples) {
  CertificateReport rep;
  rep.name = "weight_enumerator q=" + std::to_string(e.q) + " n=" + std::to_string(e.n) + " m=" + std::to_string(e.m);
  rep.q = e.q;
  BigInt total = 0;
  for (auto x : e.a) total += x;
  rep.checks.push_back(exact_check("sum of a[j] = q^m", Rational(total), "==",
                                   Rational(bmp::pow(BigInt(e.q), static_cast<unsigned>(e.m)))));
  rep.checks.push_back(exact_check("a[0]", Rational(e.a.empty() ? 0 : e.a[0]), ">=", Rational(1)));

  // prefix sums against sum_{j<=i} C(m,j) (q-1)^j
  long long violations = 0;
  Rational min_slack = -1;
  BigInt lhs = 0, rhs = 0, binom = 1, qpow = 1;
  for (std::size_t i = 0; i <= e.n; ++i) {
    lhs += e.a[i];
    if (i <= e.m) {
      if (i > 0) {
        binom = binom * (e.m - i + 1) / i;
        qpow *= e.q - 1;
      }
      rhs += binom * qpow;
    }
    if (lhs > rhs) ++violations;
    const Rational slack = Rational(rhs - lhs);
    if (i == 0 || slack < min_slack) min_slack = slack;
  }
  rep.checks.push_back(exact_check("prefix-sum bound violations", Rational(violations), "==", Rational(0)));
  rep.checks.push_back(exact_check("prefix-sum bound minimum slack", min_slack, ">=", Rational(0)));

  // a(r) <= (1 + (q-1) r)^m at evenly spaced r
  long long v2 = 0;
  const std::size_t S = std::max<std::size_t>(r_samples, 2);
  for (std::size_t s = 0; s < S; ++s) {
    const Rational r(static_cast<long long>(s), static_cast<long long>(S - 1));
    Rational ar = 0, rp = 1;
    for (std::size_t j = 0; j <= e.n; ++j) {
      ar += Rational(e.a[j]) * rp;
      rp *= r;
    }
    Rational bound = 1;
    const Rational base = Rational(1) + Rational(static_cast<long long>(e.q - 1)) * r;
    for (std::size_t i = 0; i < e.m; ++i) bound *= base;
    if (ar > bound) ++v2;
  }
  rep.checks.push_back(exact_check("polynomial bound violations over " + std::to_string(S) + " points",
                                   Rational(v2), "==", Rational(0)));
  return rep;
}

CertificateReport check_binomial_bound(long long k_max) {
  if (k_max > 500) throw Error(Errc::InvalidArgument, "k_max must be at most 500");
  CertificateReport rep;
  rep.name = "binomial_bound k_max=" + std::to_string(k_max);
  std::vector<BigInt> self_pow(static_cast<std::size_t>(std::max<long long>(k_max, 1)) + 1);
  self_pow[0] = 1;
  for (long long j = 1; j <= k_max; ++j) self_pow[j] = bmp::pow(BigInt(j), static_cast<unsigned>(j));
  long long exact_viol = 0, real_viol = 0, disagree = 0, pairs = 0;
  Real worst = 0;
  long long wk = 0, wj = 0;
  for (long long k = 2; k <= k_max; ++k) {
    BigInt binom = 1;
    const Real K = real_from_int(k);
    for (long long j = 1; j <= k - 1; ++j) {
      binom = binom * (k - j + 1) / j;
      ++pairs;
      // exact: C(k,j) j^j (k-j)^(k-j) <= k^k
      const bool ok_exact = binom * self_pow[j] * self_pow[k - j] <= self_pow[k];
      const Real b = real_from_int(j) / K;
      const Real rhs = bmp::exp(-K * (b * bmp::log(b) + (1 - b) * bmp::log1p(-b)));
      const Real lhs(binom);
      const bool ok_real = lhs <= rhs;
      exact_viol += !ok_exact;
      real_viol += !ok_real;
      disagree += ok_exact != ok_real;
      const Real ratio = lhs / rhs;
      if (ratio > worst) {
        worst = ratio;
        wk = k;
        wj = j;
      }
    }
  }
  rep.checks.push_back(exact_check("pairs checked", Rational(pairs), ">=", Rational(k_max >= 2 ? 1 : 0)));
  rep.checks.push_back(exact_check("violations (exact integers)", Rational(exact_viol), "==", Rational(0)));
  rep.checks.push_back(exact_check("violations (high precision)", Rational(real_viol), "==", Rational(0)));
  rep.checks.push_back(exact_check("route disagreements", Rational(disagree), "==", Rational(0)));
  if (pairs > 0) {
    Check c = compare_check("largest ratio C(k,j)/bound (k=" + std::to_string(wk) + ", j=" + std::to_string(wj) + ")",
                            worst, "<", Rational(1));
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

DenseLemmaResult exhaustive_dense_lemma(std::uint64_t q, std::size_t n, std::size_t ell) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be at least 1");
  const Field F = Field::of_order(q);
  const std::size_t R = n + ell;
  const auto total = bounded_pow(q, R * n, 1ULL << 24);
  if (!total) throw Error(Errc::TooLarge, "more than 2^24 matrices to enumerate");
  DenseLemmaResult res;
  res.q = q;
  res.n = n;
  res.ell = ell;
  res.total = *total;
  std::vector<Element> digits(R * n, 0), work(R * n);
  for (std::uint64_t idx = 0; idx < *total; ++idx) {
    work = digits;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < R; ++c) {
      std::size_t piv = rank;
      while (piv < R && work[piv * n + c] == 0) ++piv;
      if (piv == R) continue;
      if (piv != rank)
        for (std::size_t j = 0; j < n; ++j) std::swap(work[piv * n + j], work[rank * n + j]);
      const Element inv = F.inv(work[rank * n + c]);
      for (std::size_t r = rank + 1; r < R; ++r) {
        const Element f = F.mul(work[r * n + c], inv);
        if (f == 0) continue;
        for (std::size_t j = c; j < n; ++j) work[r * n + j] = F.sub(work[r * n + j], F.mul(f, work[rank * n + j]));
      }
      ++rank;
    }
    if (rank < n) ++res.failures;
    for (std::size_t d = 0; d < digits.size(); ++d) {
      if (++digits[d] < q) break;
      digits[d] = 0;
    }
  }
  res.exact = Rational(static_cast<long long>(res.failures), static_cast<long long>(res.total));
  res.bound = Rational(1) / Rational(bmp::pow(BigInt(q), static_cast<unsigned>(ell)));
  res.holds = res.exact <= res.bound;
  return res;
}

}  // namespace spfq
