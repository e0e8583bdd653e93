#include "spfq/preconditioner.hpp"

#include "spfq/error.hpp"

namespace spfq {

namespace bmp = boost::multiprecision;

const char* path_name(PlanPath p) {
  switch (p) {
    case PlanPath::sparse: return "sparse";
    case PlanPath::all_dense: return "all_dense";
    case PlanPath::large_field: return "large_field";
  }
  return "?";
}

std::size_t PreconditionPlan::sparse_rows() const {
  return sparse_pattern ? static_cast<std::size_t>(k) : 0;
}

std::size_t PreconditionPlan::dense_rows() const {
  if (sparse_pattern) return static_cast<std::size_t>(params.c2 + ell);
  return n - m + static_cast<std::size_t>(ell);
}

namespace {

// Decides the sparse pattern for (params, n, m); fills k, z and zero_cut.
bool sparse_ok(PreconditionPlan& p) {
  p.k = static_cast<long long>(p.n) - static_cast<long long>(p.m) - p.params.c2;
  if (p.k <= 0 || p.n < 2) return false;
  const Real c3_ln_n = to_real(p.params.c3) * bmp::log(real_from_int(static_cast<long long>(p.n)));
  if (!(real_from_int(p.k) > c3_ln_n) || p.k < p.params.k_min) return false;
  const Real z = 1 - c3_ln_n / p.k;
  p.z = to_double(z);
  const Real cut = bmp::floor(z * bmp::pow(Real(2), 64));
  p.zero_cut = cut >= bmp::pow(Real(2), 64) ? ~0ULL : cut.convert_to<std::uint64_t>();
  return true;
}

}  // namespace

PreconditionPlan plan(std::uint64_t q, std::size_t n, std::size_t m, const Rational& epsilon) {
  if (n < 1) throw Error(Errc::BadShape, "n must be at least 1");
  if (m > n) throw Error(Errc::BadShape, "m = " + std::to_string(m) + " exceeds n = " + std::to_string(n));
  if (n > (1ULL << 31)) throw Error(Errc::BadShape, "n is too large");
  PreconditionPlan p;
  p.q = q;
  p.n = n;
  p.m = m;
  p.sample_set_size = q;
  const unsigned __int128 n2 = static_cast<unsigned __int128>(n) * n;
  if (static_cast<unsigned __int128>(q) > n2) {
    if (!prime_power(q)) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
    if (n >= 7) {
      p.path = PlanPath::large_field;
      p.effective_q_hat = largest_prime_power_at_most(static_cast<std::uint64_t>(n2));
      p.params = derive_params(p.effective_q_hat, epsilon);
      p.ell = 0;
      p.sparse_pattern = sparse_ok(p);
      if (!p.sparse_pattern) p.z = 0;
      return p;
    }
    p.path = PlanPath::all_dense;
    p.effective_q_hat = q;
    p.params = derive_params(q, epsilon);
    p.ell = 0;
    p.k = static_cast<long long>(n) - static_cast<long long>(m) - p.params.c2;
    p.schwartz_zippel_bound = static_cast<double>(n) / static_cast<double>(q);
    return p;
  }
  p.effective_q_hat = q;
  p.params = derive_params(q, epsilon);
  p.ell = p.params.ell;
  if (sparse_ok(p)) {
    p.path = PlanPath::sparse;
    p.sparse_pattern = true;
  } else {
    p.path = PlanPath::all_dense;
    p.z = 0;
    p.zero_cut = 0;
  }
  return p;
}

SparseRow gen_sparse_row(const PreconditionPlan& plan, Rng& rng) {
  if (!plan.sparse_pattern) throw Error(Errc::WrongPath, std::string("plan path is ") + path_name(plan.path));
  SparseRow row;
  for (std::size_t j = 0; j < plan.n; ++j) {
    if (rng.next() < plan.zero_cut) continue;
    const Element v = rng.below(plan.q);
    if (v != 0) row.push_back({static_cast<std::uint32_t>(j), v});
  }
  return row;
}

SparseRow gen_dense_row(std::uint64_t q, std::size_t n, Rng& rng) {
  SparseRow row;
  for (std::size_t j = 0; j < n; ++j) {
    const Element v = rng.below(q);
    if (v != 0) row.push_back({static_cast<std::uint32_t>(j), v});
  }
  return row;
}

GeneratedRows generate(const PreconditionPlan& plan, std::uint64_t seed) {
  return generate(plan, seed, Field::of_order(plan.q));
}

GeneratedRows generate(const PreconditionPlan& plan, std::uint64_t seed, const Field& field) {
  if (field.q() != plan.q) throw Error(Errc::FieldMismatch, "field order differs from the plan");
  const Rng master = Rng::stream(seed, "precondition");
  std::vector<SparseRow> rows;
  std::size_t index = 0;
  for (; index < plan.sparse_rows(); ++index) {
    Rng rng = master.child(index);
    rows.push_back(gen_sparse_row(plan, rng));
  }
  for (; index < plan.total_rows(); ++index) {
    Rng rng = master.child(index);
    rows.push_back(gen_dense_row(plan.q, plan.n, rng));
  }
  std::vector<std::size_t> weights;
  weights.reserve(rows.size());
  for (const auto& r : rows) weights.push_back(r.size());
  return {SparseMatrix::from_rows(field, plan.n, std::move(rows)), std::move(weights), seed, plan};
}

Preconditioned precondition(const SparseMatrix& A, const Rational& epsilon, std::uint64_t seed, bool check_rank) {
  const std::size_t m = A.rows(), n = A.cols();
  if (n == 0 || m > n)
    throw Error(Errc::BadShape, "input is " + std::to_string(m) + "x" + std::to_string(n) + "; need 0 <= m <= n, n >= 1");
  if (check_rank) {
    const std::size_t r = matrix_rank(A);
    if (r != m)
      throw Error(Errc::RankDeficientInput, "input has rank " + std::to_string(r) + " but " + std::to_string(m) + " rows");
  }
  const PreconditionPlan p = plan(A.field().q(), n, m, epsilon);
  GeneratedRows g = generate(p, seed, A.field());
  SparseMatrix B = matrix_stack(A, g.rows);
  return {std::move(B), std::move(g)};
}

}  // namespace spfq
