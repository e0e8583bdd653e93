// Acceptance run: one PASS/FAIL line per criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spfq/analysis.hpp"
#include "spfq/experiments.hpp"
#include "spfq/field.hpp"
#include "spfq/matrix.hpp"
#include "spfq/params.hpp"
#include "spfq/preconditioner.hpp"

using namespace spfq;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kAc1Seconds = 1.0;
constexpr double kAc2Seconds = 30.0;
constexpr double kAc4Seconds = 60.0;
constexpr double kAc5Seconds = 300.0;
constexpr double kAc6Seconds = 60.0;
constexpr std::size_t kAc5Trials = 1000;
constexpr std::uint64_t kAc5Seed = 20240601;
constexpr double kAc5TargetRate = 0.9;
constexpr double kSigmas = 3.0;
constexpr std::size_t kAc6Subspaces = 200;
constexpr std::size_t kAc6RSamples = 41;
constexpr long long kAc6KMax = 100;
constexpr std::size_t kAc7RankInstances = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(SPFQ_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::cout << id << (ok ? " PASS " : " FAIL ") << detail << std::endl;
  if (!ok) ++failures;
}

template <class F>
void guarded(const char* id, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

void ac1() {
  const auto t0 = Clock::now();
  const Run r = run_cli("params --all --epsilon 0.1 --compare-paper");
  const double secs = seconds_since(t0);
  const json j = json::parse(r.out);
  bool ok = r.status == 0 && j["schema"] == "1" && j["rows"].size() == 16;
  for (const char* t : {"c4_beta0", "delta", "k", "c2_ell"}) ok = ok && j["tables"][t]["confirmed_rows"] == 16;
  const int summary = j["tables"]["summary"]["confirmed_rows"];
  ok = ok && summary >= 12;
  const std::set<std::uint64_t> allowed{3, 4, 7, 16};
  std::ostringstream diffs;
  for (const auto& row : j["rows"]) {
    for (const auto& d : row["discrepancies"]) {
      const long long pub = std::stoll(d["published"].get<std::string>());
      const long long der = std::stoll(d["derived"].get<std::string>());
      const std::uint64_t q = row["q"];
      ok = ok && d["table"] == "summary" && d["field"] == "upsilon" && std::llabs(pub - der) == 1 && allowed.count(q);
      diffs << " q=" << q << ":" << pub << "/" << der;
    }
  }
  ok = ok && secs < kAc1Seconds;
  std::ostringstream os;
  os << "table reproduction: summary " << summary << "/16, other tables 16/16, upsilon published/derived" << diffs.str()
     << ", " << std::fixed << std::setprecision(3) << secs << " s";
  report("AC1", ok, os.str());
}

void ac2() {
  const auto t0 = Clock::now();
  const Run r = run_cli("verify --all");
  const double secs = seconds_since(t0);
  const json j = json::parse(r.out);
  bool all_rows = true, f_dec = false, asym = false, neg = false;
  std::size_t rows = 0, checks = 0, flagged = 0;
  for (const auto& rep : j["reports"]) {
    const std::string name = rep["name"];
    all_rows = all_rows && rep["overall"].get<bool>();
    rows += name.rfind("row ", 0) == 0;
    f_dec = f_dec || name.rfind("f_decreasing q=16", 0) == 0;
    asym = asym || name == "asymptotic N=18 q=297";
    neg = neg || name.rfind("negative_control", 0) == 0;
    for (const auto& c : rep["checks"]) {
      ++checks;
      flagged += c["status"] == "flagged";
    }
  }
  const bool ok = r.status == 0 && j["overall"].get<bool>() && all_rows && rows == 16 && f_dec && asym && neg &&
                  secs < kAc2Seconds;
  std::ostringstream os;
  os << "certificate suite: " << rows << " rows, monotonicity " << (f_dec ? "yes" : "no") << ", asymptotic N=18 "
     << (asym ? "yes" : "no") << ", " << checks << " checks (" << flagged << " flagged), " << std::fixed
     << std::setprecision(2) << secs << " s";
  report("AC2", ok, os.str());
}

void ac3() {
  const GridResult g = grid_check_core(2, Rational(14), Rational(1, 7), kVerifyGridPoints);
  std::ostringstream os;
  os << "negative control q=2 c4=14 beta0=1/7: max gap " << std::scientific << std::setprecision(4) << g.max_gap
     << " at beta=" << g.argmax;
  report("AC3", g.max_gap > 0, os.str());
}

void ac4() {
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::uint64_t, long long>> cases{{2, 60}, {2, 100}, {3, 49}, {5, 71}, {8, 105}};
  bool ok = true;
  int n_cases = 0;
  double worst = 0;
  for (const auto& [q, k] : cases) {
    const PreconditionerParams p = derive_params(q, Rational(1, 10));
    for (long long m : {0LL, k / 2}) {
      const Rho0Sums s = rho0_bruteforce(q, k, m + k + p.c2, m, p.c4, p.beta0);
      ok = ok && s.lhs <= s.rhs;
      worst = std::max(worst, to_double(s.lhs / s.rhs));
      ++n_cases;
    }
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < kAc4Seconds;
  std::ostringstream os;
  os << "rho0 brute force: " << n_cases << " cases, max lhs/rhs " << std::scientific << std::setprecision(3) << worst
     << ", " << std::fixed << std::setprecision(2) << secs << " s";
  report("AC4", ok, os.str());
}

void ac5() {
  struct Config {
    std::uint64_t q;
    std::size_t n, m;
  };
  const std::vector<Config> configs{{2, 400, 50}, {3, 500, 100}, {9, 300, 100}};
  const auto t0 = Clock::now();
  const double floor = kAc5TargetRate - kSigmas * std::sqrt(kAc5TargetRate * (1 - kAc5TargetRate) / kAc5Trials);
  bool ok = true;
  std::ostringstream os;
  os << "monte carlo (" << kAc5Trials << " trials, rate floor " << std::fixed << std::setprecision(4) << floor << "):";
  for (const Config& c : configs) {
    const TrialStats s = run_trials(Field::of_order(c.q), c.n, c.m, Rational(1, 10), kAc5Trials, kAc5Seed);
    const double cap = s.weight_bound + kSigmas * s.se_added_nonzeros;
    const bool good = s.success_rate >= floor && s.mean_added_nonzeros <= cap;
    ok = ok && good;
    os << " q=" << c.q << " " << path_name(s.path) << " rate " << std::setprecision(3) << s.success_rate << " mean nnz "
       << std::setprecision(1) << s.mean_added_nonzeros << " <= " << cap << ";";
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < kAc5Seconds;
  os << " " << std::setprecision(1) << secs << " s";
  report("AC5", ok, os.str());
}

void ac6() {
  const auto t0 = Clock::now();
  const Rng master = Rng::stream(6, "acceptance-subspaces");
  std::size_t passed = 0;
  for (std::size_t s = 0; s < kAc6Subspaces; ++s) {
    Rng rng = master.child(s);
    const std::uint64_t q = 2 + rng.below(3);
    const std::size_t m = 1 + rng.below(10);
    const std::size_t n = m + rng.below(7);
    const SparseMatrix b = gen_rank_m(Field::of_order(q), m, n, std::nullopt, rng.next());
    passed += check_props_1_2(weight_enum(b), kAc6RSamples).overall();
  }
  const bool binom = check_binomial_bound(kAc6KMax).overall();
  const DenseLemmaResult d = exhaustive_dense_lemma(2, 2, 0);
  const bool dense = d.exact == Rational(10, 16) && d.total == 16;
  const double secs = seconds_since(t0);
  const bool ok = passed == kAc6Subspaces && binom && dense && secs < kAc6Seconds;
  std::ostringstream os;
  os << "enumeration oracles: subspaces " << passed << "/" << kAc6Subspaces << ", binomial k<=" << kAc6KMax << " "
     << (binom ? "ok" : "violated") << ", 2x2 over GF(2) singular " << d.failures << "/" << d.total << ", " << std::fixed
     << std::setprecision(2) << secs << " s";
  report("AC6", ok, os.str());
}

void ac7() {
  // Field axioms, every triple, every prime power up to 256.
  bool axioms = true;
  std::size_t fields = 0;
  for (std::uint64_t q = 2; q <= 256 && axioms; ++q) {
    if (!prime_power(q)) continue;
    ++fields;
    const Field f = Field::of_order(q);
    for (Element a = 0; a < q && axioms; ++a) {
      if (a && f.mul(a, f.inv(a)) != 1) axioms = false;
      if (f.pow(a, q) != a) axioms = false;
      for (Element b = 0; b < q; ++b) {
        const Element ab = f.mul(a, b);
        for (Element c = 0; c < q; ++c) {
          if (f.mul(a, f.add(b, c)) != f.add(ab, f.mul(a, c)) || f.mul(ab, c) != f.mul(a, f.mul(b, c))) {
            axioms = false;
            break;
          }
        }
      }
    }
  }

  // Rank under random row and column permutations.
  Rng rng = Rng::stream(7, "acceptance-rank");
  std::size_t invariant = 0;
  for (std::size_t t = 0; t < kAc7RankInstances; ++t) {
    const std::uint64_t q = std::vector<std::uint64_t>{2, 3, 4, 9, 101}[t % 5];
    const Field f = Field::of_order(q);
    const std::size_t r = 5 + rng.below(60), c = 5 + rng.below(60);
    std::vector<Element> d(r * c, 0);
    for (auto& v : d)
      if (rng.unit() < 0.1) v = sample(f, rng, SampleMode::uniform_nonzero);
    const SparseMatrix m = SparseMatrix::from_dense(f, r, c, d);
    std::vector<std::size_t> rp(r), cp(c);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    for (std::size_t i = r; i > 1; --i) std::swap(rp[i - 1], rp[rng.below(i)]);
    for (std::size_t i = c; i > 1; --i) std::swap(cp[i - 1], cp[rng.below(i)]);
    const std::size_t rk = matrix_rank(m);
    invariant += rk == matrix_rank(permute(m, rp, cp)) && rk == dense_rank_reference(m);
  }

  // SMS round trip.
  const Field f9 = Field::of_order(9);
  const SparseMatrix a = gen_rank_m(f9, 50, 80, 0.1, 3);
  const bool round_trip = read_sms(to_sms(a), f9) == a;

  // Byte-identical preconditioner output through the CLI.
  const fs::path dir = fs::temp_directory_path() / ("spfq_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "A.sms", std::ios::binary);
    out << to_sms(gen_rank_m(Field::of_order(2), 50, 400, std::nullopt, 11));
  }
  const std::string base = "precondition --q 2 --in " + (dir / "A.sms").string() + " --seed 7 --out ";
  const int s1 = run_cli(base + (dir / "B1.sms").string()).status;
  const int s2 = run_cli(base + (dir / "B2.sms").string()).status;
  const std::string b1 = slurp(dir / "B1.sms"), b2 = slurp(dir / "B2.sms");
  const bool identical = s1 == 0 && s2 == 0 && !b1.empty() && b1 == b2;
  fs::remove_all(dir);

  const bool ok = axioms && invariant == kAc7RankInstances && round_trip && identical;
  std::ostringstream os;
  os << "properties: field axioms over " << fields << " fields " << (axioms ? "ok" : "violated") << ", rank invariant "
     << invariant << "/" << kAc7RankInstances << ", SMS round trip " << (round_trip ? "ok" : "differs")
     << ", precondition bytes " << (identical ? "identical" : "differ");
  report("AC7", ok, os.str());
}

}  // namespace

int main() {
  apply_precision_env();
  guarded("AC1", ac1);
  guarded("AC2", ac2);
  guarded("AC3", ac3);
  guarded("AC4", ac4);
  guarded("AC5", ac5);
  guarded("AC6", ac6);
  guarded("AC7", ac7);
  return failures == 0 ? 0 : 1;
}
