#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace spfq {

// Deterministic, splittable random stream. The engine is std::mt19937_64,
// whose output sequence is fixed by the standard; all derived quantities are
// computed here rather than through <random> distributions, which are not
// portable across standard libraries.
class Rng {
 public:
  static Rng stream(std::uint64_t seed, std::string_view label);

  // Independent child stream, e.g. one per generated row.
  Rng child(std::uint64_t index) const;
  Rng child(std::string_view label) const;

  std::uint64_t key() const { return key_; }

  std::uint64_t next() { return eng_(); }

  // Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) built from the top 53 bits of one raw draw.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  explicit Rng(std::uint64_t key) : key_(key), eng_(key) {}

  std::uint64_t key_;
  std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace spfq
