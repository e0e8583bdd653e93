#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spfq/error.hpp"
#include "spfq/rng.hpp"

namespace spfq {

// Element of GF(p^e): the base-p digits of the value, least significant
// first, are the coefficients of the residue polynomial.
using Element = std::uint64_t;

// Largest order for which log/exp tables (and extension fields) are built.
inline constexpr std::uint64_t kTableLimit = 1u << 16;

bool is_prime(std::uint64_t n);

// (p, e) with n = p^e, or nullopt when n is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n);

// Largest prime power <= n (n >= 2).
std::uint64_t largest_prime_power_at_most(std::uint64_t n);

// Monic polynomial over GF(p), digit i = coefficient of x^i.
using Poly = std::vector<std::uint64_t>;

bool is_irreducible(const Poly& f, std::uint64_t p);

// Immutable handle to GF(p^e); cheap to copy, safe to share across threads.
class Field {
 public:
  // Prime fields may exceed kTableLimit (no tables, 128-bit products);
  // extension fields must satisfy p^e <= kTableLimit.
  static Field make(std::uint64_t p, unsigned e = 1, std::optional<Poly> modulus = std::nullopt);
  static Field of_order(std::uint64_t q);

  std::uint64_t p() const;
  unsigned e() const;
  std::uint64_t q() const;
  const Poly& modulus() const;
  bool is_prime_field() const;
  bool has_tables() const;

  // Generator used for the log/exp tables (requires has_tables()).
  Element generator() const;
  std::uint32_t log(Element a) const;  // a != 0
  Element exp(std::uint64_t i) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;  // throws ZeroInverse
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t k) const;

  bool contains(Element a) const { return a < q(); }
  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b);
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

  struct Impl;

 private:
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

enum class SampleMode { uniform, uniform_nonzero, subset };

// Unbiased draw from the field, its nonzero elements, or the given subset.
Element sample(const Field& f, Rng& rng, SampleMode mode, std::span<const Element> subset = {});

}  // namespace spfq
