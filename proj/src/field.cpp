#include "spfq/field.hpp"

#include <cmath>
#include <sstream>

namespace spfq {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (k) {
    if (k & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    k >>= 1;
  }
  return r;
}

// Checked integer power; nullopt on overflow past limit.
std::optional<std::uint64_t> ipow(std::uint64_t b, unsigned e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > limit / b) return std::nullopt;
    r *= b;
  }
  return r;
}

Poly to_digits(std::uint64_t v, std::uint64_t p, unsigned e) {
  Poly d(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

std::uint64_t from_digits(const Poly& d, std::uint64_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// a mod f over GF(p); f monic. Returns digits of length deg(f).
Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  const std::size_t df = f.size() - 1;
  for (std::size_t i = a.size(); i-- > df;) {
    const std::uint64_t c = a[i] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= df; ++j) {
      const std::size_t idx = i - df + j;
      a[idx] = (a[idx] + (p - c) * f[j]) % p;
    }
  }
  a.resize(df, 0);
  return a;
}

bool poly_is_zero(const Poly& a) {
  for (auto c : a)
    if (c) return false;
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  if (is_prime(n)) return std::make_pair(n, 1u);
  for (unsigned e = 2; e < 64; ++e) {
    auto r = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<long double>(n), 1.0L / e)));
    for (std::uint64_t c = (r > 1 ? r - 1 : 1); c <= r + 1; ++c) {
      auto pw = ipow(c, e, n);
      if (pw && *pw == n && is_prime(c)) return std::make_pair(c, e);
    }
    if (r < 2) break;
  }
  return std::nullopt;
}

std::uint64_t largest_prime_power_at_most(std::uint64_t n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "no prime power below 2");
  for (std::uint64_t v = n;; --v)
    if (prime_power(v)) return v;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
  if (f.size() < 2 || f.back() != 1) return false;
  const std::size_t d = f.size() - 1;
  if (d == 1) return true;
  for (std::size_t k = 1; k <= d / 2; ++k) {
    auto count = ipow(p, static_cast<unsigned>(k), ~0ULL);
    if (!count) throw Error(Errc::FieldTooLarge, "irreducibility search too large");
    for (std::uint64_t v = 0; v < *count; ++v) {
      Poly g = to_digits(v, p, static_cast<unsigned>(k));
      g.push_back(1);
      if (poly_is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

struct Field::Impl {
  enum class Kind { prime, binary_ext, odd_ext };

  std::uint64_t p = 0;
  unsigned e = 0;
  std::uint64_t q = 0;
  Poly modulus;
  Kind kind = Kind::prime;
  bool tables = false;
  Element gen = 0;
  std::vector<std::uint32_t> log;
  std::vector<std::uint32_t> exp;      // length 2(q-1), so exp[i+j] needs no reduction
  std::vector<std::uint16_t> add_tab;  // odd extension fields with q <= 256
  std::vector<std::int32_t> zech;      // odd extension fields with q > 256; -1 encodes 1+g^d = 0

  Element add_digits(Element a, Element b) const {
    Element r = 0, scale = 1;
    for (unsigned i = 0; i < e; ++i) {
      r += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return r;
  }

  Element mul_poly(Element a, Element b) const {
    const Poly da = to_digits(a, p, e), db = to_digits(b, p, e);
    Poly prod(2 * e - 1, 0);
    for (unsigned i = 0; i < e; ++i)
      for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    return from_digits(poly_mod(prod, modulus, p), p);
  }

  Element mul_direct(Element a, Element b) const {
    return kind == Kind::prime ? mulmod(a, b, p) : mul_poly(a, b);
  }

  void build_tables() {
    const std::uint64_t n = q - 1;
    // smallest generator: an element whose powers cycle with period q-1
    for (Element g = (q == 2 ? 1 : 2); g < q; ++g) {
      std::uint64_t order = 1;
      Element x = g;
      while (x != 1) {
        x = mul_direct(x, g);
        ++order;
        if (order > n || x == 0) break;
      }
      if (x == 1 && order == n) {
        gen = g;
        break;
      }
    }
    if (gen == 0) throw Error(Errc::ReducibleModulus, "no element of order q-1; modulus is not irreducible");
    log.assign(q, 0);
    exp.assign(2 * n, 0);
    Element x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      exp[i] = static_cast<std::uint32_t>(x);
      exp[i + n] = static_cast<std::uint32_t>(x);
      log[x] = static_cast<std::uint32_t>(i);
      x = mul_direct(x, gen);
    }
    tables = true;
    if (kind != Kind::odd_ext) return;
    if (q <= 256) {
      add_tab.resize(q * q);
      for (Element a = 0; a < q; ++a)
        for (Element b = 0; b < q; ++b) add_tab[a * q + b] = static_cast<std::uint16_t>(add_digits(a, b));
    } else {
      zech.resize(n);
      for (std::uint64_t d = 0; d < n; ++d) {
        const Element s = add_digits(1, exp[d]);
        zech[d] = s == 0 ? -1 : static_cast<std::int32_t>(log[s]);
      }
    }
  }
};

Field Field::make(std::uint64_t p, unsigned e, std::optional<Poly> modulus) {
  if (e == 0) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->e = e;
  if (e == 1) {
    if (p >= (1ULL << 63)) throw Error(Errc::FieldTooLarge, "prime exceeds 2^63");
    impl->q = p;
    impl->kind = Impl::Kind::prime;
    impl->modulus = {0, 1};
    if (modulus && (modulus->size() != 2 || modulus->back() != 1))
      throw Error(Errc::InvalidArgument, "modulus must be monic of degree 1");
  } else {
    auto q = ipow(p, e, kTableLimit);
    if (!q) throw Error(Errc::FieldTooLarge, "extension fields are limited to order 2^16");
    impl->q = *q;
    impl->kind = p == 2 ? Impl::Kind::binary_ext : Impl::Kind::odd_ext;
    if (modulus) {
      if (modulus->size() != e + 1 || modulus->back() != 1)
        throw Error(Errc::InvalidArgument, "modulus must be monic of degree " + std::to_string(e));
      for (auto c : *modulus)
        if (c >= p) throw Error(Errc::InvalidArgument, "modulus coefficient out of range");
      if (!is_irreducible(*modulus, p)) throw Error(Errc::ReducibleModulus, "modulus is reducible");
      impl->modulus = *modulus;
    } else {
      // least monic irreducible, ordered by the encoding of its lower coefficients
      const std::uint64_t count = *q;
      for (std::uint64_t v = 0; v < count; ++v) {
        Poly f = to_digits(v, p, e);
        f.push_back(1);
        if (is_irreducible(f, p)) {
          impl->modulus = std::move(f);
          break;
        }
      }
    }
  }
  if (impl->q <= kTableLimit) impl->build_tables();
  return Field(std::move(impl));
}

Field Field::of_order(std::uint64_t q) {
  auto pe = prime_power(q);
  if (!pe) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
  return make(pe->first, pe->second);
}

std::uint64_t Field::p() const { return impl_->p; }
unsigned Field::e() const { return impl_->e; }
std::uint64_t Field::q() const { return impl_->q; }
const Poly& Field::modulus() const { return impl_->modulus; }
bool Field::is_prime_field() const { return impl_->e == 1; }
bool Field::has_tables() const { return impl_->tables; }
Element Field::generator() const { return impl_->gen; }
std::uint32_t Field::log(Element a) const { return impl_->log[a]; }
Element Field::exp(std::uint64_t i) const { return impl_->exp[i % (impl_->q - 1)]; }

Element Field::add(Element a, Element b) const {
  const Impl& f = *impl_;
  switch (f.kind) {
    case Impl::Kind::prime: {
      const Element s = a + b;
      return s >= f.p ? s - f.p : s;
    }
    case Impl::Kind::binary_ext:
      return a ^ b;
    case Impl::Kind::odd_ext:
      if (!f.add_tab.empty()) return f.add_tab[a * f.q + b];
      if (a == 0) return b;
      if (b == 0) return a;
      {
        const std::uint64_t n = f.q - 1;
        const std::uint64_t la = f.log[a];
        const std::uint64_t d = (f.log[b] + n - la) % n;
        const std::int32_t z = f.zech[d];
        return z < 0 ? 0 : f.exp[la + static_cast<std::uint64_t>(z)];
      }
  }
  return 0;
}

Element Field::neg(Element a) const {
  const Impl& f = *impl_;
  if (a == 0) return 0;
  switch (f.kind) {
    case Impl::Kind::prime:
      return f.p - a;
    case Impl::Kind::binary_ext:
      return a;
    case Impl::Kind::odd_ext:
      return f.exp[f.log[a] + (f.q - 1) / 2];
  }
  return 0;
}

Element Field::sub(Element a, Element b) const { return add(a, neg(b)); }

Element Field::mul(Element a, Element b) const {
  const Impl& f = *impl_;
  if (f.kind == Impl::Kind::prime) {
    if (f.p <= (1ULL << 32)) return a * b % f.p;
    return mulmod(a, b, f.p);
  }
  if (a == 0 || b == 0) return 0;
  return f.exp[f.log[a] + f.log[b]];
}

Element Field::inv(Element a) const {
  const Impl& f = *impl_;
  if (a == 0) throw Error(Errc::ZeroInverse, "inverse of zero");
  if (f.tables) return f.exp[(f.q - 1 - f.log[a]) % (f.q - 1)];
  return powmod(a, f.p - 2, f.p);
}

Element Field::pow(Element a, std::uint64_t k) const {
  Element r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

std::string Field::describe() const {
  std::ostringstream os;
  if (e() == 1) {
    os << "GF(" << p() << ")";
    return os.str();
  }
  os << "GF(" << p() << "^" << e() << ") mod ";
  bool first = true;
  for (std::size_t i = modulus().size(); i-- > 0;) {
    const auto c = modulus()[i];
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

bool operator==(const Field& a, const Field& b) {
  if (a.impl_ == b.impl_) return true;
  return a.p() == b.p() && a.e() == b.e() && a.modulus() == b.modulus();
}

Element sample(const Field& f, Rng& rng, SampleMode mode, std::span<const Element> subset) {
  switch (mode) {
    case SampleMode::uniform:
      return rng.below(f.q());
    case SampleMode::uniform_nonzero:
      return 1 + rng.below(f.q() - 1);
    case SampleMode::subset:
      if (subset.empty()) throw Error(Errc::EmptySubset, "sample set is empty");
      for (auto v : subset)
        if (v >= f.q()) throw Error(Errc::ValueOutOfRange, "subset element outside the field");
      return subset[rng.below(subset.size())];
  }
  return 0;
}

}  // namespace spfq
