#include "spfq/rng.hpp"

namespace spfq {

namespace {

std::uint64_t hash_label(std::string_view label) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::string_view label) {
  return Rng(splitmix64(splitmix64(seed) ^ hash_label(label)));
}

Rng Rng::child(std::uint64_t index) const {
  return Rng(splitmix64(key_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

Rng Rng::child(std::string_view label) const {
  return Rng(splitmix64(key_ ^ hash_label(label)));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
  // Lemire's multiply-shift with rejection of the short final interval.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace spfq
