#include "placo/rng.hpp"

namespace placo {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_unit_open() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double Rng::next_open(double lo, double hi) {
  // rejection guards against rounding onto an endpoint
  double v;
  do {
    v = lo + (hi - lo) * next_unit_open();
  } while (!(v > lo && v < hi));
  return v;
}

std::size_t Rng::next_below(std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng derive_rng(std::uint64_t seed, std::string_view scope, std::uint64_t a,
               std::uint64_t b) {
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ hash_str(scope));
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return Rng(h);
}

}  // namespace placo
