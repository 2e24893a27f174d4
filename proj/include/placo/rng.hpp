#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace placo {

// splitmix64 stream. All experiment randomness flows through streams derived
// from (seed, scope, ids) so replays are bit-identical regardless of platform
// or standard-library RNG internals.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64();
  double next_unit();                       // [0, 1)
  double next_unit_open();                  // (0, 1)
  double next_open(double lo, double hi);   // (lo, hi)
  std::size_t next_below(std::size_t n);    // [0, n)

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_str(std::string_view s);

// Same (seed, scope, a, b) -> same stream; distinct tuples give independent streams.
Rng derive_rng(std::uint64_t seed, std::string_view scope, std::uint64_t a = 0,
               std::uint64_t b = 0);

}  // namespace placo
