/*
 * Copyright 2026 The Keyset Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Deterministic randomness helpers. Every consumer seeds a std::mt19937_64
// (fully specified by the standard, so outputs are portable) and derives
// sub-seeds with the splitmix64 chain below. The derivation rule is part of
// the reproducibility contract: replays must not change it.

#ifndef KEYSET_RNG_HPP
#define KEYSET_RNG_HPP

#include <cstdint>
#include <random>

#include "modring.hpp"

namespace keyset {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sub-seed = splitmix64 folded over (master, tag, a, b), in that order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ tag);
  s = splitmix64(s ^ a);
  return splitmix64(s ^ b);
}

// Uniform draw from [0, bound) by rejection over whole 64-bit words.
inline BigInt random_below(std::mt19937_64& gen, const BigInt& bound) {
  if (bound <= 0) fail(KS_ERR_BAD_PARAMETER, "random bound must be positive");
  if (bound == 1) return BigInt(0);
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t words = (bits + 63) / 64;
  const BigInt mask = (BigInt(1) << bits) - 1;
  for (;;) {
    BigInt v = 0;
    for (std::size_t i = 0; i < words; ++i) v = (v << 64) | gen();
    v &= mask;
    if (v < bound) return v;
  }
}

inline Residue random_residue(std::mt19937_64& gen, const Modulus& m) {
  return Residue(random_below(gen, m.value()), m);
}

}  // namespace keyset

#endif  // KEYSET_RNG_HPP
