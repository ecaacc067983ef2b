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

// Circulant matrices R over Z_p with R * R^T = w * I, w != 0 — the family
// of inner transformations that turns one key into an indexed key set. A
// first row qualifies exactly when all of its circular autocorrelations at
// nonzero lags vanish and the lag-0 value (the weight w) is nonzero.

#ifndef KEYSET_RFAMILY_HPP
#define KEYSET_RFAMILY_HPP

#include <cstdint>
#include <vector>

#include "modring.hpp"

namespace keyset {

// A verified family member: first row plus its weight (sum of squared
// entries mod p). Construct through `verified` so the orthogonality
// invariant holds by construction.
struct CirculantSpec {
  VecZ first_row;
  Residue weight;

  static CirculantSpec verified(VecZ first_row);
  static CirculantSpec identity(std::uint32_t size, const Modulus& p);
  bool is_identity() const { return first_row.is_unit(); }
};

// One root of the 3x3 orthogonality system: first row (1, a, b) with
// a + b + ab = 0 (mod p) and w = 1 + a^2 + b^2.
struct SolutionRow {
  Residue a;
  Residue b;
  Residue w;
};

// The m x m circulant whose row k is `first_row` rotated right k - 1 times.
MatZ circulant(const VecZ& first_row);

// Circular autocorrelation C(k) = sum_i a_i * a_{i+k} mod p, with periodic
// indexing. C(0) is the weight.
Residue autocorrelation(const VecZ& first_row, std::uint32_t k);

// Returns the weight w with circulant(row) * circulant(row)^T = w * I.
// KS_ERR_NOT_ORTHOGONAL (detail = first failing lag) when some C(k) != 0;
// KS_ERR_ZERO_WEIGHT when C(0) == 0.
Residue verify_orthogonal(const VecZ& first_row);

// Solves the 3x3 system for a given a: b = -a / (a + 1) mod p.
// KS_ERR_NO_SOLUTION when a + 1 == 0 mod p. The returned w may be 0; callers
// that need an invertible weight must filter (see enumerate3).
SolutionRow solve3(const Residue& a);

// All 3x3 solutions with leading entry 1 and nonzero weight, ordered by a
// over 0..p-2 (a = 0 is the identity row). Small moduli only.
std::vector<SolutionRow> enumerate3(const Modulus& p);

// The scalar orbit of a base solution: rows t * (1, a, b) for t = 1..p-1,
// each of weight t^2 * w; zero-weight rows are dropped. Small moduli only.
std::vector<CirculantSpec> scalar_family(const SolutionRow& base,
                                         const Modulus& p);

// Deterministic family of `count` verified rows for any row length, starting
// with the identity row: the closed form above for length 3, bounded
// exhaustive search otherwise, then scalar multiples of what was found.
// KS_ERR_NO_SOLUTION when Z_p cannot supply enough distinct rows.
std::vector<CirculantSpec> default_family(const Modulus& p,
                                          std::uint32_t row_len,
                                          std::uint32_t count);

}  // namespace keyset

#endif  // KEYSET_RFAMILY_HPP
