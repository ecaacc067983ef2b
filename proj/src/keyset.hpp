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

// Expansion of a single base key into an indexed key set. Index k applies
// the inner transformation X -> X * R_k, Y -> R_k^T * Y, which multiplies
// every pairwise key and every scale by the row's weight w_k. Index 1 is
// reserved for the identity row, so entry 1 is the untransformed base key.

#ifndef KEYSET_KEYSET_KS_HPP
#define KEYSET_KEYSET_KS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "blom.hpp"
#include "rfamily.hpp"

namespace keyset {

struct KeySetEntry {
  std::uint32_t index;  // family index, 1-based; 1 = original
  VecZ secret;
  VecZ public_id;
  Residue scale;  // inner_product(secret, public_id) = w_index * K_ii
};

// One user's complete key set: entry k derives from family row k. The public
// family itself stays with the trusted-authority material; entries are
// self-contained for protocol use.
struct UserKeySet {
  std::uint32_t user;
  Modulus p;
  std::vector<KeySetEntry> entries;  // entries[k - 1].index == k

  std::uint32_t size() const {
    return static_cast<std::uint32_t>(entries.size());
  }
  bool has_index(std::uint32_t family_index) const {
    return family_index >= 1 && family_index <= entries.size();
  }
  // KS_ERR_UNKNOWN_INDEX (detail = index) when absent.
  const KeySetEntry& entry(std::uint32_t family_index) const;
  Residue scale_at(std::uint32_t family_index) const {
    return entry(family_index).scale;
  }
};

// X -> X * R, Y -> R^T * Y; the implied key matrix becomes w * K.
std::pair<MatZ, MatZ> inner_transform(const MatZ& x, const MatZ& y,
                                      const CirculantSpec& r);

// Same, taking a raw matrix: it must be circulant and orthogonal
// (KS_ERR_NOT_ORTHOGONAL otherwise).
std::pair<MatZ, MatZ> inner_transform(const MatZ& x, const MatZ& y,
                                      const MatZ& r);

// X -> U * X, Y -> Y * U^T for invertible U; the key matrix becomes
// U * K * U^T, which stays symmetric for every invertible U.
// KS_ERR_SINGULAR when U has no inverse mod p.
std::pair<MatZ, MatZ> outer_transform(const MatZ& x, const MatZ& y,
                                      const MatZ& u);

// Builds user `user`'s key set over `family`. family[0] must be the identity
// row. Entry k holds row `user` of X * R_k, column `user` of R_k^T * Y, and
// the scale w_k * K_ii; a zero scale aborts with KS_ERR_ZERO_SCALE
// (detail = k). Pure function of (bundle, user, family).
UserKeySet expand_keyset(const TaBundle& bundle, std::uint32_t user,
                         const std::vector<CirculantSpec>& family);

}  // namespace keyset

#endif  // KEYSET_KEYSET_KS_HPP
