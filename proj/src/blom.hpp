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

// Trusted-authority side of the base scheme: generation and validation of
// the matrices X (n x m), Y (m x n) and K = X * Y (n x n, symmetric), and
// extraction of per-user secrets and identifiers. User indices are 1-based
// throughout.

#ifndef KEYSET_BLOM_HPP
#define KEYSET_BLOM_HPP

#include <cstdint>

#include "modring.hpp"

namespace keyset {

// Secret material held by the trusted authority. Valid instances satisfy:
// k == x * y (mod p), k symmetric, and every diagonal entry k_ii != 0 (the
// randomized protocol divides by those scales).
struct TaBundle {
  Modulus p;
  std::uint32_t users;
  std::uint32_t key_len;
  MatZ x;  // n x m; row i is user i's secret key
  MatZ y;  // m x n; column i is user i's public identifier
  MatZ k;  // n x n
};

struct SecretKey {
  std::uint32_t user;
  VecZ entries;
};

struct PublicId {
  std::uint32_t user;
  VecZ entries;
};

// Draws Y with pairwise-distinct columns and a random symmetric D, and sets
// X = Y^T * D so that K = Y^T * D * Y is symmetric by construction. Retries
// with a re-derived seed (at most 64 attempts) until the whole diagonal is
// nonzero; KS_ERR_DEGENERATE when the budget is exhausted. Deterministic for
// a fixed seed.
TaBundle ta_generate(const Modulus& p, std::uint32_t users,
                     std::uint32_t key_len, std::uint64_t seed);

// Accepts externally produced matrices after recomputing K = X * Y and
// validating symmetry (KS_ERR_NOT_SYMMETRIC) and the nonzero diagonal
// (KS_ERR_ZERO_SCALE, detail = offending user).
TaBundle ta_load(const MatZ& x, const MatZ& y);

SecretKey user_secret(const TaBundle& bundle, std::uint32_t user);
PublicId user_id(const TaBundle& bundle, std::uint32_t user);

// K_ij as user i computes it: the inner product of i's secret row with j's
// identifier column, mod p.
Residue shared_key(const SecretKey& secret, const PublicId& id);

// The scale S of a user: the key it shares with itself, K_ii.
Residue key_scale(const TaBundle& bundle, std::uint32_t user);

}  // namespace keyset

#endif  // KEYSET_BLOM_HPP
