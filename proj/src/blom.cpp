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

#include "blom.hpp"

#include <set>

#include "rng.hpp"

namespace keyset {

namespace {

constexpr int kMaxAttempts = 64;
constexpr int kMaxColumnRedraws = 4096;

void check_user_index(const TaBundle& bundle, std::uint32_t user) {
  if (user < 1 || user > bundle.users) {
    fail(KS_ERR_INDEX_OUT_OF_RANGE,
         "user index " + std::to_string(user) + " not in 1.." +
             std::to_string(bundle.users),
         user);
  }
}

// True when the identifier space Z_p^m cannot hold `users` distinct columns.
bool too_many_users(const BigInt& p, std::uint32_t users,
                    std::uint32_t key_len) {
  BigInt capacity = 1;
  for (std::uint32_t i = 0; i < key_len; ++i) {
    capacity *= p;
    if (capacity > users) return false;
  }
  return capacity < users;
}

TaBundle assemble(const Modulus& p, const MatZ& x, const MatZ& y) {
  MatZ k = mat_mul(x, y);
  // Diagonal first: a zeroed identifier names the broken user, which is a
  // more actionable report than the symmetry failure it usually implies.
  for (std::size_t i = 0; i < k.rows(); ++i) {
    if (k.at(i, i) == 0) {
      fail(KS_ERR_ZERO_SCALE,
           "user " + std::to_string(i + 1) + " has key scale 0", i + 1);
    }
  }
  if (!is_symmetric(k)) {
    fail(KS_ERR_NOT_SYMMETRIC, "X * Y is not symmetric mod p");
  }
  return TaBundle{p, static_cast<std::uint32_t>(x.rows()),
                  static_cast<std::uint32_t>(x.cols()), x, y, k};
}

}  // namespace

TaBundle ta_generate(const Modulus& p, std::uint32_t users,
                     std::uint32_t key_len, std::uint64_t seed) {
  if (users < 2) fail(KS_ERR_BAD_PARAMETER, "need at least 2 users");
  if (key_len < 1) fail(KS_ERR_BAD_PARAMETER, "key length must be >= 1");
  if (too_many_users(p.value(), users, key_len)) {
    fail(KS_ERR_DEGENERATE,
         "identifier space too small for " + std::to_string(users) + " users");
  }

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 gen(derive_seed(seed, 0x7461, attempt));

    // Y column by column, redrawing duplicates.
    MatZ y(key_len, users, p);
    std::set<std::vector<BigInt>> seen;
    bool columns_ok = true;
    for (std::uint32_t c = 0; c < users && columns_ok; ++c) {
      int redraws = 0;
      for (;;) {
        std::vector<BigInt> column;
        column.reserve(key_len);
        for (std::uint32_t r = 0; r < key_len; ++r) {
          column.push_back(random_below(gen, p.value()));
        }
        if (seen.insert(column).second) {
          for (std::uint32_t r = 0; r < key_len; ++r) y.set(r, c, column[r]);
          break;
        }
        if (++redraws > kMaxColumnRedraws) {
          columns_ok = false;
          break;
        }
      }
    }
    if (!columns_ok) continue;

    // Symmetric D from its upper triangle.
    MatZ d(key_len, key_len, p);
    for (std::uint32_t r = 0; r < key_len; ++r) {
      for (std::uint32_t c = r; c < key_len; ++c) {
        BigInt v = random_below(gen, p.value());
        d.set(r, c, v);
        d.set(c, r, v);
      }
    }

    MatZ x = mat_mul(mat_transpose(y), d);
    MatZ k = mat_mul(x, y);
    bool diagonal_ok = true;
    for (std::size_t i = 0; i < k.rows(); ++i) {
      if (k.at(i, i) == 0) {
        diagonal_ok = false;
        break;
      }
    }
    if (!diagonal_ok) continue;

    return assemble(p, x, y);
  }
  fail(KS_ERR_DEGENERATE,
       "exhausted " + std::to_string(kMaxAttempts) +
           " attempts without a nonzero key-scale diagonal");
}

TaBundle ta_load(const MatZ& x, const MatZ& y) {
  if (x.modulus() != y.modulus()) {
    fail(KS_ERR_MODULUS_MISMATCH, "X and Y use different moduli");
  }
  if (x.rows() != y.cols() || x.cols() != y.rows()) {
    fail(KS_ERR_DIMENSION_MISMATCH,
         "X must be n x m and Y m x n; got " + std::to_string(x.rows()) + "x" +
             std::to_string(x.cols()) + " and " + std::to_string(y.rows()) +
             "x" + std::to_string(y.cols()));
  }
  if (x.rows() < 2) fail(KS_ERR_BAD_PARAMETER, "need at least 2 users");
  return assemble(x.modulus(), x, y);
}

SecretKey user_secret(const TaBundle& bundle, std::uint32_t user) {
  check_user_index(bundle, user);
  return SecretKey{user, bundle.x.row(user - 1)};
}

PublicId user_id(const TaBundle& bundle, std::uint32_t user) {
  check_user_index(bundle, user);
  return PublicId{user, bundle.y.col(user - 1)};
}

Residue shared_key(const SecretKey& secret, const PublicId& id) {
  return inner_product(secret.entries, id.entries);
}

Residue key_scale(const TaBundle& bundle, std::uint32_t user) {
  check_user_index(bundle, user);
  return Residue(bundle.k.at(user - 1, user - 1), bundle.p);
}

}  // namespace keyset
