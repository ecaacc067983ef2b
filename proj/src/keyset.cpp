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

#include "keyset.hpp"

#include <string>

namespace keyset {

namespace {

// Rank check by Gaussian elimination mod p (p prime, so every nonzero pivot
// is invertible).
bool is_invertible(const MatZ& u) {
  const std::size_t n = u.rows();
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = u.at(r, c);
  }
  const Modulus& m = u.modulus();
  const BigInt& p = m.value();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(a[pivot], a[col]);
    const BigInt inv = mod_inv(Residue(a[col][col], m)).value();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      BigInt factor = (a[r][col] * inv) % p;
      for (std::size_t c = col; c < n; ++c) {
        a[r][c] = ((a[r][c] - factor * a[col][c]) % p + p) % p;
      }
    }
  }
  return true;
}

}  // namespace

const KeySetEntry& UserKeySet::entry(std::uint32_t family_index) const {
  if (!has_index(family_index)) {
    fail(KS_ERR_UNKNOWN_INDEX,
         "key set of user " + std::to_string(user) + " has no index " +
             std::to_string(family_index),
         family_index);
  }
  return entries[family_index - 1];
}

std::pair<MatZ, MatZ> inner_transform(const MatZ& x, const MatZ& y,
                                      const CirculantSpec& r) {
  if (r.first_row.size() != x.cols() || r.first_row.size() != y.rows()) {
    fail(KS_ERR_DIMENSION_MISMATCH,
         "inner transformation row length " +
             std::to_string(r.first_row.size()) + " does not match key length");
  }
  MatZ rm = circulant(r.first_row);
  return {mat_mul(x, rm), mat_mul(mat_transpose(rm), y)};
}

std::pair<MatZ, MatZ> inner_transform(const MatZ& x, const MatZ& y,
                                      const MatZ& r) {
  if (r.rows() != r.cols()) {
    fail(KS_ERR_NOT_SQUARE, "inner transformation matrix must be square");
  }
  VecZ first_row = r.row(0);
  if (circulant(first_row) != r) {
    fail(KS_ERR_NOT_ORTHOGONAL, "matrix is not circulant");
  }
  Residue w = verify_orthogonal(first_row);
  return inner_transform(x, y, CirculantSpec{std::move(first_row), w});
}

std::pair<MatZ, MatZ> outer_transform(const MatZ& x, const MatZ& y,
                                      const MatZ& u) {
  if (u.rows() != u.cols()) {
    fail(KS_ERR_NOT_SQUARE, "outer transformation matrix must be square");
  }
  if (u.rows() != x.rows() || u.rows() != y.cols()) {
    fail(KS_ERR_DIMENSION_MISMATCH,
         "outer transformation size " + std::to_string(u.rows()) +
             " does not match user count");
  }
  if (!is_invertible(u)) {
    fail(KS_ERR_SINGULAR, "outer transformation matrix is singular mod p");
  }
  return {mat_mul(u, x), mat_mul(y, mat_transpose(u))};
}

UserKeySet expand_keyset(const TaBundle& bundle, std::uint32_t user,
                         const std::vector<CirculantSpec>& family) {
  if (user < 1 || user > bundle.users) {
    fail(KS_ERR_INDEX_OUT_OF_RANGE,
         "user index " + std::to_string(user) + " not in 1.." +
             std::to_string(bundle.users),
         user);
  }
  if (family.empty() || !family.front().is_identity()) {
    fail(KS_ERR_BAD_PARAMETER, "family index 1 must be the identity row");
  }

  const VecZ secret_base = bundle.x.row(user - 1);
  const VecZ id_base = bundle.y.col(user - 1);
  const std::size_t m = bundle.key_len;

  UserKeySet out{user, bundle.p, {}};
  out.entries.reserve(family.size());
  std::uint32_t index = 0;
  for (const CirculantSpec& spec : family) {
    ++index;
    if (spec.first_row.size() != m) {
      fail(KS_ERR_DIMENSION_MISMATCH,
           "family row " + std::to_string(index) + " has length " +
               std::to_string(spec.first_row.size()) + ", key length is " +
               std::to_string(m));
    }
    verify_orthogonal(spec.first_row);
    MatZ r = circulant(spec.first_row);

    // Only this user's slices are needed: secret = x_i * R, id = R^T * y_i.
    std::vector<BigInt> secret(m), id(m);
    for (std::size_t j = 0; j < m; ++j) {
      BigInt s = 0, t = 0;
      for (std::size_t k = 0; k < m; ++k) {
        s += secret_base.at(k) * r.at(k, j);
        t += r.at(k, j) * id_base.at(k);
      }
      secret[j] = std::move(s);
      id[j] = std::move(t);
    }
    VecZ secret_vec(std::move(secret), bundle.p);
    VecZ id_vec(std::move(id), bundle.p);
    Residue scale = inner_product(secret_vec, id_vec);
    if (scale.is_zero()) {
      fail(KS_ERR_ZERO_SCALE,
           "user " + std::to_string(user) + " has scale 0 at index " +
               std::to_string(index),
           index);
    }
    out.entries.push_back(KeySetEntry{index, std::move(secret_vec),
                                      std::move(id_vec), std::move(scale)});
  }
  return out;
}

}  // namespace keyset
