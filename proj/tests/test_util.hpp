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

// Shared fixtures: the reference 5-user system over Z_11 (matrices X, Y, K),
// its six-row R family, both expanded key-set tables, and small helpers for
// asserting error codes.

#ifndef KEYSET_TESTS_TEST_UTIL_HPP
#define KEYSET_TESTS_TEST_UTIL_HPP

#include <vector>

#include "blom.hpp"
#include "keyset.hpp"
#include "rfamily.hpp"

namespace kt {

using keyset::BigInt;
using keyset::Error;
using keyset::MatZ;
using keyset::Modulus;
using keyset::Residue;
using keyset::VecZ;

// Runs `fn`, returns the thrown status code (KS_OK if nothing threw).
template <typename Fn>
ks_status code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return KS_OK;
}

// As above, also captures Error::detail().
template <typename Fn>
ks_status code_of(Fn&& fn, std::uint64_t& detail) {
  try {
    fn();
  } catch (const Error& e) {
    detail = e.detail();
    return e.code();
  }
  return KS_OK;
}

inline const Modulus& mod11() {
  static const Modulus p{BigInt(11)};
  return p;
}

// Largest prime below 2^64.
inline const Modulus& mod64() {
  static const Modulus p{BigInt("18446744073709551557")};
  return p;
}

inline MatZ example_x() {
  return MatZ::from_ints(
      {{9, 9, 6}, {1, 9, 2}, {1, 0, 0}, {4, 5, 2}, {0, 5, 0}}, mod11());
}

inline MatZ example_y() {
  return MatZ::from_ints(
      {{7, 10, 5, 1, 8}, {7, 2, 6, 0, 3}, {7, 7, 3, 4, 4}}, mod11());
}

inline MatZ example_k() {
  return MatZ::from_ints({{3, 7, 7, 0, 2},
                          {7, 9, 10, 9, 10},
                          {7, 10, 5, 1, 8},
                          {0, 9, 1, 1, 0},
                          {2, 10, 8, 0, 4}},
                         mod11());
}

inline keyset::TaBundle example_bundle() {
  return keyset::ta_load(example_x(), example_y());
}

// Family indices 1..6: identity, (1,2,3), (4,8,1), (6,1,7), (1,1,5), (9,9,1).
inline std::vector<keyset::CirculantSpec> example_family() {
  std::vector<keyset::CirculantSpec> family;
  family.push_back(keyset::CirculantSpec::identity(3, mod11()));
  for (const auto& row : std::vector<std::vector<long long>>{
           {1, 2, 3}, {4, 8, 1}, {6, 1, 7}, {1, 1, 5}, {9, 9, 1}}) {
    family.push_back(keyset::CirculantSpec::verified(
        VecZ({BigInt(row[0]), BigInt(row[1]), BigInt(row[2])}, mod11())));
  }
  return family;
}

// Weights of the family rows above.
inline std::vector<long long> example_family_weights() {
  return {1, 3, 4, 9, 5, 9};
}

struct TableRow {
  std::vector<long long> secret;
  std::vector<long long> id;
  long long scale;
};

// Expanded key set of user 2.
inline std::vector<TableRow> user2_table() {
  return {{{1, 9, 2}, {10, 2, 7}, 9},  {{10, 6, 1}, {8, 10, 8}, 5},
          {{7, 2, 4}, {10, 7, 10}, 3}, {{5, 3, 6}, {4, 5, 4}, 4},
          {{4, 9, 5}, {5, 3, 4}, 1},   {{3, 4, 1}, {1, 5, 3}, 4}};
}

// Expanded key set of user 4.
inline std::vector<TableRow> user4_table() {
  return {{{4, 5, 2}, {1, 0, 4}, 1},  {{1, 8, 2}, {9, 3, 7}, 3},
          {{4, 10, 8}, {3, 1, 6}, 4}, {{6, 4, 1}, {10, 7, 9}, 9},
          {{9, 8, 5}, {5, 10, 9}, 5}, {{4, 6, 1}, {1, 2, 4}, 9}};
}

inline VecZ vec(const std::vector<long long>& values, const Modulus& p) {
  std::vector<BigInt> big(values.begin(), values.end());
  return VecZ(std::move(big), p);
}

}  // namespace kt

#endif  // KEYSET_TESTS_TEST_UTIL_HPP
