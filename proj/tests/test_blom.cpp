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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace keyset;
using kt::code_of;

TEST_CASE("loading the reference system") {
  TaBundle ta = kt::example_bundle();
  CHECK(ta.users == 5);
  CHECK(ta.key_len == 3);
  CHECK(ta.k == kt::example_k());
  CHECK(is_symmetric(ta.k));

  SUBCASE("per-user views") {
    CHECK(user_secret(ta, 2).entries == kt::vec({1, 9, 2}, kt::mod11()));
    CHECK(user_secret(ta, 4).entries == kt::vec({4, 5, 2}, kt::mod11()));
    CHECK(user_secret(ta, 1).entries == kt::vec({9, 9, 6}, kt::mod11()));
    CHECK(user_id(ta, 2).entries == kt::vec({10, 2, 7}, kt::mod11()));
    CHECK(user_id(ta, 4).entries == kt::vec({1, 0, 4}, kt::mod11()));
    CHECK(user_id(ta, 1).entries == kt::vec({7, 7, 7}, kt::mod11()));
  }

  SUBCASE("the pair 2-4 derives 9 from both sides") {
    CHECK(shared_key(user_secret(ta, 2), user_id(ta, 4)).value() == 9);
    CHECK(shared_key(user_secret(ta, 4), user_id(ta, 2)).value() == 9);
  }

  SUBCASE("scales") {
    CHECK(key_scale(ta, 2).value() == 9);
    CHECK(key_scale(ta, 4).value() == 1);
    CHECK(key_scale(ta, 1).value() == 3);
    for (std::uint32_t i = 1; i <= 5; ++i) {
      CHECK(key_scale(ta, i) ==
            shared_key(user_secret(ta, i), user_id(ta, i)));
    }
  }

  SUBCASE("agreement symmetry over every pair") {
    for (std::uint32_t i = 1; i <= 5; ++i) {
      for (std::uint32_t j = 1; j <= 5; ++j) {
        CHECK(shared_key(user_secret(ta, i), user_id(ta, j)) ==
              shared_key(user_secret(ta, j), user_id(ta, i)));
      }
    }
  }

  SUBCASE("user index bounds") {
    CHECK(code_of([&] { user_secret(ta, 0); }) == KS_ERR_INDEX_OUT_OF_RANGE);
    CHECK(code_of([&] { user_id(ta, 6); }) == KS_ERR_INDEX_OUT_OF_RANGE);
    CHECK(code_of([&] { key_scale(ta, 99); }) == KS_ERR_INDEX_OUT_OF_RANGE);
  }
}

TEST_CASE("shared_key edge cases") {
  const Modulus& p = kt::mod11();
  SecretKey zero{1, kt::vec({0, 0, 0}, p)};
  PublicId id{2, kt::vec({1, 0, 4}, p)};
  CHECK(shared_key(zero, id).value() == 0);

  SecretKey wrong{1, kt::vec({1, 2}, p)};
  CHECK(code_of([&] { shared_key(wrong, id); }) == KS_ERR_DIMENSION_MISMATCH);
}

TEST_CASE("ta_load validation") {
  const Modulus& p = kt::mod11();

  SUBCASE("non-symmetric product is rejected") {
    MatZ x = MatZ::from_ints({{1, 0}, {0, 1}}, p);
    MatZ y = MatZ::from_ints({{1, 2}, {0, 1}}, p);
    CHECK(code_of([&] { ta_load(x, y); }) == KS_ERR_NOT_SYMMETRIC);
  }

  SUBCASE("zeroing the first identifier column zeroes the first scale") {
    MatZ y = kt::example_y();
    for (std::size_t r = 0; r < y.rows(); ++r) y.set(r, 0, BigInt(0));
    std::uint64_t detail = 0;
    CHECK(code_of([&] { ta_load(kt::example_x(), y); }, detail) ==
          KS_ERR_ZERO_SCALE);
    CHECK(detail == 1);
  }

  SUBCASE("Gram form X = Y^T is always symmetric") {
    MatZ y = kt::example_y();
    CHECK(code_of([&] { ta_load(mat_transpose(y), y); }) == KS_OK);
  }

  SUBCASE("shape checks") {
    CHECK(code_of([&] { ta_load(kt::example_x(), kt::example_x()); }) ==
          KS_ERR_DIMENSION_MISMATCH);
    MatZ other(3, 5, Modulus{BigInt(13)});
    CHECK(code_of([&] { ta_load(kt::example_x(), other); }) ==
          KS_ERR_MODULUS_MISMATCH);
  }
}

TEST_CASE("ta_generate") {
  SUBCASE("a generated bundle is valid and deterministic") {
    const Modulus& p = kt::mod11();
    TaBundle a = ta_generate(p, 5, 3, 7);
    TaBundle b = ta_generate(p, 5, 3, 7);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.k == b.k);

    CHECK(is_symmetric(a.k));
    CHECK(a.k == mat_mul(a.x, a.y));
    for (std::uint32_t i = 1; i <= 5; ++i) {
      CHECK_FALSE(key_scale(a, i).is_zero());
    }

    TaBundle c = ta_generate(p, 5, 3, 8);
    CHECK(a.y != c.y);
  }

  SUBCASE("generated bundles replay through ta_load") {
    for (std::uint64_t seed : {0ULL, 1ULL, 2ULL, 3ULL, 4ULL}) {
      TaBundle a = ta_generate(kt::mod11(), 6, 3, seed);
      TaBundle again = ta_load(a.x, a.y);
      CHECK(again.k == a.k);
      for (std::uint32_t i = 1; i <= 6; ++i) {
        for (std::uint32_t j = 1; j <= 6; ++j) {
          CHECK(shared_key(user_secret(a, i), user_id(a, j)) ==
                shared_key(user_secret(a, j), user_id(a, i)));
        }
      }
    }
  }

  SUBCASE("single-entry keys over Z_3, any seed") {
    Modulus p3{BigInt(3)};
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
      TaBundle a = ta_generate(p3, 2, 1, seed);
      // Exhaustive over the whole bundle: recompute K entrywise and check
      // both users against each other.
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          CHECK(a.k.at(i, j) == (a.x.at(i, 0) * a.y.at(0, j)) % 3);
        }
      }
      CHECK(is_symmetric(a.k));
      CHECK_FALSE(key_scale(a, 1).is_zero());
      CHECK_FALSE(key_scale(a, 2).is_zero());
      CHECK(a.y.at(0, 0) != a.y.at(0, 1));  // distinct identifiers
      CHECK(shared_key(user_secret(a, 1), user_id(a, 2)) ==
            shared_key(user_secret(a, 2), user_id(a, 1)));
    }
  }

  SUBCASE("composite modulus is refused") {
    CHECK(code_of([] { Modulus{BigInt(4)}; }) == KS_ERR_NOT_PRIME);
  }

  SUBCASE("more users than identifiers") {
    Modulus p3{BigInt(3)};
    CHECK(code_of([&] { ta_generate(p3, 4, 1, 0); }) == KS_ERR_DEGENERATE);
  }

  SUBCASE("64-bit prime") {
    TaBundle a = ta_generate(kt::mod64(), 4, 3, 11);
    CHECK(is_symmetric(a.k));
    CHECK(a.k == mat_mul(a.x, a.y));
  }

  SUBCASE("parameter validation") {
    CHECK(code_of([&] { ta_generate(kt::mod11(), 1, 3, 0); }) ==
          KS_ERR_BAD_PARAMETER);
    CHECK(code_of([&] { ta_generate(kt::mod11(), 2, 0, 0); }) ==
          KS_ERR_BAD_PARAMETER);
  }
}
