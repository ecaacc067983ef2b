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

namespace {

// Test-local oracle: full matrix check that R * R^T is w * I.
bool orthogonal_by_matrix(const VecZ& first_row, BigInt& w_out) {
  MatZ r = circulant(first_row);
  MatZ product = mat_mul(r, mat_transpose(r));
  const BigInt& w = product.at(0, 0);
  for (std::size_t i = 0; i < product.rows(); ++i) {
    for (std::size_t j = 0; j < product.cols(); ++j) {
      if (i == j && product.at(i, j) != w) return false;
      if (i != j && product.at(i, j) != 0) return false;
    }
  }
  if (w == 0) return false;
  w_out = w;
  return true;
}

}  // namespace

TEST_CASE("circulant construction") {
  const Modulus& p = kt::mod11();

  MatZ r = circulant(kt::vec({1, 2, 3}, p));
  CHECK(r == MatZ::from_ints({{1, 2, 3}, {3, 1, 2}, {2, 3, 1}}, p));

  CHECK(circulant(kt::vec({5}, p)) == MatZ::from_ints({{5}}, p));
  CHECK(circulant(kt::vec({1, 0, 0}, p)) == MatZ::identity(3, p));

  CHECK(code_of([&] { circulant(VecZ({}, p)); }) == KS_ERR_EMPTY_ROW);
}

TEST_CASE("autocorrelation") {
  const Modulus& p = kt::mod11();
  VecZ row = kt::vec({1, 2, 3}, p);

  // 1*2 + 2*3 + 3*1 = 11 = 0 mod 11
  CHECK(autocorrelation(row, 1).value() == 0);
  CHECK(autocorrelation(row, 2).value() == 0);
  // C(0) is the weight: 1 + 4 + 9 = 14 = 3 mod 11
  CHECK(autocorrelation(row, 0).value() == 3);

  CHECK(autocorrelation(kt::vec({1, 1, 1}, p), 1).value() == 3);

  std::uint64_t detail = 0;
  CHECK(code_of([&] { autocorrelation(row, 3); }, detail) ==
        KS_ERR_SHIFT_OUT_OF_RANGE);
  CHECK(detail == 3);
}

TEST_CASE("orthogonality verification") {
  const Modulus& p = kt::mod11();

  CHECK(verify_orthogonal(kt::vec({1, 2, 3}, p)).value() == 3);
  CHECK(verify_orthogonal(kt::vec({1, 0, 0}, p)).value() == 1);

  std::uint64_t detail = 0;
  CHECK(code_of([&] { verify_orthogonal(kt::vec({1, 1, 1}, p)); }, detail) ==
        KS_ERR_NOT_ORTHOGONAL);
  CHECK(detail == 1);

  // Vanishing lags but weight 0: (1,1,1) over Z_3 has C(1) = C(2) = 3 = 0
  // and C(0) = 3 = 0.
  Modulus p3{BigInt(3)};
  CHECK(code_of([&] { verify_orthogonal(kt::vec({1, 1, 1}, p3)); }) ==
        KS_ERR_ZERO_WEIGHT);

  SUBCASE("matches the defining condition over all 121 rows (1,a,b)") {
    for (long long a = 0; a < 11; ++a) {
      for (long long b = 0; b < 11; ++b) {
        VecZ row = kt::vec({1, a, b}, p);
        const bool condition =
            (a + b + a * b) % 11 == 0 && (1 + a * a + b * b) % 11 != 0;
        BigInt w_oracle = 0;
        const bool matrix_oracle = orthogonal_by_matrix(row, w_oracle);
        CHECK(condition == matrix_oracle);

        BigInt w = 0;
        bool verified = false;
        try {
          w = verify_orthogonal(row).value();
          verified = true;
        } catch (const Error&) {
        }
        CHECK(verified == condition);
        if (verified) CHECK(w == w_oracle);
      }
    }
  }
}

TEST_CASE("closed-form 3x3 solutions") {
  const Modulus& p = kt::mod11();

  SUBCASE("single roots") {
    SolutionRow s2 = solve3(Residue(BigInt(2), p));
    CHECK(s2.b.value() == 3);
    CHECK(s2.w.value() == 3);

    SolutionRow s1 = solve3(Residue(BigInt(1), p));
    CHECK(s1.b.value() == 5);
    CHECK(s1.w.value() == 5);

    CHECK(code_of([&] { solve3(Residue(BigInt(10), p)); }) ==
          KS_ERR_NO_SOLUTION);
  }

  SUBCASE("full table at p = 11") {
    std::vector<SolutionRow> rows = enumerate3(p);
    REQUIRE(rows.size() == 10);

    // a = 0 is the identity row.
    CHECK(rows[0].a.value() == 0);
    CHECK(rows[0].b.value() == 0);
    CHECK(rows[0].w.value() == 1);

    const long long expected_b[] = {5, 3, 2, 8, 1, 7, 6, 4, 9};
    // Weights per the defining relation w = 1 + a^2 + b^2. The published
    // solution table lists w = 5 for a = 9; 1 + 81 + 81 = 163 = 9 mod 11,
    // so the implementation reports 9 (documented misprint).
    const long long expected_w[] = {5, 3, 3, 4, 5, 9, 9, 4, 9};
    for (int a = 1; a <= 9; ++a) {
      CHECK(rows[a].a.value() == a);
      CHECK(rows[a].b.value() == expected_b[a - 1]);
      CHECK(rows[a].w.value() == expected_w[a - 1]);

      BigInt w_oracle = 0;
      VecZ row = kt::vec({1, a, expected_b[a - 1]}, p);
      CHECK(orthogonal_by_matrix(row, w_oracle));
      CHECK(rows[a].w.value() == w_oracle);
    }
    CHECK(rows[9].w.value() == 9);  // not the published 5
  }

  SUBCASE("p = 3 keeps only the identity row") {
    Modulus p3{BigInt(3)};
    std::vector<SolutionRow> rows = enumerate3(p3);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].a.value() == 0);
    CHECK(rows[0].w.value() == 1);
    // a = 1 solves the linear condition with b = 1 but has weight 0.
    CHECK(solve3(Residue(BigInt(1), p3)).w.value() == 0);
  }
}

TEST_CASE("scalar families") {
  const Modulus& p = kt::mod11();
  SolutionRow base1 = solve3(Residue(BigInt(2), p));  // (1,2,3)
  SolutionRow base2 = solve3(Residue(BigInt(1), p));  // (1,1,5)

  std::vector<CirculantSpec> group1 = scalar_family(base1, p);
  std::vector<CirculantSpec> group2 = scalar_family(base2, p);
  REQUIRE(group1.size() == 10);
  REQUIRE(group2.size() == 10);

  SUBCASE("the published group members appear") {
    const std::vector<std::vector<long long>> expected1 = {
        {1, 2, 3}, {2, 4, 6}, {3, 6, 9}, {4, 8, 1},  {5, 10, 4},
        {6, 1, 7}, {7, 3, 10}, {8, 5, 2}, {9, 7, 5}, {10, 9, 8}};
    for (std::size_t i = 0; i < expected1.size(); ++i) {
      CHECK(group1[i].first_row == kt::vec(expected1[i], p));
    }
    CHECK(group1[3].first_row == kt::vec({4, 8, 1}, p));
    CHECK(group2[5].first_row == kt::vec({6, 6, 8}, p));
    CHECK(group2[0].first_row == kt::vec({1, 1, 5}, p));
    CHECK(group2[8].first_row == kt::vec({9, 9, 1}, p));
  }

  SUBCASE("weights scale as t^2") {
    for (int g = 0; g < 2; ++g) {
      const auto& group = g == 0 ? group1 : group2;
      const BigInt base_w = g == 0 ? 3 : 5;
      for (long long t = 1; t <= 10; ++t) {
        CHECK(group[t - 1].weight.value() == (t * t * base_w) % 11);
      }
    }
  }

  SUBCASE("every member passes the full matrix oracle") {
    for (const auto& group : {group1, group2}) {
      for (const CirculantSpec& spec : group) {
        BigInt w_oracle = 0;
        CHECK(orthogonal_by_matrix(spec.first_row, w_oracle));
        CHECK(spec.weight.value() == w_oracle);
      }
    }
  }
}

TEST_CASE("default families") {
  SUBCASE("p = 11, length 3") {
    std::vector<CirculantSpec> family = default_family(kt::mod11(), 3, 6);
    REQUIRE(family.size() == 6);
    CHECK(family[0].is_identity());
    for (const CirculantSpec& spec : family) {
      BigInt w_oracle = 0;
      CHECK(orthogonal_by_matrix(spec.first_row, w_oracle));
      CHECK(spec.weight.value() == w_oracle);
    }
  }

  SUBCASE("p = 3, length 3 tops out at two rows") {
    Modulus p3{BigInt(3)};
    std::vector<CirculantSpec> family = default_family(p3, 3, 2);
    REQUIRE(family.size() == 2);
    CHECK(family[0].is_identity());
    CHECK(family[1].first_row == kt::vec({2, 0, 0}, p3));
    CHECK(code_of([&] { default_family(p3, 3, 5); }) == KS_ERR_NO_SOLUTION);
  }

  SUBCASE("length 1 uses nonzero scalars") {
    std::vector<CirculantSpec> family = default_family(kt::mod11(), 1, 4);
    REQUIRE(family.size() == 4);
    CHECK(family[0].is_identity());
    for (const CirculantSpec& spec : family) {
      CHECK_FALSE(spec.weight.is_zero());
    }
  }

  SUBCASE("length 2 falls back to scaled identities") {
    // Over an odd prime, C(1) = 2 * a1 * a2 forces a2 = 0, so the only
    // members are the nonzero multiples of the identity row.
    std::vector<CirculantSpec> family = default_family(kt::mod11(), 2, 3);
    REQUIRE(family.size() == 3);
    CHECK(family[0].is_identity());
    CHECK(family[1].first_row == kt::vec({2, 0}, kt::mod11()));
    CHECK(family[1].weight.value() == 4);
    CHECK(family[2].first_row == kt::vec({3, 0}, kt::mod11()));
  }

  SUBCASE("length 4 discovers rows by search") {
    std::vector<CirculantSpec> family = default_family(kt::mod11(), 4, 3);
    REQUIRE(family.size() == 3);
    CHECK(family[0].is_identity());
    for (const CirculantSpec& spec : family) {
      BigInt w_oracle = 0;
      CHECK(orthogonal_by_matrix(spec.first_row, w_oracle));
    }
  }

  SUBCASE("64-bit prime, length 3") {
    std::vector<CirculantSpec> family = default_family(kt::mod64(), 3, 5);
    REQUIRE(family.size() == 5);
    CHECK(family[0].is_identity());
    for (const CirculantSpec& spec : family) {
      BigInt w_oracle = 0;
      CHECK(orthogonal_by_matrix(spec.first_row, w_oracle));
    }
  }
}
