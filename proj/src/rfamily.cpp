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

#include "rfamily.hpp"

#include <set>
#include <string>

namespace keyset {

namespace {

// Enumeration guards: the closed-form table and scalar orbits are meant for
// desk-scale moduli; discovery at larger sizes goes through default_family.
const BigInt kEnumerationCap = 1000000;
constexpr std::uint64_t kSearchBudget = 10000000;  // candidate rows

void check_enumerable(const Modulus& p, const char* where) {
  if (p.value() > kEnumerationCap) {
    fail(KS_ERR_BAD_PARAMETER,
         std::string(where) + ": modulus too large to enumerate");
  }
}

}  // namespace

CirculantSpec CirculantSpec::verified(VecZ first_row) {
  Residue w = verify_orthogonal(first_row);
  return CirculantSpec{std::move(first_row), std::move(w)};
}

CirculantSpec CirculantSpec::identity(std::uint32_t size, const Modulus& p) {
  return CirculantSpec{VecZ::unit(size, p), Residue(1, p)};
}

MatZ circulant(const VecZ& first_row) {
  const std::size_t n = first_row.size();
  if (n == 0) fail(KS_ERR_EMPTY_ROW, "circulant needs a nonempty first row");
  MatZ out(n, n, first_row.modulus());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      out.set(r, c, first_row.at((c + n - r) % n));
    }
  }
  return out;
}

Residue autocorrelation(const VecZ& first_row, std::uint32_t k) {
  const std::size_t n = first_row.size();
  if (n == 0) fail(KS_ERR_EMPTY_ROW, "autocorrelation of an empty row");
  if (k >= n) {
    fail(KS_ERR_SHIFT_OUT_OF_RANGE,
         "lag " + std::to_string(k) + " out of range for length " +
             std::to_string(n),
         k);
  }
  BigInt sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += first_row.at(i) * first_row.at((i + k) % n);
  }
  return Residue(std::move(sum), first_row.modulus());
}

Residue verify_orthogonal(const VecZ& first_row) {
  const std::size_t n = first_row.size();
  if (n == 0) fail(KS_ERR_EMPTY_ROW, "orthogonality of an empty row");
  for (std::uint32_t k = 1; k < n; ++k) {
    if (!autocorrelation(first_row, k).is_zero()) {
      fail(KS_ERR_NOT_ORTHOGONAL,
           "autocorrelation does not vanish at lag " + std::to_string(k), k);
    }
  }
  Residue w = autocorrelation(first_row, 0);
  if (w.is_zero()) {
    fail(KS_ERR_ZERO_WEIGHT, "row has weight 0 and would destroy scales");
  }
  return w;
}

SolutionRow solve3(const Residue& a) {
  const Modulus& p = a.modulus();
  const Residue one(1, p);
  Residue denom = a + one;
  if (denom.is_zero()) {
    fail(KS_ERR_NO_SOLUTION,
         "a + 1 vanishes mod p; no row completes a = " + a.value().str());
  }
  Residue b = (Residue(0, p) - a) * mod_inv(denom);
  Residue w = one + a * a + b * b;
  return SolutionRow{a, b, w};
}

std::vector<SolutionRow> enumerate3(const Modulus& p) {
  check_enumerable(p, "enumerate3");
  std::vector<SolutionRow> out;
  for (BigInt a = 0; a <= p.value() - 2; ++a) {
    SolutionRow row = solve3(Residue(a, p));
    if (row.w.is_zero()) continue;
    // Cross-check the closed form against the autocorrelation condition.
    verify_orthogonal(VecZ({BigInt(1), row.a.value(), row.b.value()}, p));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<CirculantSpec> scalar_family(const SolutionRow& base,
                                         const Modulus& p) {
  check_enumerable(p, "scalar_family");
  VecZ base_row({BigInt(1), base.a.value(), base.b.value()}, p);
  Residue base_w = verify_orthogonal(base_row);
  std::vector<CirculantSpec> out;
  for (BigInt t = 1; t < p.value(); ++t) {
    Residue scale(t, p);
    Residue w = scale * scale * base_w;
    if (w.is_zero()) continue;
    out.push_back(CirculantSpec{vec_scale(base_row, scale), w});
  }
  return out;
}

std::vector<CirculantSpec> default_family(const Modulus& p,
                                          std::uint32_t row_len,
                                          std::uint32_t count) {
  if (row_len == 0) fail(KS_ERR_EMPTY_ROW, "row length must be positive");
  if (count == 0) fail(KS_ERR_BAD_PARAMETER, "family size must be >= 1");

  std::vector<CirculantSpec> family;
  std::set<std::vector<BigInt>> seen;
  auto take = [&](CirculantSpec spec) {
    if (seen.insert(spec.first_row.values()).second) {
      family.push_back(std::move(spec));
    }
  };

  take(CirculantSpec::identity(row_len, p));

  // Leading-1 rows first: closed form for length 3, bounded search otherwise.
  std::vector<VecZ> bases = {VecZ::unit(row_len, p)};
  if (row_len == 3) {
    for (BigInt a = 1; a <= p.value() - 2 && family.size() < count; ++a) {
      SolutionRow row = solve3(Residue(a, p));
      if (row.w.is_zero()) continue;
      VecZ first_row({BigInt(1), row.a.value(), row.b.value()}, p);
      bases.push_back(first_row);
      take(CirculantSpec{std::move(first_row), row.w});
    }
  } else if (row_len > 1) {
    BigInt candidates = 1;
    for (std::uint32_t i = 1; i < row_len; ++i) candidates *= p.value();
    if (candidates > kSearchBudget) candidates = kSearchBudget;
    std::vector<BigInt> tail(row_len - 1, BigInt(0));
    for (BigInt step = 0; step < candidates && family.size() < count; ++step) {
      std::vector<BigInt> row_values;
      row_values.reserve(row_len);
      row_values.push_back(1);
      row_values.insert(row_values.end(), tail.begin(), tail.end());
      VecZ row(std::move(row_values), p);
      if (!row.is_unit()) {  // the identity is already in
        try {
          Residue w = verify_orthogonal(row);
          bases.push_back(row);
          take(CirculantSpec{std::move(row), std::move(w)});
        } catch (const Error&) {
          // not a family member; keep searching
        }
      }
      // lexicographic odometer over the tail
      for (std::size_t i = tail.size(); i-- > 0;) {
        if (++tail[i] < p.value()) break;
        tail[i] = 0;
      }
    }
  }

  // Scalar multiples of everything found (including the identity) extend the
  // family when leading-1 rows run out; weight scales by t^2.
  for (BigInt t = 2; t < p.value() && family.size() < count; ++t) {
    Residue scale(t, p);
    for (const VecZ& base : bases) {
      if (family.size() >= count) break;
      VecZ row = vec_scale(base, scale);
      try {
        Residue w = verify_orthogonal(row);
        take(CirculantSpec{std::move(row), std::move(w)});
      } catch (const Error&) {
      }
    }
  }

  if (family.size() < count) {
    fail(KS_ERR_NO_SOLUTION,
         "only " + std::to_string(family.size()) +
             " family rows exist at this modulus and length; requested " +
             std::to_string(count));
  }
  return family;
}

}  // namespace keyset
