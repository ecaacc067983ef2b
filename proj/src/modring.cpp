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

#include "modring.hpp"

#include <array>
#include <random>
#include <utility>

namespace keyset {

namespace {

BigInt reduce(BigInt value, const BigInt& p) {
  value %= p;
  if (value < 0) value += p;
  return value;
}

void require_same_modulus(const Modulus& a, const Modulus& b,
                          const char* where) {
  if (a != b) {
    fail(KS_ERR_MODULUS_MISMATCH,
         std::string(where) + ": operands use different moduli");
  }
}

// One Miller–Rabin round; n odd, n > 2, 1 < witness < n - 1.
bool mr_round(const BigInt& n, const BigInt& witness, const BigInt& d,
              unsigned s) {
  BigInt x = boost::multiprecision::powm(witness, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

std::uint64_t splitmix_step(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic witness seed derived from the bytes of n.
std::uint64_t fold_bytes(const BigInt& n) {
  std::vector<unsigned char> bytes;
  boost::multiprecision::export_bits(n, std::back_inserter(bytes), 8);
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (unsigned char b : bytes) h = splitmix_step(h ^ b);
  return h;
}

}  // namespace

BigInt parse_decimal(const std::string& text) {
  if (text.empty()) fail(KS_ERR_PARSE, "empty string is not a decimal integer");
  for (char c : text) {
    if (c < '0' || c > '9') {
      fail(KS_ERR_PARSE, "not an unsigned decimal integer: \"" + text + "\"");
    }
  }
  return BigInt(text);
}

std::string to_decimal(const BigInt& value) { return value.str(); }

bool is_probable_prime(const BigInt& n) {
  static constexpr std::array<unsigned, 12> kSmall = {2,  3,  5,  7,  11, 13,
                                                      17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (unsigned q : kSmall) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }

  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }

  const BigInt two_pow_64 = BigInt(1) << 64;
  if (n < two_pow_64) {
    // This witness set is a proof for every n < 3.3e24, well past 2^64.
    for (unsigned q : kSmall) {
      if (!mr_round(n, BigInt(q), d, s)) return false;
    }
    return true;
  }

  std::mt19937_64 gen(fold_bytes(n));
  for (int round = 0; round < 40; ++round) {
    // Draw a witness in [2, n - 2]; n >> 2^64, so rejection is immaterial.
    BigInt w = 0;
    const std::size_t words =
        (boost::multiprecision::msb(n) + 64) / 64;
    for (std::size_t i = 0; i < words; ++i) w = (w << 64) | gen();
    w = 2 + (w % (n - 3));
    if (!mr_round(n, w, d, s)) return false;
  }
  return true;
}

Modulus::Modulus(BigInt p) {
  if (p < 3) {
    fail(KS_ERR_NOT_PRIME, "modulus must be a prime >= 3, got " + p.str());
  }
  if (!is_probable_prime(p)) {
    fail(KS_ERR_NOT_PRIME, "modulus " + p.str() + " is not prime");
  }
  p_ = std::make_shared<const BigInt>(std::move(p));
}

Residue::Residue(BigInt value, Modulus modulus)
    : value_(reduce(std::move(value), modulus.value())),
      modulus_(std::move(modulus)) {}

Residue operator+(const Residue& a, const Residue& b) {
  require_same_modulus(a.modulus_, b.modulus_, "residue addition");
  return Residue(a.value_ + b.value_, a.modulus_);
}

Residue operator-(const Residue& a, const Residue& b) {
  require_same_modulus(a.modulus_, b.modulus_, "residue subtraction");
  return Residue(a.value_ - b.value_, a.modulus_);
}

Residue operator*(const Residue& a, const Residue& b) {
  require_same_modulus(a.modulus_, b.modulus_, "residue multiplication");
  return Residue(a.value_ * b.value_, a.modulus_);
}

bool operator==(const Residue& a, const Residue& b) {
  return a.modulus_ == b.modulus_ && a.value_ == b.value_;
}

Residue mod_inv(const Residue& a) {
  if (a.is_zero()) {
    fail(KS_ERR_ZERO_NOT_INVERTIBLE, "0 has no multiplicative inverse mod p");
  }
  // Extended Euclid on (a, p); the gcd is 1 since p is prime and a != 0.
  BigInt r0 = a.value(), r1 = a.modulus().value();
  BigInt x0 = 1, x1 = 0;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    BigInt x2 = x0 - q * x1;
    x0 = std::move(x1);
    x1 = std::move(x2);
  }
  return Residue(std::move(x0), a.modulus());
}

VecZ::VecZ(std::vector<BigInt> entries, Modulus modulus)
    : entries_(std::move(entries)), modulus_(std::move(modulus)) {
  for (BigInt& e : entries_) e = reduce(std::move(e), modulus_.value());
}

VecZ VecZ::from_ints(std::initializer_list<long long> entries,
                     const Modulus& modulus) {
  std::vector<BigInt> values(entries.begin(), entries.end());
  return VecZ(std::move(values), modulus);
}

VecZ VecZ::unit(std::size_t size, const Modulus& modulus) {
  if (size == 0) fail(KS_ERR_EMPTY_ROW, "unit vector needs a positive length");
  std::vector<BigInt> values(size, BigInt(0));
  values[0] = 1;
  return VecZ(std::move(values), modulus);
}

bool VecZ::is_unit() const {
  if (entries_.empty() || entries_[0] != 1) return false;
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i] != 0) return false;
  }
  return true;
}

bool operator==(const VecZ& a, const VecZ& b) {
  return a.modulus_ == b.modulus_ && a.entries_ == b.entries_;
}

Residue inner_product(const VecZ& a, const VecZ& b) {
  require_same_modulus(a.modulus(), b.modulus(), "inner product");
  if (a.size() != b.size()) {
    fail(KS_ERR_DIMENSION_MISMATCH,
         "inner product of vectors with lengths " + std::to_string(a.size()) +
             " and " + std::to_string(b.size()));
  }
  BigInt sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a.at(i) * b.at(i);
  return Residue(std::move(sum), a.modulus());
}

VecZ vec_scale(const VecZ& v, const Residue& t) {
  require_same_modulus(v.modulus(), t.modulus(), "vector scaling");
  std::vector<BigInt> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v.at(i) * t.value());
  return VecZ(std::move(out), v.modulus());
}

MatZ::MatZ(std::size_t rows, std::size_t cols, Modulus modulus)
    : rows_(rows),
      cols_(cols),
      modulus_(std::move(modulus)),
      entries_(rows * cols, BigInt(0)) {
  if (rows == 0 || cols == 0) {
    fail(KS_ERR_DIMENSION_MISMATCH, "matrix dimensions must be positive");
  }
}

MatZ MatZ::from_rows(const std::vector<std::vector<BigInt>>& rows,
                     const Modulus& modulus) {
  if (rows.empty() || rows.front().empty()) {
    fail(KS_ERR_DIMENSION_MISMATCH, "matrix dimensions must be positive");
  }
  MatZ m(rows.size(), rows.front().size(), modulus);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      fail(KS_ERR_DIMENSION_MISMATCH, "ragged matrix rows");
    }
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

MatZ MatZ::from_ints(
    std::initializer_list<std::initializer_list<long long>> rows,
    const Modulus& modulus) {
  std::vector<std::vector<BigInt>> values;
  for (const auto& row : rows) values.emplace_back(row.begin(), row.end());
  return from_rows(values, modulus);
}

MatZ MatZ::identity(std::size_t n, const Modulus& modulus) {
  MatZ m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

const BigInt& MatZ::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    fail(KS_ERR_INDEX_OUT_OF_RANGE, "matrix index out of range");
  }
  return entries_[r * cols_ + c];
}

void MatZ::set(std::size_t r, std::size_t c, const BigInt& value) {
  if (r >= rows_ || c >= cols_) {
    fail(KS_ERR_INDEX_OUT_OF_RANGE, "matrix index out of range");
  }
  entries_[r * cols_ + c] = reduce(value, modulus_.value());
}

VecZ MatZ::row(std::size_t r) const {
  if (r >= rows_) fail(KS_ERR_INDEX_OUT_OF_RANGE, "matrix row out of range");
  std::vector<BigInt> values(entries_.begin() + r * cols_,
                             entries_.begin() + (r + 1) * cols_);
  return VecZ(std::move(values), modulus_);
}

VecZ MatZ::col(std::size_t c) const {
  if (c >= cols_) fail(KS_ERR_INDEX_OUT_OF_RANGE, "matrix column out of range");
  std::vector<BigInt> values;
  values.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) values.push_back(at(r, c));
  return VecZ(std::move(values), modulus_);
}

bool operator==(const MatZ& a, const MatZ& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.modulus_ == b.modulus_ && a.entries_ == b.entries_;
}

MatZ mat_mul(const MatZ& a, const MatZ& b) {
  require_same_modulus(a.modulus(), b.modulus(), "matrix product");
  if (a.cols() != b.rows()) {
    fail(KS_ERR_DIMENSION_MISMATCH,
         "matrix product of " + std::to_string(a.rows()) + "x" +
             std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
             "x" + std::to_string(b.cols()));
  }
  MatZ out(a.rows(), b.cols(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      BigInt sum = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a.at(r, k) * b.at(k, c);
      out.set(r, c, sum);
    }
  }
  return out;
}

MatZ mat_transpose(const MatZ& a) {
  MatZ out(a.cols(), a.rows(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.set(c, r, a.at(r, c));
  }
  return out;
}

MatZ mat_scale(const MatZ& a, const Residue& t) {
  require_same_modulus(a.modulus(), t.modulus(), "matrix scaling");
  MatZ out(a.rows(), a.cols(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out.set(r, c, a.at(r, c) * t.value());
    }
  }
  return out;
}

bool is_symmetric(const MatZ& a) {
  if (a.rows() != a.cols()) {
    fail(KS_ERR_NOT_SQUARE, "symmetry is defined for square matrices only");
  }
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = r + 1; c < a.cols(); ++c) {
      if (a.at(r, c) != a.at(c, r)) return false;
    }
  }
  return true;
}

}  // namespace keyset
