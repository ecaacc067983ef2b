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

// Exact arithmetic over Z_p and dense matrices of residues. Everything here
// is a value type: immutable after construction and safe to share across
// threads. Residues are kept canonical in [0, p) and every operation reduces
// eagerly.

#ifndef KEYSET_MODRING_HPP
#define KEYSET_MODRING_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <exception>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "keyset/keyset.h"

namespace keyset {

using BigInt = boost::multiprecision::cpp_int;

// Library-wide error. Carries the same status codes the C API exposes, plus
// an optional numeric detail (failing lag, offending user index, ...).
class Error : public std::exception {
 public:
  Error(ks_status code, std::string message, std::uint64_t detail = 0)
      : code_(code), detail_(detail), message_(std::move(message)) {}

  const char* what() const noexcept override { return message_.c_str(); }
  ks_status code() const noexcept { return code_; }
  std::uint64_t detail() const noexcept { return detail_; }

 private:
  ks_status code_;
  std::uint64_t detail_;
  std::string message_;
};

[[noreturn]] inline void fail(ks_status code, std::string message,
                              std::uint64_t detail = 0) {
  throw Error(code, std::move(message), detail);
}

// Parses a non-negative decimal integer; anything else is KS_ERR_PARSE.
BigInt parse_decimal(const std::string& text);
std::string to_decimal(const BigInt& value);

// Miller–Rabin: deterministic witness set below 2^64, 40 rounds above.
bool is_probable_prime(const BigInt& n);

// A validated prime modulus p >= 3. Copies are cheap (shared storage);
// equality compares the numeric value.
class Modulus {
 public:
  explicit Modulus(BigInt p);

  const BigInt& value() const { return *p_; }

  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.p_ == b.p_ || *a.p_ == *b.p_;
  }
  friend bool operator!=(const Modulus& a, const Modulus& b) {
    return !(a == b);
  }

 private:
  std::shared_ptr<const BigInt> p_;
};

// An element of Z_p in canonical form.
class Residue {
 public:
  Residue(BigInt value, Modulus modulus);

  const BigInt& value() const { return value_; }
  const Modulus& modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  friend Residue operator+(const Residue& a, const Residue& b);
  friend Residue operator-(const Residue& a, const Residue& b);
  friend Residue operator*(const Residue& a, const Residue& b);
  friend bool operator==(const Residue& a, const Residue& b);
  friend bool operator!=(const Residue& a, const Residue& b) {
    return !(a == b);
  }

 private:
  BigInt value_;
  Modulus modulus_;
};

// Multiplicative inverse; KS_ERR_ZERO_NOT_INVERTIBLE when a == 0.
Residue mod_inv(const Residue& a);

// Fixed-length vector of residues sharing one modulus.
class VecZ {
 public:
  VecZ(std::vector<BigInt> entries, Modulus modulus);
  static VecZ from_ints(std::initializer_list<long long> entries,
                        const Modulus& modulus);
  // (1, 0, ..., 0), the first row of the identity circulant.
  static VecZ unit(std::size_t size, const Modulus& modulus);

  std::size_t size() const { return entries_.size(); }
  const BigInt& at(std::size_t i) const { return entries_.at(i); }
  const std::vector<BigInt>& values() const { return entries_; }
  const Modulus& modulus() const { return modulus_; }
  Residue residue_at(std::size_t i) const {
    return Residue(entries_.at(i), modulus_);
  }
  bool is_unit() const;

  friend bool operator==(const VecZ& a, const VecZ& b);
  friend bool operator!=(const VecZ& a, const VecZ& b) { return !(a == b); }

 private:
  std::vector<BigInt> entries_;
  Modulus modulus_;
};

Residue inner_product(const VecZ& a, const VecZ& b);
VecZ vec_scale(const VecZ& v, const Residue& t);

// Dense row-major matrix of residues.
class MatZ {
 public:
  MatZ(std::size_t rows, std::size_t cols, Modulus modulus);
  static MatZ from_rows(const std::vector<std::vector<BigInt>>& rows,
                        const Modulus& modulus);
  static MatZ from_ints(
      std::initializer_list<std::initializer_list<long long>> rows,
      const Modulus& modulus);
  static MatZ identity(std::size_t n, const Modulus& modulus);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Modulus& modulus() const { return modulus_; }

  const BigInt& at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const BigInt& value);

  VecZ row(std::size_t r) const;
  VecZ col(std::size_t c) const;

  friend bool operator==(const MatZ& a, const MatZ& b);
  friend bool operator!=(const MatZ& a, const MatZ& b) { return !(a == b); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  Modulus modulus_;
  std::vector<BigInt> entries_;
};

MatZ mat_mul(const MatZ& a, const MatZ& b);
MatZ mat_transpose(const MatZ& a);
MatZ mat_scale(const MatZ& a, const Residue& t);
bool is_symmetric(const MatZ& a);

}  // namespace keyset

#endif  // KEYSET_MODRING_HPP
