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

#include "refcheck.hpp"

#include <functional>
#include <sstream>

#include "protocol.hpp"
#include "serial.hpp"

namespace keyset {

namespace {

// The reference system: 5 users, key length 3, p = 11.
const Modulus& ref_modulus() {
  static const Modulus p{BigInt(11)};
  return p;
}

MatZ ref_x() {
  return MatZ::from_ints(
      {{9, 9, 6}, {1, 9, 2}, {1, 0, 0}, {4, 5, 2}, {0, 5, 0}}, ref_modulus());
}

MatZ ref_y() {
  return MatZ::from_ints(
      {{7, 10, 5, 1, 8}, {7, 2, 6, 0, 3}, {7, 7, 3, 4, 4}}, ref_modulus());
}

MatZ ref_k() {
  return MatZ::from_ints({{3, 7, 7, 0, 2},
                          {7, 9, 10, 9, 10},
                          {7, 10, 5, 1, 8},
                          {0, 9, 1, 1, 0},
                          {2, 10, 8, 0, 4}},
                         ref_modulus());
}

// Family indices 1..6: original, then the five marked solution rows.
std::vector<CirculantSpec> ref_family() {
  const Modulus& p = ref_modulus();
  std::vector<CirculantSpec> family;
  family.push_back(CirculantSpec::identity(3, p));
  for (auto row : {std::vector<long long>{1, 2, 3},
                   {4, 8, 1},
                   {6, 1, 7},
                   {1, 1, 5},
                   {9, 9, 1}}) {
    family.push_back(CirculantSpec::verified(
        VecZ({BigInt(row[0]), BigInt(row[1]), BigInt(row[2])}, p)));
  }
  return family;
}

struct TableEntry {
  std::vector<long long> secret;
  std::vector<long long> id;
  long long scale;
};

// Key-set table of user 2.
const std::vector<TableEntry>& ref_user2_table() {
  static const std::vector<TableEntry> t = {
      {{1, 9, 2}, {10, 2, 7}, 9},  {{10, 6, 1}, {8, 10, 8}, 5},
      {{7, 2, 4}, {10, 7, 10}, 3}, {{5, 3, 6}, {4, 5, 4}, 4},
      {{4, 9, 5}, {5, 3, 4}, 1},   {{3, 4, 1}, {1, 5, 3}, 4}};
  return t;
}

// Key-set table of user 4.
const std::vector<TableEntry>& ref_user4_table() {
  static const std::vector<TableEntry> t = {
      {{4, 5, 2}, {1, 0, 4}, 1},  {{1, 8, 2}, {9, 3, 7}, 3},
      {{4, 10, 8}, {3, 1, 6}, 4}, {{6, 4, 1}, {10, 7, 9}, 9},
      {{9, 8, 5}, {5, 10, 9}, 5}, {{4, 6, 1}, {1, 2, 4}, 9}};
  return t;
}

class Runner {
 public:
  Runner(const RefOptions& options, bool list_only)
      : options_(options), list_only_(list_only) {}

  void check(const std::string& name, const std::function<std::string()>& fn) {
    RefCheck result{name, true, ""};
    if (!list_only_) {
      try {
        result.note = fn();
        result.pass = result.note.empty();
      } catch (const Error& e) {
        result.pass = false;
        result.note = e.what();
      }
    }
    results_.push_back(std::move(result));
  }

  std::vector<RefCheck> take() { return std::move(results_); }
  const RefOptions& options() const { return options_; }

 private:
  RefOptions options_;
  bool list_only_;
  std::vector<RefCheck> results_;
};

std::string expected_got(const std::string& what, const std::string& expected,
                     const std::string& actual) {
  return what + ": expected " + expected + ", got " + actual;
}

std::string check_matrix(const MatZ& expected, const MatZ& actual,
                         const std::string& what) {
  if (expected == actual) return "";
  for (std::size_t r = 0; r < expected.rows(); ++r) {
    for (std::size_t c = 0; c < expected.cols(); ++c) {
      if (expected.at(r, c) != actual.at(r, c)) {
        return expected_got(what + " entry (" + std::to_string(r + 1) + "," +
                            std::to_string(c + 1) + ")",
                        to_decimal(expected.at(r, c)),
                        to_decimal(actual.at(r, c)));
      }
    }
  }
  return what + ": shape mismatch";
}

void run_all(Runner& run) {
  const Modulus& p = ref_modulus();

  run.check("base-k-matrix", [&] {
    TaBundle ta = ta_load(ref_x(), ref_y());
    return check_matrix(ref_k(), ta.k, "K");
  });

  run.check("base-scales", [&] {
    TaBundle ta = ta_load(ref_x(), ref_y());
    const long long expected[] = {3, 9, 5, 1, 4};
    for (std::uint32_t i = 1; i <= 5; ++i) {
      if (key_scale(ta, i).value() != expected[i - 1]) {
        return expected_got("scale of user " + std::to_string(i),
                        std::to_string(expected[i - 1]),
                        to_decimal(key_scale(ta, i).value()));
      }
    }
    return std::string();
  });

  run.check("base-pair-key", [&] {
    TaBundle ta = ta_load(ref_x(), ref_y());
    Residue from_2 = shared_key(user_secret(ta, 2), user_id(ta, 4));
    Residue from_4 = shared_key(user_secret(ta, 4), user_id(ta, 2));
    if (from_2.value() != 9 || from_4.value() != 9) {
      return expected_got("pair key of users 2 and 4", "9 / 9",
                      to_decimal(from_2.value()) + " / " +
                          to_decimal(from_4.value()));
    }
    return std::string();
  });

  run.check("solution-table-3x3", [&] {
    const long long expected_b[] = {5, 3, 2, 8, 1, 7, 6, 4, 9};
    // Weights from the defining relation w = 1 + a^2 + b^2. The published
    // table lists 5 for a = 9; the relation gives 9 (known misprint).
    long long expected_w[] = {5, 3, 3, 4, 5, 9, 9, 4, 9};
    if (run.options().use_published_w) expected_w[8] = 5;

    std::vector<SolutionRow> rows = enumerate3(p);
    if (rows.size() != 10) {
      return expected_got("solution count incl. identity", "10",
                      std::to_string(rows.size()));
    }
    if (!rows[0].a.is_zero() || !rows[0].b.is_zero() ||
        rows[0].w.value() != 1) {
      return std::string("identity row (a=0) missing or wrong");
    }
    for (int i = 1; i <= 9; ++i) {
      const SolutionRow& row = rows[i];
      if (row.a.value() != i || row.b.value() != expected_b[i - 1] ||
          row.w.value() != expected_w[i - 1]) {
        return expected_got(
            "row a=" + std::to_string(i),
            "(b=" + std::to_string(expected_b[i - 1]) +
                ", w=" + std::to_string(expected_w[i - 1]) + ")",
            "(b=" + to_decimal(row.b.value()) +
                ", w=" + to_decimal(row.w.value()) + ")");
      }
    }
    return std::string();
  });

  run.check("transform-x", [&] {
    auto [x_new, y_new] = inner_transform(
        ref_x(), ref_y(),
        CirculantSpec::verified(VecZ::from_ints({1, 2, 3}, p)));
    (void)y_new;
    MatZ expected = MatZ::from_ints(
        {{4, 1, 7}, {10, 6, 1}, {1, 2, 3}, {1, 8, 2}, {4, 5, 10}}, p);
    return check_matrix(expected, x_new, "transformed X");
  });

  run.check("transform-y", [&] {
    auto [x_new, y_new] = inner_transform(
        ref_x(), ref_y(),
        CirculantSpec::verified(VecZ::from_ints({1, 2, 3}, p)));
    (void)x_new;
    MatZ expected = MatZ::from_ints(
        {{9, 8, 7, 9, 3}, {9, 10, 3, 3, 9}, {9, 8, 8, 7, 1}}, p);
    return check_matrix(expected, y_new, "transformed Y");
  });

  run.check("transform-k", [&] {
    auto [x_new, y_new] = inner_transform(
        ref_x(), ref_y(),
        CirculantSpec::verified(VecZ::from_ints({1, 2, 3}, p)));
    MatZ k_new = mat_mul(x_new, y_new);
    MatZ expected = MatZ::from_ints({{9, 10, 10, 0, 6},
                                     {10, 5, 8, 5, 8},
                                     {10, 8, 4, 3, 2},
                                     {0, 5, 3, 3, 0},
                                     {6, 8, 2, 0, 1}},
                                    p);
    std::string diff = check_matrix(expected, k_new, "transformed K");
    if (!diff.empty()) return diff;
    return check_matrix(mat_scale(ref_k(), Residue(3, p)), k_new,
                        "3 * K");
  });

  auto check_table = [&](std::uint32_t user,
                         const std::vector<TableEntry>& table) {
    TaBundle ta = ta_load(ref_x(), ref_y());
    UserKeySet keyset = expand_keyset(ta, user, ref_family());
    if (keyset.size() != table.size()) {
      return expected_got("key-set size", std::to_string(table.size()),
                      std::to_string(keyset.size()));
    }
    for (std::size_t k = 0; k < table.size(); ++k) {
      const KeySetEntry& entry = keyset.entries[k];
      VecZ secret = VecZ({BigInt(table[k].secret[0]), BigInt(table[k].secret[1]),
                          BigInt(table[k].secret[2])},
                         p);
      VecZ id = VecZ({BigInt(table[k].id[0]), BigInt(table[k].id[1]),
                      BigInt(table[k].id[2])},
                     p);
      if (entry.secret != secret || entry.public_id != id ||
          entry.scale.value() != table[k].scale) {
        return expected_got(
            "entry " + std::to_string(k + 1),
            vec_to_json(secret) + " / " + vec_to_json(id) + " / scale " +
                std::to_string(table[k].scale),
            vec_to_json(entry.secret) + " / " + vec_to_json(entry.public_id) +
                " / scale " + to_decimal(entry.scale.value()));
      }
    }
    return std::string();
  };

  run.check("keyset-user2", [&] { return check_table(2, ref_user2_table()); });
  run.check("keyset-user4", [&] { return check_table(4, ref_user4_table()); });

  run.check("randomized-walkthrough", [&] {
    TaBundle ta = ta_load(ref_x(), ref_y());
    UserKeySet alice = expand_keyset(ta, 2, ref_family());
    UserKeySet bob = expand_keyset(ta, 4, ref_family());
    PublishedBundle alice_pub = publish(alice, {2, 4}, 0, 3600);
    PublishedBundle bob_pub = publish(bob, {3, 5}, 0, 3600);

    // One side walks index 3 of its peer, the other index 4.
    Residue alice_raw = raw_key(alice, bob_pub.items[0]);
    Residue bob_raw = raw_key(bob, alice_pub.items[1]);
    if (alice_raw.value() != 3 || bob_raw.value() != 4) {
      return expected_got("raw keys", "3 / 4",
                      to_decimal(alice_raw.value()) + " / " +
                          to_decimal(bob_raw.value()));
    }
    Residue alice_final =
        final_key(alice_raw, alice.scale_at(1), alice.scale_at(3));
    Residue bob_final = final_key(bob_raw, bob.scale_at(1), bob.scale_at(4));
    if (alice_final.value() != 9 || bob_final.value() != 9) {
      return expected_got("final keys at common index 1", "9 / 9",
                      to_decimal(alice_final.value()) + " / " +
                          to_decimal(bob_final.value()));
    }
    Residue alice_final2 =
        final_key(alice_raw, alice.scale_at(2), alice.scale_at(3));
    Residue bob_final2 = final_key(bob_raw, bob.scale_at(2), bob.scale_at(4));
    if (alice_final2.value() != 5 || bob_final2.value() != 5) {
      return expected_got("final keys at common index 2", "5 / 5",
                      to_decimal(alice_final2.value()) + " / " +
                          to_decimal(bob_final2.value()));
    }
    return std::string();
  });

  run.check("inverse-anchor", [&] {
    Residue inv9 = mod_inv(Residue(9, p));
    if (inv9.value() != 5) {
      return expected_got("inverse of 9 mod 11", "5", to_decimal(inv9.value()));
    }
    return std::string();
  });

  run.check("scalar-groups", [&] {
    std::vector<CirculantSpec> group1 = scalar_family(solve3(Residue(2, p)), p);
    std::vector<CirculantSpec> group2 = scalar_family(solve3(Residue(1, p)), p);
    VecZ g1 = VecZ::from_ints({4, 8, 1}, p);
    VecZ g2 = VecZ::from_ints({6, 6, 8}, p);
    if (group1.size() != 10 || group1[3].first_row != g1) {
      return std::string("group of (1,2,3) misses the multiple (4,8,1)");
    }
    if (group2.size() != 10 || group2[5].first_row != g2) {
      return std::string("group of (1,1,5) misses the multiple (6,6,8)");
    }
    return std::string();
  });
}

}  // namespace

std::vector<std::string> reference_check_names() {
  Runner run{RefOptions{}, /*list_only=*/true};
  run_all(run);
  std::vector<std::string> names;
  for (const RefCheck& check : run.take()) names.push_back(check.name);
  return names;
}

std::vector<RefCheck> run_reference_checks(const RefOptions& options) {
  Runner run{options, /*list_only=*/false};
  run_all(run);
  return run.take();
}

}  // namespace keyset
