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

// Command-line front end over the shared-library C API. Exit codes:
// 0 success, 1 reference-check mismatch, 2 usage or data error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "keyset/keyset.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyMismatch = 1;
constexpr int kExitError = 2;

struct StringFree {
  void operator()(char* s) const { ks_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringFree>;

struct TaFree {
  void operator()(ks_ta* t) const { ks_ta_free(t); }
};
struct UserFree {
  void operator()(ks_user* u) const { ks_user_free(u); }
};
struct BundleFree {
  void operator()(ks_bundle* b) const { ks_bundle_free(b); }
};
struct SimFree {
  void operator()(ks_sim* s) const { ks_sim_free(s); }
};

[[noreturn]] void die(const std::string& where, ks_status status) {
  std::cerr << "keyset: " << where << ": " << ks_status_name(status) << ": "
            << ks_last_error() << "\n";
  std::exit(kExitError);
}

void require_ok(const std::string& where, ks_status status) {
  if (status != KS_OK) die(where, status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "keyset: cannot read " << path << "\n";
    std::exit(kExitError);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "keyset: cannot write " << path << "\n";
    std::exit(kExitError);
  }
  out << content;
}

// "1,2,3;4,8,1" -> [["1","2","3"],["4","8","1"]]
std::string rows_spec_to_json(const std::string& spec) {
  std::string out = "[";
  std::istringstream rows(spec);
  std::string row;
  bool first_row = true;
  while (std::getline(rows, row, ';')) {
    if (!first_row) out += ",";
    first_row = false;
    out += "[";
    std::istringstream cells(row);
    std::string cell;
    bool first_cell = true;
    while (std::getline(cells, cell, ',')) {
      if (!first_cell) out += ",";
      first_cell = false;
      out += "\"" + cell + "\"";
    }
    out += "]";
  }
  out += "]";
  return out;
}

std::vector<std::uint32_t> parse_index_list(const std::string& spec) {
  std::vector<std::uint32_t> out;
  std::istringstream cells(spec);
  std::string cell;
  while (std::getline(cells, cell, ',')) {
    try {
      out.push_back(static_cast<std::uint32_t>(std::stoul(cell)));
    } catch (const std::exception&) {
      std::cerr << "keyset: bad index \"" << cell << "\"\n";
      std::exit(kExitError);
    }
  }
  return out;
}

int cmd_setup(const std::string& p, std::uint32_t n, std::uint32_t m,
              std::uint64_t seed, std::uint32_t family_size,
              const std::string& family_rows, const std::string& load_x,
              const std::string& load_y, const std::string& out_path) {
  ks_ta* raw = nullptr;
  if (!load_x.empty() || !load_y.empty()) {
    if (load_x.empty() || load_y.empty()) {
      std::cerr << "keyset: --load-x and --load-y go together\n";
      return kExitError;
    }
    require_ok("setup", ks_ta_load(p.c_str(), read_file(load_x).c_str(),
                                   read_file(load_y).c_str(), &raw));
  } else {
    if (n == 0 || m == 0) {
      std::cerr << "keyset: setup needs --n and --m (or --load-x/--load-y)\n";
      return kExitError;
    }
    require_ok("setup", ks_ta_generate(p.c_str(), n, m, seed, &raw));
  }
  std::unique_ptr<ks_ta, TaFree> ta(raw);

  if (!family_rows.empty()) {
    require_ok("setup", ks_ta_set_family(
                            ta.get(), rows_spec_to_json(family_rows).c_str()));
  } else {
    require_ok("setup", ks_ta_set_family_auto(ta.get(), family_size));
  }

  char* json = nullptr;
  require_ok("setup", ks_ta_to_json(ta.get(), &json));
  OwnedString owned_json(json);
  write_file(out_path, owned_json.get());

  // K diagonal = per-user key scales.
  std::ostringstream scales;
  for (std::uint32_t user = 1; user <= ks_ta_users(ta.get()); ++user) {
    char* scale = nullptr;
    require_ok("setup", ks_ta_scale(ta.get(), user, &scale));
    OwnedString owned_scale(scale);
    if (user > 1) scales << " ";
    scales << owned_scale.get();
  }
  std::cout << scales.str() << "\n";
  return kExitOk;
}

int cmd_provision(const std::string& ta_path, std::uint32_t user,
                  std::uint32_t common_index, const std::string& out_path) {
  ks_ta* raw_ta = nullptr;
  require_ok("provision",
             ks_ta_from_json(read_file(ta_path).c_str(), &raw_ta));
  std::unique_ptr<ks_ta, TaFree> ta(raw_ta);

  ks_user* raw_user = nullptr;
  require_ok("provision",
             ks_provision(ta.get(), user, common_index, &raw_user));
  std::unique_ptr<ks_user, UserFree> provisioned(raw_user);

  char* json = nullptr;
  require_ok("provision", ks_user_to_json(provisioned.get(), &json));
  OwnedString owned(json);
  write_file(out_path, owned.get());
  return kExitOk;
}

int cmd_publish(const std::string& user_path, const std::string& indices_spec,
                std::uint32_t random_count, std::uint64_t seed,
                std::uint64_t from, std::uint64_t until,
                const std::string& out_path) {
  ks_user* raw_user = nullptr;
  require_ok("publish",
             ks_user_from_json(read_file(user_path).c_str(), &raw_user));
  std::unique_ptr<ks_user, UserFree> user(raw_user);

  ks_bundle* raw_bundle = nullptr;
  if (random_count > 0) {
    require_ok("publish", ks_publish_random(user.get(), random_count, from,
                                            until, seed, &raw_bundle));
  } else {
    std::vector<std::uint32_t> indices = parse_index_list(indices_spec);
    require_ok("publish",
               ks_publish(user.get(), indices.data(), indices.size(), from,
                          until, &raw_bundle));
  }
  std::unique_ptr<ks_bundle, BundleFree> bundle(raw_bundle);

  char* json = nullptr;
  require_ok("publish", ks_bundle_to_json(bundle.get(), &json));
  OwnedString owned(json);
  write_file(out_path, owned.get());
  return kExitOk;
}

int cmd_agree(const std::string& user_path, const std::string& bundle_path,
              const std::string& mode, std::uint32_t index,
              std::uint64_t choice_seed, std::uint64_t clock) {
  ks_user* raw_user = nullptr;
  require_ok("agree",
             ks_user_from_json(read_file(user_path).c_str(), &raw_user));
  std::unique_ptr<ks_user, UserFree> user(raw_user);

  ks_bundle* raw_bundle = nullptr;
  require_ok("agree",
             ks_bundle_from_json(read_file(bundle_path).c_str(), &raw_bundle));
  std::unique_ptr<ks_bundle, BundleFree> bundle(raw_bundle);

  char* key = nullptr;
  if (mode == "randomized") {
    require_ok("agree",
               ks_agree_randomized(user.get(), bundle.get(), choice_seed,
                                   clock, nullptr, nullptr, &key));
  } else if (mode == "aligned") {
    if (index == 0) {
      std::cerr << "keyset: aligned mode needs --index\n";
      return kExitError;
    }
    require_ok("agree",
               ks_agree_aligned(user.get(), index, bundle.get(), clock, &key));
  } else {
    std::cerr << "keyset: unknown mode \"" << mode << "\"\n";
    return kExitError;
  }
  OwnedString owned(key);
  std::cout << owned.get() << "\n";
  return kExitOk;
}

int cmd_simulate(const std::string& p, std::uint32_t users,
                 std::uint32_t key_len, std::uint32_t family_size,
                 std::uint32_t subset_size, std::uint64_t rotation,
                 std::uint32_t sessions, std::uint64_t seed,
                 const std::string& transcript_path) {
  ks_sim_config config{};
  config.p_dec = p.c_str();
  config.users = users;
  config.key_len = key_len;
  config.family_size = family_size;
  config.subset_size = subset_size;
  config.rotation_period = rotation;
  config.sessions = sessions;
  config.seed = seed;

  ks_sim* raw_sim = nullptr;
  require_ok("simulate", ks_simulate(&config, &raw_sim));
  std::unique_ptr<ks_sim, SimFree> sim(raw_sim);

  char* report = nullptr;
  require_ok("simulate", ks_sim_report(sim.get(), &report));
  OwnedString owned_report(report);
  std::cout << owned_report.get();

  if (!transcript_path.empty()) {
    char* transcript = nullptr;
    require_ok("simulate", ks_sim_transcript(sim.get(), &transcript));
    OwnedString owned_transcript(transcript);
    write_file(transcript_path, owned_transcript.get());
  }
  return kExitOk;
}

int cmd_verify(bool list, bool use_published_w) {
  char* report = nullptr;
  ks_status status =
      ks_verify_reference(list ? 1 : 0, use_published_w ? 1 : 0, &report);
  OwnedString owned(report);
  if (owned) std::cout << owned.get();
  if (status == KS_OK) return kExitOk;
  if (status == KS_ERR_VERIFY_FAILED) return kExitVerifyMismatch;
  die("verify-paper", status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"key-set toolkit: matrix-based pairwise keys over Z_p"};
  app.require_subcommand(1);

  // setup
  std::string setup_p, setup_family_rows, setup_load_x, setup_load_y,
      setup_out;
  std::uint32_t setup_n = 0, setup_m = 0, setup_family = 6;
  std::uint64_t setup_seed = 0;
  auto* setup =
      app.add_subcommand("setup", "create trusted-authority material");
  setup->add_option("--p", setup_p, "prime modulus (decimal)")->required();
  setup->add_option("--n", setup_n, "number of users");
  setup->add_option("--m", setup_m, "key length");
  setup->add_option("--seed", setup_seed, "generation seed");
  setup->add_option("--family", setup_family,
                    "auto-built family size (default 6)");
  setup->add_option("--family-rows", setup_family_rows,
                    "explicit family rows, e.g. \"1,2,3;4,8,1\"");
  setup->add_option("--load-x", setup_load_x, "JSON matrix file for X");
  setup->add_option("--load-y", setup_load_y, "JSON matrix file for Y");
  setup->add_option("--out", setup_out, "output TA file")->required();

  // provision
  std::string prov_ta, prov_out;
  std::uint32_t prov_user = 0, prov_common = 1;
  auto* provision =
      app.add_subcommand("provision", "derive one user's key-set file");
  provision->add_option("--ta", prov_ta, "TA file")->required();
  provision->add_option("--user", prov_user, "user index (1-based)")
      ->required();
  provision->add_option("--common-index", prov_common,
                        "node-local normalization index (default 1)");
  provision->add_option("--out", prov_out, "output user file")->required();

  // publish
  std::string pub_user, pub_indices, pub_out;
  std::uint32_t pub_random = 0;
  std::uint64_t pub_seed = 0, pub_from = 0, pub_until = 0;
  auto* publish =
      app.add_subcommand("publish", "advertise a subset of identifiers");
  publish->add_option("--user-file", pub_user, "user file")->required();
  publish->add_option("--indices", pub_indices,
                      "comma-separated family indices, e.g. 2,4");
  publish->add_option("--random", pub_random,
                      "publish a random subset of this size instead");
  publish->add_option("--seed", pub_seed, "subset seed for --random");
  publish->add_option("--from", pub_from, "validity start (seconds)");
  publish->add_option("--until", pub_until, "validity end, exclusive")
      ->required();
  publish->add_option("--out", pub_out, "output bundle file")->required();

  // agree
  std::string agree_user, agree_bundle, agree_mode = "randomized";
  std::uint32_t agree_index = 0;
  std::uint64_t agree_choice_seed = 0, agree_clock = 0;
  auto* agree = app.add_subcommand("agree", "derive the pairwise session key");
  agree->add_option("--user-file", agree_user, "own user file")->required();
  agree->add_option("--peer-bundle", agree_bundle, "peer bundle file")
      ->required();
  agree->add_option("--mode", agree_mode, "randomized (default) or aligned");
  agree->add_option("--index", agree_index, "announced index (aligned mode)");
  agree->add_option("--choice-seed", agree_choice_seed,
                    "peer-item choice seed (randomized mode)");
  agree->add_option("--clock", agree_clock, "current time in seconds");

  // simulate
  std::string sim_p = "11", sim_transcript;
  std::uint32_t sim_users = 5, sim_m = 3, sim_family = 6, sim_subset = 2,
                sim_sessions = 0;
  std::uint64_t sim_rotation = 60, sim_seed = 0;
  auto* simulate =
      app.add_subcommand("simulate", "run the deterministic multi-node sim");
  simulate->add_option("--p", sim_p, "prime modulus (default 11)");
  simulate->add_option("--n", sim_users, "node count (default 5)");
  simulate->add_option("--m", sim_m, "key length (default 3)");
  simulate->add_option("--family", sim_family, "family size (default 6)");
  simulate->add_option("--subset", sim_subset,
                       "published subset size (default 2)");
  simulate->add_option("--rotation", sim_rotation,
                       "subset rotation period in seconds (default 60)");
  simulate->add_option("--sessions", sim_sessions,
                       "session count (default: one per node pair)");
  simulate->add_option("--seed", sim_seed, "master seed");
  simulate->add_option("--transcript", sim_transcript,
                       "also write the transcript log to this file");

  // verify-paper
  bool verify_list = false, verify_published_w = false;
  auto* verify = app.add_subcommand(
      "verify-paper", "replay the built-in reference vectors");
  verify->add_flag("--list", verify_list,
                   "print the checklist without executing");
  verify->add_flag("--use-published-w", verify_published_w,
                   "assert the published (misprinted) weight for a=9");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (setup->parsed()) {
    return cmd_setup(setup_p, setup_n, setup_m, setup_seed, setup_family,
                     setup_family_rows, setup_load_x, setup_load_y, setup_out);
  }
  if (provision->parsed()) {
    return cmd_provision(prov_ta, prov_user, prov_common, prov_out);
  }
  if (publish->parsed()) {
    if (pub_indices.empty() && pub_random == 0) {
      std::cerr << "keyset: publish needs --indices or --random\n";
      return kExitError;
    }
    return cmd_publish(pub_user, pub_indices, pub_random, pub_seed, pub_from,
                       pub_until, pub_out);
  }
  if (agree->parsed()) {
    return cmd_agree(agree_user, agree_bundle, agree_mode, agree_index,
                     agree_choice_seed, agree_clock);
  }
  if (simulate->parsed()) {
    return cmd_simulate(sim_p, sim_users, sim_m, sim_family, sim_subset,
                        sim_rotation, sim_sessions, sim_seed, sim_transcript);
  }
  if (verify->parsed()) {
    return cmd_verify(verify_list, verify_published_w);
  }
  return kExitError;
}
