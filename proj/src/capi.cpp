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

// The extern-C surface. Handles own plain core values; all failures are
// reported as status codes with the detail message parked in a
// thread-local slot for ks_last_error().

#include "keyset/keyset.h"

#include <cstring>
#include <sstream>
#include <string>

#include "netsim.hpp"
#include "refcheck.hpp"

struct ks_ta {
  keyset::TaBundle ta;
  std::vector<keyset::CirculantSpec> family;
};

struct ks_user {
  keyset::UserKeySet keyset;
  std::uint32_t common_index;
};

struct ks_bundle {
  keyset::PublishedBundle bundle;
};

struct ks_sim {
  keyset::SimResult result;
};

namespace {

thread_local std::string t_last_error;

ks_status record(const keyset::Error& e) {
  t_last_error = e.what();
  return e.code();
}

ks_status record_unexpected(const std::exception& e) {
  t_last_error = e.what();
  return KS_ERR_INTERNAL;
}

template <typename Fn>
ks_status guarded(Fn&& fn) {
  try {
    fn();
    return KS_OK;
  } catch (const keyset::Error& e) {
    return record(e);
  } catch (const std::exception& e) {
    return record_unexpected(e);
  }
}

ks_status null_argument(const char* what) {
  t_last_error = std::string(what) + " must not be NULL";
  return KS_ERR_NULL_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

keyset::Modulus parse_modulus(const char* p_dec) {
  return keyset::Modulus(keyset::parse_decimal(p_dec));
}

const keyset::KeySetEntry& entry_or_fail(const ks_user* user,
                                         uint32_t family_index) {
  return user->keyset.entry(family_index);
}

}  // namespace

extern "C" {

const char* ks_version(void) { return "0.1.0"; }

const char* ks_status_name(ks_status status) {
  switch (status) {
    case KS_OK: return "KS_OK";
    case KS_ERR_NULL_ARGUMENT: return "KS_ERR_NULL_ARGUMENT";
    case KS_ERR_BAD_PARAMETER: return "KS_ERR_BAD_PARAMETER";
    case KS_ERR_PARSE: return "KS_ERR_PARSE";
    case KS_ERR_NOT_PRIME: return "KS_ERR_NOT_PRIME";
    case KS_ERR_ZERO_NOT_INVERTIBLE: return "KS_ERR_ZERO_NOT_INVERTIBLE";
    case KS_ERR_DIMENSION_MISMATCH: return "KS_ERR_DIMENSION_MISMATCH";
    case KS_ERR_MODULUS_MISMATCH: return "KS_ERR_MODULUS_MISMATCH";
    case KS_ERR_NOT_SQUARE: return "KS_ERR_NOT_SQUARE";
    case KS_ERR_NOT_SYMMETRIC: return "KS_ERR_NOT_SYMMETRIC";
    case KS_ERR_ZERO_SCALE: return "KS_ERR_ZERO_SCALE";
    case KS_ERR_DEGENERATE: return "KS_ERR_DEGENERATE";
    case KS_ERR_INDEX_OUT_OF_RANGE: return "KS_ERR_INDEX_OUT_OF_RANGE";
    case KS_ERR_EMPTY_ROW: return "KS_ERR_EMPTY_ROW";
    case KS_ERR_SHIFT_OUT_OF_RANGE: return "KS_ERR_SHIFT_OUT_OF_RANGE";
    case KS_ERR_NOT_ORTHOGONAL: return "KS_ERR_NOT_ORTHOGONAL";
    case KS_ERR_ZERO_WEIGHT: return "KS_ERR_ZERO_WEIGHT";
    case KS_ERR_NO_SOLUTION: return "KS_ERR_NO_SOLUTION";
    case KS_ERR_SINGULAR: return "KS_ERR_SINGULAR";
    case KS_ERR_UNKNOWN_INDEX: return "KS_ERR_UNKNOWN_INDEX";
    case KS_ERR_DUPLICATE_INDEX: return "KS_ERR_DUPLICATE_INDEX";
    case KS_ERR_EMPTY_SUBSET: return "KS_ERR_EMPTY_SUBSET";
    case KS_ERR_EXPIRED_BUNDLE: return "KS_ERR_EXPIRED_BUNDLE";
    case KS_ERR_PROVISIONING_FAILED: return "KS_ERR_PROVISIONING_FAILED";
    case KS_ERR_LEAK_DETECTED: return "KS_ERR_LEAK_DETECTED";
    case KS_ERR_VERIFY_FAILED: return "KS_ERR_VERIFY_FAILED";
    case KS_ERR_INTERNAL: return "KS_ERR_INTERNAL";
  }
  return "KS_ERR_UNKNOWN";
}

const char* ks_last_error(void) { return t_last_error.c_str(); }

void ks_string_free(char* s) { delete[] s; }

/* ---------------- trusted authority ---------------- */

ks_status ks_ta_generate(const char* p_dec, uint32_t users, uint32_t key_len,
                         uint64_t seed, ks_ta** out) {
  if (!p_dec) return null_argument("p_dec");
  if (!out) return null_argument("out");
  return guarded([&] {
    keyset::Modulus p = parse_modulus(p_dec);
    auto* handle = new ks_ta{
        keyset::ta_generate(p, users, key_len, seed),
        {keyset::CirculantSpec::identity(key_len, p)}};
    *out = handle;
  });
}

ks_status ks_ta_load(const char* p_dec, const char* x_json, const char* y_json,
                     ks_ta** out) {
  if (!p_dec) return null_argument("p_dec");
  if (!x_json) return null_argument("x_json");
  if (!y_json) return null_argument("y_json");
  if (!out) return null_argument("out");
  return guarded([&] {
    keyset::Modulus p = parse_modulus(p_dec);
    keyset::MatZ x = keyset::matrix_from_json(x_json, p);
    keyset::MatZ y = keyset::matrix_from_json(y_json, p);
    keyset::TaBundle ta = keyset::ta_load(x, y);
    std::uint32_t key_len = ta.key_len;
    *out = new ks_ta{std::move(ta),
                     {keyset::CirculantSpec::identity(key_len, p)}};
  });
}

ks_status ks_ta_from_json(const char* json, ks_ta** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  return guarded([&] {
    keyset::TaFile file = keyset::ta_file_from_json(json);
    *out = new ks_ta{std::move(file.ta), std::move(file.family)};
  });
}

ks_status ks_ta_to_json(const ks_ta* ta, char** out_json) {
  if (!ta) return null_argument("ta");
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    *out_json =
        dup_string(keyset::ta_file_to_json(keyset::TaFile{ta->ta, ta->family}));
  });
}

void ks_ta_free(ks_ta* ta) { delete ta; }

ks_status ks_ta_set_family_auto(ks_ta* ta, uint32_t family_size) {
  if (!ta) return null_argument("ta");
  return guarded([&] {
    ta->family =
        keyset::default_family(ta->ta.p, ta->ta.key_len, family_size);
  });
}

ks_status ks_ta_set_family(ks_ta* ta, const char* rows_json) {
  if (!ta) return null_argument("ta");
  if (!rows_json) return null_argument("rows_json");
  return guarded([&] {
    std::vector<keyset::CirculantSpec> family =
        keyset::family_from_json(rows_json, ta->ta.p);
    for (const keyset::CirculantSpec& spec : family) {
      if (spec.first_row.size() != ta->ta.key_len) {
        keyset::fail(KS_ERR_DIMENSION_MISMATCH,
                     "family rows must have the key length");
      }
    }
    ta->family = std::move(family);
  });
}

uint32_t ks_ta_users(const ks_ta* ta) { return ta ? ta->ta.users : 0; }
uint32_t ks_ta_key_len(const ks_ta* ta) { return ta ? ta->ta.key_len : 0; }
uint32_t ks_ta_family_size(const ks_ta* ta) {
  return ta ? static_cast<uint32_t>(ta->family.size()) : 0;
}

ks_status ks_ta_modulus(const ks_ta* ta, char** out_dec) {
  if (!ta) return null_argument("ta");
  if (!out_dec) return null_argument("out_dec");
  return guarded(
      [&] { *out_dec = dup_string(keyset::to_decimal(ta->ta.p.value())); });
}

ks_status ks_ta_scale(const ks_ta* ta, uint32_t user, char** out_dec) {
  if (!ta) return null_argument("ta");
  if (!out_dec) return null_argument("out_dec");
  return guarded([&] {
    *out_dec = dup_string(
        keyset::to_decimal(keyset::key_scale(ta->ta, user).value()));
  });
}

/* ---------------- provisioning ---------------- */

ks_status ks_provision(const ks_ta* ta, uint32_t user, uint32_t common_index,
                       ks_user** out) {
  if (!ta) return null_argument("ta");
  if (!out) return null_argument("out");
  return guarded([&] {
    keyset::UserKeySet keyset_value =
        keyset::expand_keyset(ta->ta, user, ta->family);
    if (common_index < 1 || common_index > keyset_value.size()) {
      keyset::fail(KS_ERR_UNKNOWN_INDEX,
                   "common index " + std::to_string(common_index) +
                       " outside the family",
                   common_index);
    }
    *out = new ks_user{std::move(keyset_value), common_index};
  });
}

ks_status ks_user_from_json(const char* json, ks_user** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  return guarded([&] {
    keyset::UserFile file = keyset::user_file_from_json(json);
    *out = new ks_user{std::move(file.keyset), file.common_index};
  });
}

ks_status ks_user_to_json(const ks_user* user, char** out_json) {
  if (!user) return null_argument("user");
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    *out_json = dup_string(keyset::user_file_to_json(
        keyset::UserFile{user->keyset, user->common_index}));
  });
}

void ks_user_free(ks_user* user) { delete user; }

uint32_t ks_user_index(const ks_user* user) {
  return user ? user->keyset.user : 0;
}
uint32_t ks_user_common_index(const ks_user* user) {
  return user ? user->common_index : 0;
}
uint32_t ks_user_entries(const ks_user* user) {
  return user ? user->keyset.size() : 0;
}

ks_status ks_user_scale(const ks_user* user, uint32_t family_index,
                        char** out_dec) {
  if (!user) return null_argument("user");
  if (!out_dec) return null_argument("out_dec");
  return guarded([&] {
    *out_dec = dup_string(
        keyset::to_decimal(entry_or_fail(user, family_index).scale.value()));
  });
}

/* ---------------- publication ---------------- */

ks_status ks_publish(const ks_user* user, const uint32_t* indices,
                     size_t count, uint64_t valid_from, uint64_t valid_until,
                     ks_bundle** out) {
  if (!user) return null_argument("user");
  if (!indices && count > 0) return null_argument("indices");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::vector<uint32_t> index_list(indices, indices + count);
    *out = new ks_bundle{
        keyset::publish(user->keyset, index_list, valid_from, valid_until)};
  });
}

ks_status ks_publish_random(const ks_user* user, uint32_t count,
                            uint64_t valid_from, uint64_t valid_until,
                            uint64_t seed, ks_bundle** out) {
  if (!user) return null_argument("user");
  if (!out) return null_argument("out");
  return guarded([&] {
    std::vector<uint32_t> indices =
        keyset::random_subset(user->keyset, count, seed);
    *out = new ks_bundle{
        keyset::publish(user->keyset, indices, valid_from, valid_until)};
  });
}

ks_status ks_bundle_from_json(const char* json, ks_bundle** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  return guarded(
      [&] { *out = new ks_bundle{keyset::bundle_from_json(json)}; });
}

ks_status ks_bundle_to_json(const ks_bundle* bundle, char** out_json) {
  if (!bundle) return null_argument("bundle");
  if (!out_json) return null_argument("out_json");
  return guarded(
      [&] { *out_json = dup_string(keyset::bundle_to_json(bundle->bundle)); });
}

void ks_bundle_free(ks_bundle* bundle) { delete bundle; }

uint32_t ks_bundle_items(const ks_bundle* bundle) {
  return bundle ? static_cast<uint32_t>(bundle->bundle.items.size()) : 0;
}

/* ---------------- agreement ---------------- */

ks_status ks_agree_randomized(const ks_user* user, const ks_bundle* peer,
                              uint64_t choice_seed, uint64_t clock_now,
                              uint32_t* chosen_index, char** raw_key,
                              char** final_key) {
  if (!user) return null_argument("user");
  if (!peer) return null_argument("peer");
  return guarded([&] {
    keyset::AgreementContext ctx = keyset::randomized_agree(
        user->keyset, user->common_index, peer->bundle, choice_seed,
        clock_now);
    if (chosen_index) *chosen_index = ctx.chosen_index;
    if (raw_key) {
      *raw_key = dup_string(keyset::to_decimal(ctx.raw_key.value()));
    }
    if (final_key) {
      *final_key = dup_string(keyset::to_decimal(ctx.final_key.value()));
    }
  });
}

ks_status ks_agree_aligned(const ks_user* user, uint32_t announced_index,
                           const ks_bundle* peer, uint64_t clock_now,
                           char** key) {
  if (!user) return null_argument("user");
  if (!peer) return null_argument("peer");
  if (!key) return null_argument("key");
  return guarded([&] {
    if (!peer->bundle.valid_at(clock_now)) {
      keyset::fail(KS_ERR_EXPIRED_BUNDLE,
                   "peer bundle not valid at clock " +
                       std::to_string(clock_now));
    }
    const keyset::PublishedItem* item = nullptr;
    for (const keyset::PublishedItem& candidate : peer->bundle.items) {
      if (candidate.index == announced_index) {
        item = &candidate;
        break;
      }
    }
    if (!item) {
      keyset::fail(KS_ERR_UNKNOWN_INDEX,
                   "peer bundle does not publish index " +
                       std::to_string(announced_index),
                   announced_index);
    }
    keyset::Residue result =
        keyset::aligned_agree(user->keyset, announced_index, item->id);
    *key = dup_string(keyset::to_decimal(result.value()));
  });
}

/* ---------------- simulation ---------------- */

ks_status ks_simulate(const ks_sim_config* config, ks_sim** out) {
  if (!config) return null_argument("config");
  if (!config->p_dec) return null_argument("config->p_dec");
  if (!out) return null_argument("out");
  return guarded([&] {
    keyset::SimConfig cfg;
    cfg.p = keyset::parse_decimal(config->p_dec);
    cfg.users = config->users;
    cfg.key_len = config->key_len;
    cfg.family_size = config->family_size;
    cfg.subset_size = config->subset_size;
    cfg.rotation_period = config->rotation_period;
    cfg.sessions = config->sessions;
    cfg.seed = config->seed;
    *out = new ks_sim{keyset::run_sim(cfg)};
  });
}

ks_status ks_sim_report(const ks_sim* sim, char** out_text) {
  if (!sim) return null_argument("sim");
  if (!out_text) return null_argument("out_text");
  return guarded([&] {
    *out_text = dup_string(keyset::report_text(sim->result.report));
  });
}

ks_status ks_sim_transcript(const ks_sim* sim, char** out_text) {
  if (!sim) return null_argument("sim");
  if (!out_text) return null_argument("out_text");
  return guarded([&] {
    *out_text = dup_string(keyset::transcript_to_log(sim->result.transcript));
  });
}

uint32_t ks_sim_sessions(const ks_sim* sim) {
  return sim ? sim->result.report.sessions_run : 0;
}

uint32_t ks_sim_agreed(const ks_sim* sim) {
  return sim ? sim->result.report.agreed : 0;
}

ks_status ks_sim_audit(const ks_sim* sim, const char* transcript_text,
                       uint64_t* leak_event) {
  if (!sim) return null_argument("sim");
  try {
    if (transcript_text) {
      keyset::Transcript parsed =
          keyset::transcript_from_log(transcript_text);
      keyset::audit_transcript(parsed, sim->result.ta, sim->result.family,
                               sim->result.keysets);
    } else {
      keyset::audit_transcript(sim->result.transcript, sim->result.ta,
                               sim->result.family, sim->result.keysets);
    }
    return KS_OK;
  } catch (const keyset::Error& e) {
    if (e.code() == KS_ERR_LEAK_DETECTED && leak_event) {
      *leak_event = e.detail();
    }
    return record(e);
  } catch (const std::exception& e) {
    return record_unexpected(e);
  }
}

ks_status ks_sim_secret_json(const ks_sim* sim, uint32_t user,
                             uint32_t family_index, char** out_json) {
  if (!sim) return null_argument("sim");
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    if (user < 1 || user > sim->result.keysets.size()) {
      keyset::fail(KS_ERR_INDEX_OUT_OF_RANGE,
                   "user " + std::to_string(user) + " not in the simulation",
                   user);
    }
    const keyset::KeySetEntry& entry =
        sim->result.keysets[user - 1].entry(family_index);
    *out_json = dup_string(keyset::vec_to_json(entry.secret));
  });
}

ks_status ks_sim_pair_key(const ks_sim* sim, uint32_t i, uint32_t j,
                          char** out_dec) {
  if (!sim) return null_argument("sim");
  if (!out_dec) return null_argument("out_dec");
  return guarded([&] {
    for (const keyset::SessionOutcome& outcome : sim->result.report.outcomes) {
      const bool match = (outcome.initiator == i && outcome.responder == j) ||
                         (outcome.initiator == j && outcome.responder == i);
      if (match && outcome.agreed) {
        *out_dec = dup_string(keyset::to_decimal(outcome.key));
        return;
      }
    }
    keyset::fail(KS_ERR_UNKNOWN_INDEX,
                 "no agreed session for pair " + std::to_string(i) + "-" +
                     std::to_string(j));
  });
}

void ks_sim_free(ks_sim* sim) { delete sim; }

/* ---------------- reference vectors ---------------- */

ks_status ks_verify_reference(int list_only, int use_published_w,
                              char** out_report) {
  try {
    std::ostringstream out;
    if (list_only) {
      for (const std::string& name : keyset::reference_check_names()) {
        out << name << "\n";
      }
      if (out_report) *out_report = dup_string(out.str());
      return KS_OK;
    }
    keyset::RefOptions options;
    options.use_published_w = use_published_w != 0;
    bool all_pass = true;
    for (const keyset::RefCheck& check :
         keyset::run_reference_checks(options)) {
      if (check.pass) {
        out << "ok " << check.name << "\n";
      } else {
        all_pass = false;
        out << "FAIL " << check.name << ": " << check.note << "\n";
      }
    }
    if (out_report) *out_report = dup_string(out.str());
    if (!all_pass) {
      t_last_error = "one or more reference checks failed";
      return KS_ERR_VERIFY_FAILED;
    }
    return KS_OK;
  } catch (const keyset::Error& e) {
    return record(e);
  } catch (const std::exception& e) {
    return record_unexpected(e);
  }
}

}  // extern "C"
