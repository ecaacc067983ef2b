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

#include "netsim.hpp"

#include <map>
#include <sstream>

#include "rng.hpp"

namespace keyset {

namespace {

constexpr std::uint64_t kTagTa = 0x7431;
constexpr std::uint64_t kTagCommon = 0x7432;
constexpr std::uint64_t kTagPublish = 0x7433;
constexpr std::uint64_t kTagChoice = 0x7434;

std::string session_marker(const char* type, std::uint32_t initiator,
                           std::uint32_t responder) {
  // No key material: just who talks to whom.
  return std::string("{\"format\":\"keyset-session-v1\",\"type\":\"") + type +
         "\",\"initiator\":\"" + std::to_string(initiator) +
         "\",\"responder\":\"" + std::to_string(responder) + "\"}";
}

void validate(const SimConfig& cfg) {
  if (cfg.users < 2) fail(KS_ERR_BAD_PARAMETER, "simulation needs >= 2 users");
  if (cfg.key_len < 1) fail(KS_ERR_BAD_PARAMETER, "key length must be >= 1");
  if (cfg.family_size < 1) {
    fail(KS_ERR_BAD_PARAMETER, "family size must be >= 1");
  }
  if (cfg.subset_size < 1 || cfg.subset_size > cfg.family_size) {
    fail(KS_ERR_BAD_PARAMETER,
         "subset size must lie in 1..family size");
  }
  if (cfg.rotation_period < 1) {
    fail(KS_ERR_BAD_PARAMETER, "rotation period must be >= 1 second");
  }
}

}  // namespace

SimResult run_sim(const SimConfig& config) {
  validate(config);
  const std::uint32_t n = config.users;
  const std::uint32_t pair_count = n * (n - 1) / 2;
  const std::uint32_t sessions =
      config.sessions == 0 ? pair_count : config.sessions;

  Modulus p(config.p);
  SimResult result{SimReport{config, 0, 0, 0, {}},
                   {},
                   TaBundle{p, 0, 0, MatZ(1, 1, p), MatZ(1, 1, p),
                            MatZ(1, 1, p)},
                   {},
                   {}};
  try {
    result.ta = ta_generate(p, n, config.key_len,
                            derive_seed(config.seed, kTagTa));
    result.family = default_family(p, config.key_len, config.family_size);
  } catch (const Error& e) {
    if (e.code() == KS_ERR_DEGENERATE || e.code() == KS_ERR_NO_SOLUTION) {
      fail(KS_ERR_PROVISIONING_FAILED,
           std::string("provisioning failed: ") + e.what());
    }
    throw;
  }

  const std::uint32_t common_index =
      1 + static_cast<std::uint32_t>(derive_seed(config.seed, kTagCommon) %
                                     config.family_size);
  result.report.common_index = common_index;

  result.keysets.reserve(n);
  for (std::uint32_t user = 1; user <= n; ++user) {
    result.keysets.push_back(expand_keyset(result.ta, user, result.family));
  }

  std::uint32_t seq = 0;
  std::vector<PublishedBundle> current;
  current.reserve(n);
  auto publish_all = [&](std::uint64_t now, std::uint64_t period) {
    current.clear();
    for (std::uint32_t user = 1; user <= n; ++user) {
      std::vector<std::uint32_t> indices =
          random_subset(result.keysets[user - 1], config.subset_size,
                        derive_seed(config.seed, kTagPublish, user, period));
      PublishedBundle bundle =
          publish(result.keysets[user - 1], indices, now,
                  now + config.rotation_period);
      result.transcript.events.push_back(TranscriptEvent{
          now, seq++, user, std::nullopt, bundle_to_json(bundle)});
      current.push_back(std::move(bundle));
    }
  };

  publish_all(0, 0);
  std::uint64_t published_period = 0;

  for (std::uint32_t session = 1; session <= sessions; ++session) {
    const std::uint64_t now = session;
    const std::uint64_t period = now / config.rotation_period;
    if (period > published_period) {
      publish_all(period * config.rotation_period, period);
      published_period = period;
    }

    // Round-robin over unordered pairs in lexicographic order.
    std::uint32_t k = (session - 1) % pair_count;
    std::uint32_t initiator = 1;
    while (k >= n - initiator) {
      k -= n - initiator;
      ++initiator;
    }
    const std::uint32_t responder = initiator + k + 1;

    result.transcript.events.push_back(
        TranscriptEvent{now, seq++, initiator, responder,
                        session_marker("open", initiator, responder)});
    SessionOutcome outcome{session, initiator, responder, false, BigInt(0),
                           ""};
    try {
      AgreementContext a = randomized_agree(
          result.keysets[initiator - 1], common_index, current[responder - 1],
          derive_seed(config.seed, kTagChoice, initiator, session), now,
          Role::initiator);
      AgreementContext b = randomized_agree(
          result.keysets[responder - 1], common_index, current[initiator - 1],
          derive_seed(config.seed, kTagChoice, responder, session), now,
          Role::responder);
      if (a.final_key == b.final_key) {
        outcome.agreed = true;
        outcome.key = a.final_key.value();
      } else {
        outcome.failure = "final keys differ";
      }
    } catch (const Error& e) {
      outcome.failure = e.what();
    }
    result.transcript.events.push_back(
        TranscriptEvent{now, seq++, responder, initiator,
                        session_marker("accept", initiator, responder)});

    result.report.sessions_run++;
    if (outcome.agreed) result.report.agreed++;
    result.report.outcomes.push_back(std::move(outcome));
  }

  return result;
}

std::string report_text(const SimReport& report) {
  std::ostringstream out;
  out << "keyset-sim-report-v1\n";
  out << "p: " << to_decimal(report.config.p) << "\n";
  out << "users: " << report.config.users << "\n";
  out << "key_len: " << report.config.key_len << "\n";
  out << "family: " << report.config.family_size << "\n";
  out << "subset: " << report.config.subset_size << "\n";
  out << "rotation: " << report.config.rotation_period << "\n";
  out << "seed: " << report.config.seed << "\n";
  out << "common_index: " << report.common_index << "\n";

  std::map<std::pair<std::uint32_t, std::uint32_t>,
           std::pair<BigInt, std::uint32_t>>
      pairs;
  for (const SessionOutcome& o : report.outcomes) {
    if (!o.agreed) {
      out << "failure " << o.initiator << "-" << o.responder << " (session "
          << o.session << "): " << o.failure << "\n";
      continue;
    }
    auto [it, fresh] = pairs.try_emplace(std::make_pair(o.initiator,
                                                        o.responder),
                                         o.key, 0);
    it->second.second++;
    if (!fresh && it->second.first != o.key) {
      // Same pair, same run, different key: surface it rather than hide it.
      out << "inconsistent key for pair " << o.initiator << "-" << o.responder
          << " at session " << o.session << "\n";
    }
  }
  for (const auto& [pair, info] : pairs) {
    out << "pair " << pair.first << "-" << pair.second << ": key "
        << to_decimal(info.first) << " (" << info.second
        << (info.second == 1 ? " session" : " sessions") << ")\n";
  }
  out << report.agreed << "/" << report.sessions_run << " agreements\n";
  return out.str();
}

std::string transcript_to_log(const Transcript& transcript) {
  std::ostringstream out;
  for (const TranscriptEvent& e : transcript.events) {
    out << e.time << " " << e.sender << " ";
    if (e.receiver) {
      out << *e.receiver;
    } else {
      out << "*";
    }
    out << " " << base64_encode(e.payload) << "\n";
  }
  return out.str();
}

Transcript transcript_from_log(const std::string& text) {
  Transcript out;
  std::istringstream in(text);
  std::string line;
  std::uint32_t seq = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::uint64_t time = 0;
    std::string sender, receiver, payload64;
    if (!(fields >> time >> sender >> receiver >> payload64)) {
      fail(KS_ERR_PARSE,
           "transcript line " + std::to_string(line_no) + " is malformed");
    }
    TranscriptEvent event{time, seq++, 0, std::nullopt, ""};
    event.sender = static_cast<std::uint32_t>(
        parse_decimal(sender).convert_to<std::uint64_t>());
    if (receiver != "*") {
      event.receiver = static_cast<std::uint32_t>(
          parse_decimal(receiver).convert_to<std::uint64_t>());
    }
    event.payload = base64_decode(payload64);
    out.events.push_back(std::move(event));
  }
  return out;
}

void audit_transcript(const Transcript& transcript, const TaBundle& ta,
                      const std::vector<CirculantSpec>& family,
                      const std::vector<UserKeySet>& keysets) {
  struct Needle {
    std::string bytes;
    std::string what;
  };
  std::vector<Needle> needles;
  for (const UserKeySet& keyset : keysets) {
    for (const KeySetEntry& entry : keyset.entries) {
      needles.push_back(Needle{vec_to_json(entry.secret),
                               "secret vector of user " +
                                   std::to_string(keyset.user) + " index " +
                                   std::to_string(entry.index)});
      needles.push_back(Needle{
          "\"scale\":\"" + to_decimal(entry.scale.value()) + "\"",
          "scale of user " + std::to_string(keyset.user) + " index " +
              std::to_string(entry.index)});
    }
  }
  // Every session key any pair could derive: w_k * K_ij, labeled.
  for (std::uint32_t i = 1; i <= ta.users; ++i) {
    for (std::uint32_t j = i + 1; j <= ta.users; ++j) {
      Residue base(ta.k.at(i - 1, j - 1), ta.p);
      for (const CirculantSpec& spec : family) {
        Residue key = base * spec.weight;
        needles.push_back(Needle{
            "\"key\":\"" + to_decimal(key.value()) + "\"",
            "session key of pair " + std::to_string(i) + "-" +
                std::to_string(j)});
      }
    }
  }

  for (std::size_t idx = 0; idx < transcript.events.size(); ++idx) {
    const std::string& payload = transcript.events[idx].payload;
    for (const Needle& needle : needles) {
      if (payload.find(needle.bytes) != std::string::npos) {
        fail(KS_ERR_LEAK_DETECTED,
             "event " + std::to_string(idx) + " leaks " + needle.what, idx);
      }
    }
  }
}

}  // namespace keyset
