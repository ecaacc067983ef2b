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

// Deterministic in-memory multi-node simulation. One logical event loop on
// a virtual clock: provisioning at t = 0, bundle publication at every
// rotation boundary, and one round-robin pairwise session per tick. The
// message bus is lossless and instantaneous; the point is to validate the
// agreement algebra and the information exposed on the wire, not fault
// tolerance. The whole run — report and transcript — is a pure function of
// the configuration.
//
// Seed derivation (see rng.hpp): the trusted authority uses tag 0x7431, the
// network-wide common index tag 0x7432, per-node subset draws
// (0x7433, node, period), and per-session choices (0x7434, node, session).

#ifndef KEYSET_NETSIM_HPP
#define KEYSET_NETSIM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "serial.hpp"

namespace keyset {

struct SimConfig {
  BigInt p = 11;
  std::uint32_t users = 5;
  std::uint32_t key_len = 3;
  std::uint32_t family_size = 6;
  std::uint32_t subset_size = 2;
  std::uint64_t rotation_period = 60;  // seconds of virtual time
  std::uint32_t sessions = 0;          // 0 = one session per node pair
  std::uint64_t seed = 0;
};

// One captured message. `receiver` empty = broadcast. Events are strictly
// ordered by (time, seq).
struct TranscriptEvent {
  std::uint64_t time;
  std::uint32_t seq;
  std::uint32_t sender;
  std::optional<std::uint32_t> receiver;
  std::string payload;
};

struct Transcript {
  std::vector<TranscriptEvent> events;
};

struct SessionOutcome {
  std::uint32_t session;  // 1-based
  std::uint32_t initiator;
  std::uint32_t responder;
  bool agreed;
  BigInt key;           // the agreed final key when agreed
  std::string failure;  // reason when not
};

struct SimReport {
  SimConfig config;
  std::uint32_t common_index = 0;
  std::uint32_t sessions_run = 0;
  std::uint32_t agreed = 0;
  std::vector<SessionOutcome> outcomes;
};

// Everything a run produced, including the omniscient view needed for
// post-hoc auditing: the TA material, the family, and all key sets.
struct SimResult {
  SimReport report;
  Transcript transcript;
  TaBundle ta;
  std::vector<CirculantSpec> family;
  std::vector<UserKeySet> keysets;  // index 0 = user 1
};

// KS_ERR_PROVISIONING_FAILED when the TA draw degenerates or the family
// cannot reach the requested size at this modulus.
SimResult run_sim(const SimConfig& config);

// Human-readable, deterministic report. Contains the "A/B agreements" line.
std::string report_text(const SimReport& report);

// Line format: "<time> <sender> <receiver|*> <base64 payload>".
std::string transcript_to_log(const Transcript& transcript);
Transcript transcript_from_log(const std::string& text);

// Scans every payload for secret material: the serialized secret vector of
// any user (a JSON array like ["1","9","2"]), any labeled scale value
// ("scale":"<dec>"), and any labeled session key ("key":"<dec>") matching
// w_k * K_ij for some family index and pair. Throws KS_ERR_LEAK_DETECTED
// with detail = 0-based event index on the first hit.
//
// Caveat: matching is byte-level, so at toy moduli a published identifier
// that happens to equal some secret vector is reported as a leak.
void audit_transcript(const Transcript& transcript, const TaBundle& ta,
                      const std::vector<CirculantSpec>& family,
                      const std::vector<UserKeySet>& keysets);

}  // namespace keyset

#endif  // KEYSET_NETSIM_HPP
