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

// The two pairwise agreement protocols.
//
// Aligned: one party announces a family index v; both evaluate their secret
// at v against the peer identifier at v and obtain w_v * K_ij directly.
//
// Randomized: each party publishes a time-limited random subset of its
// (index, identifier) pairs. A party picks any published peer index v,
// computes the raw key secret(v) . peer_id(v), and normalizes it by
// S(common) / S(v) using its own scales. Both sides land on
// w_common * K_ij without ever announcing v — the common index is
// node-local configuration fixed at provisioning and never sent.

#ifndef KEYSET_PROTOCOL_HPP
#define KEYSET_PROTOCOL_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "keyset.hpp"

namespace keyset {

// Wire-side identifier entry: index plus the canonical residue values of the
// published identifier. Plain integers, since the receiving side interprets
// them under its own modulus.
struct PublishedItem {
  std::uint32_t index;
  std::vector<BigInt> id;
};

// A user's advertised subset, effective for clock values in
// [valid_from, valid_until). Carries public identifiers only.
struct PublishedBundle {
  std::uint32_t user;
  std::vector<PublishedItem> items;
  std::uint64_t valid_from;
  std::uint64_t valid_until;

  bool valid_at(std::uint64_t clock) const {
    return clock >= valid_from && clock < valid_until;
  }
};

// Pre-communication announcement of the aligned protocol.
struct AlignedAnnounce {
  std::uint32_t index;
};

using HandshakeMessage = std::variant<AlignedAnnounce, PublishedBundle>;

enum class Role { initiator, responder };

// One party's view of a finished randomized agreement.
struct AgreementContext {
  Role role;
  std::uint32_t common_index;
  std::uint32_t chosen_index;  // the peer-published index this party used
  Residue raw_key;
  Residue final_key;  // raw * S(common) / S(chosen)
};

// Exposes the listed indices (nonempty, distinct, all present) with the
// given validity window. Item order follows the argument order.
PublishedBundle publish(const UserKeySet& keyset,
                        const std::vector<std::uint32_t>& indices,
                        std::uint64_t valid_from, std::uint64_t valid_until);

// Seeded-uniform choice of `count` distinct indices, returned ascending.
std::vector<std::uint32_t> random_subset(const UserKeySet& keyset,
                                         std::uint32_t count,
                                         std::uint64_t seed);

// Inner product of the own secret at the item's index with the published
// peer identifier. KS_ERR_UNKNOWN_INDEX when the own key set lacks it.
Residue raw_key(const UserKeySet& keyset, const PublishedItem& peer_item);

// raw * scale_common / scale_current. KS_ERR_ZERO_NOT_INVERTIBLE when
// scale_current is 0.
Residue final_key(const Residue& raw, const Residue& scale_common,
                  const Residue& scale_current);

// Full randomized flow against a peer bundle: validity check, seeded-uniform
// item choice, raw key, normalization with the own scales.
AgreementContext randomized_agree(const UserKeySet& own,
                                  std::uint32_t common_index,
                                  const PublishedBundle& peer,
                                  std::uint64_t choice_seed,
                                  std::uint64_t clock,
                                  Role role = Role::initiator);

// Aligned flow: evaluate the own secret at the announced index against the
// peer identifier published for that index.
Residue aligned_agree(const UserKeySet& own, std::uint32_t announced_index,
                      const std::vector<BigInt>& peer_id_at_index);

// Builds the announcement after checking the index exists locally.
AlignedAnnounce make_aligned_announce(const UserKeySet& own,
                                      std::uint32_t index);

}  // namespace keyset

#endif  // KEYSET_PROTOCOL_HPP
