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

#include "protocol.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "rng.hpp"

namespace keyset {

PublishedBundle publish(const UserKeySet& keyset,
                        const std::vector<std::uint32_t>& indices,
                        std::uint64_t valid_from, std::uint64_t valid_until) {
  if (indices.empty()) {
    fail(KS_ERR_EMPTY_SUBSET, "refusing to publish an empty subset");
  }
  if (valid_from >= valid_until) {
    fail(KS_ERR_BAD_PARAMETER, "validity window [from, until) is empty");
  }
  std::set<std::uint32_t> seen;
  PublishedBundle bundle{keyset.user, {}, valid_from, valid_until};
  bundle.items.reserve(indices.size());
  for (std::uint32_t index : indices) {
    if (!seen.insert(index).second) {
      fail(KS_ERR_DUPLICATE_INDEX,
           "index " + std::to_string(index) + " listed twice", index);
    }
    const KeySetEntry& entry = keyset.entry(index);
    bundle.items.push_back(PublishedItem{index, entry.public_id.values()});
  }
  return bundle;
}

std::vector<std::uint32_t> random_subset(const UserKeySet& keyset,
                                         std::uint32_t count,
                                         std::uint64_t seed) {
  if (count == 0) fail(KS_ERR_EMPTY_SUBSET, "subset size must be >= 1");
  if (count > keyset.size()) {
    fail(KS_ERR_BAD_PARAMETER,
         "subset size " + std::to_string(count) + " exceeds key-set size " +
             std::to_string(keyset.size()));
  }
  std::vector<std::uint32_t> indices(keyset.size());
  std::iota(indices.begin(), indices.end(), 1);
  std::mt19937_64 gen(seed);
  for (std::size_t i = indices.size() - 1; i > 0; --i) {
    std::swap(indices[i], indices[gen() % (i + 1)]);
  }
  indices.resize(count);
  std::sort(indices.begin(), indices.end());
  return indices;
}

Residue raw_key(const UserKeySet& keyset, const PublishedItem& peer_item) {
  const KeySetEntry& entry = keyset.entry(peer_item.index);
  VecZ peer_id(peer_item.id, keyset.p);
  return inner_product(entry.secret, peer_id);
}

Residue final_key(const Residue& raw, const Residue& scale_common,
                  const Residue& scale_current) {
  if (scale_current.is_zero()) {
    fail(KS_ERR_ZERO_NOT_INVERTIBLE,
         "current-index scale is 0 and cannot normalize");
  }
  return raw * scale_common * mod_inv(scale_current);
}

AgreementContext randomized_agree(const UserKeySet& own,
                                  std::uint32_t common_index,
                                  const PublishedBundle& peer,
                                  std::uint64_t choice_seed,
                                  std::uint64_t clock, Role role) {
  if (peer.items.empty()) {
    fail(KS_ERR_EMPTY_SUBSET, "peer bundle contains no identifiers");
  }
  if (!peer.valid_at(clock)) {
    fail(KS_ERR_EXPIRED_BUNDLE,
         "peer bundle valid in [" + std::to_string(peer.valid_from) + ", " +
             std::to_string(peer.valid_until) + "), clock is " +
             std::to_string(clock));
  }
  const Residue scale_common = own.scale_at(common_index);
  for (const PublishedItem& item : peer.items) {
    if (!own.has_index(item.index)) {
      fail(KS_ERR_UNKNOWN_INDEX,
           "peer published index " + std::to_string(item.index) +
               " outside the provisioned family",
           item.index);
    }
  }

  std::mt19937_64 gen(choice_seed);
  const PublishedItem& chosen = peer.items[gen() % peer.items.size()];

  Residue raw = raw_key(own, chosen);
  Residue final = final_key(raw, scale_common, own.scale_at(chosen.index));
  return AgreementContext{role, common_index, chosen.index, std::move(raw),
                          std::move(final)};
}

Residue aligned_agree(const UserKeySet& own, std::uint32_t announced_index,
                      const std::vector<BigInt>& peer_id_at_index) {
  return raw_key(own, PublishedItem{announced_index, peer_id_at_index});
}

AlignedAnnounce make_aligned_announce(const UserKeySet& own,
                                      std::uint32_t index) {
  own.entry(index);  // existence check
  return AlignedAnnounce{index};
}

}  // namespace keyset
