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

// On-disk and on-wire formats. Files are JSON with a self-describing
// "format" field ("keyset-ta-v1", "keyset-user-v1", "keyset-bundle-v1").
// Every integer — modulus, matrix entries, counts, indices, validity
// seconds — is serialized as a decimal string so arbitrary-precision values
// survive without binary ambiguity; matrices are row-major arrays of
// arrays. Writers emit fields in a fixed order, so equal values produce
// byte-identical files.

#ifndef KEYSET_SERIAL_HPP
#define KEYSET_SERIAL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "protocol.hpp"

namespace keyset {

// Trusted-authority file: the secret matrices plus the public R family.
struct TaFile {
  TaBundle ta;
  std::vector<CirculantSpec> family;
};

// Per-user provisioning file: the full key set and the node-local common
// index. Never contains other users' columns.
struct UserFile {
  UserKeySet keyset;
  std::uint32_t common_index;
};

std::string ta_file_to_json(const TaFile& file);
TaFile ta_file_from_json(const std::string& text);

std::string user_file_to_json(const UserFile& file);
UserFile user_file_from_json(const std::string& text);

std::string bundle_to_json(const PublishedBundle& bundle);
PublishedBundle bundle_from_json(const std::string& text);

std::string handshake_to_json(const HandshakeMessage& message);
HandshakeMessage handshake_from_json(const std::string& text);

// Bare matrix / family-row parsing for externally supplied JSON
// (arrays of arrays of decimal strings).
MatZ matrix_from_json(const std::string& text, const Modulus& p);
std::vector<CirculantSpec> family_from_json(const std::string& text,
                                            const Modulus& p);

// JSON array of decimal strings for one residue vector, e.g. ["1","9","2"].
std::string vec_to_json(const VecZ& v);

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);

}  // namespace keyset

#endif  // KEYSET_SERIAL_HPP
