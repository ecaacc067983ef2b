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

#include "serial.hpp"

#include <json.hpp>

#include <limits>
#include <set>

namespace keyset {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kTaFormat = "keyset-ta-v1";
constexpr const char* kUserFormat = "keyset-user-v1";
constexpr const char* kBundleFormat = "keyset-bundle-v1";
constexpr const char* kHandshakeFormat = "keyset-handshake-v1";

Json parse_json(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    fail(KS_ERR_PARSE, std::string(what) + ": malformed JSON");
  }
  return j;
}

const Json& field(const Json& j, const char* name, const char* what) {
  auto it = j.find(name);
  if (it == j.end()) {
    fail(KS_ERR_PARSE,
         std::string(what) + ": missing field \"" + name + "\"");
  }
  return *it;
}

std::string string_field(const Json& j, const char* name, const char* what) {
  const Json& f = field(j, name, what);
  if (!f.is_string()) {
    fail(KS_ERR_PARSE,
         std::string(what) + ": field \"" + name + "\" must be a string");
  }
  return f.get<std::string>();
}

void check_format(const Json& j, const char* expected, const char* what) {
  if (string_field(j, "format", what) != expected) {
    fail(KS_ERR_PARSE, std::string(what) + ": expected format \"" + expected +
                           "\", got \"" + j["format"].get<std::string>() +
                           "\"");
  }
}

BigInt big_field(const Json& j, const char* name, const char* what) {
  return parse_decimal(string_field(j, name, what));
}

std::uint64_t u64_field(const Json& j, const char* name, const char* what) {
  BigInt v = big_field(j, name, what);
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    fail(KS_ERR_PARSE,
         std::string(what) + ": field \"" + name + "\" exceeds 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

std::uint32_t u32_field(const Json& j, const char* name, const char* what) {
  BigInt v = big_field(j, name, what);
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    fail(KS_ERR_PARSE,
         std::string(what) + ": field \"" + name + "\" exceeds 32 bits");
  }
  return v.convert_to<std::uint32_t>();
}

Json vec_json(const VecZ& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_decimal(v.at(i)));
  return out;
}

Json raw_vec_json(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const BigInt& e : v) out.push_back(to_decimal(e));
  return out;
}

std::vector<BigInt> raw_vec_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    fail(KS_ERR_PARSE, std::string(what) + ": expected a nonempty array");
  }
  std::vector<BigInt> out;
  out.reserve(j.size());
  for (const Json& e : j) {
    if (!e.is_string()) {
      fail(KS_ERR_PARSE,
           std::string(what) + ": entries must be decimal strings");
    }
    out.push_back(parse_decimal(e.get<std::string>()));
  }
  return out;
}

Json matrix_json(const MatZ& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_json(m.row(r)));
  return out;
}

MatZ matrix_from(const Json& j, const Modulus& p, const char* what) {
  if (!j.is_array() || j.empty()) {
    fail(KS_ERR_PARSE, std::string(what) + ": expected a nonempty matrix");
  }
  std::vector<std::vector<BigInt>> rows;
  rows.reserve(j.size());
  for (const Json& row : j) rows.push_back(raw_vec_from_json(row, what));
  return MatZ::from_rows(rows, p);
}

}  // namespace

std::string vec_to_json(const VecZ& v) { return vec_json(v).dump(); }

std::string ta_file_to_json(const TaFile& file) {
  Json j;
  j["format"] = kTaFormat;
  j["p"] = to_decimal(file.ta.p.value());
  j["n"] = std::to_string(file.ta.users);
  j["m"] = std::to_string(file.ta.key_len);
  j["x"] = matrix_json(file.ta.x);
  j["y"] = matrix_json(file.ta.y);
  Json family = Json::array();
  for (const CirculantSpec& spec : file.family) {
    family.push_back(vec_json(spec.first_row));
  }
  j["family"] = family;
  return j.dump();
}

TaFile ta_file_from_json(const std::string& text) {
  const char* what = kTaFormat;
  Json j = parse_json(text, what);
  check_format(j, kTaFormat, what);
  Modulus p(big_field(j, "p", what));
  MatZ x = matrix_from(field(j, "x", what), p, what);
  MatZ y = matrix_from(field(j, "y", what), p, what);
  if (x.rows() != u32_field(j, "n", what) ||
      x.cols() != u32_field(j, "m", what)) {
    fail(KS_ERR_PARSE, std::string(what) + ": n/m do not match the matrices");
  }
  TaBundle ta = ta_load(x, y);

  const Json& family_json = field(j, "family", what);
  if (!family_json.is_array() || family_json.empty()) {
    fail(KS_ERR_PARSE, std::string(what) + ": family must be nonempty");
  }
  std::vector<CirculantSpec> family;
  family.reserve(family_json.size());
  for (const Json& row : family_json) {
    family.push_back(
        CirculantSpec::verified(VecZ(raw_vec_from_json(row, what), p)));
  }
  if (!family.front().is_identity()) {
    fail(KS_ERR_PARSE, std::string(what) + ": family row 1 must be identity");
  }
  return TaFile{std::move(ta), std::move(family)};
}

std::string user_file_to_json(const UserFile& file) {
  Json j;
  j["format"] = kUserFormat;
  j["p"] = to_decimal(file.keyset.p.value());
  j["user"] = std::to_string(file.keyset.user);
  j["common_index"] = std::to_string(file.common_index);
  Json entries = Json::array();
  for (const KeySetEntry& entry : file.keyset.entries) {
    Json e;
    e["index"] = std::to_string(entry.index);
    e["secret"] = vec_json(entry.secret);
    e["id"] = vec_json(entry.public_id);
    e["scale"] = to_decimal(entry.scale.value());
    entries.push_back(std::move(e));
  }
  j["entries"] = entries;
  return j.dump();
}

UserFile user_file_from_json(const std::string& text) {
  const char* what = kUserFormat;
  Json j = parse_json(text, what);
  check_format(j, kUserFormat, what);
  Modulus p(big_field(j, "p", what));
  UserKeySet keyset{u32_field(j, "user", what), p, {}};
  const Json& entries = field(j, "entries", what);
  if (!entries.is_array() || entries.empty()) {
    fail(KS_ERR_PARSE, std::string(what) + ": entries must be nonempty");
  }
  std::uint32_t expected_index = 0;
  for (const Json& e : entries) {
    ++expected_index;
    if (u32_field(e, "index", what) != expected_index) {
      fail(KS_ERR_PARSE,
           std::string(what) + ": entry indices must run 1..N in order");
    }
    VecZ secret(raw_vec_from_json(field(e, "secret", what), what), p);
    VecZ id(raw_vec_from_json(field(e, "id", what), what), p);
    Residue scale(big_field(e, "scale", what), p);
    if (scale.is_zero() || scale != inner_product(secret, id)) {
      fail(KS_ERR_PARSE, std::string(what) + ": entry " +
                             std::to_string(expected_index) +
                             " scale does not match secret . id");
    }
    keyset.entries.push_back(KeySetEntry{expected_index, std::move(secret),
                                         std::move(id), std::move(scale)});
  }
  std::uint32_t common_index = u32_field(j, "common_index", what);
  if (common_index < 1 || common_index > keyset.size()) {
    fail(KS_ERR_PARSE, std::string(what) + ": common_index outside key set");
  }
  return UserFile{std::move(keyset), common_index};
}

std::string bundle_to_json(const PublishedBundle& bundle) {
  Json j;
  j["format"] = kBundleFormat;
  j["user"] = std::to_string(bundle.user);
  Json items = Json::array();
  for (const PublishedItem& item : bundle.items) {
    Json e;
    e["index"] = std::to_string(item.index);
    e["id"] = raw_vec_json(item.id);
    items.push_back(std::move(e));
  }
  j["items"] = items;
  j["valid_from"] = std::to_string(bundle.valid_from);
  j["valid_until"] = std::to_string(bundle.valid_until);
  return j.dump();
}

PublishedBundle bundle_from_json(const std::string& text) {
  const char* what = kBundleFormat;
  Json j = parse_json(text, what);
  check_format(j, kBundleFormat, what);
  PublishedBundle bundle{u32_field(j, "user", what),
                         {},
                         u64_field(j, "valid_from", what),
                         u64_field(j, "valid_until", what)};
  if (bundle.valid_from >= bundle.valid_until) {
    fail(KS_ERR_PARSE, std::string(what) + ": empty validity window");
  }
  const Json& items = field(j, "items", what);
  if (!items.is_array() || items.empty()) {
    fail(KS_ERR_EMPTY_SUBSET, std::string(what) + ": no published items");
  }
  std::set<std::uint32_t> seen;
  for (const Json& e : items) {
    std::uint32_t index = u32_field(e, "index", what);
    if (!seen.insert(index).second) {
      fail(KS_ERR_DUPLICATE_INDEX,
           std::string(what) + ": index " + std::to_string(index) +
               " appears twice",
           index);
    }
    bundle.items.push_back(PublishedItem{
        index, raw_vec_from_json(field(e, "id", what), what)});
  }
  return bundle;
}

std::string handshake_to_json(const HandshakeMessage& message) {
  Json j;
  j["format"] = kHandshakeFormat;
  if (const auto* announce = std::get_if<AlignedAnnounce>(&message)) {
    j["type"] = "aligned-announce";
    j["index"] = std::to_string(announce->index);
  } else {
    j["type"] = "published-bundle";
    j["bundle"] =
        Json::parse(bundle_to_json(std::get<PublishedBundle>(message)));
  }
  return j.dump();
}

HandshakeMessage handshake_from_json(const std::string& text) {
  const char* what = kHandshakeFormat;
  Json j = parse_json(text, what);
  check_format(j, kHandshakeFormat, what);
  std::string type = string_field(j, "type", what);
  if (type == "aligned-announce") {
    return AlignedAnnounce{u32_field(j, "index", what)};
  }
  if (type == "published-bundle") {
    return bundle_from_json(field(j, "bundle", what).dump());
  }
  fail(KS_ERR_PARSE, std::string(what) + ": unknown type \"" + type + "\"");
}

MatZ matrix_from_json(const std::string& text, const Modulus& p) {
  return matrix_from(parse_json(text, "matrix"), p, "matrix");
}

std::vector<CirculantSpec> family_from_json(const std::string& text,
                                            const Modulus& p) {
  Json j = parse_json(text, "family");
  if (!j.is_array() || j.empty()) {
    fail(KS_ERR_PARSE, "family: expected a nonempty array of rows");
  }
  std::vector<CirculantSpec> family;
  family.reserve(j.size() + 1);
  for (const Json& row : j) {
    VecZ first_row(raw_vec_from_json(row, "family"), p);
    if (family.empty() && !first_row.is_unit()) {
      family.push_back(
          CirculantSpec::identity(static_cast<std::uint32_t>(first_row.size()),
                                  p));
    }
    family.push_back(CirculantSpec::verified(std::move(first_row)));
  }
  return family;
}

namespace {
constexpr const char* kBase64Alphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

std::string base64_encode(std::string_view bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  while (i + 3 <= bytes.size()) {
    unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                 (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                 static_cast<unsigned char>(bytes[i + 2]);
    out.push_back(kBase64Alphabet[(v >> 18) & 63]);
    out.push_back(kBase64Alphabet[(v >> 12) & 63]);
    out.push_back(kBase64Alphabet[(v >> 6) & 63]);
    out.push_back(kBase64Alphabet[v & 63]);
    i += 3;
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    unsigned v = static_cast<unsigned char>(bytes[i]) << 16;
    out.push_back(kBase64Alphabet[(v >> 18) & 63]);
    out.push_back(kBase64Alphabet[(v >> 12) & 63]);
    out.append("==");
  } else if (rest == 2) {
    unsigned v = (static_cast<unsigned char>(bytes[i]) << 16) |
                 (static_cast<unsigned char>(bytes[i + 1]) << 8);
    out.push_back(kBase64Alphabet[(v >> 18) & 63]);
    out.push_back(kBase64Alphabet[(v >> 12) & 63]);
    out.push_back(kBase64Alphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::string base64_decode(std::string_view text) {
  static const auto value_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  if (text.size() % 4 != 0) {
    fail(KS_ERR_PARSE, "base64 length must be a multiple of 4");
  }
  std::string out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int pad = 0;
    unsigned v = 0;
    for (int k = 0; k < 4; ++k) {
      char c = text[i + k];
      if (c == '=') {
        if (i + 4 != text.size() || k < 2) {
          fail(KS_ERR_PARSE, "base64 padding only allowed at the end");
        }
        ++pad;
        v <<= 6;
        continue;
      }
      if (pad > 0) fail(KS_ERR_PARSE, "base64 data after padding");
      int d = value_of(c);
      if (d < 0) fail(KS_ERR_PARSE, "invalid base64 character");
      v = (v << 6) | static_cast<unsigned>(d);
    }
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    if (pad < 2) out.push_back(static_cast<char>((v >> 8) & 0xff));
    if (pad < 1) out.push_back(static_cast<char>(v & 0xff));
  }
  return out;
}

}  // namespace keyset
