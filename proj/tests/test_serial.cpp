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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>

#include "serial.hpp"
#include "test_util.hpp"

using namespace keyset;
using kt::code_of;

TEST_CASE("trusted-authority files round-trip") {
  TaFile file{kt::example_bundle(), kt::example_family()};
  std::string text = ta_file_to_json(file);

  SUBCASE("self-describing and canonical") {
    auto j = nlohmann::json::parse(text);
    CHECK(j["format"] == "keyset-ta-v1");
    CHECK(j["p"] == "11");
    CHECK(j["n"] == "5");
    CHECK(j["m"] == "3");
    CHECK(j["x"][1] == nlohmann::json::parse(R"(["1","9","2"])"));
    CHECK(ta_file_to_json(file) == text);  // byte-stable
  }

  SUBCASE("parses back to the same material") {
    TaFile back = ta_file_from_json(text);
    CHECK(back.ta.x == file.ta.x);
    CHECK(back.ta.y == file.ta.y);
    CHECK(back.ta.k == file.ta.k);
    REQUIRE(back.family.size() == file.family.size());
    for (std::size_t i = 0; i < file.family.size(); ++i) {
      CHECK(back.family[i].first_row == file.family[i].first_row);
      CHECK(back.family[i].weight == file.family[i].weight);
    }
    CHECK(ta_file_to_json(back) == text);
  }

  SUBCASE("rejects tampering") {
    CHECK(code_of([&] { ta_file_from_json("nonsense"); }) == KS_ERR_PARSE);
    auto j = nlohmann::ordered_json::parse(text);
    j["format"] = "keyset-ta-v2";
    CHECK(code_of([&] { ta_file_from_json(j.dump()); }) == KS_ERR_PARSE);

    auto j2 = nlohmann::ordered_json::parse(text);
    j2["n"] = "4";
    CHECK(code_of([&] { ta_file_from_json(j2.dump()); }) == KS_ERR_PARSE);

    auto j3 = nlohmann::ordered_json::parse(text);
    j3["family"][1] = nlohmann::json::parse(R"(["1","1","1"])");
    CHECK(code_of([&] { ta_file_from_json(j3.dump()); }) ==
          KS_ERR_NOT_ORTHOGONAL);

    auto j4 = nlohmann::ordered_json::parse(text);
    j4["p"] = "12";
    CHECK(code_of([&] { ta_file_from_json(j4.dump()); }) == KS_ERR_NOT_PRIME);
  }
}

TEST_CASE("user files round-trip") {
  TaBundle ta = kt::example_bundle();
  UserFile file{expand_keyset(ta, 2, kt::example_family()), 1};
  std::string text = user_file_to_json(file);

  SUBCASE("contents") {
    auto j = nlohmann::json::parse(text);
    CHECK(j["format"] == "keyset-user-v1");
    CHECK(j["user"] == "2");
    CHECK(j["common_index"] == "1");
    REQUIRE(j["entries"].size() == 6);
    CHECK(j["entries"][1]["secret"] ==
          nlohmann::json::parse(R"(["10","6","1"])"));
    CHECK(j["entries"][1]["id"] == nlohmann::json::parse(R"(["8","10","8"])"));
    CHECK(j["entries"][1]["scale"] == "5");
  }

  SUBCASE("parses back") {
    UserFile back = user_file_from_json(text);
    CHECK(back.common_index == 1);
    CHECK(back.keyset.user == 2);
    REQUIRE(back.keyset.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(back.keyset.entries[k].secret == file.keyset.entries[k].secret);
      CHECK(back.keyset.entries[k].public_id ==
            file.keyset.entries[k].public_id);
      CHECK(back.keyset.entries[k].scale == file.keyset.entries[k].scale);
    }
    CHECK(user_file_to_json(back) == text);
  }

  SUBCASE("the file carries only this user's material") {
    // No identifier or secret of another user appears in the bytes.
    UserKeySet bob = expand_keyset(ta, 4, kt::example_family());
    for (const KeySetEntry& entry : bob.entries) {
      CHECK(text.find(vec_to_json(entry.secret)) == std::string::npos);
      CHECK(text.find(vec_to_json(entry.public_id)) == std::string::npos);
    }
  }

  SUBCASE("a tampered scale is caught on load") {
    auto j = nlohmann::ordered_json::parse(text);
    j["entries"][2]["scale"] = "7";  // true value is 3
    CHECK(code_of([&] { user_file_from_json(j.dump()); }) == KS_ERR_PARSE);

    auto j2 = nlohmann::ordered_json::parse(text);
    j2["entries"][0]["index"] = "3";
    CHECK(code_of([&] { user_file_from_json(j2.dump()); }) == KS_ERR_PARSE);

    auto j3 = nlohmann::ordered_json::parse(text);
    j3["common_index"] = "9";
    CHECK(code_of([&] { user_file_from_json(j3.dump()); }) == KS_ERR_PARSE);
  }
}

TEST_CASE("bundle files round-trip and stay clean") {
  TaBundle ta = kt::example_bundle();
  UserKeySet alice = expand_keyset(ta, 2, kt::example_family());
  PublishedBundle bundle = publish(alice, {2, 4}, 0, 3600);
  std::string text = bundle_to_json(bundle);

  SUBCASE("contents and round trip") {
    auto j = nlohmann::json::parse(text);
    CHECK(j["format"] == "keyset-bundle-v1");
    CHECK(j["user"] == "2");
    CHECK(j["valid_from"] == "0");
    CHECK(j["valid_until"] == "3600");
    REQUIRE(j["items"].size() == 2);
    CHECK(j["items"][0]["index"] == "2");
    CHECK(j["items"][0]["id"] == nlohmann::json::parse(R"(["8","10","8"])"));

    PublishedBundle back = bundle_from_json(text);
    CHECK(back.user == bundle.user);
    CHECK(back.valid_from == bundle.valid_from);
    CHECK(back.valid_until == bundle.valid_until);
    REQUIRE(back.items.size() == bundle.items.size());
    for (std::size_t i = 0; i < back.items.size(); ++i) {
      CHECK(back.items[i].index == bundle.items[i].index);
      CHECK(back.items[i].id == bundle.items[i].id);
    }
    CHECK(bundle_to_json(back) == text);
  }

  SUBCASE("the serialized form carries no secret material") {
    auto j = nlohmann::json::parse(text);
    // Exactly the public fields, nothing else.
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    CHECK(keys == std::vector<std::string>{"format", "items", "user",
                                           "valid_from", "valid_until"});
    for (const auto& item : j["items"]) {
      std::vector<std::string> item_keys;
      for (auto it = item.begin(); it != item.end(); ++it) {
        item_keys.push_back(it.key());
      }
      std::sort(item_keys.begin(), item_keys.end());
      CHECK(item_keys == std::vector<std::string>{"id", "index"});
    }
    CHECK(text.find("secret") == std::string::npos);
    CHECK(text.find("scale") == std::string::npos);
    // No secret vector of the owner leaks into the bytes.
    for (const KeySetEntry& entry : alice.entries) {
      CHECK(text.find(vec_to_json(entry.secret)) == std::string::npos);
    }
  }

  SUBCASE("rejects malformed bundles") {
    CHECK(code_of([&] { bundle_from_json("{}"); }) == KS_ERR_PARSE);
    auto j = nlohmann::ordered_json::parse(text);
    j["items"] = nlohmann::json::array();
    CHECK(code_of([&] { bundle_from_json(j.dump()); }) == KS_ERR_EMPTY_SUBSET);

    auto j2 = nlohmann::ordered_json::parse(text);
    j2["items"][1]["index"] = "2";
    CHECK(code_of([&] { bundle_from_json(j2.dump()); }) ==
          KS_ERR_DUPLICATE_INDEX);

    auto j3 = nlohmann::ordered_json::parse(text);
    j3["valid_until"] = "0";
    CHECK(code_of([&] { bundle_from_json(j3.dump()); }) == KS_ERR_PARSE);
  }
}

TEST_CASE("handshake messages") {
  TaBundle ta = kt::example_bundle();
  UserKeySet alice = expand_keyset(ta, 2, kt::example_family());

  SUBCASE("aligned announcement") {
    HandshakeMessage msg = make_aligned_announce(alice, 3);
    std::string text = handshake_to_json(msg);
    auto j = nlohmann::json::parse(text);
    CHECK(j["format"] == "keyset-handshake-v1");
    CHECK(j["type"] == "aligned-announce");
    CHECK(j["index"] == "3");
    // The announcement carries the index and nothing else.
    CHECK(j.size() == 3);

    HandshakeMessage back = handshake_from_json(text);
    REQUIRE(std::holds_alternative<AlignedAnnounce>(back));
    CHECK(std::get<AlignedAnnounce>(back).index == 3);
  }

  SUBCASE("published bundle") {
    HandshakeMessage msg = publish(alice, {2, 4}, 5, 60);
    std::string text = handshake_to_json(msg);
    HandshakeMessage back = handshake_from_json(text);
    REQUIRE(std::holds_alternative<PublishedBundle>(back));
    const PublishedBundle& bundle = std::get<PublishedBundle>(back);
    CHECK(bundle.user == 2);
    CHECK(bundle.items.size() == 2);
    CHECK(bundle.valid_from == 5);
    CHECK(bundle.valid_until == 60);
    CHECK(handshake_to_json(back) == text);
  }

  SUBCASE("unknown type") {
    CHECK(code_of([&] {
            handshake_from_json(
                R"({"format":"keyset-handshake-v1","type":"hello"})");
          }) == KS_ERR_PARSE);
  }
}

TEST_CASE("bare matrix and family parsing") {
  const Modulus& p = kt::mod11();
  MatZ m = matrix_from_json(R"([["1","2"],["3","4"]])", p);
  CHECK(m == MatZ::from_ints({{1, 2}, {3, 4}}, p));

  CHECK(code_of([&] { matrix_from_json("[]", p); }) == KS_ERR_PARSE);
  CHECK(code_of([&] { matrix_from_json(R"([["1"],["2","3"]])", p); }) ==
        KS_ERR_DIMENSION_MISMATCH);
  CHECK(code_of([&] { matrix_from_json(R"([[1,2]])", p); }) == KS_ERR_PARSE);

  SUBCASE("family rows get the identity prepended") {
    std::vector<CirculantSpec> family =
        family_from_json(R"([["1","2","3"],["4","8","1"]])", p);
    REQUIRE(family.size() == 3);
    CHECK(family[0].is_identity());
    CHECK(family[1].first_row == kt::vec({1, 2, 3}, p));
    CHECK(family[2].first_row == kt::vec({4, 8, 1}, p));

    std::vector<CirculantSpec> explicit_identity =
        family_from_json(R"([["1","0","0"],["1","2","3"]])", p);
    CHECK(explicit_identity.size() == 2);

    CHECK(code_of([&] { family_from_json(R"([["1","1","1"]])", p); }) ==
          KS_ERR_NOT_ORTHOGONAL);
  }
}

TEST_CASE("base64") {
  CHECK(base64_encode("") == "");
  CHECK(base64_encode("f") == "Zg==");
  CHECK(base64_encode("fo") == "Zm8=");
  CHECK(base64_encode("foo") == "Zm9v");
  CHECK(base64_encode("foobar") == "Zm9vYmFy");
  CHECK(base64_decode("Zm9vYmFy") == "foobar");

  std::string binary;
  for (int i = 0; i < 256; ++i) binary.push_back(static_cast<char>(i));
  CHECK(base64_decode(base64_encode(binary)) == binary);

  CHECK(code_of([] { base64_decode("abc"); }) == KS_ERR_PARSE);
  CHECK(code_of([] { base64_decode("a=bc"); }) == KS_ERR_PARSE);
  CHECK(code_of([] { base64_decode("ab!c"); }) == KS_ERR_PARSE);
}
