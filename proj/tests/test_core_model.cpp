// Copyright 2026 The Fedcache Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "fed/core/catalog_json.hpp"
#include "fed/core/model.hpp"
#include "fed/core/ops.hpp"

using namespace fed::core;

namespace {

std::string pattern_bytes(std::size_t n, std::uint32_t seed = 0x5eed) {
  std::string out(n, '\0');
  std::uint32_t x = seed;
  for (std::size_t i = 0; i < n; ++i) {
    x = x * 1664525u + 1013904223u;  // LCG, fast and deterministic
    out[i] = static_cast<char>(x >> 24);
  }
  return out;
}

CatalogBuildInput small_input() {
  CatalogBuildInput input;
  input.tree["/frames/O2/a.gwf"] = "aaaa-frame-data";
  input.tree["/frames/O2/b.gwf"] = "bbbb-frame-data";
  input.acl_spec["/frames"] = "ligo";
  input.acl_groups["ligo"] = {"/DC=org/CN=alice", "/DC=org/CN=bob"};
  input.chunk_size = 4;
  return input;
}

}  // namespace

TEST_CASE("logical path normalization") {
  CHECK(LogicalPath::normalize("/a/b/c").str() == "/a/b/c");
  CHECK(LogicalPath::normalize("a//b/./c/").str() == "/a/b/c");
  CHECK(LogicalPath::normalize("/a/b/../c").str() == "/a/c");
  CHECK(LogicalPath::normalize("/../..").str() == "/");
  CHECK(LogicalPath::normalize("").str() == "/");

  // Idempotence over assorted raw inputs.
  std::mt19937 rng(42);
  const std::string pieces[] = {"/", "a", "..", ".", "b", "//", "frames", "x1"};
  for (int i = 0; i < 200; ++i) {
    std::string raw;
    int n = static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) raw += pieces[rng() % std::size(pieces)];
    auto once = LogicalPath::normalize(raw);
    CHECK(LogicalPath::normalize(once.str()) == once);
    CHECK(once.str()[0] == '/');
  }
}

TEST_CASE("logical path prefix semantics") {
  auto p = LogicalPath::normalize("/a/b");
  CHECK(p.is_under(LogicalPath::normalize("/a")));
  CHECK(p.is_under(p));
  CHECK(p.is_under(LogicalPath::normalize("/")));
  CHECK_FALSE(LogicalPath::normalize("/a/bc").is_under(LogicalPath::normalize("/a/b")));
  CHECK(std::string(p.remainder(LogicalPath::normalize("/a"))) == "/b");
}

TEST_CASE("chunk_file tiles a 437 MB file into 14 chunks") {
  // Independent arithmetic oracle for the chunk layout.
  const std::uint64_t size = 437000000;
  const std::uint64_t chunk_size = 33554432;
  const std::uint64_t expected_count = (size + chunk_size - 1) / chunk_size;
  CHECK(expected_count == 14);

  std::string content = pattern_bytes(size);
  auto chunks = chunk_file(content, chunk_size);
  REQUIRE(chunks.size() == expected_count);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    CHECK(chunks[i].offset == i * chunk_size);
    total += chunks[i].size;
  }
  CHECK(total == size);
  CHECK(chunks.back().size == size - 13 * chunk_size);
  CHECK(chunks.back().size == 792384);
}

TEST_CASE("chunk_file arithmetic for 400 MB and empty content") {
  const std::uint64_t chunk_size = 33554432;
  CHECK((400000000ull + chunk_size - 1) / chunk_size == 12);
  std::string content = pattern_bytes(400000000);
  CHECK(chunk_file(content, chunk_size).size() == 12);
  CHECK(chunk_file("", chunk_size).empty());
}

TEST_CASE("chunk tiling property over random sizes") {
  std::mt19937_64 rng(7);
  const std::uint64_t chunk_size = 97;  // odd size to exercise remainders
  for (int round = 0; round < 300; ++round) {
    std::uint64_t size = rng() % (10 * chunk_size + 1);
    std::string content = pattern_bytes(size, static_cast<std::uint32_t>(round));
    auto chunks = chunk_file(content, chunk_size);
    CHECK(chunks.size() == (size == 0 ? 0 : (size + chunk_size - 1) / chunk_size));
    std::uint64_t offset = 0;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      CHECK(chunks[i].offset == offset);
      if (i + 1 < chunks.size()) CHECK(chunks[i].size == chunk_size);
      offset += chunks[i].size;
    }
    CHECK(offset == size);

    // Digest stability: same bytes, same digests.
    auto again = chunk_file(content, chunk_size);
    CHECK(again == chunks);
  }
}

TEST_CASE("chunks_for_range maps byte ranges to chunk indices") {
  auto entry = make_file_entry(LogicalPath::normalize("/f"), pattern_bytes(1000), 100, "g");
  auto span = chunks_for_range(entry, 0, 1000);
  REQUIRE(span.has_value());
  CHECK(span->first == 0);
  CHECK(span->last == 9);
  span = chunks_for_range(entry, 250, 1);
  CHECK(span->first == 2);
  CHECK(span->last == 2);
  span = chunks_for_range(entry, 99, 2);
  CHECK(span->first == 0);
  CHECK(span->last == 1);
  CHECK_FALSE(chunks_for_range(entry, 1000, 5).has_value());
  CHECK_FALSE(chunks_for_range(entry, 10, 0).has_value());
}

TEST_CASE("verify_file verdicts") {
  const std::uint64_t chunk_size = 1024;
  std::string content = pattern_bytes(4608);  // 4.5 chunks
  auto entry = make_file_entry(LogicalPath::normalize("/f"), content, chunk_size, "g");

  CHECK(verify_file(content, entry) == VerifyVerdict::pass());

  // Flip-byte oracle: corrupt one byte inside chunk 3.
  std::string corrupted = content;
  corrupted[3 * chunk_size + 17] ^= 0x40;
  auto verdict = verify_file(corrupted, entry);
  CHECK(verdict.kind == VerifyVerdict::Kind::chunk_mismatch);
  CHECK(verdict.chunk_index == 3);

  // Truncation oracle.
  CHECK(verify_file(content.substr(0, 4000), entry) == VerifyVerdict::whole_file());
  CHECK(verify_file("", entry) == VerifyVerdict::whole_file());
}

TEST_CASE("resolve_variant") {
  std::vector<VariantSymlink> symlinks{
      {LogicalPath::normalize("/ligo/frames"), "frames_variant",
       LogicalPath::normalize("/data/frames")}};
  auto path = LogicalPath::normalize("/ligo/frames/f1.gwf");

  SiteConfig configured{{"frames_variant", "/mnt/ligo_nfs/frames"}};
  CHECK(resolve_variant(path, symlinks, configured).str() == "/mnt/ligo_nfs/frames/f1.gwf");

  CHECK(resolve_variant(path, symlinks, {}).str() == "/data/frames/f1.gwf");

  auto outside = LogicalPath::normalize("/other/file");
  CHECK(resolve_variant(outside, symlinks, configured) == outside);
}

TEST_CASE("acl_allows membership rules") {
  auto input = small_input();
  auto built = build_catalog(input, 0, 100);
  REQUIRE(built.ok());
  const Catalog& catalog = built.value();
  auto path = LogicalPath::normalize("/frames/O2/a.gwf");

  CHECK(acl_allows(catalog, Principal{"/DC=org/CN=alice"}, path) == AclDecision::allowed);
  CHECK(acl_allows(catalog, Principal{"/DC=org/CN=mallory"}, path) ==
        AclDecision::forbidden);
  CHECK(acl_allows(catalog, std::nullopt, path) == AclDecision::forbidden);
  CHECK(acl_allows(catalog, Principal{"/DC=org/CN=alice"},
                   LogicalPath::normalize("/nope")) == AclDecision::unknown_path);
}

TEST_CASE("acl soundness over random catalogs") {
  std::mt19937 rng(99);
  for (int round = 0; round < 50; ++round) {
    CatalogBuildInput input;
    input.chunk_size = 8;
    int n_groups = 1 + rng() % 3;
    std::vector<std::string> tags;
    for (int g = 0; g < n_groups; ++g) {
      std::string tag = "g" + std::to_string(g);
      tags.push_back(tag);
      std::set<std::string> members;
      int n_members = static_cast<int>(rng() % 4);
      for (int m = 0; m < n_members; ++m) members.insert("/CN=u" + std::to_string(rng() % 6));
      input.acl_groups[tag] = members;
      input.acl_spec["/d" + std::to_string(g)] = tag;
    }
    int n_files = 1 + rng() % 5;
    for (int f = 0; f < n_files; ++f) {
      int g = rng() % n_groups;
      input.tree["/d" + std::to_string(g) + "/f" + std::to_string(f)] =
          pattern_bytes(rng() % 40, rng());
    }
    auto built = build_catalog(input, 0, 1);
    REQUIRE(built.ok());
    const Catalog& catalog = built.value();
    for (int probe = 0; probe < 20; ++probe) {
      Principal p{"/CN=u" + std::to_string(rng() % 8)};
      for (const auto& [path, entry] : catalog.files) {
        auto decision = acl_allows(catalog, p, path);
        bool in_group = catalog.acls.at(entry.acl_tag).contains(p);
        CHECK(decision == (in_group ? AclDecision::allowed : AclDecision::forbidden));
        // Anonymous is always forbidden, even for empty groups.
        CHECK(acl_allows(catalog, std::nullopt, path) == AclDecision::forbidden);
      }
    }
  }
}

TEST_CASE("build_catalog assigns tags by longest prefix") {
  CatalogBuildInput input = small_input();
  input.acl_spec["/frames/O2"] = "o2only";
  input.acl_groups["o2only"] = {"/DC=org/CN=carol"};
  input.tree["/frames/O1/c.gwf"] = "cccc";

  auto built = build_catalog(input, 0, 1);
  REQUIRE(built.ok());
  CHECK(built->files.at(LogicalPath::normalize("/frames/O2/a.gwf")).acl_tag == "o2only");
  CHECK(built->files.at(LogicalPath::normalize("/frames/O1/c.gwf")).acl_tag == "ligo");
}

TEST_CASE("build_catalog examples") {
  auto input = small_input();
  auto built = build_catalog(input, 0, 1);
  REQUIRE(built.ok());
  CHECK(built->revision == 1);
  for (const auto& [path, entry] : built->files) CHECK(entry.acl_tag == "ligo");

  CatalogBuildInput empty;
  auto empty_built = build_catalog(empty, 4, 1);
  REQUIRE(empty_built.ok());
  CHECK(empty_built->revision == 5);
  CHECK(empty_built->files.empty());
}

TEST_CASE("build_catalog determinism up to generated_at") {
  auto input = small_input();
  auto first = build_catalog(input, 1, 1111);
  auto second = build_catalog(input, 1, 2222);
  REQUIRE(first.ok());
  REQUIRE(second.ok());
  CHECK(first->revision == second->revision);
  Catalog patched = second.value();
  patched.generated_at = first->generated_at;
  CHECK(catalog_to_json(first.value()) == catalog_to_json(patched));
}

TEST_CASE("build_catalog rejects file/symlink collision") {
  auto input = small_input();
  input.symlinks.push_back({LogicalPath::normalize("/frames/O2/a.gwf"), "v",
                            LogicalPath::normalize("/elsewhere")});
  auto built = build_catalog(input, 0, 1);
  REQUIRE_FALSE(built.ok());
  bool mentions_collision = false;
  for (const auto& p : built.error().problems) {
    if (p.find("collision") != std::string::npos) mentions_collision = true;
  }
  CHECK(mentions_collision);
}

TEST_CASE("build_catalog rejects files with no acl prefix") {
  auto input = small_input();
  input.tree["/outside/x"] = "zz";
  auto built = build_catalog(input, 0, 1);
  REQUIRE_FALSE(built.ok());
}

TEST_CASE("catalog json matches the wire schema exactly") {
  CatalogBuildInput input;
  input.tree["/a"] = "hi";
  input.acl_spec["/"] = "g";
  input.acl_groups["g"] = {"/CN=alice"};
  input.symlinks.push_back(
      {LogicalPath::normalize("/s"), "v", LogicalPath::normalize("/d")});
  input.chunk_size = kDefaultChunkSize;
  auto built = build_catalog(input, 0, 7);
  REQUIRE(built.ok());

  const std::string hi_sha =
      "8f434346648f6b96df89dda901c5176b10a6d83961dd3c1ac88b59b2dc327aa4";
  std::string expected =
      "{\"acls\":{\"g\":{\"members\":[\"/CN=alice\"]}},"
      "\"files\":{\"/a\":{\"acl_tag\":\"g\",\"chunk_size\":33554432,"
      "\"chunks\":[{\"offset\":0,\"sha256\":\"" + hi_sha + "\",\"size\":2}],"
      "\"file_sha256\":\"" + hi_sha + "\",\"size\":2}},"
      "\"generated_at\":7,\"revision\":1,"
      "\"symlinks\":[{\"default_target\":\"/d\",\"path\":\"/s\",\"variant\":\"v\"}]}";
  CHECK(catalog_to_json(built.value()) == expected);
}

TEST_CASE("catalog json round-trips") {
  auto input = small_input();
  input.symlinks.push_back({LogicalPath::normalize("/ligo/frames"), "frames_variant",
                            LogicalPath::normalize("/frames")});
  auto built = build_catalog(input, 6, 1234);
  REQUIRE(built.ok());
  std::string bytes = catalog_to_json(built.value());
  auto parsed = catalog_from_json(bytes);
  REQUIRE(parsed.ok());
  CHECK(parsed.value() == built.value());
  CHECK(catalog_to_json(parsed.value()) == bytes);
}

TEST_CASE("catalog json rejects violated invariants") {
  // Unknown acl tag.
  std::string bad =
      "{\"acls\":{},\"files\":{\"/a\":{\"acl_tag\":\"g\",\"chunk_size\":4,"
      "\"chunks\":[],\"file_sha256\":"
      "\"e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855\","
      "\"size\":0}},\"generated_at\":1,\"revision\":1,\"symlinks\":[]}";
  CHECK_FALSE(catalog_from_json(bad).ok());
  CHECK_FALSE(catalog_from_json("not json").ok());
  CHECK_FALSE(catalog_from_json("{}").ok());
}

TEST_CASE("node info json round-trip and validation") {
  NodeInfo info{"cache-syr", NodeRole::cache, "127.0.0.1:9000", {43.05, -76.15}};
  auto j = node_info_to_json(info);
  auto parsed = node_info_from_json(j);
  REQUIRE(parsed.ok());
  CHECK(parsed.value() == info);

  j["geo"][0] = 91.5;
  CHECK_FALSE(node_info_from_json(j).ok());
}

TEST_CASE("token table lookup") {
  TokenTable table({{"t1", "/CN=alice"}, {"t2", "/CN=bob"}});
  REQUIRE(table.lookup("t1").has_value());
  CHECK(table.lookup("t1")->dn == "/CN=alice");
  CHECK_FALSE(table.lookup("unknown").has_value());
}
