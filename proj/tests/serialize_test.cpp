// Copyright 2026 The sjlt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sjlt/serialize.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "sjlt/constructions.hpp"

namespace sjlt {
namespace {

std::uint64_t read_u64(const std::vector<std::uint8_t>& b, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[at + i];
  return v;
}

TEST(SerializeTest, HeaderLayout) {
  SparseSketch s;
  s.tag = ConstructionTag::kGraph;
  s.k = 4;
  s.d = 2;
  s.s = 1;
  s.seed = 0x0102030405060708;
  s.col_ptr = {0, 1, 2};
  s.entries = {{3, 1.0}, {0, -1.0}};
  const auto bytes = encode_sketch(s);
  ASSERT_EQ(bytes.size(), 4 + 4 + 1 + 32 + 16 + 32u);
  EXPECT_EQ(std::memcmp(bytes.data(), "SJLT", 4), 0);
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5] | bytes[6] | bytes[7], 0);
  EXPECT_EQ(bytes[8], 1);  // graph
  EXPECT_EQ(read_u64(bytes, 9), 4u);
  EXPECT_EQ(read_u64(bytes, 17), 2u);
  EXPECT_EQ(read_u64(bytes, 25), 1u);
  EXPECT_EQ(bytes[33], 0x08);
  EXPECT_EQ(read_u64(bytes, 33), s.seed);
  EXPECT_EQ(read_u64(bytes, 41), 1u);
  EXPECT_EQ(read_u64(bytes, 49), 1u);
  EXPECT_EQ(read_u64(bytes, 57), 3u);
  EXPECT_EQ(read_u64(bytes, 65), std::bit_cast<std::uint64_t>(1.0));
  EXPECT_EQ(read_u64(bytes, 73), 0u);
  EXPECT_EQ(read_u64(bytes, 81), std::bit_cast<std::uint64_t>(-1.0));
}

TEST(SerializeTest, RoundTripIsBitExact) {
  const JlParams p = derive_params(0.25, 0.05, 100, 17);
  for (auto tag : {ConstructionTag::kBlock, ConstructionTag::kGraph, ConstructionTag::kDks,
                   ConstructionTag::kDense}) {
    const SparseSketch s = sample({tag, nullptr}, p);
    const auto bytes = encode_sketch(s);
    const SparseSketch back = decode_sketch(bytes);
    EXPECT_EQ(back, s);
    EXPECT_EQ(encode_sketch(back), bytes);
  }
}

TEST(SerializeTest, StreamAndFileRoundTrip) {
  const SparseSketch s = sample_graph(derive_params(0.3, 0.1, 33, 2));
  std::stringstream ss;
  write_sketch(ss, s);
  EXPECT_EQ(read_sketch(ss), s);
  const auto path = std::filesystem::temp_directory_path() / "sjlt_serialize_test.sjlt";
  save_sketch(path.string(), s);
  EXPECT_EQ(load_sketch(path.string()), s);
  std::filesystem::remove(path);
}

TEST(SerializeTest, RejectsCorruptInput) {
  const auto good = encode_sketch(sample_block(derive_params(0.3, 0.1, 5, 2)));
  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_sketch(bad_magic), std::runtime_error);
  auto bad_version = good;
  bad_version[4] = 2;
  EXPECT_THROW(decode_sketch(bad_version), std::runtime_error);
  auto bad_tag = good;
  bad_tag[8] = 9;
  EXPECT_THROW(decode_sketch(bad_tag), std::runtime_error);
  auto truncated = good;
  truncated.pop_back();
  EXPECT_THROW(decode_sketch(truncated), std::runtime_error);
  auto trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(decode_sketch(trailing), std::runtime_error);
  auto bad_row = good;
  const std::size_t first_row = 41 + 8 * 5;
  bad_row[first_row + 7] = 0xFF;
  EXPECT_THROW(decode_sketch(bad_row), std::runtime_error);
  EXPECT_THROW(decode_sketch({}), std::runtime_error);
}

}  // namespace
}  // namespace sjlt
