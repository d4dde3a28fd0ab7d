/*
 * Copyright 2026 The membudget Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "membudget/checkpoint.hpp"
#include "membudget/errors.hpp"

namespace membudget {
namespace {

std::string dump(const QPair& pair) {
  std::ostringstream out;
  save_checkpoint(out, pair);
  return out.str();
}

TEST(Checkpoint, RoundTripIsBitExact) {
  SeededRng rng(1);
  for (double f : {0.0, 0.1, 0.5, 1.0}) {
    const auto pair = QPair::random(make_pt_split({12, 7, 3}, 5, f), rng, 9);
    std::istringstream in(dump(pair));
    EXPECT_EQ(load_checkpoint(in), pair) << f;
  }
}

TEST(Checkpoint, HeaderLayout) {
  SeededRng rng(2);
  const auto bytes = dump(QPair::random(make_pt_split({3}, 1, 0.5), rng, 2));
  ASSERT_GE(bytes.size(), 12u);
  EXPECT_EQ(bytes.substr(0, 4), "MBQP");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1u);
  EXPECT_EQ(bytes.substr(5, 3), std::string(3, '\0'));
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 2u);
  // permanent: input 2, output 4, one hidden layer of width 2 (round half up of 1.5)
  std::uint32_t words[4];
  std::memcpy(words, bytes.data() + 12, sizeof words);
  EXPECT_EQ(words[0], 2u);
  EXPECT_EQ(words[1], 4u);
  EXPECT_EQ(words[2], 1u);
  EXPECT_EQ(words[3], 2u);
}

TEST(Checkpoint, RejectsCorruptInput) {
  SeededRng rng(3);
  const auto bytes = dump(QPair::random(make_pt_split({4}, 1, 0.5), rng, 3));
  std::istringstream truncated(bytes.substr(0, bytes.size() - 5));
  EXPECT_THROW(load_checkpoint(truncated), ValidationError);
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  std::istringstream m(bad_magic);
  EXPECT_THROW(load_checkpoint(m), ValidationError);
  std::string bad_version = bytes;
  bad_version[4] = 9;
  std::istringstream v(bad_version);
  EXPECT_THROW(load_checkpoint(v), ValidationError);
}

}  // namespace
}  // namespace membudget
