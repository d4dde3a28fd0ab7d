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

#include "membudget/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <string>
#include <istream>
#include <ostream>

#include "membudget/errors.hpp"

namespace membudget {
namespace {

constexpr std::array<char, 4> kMagic{'M', 'B', 'Q', 'P'};

void put_le(std::ostream& out, std::uint64_t v, int bytes) {
  char buf[8];
  for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(buf, bytes);
}

std::uint64_t get_le(std::istream& in, int bytes) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), bytes)) throw ValidationError("checkpoint truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return v;
}

void put_u32(std::ostream& out, std::uint32_t v) { put_le(out, v, 4); }
void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v), 8); }
std::uint32_t get_u32(std::istream& in) { return static_cast<std::uint32_t>(get_le(in, 4)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le(in, 8)); }

void save_network(std::ostream& out, const Mlp& net) {
  put_u32(out, static_cast<std::uint32_t>(net.input_width()));
  put_u32(out, static_cast<std::uint32_t>(net.output_width()));
  put_u32(out, static_cast<std::uint32_t>(net.hidden_widths().size()));
  for (int w : net.hidden_widths()) put_u32(out, static_cast<std::uint32_t>(w));
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto& w = net.weight(l);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) put_f64(out, w(i, j));
    }
    const auto& b = net.bias(l);
    for (Eigen::Index i = 0; i < b.size(); ++i) put_f64(out, b(i));
  }
}

Mlp load_network(std::istream& in) {
  constexpr std::uint32_t kMaxWidth = 1U << 20;
  const auto input = get_u32(in);
  const auto output = get_u32(in);
  const auto hidden_count = get_u32(in);
  if (input > kMaxWidth || output > kMaxWidth || hidden_count > 64) {
    throw ValidationError("checkpoint network shape is implausible");
  }
  std::vector<int> hidden;
  for (std::uint32_t i = 0; i < hidden_count; ++i) {
    const auto w = get_u32(in);
    if (w > kMaxWidth) throw ValidationError("checkpoint hidden width is implausible");
    hidden.push_back(static_cast<int>(w));
  }
  Mlp net(static_cast<int>(input), std::move(hidden), static_cast<int>(output));
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    auto& w = net.weight(l);
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = get_f64(in);
    }
    auto& b = net.bias(l);
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = get_f64(in);
  }
  return net;
}

}  // namespace

void save_checkpoint(std::ostream& out, const QPair& pair) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kCheckpointVersion);
  put_u32(out, 2);
  save_network(out, pair.permanent);
  save_network(out, pair.transient);
}

QPair load_checkpoint(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw ValidationError("not a membudget checkpoint");
  if (const auto v = get_u32(in); v != kCheckpointVersion) {
    throw ValidationError("unsupported checkpoint version " + std::to_string(v));
  }
  if (get_u32(in) != 2) throw ValidationError("checkpoint must hold exactly two networks");
  QPair pair;
  pair.permanent = load_network(in);
  pair.transient = load_network(in);
  return pair;
}

}  // namespace membudget
