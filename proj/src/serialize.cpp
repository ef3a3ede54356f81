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

#include <bit>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace sjlt {
namespace wire {

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

void Reader::need(std::size_t n) const {
  if (bytes_.size() - pos_ < n) throw std::runtime_error("unexpected end of data");
}

std::uint8_t Reader::u8() {
  need(1);
  return bytes_[pos_++];
}

std::uint32_t Reader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= std::uint32_t{bytes_[pos_++]} << (8 * b);
  return v;
}

std::uint64_t Reader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= std::uint64_t{bytes_[pos_++]} << (8 * b);
  return v;
}

double Reader::f64() { return std::bit_cast<double>(u64()); }

void Reader::expect_magic(const char (&magic)[5]) {
  need(4);
  for (int b = 0; b < 4; ++b) {
    if (bytes_[pos_ + b] != static_cast<std::uint8_t>(magic[b])) {
      throw std::runtime_error(std::string("bad magic, expected ") + magic);
    }
  }
  pos_ += 4;
}

std::vector<std::uint8_t> read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_all(in);
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

}  // namespace wire

std::vector<std::uint8_t> encode_sketch(const SparseSketch& sketch) {
  validate(sketch);
  std::vector<std::uint8_t> out;
  out.reserve(37 + 8 * sketch.d + 16 * sketch.nnz());
  for (char c : {'S', 'J', 'L', 'T'}) out.push_back(static_cast<std::uint8_t>(c));
  wire::put_u32(out, kSketchFormatVersion);
  wire::put_u8(out, static_cast<std::uint8_t>(sketch.tag));
  wire::put_u64(out, sketch.k);
  wire::put_u64(out, sketch.d);
  wire::put_u64(out, sketch.s);
  wire::put_u64(out, sketch.seed);
  for (std::uint64_t i = 0; i < sketch.d; ++i) wire::put_u64(out, sketch.col_ptr[i + 1] - sketch.col_ptr[i]);
  for (const Entry& e : sketch.entries) {
    wire::put_u64(out, e.row);
    wire::put_f64(out, e.value);
  }
  return out;
}

SparseSketch decode_sketch(const std::vector<std::uint8_t>& bytes) {
  wire::Reader r(bytes);
  r.expect_magic("SJLT");
  const std::uint32_t version = r.u32();
  if (version != kSketchFormatVersion) throw std::runtime_error("unsupported sketch version " + std::to_string(version));
  SparseSketch s;
  const std::uint8_t tag = r.u8();
  if (tag > static_cast<std::uint8_t>(ConstructionTag::kDense)) throw std::runtime_error("unknown construction tag");
  s.tag = static_cast<ConstructionTag>(tag);
  s.k = r.u64();
  s.d = r.u64();
  s.s = r.u64();
  s.seed = r.u64();
  if (s.d > r.remaining() / 8) throw std::runtime_error("unexpected end of data");
  s.col_ptr.reserve(s.d + 1);
  s.col_ptr.push_back(0);
  for (std::uint64_t i = 0; i < s.d; ++i) {
    const std::uint64_t n = r.u64();
    if (n > r.remaining() / 16) throw std::runtime_error("column count exceeds data");
    s.col_ptr.push_back(s.col_ptr.back() + n);
  }
  const std::uint64_t nnz = s.col_ptr.back();
  if (nnz > r.remaining() / 16) throw std::runtime_error("unexpected end of data");
  s.entries.resize(nnz);
  for (auto& e : s.entries) {
    e.row = r.u64();
    e.value = r.f64();
  }
  if (r.remaining() != 0) throw std::runtime_error("trailing bytes after sketch");
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
  return s;
}

void write_sketch(std::ostream& out, const SparseSketch& sketch) {
  const auto bytes = encode_sketch(sketch);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

SparseSketch read_sketch(std::istream& in) { return decode_sketch(wire::read_all(in)); }

void save_sketch(const std::string& path, const SparseSketch& sketch) {
  wire::write_file(path, encode_sketch(sketch));
}

SparseSketch load_sketch(const std::string& path) { return decode_sketch(wire::read_file(path)); }

}  // namespace sjlt
