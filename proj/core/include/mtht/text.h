// text.h
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
//
// Copyright 2026 The mtht Authors.
//
// \file
// Small string, hashing and file helpers used across modules.

#ifndef MTHT_TEXT_H_
#define MTHT_TEXT_H_

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace mtht {

// ASCII lowercasing; bytes >= 0x80 are copied unchanged.
std::string ascii_lower(std::string_view s);

std::string_view trim(std::string_view s);

// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string_view> split_fields(std::string_view line, char sep);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string_view> split_whitespace(std::string_view line);

// 64-bit FNV-1a with a seed folded into the offset basis. Stable across
// platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0);

std::string hex64(std::uint64_t v);

std::ifstream open_input(const std::string &path);
std::ofstream open_output(const std::string &path);
std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view contents);

// Uniformly random permutation of 0..n-1 from mt19937_64(seed), using
// Fisher-Yates with rejection sampling so the result is identical on every
// standard library (std::shuffle and the std distributions are not).
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

// Shortest decimal representation that round-trips the double.
std::string format_double(double v);

}  // namespace mtht

#endif  // MTHT_TEXT_H_
