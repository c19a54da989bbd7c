// Copyright 2026 The luequiv Authors
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

#pragma once

// Text formats for states and matrices.
//
// State file:                     Matrix file:
//   # comment                       # comment
//   label Bell pair                 label SWAP
//   dims 2 2 2                      shape 4 4
//   1 1 2 0.70710678118654757 0     1 1 1 0
//   2 1 1 0.70710678118654757 0     2 3 1 0
//
// Records carry 1-based indices followed by the real and imaginary part.
// Unlisted entries are zero; an index may appear only once.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "luequiv/state.hpp"
#include "luequiv/types.hpp"

namespace luequiv::io {

using State = PureTripartiteState<double>;
using Matrix = CMatrix<double>;

/// Malformed or invalid document; `line` is 1-based, 0 when not line specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// The file could not be opened or read.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateFile {
  State state;
  std::string label;
};

struct MatrixFile {
  Matrix matrix;
  std::string label;
};

StateFile parse_state(std::string_view text, Normalization policy = Normalization::Lenient,
                      std::string_view source = "<input>");
StateFile read_state(const std::filesystem::path& path,
                     Normalization policy = Normalization::Lenient);
std::string serialize_state(const State& state, std::string_view label = {});

MatrixFile parse_matrix(std::string_view text, std::string_view source = "<input>");
MatrixFile read_matrix(const std::filesystem::path& path);
std::string serialize_matrix(const Matrix& matrix, std::string_view label = {});

/// %.17g formatting; reads back to the same double.
std::string format_double(double value);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace luequiv::io
