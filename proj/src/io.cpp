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

#include "luequiv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace luequiv::io {

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         ": " + message),
      source_(std::move(source)),
      line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

/// Non-empty lines with comments removed. `label` lines keep their text.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    const std::string_view t = trim(line);
    if (!t.starts_with("label")) {
      const auto hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) out.push_back({number, line});
    if (end == text.size()) break;
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::string_view source, const Line& line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(std::string(source_), line_.number, message);
  }

  long long integer(std::string_view tok, std::string_view field) const {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail("field " + std::string(field) + ": expected an integer, got '" + std::string(tok) +
           "'");
    }
    return v;
  }

  double real(std::string_view tok, std::string_view field) const {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
      fail("field " + std::string(field) + ": expected a finite number, got '" +
           std::string(tok) + "'");
    }
    return v;
  }

  Index index(std::string_view tok, std::string_view field, Index bound) const {
    const long long v = integer(tok, field);
    if (v < 1 || v > bound) {
      fail("record " + std::string(line_.text) + ": " + std::string(field) + " = " +
           std::to_string(v) + " out of range [1, " + std::to_string(bound) + "]");
    }
    return static_cast<Index>(v - 1);
  }

 private:
  std::string_view source_;
  const Line& line_;
};

std::string label_of(std::string_view line) { return std::string(trim(line.substr(5))); }

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

StateFile parse_state(std::string_view text, Normalization policy, std::string_view source) {
  std::optional<Dims> dims;
  std::string label;
  CVector<double> amps;
  std::vector<bool> seen;
  std::size_t records = 0;

  for (const Line& line : content_lines(text)) {
    LineParser p(source, line);
    if (line.text.starts_with("label")) {
      label = label_of(line.text);
      continue;
    }
    const auto tok = tokens(line.text);
    if (tok[0] == "dims") {
      if (dims) p.fail("duplicate dims line");
      if (tok.size() != 4) p.fail("dims needs three dimensions K M N");
      Dims d;
      const long long k = p.integer(tok[1], "K");
      const long long m = p.integer(tok[2], "M");
      const long long n = p.integer(tok[3], "N");
      if (k < 1 || m < 1 || n < 1) p.fail("dimensions must be positive");
      d.K = k;
      d.M = m;
      d.N = n;
      dims = d;
      amps = CVector<double>::Zero(d.total());
      seen.assign(static_cast<std::size_t>(d.total()), false);
      continue;
    }
    if (!dims) p.fail("amplitude record before dims line");
    if (tok.size() != 5) p.fail("amplitude record needs 5 fields: i j k re im");
    const Index i = p.index(tok[0], "i", dims->K);
    const Index j = p.index(tok[1], "j", dims->M);
    const Index k = p.index(tok[2], "k", dims->N);
    const double re = p.real(tok[3], "re");
    const double im = p.real(tok[4], "im");
    const Index flat = State::flat_index(*dims, i, j, k);
    if (seen[static_cast<std::size_t>(flat)]) {
      p.fail("duplicate amplitude for (" + std::to_string(i + 1) + ", " +
             std::to_string(j + 1) + ", " + std::to_string(k + 1) + ")");
    }
    seen[static_cast<std::size_t>(flat)] = true;
    amps(flat) = {re, im};
    ++records;
  }
  if (!dims) throw ParseError(std::string(source), 0, "missing dims line");
  if (records == 0 || amps.squaredNorm() == 0.0) {
    throw ParseError(std::string(source), 0, "zero state");
  }
  try {
    return {State::from_amplitudes(*dims, std::move(amps), policy, 1e-12), std::move(label)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(source), 0, e.what());
  }
}

std::string serialize_state(const State& state, std::string_view label) {
  std::ostringstream os;
  if (!label.empty()) os << "label " << label << '\n';
  const Dims& d = state.dims();
  os << "dims " << d.K << ' ' << d.M << ' ' << d.N << '\n';
  for (Index i = 0; i < d.K; ++i) {
    for (Index j = 0; j < d.M; ++j) {
      for (Index k = 0; k < d.N; ++k) {
        const auto v = state(i, j, k);
        if (v == std::complex<double>(0.0, 0.0)) continue;
        os << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ' ' << format_double(v.real()) << ' '
           << format_double(v.imag()) << '\n';
      }
    }
  }
  return os.str();
}

MatrixFile parse_matrix(std::string_view text, std::string_view source) {
  std::optional<std::pair<Index, Index>> shape;
  std::string label;
  Matrix m;
  std::vector<bool> seen;

  for (const Line& line : content_lines(text)) {
    LineParser p(source, line);
    if (line.text.starts_with("label")) {
      label = label_of(line.text);
      continue;
    }
    const auto tok = tokens(line.text);
    if (tok[0] == "shape") {
      if (shape) p.fail("duplicate shape line");
      if (tok.size() != 3) p.fail("shape needs two sizes: rows cols");
      const long long r = p.integer(tok[1], "rows");
      const long long c = p.integer(tok[2], "cols");
      if (r < 1 || c < 1) p.fail("matrix sizes must be positive");
      shape = {r, c};
      m = Matrix::Zero(r, c);
      seen.assign(static_cast<std::size_t>(r * c), false);
      continue;
    }
    if (!shape) p.fail("matrix record before shape line");
    if (tok.size() != 4) p.fail("matrix record needs 4 fields: row col re im");
    const Index r = p.index(tok[0], "row", shape->first);
    const Index c = p.index(tok[1], "col", shape->second);
    const double re = p.real(tok[2], "re");
    const double im = p.real(tok[3], "im");
    const auto flat = static_cast<std::size_t>(r * shape->second + c);
    if (seen[flat]) {
      p.fail("duplicate entry for (" + std::to_string(r + 1) + ", " + std::to_string(c + 1) +
             ")");
    }
    seen[flat] = true;
    m(r, c) = {re, im};
  }
  if (!shape) throw ParseError(std::string(source), 0, "missing shape line");
  return {std::move(m), std::move(label)};
}

std::string serialize_matrix(const Matrix& matrix, std::string_view label) {
  std::ostringstream os;
  if (!label.empty()) os << "label " << label << '\n';
  os << "shape " << matrix.rows() << ' ' << matrix.cols() << '\n';
  for (Index r = 0; r < matrix.rows(); ++r) {
    for (Index c = 0; c < matrix.cols(); ++c) {
      const auto v = matrix(r, c);
      if (v == std::complex<double>(0.0, 0.0)) continue;
      os << r + 1 << ' ' << c + 1 << ' ' << format_double(v.real()) << ' '
         << format_double(v.imag()) << '\n';
    }
  }
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw FileError("cannot read " + path.string());
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot write " + path.string());
  out << contents;
  if (!out) throw FileError("cannot write " + path.string());
}

StateFile read_state(const std::filesystem::path& path, Normalization policy) {
  return parse_state(read_file(path), policy, path.string());
}

MatrixFile read_matrix(const std::filesystem::path& path) {
  return parse_matrix(read_file(path), path.string());
}

}  // namespace luequiv::io
