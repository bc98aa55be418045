// Copyright 2026 The SHS Toolkit Authors
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

#include "shs/checkpoint.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "shs/errors.h"

namespace shs {
namespace {

constexpr const char* kMagic = "shs-model 1";

void append_values(std::string& out, const double* data, Eigen::Index count) {
  for (Eigen::Index i = 0; i < count; ++i) {
    if (i > 0) out.push_back(' ');
    fmt::format_to(std::back_inserter(out), "{:.17g}", data[i]);
  }
  out.push_back('\n');
}

void append_matrix(std::string& out, const std::string& label, const Matrix& m) {
  fmt::format_to(std::back_inserter(out), "{} weight {} {}\n", label, m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) append_values(out, m.row(r).data(), m.cols());
}

void append_vector(std::string& out, const std::string& label, const Vector& v) {
  fmt::format_to(std::back_inserter(out), "{} bias {}\n", label, v.size());
  append_values(out, v.data(), v.size());
}

class Reader {
 public:
  explicit Reader(const std::string& text) : in_(text) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) fail("unexpected end of checkpoint");
    ++line_no_;
    return s;
  }

  std::vector<std::string> words() {
    std::istringstream ss(line());
    std::vector<std::string> out;
    for (std::string w; ss >> w;) out.push_back(w);
    return out;
  }

  long number(const std::string& token) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
      fail(fmt::format("expected a count, got '{}'", token));
    }
    return value;
  }

  void values(double* out, Eigen::Index count) {
    const std::string s = line();
    const char* p = s.data();
    const char* end = s.data() + s.size();
    for (Eigen::Index i = 0; i < count; ++i) {
      while (p < end && *p == ' ') ++p;
      auto [next, ec] = std::from_chars(p, end, out[i]);
      if (ec != std::errc()) fail("malformed number");
      if (!std::isfinite(out[i])) fail("non-finite parameter value");
      p = next;
    }
    while (p < end && *p == ' ') ++p;
    if (p != end) fail("too many values on line");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError(fmt::format("checkpoint line {}: {}", line_no_, what));
  }

 private:
  std::istringstream in_;
  std::size_t line_no_ = 0;
};

Matrix read_matrix(Reader& r, const std::vector<std::string>& w, std::size_t at) {
  if (w.size() != at + 3 || w[at] != "weight") r.fail("expected a weight shape line");
  Matrix m(r.number(w[at + 1]), r.number(w[at + 2]));
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    r.values(m.row(row).data(), m.cols());
  }
  return m;
}

Vector read_vector(Reader& r, const std::vector<std::string>& w, std::size_t at) {
  if (w.size() != at + 2 || w[at] != "bias") r.fail("expected a bias shape line");
  Vector v(r.number(w[at + 1]));
  r.values(v.data(), v.size());
  return v;
}

}  // namespace

std::string serialize_checkpoint(const ModelParams& params,
                                 const CheckpointHeader& header) {
  std::string out = std::string(kMagic) + "\n";
  for (const auto& [key, value] : header) {
    if (key.empty() || key.find_first_of(" \n") != std::string::npos ||
        value.find('\n') != std::string::npos || key == "layers") {
      throw std::invalid_argument(fmt::format("invalid checkpoint header key '{}'", key));
    }
    fmt::format_to(std::back_inserter(out), "{} {}\n", key, value);
  }
  fmt::format_to(std::back_inserter(out), "layers {}\n", params.layers.size());
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const std::string label = fmt::format("layer {}", l);
    append_matrix(out, label, params.layers[l].weight);
    append_vector(out, label, params.layers[l].bias);
  }
  append_matrix(out, "head", params.head_weight);
  append_vector(out, "head", params.head_bias);
  out += "end\n";
  return out;
}

void save_checkpoint(const std::filesystem::path& path,
                     const ModelParams& params,
                     const CheckpointHeader& header) {
  const std::string text = serialize_checkpoint(params, header);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write checkpoint {}", path.string()));
  out << text;
  if (!out) throw DataError(fmt::format("failed writing {}", path.string()));
}

Checkpoint parse_checkpoint(const std::string& text) {
  Reader r(text);
  if (r.line() != kMagic) r.fail("missing 'shs-model 1' header");
  Checkpoint cp;
  long num_layers = -1;
  while (num_layers < 0) {
    const std::string s = r.line();
    const auto space = s.find(' ');
    if (space == std::string::npos) r.fail("malformed header line");
    std::string key = s.substr(0, space);
    std::string value = s.substr(space + 1);
    if (key == "layers") {
      num_layers = r.number(value);
    } else {
      cp.header.emplace_back(std::move(key), std::move(value));
    }
  }
  for (long l = 0; l < num_layers; ++l) {
    Layer layer;
    auto w = r.words();
    if (w.size() < 2 || w[0] != "layer" || r.number(w[1]) != l) r.fail("expected layer block");
    layer.weight = read_matrix(r, w, 2);
    w = r.words();
    if (w.size() < 2 || w[0] != "layer" || r.number(w[1]) != l) r.fail("expected layer bias");
    layer.bias = read_vector(r, w, 2);
    if (layer.bias.size() != layer.weight.rows()) r.fail("bias length mismatch");
    if (l > 0 && layer.weight.cols() != 2 * cp.params.layers.back().weight.rows()) {
      r.fail("layer input width does not match previous layer");
    }
    cp.params.layers.push_back(std::move(layer));
  }
  auto w = r.words();
  if (w.empty() || w[0] != "head") r.fail("expected head block");
  cp.params.head_weight = read_matrix(r, w, 1);
  w = r.words();
  if (w.empty() || w[0] != "head") r.fail("expected head bias");
  cp.params.head_bias = read_vector(r, w, 1);
  if (cp.params.head_weight.rows() != 2 || cp.params.head_bias.size() != 2 ||
      (!cp.params.layers.empty() &&
       cp.params.head_weight.cols() != cp.params.layers.back().weight.rows())) {
    r.fail("head shape mismatch");
  }
  if (r.line() != "end") r.fail("missing end marker");
  return cp;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open checkpoint {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_checkpoint(ss.str());
}

}  // namespace shs
