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

#include "shs/io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "shs/errors.h"

namespace shs {
namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_field(std::string_view token, const std::filesystem::path& path,
              std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw DataError(fmt::format("{}:{}: cannot parse '{}'", path.string(), line_no, token));
  }
  return value;
}

// Yields the rows of a CSV with the given header, checking the node column
// counts up from 0.
template <class RowFn>
void read_csv(const std::filesystem::path& path, std::string_view header,
              std::size_t columns, RowFn&& on_row) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw DataError(fmt::format("{}:1: expected header '{}'", path.string(), header));
  }
  std::size_t line_no = 1;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_commas(line);
    if (fields.size() != columns) {
      throw DataError(fmt::format("{}:{}: expected {} fields, got {}", path.string(),
                                  line_no, columns, fields.size()));
    }
    if (parse_field<std::size_t>(fields[0], path, line_no) != expected) {
      throw DataError(fmt::format("{}:{}: node ids must be 0..n-1 in order",
                                  path.string(), line_no));
    }
    on_row(fields, line_no);
    ++expected;
  }
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw DataError(fmt::format("failed writing {}", path.string()));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_scores(const ScoreVector& scores, const std::filesystem::path& path) {
  std::string out = "node,score\n";
  for (std::size_t i = 0; i < scores.values.size(); ++i) {
    fmt::format_to(std::back_inserter(out), "{},{:.17g}\n", i, scores.values[i]);
  }
  write_text(path, out);
}

std::vector<double> read_scores(const std::filesystem::path& path) {
  std::vector<double> values;
  read_csv(path, "node,score", 2, [&](const auto& f, std::size_t line_no) {
    values.push_back(parse_field<double>(f[1], path, line_no));
  });
  return values;
}

void write_labels(const ScoreVector& scores, const LabelVector& labels,
                  const std::filesystem::path& path) {
  if (scores.values.size() != labels.labels.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  std::string out = "node,score,label\n";
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    fmt::format_to(std::back_inserter(out), "{},{:.17g},{}\n", i, scores.values[i],
                   labels.labels[i] ? 1 : 0);
  }
  write_text(path, out);
}

LabelVector read_labels(const std::filesystem::path& path) {
  LabelVector out;
  read_csv(path, "node,score,label", 3, [&](const auto& f, std::size_t line_no) {
    const int label = parse_field<int>(f[2], path, line_no);
    if (label != 0 && label != 1) {
      throw DataError(fmt::format("{}:{}: label must be 0 or 1", path.string(), line_no));
    }
    out.labels.push_back(static_cast<std::uint8_t>(label));
  });
  if (!out.labels.empty()) {
    out.k_percent = 100.0 * static_cast<double>(out.positives()) /
                    static_cast<double>(out.labels.size());
  }
  return out;
}

void write_features(const FeatureMatrix& features,
                    const std::filesystem::path& path) {
  std::string out = "node,effective_size,efficiency,degree\n";
  for (Eigen::Index i = 0; i < features.raw.rows(); ++i) {
    fmt::format_to(std::back_inserter(out), "{},{:.17g},{:.17g},{:.17g}\n", i,
                   features.raw(i, 0), features.raw(i, 1), features.raw(i, 2));
  }
  write_text(path, out);
}

FeatureMatrix read_features(const std::filesystem::path& path) {
  std::vector<double> flat;
  read_csv(path, "node,effective_size,efficiency,degree", 4,
           [&](const auto& f, std::size_t line_no) {
             for (int c = 1; c <= kNumFeatures; ++c) {
               flat.push_back(parse_field<double>(f[c], path, line_no));
             }
           });
  const auto n = static_cast<Eigen::Index>(flat.size() / kNumFeatures);
  Matrix raw = Eigen::Map<Matrix>(flat.data(), n, kNumFeatures);
  return normalize_features(std::move(raw));
}

void write_feature_stats(const FeatureStats& stats,
                         const std::filesystem::path& path) {
  std::string out = "column,mean,std\n";
  for (int c = 0; c < kNumFeatures; ++c) {
    fmt::format_to(std::back_inserter(out), "{},{:.17g},{:.17g}\n", kFeatureNames[c],
                   stats.mean[c], stats.stddev[c]);
  }
  write_text(path, out);
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    fmt::format_to(std::back_inserter(hex), "{:02x}", digest[i]);
  }
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
  return sha256_hex(read_text(path));
}

}  // namespace shs
