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

#ifndef SHS_IO_H_
#define SHS_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "shs/centrality.h"
#include "shs/features.h"

namespace shs {

// CSV files. Reals carry 17 significant digits; lines end in '\n'.
//   scores:   node,score
//   labels:   node,score,label     (label in {0, 1})
//   features: node,effective_size,efficiency,degree   (raw values)
//   stats:    column,mean,std

void write_scores(const ScoreVector& scores, const std::filesystem::path& path);
std::vector<double> read_scores(const std::filesystem::path& path);

void write_labels(const ScoreVector& scores, const LabelVector& labels,
                  const std::filesystem::path& path);
LabelVector read_labels(const std::filesystem::path& path);

void write_features(const FeatureMatrix& features,
                    const std::filesystem::path& path);
// Reads raw features and re-derives the normalization.
FeatureMatrix read_features(const std::filesystem::path& path);

void write_feature_stats(const FeatureStats& stats,
                         const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(const std::string& data);

}  // namespace shs

#endif  // SHS_IO_H_
