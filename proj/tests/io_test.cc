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

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "shs/centrality.h"
#include "shs/errors.h"
#include "shs/features.h"
#include "shs/generators.h"
#include "shs/io.h"

namespace shs {
namespace {

namespace fs = std::filesystem;

fs::path tmp(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "shs_io_test";
  fs::create_directories(d);
  return d / name;
}

TEST(Io, ScoresRoundTripExactly) {
  const ScoreVector s{ScoreKind::kCloseness, {0.1, 1.0 / 3.0, 0.0, 12345.678}};
  write_scores(s, tmp("s.csv"));
  EXPECT_EQ(read_scores(tmp("s.csv")), s.values);
  EXPECT_EQ(read_text(tmp("s.csv")).substr(0, 11), "node,score\n");
}

TEST(Io, LabelsRoundTrip) {
  const Graph g = generate_sf(80, 0.4, 0.05, 0.55, 1);
  const ScoreVector bc = brandes_bc(g);
  const LabelVector l = label_top_k(bc, 10);
  write_labels(bc, l, tmp("l.csv"));
  EXPECT_EQ(read_labels(tmp("l.csv")).labels, l.labels);
  write_text(tmp("bad_label.csv"), "node,score,label\n0,1,2\n");
  EXPECT_THROW(read_labels(tmp("bad_label.csv")), DataError);
}

TEST(Io, FeaturesRoundTrip) {
  const FeatureMatrix f = node_features(generate_sf(120, 0.4, 0.05, 0.55, 2));
  write_features(f, tmp("f.csv"));
  const FeatureMatrix back = read_features(tmp("f.csv"));
  EXPECT_EQ(back.raw, f.raw);
  EXPECT_EQ(back.normalized, f.normalized);
  write_feature_stats(f.stats, tmp("stats.csv"));
  EXPECT_EQ(read_text(tmp("stats.csv")).rfind("column,mean,std\neffective_size,", 0),
            0u);
}

TEST(Io, MalformedCsv) {
  write_text(tmp("h.csv"), "id,score\n0,1\n");
  EXPECT_THROW(read_scores(tmp("h.csv")), DataError);
  write_text(tmp("order.csv"), "node,score\n1,1\n0,2\n");
  EXPECT_THROW(read_scores(tmp("order.csv")), DataError);
  write_text(tmp("num.csv"), "node,score\n0,abc\n");
  EXPECT_THROW(read_scores(tmp("num.csv")), DataError);
  EXPECT_THROW(read_scores(tmp("absent.csv")), DataError);
}

TEST(Io, Sha256) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  write_text(tmp("abc.txt"), "abc");
  EXPECT_EQ(sha256_file(tmp("abc.txt")), sha256_hex("abc"));
}

}  // namespace
}  // namespace shs
