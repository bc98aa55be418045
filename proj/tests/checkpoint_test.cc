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

#include "shs/checkpoint.h"
#include "shs/errors.h"
#include "shs/gnn.h"

namespace shs {
namespace {

namespace fs = std::filesystem;

std::vector<double> flat(const ModelParams& p) {
  std::vector<double> out;
  for (auto t : p.tensors()) out.insert(out.end(), t.begin(), t.end());
  return out;
}

ModelParams sample() {
  TrainConfig c;
  c.layers = 3;
  c.hidden = 5;
  ModelParams p = init_params(c, 77);
  p.layers[1].bias[2] = 1.0 / 3.0;
  p.head_bias[1] = -2.5e-300;
  return p;
}

TEST(Checkpoint, RoundTripIsBitExact) {
  const ModelParams p = sample();
  const CheckpointHeader h = {{"k_percent", "5"}, {"note", "two words"}};
  const fs::path path = fs::temp_directory_path() / "shs_ckpt_test.ckpt";
  save_checkpoint(path, p, h);
  const Checkpoint c = load_checkpoint(path);
  EXPECT_EQ(flat(c.params), flat(p));
  EXPECT_EQ(c.params.num_layers(), 3);
  EXPECT_EQ(c.params.hidden(), 5);
  EXPECT_EQ(c.header, h);
  EXPECT_EQ(serialize_checkpoint(c.params, c.header), serialize_checkpoint(p, h));
}

TEST(Checkpoint, Layout) {
  const std::string s = serialize_checkpoint(sample());
  EXPECT_EQ(s.rfind("shs-model 1\n", 0), 0u);
  EXPECT_NE(s.find("layers 3\n"), std::string::npos);
  EXPECT_NE(s.find("layer 0 weight 5 6\n"), std::string::npos);
  EXPECT_NE(s.find("layer 2 bias 5\n"), std::string::npos);
  EXPECT_NE(s.find("head weight 2 5\n"), std::string::npos);
  EXPECT_EQ(s.substr(s.size() - 4), "end\n");
}

TEST(Checkpoint, MalformedInputs) {
  const std::string good = serialize_checkpoint(sample());
  EXPECT_THROW(parse_checkpoint(""), DataError);
  EXPECT_THROW(parse_checkpoint("shs-model 2\n"), DataError);
  EXPECT_THROW(parse_checkpoint(good.substr(0, good.size() / 2)), DataError);
  std::string bad = good;
  bad.replace(bad.find("layer 0 weight 5 6"), 18, "layer 0 weight 5 7");
  EXPECT_THROW(parse_checkpoint(bad), DataError);
  std::string nan = good;
  const auto pos = nan.find('\n', nan.find("head bias 2")) + 1;
  nan.replace(pos, nan.find(' ', pos) - pos, "nan");
  EXPECT_THROW(parse_checkpoint(nan), DataError);
  EXPECT_THROW(load_checkpoint("/nonexistent/shs.ckpt"), DataError);
}

}  // namespace
}  // namespace shs
