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

#ifndef SHS_CHECKPOINT_H_
#define SHS_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "shs/gnn.h"

namespace shs {

// Text checkpoint:
//
//   shs-model 1
//   <key> <value>            optional metadata lines
//   layers <L>
//   layer <l> weight <rows> <cols>
//   <rows lines of cols values>
//   layer <l> bias <size>
//   <one line>
//   ...
//   head weight 2 <hidden>
//   head bias 2
//   end
//
// Values are written with 17 significant digits, so loading reproduces the
// saved parameters bit for bit.
using CheckpointHeader = std::vector<std::pair<std::string, std::string>>;

struct Checkpoint {
  ModelParams params;
  CheckpointHeader header;
};

std::string serialize_checkpoint(const ModelParams& params,
                                 const CheckpointHeader& header = {});
void save_checkpoint(const std::filesystem::path& path,
                     const ModelParams& params,
                     const CheckpointHeader& header = {});
// Throws DataError on any format violation.
Checkpoint load_checkpoint(const std::filesystem::path& path);
Checkpoint parse_checkpoint(const std::string& text);

}  // namespace shs

#endif  // SHS_CHECKPOINT_H_
