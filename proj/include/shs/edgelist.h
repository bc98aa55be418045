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

#ifndef SHS_EDGELIST_H_
#define SHS_EDGELIST_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "shs/graph.h"

namespace shs {

struct LoadedGraph {
  Graph graph;
  // original_ids[new_id] is the id used in the file.
  std::vector<std::uint64_t> original_ids;
};

// Reads whitespace-separated "u v" lines; '#' lines and blank lines are
// skipped. Ids are remapped to 0..n-1 by first appearance, except for files
// carrying the "# shs-dense <n>" header that write_edgelist emits: those
// keep their ids, so isolated nodes survive a round trip. Throws DataError
// with the line number on malformed input.
LoadedGraph read_edgelist_with_ids(const std::filesystem::path& path);
Graph read_edgelist(const std::filesystem::path& path);

// Writes "# shs-dense <n>" followed by one "u v" line per edge (u < v,
// sorted), '\n' terminated.
void write_edgelist(const Graph& g, const std::filesystem::path& path);

// "original_id new_id" per line.
void write_idmap(const std::vector<std::uint64_t>& original_ids,
                 const std::filesystem::path& path);

}  // namespace shs

#endif  // SHS_EDGELIST_H_
