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

#include "shs/edgelist.h"

#include <charconv>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include <fmt/format.h>

#include "shs/errors.h"

namespace shs {
namespace {

constexpr std::string_view kDenseHeader = "# shs-dense ";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool parse_u64(std::string_view token, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

}  // namespace

LoadedGraph read_edgelist_with_ids(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open edge list {}", path.string()));

  std::unordered_map<std::uint64_t, NodeId> remap;
  LoadedGraph out;
  std::vector<Edge> edges;
  std::optional<std::uint64_t> dense_n;
  std::string line;
  std::size_t line_no = 0;
  auto id_of = [&](std::uint64_t raw) -> NodeId {
    if (dense_n) return static_cast<NodeId>(raw);
    auto [it, inserted] = remap.try_emplace(raw, static_cast<NodeId>(remap.size()));
    if (inserted) out.original_ids.push_back(raw);
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with(kDenseHeader)) {
      std::uint64_t n = 0;
      auto rest = split_ws(view.substr(kDenseHeader.size()));
      if (rest.size() != 1 || !parse_u64(rest[0], n) || n > UINT32_MAX) {
        throw DataError(fmt::format("{}:1: malformed shs-dense header", path.string()));
      }
      dense_n = n;
      continue;
    }
    auto tokens = split_ws(view);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (tokens.size() != 2 || !parse_u64(tokens[0], a) || !parse_u64(tokens[1], b)) {
      throw DataError(fmt::format("{}:{}: expected two non-negative integer ids, got '{}'",
                                  path.string(), line_no, line));
    }
    if (dense_n && (a >= *dense_n || b >= *dense_n)) {
      throw DataError(fmt::format("{}:{}: id out of range for {} dense nodes",
                                  path.string(), line_no, *dense_n));
    }
    if (!dense_n && remap.size() >= UINT32_MAX - 1) {
      throw DataError(fmt::format("{}:{}: too many distinct node ids", path.string(), line_no));
    }
    const NodeId u = id_of(a);
    const NodeId v = id_of(b);
    edges.push_back({u, v});
  }

  NodeId n = 0;
  if (dense_n) {
    n = static_cast<NodeId>(*dense_n);
    out.original_ids.resize(n);
    for (NodeId i = 0; i < n; ++i) out.original_ids[i] = i;
  } else {
    n = static_cast<NodeId>(out.original_ids.size());
  }
  out.graph = build_graph(n, edges);
  return out;
}

Graph read_edgelist(const std::filesystem::path& path) {
  return read_edgelist_with_ids(path).graph;
}

void write_edgelist(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write edge list {}", path.string()));
  std::string buffer = fmt::format("{}{}\n", kDenseHeader, g.num_nodes());
  for (const Edge& e : g.edges()) {
    fmt::format_to(std::back_inserter(buffer), "{} {}\n", e.u, e.v);
  }
  out << buffer;
  if (!out) throw DataError(fmt::format("failed writing {}", path.string()));
}

void write_idmap(const std::vector<std::uint64_t>& original_ids,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write id map {}", path.string()));
  std::string buffer;
  for (std::size_t i = 0; i < original_ids.size(); ++i) {
    fmt::format_to(std::back_inserter(buffer), "{} {}\n", original_ids[i], i);
  }
  out << buffer;
}

}  // namespace shs
