#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "cutplan/graph.hpp"

namespace cutplan {

struct LoadedGraph {
  Graph graph;
  /// original_ids[v] is the id used in the file for compacted node v.
  std::vector<std::int64_t> original_ids;
  std::size_t dropped_self_loops = 0;
};

/// Parses the edge-list text format: one "u v" pair per line, `#` comments and
/// blank lines ignored, a single id on a line declares an isolated node.
/// Duplicate and reversed lines collapse; self-loops are dropped and counted.
/// Ids are compacted to 0..N-1 in ascending original order.
LoadedGraph parse_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::filesystem::path& path);

/// Canonical text: sorted "u v" lines, then one line per isolated node.
std::string format_edge_list(const Graph& graph, const std::string& header_comment = {});
void save_edge_list(const Graph& graph, const std::filesystem::path& path,
                    const std::string& header_comment = {});

}  // namespace cutplan
