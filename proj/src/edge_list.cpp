#include "cutplan/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "cutplan/errors.hpp"
#include "cutplan/io.hpp"

namespace cutplan {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool parse_id(std::string_view token, std::int64_t& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && end == token.data() + token.size();
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw_edges;
  std::vector<std::int64_t> ids;
  std::size_t self_loops = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() > 2) throw ParseError(line_no, "expected at most two node ids, got '" + line + "'");
    std::int64_t a = 0, b = 0;
    if (!parse_id(tokens[0], a)) throw ParseError(line_no, "invalid node id '" + std::string(tokens[0]) + "'");
    if (tokens.size() == 1) {
      ids.push_back(a);
      continue;
    }
    if (!parse_id(tokens[1], b)) throw ParseError(line_no, "invalid node id '" + std::string(tokens[1]) + "'");
    ids.push_back(a);
    ids.push_back(b);
    if (a == b) {
      ++self_loops;
      continue;
    }
    raw_edges.emplace_back(a, b);
  }
  if (in.bad()) throw std::runtime_error("edge list: read error");

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto compact = [&](std::int64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (auto [a, b] : raw_edges) edges.push_back({compact(a), compact(b)});

  LoadedGraph result;
  result.graph = Graph(static_cast<NodeId>(ids.size()), std::move(edges));
  result.original_ids = std::move(ids);
  result.dropped_self_loops = self_loops;
  return result;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list " + path.string());
  return parse_edge_list(in);
}

std::string format_edge_list(const Graph& graph, const std::string& header_comment) {
  std::string text;
  if (!header_comment.empty()) text += "# " + header_comment + "\n";
  for (const auto& e : graph.edges()) {
    text += std::to_string(e.u);
    text += ' ';
    text += std::to_string(e.v);
    text += '\n';
  }
  for (NodeId v = 0; v < graph.n_nodes(); ++v) {
    if (graph.degree(v) == 0) text += std::to_string(v) + "\n";
  }
  return text;
}

void save_edge_list(const Graph& graph, const std::filesystem::path& path,
                    const std::string& header_comment) {
  atomic_write(path, format_edge_list(graph, header_comment));
}

}  // namespace cutplan
