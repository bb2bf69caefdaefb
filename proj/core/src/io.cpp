#include "sigcond/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "sigcond/errors.hpp"

namespace sigcond {

namespace {

std::int64_t parse_id(const std::string& token, const std::string& path,
                      int line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw io_error(path + ":" + std::to_string(line_no) +
                   ": non-integer token '" + token + "'");
  }
  if (value < 0) {
    throw io_error(path + ":" + std::to_string(line_no) + ": negative node id");
  }
  return value;
}

bool comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Graph load_edge_list(const std::string& path, const LoaderOptions&) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");

  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (comment_or_blank(line)) continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a >> b)) {
      throw io_error(path + ":" + std::to_string(line_no) + ": expected two node ids");
    }
    if (tokens >> extra) {
      throw io_error(path + ":" + std::to_string(line_no) + ": trailing tokens");
    }
    edges.emplace_back(parse_id(a, path, line_no), parse_id(b, path, line_no));
  }

  Graph g = Graph::from_original_edges(edges);
  if (g.edge_count() == 0) throw io_error(path + ": empty edge set");
  return g;
}

namespace {

int map_to_internal(const Graph& g, std::int64_t original,
                    const std::string& path, int line_no) {
  auto internal = g.internal_id(original);
  if (!internal) {
    throw validation_error(path + ":" + std::to_string(line_no) + ": node " +
                           std::to_string(original) + " not present in graph");
  }
  return *internal;
}

std::vector<NodeSet> load_line_communities(const std::string& path,
                                           const Graph& g, int min_size) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");

  std::vector<NodeSet> communities;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (comment_or_blank(line)) continue;
    std::istringstream tokens(line);
    std::string token;
    std::vector<int> members;
    while (tokens >> token) {
      members.push_back(
          map_to_internal(g, parse_id(token, path, line_no), path, line_no));
    }
    NodeSet community(std::move(members));
    if (community.size() >= min_size) communities.push_back(std::move(community));
  }
  return communities;
}

std::vector<NodeSet> load_lfr_communities(const std::string& path,
                                          const Graph& g, int min_size) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");

  // community.dat: "node <tab> community-id(s)". Invert into node lists,
  // ordered by community id.
  std::map<std::int64_t, std::vector<int>> by_community;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (comment_or_blank(line)) continue;
    std::istringstream tokens(line);
    std::string node_token;
    if (!(tokens >> node_token)) continue;
    int node = map_to_internal(g, parse_id(node_token, path, line_no), path, line_no);
    std::string comm_token;
    bool any = false;
    while (tokens >> comm_token) {
      any = true;
      by_community[parse_id(comm_token, path, line_no)].push_back(node);
    }
    if (!any) {
      throw io_error(path + ":" + std::to_string(line_no) +
                     ": node line without community ids");
    }
  }

  std::vector<NodeSet> communities;
  for (auto& [id, members] : by_community) {
    NodeSet community(std::move(members));
    if (community.size() >= min_size) communities.push_back(std::move(community));
  }
  return communities;
}

}  // namespace

std::vector<NodeSet> load_communities(const std::string& path, const Graph& g,
                                      const LoaderOptions& options, int min_size) {
  if (options.format == InputFormat::lfr)
    return load_lfr_communities(path, g, min_size);
  return load_line_communities(path, g, min_size);
}

}  // namespace sigcond
