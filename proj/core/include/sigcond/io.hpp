// Loaders for SNAP-style edge lists, community files (one community per
// line), and LFR benchmark output (network.dat / community.dat).
#pragma once

#include <string>
#include <vector>

#include "sigcond/graph.hpp"

namespace sigcond {

enum class InputFormat { edgelist, lfr };

struct LoaderOptions {
  InputFormat format = InputFormat::edgelist;
};

/// Whitespace-separated node-id pairs, one edge per line; lines starting
/// with '#' are comments. Self-loops dropped, duplicates collapsed,
/// symmetry enforced. LFR network.dat parses identically (1-based ids are
/// just original ids).
Graph load_edge_list(const std::string& path, const LoaderOptions& options = {});

/// Communities in original ids, mapped to internal ids. Format edgelist:
/// one community per line, whitespace-separated. Format lfr: community.dat
/// lines "node <tab> community-id(s)", inverted into node lists.
/// Communities smaller than min_size are dropped.
std::vector<NodeSet> load_communities(const std::string& path, const Graph& g,
                                      const LoaderOptions& options = {},
                                      int min_size = 1);

}  // namespace sigcond
