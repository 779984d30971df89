#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphband/rng.hpp"

namespace graphband {

// Directed feedback graph over the action set. adj[u][v] means playing u
// reveals the reward of v. Self-loops are mandatory: every constructor and
// generator in this module keeps adj[a][a] set, and mutation goes through
// add_edge / add_undirected which cannot clear them.
struct FeedbackGraph {
  int n = 0;
  std::vector<uint8_t> adj;  // row-major n*n

  FeedbackGraph() = default;
  explicit FeedbackGraph(int nodes);

  bool edge(int u, int v) const { return adj[static_cast<size_t>(u) * n + v] != 0; }
  void add_edge(int u, int v) { adj[static_cast<size_t>(u) * n + v] = 1; }
  void add_undirected(int u, int v) {
    add_edge(u, v);
    add_edge(v, u);
  }

  std::vector<int> out_neighbors(int a) const;
  std::vector<int> in_neighbors(int a) const;

  bool operator==(const FeedbackGraph& other) const = default;
};

FeedbackGraph gen_complete(int n);

// c contiguous blocks with sizes differing by at most one, complete inside
// each block, no edges across. Independence number is exactly c.
FeedbackGraph gen_clique_group(int n, int cliques);

// Node 0 is the center, undirected edges to every leaf.
FeedbackGraph gen_star(int n);

// Starts from the identity matrix and keeps adding uniformly sampled
// undirected edges (repeats count) until dense_factor * n^2 draws were made.
FeedbackGraph gen_random(int n, double dense_factor, Rng& rng);

// Undirected edge list with dense 0-based node ids, as produced by
// load_edge_list. Orientation and duplicates are already collapsed.
struct UndirectedEdgeList {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
};

// Reads whitespace-separated "u v" pairs, one per line; '#' lines are
// comments. Node ids are relabeled to 0..k-1 in order of first appearance.
// Throws std::runtime_error naming the line on malformed input or if the
// file contains no edges.
UndirectedEdgeList load_edge_list(const std::string& path);

// Grows a connected node set of exactly `size` nodes by randomized BFS from
// a uniformly random start inside a component that is large enough
// (union-find locates the components). Returns the induced subgraph with
// self-loops. Throws if no component has `size` nodes.
FeedbackGraph sample_connected_subgraph(const UndirectedEdgeList& e, int size, Rng& rng);

enum class GraphKind { complete, clique_group, star, random, pool };

// Per-round graph supplier. Synthetic kinds regenerate from their
// parameters; the pool kind draws uniformly from pre-sampled subgraphs.
struct GraphSource {
  GraphKind kind = GraphKind::complete;
  int cliques = 1;            // clique_group
  double dense_factor = 0.0;  // random
  std::vector<FeedbackGraph> pool;
  bool resample_each_round = true;

  FeedbackGraph make(int n, Rng& rng) const;
};

GraphSource build_pool(const UndirectedEdgeList& e, int pool_size, int subgraph_size, Rng& rng);

// Pool persistence: one edge-list file per subgraph plus an index file.
void save_pool(const GraphSource& source, const std::string& dir);
GraphSource load_pool(const std::string& dir);

// Greedy independence-set construction: scan candidates by ascending gap
// (ties by node index), keep an arm unless an earlier pick already observes
// it, then block its whole out-neighborhood.
std::vector<int> greedy_exploration_set(const FeedbackGraph& g,
                                        const std::vector<int>& candidates,
                                        const std::vector<double>& gaps);

// Exact maximum independent set size by exhaustive search, treating the
// graph as undirected and ignoring self-loops. Test oracle; refuses n > 20.
int independence_number_bruteforce(const FeedbackGraph& g);

}  // namespace graphband
