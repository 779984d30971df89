#include "graphband/graph.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace graphband {

FeedbackGraph::FeedbackGraph(int nodes) : n(nodes), adj(static_cast<size_t>(nodes) * nodes, 0) {
  if (nodes < 1) throw std::invalid_argument("FeedbackGraph: need at least one node");
  for (int a = 0; a < n; ++a) add_edge(a, a);
}

std::vector<int> FeedbackGraph::out_neighbors(int a) const {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (edge(a, v)) out.push_back(v);
  return out;
}

std::vector<int> FeedbackGraph::in_neighbors(int a) const {
  std::vector<int> in;
  for (int v = 0; v < n; ++v)
    if (edge(v, a)) in.push_back(v);
  return in;
}

FeedbackGraph gen_complete(int n) {
  FeedbackGraph g(n);
  std::fill(g.adj.begin(), g.adj.end(), uint8_t{1});
  return g;
}

FeedbackGraph gen_clique_group(int n, int cliques) {
  if (cliques < 1 || cliques > n) throw std::invalid_argument("gen_clique_group: need 1 <= cliques <= n");
  FeedbackGraph g(n);
  const int base = n / cliques;
  const int extra = n % cliques;  // first `extra` blocks get one more node
  int start = 0;
  for (int c = 0; c < cliques; ++c) {
    const int size = base + (c < extra ? 1 : 0);
    for (int u = start; u < start + size; ++u)
      for (int v = start; v < start + size; ++v) g.add_edge(u, v);
    start += size;
  }
  return g;
}

FeedbackGraph gen_star(int n) {
  if (n < 2) throw std::invalid_argument("gen_star: need n >= 2");
  FeedbackGraph g(n);
  for (int leaf = 1; leaf < n; ++leaf) g.add_undirected(0, leaf);
  return g;
}

FeedbackGraph gen_random(int n, double dense_factor, Rng& rng) {
  if (dense_factor < 0) throw std::invalid_argument("gen_random: dense factor must be >= 0");
  FeedbackGraph g(n);
  std::uniform_int_distribution<int> node(0, n - 1);
  const double budget = dense_factor * n * n;
  long counter = 0;
  while (counter < budget) {
    const int u = node(rng);
    const int v = node(rng);
    g.add_undirected(u, v);
    ++counter;
  }
  return g;
}

UndirectedEdgeList load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);

  std::unordered_map<long, int> relabel;
  auto id_of = [&](long raw) {
    auto [it, inserted] = relabel.try_emplace(raw, static_cast<int>(relabel.size()));
    return it->second;
  };

  UndirectedEdgeList out;
  std::vector<std::pair<int, int>> seen;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long u = 0, v = 0;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest)) {
      throw std::runtime_error("load_edge_list: malformed line " + std::to_string(line_no) + " in " + path);
    }
    seen.emplace_back(id_of(u), id_of(v));
  }
  if (relabel.empty()) throw std::runtime_error("load_edge_list: " + path + " describes an empty graph");

  out.node_count = static_cast<int>(relabel.size());
  // collapse orientation and duplicates
  std::vector<std::pair<int, int>> canon;
  canon.reserve(seen.size());
  for (auto [u, v] : seen) canon.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  out.edges = std::move(canon);
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent, size;
  explicit UnionFind(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

std::vector<std::vector<int>> adjacency_of(const UndirectedEdgeList& e) {
  std::vector<std::vector<int>> adj(e.node_count);
  for (auto [u, v] : e.edges) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

}  // namespace

FeedbackGraph sample_connected_subgraph(const UndirectedEdgeList& e, int size, Rng& rng) {
  if (size < 1) throw std::invalid_argument("sample_connected_subgraph: size must be >= 1");
  if (size > e.node_count)
    throw std::runtime_error("sample_connected_subgraph: no component with " + std::to_string(size) + " nodes");

  UnionFind uf(e.node_count);
  for (auto [u, v] : e.edges)
    if (u != v) uf.unite(u, v);

  std::vector<int> eligible;
  for (int v = 0; v < e.node_count; ++v)
    if (uf.size[uf.find(v)] >= size) eligible.push_back(v);
  if (eligible.empty())
    throw std::runtime_error("sample_connected_subgraph: no component with " + std::to_string(size) + " nodes");

  const auto adj = adjacency_of(e);
  std::uniform_int_distribution<size_t> pick_start(0, eligible.size() - 1);
  const int start = eligible[pick_start(rng)];

  // randomized BFS: grow from `start`, taking a uniformly random frontier
  // node each step, until the set has the requested size
  std::vector<char> chosen(e.node_count, 0), queued(e.node_count, 0);
  std::vector<int> nodes, frontier;
  frontier.push_back(start);
  queued[start] = 1;
  while (static_cast<int>(nodes.size()) < size) {
    std::uniform_int_distribution<size_t> pick(0, frontier.size() - 1);
    const size_t i = pick(rng);
    const int v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    chosen[v] = 1;
    nodes.push_back(v);
    for (int w : adj[v])
      if (!queued[w]) {
        queued[w] = 1;
        frontier.push_back(w);
      }
  }

  std::sort(nodes.begin(), nodes.end());
  std::vector<int> local(e.node_count, -1);
  for (int i = 0; i < size; ++i) local[nodes[i]] = i;

  FeedbackGraph g(size);
  for (auto [u, v] : e.edges)
    if (u != v && local[u] >= 0 && local[v] >= 0) g.add_undirected(local[u], local[v]);
  return g;
}

FeedbackGraph GraphSource::make(int n, Rng& rng) const {
  switch (kind) {
    case GraphKind::complete:
      return gen_complete(n);
    case GraphKind::clique_group:
      return gen_clique_group(n, cliques);
    case GraphKind::star:
      return gen_star(n);
    case GraphKind::random:
      return gen_random(n, dense_factor, rng);
    case GraphKind::pool: {
      if (pool.empty()) throw std::logic_error("GraphSource: empty pool");
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      return pool[pick(rng)];
    }
  }
  throw std::logic_error("GraphSource: unknown kind");
}

GraphSource build_pool(const UndirectedEdgeList& e, int pool_size, int subgraph_size, Rng& rng) {
  if (pool_size < 1) throw std::invalid_argument("build_pool: pool_size must be >= 1");
  GraphSource source;
  source.kind = GraphKind::pool;
  source.resample_each_round = true;
  source.pool.reserve(pool_size);
  for (int i = 0; i < pool_size; ++i) source.pool.push_back(sample_connected_subgraph(e, subgraph_size, rng));
  return source;
}

void save_pool(const GraphSource& source, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream index(fs::path(dir) / "pool.index");
  if (!index) throw std::runtime_error("save_pool: cannot write index in " + dir);
  for (size_t i = 0; i < source.pool.size(); ++i) {
    const std::string name = "subgraph_" + std::to_string(i) + ".txt";
    index << name << "\n";
    std::ofstream out(fs::path(dir) / name);
    const FeedbackGraph& g = source.pool[i];
    // self-loop lines keep isolated nodes representable in the edge format
    for (int u = 0; u < g.n; ++u) {
      out << u << " " << u << "\n";
      for (int v = u + 1; v < g.n; ++v)
        if (g.edge(u, v)) out << u << " " << v << "\n";
    }
  }
}

GraphSource load_pool(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream index(fs::path(dir) / "pool.index");
  if (!index) throw std::runtime_error("load_pool: cannot open index in " + dir);
  GraphSource source;
  source.kind = GraphKind::pool;
  source.resample_each_round = true;
  std::string name;
  while (index >> name) {
    const UndirectedEdgeList e = load_edge_list((fs::path(dir) / name).string());
    FeedbackGraph g(e.node_count);
    for (auto [u, v] : e.edges)
      if (u != v) g.add_undirected(u, v);
    source.pool.push_back(std::move(g));
  }
  if (source.pool.empty()) throw std::runtime_error("load_pool: empty pool in " + dir);
  return source;
}

std::vector<int> greedy_exploration_set(const FeedbackGraph& g,
                                        const std::vector<int>& candidates,
                                        const std::vector<double>& gaps) {
  std::vector<int> order = candidates;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (gaps[a] != gaps[b]) return gaps[a] < gaps[b];
    return a < b;
  });

  std::vector<char> blocked(g.n, 0);
  std::vector<int> s;
  for (int a : order) {
    if (blocked[a]) continue;
    s.push_back(a);
    for (int v = 0; v < g.n; ++v)
      if (g.edge(a, v)) blocked[v] = 1;
  }
  return s;
}

int independence_number_bruteforce(const FeedbackGraph& g) {
  if (g.n > 20) throw std::invalid_argument("independence_number_bruteforce: n > 20");
  // symmetrized adjacency masks without self-loops
  std::vector<uint32_t> nbr(g.n, 0);
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v)
      if (u != v && (g.edge(u, v) || g.edge(v, u))) nbr[u] |= 1u << v;

  int best = 0;
  // branch on the lowest remaining vertex: either skip it or take it and
  // drop its neighborhood
  auto rec = [&](auto&& self, uint32_t remaining, int count) -> void {
    if (remaining == 0) {
      best = std::max(best, count);
      return;
    }
    if (count + __builtin_popcount(remaining) <= best) return;
    const int v = __builtin_ctz(remaining);
    self(self, remaining & ~(1u << v) & ~nbr[v], count + 1);
    self(self, remaining & ~(1u << v), count);
  };
  rec(rec, (g.n == 32 ? ~0u : (1u << g.n) - 1), 0);
  return best;
}

}  // namespace graphband
