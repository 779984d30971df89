#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "graphband/graph.hpp"

using namespace graphband;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/graphband_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

// traversal oracle: connectivity of the symmetrized graph without self-loops
bool connected_oracle(const FeedbackGraph& g) {
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < g.n; ++w)
      if (w != v && (g.edge(v, w) || g.edge(w, v)) && !seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == g.n;
}

bool has_self_loops(const FeedbackGraph& g) {
  for (int a = 0; a < g.n; ++a)
    if (!g.edge(a, a)) return false;
  return true;
}

}  // namespace

TEST_CASE("out_neighbors on the named topologies") {
  const FeedbackGraph star = gen_star(6);
  CHECK(star.out_neighbors(0) == std::vector<int>{0, 1, 2, 3, 4, 5});

  const FeedbackGraph identity(4);
  CHECK(identity.out_neighbors(3) == std::vector<int>{3});

  const FeedbackGraph complete = gen_complete(4);
  CHECK(complete.out_neighbors(1) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("in_neighbors on the named topologies") {
  const FeedbackGraph star = gen_star(6);
  CHECK(star.in_neighbors(1) == std::vector<int>{0, 1});

  const FeedbackGraph identity(4);
  CHECK(identity.in_neighbors(0) == std::vector<int>{0});

  // undirected graphs: in == out everywhere
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const FeedbackGraph g = gen_random(7, 0.2, rng);
    for (int a = 0; a < g.n; ++a) CHECK(g.in_neighbors(a) == g.out_neighbors(a));
  }
}

TEST_CASE("clique groups partition into near-equal complete blocks") {
  const FeedbackGraph g = gen_clique_group(4, 2);
  CHECK(g.edge(0, 1));
  CHECK(g.edge(2, 3));
  CHECK_FALSE(g.edge(1, 2));
  CHECK_FALSE(g.edge(0, 3));
  CHECK(independence_number_bruteforce(g) == 2);

  CHECK(independence_number_bruteforce(gen_clique_group(20, 5)) == 5);

  // singleton cliques degenerate to the identity graph
  const FeedbackGraph id = gen_clique_group(6, 6);
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v) CHECK(id.edge(u, v) == (u == v));

  // uneven split: sizes differ by at most one
  const FeedbackGraph uneven = gen_clique_group(7, 3);
  std::vector<int> block_size;
  for (int start = 0; start < 7;) {
    int size = 1;
    while (start + size < 7 && uneven.edge(start, start + size)) ++size;
    block_size.push_back(size);
    start += size;
  }
  CHECK(block_size == std::vector<int>{3, 2, 2});

  // the independence number is the clique count across the whole small range
  for (int n : {5, 9, 14, 20})
    for (int c = 1; c <= n; c += 3) CHECK(independence_number_bruteforce(gen_clique_group(n, c)) == c);
}

TEST_CASE("star graphs center node 0") {
  const FeedbackGraph g = gen_star(6);
  for (int leaf = 1; leaf < 6; ++leaf) {
    CHECK(g.edge(0, leaf));
    CHECK(g.edge(leaf, 0));
  }
  for (int i = 1; i < 6; ++i)
    for (int j = 1; j < 6; ++j)
      if (i != j) CHECK_FALSE(g.edge(i, j));

  CHECK(gen_star(2).n == 2);
  CHECK(independence_number_bruteforce(gen_star(2)) == 1);
  CHECK(independence_number_bruteforce(gen_star(10)) == 9);
}

TEST_CASE("random generator spends exactly the pair budget") {
  Rng rng(42);
  const FeedbackGraph empty = gen_random(5, 0.0, rng);
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v) CHECK(empty.edge(u, v) == (u == v));

  // replay the sampling loop: 0.2 * 25 = 5 undirected pair draws
  Rng a(7), b(7);
  const FeedbackGraph g = gen_random(5, 0.2, a);
  FeedbackGraph expect(5);
  std::uniform_int_distribution<int> node(0, 4);
  for (int i = 0; i < 5; ++i) {
    const int u = node(b);
    const int v = node(b);
    expect.add_undirected(u, v);
  }
  CHECK(g == expect);
  CHECK(a() == b());  // no extra rng consumption

  // large budget saturates into the complete graph
  Rng dense_rng(3);
  for (int seed = 0; seed < 20; ++seed) {
    const FeedbackGraph dense = gen_random(5, 10.0, dense_rng);
    for (int u = 0; u < 5; ++u)
      for (int v = 0; v < 5; ++v) CHECK(dense.edge(u, v));
  }
}

TEST_CASE("generators are deterministic under a fixed seed") {
  Rng a(123), b(123);
  CHECK(gen_random(9, 0.3, a) == gen_random(9, 0.3, b));
  CHECK(gen_clique_group(9, 2) == gen_clique_group(9, 2));
}

TEST_CASE("every generated graph keeps its self-loops") {
  Rng rng(11);
  CHECK(has_self_loops(gen_complete(5)));
  CHECK(has_self_loops(gen_star(5)));
  CHECK(has_self_loops(gen_clique_group(11, 4)));
  for (int i = 0; i < 5; ++i) CHECK(has_self_loops(gen_random(8, 0.1 * i, rng)));
}

TEST_CASE("edge list loading relabels, deduplicates and reports errors") {
  const UndirectedEdgeList a = load_edge_list(write_temp("a.txt", "0 1\n1 2\n"));
  CHECK(a.node_count == 3);
  CHECK(a.edges.size() == 2);

  const UndirectedEdgeList b = load_edge_list(write_temp("b.txt", "2 1\n1 2\n"));
  CHECK(b.node_count == 2);
  CHECK(b.edges.size() == 1);

  const UndirectedEdgeList c = load_edge_list(write_temp("c.txt", "# comment\n5 9\n"));
  CHECK(c.node_count == 2);
  CHECK(c.edges.size() == 1);

  CHECK_THROWS_WITH_AS(load_edge_list(write_temp("bad.txt", "0 1\n1 x\n")),
                       doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS_AS(load_edge_list(write_temp("empty.txt", "")), std::runtime_error);
  CHECK_THROWS_AS(load_edge_list("/tmp/graphband_does_not_exist.txt"), std::runtime_error);
}

TEST_CASE("connected subgraph sampling") {
  UndirectedEdgeList path;
  path.node_count = 4;
  path.edges = {{0, 1}, {1, 2}, {2, 3}};

  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const FeedbackGraph g = sample_connected_subgraph(path, 2, rng);
    CHECK(g.n == 2);
    CHECK(g.edge(0, 1));  // any 2 connected path nodes induce one edge
    CHECK(connected_oracle(g));
  }

  // components of sizes 3 and 10: a size-5 sample must come from the big one
  UndirectedEdgeList two;
  two.node_count = 13;
  two.edges = {{0, 1}, {1, 2}, {2, 0}};
  for (int v = 3; v < 12; ++v) two.edges.emplace_back(v, v + 1);
  for (int i = 0; i < 20; ++i) {
    const FeedbackGraph g = sample_connected_subgraph(two, 5, rng);
    CHECK(g.n == 5);
    CHECK(connected_oracle(g));
    CHECK(has_self_loops(g));
  }
  CHECK_THROWS_AS(sample_connected_subgraph(two, 11, rng), std::runtime_error);

  // random host graph: every sample connected, exact size
  Rng gen(23);
  const FeedbackGraph host = gen_random(20, 0.12, gen);
  UndirectedEdgeList host_edges;
  host_edges.node_count = 20;
  for (int u = 0; u < 20; ++u)
    for (int v = u + 1; v < 20; ++v)
      if (host.edge(u, v)) host_edges.edges.emplace_back(u, v);
  for (int i = 0; i < 100; ++i) {
    const FeedbackGraph g = sample_connected_subgraph(host_edges, 4, gen);
    CHECK(g.n == 4);
    CHECK(connected_oracle(g));
  }
}

TEST_CASE("pools draw uniformly and persist") {
  UndirectedEdgeList path;
  path.node_count = 6;
  path.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};

  Rng rng(31);
  const GraphSource single = build_pool(path, 1, 3, rng);
  REQUIRE(single.pool.size() == 1);
  Rng draw(1);
  for (int i = 0; i < 10; ++i) CHECK(single.make(3, draw) == single.pool[0]);

  Rng a(5), b(5);
  const GraphSource pa = build_pool(path, 8, 3, a);
  const GraphSource pb = build_pool(path, 8, 3, b);
  CHECK(pa.pool == pb.pool);

  save_pool(pa, "/tmp/graphband_test_pool");
  const GraphSource loaded = load_pool("/tmp/graphband_test_pool");
  REQUIRE(loaded.pool.size() == pa.pool.size());
  for (size_t i = 0; i < pa.pool.size(); ++i) CHECK(loaded.pool[i] == pa.pool[i]);

  GraphSource empty;
  empty.kind = GraphKind::pool;
  Rng r(1);
  CHECK_THROWS_AS(empty.make(3, r), std::logic_error);
}

TEST_CASE("greedy exploration set on the motivating star") {
  const FeedbackGraph star = gen_star(6);
  const std::vector<int> all{0, 1, 2, 3, 4, 5};
  // center slightly suboptimal, one leaf best, other leaves far behind
  const std::vector<double> gaps{0.1, 0.0, 1.0, 1.0, 1.0, 1.0};
  const std::vector<int> s = greedy_exploration_set(star, all, gaps);
  CHECK(s == std::vector<int>{1, 2, 3, 4, 5});  // every leaf, center excluded

  const FeedbackGraph identity(4);
  CHECK(greedy_exploration_set(identity, {2, 0, 3}, {0.5, 9.0, 0.25, 0.75}) ==
        std::vector<int>{2, 0, 3});

  const FeedbackGraph complete = gen_complete(5);
  CHECK(greedy_exploration_set(complete, {0, 1, 2, 3, 4}, {3, 2, 0.5, 1, 4}) ==
        std::vector<int>{2});
}

TEST_CASE("brute-force independence numbers") {
  CHECK(independence_number_bruteforce(gen_complete(5)) == 1);
  CHECK(independence_number_bruteforce(gen_star(6)) == 5);
  CHECK(independence_number_bruteforce(gen_clique_group(20, 5)) == 5);
  CHECK(independence_number_bruteforce(FeedbackGraph(1)) == 1);
  CHECK_THROWS_AS(independence_number_bruteforce(FeedbackGraph(21)), std::invalid_argument);
}

TEST_CASE("exploration sets are dominating independence sets bounded by alpha") {
  Rng rng(2024);
  std::uniform_int_distribution<int> size_dist(2, 12);
  std::uniform_real_distribution<double> gap_dist(0.0, 3.0);
  std::uniform_real_distribution<double> density(0.0, 0.4);

  for (int trial = 0; trial < 200; ++trial) {
    const int n = size_dist(rng);
    const FeedbackGraph g = gen_random(n, density(rng), rng);
    std::vector<double> gaps(n);
    for (double& v : gaps) v = gap_dist(rng);

    std::vector<int> candidates;
    for (int a = 0; a < n; ++a)
      if (rng() % 3 != 0) candidates.push_back(a);
    if (candidates.empty()) candidates.push_back(static_cast<int>(rng() % n));

    const std::vector<int> s = greedy_exploration_set(g, candidates, gaps);
    REQUIRE_FALSE(s.empty());

    // (i) no member lies in another member's out-neighborhood
    for (int u : s)
      for (int v : s)
        if (u != v) CHECK_FALSE(g.edge(u, v));

    // (ii) skipped candidates are observed by a member with a smaller gap
    for (int c : candidates) {
      if (std::find(s.begin(), s.end(), c) != s.end()) continue;
      bool dominated = false;
      for (int member : s)
        if (g.edge(member, c) && gaps[member] <= gaps[c]) dominated = true;
      CHECK(dominated);
    }

    // (iii) independence sets cannot beat the brute-force optimum
    CHECK(static_cast<int>(s.size()) <= independence_number_bruteforce(g));

    // the zero-gap arm is always kept
    const int best =
        *std::min_element(candidates.begin(), candidates.end(),
                          [&](int a, int b) { return gaps[a] != gaps[b] ? gaps[a] < gaps[b] : a < b; });
    CHECK(s.front() == best);
  }
}
