#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "atr/bench.hpp"
#include "doctest.h"
#include "support/oracle.hpp"

using namespace atr;

namespace {

void check_gadget(const GadgetSpec& spec) {
  GadgetInstance gi = generate_gadget(spec);
  const Graph& g = gi.graph;
  TrussLabeling lab = truss_decompose(g);
  for (std::size_t i = 0; i < spec.s; ++i) {
    std::vector<std::size_t> set = spec.membership[i];
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    CHECK(lab.trussness[gi.set_edges[i]] == set.size() + 2);

    EdgeId a[] = {gi.set_edges[i]};
    auto followers = atr::testing::brute_followers(g, gi.set_edges[i]);
    std::vector<EdgeId> expect;
    for (std::size_t j : set) expect.push_back(gi.element_edges[j]);
    CHECK(followers == expect);
    CHECK(atr::testing::brute_gain(g, a) == set.size());
  }
  for (EdgeId f : gi.element_edges) CHECK(lab.trussness[f] == spec.t + 2);

  // Anchoring every set edge raises each covered element by exactly one.
  TrussLabeling all = anchored_truss_decompose(g, gi.set_edges).labeling;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (all.is_anchor(e)) continue;
    bool element = std::find(gi.element_edges.begin(), gi.element_edges.end(), e) != gi.element_edges.end();
    CHECK(all.trussness[e] - lab.trussness[e] == (element ? 1u : 0u));
  }
}

}  // namespace

TEST_CASE("gadget trussness and follower structure") {
  check_gadget({1, 1, {{0}}});
  check_gadget({2, 2, {{0}, {1}}});
  check_gadget({3, 4, {{0, 1}, {1, 2}, {2, 3}}});
  check_gadget({2, 3, {{0, 1, 2}, {2}}});
}

TEST_CASE("edges outside the set edges gain nothing") {
  GadgetInstance gi = generate_gadget({2, 2, {{0, 1}, {1}}});
  const Graph& g = gi.graph;
  TrussLabeling lab = truss_decompose(g);
  FollowerSearch search(g, lab);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    bool set_edge = std::find(gi.set_edges.begin(), gi.set_edges.end(), e) != gi.set_edges.end();
    if (!set_edge) CHECK(search.run(e).followers.empty());
  }
}

TEST_CASE("greedy on gadgets follows greedy max coverage") {
  for (const GadgetSpec& spec : enumerate_gadget_specs(2, 3)) {
    GadgetInstance gi = generate_gadget(spec);
    for (std::size_t b = 1; b <= spec.s; ++b) {
      CoverageResult cov = greedy_max_coverage(spec, b);
      SelectionResult r = select_gas(gi.graph, b);
      std::vector<EdgeId> picks;
      for (std::size_t i : cov.sets) picks.push_back(gi.set_edges[i]);
      CHECK(r.anchors == picks);
      CHECK(r.total_gain == cov.covered);
    }
  }
}

TEST_CASE("gadget spec enumeration and validation") {
  auto specs = enumerate_gadget_specs(2, 2);
  // Ordered pairs of nonempty subsets of {0,1} whose union is {0,1}.
  CHECK(specs.size() == 7);
  CHECK_THROWS(generate_gadget({1, 1, {}}));
  CHECK_THROWS(generate_gadget({1, 2, {{5}}}));
  CHECK(greedy_max_coverage({3, 4, {{0, 1}, {1, 2, 3}, {3}}}, 2).covered == 4);
  CHECK(greedy_max_coverage({2, 2, {{0}, {1}}}, 1).sets == std::vector<std::size_t>{0});
}

TEST_CASE("membership files") {
  std::istringstream in("# sets\n0 1\n\n1 2 # trailing\n2 3\n");
  GadgetSpec spec = parse_membership(in, 3, 4);
  CHECK(spec.membership == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 2}, {2, 3}});
  std::istringstream bad("0 x\n");
  CHECK_THROWS_AS(parse_membership(bad, 1, 2), ParseError);
}

TEST_CASE("sampling") {
  Graph g = powerlaw_cluster(400, 4, 0.6, 9);
  Graph same = subgraph_sample(g, SampleMode::kVertex, 1.0, 1);
  CHECK(same.num_edges() == g.num_edges());
  Graph half = subgraph_sample(g, SampleMode::kEdge, 0.5, 2);
  CHECK(half.num_edges() == g.num_edges() / 2);
  Graph again = subgraph_sample(g, SampleMode::kEdge, 0.5, 2);
  CHECK(half.num_vertices() == again.num_vertices());
  for (EdgeId e = 0; e < half.num_edges(); ++e) {
    auto [u, v] = half.endpoints(e);
    auto [x, y] = again.endpoints(e);
    CHECK(half.label(u) == again.label(x));
    CHECK(half.label(v) == again.label(y));
    // Labels refer back to a real edge of the source graph.
    CHECK(g.find_edge(VertexId(half.label(u)), VertexId(half.label(v))).has_value());
  }
  for (VertexId v = 0; v < half.num_vertices(); ++v) CHECK(half.degree(v) > 0);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph ball = subgraph_sample(g, SampleMode::kBall, 1.0, seed);
    CHECK(ball.num_edges() >= 150);
    CHECK(ball.num_edges() <= 250);
  }
  CHECK_THROWS(subgraph_sample(g, SampleMode::kVertex, 0.0, 1));
  CHECK(parse_sample_mode("edge") == SampleMode::kEdge);
}

TEST_CASE("non-submodularity witness") {
  auto w = find_nonsubmodular_witness(1, 500);
  REQUIRE(w.has_value());
  CHECK(atr::testing::brute_gain(w->graph, w->a) == w->gain_a);
  CHECK(atr::testing::brute_gain(w->graph, w->b) == w->gain_b);
  std::vector<EdgeId> both{w->a[0], w->b[0]};
  CHECK(atr::testing::brute_gain(w->graph, both) == w->gain_union);
  CHECK(w->gain_a + w->gain_b < w->gain_union + w->gain_intersection);
}

TEST_CASE("generators") {
  Graph er = erdos_renyi(30, 0.2, 4);
  CHECK(er.num_vertices() == 30);
  Graph pl = planted_cliques(20, {6}, 0.0, 4);
  CHECK(pl.num_edges() == 15);
  CHECK(truss_decompose(pl).k_max == 6);
  CHECK(make_generated_graph("planted:20:0:6", 4).num_edges() == 15);
  CHECK_THROWS(make_generated_graph("nope:1", 1));
  for (const Graph& g : random_corpus(20, 5)) CHECK(g.num_edges() <= 300);
}

TEST_CASE("experiment with an empty budget list writes headers only") {
  auto dir = std::filesystem::temp_directory_path() / "atr_bench_empty";
  std::filesystem::remove_all(dir);
  ExperimentSpec spec;
  spec.generator = "er:20:0.3";
  spec.output_dir = dir;
  spec.route_sizes = false;
  spec.reuse = false;
  run_experiment(spec);
  std::ifstream runs(dir / "runs.csv");
  std::string all((std::istreambuf_iterator<char>(runs)), {});
  CHECK(all == "strategy,b,gain,wall_seconds\n");
  CHECK(std::filesystem::exists(dir / "report.json"));
}

TEST_CASE("small experiment sweep") {
  auto dir = std::filesystem::temp_directory_path() / "atr_bench_small";
  std::filesystem::remove_all(dir);
  ExperimentSpec spec;
  spec.generator = "plc:150:3:0.5";
  spec.strategies = {Strategy::kGas, Strategy::kBasePlus, Strategy::kRand, Strategy::kExact};
  spec.budgets = {1, 2, 3};
  spec.trials = 5;
  spec.exact_cap = 10;
  spec.output_dir = dir;
  spec.sample_ratios = {0.5, 1.0};
  ExperimentReport rep = run_experiment(spec);
  CHECK_FALSE(rep.notices.empty());  // exact exceeds the tiny cap
  for (const char* f : {"runs.csv", "route_sizes.csv", "reuse.csv", "scalability.csv", "report.json"})
    CHECK(std::filesystem::exists(dir / f));
  std::ifstream runs(dir / "runs.csv");
  std::string line;
  std::size_t rows = 0;
  while (std::getline(runs, line)) ++rows;
  CHECK(rows == 1 + 3 + 3 + 3);
}

TEST_CASE("reference targets") {
  auto ref = reference_targets("data/CollegeMsg.txt");
  REQUIRE(ref.has_value());
  CHECK(*ref->gas_gain_b100 == 769);
  CHECK_FALSE(reference_targets("other.txt").has_value());
}
