#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "atr/anchor_select.hpp"
#include "atr/graph.hpp"

namespace atr {

// ---- max-coverage gadget ---------------------------------------------------

struct GadgetSpec {
  std::size_t s = 0;  // sets
  std::size_t t = 0;  // elements
  std::vector<std::vector<std::size_t>> membership;  // per set, 0-based element indices
};

// One line per set listing its element indices; '#' starts a comment.
GadgetSpec parse_membership(std::istream& in, std::size_t s, std::size_t t);
GadgetSpec load_membership(const std::filesystem::path& path, std::size_t s, std::size_t t);

struct GadgetInstance {
  Graph graph;
  std::vector<EdgeId> set_edges;      // a_i, ids 0..s-1
  std::vector<EdgeId> element_edges;  // f_j, ids s..s+t-1
};

// A hub vertex h carries every a_i = (h, p_i) and f_j = (h, r_j). Each
// membership (i, j) adds a (t+3)-clique whose first edge is (p_i, r_j),
// closing the triangle {a_i, f_j, (p_i, r_j)}. Each f_j gets t more triangles
// (h, r_j, z), where (h, z) and (r_j, z) sit in two further (t+3)-cliques.
GadgetInstance generate_gadget(const GadgetSpec& spec);

struct CoverageResult {
  std::vector<std::size_t> sets;    // picks in order
  std::vector<std::size_t> gains;   // newly covered elements per pick
  std::size_t covered = 0;
};

// Greedy max coverage; ties go to the smallest set index.
CoverageResult greedy_max_coverage(const GadgetSpec& spec, std::size_t b);

// Every set system with s sets over t elements in which each set is nonempty
// and every element is covered.
std::vector<GadgetSpec> enumerate_gadget_specs(std::size_t s, std::size_t t);

// ---- synthetic graphs ------------------------------------------------------

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Cliques of the given sizes on random vertex subsets, plus G(n, noise).
Graph planted_cliques(std::size_t n, const std::vector<std::size_t>& clique_sizes, double noise,
                      std::uint64_t seed);

// Holme-Kim growth: preferential attachment with `attach` edges per new
// vertex, each followed by a triangle-closing step with probability p_triad.
Graph powerlaw_cluster(std::size_t n, std::size_t attach, double p_triad, std::uint64_t seed);

// Mixed Erdos-Renyi / planted-clique graphs with at most max_edges edges.
std::vector<Graph> random_corpus(std::size_t count, std::uint64_t seed, std::size_t max_edges = 300);

// ---- sampling --------------------------------------------------------------

enum class SampleMode { kVertex, kEdge, kBall };

struct BallBounds {
  std::size_t min_edges = 150;
  std::size_t max_edges = 250;
};

// Vertex mode keeps the subgraph induced by a ratio of the vertices; edge
// mode keeps a ratio of the edges and drops isolated vertices; ball mode
// grows breadth-first from a random vertex, adding one vertex at a time, and
// returns the first induced subgraph whose edge count lands inside `bounds`
// (retrying from other start vertices). Original labels are preserved.
Graph subgraph_sample(const Graph& g, SampleMode mode, double ratio, std::uint64_t seed,
                      BallBounds bounds = {});
SampleMode parse_sample_mode(const std::string& name);

// ---- non-submodularity -----------------------------------------------------

struct Witness {
  Graph graph;
  std::vector<EdgeId> a, b;
  std::uint64_t gain_a = 0, gain_b = 0, gain_union = 0, gain_intersection = 0;
};

// Searches random small graphs for sets with TG(A)+TG(B) < TG(A|B)+TG(A&B),
// using singleton sets A={a}, B={b}.
std::optional<Witness> find_nonsubmodular_witness(std::uint64_t seed, std::size_t attempts);

// ---- experiments -----------------------------------------------------------

struct ExperimentSpec {
  std::filesystem::path dataset;         // edge list; empty means use `generator`
  std::string generator;                 // e.g. "plc:2000:4:0.6"
  std::vector<Strategy> strategies{Strategy::kGas};
  std::vector<std::size_t> budgets;      // ascending
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "results";
  std::uint64_t exact_cap = 5'000'000;   // largest number of subsets Exact may enumerate
  std::size_t exact_samples = 0;         // ball subgraphs for the Exact/GAS ratio table
  std::size_t exact_max_budget = 3;
  std::vector<double> sample_ratios;     // vertex/edge sampling sweep for scalability runs
  bool route_sizes = true;
  bool reuse = true;
};

struct ExperimentReport {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> notices;
};

ExperimentReport run_experiment(const ExperimentSpec& spec);

Graph make_generated_graph(const std::string& generator, std::uint64_t seed);

struct RouteSummary {
  std::size_t min = 0, max = 0, sum = 0;
  double average = 0;
};
RouteSummary route_size_summary(const Graph& g);

// Published reference values for known datasets, looked up by file name.
struct ReferenceTargets {
  std::string dataset;
  std::optional<std::uint64_t> gas_gain_b100;
  std::optional<double> route_average;
  std::optional<std::size_t> route_max;
};
std::optional<ReferenceTargets> reference_targets(const std::filesystem::path& dataset);

std::string machine_info();

}  // namespace atr
