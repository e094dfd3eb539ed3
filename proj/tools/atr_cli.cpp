#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atr/anchor_select.hpp"
#include "atr/bench.hpp"
#include "atr/component_tree.hpp"
#include "atr/follower.hpp"
#include "atr/graph.hpp"
#include "atr/truss.hpp"
#include "json.hpp"

using namespace atr;
using nlohmann::json;

namespace {

// Writes to `path`, or to stdout when it is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

json edge_json(const Graph& g, EdgeId e) {
  auto [u, v] = g.endpoints(e);
  return {{"id", e}, {"u", g.label(u)}, {"v", g.label(v)}};
}

json edge_json(const Graph& g, const TrussLabeling& lab, EdgeId e) {
  json j = edge_json(g, e);
  j["trussness"] = lab.trussness[e];
  return j;
}

EdgeId lookup_edge(const Graph& g, VertexLabel a, VertexLabel b) {
  std::optional<VertexId> u, v;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (g.label(x) == a) u = x;
    if (g.label(x) == b) v = x;
  }
  std::optional<EdgeId> e;
  if (u && v) e = g.find_edge(*u, *v);
  if (!e) throw std::invalid_argument("no edge " + std::to_string(a) + " " + std::to_string(b));
  return *e;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(std::stoul(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anchor trussness reinforcement: truss decomposition, follower search and anchor selection"};
  app.require_subcommand(1);

  std::string input, out_path;

  auto* decompose = app.add_subcommand("decompose", "Truss decomposition as CSV (edge_id,u,v,trussness,layer)");
  decompose->add_option("file", input, "Edge list")->required();
  decompose->add_option("-o,--out", out_path, "Output file (default stdout)");

  std::string strategy_name = "gas";
  StrategyConfig cfg;
  std::string rounds_csv;
  auto* anchor = app.add_subcommand("anchor", "Select anchor edges; prints JSON");
  anchor->add_option("file", input, "Edge list")->required();
  anchor->add_option("--strategy", strategy_name, "base, base+, gas, exact, rand, sup or tur")->capture_default_str();
  anchor->add_option("-b,--budget", cfg.budget, "Number of anchors")->required();
  anchor->add_option("--seed", cfg.seed, "Seed for randomized strategies")->capture_default_str();
  anchor->add_option("--trials", cfg.trials, "Draws for randomized strategies")->capture_default_str()->check(
      CLI::PositiveNumber);
  anchor->add_option("--top-fraction", cfg.top_fraction, "Pool fraction for sup and tur")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  anchor->add_option("--exact-cap", cfg.exact_cap, "Largest subset count exact may enumerate")->capture_default_str();
  anchor->add_option("--rounds-csv", rounds_csv, "Also write round,anchor,u,v,gain,wall_seconds here");
  anchor->add_option("-o,--out", out_path, "Output file (default stdout)");

  GadgetSpec gadget_spec;
  std::string membership_path, annotations_path;
  auto* gadget = app.add_subcommand("gadget", "Build the max-coverage gadget; prints its edge list");
  gadget->add_option("--s", gadget_spec.s, "Number of sets")->required();
  gadget->add_option("--t", gadget_spec.t, "Number of elements")->required();
  gadget->add_option("--membership", membership_path, "One line per set with its element indices")->required();
  gadget->add_option("--annotations", annotations_path, "JSON file naming the set and element edges");
  gadget->add_option("-o,--out", out_path, "Edge list output (default stdout)");

  std::string tree_path;
  bool skip_routes = false;
  auto* stats = app.add_subcommand("stats", "Graph, hull and route-size statistics as JSON");
  stats->add_option("file", input, "Edge list")->required();
  stats->add_option("--tree", tree_path, "Write the component tree as JSON here");
  stats->add_flag("--no-routes", skip_routes, "Skip the route-size summary");
  stats->add_option("-o,--out", out_path, "Output file (default stdout)");

  std::string mode_name = "vertex";
  double ratio = 1.0;
  std::uint64_t seed = 1;
  BallBounds bounds;
  auto* sample = app.add_subcommand("sample", "Sample a subgraph; prints an edge list with original labels");
  sample->add_option("file", input, "Edge list")->required();
  sample->add_option("--mode", mode_name, "vertex, edge or ball")->capture_default_str();
  sample->add_option("--ratio", ratio, "Sampling ratio in (0, 1]")->capture_default_str();
  sample->add_option("--seed", seed)->capture_default_str();
  sample->add_option("--min-edges", bounds.min_edges, "Ball mode lower bound")->capture_default_str();
  sample->add_option("--max-edges", bounds.max_edges, "Ball mode upper bound")->capture_default_str();
  sample->add_option("-o,--out", out_path, "Output file (default stdout)");

  std::vector<VertexLabel> edge_ends;
  bool trace = false;
  auto* followers = app.add_subcommand("followers", "Followers of one candidate anchor");
  followers->add_option("file", input, "Edge list")->required();
  followers->add_option("--edge", edge_ends, "Endpoint labels u v")->expected(2)->required();
  followers->add_flag("--trace", trace, "Print search events as JSON lines before the result");

  std::size_t attempts = 500;
  auto* witness = app.add_subcommand("witness", "Search small graphs for a non-submodular pair");
  witness->add_option("--seed", seed)->capture_default_str();
  witness->add_option("--attempts", attempts)->capture_default_str();
  witness->add_option("-o,--out", out_path, "Edge list of the witness graph");

  ExperimentSpec exp;
  std::string exp_dataset, strategies = "gas", budgets, ratios;
  auto* experiment = app.add_subcommand("experiment", "Run a strategy and budget sweep; writes CSV and JSON reports");
  auto* ds = experiment->add_option("--dataset", exp_dataset, "Edge list");
  auto* gen = experiment->add_option("--generator", exp.generator,
                                     "er:n:p, plc:n:attach:p or planted:n:noise:s1,s2,...");
  ds->excludes(gen);
  experiment->add_option("--strategies", strategies, "Comma-separated strategy names")->capture_default_str();
  experiment->add_option("--budgets", budgets, "Comma-separated ascending budgets");
  experiment->add_option("--trials", exp.trials)->capture_default_str();
  experiment->add_option("--seed", exp.seed)->capture_default_str();
  experiment->add_option("--out-dir", exp.output_dir)->capture_default_str();
  experiment->add_option("--exact-cap", exp.exact_cap)->capture_default_str();
  experiment->add_option("--exact-samples", exp.exact_samples, "Ball samples for the GAS/Exact table")
      ->capture_default_str();
  experiment->add_option("--exact-max-budget", exp.exact_max_budget)->capture_default_str();
  experiment->add_option("--ratios", ratios, "Comma-separated sampling ratios for the scalability table");
  experiment->add_flag("!--no-routes", exp.route_sizes, "Skip the route-size summary");
  experiment->add_flag("!--no-reuse", exp.reuse, "Skip the reuse histogram");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*decompose) {
      const Graph g = load_edge_list(input);
      Output out(out_path);
      write_labeling_csv(g, truss_decompose(g), out.stream());
    } else if (*anchor) {
      cfg.strategy = parse_strategy(strategy_name);
      const Graph g = load_edge_list(input);
      if (cfg.budget > g.num_edges())
        throw std::invalid_argument("budget " + std::to_string(cfg.budget) + " exceeds the edge count " +
                                    std::to_string(g.num_edges()));
      const SelectionResult r = select(g, cfg);
      json anchors = json::array(), secs = json::array();
      for (EdgeId e : r.anchors) anchors.push_back(edge_json(g, e));
      for (auto d : r.per_round_wall_time) secs.push_back(d.count());
      json doc = {{"strategy", to_string(cfg.strategy)},
                  {"budget", cfg.budget},
                  {"anchors", anchors},
                  {"per_round_gain", r.per_round_gain},
                  {"total_gain", r.total_gain},
                  {"per_round_wall_seconds", secs}};
      Output out(out_path);
      out.stream() << doc.dump(2) << '\n';
      if (!rounds_csv.empty()) {
        Output csv(rounds_csv);
        csv.stream() << "round,anchor,u,v,gain,wall_seconds\n";
        for (std::size_t i = 0; i < r.per_round_gain.size(); ++i) {
          csv.stream() << i + 1 << ',';
          if (r.per_round_gain.size() == r.anchors.size()) {
            auto [u, v] = g.endpoints(r.anchors[i]);
            csv.stream() << r.anchors[i] << ',' << g.label(u) << ',' << g.label(v);
          } else {
            csv.stream() << ",,";
          }
          csv.stream() << ',' << r.per_round_gain[i] << ',' << r.per_round_wall_time[i].count() << '\n';
        }
      }
    } else if (*gadget) {
      GadgetSpec spec = load_membership(membership_path, gadget_spec.s, gadget_spec.t);
      GadgetInstance gi = generate_gadget(spec);
      Output out(out_path);
      write_edge_list(gi.graph, out.stream());
      if (!annotations_path.empty()) {
        const TrussLabeling lab = truss_decompose(gi.graph);
        json sets = json::array(), elements = json::array();
        for (EdgeId e : gi.set_edges) sets.push_back(edge_json(gi.graph, lab, e));
        for (EdgeId e : gi.element_edges)
          elements.push_back(edge_json(gi.graph, lab, e));
        Output ann(annotations_path);
        ann.stream() << json{{"s", spec.s}, {"t", spec.t}, {"membership", spec.membership},
                             {"set_edges", sets}, {"element_edges", elements}}
                            .dump(2)
                     << '\n';
      }
    } else if (*stats) {
      const Graph g = load_edge_list(input);
      const TrussLabeling lab = truss_decompose(g);
      json hist = json::object();
      for (const auto& [k, edges] : hulls(lab)) hist[std::to_string(k)] = edges.size();
      const auto tree = TrussComponentTree::build(g, lab);
      json doc = {{"vertices", g.num_vertices()}, {"edges", g.num_edges()}, {"triangles", g.num_triangles()},
                  {"k_max", lab.k_max},           {"hulls", hist},          {"tree_nodes", tree.num_nodes()}};
      if (!skip_routes) {
        RouteSummary rs = route_size_summary(g);
        doc["route_sizes"] = {{"min", rs.min}, {"max", rs.max}, {"sum", rs.sum}, {"avg", rs.average}};
      }
      if (!tree_path.empty()) {
        Output t(tree_path);
        tree.write_json(t.stream());
      }
      Output out(out_path);
      out.stream() << doc.dump(2) << '\n';
    } else if (*sample) {
      const Graph g = load_edge_list(input);
      const Graph s = subgraph_sample(g, parse_sample_mode(mode_name), ratio, seed, bounds);
      Output out(out_path);
      write_edge_list(s, out.stream());
    } else if (*followers) {
      const Graph g = load_edge_list(input);
      const TrussLabeling lab = truss_decompose(g);
      const EdgeId x = lookup_edge(g, edge_ends[0], edge_ends[1]);
      FollowerSearch search(g, lab);
      TraceSink sink;
      if (trace) sink = [](const TraceEvent& ev) { std::cout << trace_json_line(ev) << '\n'; };
      const FollowerSet f = search.run(x, {}, sink);
      json list = json::array();
      for (EdgeId e : f.followers) list.push_back(edge_json(g, e));
      std::cout << json{{"anchor", edge_json(g, x)}, {"followers", list}, {"route_size", f.route_size}}.dump()
                << '\n';
    } else if (*witness) {
      auto w = find_nonsubmodular_witness(seed, attempts);
      if (!w) throw std::runtime_error("no witness found in " + std::to_string(attempts) + " attempts");
      std::cout << json{{"a", edge_json(w->graph, w->a[0])},
                        {"b", edge_json(w->graph, w->b[0])},
                        {"gain_a", w->gain_a},
                        {"gain_b", w->gain_b},
                        {"gain_union", w->gain_union},
                        {"gain_intersection", w->gain_intersection}}
                       .dump()
                << '\n';
      if (!out_path.empty()) {
        Output out(out_path);
        write_edge_list(w->graph, out.stream());
      }
    } else if (*experiment) {
      if (exp_dataset.empty() && exp.generator.empty())
        throw std::invalid_argument("experiment needs --dataset or --generator");
      exp.dataset = exp_dataset;
      exp.strategies.clear();
      std::stringstream ss(strategies);
      for (std::string name; std::getline(ss, name, ',');)
        if (!name.empty()) exp.strategies.push_back(parse_strategy(name));
      exp.budgets = parse_size_list(budgets);
      std::stringstream rs(ratios);
      for (std::string r; std::getline(rs, r, ',');)
        if (!r.empty()) exp.sample_ratios.push_back(std::stod(r));
      ExperimentReport rep = run_experiment(exp);
      for (const auto& f : rep.files) std::cout << f.string() << '\n';
      for (const auto& n : rep.notices) std::cerr << "notice: " << n << '\n';
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
