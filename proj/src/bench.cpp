#include "atr/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "atr/follower.hpp"
#include "json.hpp"

namespace atr {

// ---- gadget ----------------------------------------------------------------

GadgetSpec parse_membership(std::istream& in, std::size_t s, std::size_t t) {
  GadgetSpec spec{s, t, {}};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::size_t> set;
    std::string tok;
    while (tokens >> tok) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size()) throw ParseError(lineno, "non-integer element '" + tok + "'");
      set.push_back(v);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    spec.membership.push_back(std::move(set));
  }
  return spec;
}

GadgetSpec load_membership(const std::filesystem::path& path, std::size_t s, std::size_t t) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_membership(in, s, t);
}

namespace {

void validate(const GadgetSpec& spec) {
  if (spec.membership.empty()) throw std::invalid_argument("gadget membership is empty");
  if (spec.membership.size() != spec.s)
    throw std::invalid_argument("membership lists " + std::to_string(spec.membership.size()) +
                                " sets, expected " + std::to_string(spec.s));
  if (spec.t == 0) throw std::invalid_argument("gadget needs at least one element");
  for (const auto& set : spec.membership)
    for (std::size_t j : set)
      if (j >= spec.t) throw std::invalid_argument("element index " + std::to_string(j) + " out of range");
}

}  // namespace

GadgetInstance generate_gadget(const GadgetSpec& spec) {
  validate(spec);
  const std::size_t s = spec.s, t = spec.t;
  const VertexId hub = 0;
  auto p = [&](std::size_t i) { return VertexId(1 + i); };
  auto r = [&](std::size_t j) { return VertexId(1 + s + j); };
  VertexId next = VertexId(1 + s + t);
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto clique = [&](VertexId a, VertexId b) {
    std::vector<VertexId> vs{a, b};
    for (std::size_t i = 0; i < t + 1; ++i) vs.push_back(next++);
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) edges.emplace_back(vs[i], vs[j]);
  };

  for (std::size_t i = 0; i < s; ++i) edges.emplace_back(hub, p(i));
  for (std::size_t j = 0; j < t; ++j) edges.emplace_back(hub, r(j));
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<std::size_t> elems = spec.membership[i];
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (std::size_t j : elems) clique(p(i), r(j));
  }
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t k = 0; k < t; ++k) {
      VertexId z = next++;
      clique(hub, z);
      clique(r(j), z);
    }
  }

  GadgetInstance out;
  out.graph = Graph::from_edges(next, edges);
  for (std::size_t i = 0; i < s; ++i) out.set_edges.push_back(EdgeId(i));
  for (std::size_t j = 0; j < t; ++j) out.element_edges.push_back(EdgeId(s + j));
  return out;
}

CoverageResult greedy_max_coverage(const GadgetSpec& spec, std::size_t b) {
  validate(spec);
  CoverageResult out;
  std::vector<char> covered(spec.t, 0), used(spec.s, 0);
  for (std::size_t round = 0; round < std::min(b, spec.s); ++round) {
    std::size_t best = spec.s, best_gain = 0;
    for (std::size_t i = 0; i < spec.s; ++i) {
      if (used[i]) continue;
      std::vector<std::size_t> elems = spec.membership[i];
      std::sort(elems.begin(), elems.end());
      elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
      std::size_t gain = 0;
      for (std::size_t j : elems) gain += !covered[j];
      if (best == spec.s || gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    used[best] = 1;
    for (std::size_t j : spec.membership[best]) covered[j] = 1;
    out.sets.push_back(best);
    out.gains.push_back(best_gain);
    out.covered += best_gain;
  }
  return out;
}

std::vector<GadgetSpec> enumerate_gadget_specs(std::size_t s, std::size_t t) {
  std::vector<GadgetSpec> out;
  const std::size_t masks = (std::size_t(1) << t) - 1;  // nonempty subsets: 1..masks
  std::vector<std::size_t> pick(s, 1);
  while (true) {
    std::size_t uni = 0;
    for (std::size_t m : pick) uni |= m;
    if (uni == masks) {
      GadgetSpec spec{s, t, {}};
      for (std::size_t m : pick) {
        std::vector<std::size_t> set;
        for (std::size_t j = 0; j < t; ++j)
          if (m >> j & 1) set.push_back(j);
        spec.membership.push_back(set);
      }
      out.push_back(std::move(spec));
    }
    std::size_t pos = 0;
    while (pos < s && pick[pos] == masks) pick[pos++] = 1;
    if (pos == s) break;
    ++pick[pos];
  }
  return out;
}

// ---- synthetic graphs ------------------------------------------------------

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph planted_cliques(std::size_t n, const std::vector<std::size_t>& clique_sizes, double noise,
                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> vs(n);
  std::iota(vs.begin(), vs.end(), 0);
  for (std::size_t size : clique_sizes) {
    if (size > n) throw std::invalid_argument("clique larger than the graph");
    std::shuffle(vs.begin(), vs.end(), rng);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j) edges.emplace_back(vs[i], vs[j]);
  }
  std::bernoulli_distribution coin(noise);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph powerlaw_cluster(std::size_t n, std::size_t attach, double p_triad, std::uint64_t seed) {
  if (attach < 1 || attach >= n) throw std::invalid_argument("attach must be in [1, n)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<std::vector<VertexId>> adj(n);
  std::vector<VertexId> ends;  // each vertex once per incident edge
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto link = [&](VertexId a, VertexId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    ends.push_back(a);
    ends.push_back(b);
    edges.emplace_back(a, b);
  };
  // Seed with a small clique so preferential attachment has targets.
  for (VertexId u = 0; u <= attach; ++u)
    for (VertexId v = u + 1; v <= attach; ++v) link(u, v);
  for (VertexId v = VertexId(attach + 1); v < n; ++v) {
    std::vector<VertexId> chosen;
    auto linked = [&](VertexId u) { return std::find(chosen.begin(), chosen.end(), u) != chosen.end(); };
    auto preferential = [&] {
      for (int tries = 0; tries < 64; ++tries) {
        VertexId u = ends[std::uniform_int_distribution<std::size_t>(0, ends.size() - 1)(rng)];
        if (!linked(u)) return u;
      }
      for (VertexId u = 0; u < v; ++u)
        if (!linked(u)) return u;
      return VertexId(0);
    };
    VertexId last = preferential();
    chosen.push_back(last);
    while (chosen.size() < attach) {
      VertexId u = kNoEdge;
      if (unit(rng) < p_triad) {
        std::vector<VertexId> options;
        for (VertexId w : adj[last])
          if (!linked(w)) options.push_back(w);
        if (!options.empty()) u = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      }
      if (u == kNoEdge) {
        u = preferential();
        last = u;
      }
      chosen.push_back(u);
    }
    for (VertexId u : chosen) link(v, u);
  }
  return Graph::from_edges(n, edges);
}

std::vector<Graph> random_corpus(std::size_t count, std::uint64_t seed, std::size_t max_edges) {
  std::vector<Graph> out;
  std::mt19937_64 rng(seed);
  auto uni = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  while (out.size() < count) {
    Graph g;
    if (out.size() % 2 == 0) {
      std::size_t n = uni(8, 30);
      g = erdos_renyi(n, real(0.15, 0.7), rng());
    } else {
      std::size_t n = uni(12, 40);
      std::vector<std::size_t> sizes(uni(1, 4));
      for (auto& sz : sizes) sz = std::min(n, uni(4, 8));
      g = planted_cliques(n, sizes, real(0.02, 0.15), rng());
    }
    if (g.num_edges() == 0 || g.num_edges() > max_edges) continue;
    out.push_back(std::move(g));
  }
  return out;
}

// ---- sampling --------------------------------------------------------------

SampleMode parse_sample_mode(const std::string& name) {
  if (name == "vertex") return SampleMode::kVertex;
  if (name == "edge") return SampleMode::kEdge;
  if (name == "ball") return SampleMode::kBall;
  throw std::invalid_argument("unknown sample mode '" + name + "'");
}

namespace {

// Subgraph made of the given edges, vertices renumbered by first use and
// original labels kept. Edges keep their relative order.
Graph edge_subgraph(const Graph& g, std::vector<EdgeId> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<VertexId> remap(g.num_vertices(), kNoEdge);
  std::vector<VertexLabel> labels;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  auto id = [&](VertexId v) {
    if (remap[v] == kNoEdge) {
      remap[v] = VertexId(labels.size());
      labels.push_back(g.label(v));
    }
    return remap[v];
  };
  for (EdgeId e : keep) {
    auto [u, v] = g.endpoints(e);
    VertexId a = id(u);
    VertexId b = id(v);
    pairs.emplace_back(a, b);
  }
  Graph out = Graph::from_edges(labels.size(), pairs);
  out.set_labels(std::move(labels));
  return out;
}

std::vector<EdgeId> induced_edges(const Graph& g, const std::vector<char>& in) {
  std::vector<EdgeId> keep;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (in[u] && in[v]) keep.push_back(e);
  }
  return keep;
}

}  // namespace

Graph subgraph_sample(const Graph& g, SampleMode mode, double ratio, std::uint64_t seed, BallBounds bounds) {
  if (!(ratio > 0 && ratio <= 1)) throw std::invalid_argument("ratio must be in (0, 1]");
  std::mt19937_64 rng(seed);
  const std::size_t n = g.num_vertices(), m = g.num_edges();

  if (mode == SampleMode::kVertex) {
    std::vector<VertexId> all(n), picked;
    std::iota(all.begin(), all.end(), 0);
    std::sample(all.begin(), all.end(), std::back_inserter(picked), std::size_t(std::llround(ratio * n)), rng);
    std::vector<char> in(n, 0);
    for (VertexId v : picked) in[v] = 1;
    return edge_subgraph(g, induced_edges(g, in));
  }
  if (mode == SampleMode::kEdge) {
    std::vector<EdgeId> all(m), picked;
    std::iota(all.begin(), all.end(), 0);
    std::sample(all.begin(), all.end(), std::back_inserter(picked), std::size_t(std::llround(ratio * m)), rng);
    return edge_subgraph(g, picked);
  }

  if (n == 0) throw std::runtime_error("cannot grow a ball in an empty graph");
  std::vector<VertexId> starts(n);
  std::iota(starts.begin(), starts.end(), 0);
  std::shuffle(starts.begin(), starts.end(), rng);
  std::vector<char> in(n, 0), queued(n, 0);
  std::vector<VertexId> members, frontier;
  for (VertexId start : starts) {
    for (VertexId v : members) in[v] = 0;
    for (VertexId v : frontier) queued[v] = 0;
    members.clear();
    frontier.clear();
    std::size_t edges = 0;
    frontier.push_back(start);
    queued[start] = 1;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      VertexId v = frontier[head];
      for (const Neighbor& nb : g.neighbors(v)) edges += in[nb.vertex];
      in[v] = 1;
      members.push_back(v);
      if (edges > bounds.max_edges) break;
      if (edges >= bounds.min_edges) return edge_subgraph(g, induced_edges(g, in));
      for (const Neighbor& nb : g.neighbors(v)) {
        if (!queued[nb.vertex]) {
          queued[nb.vertex] = 1;
          frontier.push_back(nb.vertex);
        }
      }
    }
  }
  throw std::runtime_error("no ball with " + std::to_string(bounds.min_edges) + ".." +
                           std::to_string(bounds.max_edges) + " edges found");
}

// ---- non-submodularity -----------------------------------------------------

std::optional<Witness> find_nonsubmodular_witness(std::uint64_t seed, std::size_t attempts) {
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(6, 12)(rng);
    Graph g = erdos_renyi(n, std::uniform_real_distribution<double>(0.3, 0.7)(rng), rng());
    if (g.num_edges() > 40) continue;
    const TrussLabeling base = truss_decompose(g);
    std::vector<EdgeId> useful;
    std::vector<std::uint64_t> single(g.num_edges(), 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (g.support(e) == 0) continue;
      useful.push_back(e);
      EdgeId one[] = {e};
      single[e] = trussness_gain(base, anchored_truss_decompose(g, one).labeling);
    }
    for (std::size_t i = 0; i < useful.size(); ++i) {
      for (std::size_t j = i + 1; j < useful.size(); ++j) {
        EdgeId pair[] = {useful[i], useful[j]};
        std::uint64_t both = trussness_gain(base, anchored_truss_decompose(g, pair).labeling);
        if (single[useful[i]] + single[useful[j]] < both) {
          Witness w;
          w.graph = g;
          w.a = {useful[i]};
          w.b = {useful[j]};
          w.gain_a = single[useful[i]];
          w.gain_b = single[useful[j]];
          w.gain_union = both;
          w.gain_intersection = 0;
          return w;
        }
      }
    }
  }
  return std::nullopt;
}

// ---- experiments -----------------------------------------------------------

Graph make_generated_graph(const std::string& generator, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream ss(generator);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto need = [&](std::size_t k) {
    if (parts.size() != k) throw std::invalid_argument("malformed generator spec '" + generator + "'");
  };
  if (parts.empty()) throw std::invalid_argument("empty generator spec");
  if (parts[0] == "er") {
    need(3);
    return erdos_renyi(std::stoul(parts[1]), std::stod(parts[2]), seed);
  }
  if (parts[0] == "plc") {
    need(4);
    return powerlaw_cluster(std::stoul(parts[1]), std::stoul(parts[2]), std::stod(parts[3]), seed);
  }
  if (parts[0] == "planted") {
    // planted:n:noise:size,size,...
    need(4);
    std::vector<std::size_t> sizes;
    std::stringstream list(parts[3]);
    for (std::string p; std::getline(list, p, ',');) sizes.push_back(std::stoul(p));
    return planted_cliques(std::stoul(parts[1]), sizes, std::stod(parts[2]), seed);
  }
  throw std::invalid_argument("unknown generator '" + parts[0] + "'");
}

RouteSummary route_size_summary(const Graph& g) {
  RouteSummary s;
  if (g.num_edges() == 0) return s;
  const TrussLabeling labeling = truss_decompose(g);
  FollowerSearch search(g, labeling);
  s.min = std::numeric_limits<std::size_t>::max();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    std::size_t r = search.run(e).route_size;
    s.min = std::min(s.min, r);
    s.max = std::max(s.max, r);
    s.sum += r;
  }
  s.average = double(s.sum) / double(g.num_edges());
  return s;
}

std::optional<ReferenceTargets> reference_targets(const std::filesystem::path& dataset) {
  std::string name = dataset.filename().string();
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  if (name.find("college") != std::string::npos) return ReferenceTargets{"College", 769, 2.34, 60};
  if (name.find("facebook") != std::string::npos) return ReferenceTargets{"Facebook", 21980, std::nullopt, std::nullopt};
  return std::nullopt;
}

std::string machine_info() {
  char host[256] = {0};
  gethostname(host, sizeof host - 1);
  std::ostringstream out;
  out << "host=" << host << " threads=" << std::thread::hardware_concurrency() << " compiler=" << __VERSION__;
  return out.str();
}

namespace {

std::ofstream open_out(const std::filesystem::path& path, ExperimentReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  report.files.push_back(path);
  return out;
}

bool greedy(Strategy s) { return s == Strategy::kBase || s == Strategy::kBasePlus || s == Strategy::kGas; }

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  if (!std::is_sorted(spec.budgets.begin(), spec.budgets.end()))
    throw std::invalid_argument("budgets must be ascending");
  for (double r : spec.sample_ratios)
    if (!(r > 0 && r <= 1)) throw std::invalid_argument("sampling ratios must be in (0, 1]");
  ExperimentReport report;
  std::filesystem::create_directories(spec.output_dir);
  const Graph g = spec.dataset.empty() ? make_generated_graph(spec.generator, spec.seed) : load_edge_list(spec.dataset);
  const std::size_t max_b = spec.budgets.empty() ? 0 : spec.budgets.back();
  std::vector<GasRound> gas_rounds;

  {
    auto runs = open_out(spec.output_dir / "runs.csv", report);
    runs << "strategy,b,gain,wall_seconds\n";
    for (Strategy s : spec.strategies) {
      if (spec.budgets.empty()) break;
      if (greedy(s)) {
        // Greedy picks do not depend on the budget, so one run covers the sweep.
        SelectionResult r;
        if (s == Strategy::kGas) {
          GasOptions opts;
          opts.after_commit = [&](const GasRound& round, const TrussLabeling&, const TrussComponentTree&,
                                  const ReuseLedger&) { gas_rounds.push_back(round); };
          r = select_gas(g, max_b, opts);
        } else {
          r = select(g, {s, max_b});
        }
        for (std::size_t b : spec.budgets) {
          std::size_t k = std::min(b, r.anchors.size());
          std::vector<EdgeId> prefix(r.anchors.begin(), r.anchors.begin() + k);
          double secs = 0;
          for (std::size_t i = 0; i < k; ++i) secs += r.per_round_wall_time[i].count();
          runs << to_string(s) << ',' << b << ',' << trussness_gain(g, prefix) << ',' << secs << '\n';
        }
        continue;
      }
      for (std::size_t b : spec.budgets) {
        StrategyConfig cfg{s, b, spec.seed, spec.trials, 0.20, spec.exact_cap};
        try {
          SelectionResult r = select(g, cfg);
          runs << to_string(s) << ',' << b << ',' << r.total_gain << ',' << r.per_round_wall_time.front().count()
               << '\n';
        } catch (const EnumerationCapExceeded& ex) {
          report.notices.push_back(std::string("skipped exact b=") + std::to_string(b) + ": " + ex.what());
        } catch (const std::domain_error& ex) {
          report.notices.push_back(std::string("skipped ") + to_string(s) + " b=" + std::to_string(b) + ": " +
                                   ex.what());
        }
      }
    }
  }

  RouteSummary routes;
  if (spec.route_sizes) {
    routes = route_size_summary(g);
    auto out = open_out(spec.output_dir / "route_sizes.csv", report);
    out << "min,max,sum,avg\n" << routes.min << ',' << routes.max << ',' << routes.sum << ',' << routes.average << '\n';
  }

  if (spec.reuse) {
    auto out = open_out(spec.output_dir / "reuse.csv", report);
    out << "round,anchor,gain,searches,fr,pr,nr,fr_fraction\n";
    for (const GasRound& r : gas_rounds) {
      double total = double(r.full + r.partial + r.none);
      out << r.round << ',' << r.anchor << ',' << r.gain << ',' << r.searches << ',' << r.full << ',' << r.partial
          << ',' << r.none << ',' << (total > 0 ? r.full / total : 0.0) << '\n';
    }
  }

  if (spec.exact_samples > 0) {
    auto out = open_out(spec.output_dir / "exact_ratio.csv", report);
    out << "sample,edges,b,gas,exact,ratio\n";
    for (std::size_t i = 0; i < spec.exact_samples; ++i) {
      Graph sub = subgraph_sample(g, SampleMode::kBall, 1.0, spec.seed + i);
      for (std::size_t b = 1; b <= spec.exact_max_budget; ++b) {
        try {
          std::uint64_t exact = select_exact(sub, b, spec.exact_cap).total_gain;
          std::uint64_t gas = select_gas(sub, b).total_gain;
          out << i << ',' << sub.num_edges() << ',' << b << ',' << gas << ',' << exact << ','
              << (exact == 0 ? 1.0 : double(gas) / double(exact)) << '\n';
        } catch (const EnumerationCapExceeded& ex) {
          report.notices.push_back("skipped exact on sample " + std::to_string(i) + ": " + ex.what());
        }
      }
    }
  }

  if (!spec.sample_ratios.empty() && max_b > 0) {
    auto out = open_out(spec.output_dir / "scalability.csv", report);
    out << "mode,ratio,edges,b,gain,wall_seconds\n";
    for (SampleMode mode : {SampleMode::kVertex, SampleMode::kEdge}) {
      for (double ratio : spec.sample_ratios) {
        Graph sub = subgraph_sample(g, mode, ratio, spec.seed);
        SelectionResult r = select_gas(sub, max_b);
        double secs = 0;
        for (auto d : r.per_round_wall_time) secs += d.count();
        out << (mode == SampleMode::kVertex ? "vertex" : "edge") << ',' << ratio << ',' << sub.num_edges() << ','
            << max_b << ',' << r.total_gain << ',' << secs << '\n';
      }
    }
  }

  nlohmann::json summary = {
      {"dataset", spec.dataset.empty() ? spec.generator : spec.dataset.string()},
      {"vertices", g.num_vertices()},
      {"edges", g.num_edges()},
      {"triangles", g.num_triangles()},
      {"seed", spec.seed},
      {"machine", machine_info()},
      {"notices", report.notices},
  };
  if (spec.route_sizes)
    summary["route_sizes"] = {{"min", routes.min}, {"max", routes.max}, {"sum", routes.sum}, {"avg", routes.average}};
  if (auto ref = reference_targets(spec.dataset)) {
    nlohmann::json r = {{"dataset", ref->dataset}};
    if (ref->gas_gain_b100) r["gas_gain_b100"] = *ref->gas_gain_b100;
    if (ref->route_average) r["route_average"] = *ref->route_average;
    if (ref->route_max) r["route_max"] = *ref->route_max;
    summary["reference"] = r;
  }
  auto out = open_out(spec.output_dir / "report.json", report);
  std::vector<std::string> files;
  for (const auto& f : report.files) files.push_back(f.filename().string());
  summary["files"] = files;
  out << summary.dump(2) << '\n';
  return report;
}

}  // namespace atr
