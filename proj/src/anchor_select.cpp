#include "atr/anchor_select.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "atr/follower.hpp"

namespace atr {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t oracle_gain(const Graph& g, const TrussLabeling& base, std::span<const EdgeId> anchors) {
  return trussness_gain(base, anchored_truss_decompose(g, anchors).labeling);
}

// Picks the candidate with the largest gain; the smallest id wins ties, and
// the first candidate is taken when every gain is zero.
struct Best {
  EdgeId edge = kNoEdge;
  std::uint64_t gain = 0;
  void offer(EdgeId e, std::uint64_t gain_e) {
    if (edge == kNoEdge || gain_e > gain) {
      edge = e;
      gain = gain_e;
    }
  }
};

void finish(const Graph& g, SelectionResult& r) {
  r.total_gain = trussness_gain(g, r.anchors);
}

}  // namespace

EnumerationCapExceeded::EnumerationCapExceeded(std::uint64_t needed, std::uint64_t cap)
    : std::runtime_error("exact search needs " + std::to_string(needed) + " anchor sets, cap is " +
                         std::to_string(cap)),
      needed_(needed) {}

Strategy parse_strategy(std::string_view name) {
  if (name == "base") return Strategy::kBase;
  if (name == "base+" || name == "base_plus") return Strategy::kBasePlus;
  if (name == "gas") return Strategy::kGas;
  if (name == "exact") return Strategy::kExact;
  if (name == "rand") return Strategy::kRand;
  if (name == "sup") return Strategy::kSup;
  if (name == "tur") return Strategy::kTur;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kBase:
      return "base";
    case Strategy::kBasePlus:
      return "base+";
    case Strategy::kGas:
      return "gas";
    case Strategy::kExact:
      return "exact";
    case Strategy::kRand:
      return "rand";
    case Strategy::kSup:
      return "sup";
    case Strategy::kTur:
      return "tur";
  }
  return "?";
}

SelectionResult select_base(const Graph& g, std::size_t b) {
  SelectionResult r;
  std::vector<EdgeId> anchors;
  b = std::min(b, g.num_edges());
  for (std::size_t round = 0; round < b; ++round) {
    auto start = Clock::now();
    const TrussLabeling current = anchored_truss_decompose(g, anchors).labeling;
    Best best;
    anchors.push_back(kNoEdge);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (current.is_anchor(e)) continue;
      std::uint64_t gain = 0;
      if (g.support(e) > 0) {
        anchors.back() = e;
        gain = trussness_gain(current, anchored_truss_decompose(g, anchors).labeling);
      }
      best.offer(e, gain);
    }
    anchors.back() = best.edge;
    r.per_round_gain.push_back(best.gain);
    r.per_round_wall_time.push_back(Clock::now() - start);
  }
  r.anchors = anchors;
  finish(g, r);
  return r;
}

SelectionResult select_base_plus(const Graph& g, std::size_t b) {
  SelectionResult r;
  std::vector<EdgeId> anchors;
  b = std::min(b, g.num_edges());
  for (std::size_t round = 0; round < b; ++round) {
    auto start = Clock::now();
    const TrussLabeling current = anchored_truss_decompose(g, anchors).labeling;
    FollowerSearch search(g, current);
    Best best;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (current.is_anchor(e)) continue;
      std::uint64_t gain = g.support(e) > 0 ? search.run(e).followers.size() : 0;
      best.offer(e, gain);
    }
    anchors.push_back(best.edge);
    r.per_round_gain.push_back(best.gain);
    r.per_round_wall_time.push_back(Clock::now() - start);
  }
  r.anchors = anchors;
  finish(g, r);
  return r;
}

SelectionResult select_gas(const Graph& g, std::size_t b, const GasOptions& options) {
  SelectionResult r;
  b = std::min(b, g.num_edges());
  TrussLabeling labeling = truss_decompose(g);
  TrussComponentTree tree = TrussComponentTree::build(g, labeling);
  ReuseLedger ledger(g.num_edges());
  ledger.track_node_rule(options.track_node_rule);
  FollowerSearch search(g, labeling);

  for (std::size_t round = 0; round < b; ++round) {
    auto start = Clock::now();
    GasRound stats;
    stats.round = round + 1;
    Best best;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (labeling.is_anchor(e)) continue;
      LevelSelection dirty = ledger.dirty_levels(e, tree);
      if (!dirty.empty()) {
        FollowerSet res = search.run(e, dirty);
        ledger.store(e, tree, labeling, res, dirty);
        ++stats.searches;
      }
      best.offer(e, ledger.cached_gain(e));
    }
    const EdgeId x = best.edge;
    labeling.trussness[x] = kUnbounded;
    labeling.layer[x] = 0;
    follower_reuse(g, x, tree, ledger, labeling, options.full_sla);

    r.anchors.push_back(x);
    r.per_round_gain.push_back(best.gain);
    r.per_round_wall_time.push_back(Clock::now() - start);
    stats.anchor = x;
    stats.gain = best.gain;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (labeling.is_anchor(e)) continue;
      switch (ledger.classify(e, tree)) {
        case ReuseClass::kFull:
          ++stats.full;
          break;
        case ReuseClass::kPartial:
          ++stats.partial;
          break;
        case ReuseClass::kNone:
          ++stats.none;
          break;
      }
    }
    if (options.after_commit) options.after_commit(stats, labeling, tree, ledger);
  }
  finish(g, r);
  return r;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc > 1.8e19L ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t(std::llround(acc));
}

struct ExactPlan {
  std::vector<EdgeId> useful;  // in a triangle
  std::vector<EdgeId> filler;  // triangle-free, ascending
  std::size_t min_j = 0, max_j = 0;
};

ExactPlan plan_exact(const Graph& g, std::size_t b) {
  ExactPlan p;
  for (EdgeId e = 0; e < g.num_edges(); ++e) (g.support(e) > 0 ? p.useful : p.filler).push_back(e);
  p.max_j = std::min(b, p.useful.size());
  p.min_j = b > p.filler.size() ? b - p.filler.size() : 0;
  return p;
}

}  // namespace

std::uint64_t exact_subset_count(const Graph& g, std::size_t b) {
  b = std::min(b, g.num_edges());
  ExactPlan p = plan_exact(g, b);
  std::uint64_t total = 0;
  for (std::size_t j = p.min_j; j <= p.max_j; ++j) {
    std::uint64_t c = binomial(p.useful.size(), j);
    if (c == std::numeric_limits<std::uint64_t>::max() || total + c < total)
      return std::numeric_limits<std::uint64_t>::max();
    total += c;
  }
  return total;
}

// Triangle-free edges never change anything when anchored, so a set's gain
// only depends on its useful part S; the best padding is the smallest
// triangle-free ids. Candidates compare by gain, then by the sorted tuple.
SelectionResult select_exact(const Graph& g, std::size_t b, std::uint64_t cap, bool oracle_only) {
  auto start = Clock::now();
  b = std::min(b, g.num_edges());
  const std::uint64_t needed = exact_subset_count(g, b);
  if (needed > cap) throw EnumerationCapExceeded(needed, cap);
  const ExactPlan plan = plan_exact(g, b);
  const TrussLabeling base = truss_decompose(g);

  std::vector<EdgeId> best_set;
  std::uint64_t best_gain = 0;
  bool have = false;
  auto consider = [&](const std::vector<EdgeId>& useful_part, std::uint64_t gain) {
    if (have && gain < best_gain) return;
    std::vector<EdgeId> full = useful_part;
    full.insert(full.end(), plan.filler.begin(), plan.filler.begin() + (b - useful_part.size()));
    std::sort(full.begin(), full.end());
    if (!have || gain > best_gain || full < best_set) {
      best_set = std::move(full);
      best_gain = gain;
      have = true;
    }
  };

  const std::vector<EdgeId>& u = plan.useful;
  for (std::size_t j = plan.min_j; j <= plan.max_j; ++j) {
    if (j == 0) {
      consider({}, 0);
      continue;
    }
    // Enumerate prefixes of size j-1 as index combinations, then the last member.
    std::vector<std::size_t> idx(j - 1);
    for (std::size_t i = 0; i + 1 < j; ++i) idx[i] = i;
    while (true) {
      std::vector<EdgeId> prefix;
      for (std::size_t i : idx) prefix.push_back(u[i]);
      const std::size_t first_last = j == 1 ? 0 : idx.back() + 1;
      if (oracle_only) {
        std::vector<EdgeId> set = prefix;
        set.push_back(kNoEdge);
        for (std::size_t k = first_last; k < u.size(); ++k) {
          set.back() = u[k];
          consider(set, oracle_gain(g, base, set));
        }
      } else if (first_last < u.size()) {
        const TrussLabeling at_prefix = anchored_truss_decompose(g, prefix).labeling;
        const std::uint64_t prefix_gain = trussness_gain(base, at_prefix);
        FollowerSearch search(g, at_prefix);
        std::vector<EdgeId> set = prefix;
        set.push_back(kNoEdge);
        for (std::size_t k = first_last; k < u.size(); ++k) {
          const EdgeId e = u[k];
          // TG(P + e) = TG(P) + |F(e, G_P)| - (t_P(e) - t(e)).
          std::uint64_t gain = prefix_gain + search.run(e).followers.size() -
                               (at_prefix.trussness[e] - base.trussness[e]);
          set.back() = e;
          consider(set, gain);
        }
      }
      // Advance the prefix combination.
      if (j == 1) break;
      std::size_t pos = j - 1;
      while (pos > 0 && idx[pos - 1] == u.size() - (j - 1) + (pos - 1)) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < j - 1; ++i) idx[i] = idx[i - 1] + 1;
    }
  }

  SelectionResult r;
  r.anchors = best_set;
  finish(g, r);
  if (r.total_gain != best_gain) throw std::logic_error("exact search disagrees with its own recomputation");
  r.per_round_gain.push_back(r.total_gain);
  r.per_round_wall_time.push_back(Clock::now() - start);
  return r;
}

std::vector<EdgeId> candidate_pool(const Graph& g, Strategy strategy, double top_fraction) {
  std::vector<EdgeId> all(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) all[e] = e;
  if (strategy == Strategy::kRand) return all;
  if (top_fraction <= 0 || top_fraction > 1) throw std::invalid_argument("top fraction must be in (0, 1]");

  std::vector<std::size_t> score(g.num_edges());
  if (strategy == Strategy::kSup) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) score[e] = g.support(e);
  } else if (strategy == Strategy::kTur) {
    const TrussLabeling labeling = truss_decompose(g);
    FollowerSearch search(g, labeling);
    for (EdgeId e = 0; e < g.num_edges(); ++e) score[e] = search.run(e).route_size;
  } else {
    throw std::invalid_argument("no candidate pool for strategy " + std::string(to_string(strategy)));
  }
  std::stable_sort(all.begin(), all.end(), [&](EdgeId a, EdgeId b) { return score[a] > score[b]; });
  all.resize(std::size_t(std::ceil(top_fraction * double(g.num_edges()))));
  return all;
}

SelectionResult select_random(const Graph& g, const StrategyConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trial count must be at least 1");
  auto start = Clock::now();
  std::vector<EdgeId> pool = candidate_pool(g, config.strategy, config.top_fraction);
  if (config.budget > pool.size())
    throw std::domain_error("budget " + std::to_string(config.budget) + " exceeds candidate pool of " +
                            std::to_string(pool.size()));
  const TrussLabeling base = truss_decompose(g);
  std::mt19937_64 rng(config.seed);
  std::vector<EdgeId> best, draw;
  std::uint64_t best_gain = 0;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    draw.clear();
    std::sample(pool.begin(), pool.end(), std::back_inserter(draw), config.budget, rng);
    std::uint64_t gain = oracle_gain(g, base, draw);
    if (trial == 0 || gain > best_gain) {
      best = draw;
      best_gain = gain;
    }
  }
  SelectionResult r;
  r.anchors = best;
  finish(g, r);
  r.per_round_gain.push_back(r.total_gain);
  r.per_round_wall_time.push_back(Clock::now() - start);
  return r;
}

SelectionResult select(const Graph& g, const StrategyConfig& config) {
  switch (config.strategy) {
    case Strategy::kBase:
      return select_base(g, config.budget);
    case Strategy::kBasePlus:
      return select_base_plus(g, config.budget);
    case Strategy::kGas:
      return select_gas(g, config.budget);
    case Strategy::kExact:
      return select_exact(g, config.budget, config.exact_cap);
    case Strategy::kRand:
    case Strategy::kSup:
    case Strategy::kTur:
      return select_random(g, config);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace atr
