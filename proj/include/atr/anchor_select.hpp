#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atr/component_tree.hpp"
#include "atr/graph.hpp"
#include "atr/truss.hpp"

namespace atr {

enum class Strategy { kBase, kBasePlus, kGas, kExact, kRand, kSup, kTur };

Strategy parse_strategy(std::string_view name);
const char* to_string(Strategy s);

struct StrategyConfig {
  Strategy strategy = Strategy::kGas;
  std::size_t budget = 0;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  double top_fraction = 0.20;
  std::uint64_t exact_cap = 5'000'000;
};

using Seconds = std::chrono::duration<double>;

struct SelectionResult {
  std::vector<EdgeId> anchors;
  std::vector<std::uint64_t> per_round_gain;
  std::uint64_t total_gain = 0;  // recomputed by the anchored decomposition
  std::vector<Seconds> per_round_wall_time;
};

struct GasRound {
  std::size_t round = 0;
  EdgeId anchor = kNoEdge;
  std::uint64_t gain = 0;
  std::size_t searches = 0;        // candidates that needed a follower search
  std::size_t full = 0, partial = 0, none = 0;  // reuse classes after the commit
};

struct GasOptions {
  bool full_sla = false;
  bool track_node_rule = false;
  // Called after each commit with the updated state.
  std::function<void(const GasRound&, const TrussLabeling&, const TrussComponentTree&, const ReuseLedger&)>
      after_commit;
};

class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(std::uint64_t needed, std::uint64_t cap);
  std::uint64_t needed() const { return needed_; }

 private:
  std::uint64_t needed_;
};

SelectionResult select_base(const Graph& g, std::size_t b);
SelectionResult select_base_plus(const Graph& g, std::size_t b);
SelectionResult select_gas(const Graph& g, std::size_t b, const GasOptions& options = {});

// Exhaustive search over anchor sets. Only edges that lie in a triangle can
// matter; sets are padded with the smallest remaining ids. The last member of
// each set is scored with a follower search on the decomposition of the rest
// unless `oracle_only` asks for a full decomposition per set.
SelectionResult select_exact(const Graph& g, std::size_t b, std::uint64_t cap = 5'000'000,
                             bool oracle_only = false);
std::uint64_t exact_subset_count(const Graph& g, std::size_t b);

// Rand, Sup and Tur: best of `trials` uniform draws from the candidate pool.
SelectionResult select_random(const Graph& g, const StrategyConfig& config);
std::vector<EdgeId> candidate_pool(const Graph& g, Strategy strategy, double top_fraction);

SelectionResult select(const Graph& g, const StrategyConfig& config);

}  // namespace atr
