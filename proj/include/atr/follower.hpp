#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "atr/graph.hpp"
#include "atr/truss.hpp"

namespace atr {

enum class EdgeStatus : std::uint8_t { kUnchecked, kSurvived, kEliminated };

struct FollowerSet {
  EdgeId anchor = kNoEdge;
  std::vector<EdgeId> followers;  // ascending
  std::size_t route_size = 0;     // distinct edges enqueued, the anchor excluded
};

// Trussness levels a search processes; default-constructed means every level.
struct LevelSelection {
  bool every = true;
  std::vector<char> enabled;  // indexed by trussness, used when !every

  static LevelSelection none() { return {false, {}}; }
  bool contains(Trussness k) const { return every || (k < enabled.size() && enabled[k]); }
  bool empty() const {
    if (every) return false;
    for (char c : enabled)
      if (c) return false;
    return true;
  }
  void enable(Trussness k) {
    every = false;
    if (enabled.size() <= k) enabled.resize(k + 1, 0);
    enabled[k] = 1;
  }
};

struct TraceEvent {
  enum class Kind { kSeed, kPop, kSurvive, kEliminate, kEnqueue };
  Kind kind;
  Trussness level;
  EdgeId edge;
  std::uint32_t s_plus;
};
using TraceSink = std::function<void(const TraceEvent&)>;
std::string trace_json_line(const TraceEvent& ev);

// Neighbor-edges e of x with t(e) > t(x), or t(e) = t(x) and l(e) > l(x),
// bucketed by trussness (index = level). Anchors are never seeds.
std::vector<std::vector<EdgeId>> seed_candidates(const Graph& g, const TrussLabeling& labeling,
                                                 EdgeId x);

// Reusable workspace for follower searches over one graph and labeling. State
// is stamped per level, so consecutive searches do not clear O(m) arrays.
// Not thread-safe; use one instance per thread.
class FollowerSearch {
 public:
  FollowerSearch(const Graph& g, const TrussLabeling& labeling);

  FollowerSet run(EdgeId x, const LevelSelection& levels = {}, const TraceSink& trace = {});

  // Step-level interface, used by run() and by tests that stage a state by hand.
  void begin_level(EdgeId x, Trussness level);
  EdgeStatus status(EdgeId e) const;
  std::uint32_t s_plus(EdgeId e) const;
  // Triangles of e whose partners are not eliminated and each either follow e
  // in the layer order or have survived.
  std::uint32_t effective_support(EdgeId e) const;
  void mark_survived(EdgeId e, std::uint32_t s_plus);
  // Eliminates e and revokes, for every survivor, the triangles it lost as a
  // consequence; survivors that fall below t-1 are eliminated in turn.
  void retract(EdgeId e);
  // Edge whose expansion enqueued e in the current level, kNoEdge for seeds.
  EdgeId route_parent(EdgeId e) const;

 private:
  enum : std::uint8_t { kUnchecked, kSurvived, kEliminated, kDoomed };
  bool fresh(EdgeId e) const { return stamp_[e] == gen_; }
  void touch(EdgeId e);
  std::uint8_t raw(EdgeId e) const;
  bool level_edge(EdgeId e) const;

  const Graph& g_;
  const TrussLabeling& lab_;
  EdgeId x_ = kNoEdge;
  Trussness level_ = 0;
  std::uint32_t gen_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint8_t> state_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint32_t> splus_;
  std::vector<EdgeId> parent_;
  std::vector<std::pair<EdgeId, std::uint8_t>> pending_;
  const TraceSink* trace_ = nullptr;
};

FollowerSet get_followers(const Graph& g, const TrussLabeling& labeling, EdgeId x,
                          const LevelSelection& levels = {});
std::size_t upward_route_size(const Graph& g, const TrussLabeling& labeling, EdgeId x);

}  // namespace atr
