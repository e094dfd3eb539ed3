#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "atr/follower.hpp"
#include "atr/graph.hpp"
#include "atr/truss.hpp"

namespace atr {

using NodeId = EdgeId;  // smallest edge id in the node
inline constexpr NodeId kRootNode = kNoEdge;

struct TreeNode {
  Trussness k = 0;
  std::vector<EdgeId> edges;  // ascending, all with trussness k
  NodeId id = kRootNode;
  NodeId parent = kRootNode;
  std::vector<NodeId> children;
};

// Hierarchy of truss components. A node at level K holds the trussness-K
// edges of one triangle-connected component of the K-truss; its subtree holds
// the rest of that component. Anchors belong to no node but join triangles at
// every level, so they can connect components. Edges of trussness 2 are left
// out.
class TrussComponentTree {
 public:
  static TrussComponentTree build(const Graph& g, const TrussLabeling& labeling);

  bool has_node(NodeId id) const { return nodes_.count(id) != 0; }
  const TreeNode& node(NodeId id) const;
  const std::vector<NodeId>& top_level() const { return top_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::vector<NodeId> node_ids() const;  // ascending

  NodeId node_of(EdgeId e) const { return edge_node_[e]; }
  // Ids of nodes holding a neighbor-edge of e with trussness >= t(e).
  std::span<const NodeId> sla(EdgeId e) const { return sla_[e]; }
  std::vector<EdgeId> subtree_edges(NodeId id) const;
  std::vector<NodeId> subtree_nodes(NodeId id) const;

  void recompute_sla(const Graph& g, const TrussLabeling& labeling, std::span<const EdgeId> edges);
  void recompute_all_sla(const Graph& g, const TrussLabeling& labeling);

  // Drops the subtree rooted at `id` and rebuilds the components of `edges`
  // under that subtree's parent. Returns the ids of the new nodes.
  std::vector<NodeId> replace_subtree(const Graph& g, const TrussLabeling& labeling, NodeId id,
                                      std::span<const EdgeId> edges);

  void write_json(std::ostream& out) const;

 private:
  std::vector<NodeId> build_under(const Graph& g, const TrussLabeling& labeling,
                                  std::vector<EdgeId> edges, NodeId parent);
  std::vector<NodeId> compute_sla(const Graph& g, const TrussLabeling& labeling, EdgeId e) const;
  std::vector<NodeId>& children_of(NodeId parent);

  std::unordered_map<NodeId, TreeNode> nodes_;
  std::vector<NodeId> top_;
  std::vector<NodeId> edge_node_;
  std::vector<std::vector<NodeId>> sla_;
};

enum class ReuseClass { kFull, kPartial, kNone };
const char* to_string(ReuseClass c);

// Follower results cached per (edge, trussness level), plus the node ids
// whose cached results stay valid after the latest commit.
class ReuseLedger {
 public:
  explicit ReuseLedger(std::size_t num_edges);

  const std::vector<NodeId>& rn(EdgeId e) const { return rn_[e]; }
  const std::vector<NodeId>& expired() const { return expired_; }
  // rn under the coarser rule that only expires the anchor's node, nodes
  // holding its followers and their new nodes. Filled when tracking is on.
  const std::vector<NodeId>& rn_node_rule(EdgeId e) const { return rn_node_rule_[e]; }
  void track_node_rule(bool on) { track_node_rule_ = on; }

  // Levels of sla(e) that must be searched again.
  LevelSelection dirty_levels(EdgeId e, const TrussComponentTree& tree) const;
  // Replaces the cached levels in `computed` with the split of `result`, and
  // forgets levels that no longer occur in sla(e).
  void store(EdgeId e, const TrussComponentTree& tree, const TrussLabeling& labeling,
             const FollowerSet& result, const LevelSelection& computed);
  std::size_t cached_gain(EdgeId e) const;
  std::vector<EdgeId> cached(EdgeId e, NodeId id) const;
  std::vector<EdgeId> cached_all(EdgeId e) const;
  void evict(EdgeId e);

  ReuseClass classify(EdgeId e, const TrussComponentTree& tree) const;

 private:
  friend void follower_reuse(const Graph&, EdgeId, TrussComponentTree&, ReuseLedger&, TrussLabeling&,
                             bool);
  struct LevelEntry {
    Trussness level;
    std::vector<std::pair<NodeId, std::vector<EdgeId>>> nodes;
  };
  std::vector<std::vector<LevelEntry>> cache_;
  std::vector<std::vector<NodeId>> rn_;
  std::vector<std::vector<NodeId>> rn_node_rule_;
  std::vector<NodeId> expired_;
  bool track_node_rule_ = false;
};

ReuseClass classify_reuse(const ReuseLedger& ledger, const TrussComponentTree& tree, EdgeId e);

// Commits x as an anchor: re-decomposes the component subtree that held x,
// rebuilds it in the tree, refreshes sla, and recomputes rn for every edge.
// The ledger must hold x's followers (its cached results from the round).
// `full_sla` recomputes sla for all edges instead of the affected ones.
void follower_reuse(const Graph& g, EdgeId x, TrussComponentTree& tree, ReuseLedger& ledger,
                    TrussLabeling& labeling, bool full_sla = false);

// Splits a follower set by the tree node holding each follower.
std::vector<std::pair<NodeId, std::vector<EdgeId>>> split_by_node(const TrussComponentTree& tree,
                                                                  std::span<const EdgeId> followers);

}  // namespace atr
