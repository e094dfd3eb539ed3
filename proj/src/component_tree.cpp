#include "atr/component_tree.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace atr {

namespace {

class UnionFind {
 public:
  std::uint32_t add() {
    parent_.push_back(std::uint32_t(parent_.size()));
    rank_.push_back(0);
    return parent_.back();
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

constexpr std::uint32_t kNoLocal = std::numeric_limits<std::uint32_t>::max();

bool sorted_contains(const std::vector<NodeId>& v, NodeId id) {
  return std::binary_search(v.begin(), v.end(), id);
}

}  // namespace

TrussComponentTree TrussComponentTree::build(const Graph& g, const TrussLabeling& labeling) {
  if (labeling.size() != g.num_edges()) throw std::invalid_argument("labeling does not match graph");
  TrussComponentTree tree;
  tree.edge_node_.assign(g.num_edges(), kRootNode);
  tree.sla_.assign(g.num_edges(), {});
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!labeling.is_anchor(e) && labeling.trussness[e] >= 3) edges.push_back(e);
  tree.build_under(g, labeling, std::move(edges), kRootNode);
  tree.recompute_all_sla(g, labeling);
  return tree;
}

const TreeNode& TrussComponentTree::node(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("no tree node " + std::to_string(id));
  return it->second;
}

std::vector<NodeId> TrussComponentTree::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, n] : nodes_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<NodeId>& TrussComponentTree::children_of(NodeId parent) {
  return parent == kRootNode ? top_ : nodes_.at(parent).children;
}

std::vector<NodeId> TrussComponentTree::subtree_nodes(NodeId id) const {
  std::vector<NodeId> out{id};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const TreeNode& n = node(out[i]);
    out.insert(out.end(), n.children.begin(), n.children.end());
  }
  return out;
}

std::vector<EdgeId> TrussComponentTree::subtree_edges(NodeId id) const {
  std::vector<EdgeId> out;
  for (NodeId n : subtree_nodes(id)) {
    const auto& e = node(n).edges;
    out.insert(out.end(), e.begin(), e.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Splits `edges` into triangle-connected components (triangles may use
// anchors), makes one node per component from its lowest-trussness edges and
// repeats on what is left of each component.
std::vector<NodeId> TrussComponentTree::build_under(const Graph& g, const TrussLabeling& labeling,
                                                    std::vector<EdgeId> edges, NodeId parent) {
  struct Task {
    std::vector<EdgeId> edges;
    NodeId parent;
  };
  std::vector<NodeId> created;
  std::vector<std::uint32_t> local(g.num_edges(), kNoLocal);
  std::vector<EdgeId> touched_anchors;
  std::vector<Task> work;
  work.push_back({std::move(edges), parent});

  while (!work.empty()) {
    Task task = std::move(work.back());
    work.pop_back();
    if (task.edges.empty()) continue;

    UnionFind uf;
    for (EdgeId e : task.edges) local[e] = uf.add();
    auto slot = [&](EdgeId f) {
      if (local[f] == kNoLocal) {
        if (!labeling.is_anchor(f)) return kNoLocal;
        local[f] = uf.add();
        touched_anchors.push_back(f);
      }
      return local[f];
    };
    for (EdgeId e : task.edges) {
      for (const TriangleRef& t : g.triangles(e)) {
        std::uint32_t a = slot(t.first), b = slot(t.second);
        if (a == kNoLocal || b == kNoLocal) continue;
        uf.unite(local[e], a);
        uf.unite(local[e], b);
      }
    }

    std::map<std::uint32_t, std::vector<EdgeId>> components;
    for (EdgeId e : task.edges) components[uf.find(local[e])].push_back(e);
    for (EdgeId e : task.edges) local[e] = kNoLocal;
    for (EdgeId a : touched_anchors) local[a] = kNoLocal;
    touched_anchors.clear();

    for (auto& [root, members] : components) {
      Trussness k = kUnbounded;
      for (EdgeId e : members) k = std::min(k, labeling.trussness[e]);
      TreeNode n;
      n.k = k;
      n.parent = task.parent;
      std::vector<EdgeId> rest;
      for (EdgeId e : members) (labeling.trussness[e] == k ? n.edges : rest).push_back(e);
      std::sort(n.edges.begin(), n.edges.end());
      n.id = n.edges.front();
      for (EdgeId e : n.edges) edge_node_[e] = n.id;
      children_of(task.parent).push_back(n.id);
      created.push_back(n.id);
      NodeId id = n.id;
      nodes_.emplace(id, std::move(n));
      if (!rest.empty()) work.push_back({std::move(rest), id});
    }
  }
  std::sort(children_of(parent).begin(), children_of(parent).end());
  for (NodeId id : created) std::sort(nodes_.at(id).children.begin(), nodes_.at(id).children.end());
  return created;
}

std::vector<NodeId> TrussComponentTree::compute_sla(const Graph& g, const TrussLabeling& labeling,
                                                    EdgeId e) const {
  std::vector<NodeId> out;
  if (labeling.is_anchor(e)) return out;
  const Trussness te = labeling.trussness[e];
  for (const TriangleRef& t : g.triangles(e)) {
    for (EdgeId p : {t.first, t.second}) {
      if (!labeling.is_anchor(p) && labeling.trussness[p] >= te) out.push_back(edge_node_[p]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void TrussComponentTree::recompute_sla(const Graph& g, const TrussLabeling& labeling,
                                       std::span<const EdgeId> edges) {
  for (EdgeId e : edges) sla_[e] = compute_sla(g, labeling, e);
}

void TrussComponentTree::recompute_all_sla(const Graph& g, const TrussLabeling& labeling) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) sla_[e] = compute_sla(g, labeling, e);
}

std::vector<NodeId> TrussComponentTree::replace_subtree(const Graph& g, const TrussLabeling& labeling,
                                                        NodeId id, std::span<const EdgeId> edges) {
  const NodeId parent = node(id).parent;
  auto& siblings = children_of(parent);
  siblings.erase(std::remove(siblings.begin(), siblings.end(), id), siblings.end());
  for (NodeId n : subtree_nodes(id)) {
    for (EdgeId e : nodes_.at(n).edges) edge_node_[e] = kRootNode;
    nodes_.erase(n);
  }
  std::vector<EdgeId> keep;
  for (EdgeId e : edges)
    if (!labeling.is_anchor(e) && labeling.trussness[e] >= 3) keep.push_back(e);
  return build_under(g, labeling, std::move(keep), parent);
}

void TrussComponentTree::write_json(std::ostream& out) const {
  nlohmann::json nodes = nlohmann::json::array();
  for (NodeId id : node_ids()) {
    const TreeNode& n = node(id);
    nodes.push_back({{"id", n.id},
                     {"k", n.k},
                     {"size", n.edges.size()},
                     {"parent", n.parent == kRootNode ? nlohmann::json(nullptr) : nlohmann::json(n.parent)}});
  }
  out << nlohmann::json{{"nodes", nodes}}.dump(2) << '\n';
}

// ---- reuse ledger ----------------------------------------------------------

const char* to_string(ReuseClass c) {
  switch (c) {
    case ReuseClass::kFull:
      return "FR";
    case ReuseClass::kPartial:
      return "PR";
    case ReuseClass::kNone:
      return "NR";
  }
  return "?";
}

ReuseLedger::ReuseLedger(std::size_t num_edges)
    : cache_(num_edges), rn_(num_edges), rn_node_rule_(num_edges) {}

LevelSelection ReuseLedger::dirty_levels(EdgeId e, const TrussComponentTree& tree) const {
  LevelSelection sel = LevelSelection::none();
  for (NodeId id : tree.sla(e))
    if (!sorted_contains(rn_[e], id)) sel.enable(tree.node(id).k);
  return sel;
}

std::vector<std::pair<NodeId, std::vector<EdgeId>>> split_by_node(const TrussComponentTree& tree,
                                                                  std::span<const EdgeId> followers) {
  std::map<NodeId, std::vector<EdgeId>> parts;
  for (EdgeId f : followers) parts[tree.node_of(f)].push_back(f);
  return {parts.begin(), parts.end()};
}

void ReuseLedger::store(EdgeId e, const TrussComponentTree& tree, const TrussLabeling& labeling,
                        const FollowerSet& result, const LevelSelection& computed) {
  std::vector<Trussness> levels;
  for (NodeId id : tree.sla(e)) levels.push_back(tree.node(id).k);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<LevelEntry> next;
  for (LevelEntry& entry : cache_[e])
    if (std::binary_search(levels.begin(), levels.end(), entry.level) && !computed.contains(entry.level))
      next.push_back(std::move(entry));

  std::map<Trussness, std::vector<EdgeId>> by_level;
  for (EdgeId f : result.followers) by_level[labeling.trussness[f]].push_back(f);
  for (auto& [k, fs] : by_level) {
    if (!std::binary_search(levels.begin(), levels.end(), k))
      throw std::logic_error("follower outside the subtree adjacency of edge " + std::to_string(e));
  }
  for (auto& [k, fs] : by_level) {
    if (computed.contains(k)) next.push_back({k, split_by_node(tree, fs)});
  }
  std::sort(next.begin(), next.end(),
            [](const LevelEntry& a, const LevelEntry& b) { return a.level < b.level; });
  cache_[e] = std::move(next);
}

std::size_t ReuseLedger::cached_gain(EdgeId e) const {
  std::size_t total = 0;
  for (const LevelEntry& entry : cache_[e])
    for (const auto& [id, fs] : entry.nodes) total += fs.size();
  return total;
}

std::vector<EdgeId> ReuseLedger::cached(EdgeId e, NodeId id) const {
  for (const LevelEntry& entry : cache_[e])
    for (const auto& [nid, fs] : entry.nodes)
      if (nid == id) return fs;
  return {};
}

std::vector<EdgeId> ReuseLedger::cached_all(EdgeId e) const {
  std::vector<EdgeId> out;
  for (const LevelEntry& entry : cache_[e])
    for (const auto& [id, fs] : entry.nodes) out.insert(out.end(), fs.begin(), fs.end());
  std::sort(out.begin(), out.end());
  return out;
}

void ReuseLedger::evict(EdgeId e) {
  cache_[e].clear();
  rn_[e].clear();
  rn_node_rule_[e].clear();
}

ReuseClass ReuseLedger::classify(EdgeId e, const TrussComponentTree& tree) const {
  auto sla = tree.sla(e);
  if (sla.empty() || rn_[e].size() == sla.size()) return ReuseClass::kFull;
  if (rn_[e].empty()) return ReuseClass::kNone;
  return ReuseClass::kPartial;
}

ReuseClass classify_reuse(const ReuseLedger& ledger, const TrussComponentTree& tree, EdgeId e) {
  return ledger.classify(e, tree);
}

// Expired ids: x's node, every node in sla(x) (x now sits in the context of
// all those levels), and every node of the rebuilt subtree that changed, by
// its old id and by its new id. A cached level of e survives only if none of
// the nodes e touches at that level, before or after, expired: nodes of one
// level are coupled through the triangles that contain e.
void follower_reuse(const Graph& g, EdgeId x, TrussComponentTree& tree, ReuseLedger& ledger,
                    TrussLabeling& labeling, bool full_sla) {
  g.check_edge(x);
  if (!labeling.is_anchor(x)) throw std::domain_error("edge " + std::to_string(x) + " is not anchored");
  const std::size_t m = g.num_edges();
  const NodeId nx = tree.node_of(x);
  const std::vector<EdgeId> fx = ledger.cached_all(x);
  ledger.evict(x);
  ledger.expired_.clear();
  if (nx == kRootNode) {
    // x was in no triangle, so nothing depends on it.
    if (!fx.empty()) throw std::logic_error("triangle-free anchor with followers");
    return;
  }

  std::vector<NodeId> es{nx};
  std::vector<NodeId> es_node_rule{nx};
  for (NodeId id : tree.sla(x)) es.push_back(id);
  for (EdgeId f : fx) es_node_rule.push_back(tree.node_of(f));

  const std::vector<EdgeId> subtree = tree.subtree_edges(nx);
  struct Snapshot {
    Trussness k;
    std::vector<EdgeId> edges;
  };
  std::unordered_map<NodeId, Snapshot> old_nodes;
  for (NodeId id : tree.subtree_nodes(nx)) old_nodes.emplace(id, Snapshot{tree.node(id).k, tree.node(id).edges});

  std::vector<char> affected(m, 0);
  std::vector<EdgeId> affected_list;
  auto mark = [&](EdgeId e) {
    if (!affected[e] && !labeling.is_anchor(e)) {
      affected[e] = 1;
      affected_list.push_back(e);
    }
  };
  for (EdgeId s : subtree) {
    mark(s);
    for (const TriangleRef& t : g.triangles(s)) {
      mark(t.first);
      mark(t.second);
    }
  }
  std::unordered_map<EdgeId, std::vector<std::pair<NodeId, Trussness>>> old_sla;
  for (EdgeId e : affected_list) {
    auto& v = old_sla[e];
    for (NodeId id : tree.sla(e)) v.emplace_back(id, tree.node(id).k);
  }

  std::vector<char> member(m, 0), anchor(m, 0);
  std::vector<EdgeId> rebuilt;
  for (EdgeId s : subtree)
    if (s != x) {
      member[s] = 1;
      rebuilt.push_back(s);
    }
  for (EdgeId e = 0; e < m; ++e) anchor[e] = labeling.is_anchor(e);
  truss_decompose_subset(g, member, anchor, labeling);
  std::vector<NodeId> created = tree.replace_subtree(g, labeling, nx, rebuilt);

  for (NodeId id : created) {
    auto it = old_nodes.find(id);
    const TreeNode& n = tree.node(id);
    if (it == old_nodes.end() || it->second.k != n.k || it->second.edges != n.edges) es.push_back(id);
  }
  for (const auto& [id, snap] : old_nodes) {
    if (!tree.has_node(id) || tree.node(id).k != snap.k || tree.node(id).edges != snap.edges) es.push_back(id);
  }
  for (EdgeId f : fx) {
    es.push_back(tree.node_of(f));
    es_node_rule.push_back(tree.node_of(f));
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  std::sort(es_node_rule.begin(), es_node_rule.end());
  es_node_rule.erase(std::unique(es_node_rule.begin(), es_node_rule.end()), es_node_rule.end());

  if (full_sla) {
    tree.recompute_all_sla(g, labeling);
  } else {
    affected_list.push_back(x);
    tree.recompute_sla(g, labeling, affected_list);
  }

  std::vector<char> is_follower(m, 0);
  for (EdgeId f : fx) is_follower[f] = 1;
  std::vector<Trussness> expired_levels;
  for (EdgeId e = 0; e < m; ++e) {
    auto& rn = ledger.rn_[e];
    rn.clear();
    if (labeling.is_anchor(e)) {
      ledger.evict(e);
      continue;
    }
    if (is_follower[e]) {
      ledger.evict(e);
      continue;
    }
    auto now = tree.sla(e);
    expired_levels.clear();
    for (NodeId id : now)
      if (sorted_contains(es, id)) expired_levels.push_back(tree.node(id).k);
    if (affected[e]) {
      for (auto [id, k] : old_sla[e])
        if (sorted_contains(es, id)) expired_levels.push_back(k);
    }
    for (NodeId id : now) {
      if (sorted_contains(es, id)) continue;
      Trussness k = tree.node(id).k;
      if (std::find(expired_levels.begin(), expired_levels.end(), k) != expired_levels.end()) continue;
      rn.push_back(id);
    }
    if (ledger.track_node_rule_) {
      auto& alt = ledger.rn_node_rule_[e];
      alt.clear();
      for (NodeId id : now)
        if (!sorted_contains(es_node_rule, id)) alt.push_back(id);
    }
  }
  ledger.expired_ = std::move(es);
}

}  // namespace atr
