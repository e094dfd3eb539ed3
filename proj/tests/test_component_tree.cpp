#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "atr/anchor_select.hpp"
#include "atr/bench.hpp"
#include "atr/component_tree.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace atr;
using atr::testing::edge;

namespace {

std::vector<NodeId> sla_of(const TrussComponentTree& t, EdgeId e) {
  auto s = t.sla(e);
  return {s.begin(), s.end()};
}

// Non-anchor edges of the triangle-connected component of the k-truss that
// contains `start`, found by a plain BFS.
std::vector<EdgeId> component_of(const Graph& g, const TrussLabeling& lab, Trussness k, EdgeId start) {
  auto in = [&](EdgeId e) { return lab.trussness[e] >= k; };
  std::vector<char> seen(g.num_edges(), 0);
  std::vector<EdgeId> stack{start}, out;
  seen[start] = 1;
  while (!stack.empty()) {
    EdgeId e = stack.back();
    stack.pop_back();
    if (!lab.is_anchor(e)) out.push_back(e);
    for (const TriangleRef& t : g.triangles(e)) {
      if (!in(t.first) || !in(t.second)) continue;
      for (EdgeId f : {t.first, t.second})
        if (!seen[f]) {
          seen[f] = 1;
          stack.push_back(f);
        }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_tree(const Graph& g, const TrussLabeling& lab, const TrussComponentTree& tree) {
  std::vector<int> owner_count(g.num_edges(), 0);
  for (NodeId id : tree.node_ids()) {
    const TreeNode& n = tree.node(id);
    REQUIRE_FALSE(n.edges.empty());
    CHECK(n.id == id);
    CHECK(n.edges.front() == id);
    CHECK(std::is_sorted(n.edges.begin(), n.edges.end()));
    for (EdgeId e : n.edges) {
      CHECK(lab.trussness[e] == n.k);
      CHECK(tree.node_of(e) == id);
      ++owner_count[e];
    }
    if (n.parent == kRootNode) {
      auto& top = tree.top_level();
      CHECK(std::find(top.begin(), top.end(), id) != top.end());
    } else {
      const TreeNode& p = tree.node(n.parent);
      CHECK(p.k < n.k);
      CHECK(std::find(p.children.begin(), p.children.end(), id) != p.children.end());
    }
    for (NodeId c : n.children) CHECK(tree.node(c).parent == id);

    auto sub = tree.subtree_edges(id);
    std::sort(sub.begin(), sub.end());
    CHECK(sub == component_of(g, lab, n.k, n.edges.front()));
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    bool in_tree = !lab.is_anchor(e) && lab.trussness[e] >= 3;
    CHECK(owner_count[e] == (in_tree ? 1 : 0));
    if (!in_tree) CHECK(tree.node_of(e) == kRootNode);

    std::set<NodeId> expect;
    if (!lab.is_anchor(e))
      for (const TriangleRef& t : g.triangles(e))
        for (EdgeId f : {t.first, t.second})
          if (!lab.is_anchor(f) && lab.trussness[f] >= lab.trussness[e]) expect.insert(tree.node_of(f));
    if (!lab.is_anchor(e)) CHECK(sla_of(tree, e) == std::vector<NodeId>(expect.begin(), expect.end()));
  }
}

}  // namespace

TEST_CASE("k4 and bowtie trees") {
  Graph k = atr::testing::k4();
  auto kt = TrussComponentTree::build(k, truss_decompose(k));
  CHECK(kt.num_nodes() == 1);
  CHECK(kt.node(0).k == 4);
  CHECK(kt.node(0).edges.size() == 6);

  Graph bt = atr::testing::bowtie();
  auto bl = truss_decompose(bt);
  auto btt = TrussComponentTree::build(bt, bl);
  CHECK(btt.num_nodes() == 1);
  CHECK(btt.node(0).k == 3);
  check_tree(bt, bl, btt);

  Graph p = atr::testing::path(5);
  auto pt = TrussComponentTree::build(p, truss_decompose(p));
  CHECK(pt.num_nodes() == 0);
  CHECK(pt.sla(0).empty());
}

TEST_CASE("running example tree and sla") {
  Graph g = atr::testing::running_example();
  TrussLabeling lab = truss_decompose(g);
  auto tree = TrussComponentTree::build(g, lab);
  CHECK(tree.node_ids() == std::vector<NodeId>{0, 4, 13, 22});
  CHECK(tree.top_level() == std::vector<NodeId>{0});
  CHECK(tree.node(0).k == 3);
  CHECK(tree.node(4).k == 4);
  CHECK(tree.node(13).k == 4);
  CHECK(tree.node(22).k == 5);
  CHECK(sla_of(tree, edge(g, 9, 10)) == std::vector<NodeId>{0, 13});
  CHECK(sla_of(tree, edge(g, 5, 8)) == std::vector<NodeId>{0, 4, 13, 22});
  check_tree(g, lab, tree);

  std::ostringstream js;
  tree.write_json(js);
  CHECK(js.str().find("\"nodes\"") != std::string::npos);
}

TEST_CASE("tree structure on the random corpus") {
  std::uint64_t i = 0;
  for (const Graph& g : random_corpus(40, 41)) {
    check_tree(g, truss_decompose(g), TrussComponentTree::build(g, truss_decompose(g)));
    std::vector<EdgeId> anchors;
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if ((e * 7 + i) % 11 == 0) anchors.push_back(e);
    TrussLabeling al = anchored_truss_decompose(g, anchors).labeling;
    check_tree(g, al, TrussComponentTree::build(g, al));
    ++i;
  }
}

TEST_CASE("followers lie in the nodes of sla") {
  for (const Graph& g : random_corpus(40, 43)) {
    TrussLabeling lab = truss_decompose(g);
    auto tree = TrussComponentTree::build(g, lab);
    for (EdgeId x = 0; x < g.num_edges(); ++x) {
      auto sla = tree.sla(x);
      for (EdgeId f : atr::testing::brute_followers(g, x))
        CHECK(std::find(sla.begin(), sla.end(), tree.node_of(f)) != sla.end());
    }
  }
}

TEST_CASE("reuse classes") {
  Graph g = atr::testing::running_example();
  TrussLabeling lab = truss_decompose(g);
  auto tree = TrussComponentTree::build(g, lab);
  ReuseLedger ledger(g.num_edges());
  const EdgeId e = edge(g, 9, 10);
  CHECK(ledger.classify(e, tree) == ReuseClass::kNone);
  CHECK(ledger.classify(edge(g, 13, 3), tree) == ReuseClass::kNone);
  CHECK(std::string(to_string(ReuseClass::kPartial)) == "PR");
  Graph p = atr::testing::path(3);
  auto pt = TrussComponentTree::build(p, truss_decompose(p));
  CHECK(ReuseLedger(p.num_edges()).classify(0, pt) == ReuseClass::kFull);
}

TEST_CASE("commit on the running example") {
  Graph g = atr::testing::running_example();
  TrussLabeling lab = truss_decompose(g);
  auto tree = TrussComponentTree::build(g, lab);
  ReuseLedger ledger(g.num_edges());
  FollowerSearch search(g, lab);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto dirty = ledger.dirty_levels(e, tree);
    ledger.store(e, tree, lab, search.run(e, dirty), dirty);
  }
  const EdgeId x = edge(g, 9, 10);
  CHECK(ledger.cached_gain(x) == 3);
  lab.trussness[x] = kUnbounded;
  lab.layer[x] = 0;
  follower_reuse(g, x, tree, ledger, lab);

  EdgeId a[] = {x};
  TrussLabeling fresh = anchored_truss_decompose(g, a).labeling;
  CHECK(lab.trussness == fresh.trussness);
  CHECK(lab.layer == fresh.layer);
  check_tree(g, lab, tree);
  // The trussness-3 chain joined A and B, so their old ids expired.
  auto& es = ledger.expired();
  CHECK(std::binary_search(es.begin(), es.end(), NodeId(0)));
  CHECK(ledger.cached_all(x).empty());
  // C is untouched and its edges keep everything they had.
  const EdgeId c = edge(g, 3, 4);
  CHECK(ledger.classify(c, tree) == ReuseClass::kFull);
}

TEST_CASE("reuse matches fresh searches round after round") {
  std::size_t checked = 0;
  for (const Graph& g : random_corpus(40, 47)) {
    for (bool full : {false, true}) {
      std::vector<EdgeId> anchors;
      TrussLabeling lab = truss_decompose(g);
      auto tree = TrussComponentTree::build(g, lab);
      ReuseLedger ledger(g.num_edges());
      FollowerSearch search(g, lab);
      for (int round = 0; round < 4; ++round) {
        EdgeId best = kNoEdge;
        std::size_t best_gain = 0;
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
          if (lab.is_anchor(e)) continue;
          auto dirty = ledger.dirty_levels(e, tree);
          ledger.store(e, tree, lab, search.run(e, dirty), dirty);
          auto fresh = atr::testing::brute_followers(g, e, anchors);
          CHECK(ledger.cached_all(e) == fresh);
          if (best == kNoEdge || ledger.cached_gain(e) > best_gain) {
            best = e;
            best_gain = ledger.cached_gain(e);
          }
        }
        if (best == kNoEdge) break;
        anchors.push_back(best);
        lab.trussness[best] = kUnbounded;
        lab.layer[best] = 0;
        follower_reuse(g, best, tree, ledger, lab, full);

        TrussLabeling expect = anchored_truss_decompose(g, anchors).labeling;
        CHECK(lab.trussness == expect.trussness);
        CHECK(lab.layer == expect.layer);
        auto rebuilt = TrussComponentTree::build(g, lab);
        CHECK(tree.node_ids() == rebuilt.node_ids());
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
          if (lab.is_anchor(e)) continue;
          CHECK(sla_of(tree, e) == sla_of(rebuilt, e));
          auto sla = tree.sla(e);
          for (NodeId id : ledger.rn(e)) CHECK(std::find(sla.begin(), sla.end(), id) != sla.end());
          if (ledger.rn(e).empty()) continue;
          FollowerSet fresh = get_followers(g, lab, e);
          for (NodeId id : ledger.rn(e)) {
            std::vector<EdgeId> part;
            for (EdgeId f : fresh.followers)
              if (tree.node_of(f) == id) part.push_back(f);
            CHECK(ledger.cached(e, id) == part);
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("follower_reuse needs an anchored edge") {
  Graph g = atr::testing::k4();
  TrussLabeling lab = truss_decompose(g);
  auto tree = TrussComponentTree::build(g, lab);
  ReuseLedger ledger(g.num_edges());
  CHECK_THROWS_AS(follower_reuse(g, 0, tree, ledger, lab), std::domain_error);
}
