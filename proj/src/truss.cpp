#include "atr/truss.hpp"

#include <algorithm>
#include <ostream>

namespace atr {

namespace {

void refresh_k_max(TrussLabeling& out) {
  out.k_max = 0;
  for (Trussness t : out.trussness)
    if (t != kUnbounded) out.k_max = std::max(out.k_max, t);
}

}  // namespace

// Phase k removes, round by round, every edge whose support is at most k-2
// at the start of the round. Supports live in lazy buckets: an edge is pushed
// again whenever its support drops, and stale entries are skipped.
void truss_decompose_subset(const Graph& g, const std::vector<char>& member,
                            const std::vector<char>& anchor, TrussLabeling& out) {
  const std::size_t m = g.num_edges();
  if (member.size() != m || anchor.size() != m) throw std::invalid_argument("mask size mismatch");
  if (out.trussness.size() != m) {
    out.trussness.assign(m, 2);
    out.layer.assign(m, 1);
  }

  std::vector<char> removed(m, 0), queued(m, 0);
  std::vector<std::uint32_t> sup(m, 0);
  auto present = [&](EdgeId e) { return (member[e] || anchor[e]) && !removed[e]; };

  std::size_t remaining = 0;
  std::uint32_t max_sup = 0;
  for (EdgeId e = 0; e < m; ++e) {
    if (anchor[e]) {
      if (member[e]) {
        out.trussness[e] = kUnbounded;
        out.layer[e] = 0;
      }
      continue;
    }
    if (!member[e]) continue;
    ++remaining;
    std::uint32_t s = 0;
    for (const TriangleRef& t : g.triangles(e))
      if (present(t.first) && present(t.second)) ++s;
    sup[e] = s;
    max_sup = std::max(max_sup, s);
  }
  std::vector<std::vector<EdgeId>> buckets(max_sup + 1);
  for (EdgeId e = 0; e < m; ++e)
    if (member[e] && !anchor[e]) buckets[sup[e]].push_back(e);

  std::vector<EdgeId> frontier, next;
  for (Trussness k = 2; remaining > 0; ++k) {
    const std::uint32_t threshold = k - 2;
    frontier.clear();
    if (threshold < buckets.size()) {
      for (EdgeId e : buckets[threshold]) {
        if (!removed[e] && !queued[e] && sup[e] == threshold) {
          queued[e] = 1;
          frontier.push_back(e);
        }
      }
      std::vector<EdgeId>().swap(buckets[threshold]);
    }
    auto drop = [&](EdgeId a) {
      if (anchor[a] || queued[a]) return;
      if (--sup[a] <= threshold) {
        queued[a] = 1;
        next.push_back(a);
      } else {
        buckets[sup[a]].push_back(a);
      }
    };
    for (std::uint32_t round = 1; !frontier.empty(); ++round) {
      next.clear();
      for (EdgeId e : frontier) {
        out.trussness[e] = k;
        out.layer[e] = round;
      }
      // A triangle dies with the first of its edges to be processed, so each
      // surviving partner loses it exactly once.
      for (EdgeId e : frontier) {
        for (const TriangleRef& t : g.triangles(e)) {
          if (present(t.first) && present(t.second)) {
            drop(t.first);
            drop(t.second);
          }
        }
        removed[e] = 1;
        --remaining;
      }
      frontier.swap(next);
    }
  }
  refresh_k_max(out);
}

TrussLabeling truss_decompose(const Graph& g) {
  std::vector<char> member(g.num_edges(), 1), anchor(g.num_edges(), 0);
  TrussLabeling out;
  truss_decompose_subset(g, member, anchor, out);
  return out;
}

AnchorState anchored_truss_decompose(const Graph& g, std::span<const EdgeId> anchors) {
  std::vector<char> member(g.num_edges(), 1), anchor(g.num_edges(), 0);
  AnchorState state;
  for (EdgeId a : anchors) {
    g.check_edge(a);
    anchor[a] = 1;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (anchor[e]) state.anchors.push_back(e);
  truss_decompose_subset(g, member, anchor, state.labeling);
  return state;
}

std::uint64_t trussness_gain(const TrussLabeling& base, const TrussLabeling& anchored) {
  if (base.size() != anchored.size()) throw std::invalid_argument("labelings differ in size");
  std::uint64_t gain = 0;
  for (EdgeId e = 0; e < base.size(); ++e) {
    if (anchored.is_anchor(e) || base.is_anchor(e)) continue;
    if (anchored.trussness[e] < base.trussness[e])
      throw std::logic_error("anchoring lowered the trussness of edge " + std::to_string(e));
    gain += anchored.trussness[e] - base.trussness[e];
  }
  return gain;
}

std::uint64_t trussness_gain(const Graph& g, std::span<const EdgeId> anchors) {
  return trussness_gain(truss_decompose(g), anchored_truss_decompose(g, anchors).labeling);
}

std::map<Trussness, std::vector<EdgeId>> hulls(const TrussLabeling& labeling) {
  std::map<Trussness, std::vector<EdgeId>> out;
  for (EdgeId e = 0; e < labeling.size(); ++e)
    if (!labeling.is_anchor(e)) out[labeling.trussness[e]].push_back(e);
  return out;
}

void write_labeling_csv(const Graph& g, const TrussLabeling& labeling, std::ostream& out) {
  out << "edge_id,u,v,trussness,layer\n";
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    out << e << ',' << g.label(u) << ',' << g.label(v) << ',';
    if (labeling.is_anchor(e))
      out << "inf";
    else
      out << labeling.trussness[e];
    out << ',' << labeling.layer[e] << '\n';
  }
}

}  // namespace atr
