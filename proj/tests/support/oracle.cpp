#include "support/oracle.hpp"

#include <algorithm>
#include <random>

namespace atr::testing {

namespace {

std::size_t support_within(const Graph& g, EdgeId e, const std::vector<char>& in) {
  auto [u, v] = g.endpoints(e);
  std::size_t s = 0;
  for (VertexId w : g.common_neighbors(e)) {
    if (in[*g.find_edge(u, w)] && in[*g.find_edge(v, w)]) ++s;
  }
  return s;
}

}  // namespace

std::vector<Trussness> brute_trussness(const Graph& g, std::span<const EdgeId> anchors) {
  const std::size_t m = g.num_edges();
  std::vector<char> anchor(m, 0), in(m, 1);
  for (EdgeId a : anchors) anchor[a] = 1;
  std::vector<Trussness> t(m, 2);
  for (EdgeId a : anchors) t[a] = kUnbounded;
  for (Trussness k = 3;; ++k) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (EdgeId e = 0; e < m; ++e) {
        if (in[e] && !anchor[e] && support_within(g, e, in) + 2 < k) {
          in[e] = 0;
          changed = true;
        }
      }
    }
    bool any = false;
    for (EdgeId e = 0; e < m; ++e) {
      if (in[e] && !anchor[e]) {
        t[e] = k;
        any = true;
      }
    }
    if (!any) break;
  }
  return t;
}

std::vector<EdgeId> brute_followers(const Graph& g, EdgeId x, std::span<const EdgeId> prior) {
  std::vector<EdgeId> with(prior.begin(), prior.end());
  with.push_back(x);
  auto before = brute_trussness(g, prior);
  auto after = brute_trussness(g, with);
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (after[e] != kUnbounded && before[e] != kUnbounded && after[e] > before[e]) out.push_back(e);
  return out;
}

std::uint64_t brute_gain(const Graph& g, std::span<const EdgeId> anchors) {
  auto before = brute_trussness(g);
  auto after = brute_trussness(g, anchors);
  std::uint64_t gain = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (after[e] != kUnbounded) gain += after[e] - before[e];
  return gain;
}

std::vector<Trussness> sequential_peel(const Graph& g, std::uint64_t seed) {
  const std::size_t m = g.num_edges();
  std::mt19937_64 rng(seed);
  std::vector<char> in(m, 1);
  std::vector<Trussness> t(m, 2);
  std::vector<EdgeId> order(m);
  for (EdgeId e = 0; e < m; ++e) order[e] = e;
  std::size_t left = m;
  for (Trussness k = 2; left > 0; ++k) {
    bool removed = true;
    while (removed) {
      removed = false;
      std::shuffle(order.begin(), order.end(), rng);
      for (EdgeId e : order) {
        if (in[e] && support_within(g, e, in) + 2 <= k) {
          in[e] = 0;
          t[e] = k;
          --left;
          removed = true;
          break;
        }
      }
    }
  }
  return t;
}

}  // namespace atr::testing
