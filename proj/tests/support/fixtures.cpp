#include "support/fixtures.hpp"

#include <stdexcept>

namespace atr::testing {

Graph graph_of(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  return Graph::from_edges(n, edges);
}

EdgeId edge(const Graph& g, VertexId u, VertexId v) {
  auto e = g.find_edge(u, v);
  if (!e) throw std::invalid_argument("no such edge");
  return *e;
}

Graph k4() { return graph_of(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

Graph bowtie() { return graph_of(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}); }

Graph path(std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return graph_of(n, edges);
}

Graph running_example() {
  std::vector<std::pair<VertexId, VertexId>> edges{{9, 10}, {8, 9}, {7, 8}, {5, 8}};
  auto clique = [&](std::vector<VertexId> vs, std::pair<VertexId, VertexId> missing) {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (std::pair(vs[i], vs[j]) != missing) edges.emplace_back(vs[i], vs[j]);
  };
  clique({1, 2, 5, 7, 9}, {5, 9});
  clique({6, 8, 10, 11, 12}, {6, 10});
  clique({3, 4, 5, 6, 13}, {0, 0});
  return graph_of(14, edges);
}

}  // namespace atr::testing
