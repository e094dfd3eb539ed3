#pragma once

#include <vector>

#include "atr/graph.hpp"

namespace atr::testing {

Graph graph_of(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges);
EdgeId edge(const Graph& g, VertexId u, VertexId v);

Graph k4();
// Vertices a=0, b=1, c=2, d=3; edges in order (a,b),(a,c),(b,c),(b,d),(c,d).
Graph bowtie();
Graph path(std::size_t n);

// The 13-vertex running example: vertex k stands for v_k. Edge ids put the
// four trussness-3 edges first, then the components A, B and C, so node ids
// come out as 0, 4, 13 and 22.
//   A = K5 on {1,2,5,7,9} minus (5,9)      trussness 4
//   B = K5 on {6,8,10,11,12} minus (6,10)  trussness 4
//   C = K5 on {3,4,5,6,13}                 trussness 5
//   (9,10), (8,9), (7,8), (5,8)            trussness 3, layers 1..4
Graph running_example();

}  // namespace atr::testing
