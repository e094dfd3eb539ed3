#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "atr/graph.hpp"

namespace atr {

using Trussness = std::uint32_t;

// Trussness reported for anchors, which are never peeled.
inline constexpr Trussness kUnbounded = std::numeric_limits<Trussness>::max();

struct TrussLabeling {
  std::vector<Trussness> trussness;
  std::vector<std::uint32_t> layer;  // 1-based peeling round within phase t(e); 0 for anchors
  Trussness k_max = 0;               // largest finite trussness, 0 if there is none

  std::size_t size() const { return trussness.size(); }
  bool is_anchor(EdgeId e) const { return trussness[e] == kUnbounded; }

  // e1 precedes e2 iff t(e1) < t(e2), or equal trussness and l(e1) <= l(e2).
  bool precedes(EdgeId e1, EdgeId e2) const {
    return trussness[e1] < trussness[e2] ||
           (trussness[e1] == trussness[e2] && layer[e1] <= layer[e2]);
  }
};

struct AnchorState {
  std::vector<EdgeId> anchors;  // sorted
  TrussLabeling labeling;       // anchors carry kUnbounded
};

TrussLabeling truss_decompose(const Graph& g);

// Peels in synchronized rounds but never removes anchors; stops once only
// anchors remain.
AnchorState anchored_truss_decompose(const Graph& g, std::span<const EdgeId> anchors);

// Decomposes the subgraph formed by the edges flagged in `member` plus the
// anchors flagged in `anchor`. Only member edges that are not anchors receive
// labels; other entries of `out` are left untouched.
void truss_decompose_subset(const Graph& g, const std::vector<char>& member,
                            const std::vector<char>& anchor, TrussLabeling& out);

// Sum over non-anchor edges of the trussness increase.
std::uint64_t trussness_gain(const TrussLabeling& base, const TrussLabeling& anchored);
std::uint64_t trussness_gain(const Graph& g, std::span<const EdgeId> anchors);

std::map<Trussness, std::vector<EdgeId>> hulls(const TrussLabeling& labeling);

// CSV with columns edge_id,u,v,trussness,layer; anchors print "inf".
void write_labeling_csv(const Graph& g, const TrussLabeling& labeling, std::ostream& out);

}  // namespace atr
