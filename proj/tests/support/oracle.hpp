#pragma once

// Brute-force references used by the tests. They share nothing with the
// library's peeling code beyond the Graph accessors.

#include <cstdint>
#include <span>
#include <vector>

#include "atr/graph.hpp"
#include "atr/truss.hpp"

namespace atr::testing {

// Trussness by definition: T_k is the fixpoint of dropping every non-anchor
// edge with fewer than k-2 triangles inside the current edge set. Anchors get
// kUnbounded.
std::vector<Trussness> brute_trussness(const Graph& g, std::span<const EdgeId> anchors = {});

// Edges whose trussness rises when x joins the anchors `prior`.
std::vector<EdgeId> brute_followers(const Graph& g, EdgeId x, std::span<const EdgeId> prior = {});

std::uint64_t brute_gain(const Graph& g, std::span<const EdgeId> anchors);

// One edge at a time in a seeded random order instead of synchronized rounds.
std::vector<Trussness> sequential_peel(const Graph& g, std::uint64_t seed);

}  // namespace atr::testing
