#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atr {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using VertexLabel = std::int64_t;

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

struct Neighbor {
  VertexId vertex;
  EdgeId edge;
};

// One triangle seen from an edge (u, v): apex w plus the edges (u, w) and
// (v, w), where u is the smaller endpoint.
struct TriangleRef {
  VertexId apex;
  EdgeId first;
  EdgeId second;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class SelfLoopPolicy { kDrop, kReject };
enum class DuplicatePolicy { kCollapse, kReject };

struct LoadOptions {
  SelfLoopPolicy self_loops = SelfLoopPolicy::kDrop;
  DuplicatePolicy duplicates = DuplicatePolicy::kCollapse;
};

// Immutable simple undirected graph. Edge ids follow insertion order, vertex
// neighbor lists are sorted, and the triangles of every edge are indexed at
// construction time.
class Graph {
 public:
  Graph() = default;

  // Pairs are over dense vertex ids in [0, n). Self-loops and repeated pairs
  // are handled according to `options`; surviving edges keep first-appearance
  // order.
  static Graph from_edges(std::size_t n,
                          std::span<const std::pair<VertexId, VertexId>> edges,
                          LoadOptions options = {});

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return endpoints_.size(); }
  std::size_t num_triangles() const { return num_triangles_; }

  std::span<const Neighbor> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  // Endpoints with first < second.
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const;
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  std::span<const TriangleRef> triangles(EdgeId e) const;
  std::size_t support(EdgeId e) const { return triangles(e).size(); }

  // Linear merge of the two sorted neighbor lists; independent of the index.
  std::vector<VertexId> common_neighbors(EdgeId e) const;
  std::vector<TriangleRef> neighbor_edges(EdgeId e) const;

  // Original input label of a vertex. Graphs built from dense ids use the id.
  VertexLabel label(VertexId v) const { return labels_.empty() ? VertexLabel(v) : labels_[v]; }
  void set_labels(std::vector<VertexLabel> labels);

  void check_edge(EdgeId e) const {
    if (e >= num_edges()) throw std::domain_error("edge id " + std::to_string(e) + " out of range");
  }

 private:
  void index_triangles();

  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<std::pair<VertexId, VertexId>> endpoints_;
  std::vector<std::size_t> tri_offsets_;
  std::vector<TriangleRef> tri_;
  std::size_t num_triangles_ = 0;
  std::vector<VertexLabel> labels_;
};

Graph parse_edge_list(std::istream& in, LoadOptions options = {});
Graph load_edge_list(const std::filesystem::path& path, LoadOptions options = {});

// Writes "u v" lines using original labels.
void write_edge_list(const Graph& g, std::ostream& out);
void write_label_map_csv(const Graph& g, std::ostream& out);

}  // namespace atr
