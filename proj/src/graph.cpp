#include "atr/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace atr {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges,
                        LoadOptions options) {
  Graph g;
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("vertex id out of range");
    if (u == v) {
      if (options.self_loops == SelfLoopPolicy::kReject)
        throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
      continue;
    }
    if (u > v) std::swap(u, v);
    std::uint64_t key = (std::uint64_t(u) << 32) | v;
    if (!seen.insert(key).second) {
      if (options.duplicates == DuplicatePolicy::kReject)
        throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      continue;
    }
    g.endpoints_.emplace_back(u, v);
  }

  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : g.endpoints_) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId e = 0; e < g.endpoints_.size(); ++e) {
    auto [u, v] = g.endpoints_[e];
    g.adjacency_[fill[u]++] = {v, e};
    g.adjacency_[fill[v]++] = {u, e};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adjacency_.begin() + g.offsets_[i], g.adjacency_.begin() + g.offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
  g.index_triangles();
  return g;
}

// Each triangle is found once from its lowest-ranked vertex (rank = degree,
// then id) and then scattered to its three edges.
void Graph::index_triangles() {
  const std::size_t n = num_vertices();
  const std::size_t m = num_edges();
  auto higher = [&](VertexId a, VertexId b) {
    std::size_t da = degree(a), db = degree(b);
    return da != db ? da < db : a < b;
  };
  std::vector<std::size_t> out_off(n + 1, 0);
  for (VertexId u = 0; u < n; ++u)
    for (const Neighbor& nb : neighbors(u))
      if (higher(u, nb.vertex)) ++out_off[u + 1];
  for (std::size_t i = 0; i < n; ++i) out_off[i + 1] += out_off[i];
  std::vector<Neighbor> out(out_off[n]);
  {
    std::vector<std::size_t> fill(out_off.begin(), out_off.end() - 1);
    for (VertexId u = 0; u < n; ++u)
      for (const Neighbor& nb : neighbors(u))
        if (higher(u, nb.vertex)) out[fill[u]++] = nb;
  }

  std::vector<EdgeId> mark(n, kNoEdge);
  auto for_each = [&](auto&& emit) {
    for (VertexId u = 0; u < n; ++u) {
      for (std::size_t i = out_off[u]; i < out_off[u + 1]; ++i) mark[out[i].vertex] = out[i].edge;
      for (std::size_t i = out_off[u]; i < out_off[u + 1]; ++i) {
        VertexId v = out[i].vertex;
        for (std::size_t j = out_off[v]; j < out_off[v + 1]; ++j) {
          VertexId w = out[j].vertex;
          if (mark[w] != kNoEdge) emit(u, v, w, out[i].edge, mark[w], out[j].edge);
        }
      }
      for (std::size_t i = out_off[u]; i < out_off[u + 1]; ++i) mark[out[i].vertex] = kNoEdge;
    }
  };

  tri_offsets_.assign(m + 1, 0);
  num_triangles_ = 0;
  for_each([&](VertexId, VertexId, VertexId, EdgeId uv, EdgeId uw, EdgeId vw) {
    ++tri_offsets_[uv + 1];
    ++tri_offsets_[uw + 1];
    ++tri_offsets_[vw + 1];
    ++num_triangles_;
  });
  for (std::size_t i = 0; i < m; ++i) tri_offsets_[i + 1] += tri_offsets_[i];
  tri_.resize(tri_offsets_[m]);
  std::vector<std::size_t> fill(tri_offsets_.begin(), tri_offsets_.end() - 1);
  // Orient partner edges so that `first` touches the smaller endpoint.
  auto put = [&](EdgeId e, VertexId apex, EdgeId ea, EdgeId eb) {
    VertexId lo = endpoints_[e].first;
    auto [a0, a1] = endpoints_[ea];
    bool ea_has_lo = a0 == lo || a1 == lo;
    tri_[fill[e]++] = ea_has_lo ? TriangleRef{apex, ea, eb} : TriangleRef{apex, eb, ea};
  };
  for_each([&](VertexId u, VertexId v, VertexId w, EdgeId uv, EdgeId uw, EdgeId vw) {
    put(uv, w, uw, vw);
    put(uw, v, uv, vw);
    put(vw, u, uv, uw);
  });
  for (EdgeId e = 0; e < m; ++e) {
    std::sort(tri_.begin() + tri_offsets_[e], tri_.begin() + tri_offsets_[e + 1],
              [](const TriangleRef& a, const TriangleRef& b) { return a.apex < b.apex; });
  }
}

std::span<const Neighbor> Graph::neighbors(VertexId v) const {
  if (v >= num_vertices()) throw std::domain_error("vertex id " + std::to_string(v) + " out of range");
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::pair<VertexId, VertexId> Graph::endpoints(EdgeId e) const {
  check_edge(e);
  return endpoints_[e];
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
  if (u >= num_vertices() || v >= num_vertices()) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v,
                             [](const Neighbor& a, VertexId x) { return a.vertex < x; });
  if (it == nb.end() || it->vertex != v) return std::nullopt;
  return it->edge;
}

std::span<const TriangleRef> Graph::triangles(EdgeId e) const {
  check_edge(e);
  return {tri_.data() + tri_offsets_[e], tri_offsets_[e + 1] - tri_offsets_[e]};
}

std::vector<VertexId> Graph::common_neighbors(EdgeId e) const {
  auto [u, v] = endpoints(e);
  auto a = neighbors(u);
  auto b = neighbors(v);
  std::vector<VertexId> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].vertex < b[j].vertex) {
      ++i;
    } else if (b[j].vertex < a[i].vertex) {
      ++j;
    } else {
      out.push_back(a[i].vertex);
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<TriangleRef> Graph::neighbor_edges(EdgeId e) const {
  auto t = triangles(e);
  return {t.begin(), t.end()};
}

void Graph::set_labels(std::vector<VertexLabel> labels) {
  if (!labels.empty() && labels.size() != num_vertices())
    throw std::invalid_argument("label map size does not match vertex count");
  labels_ = std::move(labels);
}

namespace {

bool parse_label(std::string_view token, VertexLabel& out) {
  auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

}  // namespace

Graph parse_edge_list(std::istream& in, LoadOptions options) {
  std::unordered_map<VertexLabel, VertexId> ids;
  std::vector<VertexLabel> labels;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  auto intern = [&](VertexLabel label) {
    auto [it, inserted] = ids.try_emplace(label, VertexId(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest(line);
    auto skip_ws = [&] {
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
    };
    auto next_token = [&] {
      skip_ws();
      std::size_t len = 0;
      while (len < rest.size() && !std::isspace(static_cast<unsigned char>(rest[len]))) ++len;
      std::string_view tok = rest.substr(0, len);
      rest.remove_prefix(len);
      return tok;
    };
    skip_ws();
    if (rest.empty() || rest.front() == '#' || rest.front() == '%') continue;
    std::string_view a = next_token();
    std::string_view b = next_token();
    if (b.empty()) throw ParseError(lineno, "expected two vertex labels");
    VertexLabel la, lb;
    if (!parse_label(a, la)) throw ParseError(lineno, "non-integer token '" + std::string(a) + "'");
    if (!parse_label(b, lb)) throw ParseError(lineno, "non-integer token '" + std::string(b) + "'");
    // Anything after the pair (timestamps, weights) is ignored.
    if (la == lb && options.self_loops == SelfLoopPolicy::kDrop) continue;
    VertexId u = intern(la);
    VertexId v = intern(lb);
    pairs.emplace_back(u, v);
  }
  if (in.bad()) throw std::runtime_error("read error");

  Graph g = Graph::from_edges(labels.size(), pairs, options);
  g.set_labels(std::move(labels));
  return g;
}

Graph load_edge_list(const std::filesystem::path& path, LoadOptions options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_edge_list(in, options);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    out << g.label(u) << ' ' << g.label(v) << '\n';
  }
}

void write_label_map_csv(const Graph& g, std::ostream& out) {
  out << "vertex_id,label\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) out << v << ',' << g.label(v) << '\n';
}

}  // namespace atr
