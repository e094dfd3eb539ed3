#include "atr/follower.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace atr {

std::string trace_json_line(const TraceEvent& ev) {
  static const char* names[] = {"seed", "pop", "survive", "eliminate", "enqueue"};
  nlohmann::json j = {{"event", names[static_cast<int>(ev.kind)]},
                      {"level", ev.level},
                      {"edge", ev.edge},
                      {"s_plus", ev.s_plus}};
  return j.dump();
}

std::vector<std::vector<EdgeId>> seed_candidates(const Graph& g, const TrussLabeling& labeling,
                                                 EdgeId x) {
  g.check_edge(x);
  std::vector<std::vector<EdgeId>> seeds(labeling.k_max + 1);
  const Trussness tx = labeling.trussness[x];
  const std::uint32_t lx = labeling.layer[x];
  for (const TriangleRef& t : g.triangles(x)) {
    for (EdgeId p : {t.first, t.second}) {
      if (labeling.is_anchor(p)) continue;
      Trussness tp = labeling.trussness[p];
      if (tp > tx || (tp == tx && labeling.layer[p] > lx)) seeds[tp].push_back(p);
    }
  }
  return seeds;
}

FollowerSearch::FollowerSearch(const Graph& g, const TrussLabeling& labeling)
    : g_(g),
      lab_(labeling),
      stamp_(g.num_edges(), 0),
      state_(g.num_edges(), kUnchecked),
      seen_(g.num_edges(), 0),
      splus_(g.num_edges(), 0),
      parent_(g.num_edges(), kNoEdge) {
  if (labeling.size() != g.num_edges()) throw std::invalid_argument("labeling does not match graph");
}

void FollowerSearch::begin_level(EdgeId x, Trussness level) {
  x_ = x;
  level_ = level;
  if (++gen_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    gen_ = 1;
  }
}

void FollowerSearch::touch(EdgeId e) {
  if (stamp_[e] == gen_) return;
  stamp_[e] = gen_;
  state_[e] = kUnchecked;
  seen_[e] = 0;
  splus_[e] = 0;
  parent_[e] = kNoEdge;
}

bool FollowerSearch::level_edge(EdgeId e) const {
  return e != x_ && !lab_.is_anchor(e) && lab_.trussness[e] == level_;
}

std::uint8_t FollowerSearch::raw(EdgeId e) const {
  if (e == x_ || lab_.is_anchor(e)) return kSurvived;
  if (lab_.trussness[e] < level_) return kEliminated;
  if (!fresh(e)) return kUnchecked;
  return state_[e];
}

EdgeStatus FollowerSearch::status(EdgeId e) const {
  switch (raw(e)) {
    case kUnchecked:
      return EdgeStatus::kUnchecked;
    case kEliminated:
      return EdgeStatus::kEliminated;
    default:
      return EdgeStatus::kSurvived;
  }
}

std::uint32_t FollowerSearch::s_plus(EdgeId e) const { return fresh(e) ? splus_[e] : 0; }

EdgeId FollowerSearch::route_parent(EdgeId e) const { return fresh(e) ? parent_[e] : kNoEdge; }

std::uint32_t FollowerSearch::effective_support(EdgeId e) const {
  auto ok = [&](EdgeId p) {
    std::uint8_t r = raw(p);
    if (r == kEliminated) return false;
    if (r == kSurvived || r == kDoomed) return true;
    return lab_.precedes(e, p);
  };
  std::uint32_t count = 0;
  for (const TriangleRef& t : g_.triangles(e))
    if (ok(t.first) && ok(t.second)) ++count;
  return count;
}

void FollowerSearch::mark_survived(EdgeId e, std::uint32_t s_plus) {
  touch(e);
  state_[e] = kSurvived;
  splus_[e] = s_plus;
}

// Eliminations are processed one at a time. An edge that falls below its
// threshold is only marked doomed until its own turn, so a triangle that
// loses two edges in one cascade is still revoked exactly once: by whichever
// of them is processed first, while the other still looks alive.
void FollowerSearch::retract(EdgeId e) {
  touch(e);
  if (state_[e] == kEliminated) return;
  pending_.clear();
  pending_.emplace_back(e, state_[e]);
  state_[e] = kDoomed;

  while (!pending_.empty()) {
    auto [f, prev] = pending_.back();
    pending_.pop_back();
    state_[f] = kEliminated;
    if (trace_ && *trace_) (*trace_)({TraceEvent::Kind::kEliminate, level_, f, splus_[f]});

    auto revoke = [&](EdgeId a, EdgeId b) {
      if (!level_edge(a) || !fresh(a) || state_[a] != kSurvived) return;
      std::uint8_t rb = raw(b);
      if (rb == kEliminated) return;  // the triangle already died with b
      bool counted_f = prev == kSurvived || lab_.precedes(a, f);
      bool counted_b = rb == kSurvived || rb == kDoomed || lab_.precedes(a, b);
      if (!counted_f || !counted_b) return;
      if (splus_[a] == 0) throw std::logic_error("effective support underflow");
      if (--splus_[a] + 1 < level_) {
        state_[a] = kDoomed;
        pending_.emplace_back(a, kSurvived);
      }
    };
    for (const TriangleRef& t : g_.triangles(f)) {
      revoke(t.first, t.second);
      revoke(t.second, t.first);
    }
  }
}

FollowerSet FollowerSearch::run(EdgeId x, const LevelSelection& levels, const TraceSink& trace) {
  g_.check_edge(x);
  if (lab_.is_anchor(x)) throw std::domain_error("edge " + std::to_string(x) + " is already an anchor");
  trace_ = &trace;
  FollowerSet out;
  out.anchor = x;

  using Entry = std::pair<std::uint32_t, EdgeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<EdgeId> survivors;
  auto emit = [&](TraceEvent::Kind kind, EdgeId e, std::uint32_t s) {
    if (trace) trace({kind, level_, e, s});
  };

  auto seeds = seed_candidates(g_, lab_, x);
  for (Trussness level = 3; level < seeds.size(); ++level) {
    if (seeds[level].empty() || !levels.contains(level)) continue;
    begin_level(x, level);
    survivors.clear();
    for (EdgeId s : seeds[level]) {
      touch(s);
      seen_[s] = 1;
      heap.emplace(lab_.layer[s], s);
      ++out.route_size;
      emit(TraceEvent::Kind::kSeed, s, 0);
    }
    while (!heap.empty()) {
      EdgeId e = heap.top().second;
      heap.pop();
      std::uint32_t sp = effective_support(e);
      emit(TraceEvent::Kind::kPop, e, sp);
      if (sp + 1 < level) {
        retract(e);
        continue;
      }
      mark_survived(e, sp);
      survivors.push_back(e);
      emit(TraceEvent::Kind::kSurvive, e, sp);
      for (const TriangleRef& t : g_.triangles(e)) {
        for (EdgeId p : {t.first, t.second}) {
          if (!level_edge(p) || (fresh(p) && seen_[p]) || !lab_.precedes(e, p)) continue;
          touch(p);
          seen_[p] = 1;
          parent_[p] = e;
          heap.emplace(lab_.layer[p], p);
          ++out.route_size;
          emit(TraceEvent::Kind::kEnqueue, p, 0);
        }
      }
    }
    for (EdgeId s : survivors)
      if (raw(s) == kSurvived) out.followers.push_back(s);
  }
  trace_ = nullptr;
  std::sort(out.followers.begin(), out.followers.end());
  return out;
}

FollowerSet get_followers(const Graph& g, const TrussLabeling& labeling, EdgeId x,
                          const LevelSelection& levels) {
  FollowerSearch search(g, labeling);
  return search.run(x, levels);
}

std::size_t upward_route_size(const Graph& g, const TrussLabeling& labeling, EdgeId x) {
  return get_followers(g, labeling, x).route_size;
}

}  // namespace atr
