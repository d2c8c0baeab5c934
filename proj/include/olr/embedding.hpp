#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "olr/graph.hpp"
#include "olr/target.hpp"

namespace olr {

/// Host graphs searched for copies provide:
///   vertex_count(), color(u, v) -> Color (kNoEdge when absent),
///   for_each_neighbor(v, f) calling f(w, color).
template <typename H>
concept HostGraph = requires(const H& h, Vertex v) {
  { h.vertex_count() } -> std::convertible_to<std::size_t>;
  { h.color(v, v) } -> std::convertible_to<Color>;
  h.for_each_neighbor(v, [](Vertex, Color) {});
};

/// Marks a target vertex that is mapped to a vertex not yet on the board.
inline constexpr Vertex kFresh = 0xFFFFFFFFu;

/// A target graph prepared for anchored backtracking: for each target edge
/// and orientation, a vertex order in which every vertex after the first two
/// has an earlier neighbour.
class Pattern {
 public:
  struct Step {
    int vertex;
    int parent;                 // earlier-ordered neighbour used for candidates, -1 if none
    std::vector<int> checks;    // other earlier-ordered neighbours
  };

  Pattern(int vertex_count, std::vector<std::pair<int, int>> edges, TargetKind kind = TargetKind::kArbitrary, int size = 0)
      : k_(vertex_count), edges_(std::move(edges)), kind_(kind), size_(size), adj_(std::size_t(k_) * k_, 0) {
    for (auto [a, b] : edges_) adj_[a * k_ + b] = adj_[b * k_ + a] = 1;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      orders_.push_back(build_order(edges_[e].first, edges_[e].second));
      orders_.push_back(build_order(edges_[e].second, edges_[e].first));
    }
  }

  explicit Pattern(const TargetSpec& target)
      : Pattern(target.vertex_count(), target.edges(), target.kind(), target.size()) {}

  int vertex_count() const noexcept { return k_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  TargetKind kind() const noexcept { return kind_; }
  int size() const noexcept { return size_; }
  bool adjacent(int a, int b) const { return adj_[a * k_ + b] != 0; }
  int degree(int a) const {
    int d = 0;
    for (int b = 0; b < k_; ++b) d += adj_[a * k_ + b];
    return d;
  }
  /// Order anchored so that target edge `e` is laid first with orientation `flip`.
  const std::vector<Step>& order(std::size_t e, bool flip) const { return orders_[2 * e + (flip ? 1 : 0)]; }

 private:
  std::vector<Step> build_order(int x, int y) const {
    std::vector<Step> out;
    std::vector<int> pos(k_, -1);
    auto push = [&](int v, int parent) {
      Step s{v, parent, {}};
      for (const auto& prev : out)
        if (prev.vertex != parent && adjacent(prev.vertex, v)) s.checks.push_back(prev.vertex);
      pos[v] = int(out.size());
      out.push_back(std::move(s));
    };
    push(x, -1);
    push(y, x);
    // BFS over the component of the anchor; unreachable vertices are appended
    // without a parent (they are only searched when a caller allows it).
    for (std::size_t head = 0; head < out.size(); ++head) {
      const int v = out[head].vertex;
      for (int w = 0; w < k_; ++w)
        if (pos[w] < 0 && adjacent(v, w)) push(w, v);
    }
    for (int w = 0; w < k_; ++w)
      if (pos[w] < 0) push(w, -1);
    return out;
  }

  int k_;
  std::vector<std::pair<int, int>> edges_;
  TargetKind kind_;
  int size_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<Step>> orders_;
};

struct MonoCopy {
  Color color = 0;
  /// embedding[i] is the board vertex playing target vertex i.
  std::vector<Vertex> embedding;
};

namespace detail {

template <HostGraph H>
std::vector<Vertex> color_neighbors(const H& host, Vertex v, Color c) {
  std::vector<Vertex> out;
  host.for_each_neighbor(v, [&](Vertex w, Color col) {
    if (col == c) out.push_back(w);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Generic anchored backtracking. Calls `visit(phi)` for each embedding with
/// target edge `e` (oriented by `flip`) on host pair (u, v); `visit` returns
/// true to stop. Returns true if stopped. With `steps`, each node and each
/// candidate examined costs one step and the search stops (returning true)
/// at zero.
template <HostGraph H, typename Visit>
bool anchored_search(const H& host, const Pattern& pattern, std::size_t e, bool flip, Vertex u, Vertex v, Color c,
                     Visit&& visit, std::size_t* steps = nullptr) {
  const auto& order = pattern.order(e, flip);
  const int k = pattern.vertex_count();
  std::vector<Vertex> phi(k, kFresh);
  phi[order[0].vertex] = u;
  phi[order[1].vertex] = v;
  for (int w : order[1].checks)
    if (host.color(phi[w], v) != c) return false;

  auto used = [&](Vertex w, std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i)
      if (phi[order[i].vertex] == w) return true;
    return false;
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (steps) {
      if (*steps == 0) return true;
      --*steps;
    }
    if (i == order.size()) return visit(phi);
    const auto& step = order[i];
    if (step.parent < 0) {
      // an isolated pattern vertex is played by a fresh vertex; any other
      // disconnected remainder is not searched here
      if (pattern.degree(step.vertex) != 0) return false;
      return rec(i + 1);
    }
    bool stop = false;
    host.for_each_neighbor(phi[step.parent], [&](Vertex w, Color col) {
      if (stop || col != c || used(w, i)) return;
      if (steps) {
        if (*steps == 0) {
          stop = true;
          return;
        }
        --*steps;
      }
      if constexpr (requires { host.degree(w); }) {
        if (int(host.degree(w)) < pattern.degree(step.vertex)) return;
      }
      for (int x : step.checks)
        if (host.color(phi[x], w) != c) return;
      phi[step.vertex] = w;
      if (rec(i + 1)) stop = true;
      phi[step.vertex] = kFresh;
    });
    return stop;
  };
  return rec(2);
}

template <HostGraph H>
bool clique_extend(const H& host, Color c, std::vector<Vertex>& chosen, const std::vector<Vertex>& cand, int need) {
  if (need == 0) return true;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (int(cand.size() - i) < need) return false;
    const Vertex w = cand[i];
    std::vector<Vertex> next;
    for (std::size_t j = i + 1; j < cand.size(); ++j)
      if (host.color(w, cand[j]) == c) next.push_back(cand[j]);
    chosen.push_back(w);
    if (clique_extend(host, c, chosen, next, need - 1)) return true;
    chosen.pop_back();
  }
  return false;
}

template <HostGraph H>
std::optional<MonoCopy> clique_through(const H& host, int t, Vertex u, Vertex v, Color c) {
  if (t == 2) return MonoCopy{c, {u, v}};
  const auto nu = color_neighbors(host, u, c);
  std::vector<Vertex> cand;
  for (Vertex w : nu)
    if (w != v && host.color(v, w) == c) cand.push_back(w);
  std::vector<Vertex> chosen{u, v};
  if (clique_extend(host, c, chosen, cand, t - 2)) return MonoCopy{c, chosen};
  return std::nullopt;
}

template <HostGraph H>
bool biclique_extend(const H& host, Color c, int t, std::vector<Vertex>& side_a, const std::vector<Vertex>& a_cand,
                     std::size_t from, const std::vector<Vertex>& common) {
  if (int(side_a.size()) == t) return int(common.size()) >= t;
  for (std::size_t i = from; i < a_cand.size(); ++i) {
    if (int(a_cand.size() - i) < t - int(side_a.size())) return false;
    const Vertex a = a_cand[i];
    const auto na = color_neighbors(host, a, c);
    std::vector<Vertex> next;
    std::set_intersection(common.begin(), common.end(), na.begin(), na.end(), std::back_inserter(next));
    if (int(next.size()) < t) continue;
    side_a.push_back(a);
    if (biclique_extend(host, c, t, side_a, a_cand, i + 1, next)) return true;
    side_a.pop_back();
  }
  return false;
}

template <HostGraph H>
std::optional<MonoCopy> biclique_through(const H& host, int t, Vertex u, Vertex v, Color c) {
  // u on side A, v on side B (K_{t,t} is side-symmetric).
  auto a_cand = color_neighbors(host, v, c);
  std::erase(a_cand, u);
  auto common = color_neighbors(host, u, c);
  std::vector<Vertex> side_a{u};
  if (!biclique_extend(host, c, t, side_a, a_cand, 0, common)) return std::nullopt;
  std::vector<Vertex> b_side = common;
  for (Vertex a : side_a) {
    auto na = color_neighbors(host, a, c);
    std::vector<Vertex> next;
    std::set_intersection(b_side.begin(), b_side.end(), na.begin(), na.end(), std::back_inserter(next));
    b_side = std::move(next);
  }
  // v is adjacent to every vertex of side A, so it survives the intersection
  std::erase(b_side, v);
  MonoCopy copy{c, side_a};
  copy.embedding.push_back(v);
  for (int i = 0; i < t - 1; ++i) copy.embedding.push_back(b_side[i]);
  return copy;
}

}  // namespace detail

/// Searches for a copy of `pattern` in colour `c` that uses the host edge
/// {u, v}. The caller guarantees {u, v} is coloured `c`.
template <HostGraph H>
std::optional<MonoCopy> find_copy_through(const H& host, const Pattern& pattern, Vertex u, Vertex v, Color c) {
  switch (pattern.kind()) {
    case TargetKind::kClique: return detail::clique_through(host, pattern.size(), u, v, c);
    case TargetKind::kBiclique: return detail::biclique_through(host, pattern.size(), u, v, c);
    default: break;
  }
  std::optional<MonoCopy> found;
  for (std::size_t e = 0; e < pattern.edges().size() && !found; ++e) {
    for (bool flip : {false, true}) {
      if (detail::anchored_search(host, pattern, e, flip, u, v, c, [&](const std::vector<Vertex>& phi) {
            found = MonoCopy{c, phi};
            return true;
          })) {
        break;
      }
    }
  }
  return found;
}

/// Like find_copy_through, but gives up after `max_steps` extension steps:
/// true / false when decided, nullopt when the cap was hit.
template <HostGraph H>
std::optional<bool> copy_through_capped(const H& host, const Pattern& pattern, Vertex u, Vertex v, Color c,
                                        std::size_t max_steps) {
  std::size_t steps = max_steps;
  bool found = false;
  for (std::size_t e = 0; e < pattern.edges().size(); ++e) {
    for (bool flip : {false, true}) {
      detail::anchored_search(
          host, pattern, e, flip, u, v, c,
          [&](const std::vector<Vertex>&) {
            found = true;
            return true;
          },
          &steps);
      if (found) return true;
      if (steps == 0) return std::nullopt;
    }
  }
  return false;
}

/// Exhaustive monochromatic-copy search over every colour. Pending
/// (uncoloured) edges are ignored.
template <HostGraph H>
std::optional<MonoCopy> find_mono_copy(const H& host, const Pattern& pattern, int q) {
  const auto n = static_cast<Vertex>(host.vertex_count());
  for (Color c = 1; c <= q; ++c) {
    for (Vertex u = 0; u < n; ++u) {
      std::optional<MonoCopy> found;
      host.for_each_neighbor(u, [&](Vertex w, Color col) {
        if (found || col != c || w < u) return;
        if (pattern.kind() == TargetKind::kClique || pattern.kind() == TargetKind::kBiclique) {
          found = find_copy_through(host, pattern, u, w, c);
        } else {
          // every copy maps target edge 0 onto some edge, in one of two orientations
          for (bool flip : {false, true}) {
            if (detail::anchored_search(host, pattern, 0, flip, u, w, c, [&](const std::vector<Vertex>& phi) {
                  found = MonoCopy{c, phi};
                  return true;
                })) {
              break;
            }
          }
        }
      });
      if (found) return found;
    }
  }
  return std::nullopt;
}

inline std::optional<MonoCopy> contains_mono_copy(const ColoredGraphState& state, const TargetSpec& target) {
  return find_mono_copy(state, Pattern(target), state.q());
}

/// Largest k such that the first k target edges (a connected prefix) embed in
/// colour `c` through host edge {u, v}. The edge must already carry colour c.
template <HostGraph H>
int largest_prefix_through(const H& host, const std::vector<Pattern>& prefixes, Vertex u, Vertex v, Color c) {
  for (int k = int(prefixes.size()); k >= 1; --k)
    if (find_copy_through(host, prefixes[k - 1], u, v, c)) return k;
  return 0;
}

/// Patterns for the edge prefixes of `target`, prefix k at index k-1.
inline std::vector<Pattern> prefix_patterns(const TargetSpec& target) {
  const auto edges = target.edges();
  std::vector<Pattern> out;
  for (std::size_t k = 1; k <= edges.size(); ++k) {
    std::vector<int> relabel(target.vertex_count(), -1);
    int next = 0;
    std::vector<std::pair<int, int>> sub;
    for (std::size_t i = 0; i < k; ++i) {
      auto [a, b] = edges[i];
      if (relabel[a] < 0) relabel[a] = next++;
      if (relabel[b] < 0) relabel[b] = next++;
      sub.emplace_back(relabel[a], relabel[b]);
    }
    out.emplace_back(next, std::move(sub));
  }
  return out;
}

/// Patterns "target minus one edge", used to find single-edge threats.
struct ThreatPattern {
  Pattern pattern;   // target with `missing` removed
  int missing_a;     // endpoints of the removed edge
  int missing_b;
};

inline std::vector<ThreatPattern> threat_patterns(const TargetSpec& target) {
  const auto edges = target.edges();
  const int k = target.vertex_count();
  std::vector<ThreatPattern> out;
  for (std::size_t f = 0; f < edges.size(); ++f) {
    std::vector<std::pair<int, int>> rest;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (i != f) rest.push_back(edges[i]);
    if (rest.empty()) continue;
    out.push_back({Pattern(k, std::move(rest)), edges[f].first, edges[f].second});
  }
  return out;
}

/// Builder moves that would complete a colour-c copy through the coloured
/// host edge {u, v} if drawn and painted c. A missing endpoint whose only
/// target edge is the missing one is played by a fresh vertex (kFresh).
/// Copies whose remainder is disconnected beyond a single pendant vertex are
/// not explored. At most `cap` embeddings are visited and `max_steps`
/// search steps spent, so large boards give a partial (lower) count.
template <HostGraph H>
std::vector<VertexPair> threats_through(const H& host, const std::vector<ThreatPattern>& threats, Vertex u, Vertex v,
                                        Color c, std::size_t cap = 20000, std::size_t max_steps = 50000) {
  std::vector<VertexPair> out;
  std::size_t visited = 0;
  std::size_t steps = max_steps;
  for (const auto& tp : threats) {
    const auto& p = tp.pattern;
    const bool a_free = p.degree(tp.missing_a) == 0;
    const bool b_free = p.degree(tp.missing_b) == 0;
    if (a_free && b_free) continue;
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      for (bool flip : {false, true}) {
        const auto& order = p.order(e, flip);
        // remainder must be reachable from the anchor except for one free pendant vertex
        int unreachable = 0;
        for (const auto& st : order)
          if (st.parent < 0 && &st != &order[0]) ++unreachable;
        if (unreachable > (a_free || b_free ? 1 : 0)) continue;
        detail::anchored_search(host, p, e, flip, u, v, c, [&](const std::vector<Vertex>& phi) {
          ++visited;
          Vertex x = a_free ? kFresh : phi[tp.missing_a];
          Vertex y = b_free ? kFresh : phi[tp.missing_b];
          if (x == kFresh) std::swap(x, y);
          if (y == kFresh || host.color(x, y) == kNoEdge) {
            out.push_back(y == kFresh ? VertexPair{x, kFresh} : VertexPair::of(x, y));
          }
          return visited >= cap;
        }, &steps);
        if (visited >= cap || steps == 0) break;
      }
      if (visited >= cap || steps == 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace olr
