#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "olr/error.hpp"

namespace olr {

using Vertex = std::uint32_t;
using Color = std::uint8_t;

/// Colour of the single edge awaiting Painter.
inline constexpr Color kUncolored = 0;
/// Returned by colour lookups for a pair that is not an edge.
inline constexpr Color kNoEdge = 0xFF;
inline constexpr int kMaxColors = 8;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Color color = kUncolored;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Unordered vertex pair; `a < b` after normalization.
struct VertexPair {
  Vertex a = 0;
  Vertex b = 0;

  static VertexPair of(Vertex u, Vertex v) { return u < v ? VertexPair{u, v} : VertexPair{v, u}; }
  friend bool operator==(const VertexPair&, const VertexPair&) = default;
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// The board of one game: a simple graph whose edges carry colours 1..q, with
/// at most one uncoloured edge (the one Painter must answer). Edges are kept
/// in insertion order, which doubles as the move transcript.
///
/// The free functions add_edge / color_pending return new values; the
/// draw / paint members mutate in place for owners that do not need the old
/// state (the engine).
class ColoredGraphState {
 public:
  struct Neighbor {
    Vertex vertex;
    std::uint32_t edge_index;
  };

  explicit ColoredGraphState(int q = 2, Vertex vertex_count = 0) : q_(q) {
    if (q < 2 || q > kMaxColors) {
      throw Error(ErrorCode::kInvalidArgument, "colour count must be in 2.." + std::to_string(kMaxColors));
    }
    adjacency_.resize(vertex_count);
  }

  int q() const noexcept { return q_; }
  Vertex vertex_count() const noexcept { return static_cast<Vertex>(adjacency_.size()); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t colored_edge_count() const noexcept { return edges_.size() - (pending_ ? 1 : 0); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool has_pending() const noexcept { return pending_; }

  std::optional<Edge> pending() const {
    if (!pending_) return std::nullopt;
    return edges_.back();
  }

  /// kNoEdge when {u,v} is not an edge, kUncolored when it is the pending edge.
  Color color(Vertex u, Vertex v) const {
    if (u == v) return kNoEdge;
    auto it = index_.find(key(u, v));
    return it == index_.end() ? kNoEdge : edges_[it->second].color;
  }

  bool has_edge(Vertex u, Vertex v) const { return color(u, v) != kNoEdge; }

  std::span<const Neighbor> neighbors(Vertex v) const { return adjacency_.at(v); }

  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

  template <typename F>
  void for_each_neighbor(Vertex v, F&& f) const {
    for (const auto& nb : adjacency_[v]) f(nb.vertex, edges_[nb.edge_index].color);
  }

  Vertex add_vertex() {
    adjacency_.emplace_back();
    return vertex_count() - 1;
  }

  void add_vertices(Vertex count) { adjacency_.resize(adjacency_.size() + count); }

  /// Draws {u,v} as the pending edge.
  void draw(Vertex u, Vertex v) {
    if (u == v) throw Error(ErrorCode::kSelfLoop, "vertex " + std::to_string(u));
    if (u >= vertex_count() || v >= vertex_count()) {
      throw Error(ErrorCode::kVertexOutOfRange,
                  "pair (" + std::to_string(u) + "," + std::to_string(v) + ") with " +
                      std::to_string(vertex_count()) + " vertices");
    }
    if (pending_) throw Error(ErrorCode::kPendingEdgeExists, "colour the pending edge first");
    if (index_.contains(key(u, v))) {
      throw Error(ErrorCode::kDuplicateEdge, "(" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    const auto idx = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back(Edge{u, v, kUncolored});
    index_.emplace(key(u, v), idx);
    adjacency_[u].push_back({v, idx});
    adjacency_[v].push_back({u, idx});
    pending_ = true;
  }

  /// Colours the pending edge.
  void paint(Color c) {
    if (!pending_) throw Error(ErrorCode::kNoPendingEdge, "nothing to colour");
    if (c < 1 || c > q_) {
      throw Error(ErrorCode::kColorOutOfRange, std::to_string(int(c)) + " not in 1.." + std::to_string(q_));
    }
    edges_.back().color = c;
    pending_ = false;
  }

  /// Clears the colour of the last edge, making it pending again.
  void unpaint() {
    if (pending_ || edges_.empty()) throw Error(ErrorCode::kPendingEdge, "no coloured last edge");
    edges_.back().color = kUncolored;
    pending_ = true;
  }

  /// Removes the pending edge, then drops vertices beyond `keep_vertices`
  /// (they must be isolated).
  void undraw(Vertex keep_vertices) {
    if (!pending_) throw Error(ErrorCode::kNoPendingEdge, "nothing to undraw");
    const Edge e = edges_.back();
    edges_.pop_back();
    index_.erase(key(e.u, e.v));
    adjacency_[e.u].pop_back();
    adjacency_[e.v].pop_back();
    pending_ = false;
    while (adjacency_.size() > keep_vertices && adjacency_.back().empty()) adjacency_.pop_back();
  }

  friend bool operator==(const ColoredGraphState& a, const ColoredGraphState& b) {
    return a.q_ == b.q_ && a.adjacency_.size() == b.adjacency_.size() && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (std::uint64_t{u} << 32) | v;
  }

  int q_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  bool pending_ = false;
};

inline ColoredGraphState add_vertex(ColoredGraphState state) {
  state.add_vertex();
  return state;
}

inline ColoredGraphState add_edge(ColoredGraphState state, Vertex u, Vertex v) {
  state.draw(u, v);
  return state;
}

inline ColoredGraphState color_pending(ColoredGraphState state, Color c) {
  state.paint(c);
  return state;
}

/// {"n": int, "q": int, "edges": [[u, v, color|0], ...]} in insertion order.
inline nlohmann::json to_json(const ColoredGraphState& state) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : state.edges()) edges.push_back({e.u, e.v, int(e.color)});
  return {{"n", state.vertex_count()}, {"q", state.q()}, {"edges", std::move(edges)}};
}

inline ColoredGraphState state_from_json(const nlohmann::json& j) {
  try {
    ColoredGraphState state(j.at("q").get<int>(), j.at("n").get<Vertex>());
    for (const auto& e : j.at("edges")) {
      state.draw(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
      const int c = e.at(2).get<int>();
      if (c != 0) state.paint(static_cast<Color>(c));
    }
    return state;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParse, ex.what());
  }
}

}  // namespace olr
