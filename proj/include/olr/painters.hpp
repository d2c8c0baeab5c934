#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "olr/embedding.hpp"
#include "olr/error.hpp"
#include "olr/graph.hpp"
#include "olr/solver.hpp"
#include "olr/strategy.hpp"
#include "olr/target.hpp"

namespace olr {

namespace detail {

inline const Edge& pending_edge(const ColoredGraphState& state) {
  if (!state.has_pending()) throw Error(ErrorCode::kNoPendingEdge, "painter called without a pending edge");
  return state.edges().back();
}

}  // namespace detail

class RandomPainter : public PainterStrategy {
 public:
  explicit RandomPainter(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  std::unique_ptr<PainterStrategy> clone() const override { return std::make_unique<RandomPainter>(*this); }
  std::string id() const override { return "random:seed=" + std::to_string(seed_); }
  Color choose_color(const ColoredGraphState& state) override {
    detail::pending_edge(state);
    std::uniform_int_distribution<int> pick(1, state.q());
    return Color(pick(rng_));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

class ConstantPainter : public PainterStrategy {
 public:
  explicit ConstantPainter(Color c) : color_(c) {}
  std::unique_ptr<PainterStrategy> clone() const override { return std::make_unique<ConstantPainter>(*this); }
  std::string id() const override { return "constant:color=" + std::to_string(int(color_)); }
  Color choose_color(const ColoredGraphState& state) override {
    if (color_ < 1 || color_ > state.q()) throw Error(ErrorCode::kColorOutOfRange, "constant colour out of range");
    return color_;
  }

 private:
  Color color_;
};

/// Picks the colour under which the pending edge extends the shortest
/// monochromatic prefix of the target's edge order.
class GreedyPainter : public PainterStrategy {
 public:
  explicit GreedyPainter(const TargetSpec& target) : prefixes_(std::make_shared<std::vector<Pattern>>(prefix_patterns(target))) {}
  std::unique_ptr<PainterStrategy> clone() const override { return std::make_unique<GreedyPainter>(*this); }
  std::string id() const override { return "greedy"; }

  static constexpr std::size_t kProbeSteps = 4000;

  /// Longest prefix embeddable through {u, v} in colour c, probing upward.
  /// A probe that exceeds its search effort counts as embedded and ends the scan.
  int prefix_length(const ColoredGraphState& state, Vertex u, Vertex v, Color c) const {
    int k = 0;
    while (k < int(prefixes_->size())) {
      const auto hit = copy_through_capped(state, (*prefixes_)[std::size_t(k)], u, v, c, kProbeSteps);
      if (!hit) return k + 1;
      if (!*hit) break;
      ++k;
    }
    return k;
  }

  Color choose_color(const ColoredGraphState& state) override {
    const Edge e = detail::pending_edge(state);
    Color best = 1;
    int best_len = std::numeric_limits<int>::max();
    for (Color c = 1; c <= state.q(); ++c) {
      auto child = state;
      child.paint(c);
      const int len = prefix_length(child, e.u, e.v, c);
      if (len < best_len) {
        best_len = len;
        best = c;
      }
    }
    return best;
  }

 private:
  std::shared_ptr<const std::vector<Pattern>> prefixes_;
};

/// Picks the colour that leaves Builder the fewest one-edge completions
/// through the new edge, looking `depth` plies of threat replies ahead.
class MinThreatPainter : public PainterStrategy {
 public:
  static constexpr long long kLost = std::numeric_limits<long long>::max() / 4;
  static constexpr std::size_t kReplyCap = 8;
  static constexpr std::size_t kSearchSteps = 4000;  // per threat search

  MinThreatPainter(const TargetSpec& target, int depth)
      : pattern_(std::make_shared<Pattern>(target)),
        threats_(std::make_shared<std::vector<ThreatPattern>>(threat_patterns(target))),
        depth_(std::max(1, depth)) {}
  std::unique_ptr<PainterStrategy> clone() const override { return std::make_unique<MinThreatPainter>(*this); }
  std::string id() const override { return "minthreat:depth=" + std::to_string(depth_); }

  Color choose_color(const ColoredGraphState& state) override { return evaluate(state, depth_).second; }

  /// (score, colour) of the best answer to the pending edge.
  std::pair<long long, Color> evaluate(const ColoredGraphState& state, int depth) const {
    const Edge e = detail::pending_edge(state);
    std::pair<long long, Color> best{kLost + 1, 1};
    for (Color c = 1; c <= state.q(); ++c) {
      auto child = state;
      child.paint(c);
      const long long s = score(child, e.u, e.v, c, depth);
      if (s < best.first) best = {s, c};
    }
    return best;
  }

 private:
  long long score(const ColoredGraphState& child, Vertex u, Vertex v, Color c, int depth) const {
    if (find_copy_through(child, *pattern_, u, v, c)) return kLost;
    auto moves = threats_through(child, *threats_, u, v, c, 20000, kSearchSteps);
    std::sort(moves.begin(), moves.end(), [](VertexPair a, VertexPair b) { return std::tie(a.a, a.b) < std::tie(b.a, b.b); });
    moves.erase(std::unique(moves.begin(), moves.end(), [](VertexPair a, VertexPair b) { return a.a == b.a && a.b == b.b; }),
                moves.end());
    long long total = (long long)moves.size();
    if (depth <= 1 || moves.empty()) return total;
    long long worst = 0;
    for (std::size_t i = 0; i < std::min(moves.size(), kReplyCap); ++i) {
      auto reply = child;
      Vertex a = moves[i].a, b = moves[i].b;
      if (a == kFresh) a = reply.add_vertex();
      if (b == kFresh) b = reply.add_vertex();
      if (a == b || reply.has_edge(a, b)) continue;
      reply.draw(a, b);
      worst = std::max(worst, evaluate(reply, depth - 1).first);
      if (worst >= kLost) break;
    }
    return std::min(kLost, total + worst);
  }

  std::shared_ptr<const Pattern> pattern_;
  std::shared_ptr<const std::vector<ThreatPattern>> threats_;
  int depth_;
};

/// Solver-backed Painter: maximises the edges Builder still needs.
class AdversarialPainter : public PainterStrategy {
 public:
  AdversarialPainter(std::shared_ptr<Solver> solver, int budget) : solver_(std::move(solver)), budget_(budget) {}
  std::unique_ptr<PainterStrategy> clone() const override { return std::make_unique<AdversarialPainter>(*this); }
  std::string id() const override { return "adversarial:budget=" + std::to_string(budget_); }
  Color choose_color(const ColoredGraphState& state) override {
    detail::pending_edge(state);
    return solver_->best_color(state, budget_ - int(state.edge_count()));
  }

 private:
  std::shared_ptr<Solver> solver_;
  int budget_;
};

}  // namespace olr
