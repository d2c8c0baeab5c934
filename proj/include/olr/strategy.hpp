#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "olr/bignum.hpp"
#include "olr/graph.hpp"
#include "olr/target.hpp"

namespace olr {

inline std::string color_name(Color c) {
  static const char* kNames[] = {"uncoloured", "red", "blue", "green", "yellow", "purple", "orange", "cyan", "magenta"};
  return c <= kMaxColors ? kNames[c] : "colour " + std::to_string(int(c));
}

/// A Builder strategy is a state machine owned by one match. next_edge sees
/// the fully coloured board and proposes the next pair; endpoints equal to
/// vertex_count() or vertex_count() + 1 introduce fresh vertices.
class BuilderStrategy {
 public:
  virtual ~BuilderStrategy() = default;

  virtual std::unique_ptr<BuilderStrategy> clone() const = 0;
  virtual std::string id() const = 0;
  /// nullopt: the strategy has nothing left to draw.
  virtual std::optional<VertexPair> next_edge(const ColoredGraphState& state) = 0;
  /// Edge count the strategy promises to win within, if it makes a promise.
  virtual std::optional<BigInt> declared_budget() const { return std::nullopt; }
  /// One-line tag describing the last proposed move.
  virtual std::string rationale() const { return {}; }
  /// Key such that two positions with equal keys have isomorphic futures
  /// under this strategy; enables merged exhaustive painter enumeration.
  virtual std::optional<std::string> equivalence_key(const ColoredGraphState&) const { return std::nullopt; }
  /// Inequalities the strategy depends on that fail at its parameters.
  virtual std::vector<std::string> precondition_failures() const { return {}; }
  /// The target the strategy is built to force.
  virtual std::optional<TargetSpec> natural_target() const { return std::nullopt; }
};

/// A Painter strategy answers the pending edge with a colour in 1..q.
class PainterStrategy {
 public:
  virtual ~PainterStrategy() = default;

  virtual std::unique_ptr<PainterStrategy> clone() const = 0;
  virtual std::string id() const = 0;
  virtual Color choose_color(const ColoredGraphState& state) = 0;
};

}  // namespace olr
