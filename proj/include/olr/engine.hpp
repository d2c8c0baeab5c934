#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "olr/bignum.hpp"
#include "olr/embedding.hpp"
#include "olr/error.hpp"
#include "olr/graph.hpp"
#include "olr/registry.hpp"
#include "olr/strategy.hpp"
#include "olr/target.hpp"

namespace olr {

enum class ResultKind { kBuilderWin, kBudgetExhausted, kAborted };

inline std::string to_string(ResultKind k) {
  switch (k) {
    case ResultKind::kBuilderWin: return "builder_win";
    case ResultKind::kBudgetExhausted: return "budget_exhausted";
    case ResultKind::kAborted: return "aborted";
  }
  return "unknown";
}

struct MatchResult {
  ResultKind kind = ResultKind::kBudgetExhausted;
  std::size_t edges = 0;
  // builder_win
  Color color = 0;
  std::vector<Vertex> embedding;
  // budget_exhausted: true when Builder ran out of moves before the budget
  bool builder_stopped = false;
  // aborted
  std::string offender;  // "builder" | "painter"
  std::string code;
  std::string message;
  std::vector<std::string> failures;
};

struct MatchRecord {
  TargetSpec target = TargetSpec::clique(2);
  std::string builder_id;
  std::string painter_id;
  std::uint64_t seed = 0;
  long long budget = 0;
  std::optional<BigInt> declared_budget;
  std::vector<Edge> moves;
  MatchResult result;

  bool builder_won() const noexcept { return result.kind == ResultKind::kBuilderWin; }
  /// A win that used more edges than the strategy promised.
  bool budget_violation() const {
    return builder_won() && declared_budget && BigInt(result.edges) > *declared_budget;
  }
};

namespace detail {

inline MatchResult aborted(const char* side, const Error& e, std::vector<std::string> failures = {}) {
  MatchResult r;
  r.kind = ResultKind::kAborted;
  r.offender = side;
  r.code = std::string(to_string(e.code()));
  r.message = e.what();
  r.failures = std::move(failures);
  return r;
}

/// Allocates fresh endpoints and checks the pair is drawable.
inline void place_pair(ColoredGraphState& state, VertexPair mv) {
  const Vertex vc = state.vertex_count();
  const Vertex hi = std::max(mv.a, mv.b);
  if (hi > vc + 1) {
    throw Error(ErrorCode::kIllegalMove, "pair (" + std::to_string(mv.a) + "," + std::to_string(mv.b) +
                                             ") skips vertices; next fresh index is " + std::to_string(vc));
  }
  if (mv.a == mv.b) throw Error(ErrorCode::kIllegalMove, "self-loop at " + std::to_string(mv.a));
  if (hi >= vc) state.add_vertices(hi + 1 - vc);
  if (state.has_edge(mv.a, mv.b)) {
    throw Error(ErrorCode::kIllegalMove, "duplicate edge (" + std::to_string(mv.a) + "," + std::to_string(mv.b) + ")");
  }
  state.draw(mv.a, mv.b);
}

}  // namespace detail

/// Plays one match until a monochromatic copy appears, `budget` edges have
/// been coloured, or a side misbehaves. Strategies are used in place.
inline MatchRecord play_match(BuilderStrategy& builder, PainterStrategy& painter, const TargetSpec& target,
                              long long budget, std::uint64_t seed = 0) {
  if (budget < 1) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  MatchRecord rec;
  rec.target = target;
  rec.builder_id = builder.id();
  rec.painter_id = painter.id();
  rec.seed = seed;
  rec.budget = budget;
  rec.declared_budget = builder.declared_budget();
  const Pattern pattern(target);
  ColoredGraphState state(target.q());
  while ((long long)state.edge_count() < budget) {
    std::optional<VertexPair> mv;
    try {
      mv = builder.next_edge(state);
      if (!mv) {
        rec.result.kind = ResultKind::kBudgetExhausted;
        rec.result.builder_stopped = true;
        rec.result.edges = state.edge_count();
        return rec;
      }
      detail::place_pair(state, *mv);
    } catch (const Error& e) {
      rec.result = detail::aborted("builder", e,
                                   e.code() == ErrorCode::kPreconditionUnsatisfied ? builder.precondition_failures()
                                                                                    : std::vector<std::string>{});
      rec.result.edges = rec.moves.size();
      return rec;
    }
    const Edge drawn = state.edges().back();
    Color c = 0;
    try {
      c = painter.choose_color(state);
      if (c < 1 || c > target.q()) {
        throw Error(ErrorCode::kIllegalMove, "colour " + std::to_string(int(c)) + " not in 1.." + std::to_string(target.q()));
      }
    } catch (const Error& e) {
      rec.result = detail::aborted("painter", e);
      rec.result.edges = rec.moves.size();
      return rec;
    }
    state.paint(c);
    rec.moves.push_back(Edge{drawn.u, drawn.v, c});
    if (auto copy = find_copy_through(state, pattern, drawn.u, drawn.v, c)) {
      rec.result.kind = ResultKind::kBuilderWin;
      rec.result.edges = rec.moves.size();
      rec.result.color = c;
      rec.result.embedding = std::move(copy->embedding);
      return rec;
    }
  }
  rec.result.kind = ResultKind::kBudgetExhausted;
  rec.result.edges = rec.moves.size();
  return rec;
}

/// Resolves "auto" budgets from the strategy's own declaration.
inline long long resolve_budget(const BuilderStrategy& builder, std::optional<long long> requested) {
  if (requested) return *requested;
  auto declared = builder.declared_budget();
  if (!declared) throw Error(ErrorCode::kInvalidArgument, builder.id() + " declares no budget; pass one explicitly");
  if (*declared > BigInt(std::numeric_limits<long long>::max())) {
    throw Error(ErrorCode::kParameterInfeasible, builder.id() + " declares " + declared->str() + " edges");
  }
  return declared->convert_to<long long>();
}

struct MatchConfig {
  std::string builder;
  std::string painter;
  std::optional<TargetSpec> target;      // defaults to the builder's natural target
  std::optional<long long> budget;       // nullopt: the declared budget
  std::uint64_t seed = 0;
  const RamseyOracle* oracle = nullptr;
};

/// Builds both strategies from their ids and plays. Errors raised while
/// constructing a strategy propagate to the caller.
inline MatchRecord run_match(const MatchConfig& cfg) {
  StrategyContext ctx;
  ctx.seed = cfg.seed;
  ctx.oracle = cfg.oracle;
  ctx.target = cfg.target;
  ctx.budget = cfg.budget;
  auto builder = make_builder(cfg.builder, ctx);
  TargetSpec target = cfg.target ? *cfg.target : builder->natural_target().value_or(TargetSpec::clique(2));
  if (!cfg.target && !builder->natural_target()) {
    throw Error(ErrorCode::kInvalidArgument, builder->id() + " has no natural target; pass one explicitly");
  }
  ctx.target = target;
  const long long budget = resolve_budget(*builder, cfg.budget);
  ctx.budget = budget;
  auto painter = make_painter(cfg.painter, ctx);
  return play_match(*builder, *painter, target, budget, cfg.seed);
}

// ---------------------------------------------------------------------------
// JSON records
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const MatchResult& r) {
  nlohmann::json j = {{"kind", to_string(r.kind)}, {"edges", r.edges}};
  switch (r.kind) {
    case ResultKind::kBuilderWin:
      j["color"] = int(r.color);
      j["embedding"] = r.embedding;
      break;
    case ResultKind::kBudgetExhausted: j["builder_stopped"] = r.builder_stopped; break;
    case ResultKind::kAborted:
      j["side"] = r.offender;
      j["code"] = r.code;
      j["message"] = r.message;
      if (!r.failures.empty()) j["failures"] = r.failures;
      break;
  }
  return j;
}

inline nlohmann::json to_json(const MatchRecord& rec) {
  nlohmann::json moves = nlohmann::json::array();
  for (const auto& e : rec.moves) moves.push_back({e.u, e.v, int(e.color)});
  nlohmann::json j = {{"v", 1},
                      {"target", rec.target.name()},
                      {"q", rec.target.q()},
                      {"builder", rec.builder_id},
                      {"painter", rec.painter_id},
                      {"seed", rec.seed},
                      {"budget", rec.budget},
                      {"moves", std::move(moves)},
                      {"result", to_json(rec.result)}};
  j["declared_budget"] = rec.declared_budget ? nlohmann::json(rec.declared_budget->str()) : nlohmann::json(nullptr);
  return j;
}

inline MatchRecord match_record_from_json(const nlohmann::json& j) {
  try {
    if (j.value("v", 0) != 1) throw Error(ErrorCode::kParse, "unsupported record version");
    MatchRecord rec;
    rec.target = parse_target(j.at("target").get<std::string>(), j.at("q").get<int>());
    rec.builder_id = j.at("builder").get<std::string>();
    rec.painter_id = j.at("painter").get<std::string>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.budget = j.at("budget").get<long long>();
    if (j.contains("declared_budget") && !j["declared_budget"].is_null()) {
      rec.declared_budget = BigInt(j["declared_budget"].get<std::string>());
    }
    for (const auto& m : j.at("moves")) {
      rec.moves.push_back(Edge{m.at(0).get<Vertex>(), m.at(1).get<Vertex>(), Color(m.at(2).get<int>())});
    }
    const auto& r = j.at("result");
    const auto kind = r.at("kind").get<std::string>();
    rec.result.edges = r.at("edges").get<std::size_t>();
    if (kind == "builder_win") {
      rec.result.kind = ResultKind::kBuilderWin;
      rec.result.color = Color(r.at("color").get<int>());
      rec.result.embedding = r.at("embedding").get<std::vector<Vertex>>();
    } else if (kind == "budget_exhausted") {
      rec.result.kind = ResultKind::kBudgetExhausted;
      rec.result.builder_stopped = r.value("builder_stopped", false);
    } else if (kind == "aborted") {
      rec.result.kind = ResultKind::kAborted;
      rec.result.offender = r.at("side").get<std::string>();
      rec.result.code = r.at("code").get<std::string>();
      rec.result.message = r.value("message", "");
      if (r.contains("failures")) rec.result.failures = r["failures"].get<std::vector<std::string>>();
    } else {
      throw Error(ErrorCode::kParse, "unknown result kind '" + kind + "'");
    }
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("match record: ") + e.what());
  }
}

inline void write_ndjson(std::ostream& out, const MatchRecord& rec) { out << to_json(rec).dump() << '\n'; }

inline std::vector<MatchRecord> read_ndjson(std::istream& in) {
  std::vector<MatchRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(match_record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("ndjson line: ") + e.what());
    }
  }
  return out;
}

struct ReplayOutcome {
  ColoredGraphState state;
  MatchResult result;  // recomputed from the moves alone
  bool matches = false;
};

/// Replays a record's moves on a fresh board and recomputes the outcome.
/// Aborted records replay their legal prefix and keep the stored verdict.
inline ReplayOutcome replay(const MatchRecord& rec) {
  ReplayOutcome out{ColoredGraphState(rec.target.q()), {}, false};
  const Pattern pattern(rec.target);
  for (const auto& m : rec.moves) {
    detail::place_pair(out.state, VertexPair::of(m.u, m.v));
    out.state.paint(m.color);
    if (auto copy = find_copy_through(out.state, pattern, m.u, m.v, m.color)) {
      if (out.result.kind == ResultKind::kBuilderWin) throw Error(ErrorCode::kIllegalMove, "moves continue after a win");
      out.result.kind = ResultKind::kBuilderWin;
      out.result.color = m.color;
      out.result.embedding = copy->embedding;
    }
  }
  out.result.edges = rec.moves.size();
  if (out.result.kind != ResultKind::kBuilderWin) {
    if (rec.result.kind == ResultKind::kAborted) {
      out.result = rec.result;
    } else {
      out.result.kind = ResultKind::kBudgetExhausted;
      out.result.builder_stopped = rec.result.builder_stopped;
    }
  }
  const auto& a = out.result;
  const auto& b = rec.result;
  out.matches = a.kind == b.kind && a.edges == b.edges &&
                (a.kind != ResultKind::kBuilderWin || (a.color == b.color && a.embedding == b.embedding));
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive painter enumeration
// ---------------------------------------------------------------------------

struct ExhaustiveReport {
  bool all_win = true;
  std::size_t max_edges = 0;       // worst-case edges over every painter
  std::uint64_t nodes = 0;         // positions expanded
  std::uint64_t memo_hits = 0;
  std::vector<Color> counterexample;  // painter colours of one losing line
  std::string failure;
};

/// Plays `builder` against every sequence of painter colours. With `merge`,
/// positions with equal strategy equivalence keys are expanded once.
inline ExhaustiveReport exhaustive_painter_check(const BuilderStrategy& builder, const TargetSpec& target,
                                                 long long budget, bool merge = true) {
  struct Memo {
    bool win;
    std::size_t extra;
  };
  ExhaustiveReport report;
  const Pattern pattern(target);
  std::unordered_map<std::string, Memo> memo;
  std::vector<Color> line;

  ColoredGraphState state(target.q());

  // Returns (all lines win, max further edges) from the coloured `state`.
  std::function<Memo(const BuilderStrategy&)> dfs = [&](const BuilderStrategy& proto) -> Memo {
    std::optional<std::string> key;
    if (merge) key = proto.equivalence_key(state);
    if (key) {
      if (auto it = memo.find(*key); it != memo.end()) {
        ++report.memo_hits;
        return it->second;
      }
    }
    ++report.nodes;
    Memo result{true, 0};
    auto fail = [&](std::string why) {
      if (report.all_win) {
        report.counterexample = line;
        report.failure = std::move(why);
      }
      report.all_win = false;
      result.win = false;
    };
    if ((long long)state.edge_count() >= budget) {
      fail("budget of " + std::to_string(budget) + " edges reached without a copy");
      return result;
    }
    auto mover = proto.clone();
    const Vertex before = state.vertex_count();
    try {
      auto mv = mover->next_edge(state);
      if (!mv) {
        fail("builder stopped after " + std::to_string(state.edge_count()) + " edges");
        return result;
      }
      detail::place_pair(state, *mv);
    } catch (const Error& e) {
      fail(std::string("builder error: ") + e.what());
      return result;
    }
    const Edge e = state.edges().back();
    for (Color c = 1; c <= target.q(); ++c) {
      state.paint(c);
      line.push_back(c);
      if (find_copy_through(state, pattern, e.u, e.v, c)) {
        result.extra = std::max<std::size_t>(result.extra, 1);
      } else {
        const Memo sub = dfs(*mover);
        if (!sub.win) result.win = false;
        result.extra = std::max(result.extra, sub.extra + 1);
      }
      line.pop_back();
      state.unpaint();
    }
    state.undraw(before);
    if (key) memo.emplace(*key, result);
    return result;
  };

  const Memo root = dfs(builder);
  report.all_win = report.all_win && root.win;
  report.max_edges = root.extra;
  return report;
}

}  // namespace olr
