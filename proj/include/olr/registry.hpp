#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "olr/bignum.hpp"
#include "olr/builders.hpp"
#include "olr/error.hpp"
#include "olr/painters.hpp"
#include "olr/ramsey_bounds.hpp"
#include "olr/solver.hpp"
#include "olr/strategy.hpp"
#include "olr/target.hpp"

namespace olr {

/// "name:key=value,key=value" split into its parts.
struct StrategyId {
  std::string name;
  std::map<std::string, std::string> params;

  bool has(const std::string& key) const { return params.contains(key); }

  std::optional<long long> integer(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, name + ": '" + key + "' is not an integer: " + it->second);
    }
  }

  long long require(const std::string& key) const {
    auto v = integer(key);
    if (!v) throw Error(ErrorCode::kInvalidArgument, name + " needs '" + key + "='");
    return *v;
  }

  std::optional<Rational> fraction(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return parse_rational(it->second);
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : params)
      if (!ok.contains(k)) throw Error(ErrorCode::kInvalidArgument, name + ": unknown parameter '" + k + "'");
  }
};

inline StrategyId parse_strategy_id(std::string_view text) {
  StrategyId id;
  const auto colon = text.find(':');
  id.name = std::string(text.substr(0, colon));
  if (id.name.empty()) throw Error(ErrorCode::kParse, "empty strategy id");
  if (colon == std::string_view::npos) return id;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorCode::kParse, "expected key=value in '" + std::string(text) + "'");
    }
    id.params[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return id;
}

/// Shared solvers, one per target, for the solver-backed strategies.
class SolverCache {
 public:
  std::shared_ptr<Solver> get(const TargetSpec& target, int max_budget = 12) {
    std::lock_guard lock(mutex_);
    const std::string key = target.name() + "/" + std::to_string(target.q()) + "/" + std::to_string(max_budget);
    auto& slot = solvers_[key];
    if (!slot) {
      SolverOptions opts;
      opts.max_budget = max_budget;
      opts.certificates = false;
      slot = std::make_shared<Solver>(target, opts);
    }
    return slot;
  }

  /// Solver value of the empty board, cached.
  int value(const TargetSpec& target, int max_budget = 12) {
    auto solver = get(target, max_budget);
    std::lock_guard lock(mutex_);
    const std::string key = target.name() + "/" + std::to_string(target.q());
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    auto v = solver->edges_needed(ColoredGraphState(target.q()), max_budget);
    if (!v) throw Error(ErrorCode::kEnvelopeExceeded, target.name() + " needs more than " + std::to_string(max_budget) + " edges");
    values_[key] = *v;
    return *v;
  }

  static SolverCache& global() {
    static SolverCache cache;
    return cache;
  }

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Solver>> solvers_;
  std::map<std::string, int> values_;
};

struct StrategyContext {
  std::optional<TargetSpec> target;
  std::uint64_t seed = 0;
  std::optional<long long> budget;
  const RamseyOracle* oracle = nullptr;
  SolverCache* solvers = nullptr;
};

namespace detail {

inline RamseyOracle pick_oracle(const StrategyId& id, const StrategyContext& ctx) {
  auto it = id.params.find("oracle");
  if (it == id.params.end() || it->second == "table") {
    return ctx.oracle ? *ctx.oracle : RamseyOracle::with_default_table();
  }
  if (it->second == "es" || it->second == "es_bound") return RamseyOracle::formula_only();
  throw Error(ErrorCode::kInvalidArgument, "unknown oracle '" + it->second + "'");
}

inline SolverCache& solvers(const StrategyContext& ctx) { return ctx.solvers ? *ctx.solvers : SolverCache::global(); }

inline const TargetSpec& need_target(const StrategyContext& ctx, const std::string& who) {
  if (!ctx.target) throw Error(ErrorCode::kInvalidArgument, who + " needs a target");
  return *ctx.target;
}

}  // namespace detail

/// Builder ids: chase:t=T[,n=N], multichase:q=Q,t=T[,m=M],
/// adaptive:t=T[,alpha=A,mu=M,nu=N], bipartite:q=Q,t=T[,force=1], star:k=K,
/// optimal[:budget=B]. Chain strategies also take oracle=table|es and check=1.
inline std::unique_ptr<BuilderStrategy> make_builder(std::string_view text, const StrategyContext& ctx = {}) {
  const auto id = parse_strategy_id(text);
  const bool check = id.integer("check").value_or(0) != 0;
  if (id.name == "chase") {
    id.allow({"t", "n", "oracle", "check"});
    std::optional<long long> n = id.integer("n");
    return ChainBuilder::chase(int(id.require("t")), detail::pick_oracle(id, ctx), n, check);
  }
  if (id.name == "multichase") {
    id.allow({"q", "t", "m", "oracle", "check"});
    std::optional<int> m;
    if (auto v = id.integer("m")) m = int(*v);
    return ChainBuilder::multichase(int(id.require("q")), int(id.require("t")), detail::pick_oracle(id, ctx), m, check);
  }
  if (id.name == "adaptive") {
    id.allow({"t", "alpha", "mu", "nu", "oracle", "check"});
    auto params = AdaptiveParams::asymptotic_preset(int(id.require("t")));
    if (auto a = id.fraction("alpha")) params.alpha = *a;
    if (auto m = id.fraction("mu")) params.mu = *m;
    if (auto n = id.fraction("nu")) params.nu = *n;
    return ChainBuilder::adaptive(params, detail::pick_oracle(id, ctx), std::string(text), check);
  }
  if (id.name == "bipartite") {
    id.allow({"q", "t", "force"});
    return std::make_unique<BipartiteBuilder>(int(id.require("q")), int(id.require("t")),
                                              id.integer("force").value_or(0) != 0);
  }
  if (id.name == "star") {
    id.allow({"k"});
    return std::make_unique<StarBuilder>(int(id.require("k")));
  }
  if (id.name == "optimal") {
    id.allow({"budget"});
    const auto& target = detail::need_target(ctx, "optimal");
    auto& cache = detail::solvers(ctx);
    const auto given = id.integer("budget");
    const int budget = given ? int(*given) : cache.value(target);
    return std::make_unique<OptimalBuilder>(cache.get(target), budget);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown builder '" + id.name + "'");
}

/// Painter ids: random[:seed=S], greedy, minthreat[:depth=D], adversarial[:budget=B],
/// constant:color=C.
inline std::unique_ptr<PainterStrategy> make_painter(std::string_view text, const StrategyContext& ctx = {}) {
  const auto id = parse_strategy_id(text);
  if (id.name == "random") {
    id.allow({"seed"});
    return std::make_unique<RandomPainter>(std::uint64_t(id.integer("seed").value_or((long long)ctx.seed)));
  }
  if (id.name == "constant") {
    id.allow({"color"});
    return std::make_unique<ConstantPainter>(Color(id.require("color")));
  }
  if (id.name == "greedy") {
    id.allow({});
    return std::make_unique<GreedyPainter>(detail::need_target(ctx, "greedy"));
  }
  if (id.name == "minthreat") {
    id.allow({"depth"});
    return std::make_unique<MinThreatPainter>(detail::need_target(ctx, "minthreat"), int(id.integer("depth").value_or(2)));
  }
  if (id.name == "adversarial") {
    id.allow({"budget"});
    const auto& target = detail::need_target(ctx, "adversarial");
    auto& cache = detail::solvers(ctx);
    long long budget = id.integer("budget").value_or(ctx.budget.value_or(0));
    if (budget <= 0) budget = cache.value(target);
    return std::make_unique<AdversarialPainter>(cache.get(target), int(budget));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown painter '" + id.name + "'");
}

}  // namespace olr
