#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "olr/bignum.hpp"
#include "olr/error.hpp"
#include "olr/graph.hpp"
#include "olr/kst.hpp"
#include "olr/ramsey_bounds.hpp"
#include "olr/solver.hpp"
#include "olr/strategy.hpp"
#include "olr/target.hpp"

namespace olr {

/// Largest star / vertex pool a chain strategy agrees to play with.
inline constexpr long long kChainVertexCap = 1LL << 24;

enum class ChainRule {
  kMajority,  // follow the most frequent colour of each step
  kAdaptive,  // follow the colour string (two colours only)
};

/// Step-by-step log of the colour each chain step followed.
struct FollowDecision {
  int step = 0;                        // 1 for the opening star
  long long pool = 0;                  // |V_i| - 1 (edges drawn this step)
  std::vector<long long> class_sizes;  // index c = neighbours joined in colour c
  Color string_majority = 0;           // 0 when the string counts tie (adaptive only)
  Color followed = 0;
};

/// Neighbourhood chase: a star from v_1, then repeatedly join the lowest
/// vertex of the current focus set V_i to the rest of V_i and keep the
/// neighbours in the followed colour; finally fill a clique on p vertices
/// of the last focus set.
class ChainBuilder : public BuilderStrategy {
 public:
  struct Plan {
    int q = 2;
    int t = 2;
    ChainRule rule = ChainRule::kMajority;
    long long steps = 1;  // chase: exact chain length m; adaptive: longest possible string
    long long p = 1;      // fill clique size
    long long n = 2;      // star vertex count including v_1
    BigInt declared;
    Rational alpha;       // adaptive only
    long long mu_count = 0;
    long long nu_count = 0;
  };

  ChainBuilder(Plan plan, std::string id, bool check_invariants = false)
      : plan_(std::move(plan)), id_(std::move(id)), check_(check_invariants) {
    if (plan_.n > kChainVertexCap) {
      throw Error(ErrorCode::kParameterInfeasible, id_ + " needs a star on n = " + std::to_string(plan_.n) +
                                                       " vertices (cap " + std::to_string(kChainVertexCap) + ")");
    }
    if (plan_.n < 2) throw Error(ErrorCode::kParameterInfeasible, "star needs n >= 2");
  }

  /// Two colours, m = ceil(3t/2), n = 2^m p.
  static std::unique_ptr<ChainBuilder> chase(int t, const RamseyOracle& oracle, std::optional<long long> n_override = {},
                                             bool check = false) {
    const auto b = budget_specifics(t, oracle);
    Plan plan;
    plan.q = 2;
    plan.t = t;
    plan.steps = b.m;
    plan.p = b.p.convert_to<long long>();
    if (b.n > kChainVertexCap) {
      throw Error(ErrorCode::kParameterInfeasible,
                  "chase:t=" + std::to_string(t) + " needs n = " + b.n.str() + " star vertices");
    }
    plan.n = n_override.value_or(b.n.convert_to<long long>());
    plan.declared = BigInt(plan.steps) * plan.n + pairs(BigInt(plan.p));
    std::string id = "chase:t=" + std::to_string(t);
    if (n_override) id += ",n=" + std::to_string(*n_override);
    return std::make_unique<ChainBuilder>(std::move(plan), id, check);
  }

  /// q colours; n = q^m p with m from budget_multicolor.
  static std::unique_ptr<ChainBuilder> multichase(int q, int t, const RamseyOracle& oracle, std::optional<int> chain = {},
                                                  bool check = false) {
    const auto b = budget_multicolor(q, t, oracle, chain);
    if (b.n > kChainVertexCap) {
      throw Error(ErrorCode::kParameterInfeasible, "multichase needs n = " + b.n.str() + " star vertices");
    }
    Plan plan;
    plan.q = q;
    plan.t = t;
    plan.steps = b.m;
    plan.p = b.p.convert_to<long long>();
    plan.n = b.n.convert_to<long long>();
    plan.declared = b.total;
    std::string id = "multichase:q=" + std::to_string(q) + ",t=" + std::to_string(t);
    if (chain) id += ",m=" + std::to_string(*chain);
    return std::make_unique<ChainBuilder>(std::move(plan), id, check);
  }

  /// Colour-string strategy. Refuses parameters for which some painter
  /// could shrink the focus set below p before the stop rule fires.
  static std::unique_ptr<ChainBuilder> adaptive(const AdaptiveParams& params, const RamseyOracle& oracle,
                                                const std::string& id, bool check = false) {
    const auto b = budget_main(params, oracle);
    if (!b.n || *b.n > kChainVertexCap) {
      throw Error(ErrorCode::kParameterInfeasible,
                  id + " needs n = 2^" + detail::real_str(b.log2_n, 6) + " star vertices and p = " + b.p.str());
    }
    Plan plan;
    plan.q = 2;
    plan.t = params.t;
    plan.rule = ChainRule::kAdaptive;
    plan.steps = b.m_max;
    plan.p = b.p.convert_to<long long>();
    plan.n = b.n->convert_to<long long>();
    plan.declared = *b.total;
    plan.alpha = params.alpha;
    plan.mu_count = params.mu_count();
    plan.nu_count = params.nu_count();
    const long long worst = adaptive_worst_focus(plan);
    if (worst < plan.p) {
      throw Error(ErrorCode::kParameterInfeasible, id + ": a painter can shrink the focus set to " +
                                                       std::to_string(worst) + " < p = " + std::to_string(plan.p));
    }
    return std::make_unique<ChainBuilder>(std::move(plan), id, check);
  }

  /// Smallest focus set any painter can force at the moment the stop rule
  /// fires (or -1 if a step can be reached with nothing left to join).
  static long long adaptive_worst_focus(const Plan& plan) {
    const long long mu = plan.mu_count;
    const long long nu = plan.nu_count;
    auto stopped = [&](long long r, long long b) { return r >= mu || b >= mu || (r >= nu && b >= nu); };
    // worst[r][b]: smallest focus size reachable with r red and b blue letters
    std::map<std::pair<long long, long long>, long long> worst;
    auto relax = [&](long long r, long long b, long long y) {
      auto [it, inserted] = worst.emplace(std::make_pair(r, b), y);
      if (!inserted) it->second = std::min(it->second, y);
    };
    const long long first = (plan.n - 1 + 1) / 2;
    relax(1, 0, first);
    relax(0, 1, first);
    long long result = std::numeric_limits<long long>::max();
    for (long long len = 1; len <= mu + nu; ++len) {
      for (long long r = 0; r <= len; ++r) {
        const long long b = len - r;
        auto it = worst.find({r, b});
        if (it == worst.end()) continue;
        const long long x = it->second;
        if (stopped(r, b)) {
          result = std::min(result, x);
          continue;
        }
        if (x < 2) return -1;
        const long long pool = x - 1;
        if (r == b) {
          const long long y = (pool + 1) / 2;
          relax(r + 1, b, y);
          relax(r, b + 1, y);
        } else {
          const long long keep = ceil_rational((1 - plan.alpha) * pool).convert_to<long long>();
          const long long other = pool - keep + 1;
          const bool red_major = r > b;
          relax(r + (red_major ? 1 : 0), b + (red_major ? 0 : 1), keep);
          if (other <= pool) relax(r + (red_major ? 0 : 1), b + (red_major ? 1 : 0), other);
        }
      }
    }
    return result;
  }

  std::unique_ptr<BuilderStrategy> clone() const override { return std::make_unique<ChainBuilder>(*this); }
  std::string id() const override { return id_; }
  std::optional<BigInt> declared_budget() const override { return plan_.declared; }
  std::string rationale() const override { return rationale_; }
  std::optional<TargetSpec> natural_target() const override { return TargetSpec::clique(plan_.t, plan_.q); }

  const Plan& plan() const noexcept { return plan_; }
  const std::vector<FollowDecision>& decisions() const noexcept { return decisions_; }
  const std::vector<Color>& chain_colors() const noexcept { return colors_; }

  std::optional<VertexPair> next_edge(const ColoredGraphState& state) override {
    while (true) {
      switch (phase_) {
        case Phase::kStar: {
          if (star_drawn_ < plan_.n - 1) {
            ++star_drawn_;
            rationale_ = "phase-1 star edge " + std::to_string(star_drawn_) + "/" + std::to_string(plan_.n - 1);
            if (star_drawn_ == 1) {
              if (state.edge_count() != 0) throw Error(ErrorCode::kInvalidArgument, id_ + " must open the game");
              center_ = state.vertex_count();
              return VertexPair{center_, center_ + 1};
            }
            return VertexPair{center_, state.vertex_count()};
          }
          std::vector<Vertex> leaves;
          state.for_each_neighbor(center_, [&](Vertex w, Color) { leaves.push_back(w); });
          std::sort(leaves.begin(), leaves.end());
          pivot_ = center_;
          targets_ = std::move(leaves);
          close_step(state);
          break;
        }
        case Phase::kStep: {
          if (!step_open_) {
            pivot_ = focus_.front();
            targets_.assign(focus_.begin() + 1, focus_.end());
            drawn_ = 0;
            step_open_ = true;
          }
          if (drawn_ < targets_.size()) {
            rationale_ = "chain step " + std::to_string(colors_.size() + 1) + " joins v" +
                         std::to_string(colors_.size() + 1) + " to V (" + std::to_string(drawn_ + 1) + "/" +
                         std::to_string(targets_.size()) + ")";
            return VertexPair::of(pivot_, targets_[drawn_++]);
          }
          close_step(state);
          break;
        }
        case Phase::kFill: {
          if (!fill_open_) {
            const std::size_t size = std::min<std::size_t>(focus_.size(), std::size_t(plan_.p));
            fill_.assign(focus_.begin(), focus_.begin() + long(size));
            fill_i_ = 0;
            fill_j_ = 1;
            fill_open_ = true;
          }
          if (fill_j_ < fill_.size()) {
            auto pair = VertexPair::of(fill_[fill_i_], fill_[fill_j_]);
            if (++fill_i_ == fill_j_) {
              fill_i_ = 0;
              ++fill_j_;
            }
            rationale_ = "fill K" + std::to_string(fill_.size()) + " on the final focus set";
            return pair;
          }
          phase_ = Phase::kDone;
          break;
        }
        case Phase::kDone: rationale_ = "strategy complete"; return std::nullopt;
      }
    }
  }

  std::optional<std::string> equivalence_key(const ColoredGraphState& state) const override {
    std::ostringstream os;
    os << int(phase_) << '|';
    for (Color c : colors_) os << char('0' + c);
    os << '|' << focus_.size() << '|';
    std::vector<long long> counts(std::size_t(plan_.q) + 1, 0);
    switch (phase_) {
      case Phase::kStar:
        if (star_drawn_ > 0) state.for_each_neighbor(center_, [&](Vertex, Color c) { ++counts[c]; });
        for (Color c = 1; c <= plan_.q; ++c) os << counts[c] << ',';
        break;
      case Phase::kStep:
        if (step_open_)
          for (std::size_t i = 0; i < drawn_; ++i) ++counts[state.color(pivot_, targets_[i])];
        os << (step_open_ ? 1 : 0) << ':';
        for (Color c = 1; c <= plan_.q; ++c) os << counts[c] << ',';
        break;
      case Phase::kFill:
        os << (fill_open_ ? 1 : 0) << ':';
        if (fill_open_) {
          // colours of the fill edges drawn so far, in drawing order
          for (std::size_t j = 1; j < fill_.size(); ++j)
            for (std::size_t i = 0; i < j; ++i) {
              if (j > fill_j_ || (j == fill_j_ && i >= fill_i_)) break;
              os << char('0' + state.color(fill_[i], fill_[j]));
            }
        }
        break;
      case Phase::kDone: break;
    }
    return os.str();
  }

 private:
  enum class Phase { kStar, kStep, kFill, kDone };

  Color choose(const std::vector<long long>& sizes, long long pool, FollowDecision& d) const {
    auto largest = [&]() {
      Color best = 1;
      for (Color c = 2; c <= plan_.q; ++c)
        if (sizes[c] > sizes[best]) best = c;
      return best;
    };
    if (plan_.rule == ChainRule::kMajority || colors_.empty()) return largest();
    const long long red = std::count(colors_.begin(), colors_.end(), Color{1});
    const long long blue = std::count(colors_.begin(), colors_.end(), Color{2});
    if (red == blue) return largest();
    const Color major = red > blue ? 1 : 2;
    d.string_majority = major;
    // |N_major| >= (1 - alpha)(|V_i| - 1), compared exactly
    if (Rational(sizes[major]) >= (1 - plan_.alpha) * pool) return major;
    return Color(3 - major);
  }

  void close_step(const ColoredGraphState& state) {
    std::vector<std::vector<Vertex>> classes(std::size_t(plan_.q) + 1);
    for (Vertex w : targets_) classes[state.color(pivot_, w)].push_back(w);
    FollowDecision d;
    d.step = int(colors_.size()) + 1;
    d.pool = (long long)targets_.size();
    d.class_sizes.assign(std::size_t(plan_.q) + 1, 0);
    for (Color c = 1; c <= plan_.q; ++c) d.class_sizes[c] = (long long)classes[c].size();
    d.followed = choose(d.class_sizes, d.pool, d);
    chain_.push_back(pivot_);
    colors_.push_back(d.followed);
    focus_ = std::move(classes[d.followed]);
    decisions_.push_back(d);
    rationale_ = "chain step " + std::to_string(colors_.size()) + " follows " + color_name(d.followed);
    step_open_ = false;
    targets_.clear();
    if (check_) check_invariant(state);
    phase_ = stop_now() ? Phase::kFill : Phase::kStep;
  }

  bool stop_now() const {
    if (focus_.size() < 2) return true;
    if (plan_.rule == ChainRule::kMajority) return (long long)colors_.size() >= plan_.steps;
    const long long red = std::count(colors_.begin(), colors_.end(), Color{1});
    const long long blue = std::count(colors_.begin(), colors_.end(), Color{2});
    return red >= plan_.mu_count || blue >= plan_.mu_count || (red >= plan_.nu_count && blue >= plan_.nu_count) ||
           (long long)colors_.size() >= plan_.steps;
  }

  void check_invariant(const ColoredGraphState& state) const {
    for (Vertex w : focus_)
      for (std::size_t j = 0; j < chain_.size(); ++j)
        if (state.color(chain_[j], w) != colors_[j]) {
          throw Error(ErrorCode::kInvalidArgument, "chain invariant violated at step " + std::to_string(colors_.size()));
        }
  }

  Plan plan_;
  std::string id_;
  bool check_ = false;
  Phase phase_ = Phase::kStar;
  long long star_drawn_ = 0;
  Vertex center_ = 0;
  std::vector<Vertex> chain_;
  std::vector<Color> colors_;
  std::vector<Vertex> focus_;
  Vertex pivot_ = 0;
  std::vector<Vertex> targets_;
  std::size_t drawn_ = 0;
  bool step_open_ = false;
  std::vector<Vertex> fill_;
  std::size_t fill_i_ = 0;
  std::size_t fill_j_ = 1;
  bool fill_open_ = false;
  std::string rationale_;
  std::vector<FollowDecision> decisions_;
};

/// Two-phase q-colour K_{t,t} strategy built on complete bipartite graphs
/// and dense-subgraph extraction.
class BipartiteBuilder : public BuilderStrategy {
 public:
  BipartiteBuilder(int q, int t, bool force)
      : q_(q), t_(t), force_(force), plan_(bipartite_plan(q, t)), report_(verify_bipartite_chain(q, t)) {
    r1_ = force_ ? std::max(1, plan_.r1) : plan_.r1;
    m_size_ = plan_.m_size.convert_to<long long>();
    n_size_ = plan_.n_size.convert_to<long long>();
    s1_ = plan_.s1.convert_to<long long>();
    n2_size_ = plan_.n2_size.convert_to<long long>();
    if (m_size_ * n_size_ > 50'000'000) {
      throw Error(ErrorCode::kParameterInfeasible, "bipartite phase 1 needs " + plan_.phase1_edges.str() + " edges");
    }
  }

  std::unique_ptr<BuilderStrategy> clone() const override { return std::make_unique<BipartiteBuilder>(*this); }
  std::string id() const override {
    return "bipartite:q=" + std::to_string(q_) + ",t=" + std::to_string(t_) + (force_ ? ",force=1" : "");
  }
  std::optional<BigInt> declared_budget() const override { return plan_.declared_floor; }
  std::string rationale() const override { return rationale_; }
  std::optional<TargetSpec> natural_target() const override { return TargetSpec::biclique(t_, q_); }
  std::vector<std::string> precondition_failures() const override { return report_.failed(); }

  const BipartitePlan& plan() const noexcept { return plan_; }
  const BoundReport& precondition_report() const noexcept { return report_; }
  /// Sides of the K_{t,t} located by the final extraction, if it ran.
  const std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>>& located() const noexcept { return found_; }

  std::optional<VertexPair> next_edge(const ColoredGraphState& state) override {
    if (!force_ && !report_.all_true()) {
      std::string names;
      for (const auto& f : report_.failed()) names += (names.empty() ? "" : ", ") + f;
      throw Error(ErrorCode::kPreconditionUnsatisfied, "bipartite:q=" + std::to_string(q_) + ",t=" + std::to_string(t_) +
                                                           " fails: " + names);
    }
    while (true) {
      switch (phase_) {
        case Phase::kOne:
          if (i_ < m_size_) {
            rationale_ = "phase-1 complete bipartite M x N";
            return grid_edge(state, m_ids_, n_ids_, m_size_, n_size_);
          }
          extract_first(state);
          phase_ = Phase::kTwo;
          i_ = j_ = 0;
          break;
        case Phase::kTwo:
          if (i_ < (long long)mp_ids_.size()) {
            rationale_ = "phase-2 complete bipartite M' x N'";
            return grid_edge(state, mp_ids_, np_ids_, (long long)mp_ids_.size(), n2_size_);
          }
          extract_second(state);
          phase_ = Phase::kDone;
          break;
        case Phase::kDone: rationale_ = "strategy complete"; return std::nullopt;
      }
    }
  }

 private:
  enum class Phase { kOne, kTwo, kDone };

  VertexPair grid_edge(const ColoredGraphState& state, std::vector<Vertex>& rows, std::vector<Vertex>& cols,
                       long long row_count, long long col_count) {
    const Vertex next = state.vertex_count();
    const bool fresh_row = i_ >= (long long)rows.size();
    const bool fresh_col = j_ >= (long long)cols.size();
    if (fresh_row) rows.push_back(next);
    if (fresh_col) cols.push_back(fresh_row ? next + 1 : next);
    const VertexPair pair = VertexPair::of(rows[std::size_t(i_)], cols[std::size_t(j_)]);
    if (++j_ == col_count) {
      j_ = 0;
      ++i_;
    }
    (void)row_count;
    return pair;
  }

  void extract_first(const ColoredGraphState& state) {
    std::vector<long long> counts(std::size_t(q_) + 1, 0);
    for (Vertex a : m_ids_)
      for (Vertex b : n_ids_) ++counts[state.color(a, b)];
    blue_ = 1;
    for (Color c = 2; c <= q_; ++c)
      if (counts[c] > counts[blue_]) blue_ = c;
    // A = N, B = M, eps = 1/q
    KstInstance inst(int(n_ids_.size()), int(m_ids_.size()), Rational(1, q_), r1_, int(s1_));
    for (std::size_t a = 0; a < n_ids_.size(); ++a)
      for (std::size_t b = 0; b < m_ids_.size(); ++b)
        if (state.color(n_ids_[a], m_ids_[b]) == blue_) inst.connect(int(a), int(b));
    const auto res = extract_krs(inst);
    for (int a : res.a_side) joint_.push_back(n_ids_[std::size_t(a)]);
    for (int b : res.b_side) mp_ids_.push_back(m_ids_[std::size_t(b)]);
    rationale_ = "extracted " + color_name(blue_) + " K_{" + std::to_string(r1_) + "," + std::to_string(s1_) + "}";
  }

  void extract_second(const ColoredGraphState& state) {
    const Real eps = plan_.epsilon;
    std::vector<long long> counts(std::size_t(q_) + 1, 0);
    for (Vertex a : mp_ids_)
      for (Vertex b : np_ids_) ++counts[state.color(a, b)];
    const long long total = (long long)(mp_ids_.size() * np_ids_.size());
    auto build = [&](Color c, int r, int s) {
      KstInstance inst(int(mp_ids_.size()), int(np_ids_.size()), Rational(counts[c], total), r, s);
      for (std::size_t a = 0; a < mp_ids_.size(); ++a)
        for (std::size_t b = 0; b < np_ids_.size(); ++b)
          if (state.color(mp_ids_[a], np_ids_[b]) == c) inst.connect(int(a), int(b));
      return extract_krs(inst);
    };
    if (to_real(Rational(counts[blue_], total)) >= Real(1) / q_ - eps) {
      const int s = 2 * plan_.log_ceil;
      const auto res = build(blue_, t_, s);
      std::vector<Vertex> side_a, side_b = joint_;
      for (int a : res.a_side) side_a.push_back(mp_ids_[std::size_t(a)]);
      for (int b : res.b_side) side_b.push_back(np_ids_[std::size_t(b)]);
      side_b.resize(std::size_t(t_));
      found_ = std::make_pair(side_a, side_b);
    } else {
      Color other = blue_ == 1 ? 2 : 1;
      for (Color c = 1; c <= q_; ++c)
        if (c != blue_ && counts[c] > counts[other]) other = c;
      const auto res = build(other, t_, t_);
      std::vector<Vertex> side_a, side_b;
      for (int a : res.a_side) side_a.push_back(mp_ids_[std::size_t(a)]);
      for (int b : res.b_side) side_b.push_back(np_ids_[std::size_t(b)]);
      found_ = std::make_pair(side_a, side_b);
    }
  }

  int q_;
  int t_;
  bool force_;
  BipartitePlan plan_;
  BoundReport report_;
  int r1_ = 1;
  long long m_size_ = 0, n_size_ = 0, s1_ = 0, n2_size_ = 0;
  Phase phase_ = Phase::kOne;
  long long i_ = 0, j_ = 0;
  std::vector<Vertex> m_ids_, n_ids_, mp_ids_, np_ids_, joint_;
  Color blue_ = 1;
  std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> found_;
  std::string rationale_;
};

/// k edges from one centre.
class StarBuilder : public BuilderStrategy {
 public:
  explicit StarBuilder(int k) : k_(k) {
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "star needs k >= 1");
  }
  std::unique_ptr<BuilderStrategy> clone() const override { return std::make_unique<StarBuilder>(*this); }
  std::string id() const override { return "star:k=" + std::to_string(k_); }
  std::optional<BigInt> declared_budget() const override { return BigInt(k_); }
  std::string rationale() const override { return "star edge " + std::to_string(drawn_); }
  std::optional<std::string> equivalence_key(const ColoredGraphState& state) const override {
    std::vector<int> counts(std::size_t(state.q()) + 1, 0);
    if (drawn_ > 0) state.for_each_neighbor(center_, [&](Vertex, Color c) { ++counts[c]; });
    std::string key = std::to_string(drawn_);
    for (int c : counts) key += "," + std::to_string(c);
    return key;
  }
  std::optional<VertexPair> next_edge(const ColoredGraphState& state) override {
    if (drawn_ >= k_) return std::nullopt;
    if (drawn_++ == 0) {
      center_ = state.vertex_count();
      return VertexPair{center_, center_ + 1};
    }
    return VertexPair{center_, state.vertex_count()};
  }

 private:
  int k_;
  int drawn_ = 0;
  Vertex center_ = 0;
};

/// Solver-backed Builder for small targets: always plays a move that forces
/// the copy in the fewest further edges.
class OptimalBuilder : public BuilderStrategy {
 public:
  OptimalBuilder(std::shared_ptr<Solver> solver, int budget) : solver_(std::move(solver)), budget_(budget) {}

  std::unique_ptr<BuilderStrategy> clone() const override { return std::make_unique<OptimalBuilder>(*this); }
  std::string id() const override { return "optimal:budget=" + std::to_string(budget_); }
  std::optional<BigInt> declared_budget() const override { return BigInt(budget_); }
  std::string rationale() const override { return rationale_; }
  std::optional<TargetSpec> natural_target() const override { return solver_->target(); }

  std::optional<VertexPair> next_edge(const ColoredGraphState& state) override {
    const int remaining = budget_ - int(state.edge_count());
    if (remaining <= 0) return std::nullopt;
    auto mv = solver_->winning_move(state, remaining);
    rationale_ = mv ? "solver move" : "no forced win within budget";
    return mv;
  }

 private:
  std::shared_ptr<Solver> solver_;
  int budget_;
  std::string rationale_;
};

}  // namespace olr
