#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "olr/embedding.hpp"
#include "olr/engine.hpp"
#include "olr/error.hpp"
#include "olr/graph.hpp"
#include "olr/registry.hpp"
#include "olr/strategy.hpp"
#include "olr/target.hpp"

namespace olr {

enum class Turn { kBuilderDraw, kPainterColor, kFinished };
enum class Side { kBuilder, kPainter };

inline std::string to_string(Side s) { return s == Side::kBuilder ? "builder" : "painter"; }

inline Side parse_side(const std::string& s) {
  if (s == "builder") return Side::kBuilder;
  if (s == "painter") return Side::kPainter;
  throw Error(ErrorCode::kInvalidArgument, "role must be 'builder' or 'painter', got '" + s + "'");
}

/// A human move: draw a pair or colour the pending edge.
struct SessionMove {
  std::optional<VertexPair> draw;
  std::optional<Color> color;

  static SessionMove draw_edge(Vertex u, Vertex v) { return {VertexPair{u, v}, std::nullopt}; }
  static SessionMove paint(Color c) { return {std::nullopt, c}; }
};

struct TranscriptEntry {
  Side side = Side::kBuilder;
  bool engine = false;
  std::optional<VertexPair> draw;
  std::optional<Color> color;
  std::string rationale;
};

inline std::string iso_time(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct SessionConfig {
  std::optional<TargetSpec> target;  // defaults to an engine Builder's natural target
  Side human_role = Side::kPainter;
  std::string engine_strategy;
  std::optional<long long> budget;   // defaults to an engine Builder's declared budget
  std::uint64_t seed = 0;
};

/// One interactive game; the engine controls the side the human does not.
class GameSession {
 public:
  GameSession(std::string id, const SessionConfig& cfg) : id_(std::move(id)), human_(cfg.human_role), state_(2) {
    StrategyContext ctx;
    ctx.target = cfg.target;
    ctx.seed = cfg.seed;
    ctx.budget = cfg.budget;
    if (human_ == Side::kPainter) {
      builder_ = make_builder(cfg.engine_strategy, ctx);
      if (!cfg.target && !builder_->natural_target()) {
        throw Error(ErrorCode::kInvalidArgument, builder_->id() + " needs an explicit target");
      }
      target_ = cfg.target ? *cfg.target : *builder_->natural_target();
      budget_ = cfg.budget ? cfg.budget : std::optional<long long>(resolve_budget(*builder_, std::nullopt));
      engine_id_ = builder_->id();
    } else {
      if (!cfg.target) throw Error(ErrorCode::kInvalidArgument, "a human Builder session needs a target");
      target_ = *cfg.target;
      budget_ = cfg.budget;
      ctx.target = target_;
      painter_ = make_painter(cfg.engine_strategy, ctx);
      engine_id_ = painter_->id();
    }
    if (budget_ && *budget_ < 1) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
    pattern_ = std::make_shared<Pattern>(target_);
    state_ = ColoredGraphState(target_.q());
    created_ = updated_ = std::chrono::system_clock::now();
    if (builder_) engine_turn();
  }

  GameSession(const GameSession& o)
      : id_(o.id_), human_(o.human_), target_(o.target_), engine_id_(o.engine_id_),
        builder_(o.builder_ ? o.builder_->clone() : nullptr), painter_(o.painter_ ? o.painter_->clone() : nullptr),
        pattern_(o.pattern_), state_(o.state_), turn_(o.turn_), budget_(o.budget_), transcript_(o.transcript_),
        winner_(o.winner_), mono_(o.mono_), end_reason_(o.end_reason_), rationale_(o.rationale_),
        created_(o.created_), updated_(o.updated_) {}
  GameSession(GameSession&&) = default;

  const std::string& id() const noexcept { return id_; }
  Turn turn() const noexcept { return turn_; }
  const ColoredGraphState& state() const noexcept { return state_; }
  const TargetSpec& target() const noexcept { return target_; }
  const std::vector<TranscriptEntry>& transcript() const noexcept { return transcript_; }
  std::optional<Side> winner() const noexcept { return winner_; }
  const std::optional<MonoCopy>& mono() const noexcept { return mono_; }
  Side human_role() const noexcept { return human_; }

  /// Applies the human move, then the engine's reply if the game goes on.
  void step(const SessionMove& move) {
    if (turn_ == Turn::kFinished) throw Error(ErrorCode::kSessionFinished, "session " + id_ + " is finished");
    if (move.draw.has_value() == move.color.has_value()) {
      throw Error(ErrorCode::kInvalidArgument, "a move is exactly one of draw or color");
    }
    const Side mover = move.draw ? Side::kBuilder : Side::kPainter;
    const Side due = turn_ == Turn::kBuilderDraw ? Side::kBuilder : Side::kPainter;
    if (mover != due) throw Error(ErrorCode::kWrongTurn, "it is " + to_string(due) + "'s turn");
    if (mover != human_) throw Error(ErrorCode::kWrongTurn, to_string(mover) + " is played by the engine");
    if (move.draw) {
      apply_draw(*move.draw, false, {});
    } else {
      if (*move.color < 1 || *move.color > target_.q()) {
        throw Error(ErrorCode::kIllegalMove, "colour " + std::to_string(int(*move.color)) + " not in 1.." +
                                                 std::to_string(target_.q()));
      }
      apply_color(*move.color, false);
    }
    updated_ = std::chrono::system_clock::now();
    if (turn_ != Turn::kFinished) engine_turn();
  }

  nlohmann::json snapshot() const {
    nlohmann::json history = nlohmann::json::array();
    for (const auto& t : transcript_) {
      nlohmann::json h = {{"side", to_string(t.side)}, {"engine", t.engine}};
      if (t.draw) h["draw"] = {t.draw->a, t.draw->b};
      if (t.color) h["color"] = int(*t.color);
      if (!t.rationale.empty()) h["rationale"] = t.rationale;
      history.push_back(std::move(h));
    }
    nlohmann::json j = {{"v", 1},
                        {"id", id_},
                        {"target", target_.name()},
                        {"q", target_.q()},
                        {"human_role", to_string(human_)},
                        {"engine_strategy", engine_id_},
                        {"turn", turn_name()},
                        {"graph", to_json(state_)},
                        {"history", std::move(history)},
                        {"edges_drawn", state_.edge_count()},
                        {"created", iso_time(created_)},
                        {"updated", iso_time(updated_)}};
    j["pending"] = nlohmann::json(nullptr);
    if (auto p = state_.pending()) j["pending"] = {p->u, p->v};
    j["budget"] = budget_ ? nlohmann::json(*budget_) : nlohmann::json(nullptr);
    j["rationale"] = rationale_.empty() ? nlohmann::json(nullptr) : nlohmann::json(rationale_);
    j["winner"] = winner_ ? nlohmann::json(to_string(*winner_)) : nlohmann::json(nullptr);
    j["mono"] = nlohmann::json(nullptr);
    if (mono_) {
      nlohmann::json edges = nlohmann::json::array();
      for (auto [a, b] : target_.edges()) edges.push_back({mono_->embedding[a], mono_->embedding[b]});
      j["mono"] = {{"color", int(mono_->color)}, {"vertices", mono_->embedding}, {"edges", std::move(edges)}};
    }
    j["result"] = nlohmann::json(nullptr);
    if (turn_ == Turn::kFinished) j["result"] = {{"kind", end_reason_}, {"edges", state_.edge_count()}};
    return j;
  }

 private:
  std::string turn_name() const {
    switch (turn_) {
      case Turn::kBuilderDraw: return "builder";
      case Turn::kPainterColor: return "painter";
      case Turn::kFinished: return "finished";
    }
    return "finished";
  }

  void finish(Side winner, std::string reason) {
    turn_ = Turn::kFinished;
    winner_ = winner;
    end_reason_ = std::move(reason);
  }

  void apply_draw(VertexPair p, bool engine, std::string why) {
    try {
      detail::place_pair(state_, VertexPair::of(p.a, p.b));
    } catch (const Error& e) {
      throw Error(ErrorCode::kIllegalMove, e.what());
    }
    transcript_.push_back({Side::kBuilder, engine, VertexPair::of(p.a, p.b), std::nullopt, std::move(why)});
    turn_ = Turn::kPainterColor;
  }

  void apply_color(Color c, bool engine) {
    const Edge e = state_.edges().back();
    state_.paint(c);
    transcript_.push_back({Side::kPainter, engine, std::nullopt, c, {}});
    if (auto copy = find_copy_through(state_, *pattern_, e.u, e.v, c)) {
      mono_ = std::move(copy);
      finish(Side::kBuilder, "builder_win");
    } else if (budget_ && (long long)state_.edge_count() >= *budget_) {
      finish(Side::kPainter, "budget_exhausted");
    } else {
      turn_ = Turn::kBuilderDraw;
    }
  }

  void engine_turn() {
    if (turn_ == Turn::kBuilderDraw && builder_) {
      std::optional<VertexPair> mv;
      try {
        mv = builder_->next_edge(state_);
      } catch (const Error& e) {
        rationale_ = e.what();
        finish(Side::kPainter, "aborted");
        return;
      }
      rationale_ = builder_->rationale();
      if (!mv) {
        finish(Side::kPainter, "builder_stopped");
        return;
      }
      apply_draw(*mv, true, rationale_);
    } else if (turn_ == Turn::kPainterColor && painter_) {
      apply_color(painter_->choose_color(state_), true);
    }
  }

  std::string id_;
  Side human_;
  TargetSpec target_ = TargetSpec::clique(2);
  std::string engine_id_;
  std::unique_ptr<BuilderStrategy> builder_;
  std::unique_ptr<PainterStrategy> painter_;
  std::shared_ptr<const Pattern> pattern_;
  ColoredGraphState state_;
  Turn turn_ = Turn::kBuilderDraw;
  std::optional<long long> budget_;
  std::vector<TranscriptEntry> transcript_;
  std::optional<Side> winner_;
  std::optional<MonoCopy> mono_;
  std::string end_reason_;
  std::string rationale_;
  std::chrono::system_clock::time_point created_, updated_;
};

/// Functional form: returns the session after the move and the engine reply.
inline GameSession session_step(GameSession session, const SessionMove& move) {
  session.step(move);
  return session;
}

/// Thread-safe in-memory store. Requests on one session are serialised;
/// a request that finds the session busy fails instead of queueing.
class SessionStore {
 public:
  explicit SessionStore(std::string log_path = {}) : log_path_(std::move(log_path)), rng_(std::random_device{}()) {}

  nlohmann::json create(const SessionConfig& cfg) {
    std::string id = fresh_id();
    auto entry = std::make_shared<Slot>(GameSession(id, cfg));
    auto snap = entry->session.snapshot();
    {
      std::lock_guard lock(mutex_);
      sessions_.emplace(id, entry);
    }
    log("create", snap);
    return snap;
  }

  nlohmann::json get(const std::string& id) {
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    return slot->session.snapshot();
  }

  nlohmann::json move(const std::string& id, const SessionMove& m) {
    auto slot = find(id);
    std::unique_lock lock(slot->mutex, std::try_to_lock);
    if (!lock.owns_lock()) throw Error(ErrorCode::kBusy, "another request on this session is in flight");
    slot->session.step(m);
    auto snap = slot->session.snapshot();
    log("move", snap);
    return snap;
  }

  /// Throws unknown-session without waiting on the session lock.
  void require(const std::string& id) { find(id); }

  /// Exclusive hold on one session, the same one a move request takes.
  /// Moves arriving while it is held fail with busy. The hold ends when the
  /// last copy of the handle is dropped.
  std::shared_ptr<const void> hold(const std::string& id) {
    auto slot = find(id);
    slot->mutex.lock();
    return std::shared_ptr<const void>(slot.get(), [slot](const void*) { slot->mutex.unlock(); });
  }

  void erase(const std::string& id) {
    std::lock_guard lock(mutex_);
    if (!sessions_.erase(id)) throw Error(ErrorCode::kUnknownSession, id);
    log("delete", {{"id", id}});
  }

  std::size_t size() {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

 private:
  struct Slot {
    explicit Slot(GameSession s) : session(std::move(s)) {}
    std::mutex mutex;
    GameSession session;
  };

  std::shared_ptr<Slot> find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::kUnknownSession, "no session '" + id + "'");
    return it->second;
  }

  std::string fresh_id() {
    std::lock_guard lock(mutex_);
    static const char* hex = "0123456789abcdef";
    std::string id;
    do {
      id.clear();
      auto x = rng_();
      for (int i = 0; i < 16; ++i, x >>= 4) id += hex[x & 15];
    } while (sessions_.contains(id));
    return id;
  }

  void log(const char* event, const nlohmann::json& body) {
    if (log_path_.empty()) return;
    std::lock_guard lock(log_mutex_);
    std::ofstream out(log_path_, std::ios::app);
    out << nlohmann::json{{"v", 1}, {"event", event}, {"at", iso_time(std::chrono::system_clock::now())}, {"body", body}}
               .dump()
        << '\n';
  }

  std::string log_path_;
  std::mutex mutex_;
  std::mutex log_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mt19937_64 rng_;
};

}  // namespace olr
