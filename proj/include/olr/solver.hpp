#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "olr/canonical.hpp"
#include "olr/embedding.hpp"
#include "olr/error.hpp"
#include "olr/graph.hpp"
#include "olr/target.hpp"

namespace olr {

/// Dense board for the solver: at most 32 vertices, colours 1..q.
class SmallBoard {
 public:
  static constexpr int kMaxVertices = 32;

  explicit SmallBoard(int q = 2) : q_(q) {
    cells_.fill(0);
    for (auto& row : masks_) row.fill(0);
    any_.fill(0);
    active_.fill(0);
  }

  int q() const noexcept { return q_; }
  std::size_t vertex_count() const noexcept { return std::size_t(n_); }
  int edge_count() const noexcept { return edges_; }

  Color color(Vertex u, Vertex v) const {
    const auto c = cells_[u * kMaxVertices + v];
    return c ? Color(c) : kNoEdge;
  }

  template <typename F>
  void for_each_neighbor(Vertex v, F&& f) const {
    for (std::uint32_t bits = any_[v]; bits; bits &= bits - 1) {
      const auto w = Vertex(std::countr_zero(bits));
      f(w, Color(cells_[v * kMaxVertices + w]));
    }
  }

  std::uint32_t mask(Color c, Vertex v) const { return masks_[c][v]; }
  std::uint32_t neighbors(Vertex v) const { return any_[v]; }
  /// Vertices with at least one edge of colour c.
  std::uint32_t active(Color c) const { return active_[c]; }

  /// Adds edge {u, v} in colour c; u or v may be the next unused index.
  void add_edge(Vertex u, Vertex v, Color c) {
    const int top = int(std::max(u, v)) + 1;
    if (top > kMaxVertices) throw Error(ErrorCode::kEnvelopeExceeded, "solver board is limited to 32 vertices");
    n_ = std::max(n_, top);
    cells_[u * kMaxVertices + v] = cells_[v * kMaxVertices + u] = c;
    masks_[c][u] |= 1U << v;
    masks_[c][v] |= 1U << u;
    any_[u] |= 1U << v;
    any_[v] |= 1U << u;
    active_[c] |= (1U << u) | (1U << v);
    ++edges_;
  }

  ColorMatrix matrix(int extra = 0) const {
    ColorMatrix m(n_ + extra, q_);
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (auto c = cells_[u * kMaxVertices + v]) m.set(u, v, c);
    return m;
  }

  /// Board relabelled by a canonical form.
  SmallBoard relabel(const CanonicalForm& form) const {
    SmallBoard out(q_);
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (auto c = cells_[u * kMaxVertices + v])
          out.add_edge(Vertex(form.labeling[u]), Vertex(form.labeling[v]), form.color_map[c]);
    out.n_ = n_;
    return out;
  }

 private:
  int q_;
  int n_ = 0;
  int edges_ = 0;
  std::array<std::uint8_t, kMaxVertices * kMaxVertices> cells_;
  std::array<std::array<std::uint32_t, kMaxVertices>, kMaxColors + 1> masks_;
  std::array<std::uint32_t, kMaxVertices> any_;
  std::array<std::uint32_t, kMaxColors + 1> active_;
};

/// Deficit bookkeeping for the lower bound. overlap[c] is the largest number
/// of target edges that can sit on existing c-edges in a placement of the
/// target whose other edges land on non-edges (or fresh vertices). Painter
/// can put up to (E - overlap[c]) - 1 further edges into each colour c
/// without completing a copy, so Builder needs at least
/// 1 + sum_c (E - overlap[c] - 1) more edges.
class OverlapOracle {
 public:
  explicit OverlapOracle(const TargetSpec& target) : pattern_(target), edges_(int(target.edge_count())) {}

  int target_edges() const noexcept { return edges_; }
  const Pattern& pattern() const noexcept { return pattern_; }

  /// Largest overlap over all placements, by exhaustive search.
  int max_overlap(const SmallBoard& b, Color c) const {
    const auto& order = pattern_.order(0, false);
    Search s{*this, b, c, order, {}, edges_, 0};
    s.phi.fill(kFresh);
    s.run(0, 0, 0);
    return s.best;
  }

  /// Whether some placement using board edge {u, v} (coloured c) reaches
  /// overlap >= need. Placements not using {u, v} are not considered.
  bool overlap_through(const SmallBoard& b, Color c, Vertex u, Vertex v, int need) const {
    const auto& edges = pattern_.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      for (bool flip : {false, true}) {
        const auto& order = pattern_.order(e, flip);
        // seeded just below the goal so the bound prunes toward it
        Search s{*this, b, c, order, {}, need, need - 1};
        s.phi.fill(kFresh);
        s.phi[order[0].vertex] = u;
        s.phi[order[1].vertex] = v;
        if (s.run(2, 1, (1U << u) | (1U << v))) return true;
      }
    }
    return false;
  }

 private:
  struct Search {
    const OverlapOracle& self;
    const SmallBoard& b;
    Color c;
    const std::vector<Pattern::Step>& order;
    std::array<Vertex, 16> phi;
    int need;  // stop once reached
    int best;

    /// Adds edges from order[i] (placed at w) to earlier placed vertices.
    bool tally(std::size_t i, Vertex w, int& count) const {
      const auto& step = order[i];
      auto check = [&](int x) {
        const Vertex y = phi[x];
        if (y == kFresh) return true;
        const Color col = b.color(y, w);
        if (col == kNoEdge) return true;
        if (col != c) return false;
        ++count;
        return true;
      };
      if (step.parent >= 0 && !check(step.parent)) return false;
      for (int x : step.checks)
        if (!check(x)) return false;
      return true;
    }

    int undecided(std::size_t i) const {
      // target edges with an endpoint at order position >= i
      int r = 0;
      for (std::size_t j = i; j < order.size(); ++j) r += (order[j].parent >= 0 ? 1 : 0) + int(order[j].checks.size());
      return r;
    }

    bool run(std::size_t i, int count, std::uint32_t used_now) {
      best = std::max(best, count);
      if (best >= need) return true;
      if (i == order.size()) return false;
      if (count + undecided(i) <= best) return false;
      const int v = order[i].vertex;
      // fresh placement contributes nothing but is always allowed
      phi[v] = kFresh;
      if (run(i + 1, count, used_now)) return true;
      for (std::uint32_t cand = b.active(c) & ~used_now; cand; cand &= cand - 1) {
        const auto w = Vertex(std::countr_zero(cand));
        int next = count;
        phi[v] = w;
        if (tally(i, w, next) && run(i + 1, next, used_now | (1U << w))) return true;
      }
      phi[v] = kFresh;
      return false;
    }
  };

  Pattern pattern_;
  int edges_;
};

struct SolverOptions {
  int max_budget = 12;
  bool use_table = true;
  bool use_lower_bound = true;
  bool color_symmetric = true;  // only honoured for colour-agnostic targets
  bool certificates = true;
  int threads = 1;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
  std::uint64_t table_entries = 0;
  int depth = 0;
  double seconds = 0;
};

/// Policy maps keyed by canonical-key hex. Builder moves are in canonical
/// coordinates of the board (index >= n means a fresh vertex); painter
/// colours are in the canonical colour space of the board with the pending
/// edge marked.
struct Certificate {
  std::map<std::string, std::pair<int, int>> builder;
  std::map<std::string, int> painter;
  int builder_budget = 0;
  int painter_budget = 0;
};

struct SolveResult {
  TargetSpec target = TargetSpec::clique(2);
  std::optional<int> value;  // empty: only lower_bound is known
  int lower_bound = 0;
  bool color_symmetric = true;
  Certificate certificate;
  SolveStats stats;

  bool has_value() const noexcept { return value.has_value(); }
};

namespace detail {

struct Move {
  std::uint8_t u = 0;
  std::uint8_t v = 0;
};

struct TableEntry {
  std::int8_t min_win = std::numeric_limits<std::int8_t>::max();
  std::int8_t max_lose = -1;
  Move move;
};

/// Transposition table keyed by canonical board bytes. Sharded locks let
/// root-parallel workers share it; values for a key are unique, so racing
/// writers only ever tighten the same bounds.
class TranspositionTable {
 public:
  std::optional<TableEntry> find(const std::string& key) const {
    auto& shard = shards_[std::hash<std::string>{}(key) % kShards];
    std::lock_guard lock(shard.mutex);
    auto it = shard.map.find(key);
    if (it == shard.map.end()) return std::nullopt;
    return it->second;
  }

  void record_win(const std::string& key, int k, Move move) {
    auto& shard = shards_[std::hash<std::string>{}(key) % kShards];
    std::lock_guard lock(shard.mutex);
    auto& e = shard.map[key];
    if (k < e.min_win) {
      e.min_win = std::int8_t(k);
      e.move = move;
    }
  }

  void record_loss(const std::string& key, int k) {
    auto& shard = shards_[std::hash<std::string>{}(key) % kShards];
    std::lock_guard lock(shard.mutex);
    auto& e = shard.map[key];
    e.max_lose = std::max<std::int8_t>(e.max_lose, std::int8_t(k));
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto& s : shards_) {
      std::lock_guard lock(s.mutex);
      n += s.map.size();
    }
    return n;
  }

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    mutable std::mutex mutex;
    std::unordered_map<std::string, TableEntry> map;
  };
  mutable std::array<Shard, kShards> shards_;
};

}  // namespace detail

/// Exact r-tilde by iterative deepening on Builder's edge budget.
class Solver {
 public:
  Solver(TargetSpec target, SolverOptions options = {})
      : target_(std::move(target)), options_(options), overlap_(target_), q_(target_.q()) {
    if (target_.vertex_count() > 10) throw Error(ErrorCode::kEnvelopeExceeded, "solver targets are limited to 10 vertices");
    if (options_.max_budget < 1 || 2 * options_.max_budget > SmallBoard::kMaxVertices) {
      throw Error(ErrorCode::kEnvelopeExceeded, "max_budget must be in 1..16");
    }
    symmetric_ = options_.color_symmetric && target_.color_agnostic();
  }

  const TargetSpec& target() const noexcept { return target_; }
  const SolverOptions& options() const noexcept { return options_; }
  bool color_symmetric() const noexcept { return symmetric_; }

  SolveResult solve() {
    const auto start = std::chrono::steady_clock::now();
    SolveResult result;
    result.target = target_;
    result.color_symmetric = symmetric_;
    Node root = make_node(SmallBoard(q_));
    int k = options_.use_lower_bound ? lower_bound(root) : 1;
    result.lower_bound = k;
    for (; k <= options_.max_budget; ++k) {
      if (search(root, k, 0)) {
        result.value = k;
        break;
      }
      result.lower_bound = k + 1;
    }
    if (result.value) result.lower_bound = *result.value;
    if (result.value && options_.certificates) {
      result.certificate.builder_budget = *result.value;
      result.certificate.painter_budget = *result.value - 1;
      std::unordered_set<std::string> seen;
      builder_certificate(root.board, *result.value, result.certificate, seen);
      seen.clear();
      if (*result.value > 1) painter_certificate(root.board, *result.value - 1, result.certificate, seen);
    }
    result.stats = stats();
    result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

  /// Least number of further edges Builder needs from a fully coloured
  /// state, or nothing if more than `limit`.
  std::optional<int> edges_needed(const ColoredGraphState& state, int limit) {
    if (state.has_pending()) throw Error(ErrorCode::kPendingEdge, "edges_needed expects a fully coloured state");
    if (find_mono_copy(state, overlap_.pattern(), q_)) return 0;
    Node node = make_node(to_board(state, limit));
    for (int k = options_.use_lower_bound ? lower_bound(node) : 1; k <= limit; ++k)
      if (search(node, k, 0)) return k;
    return std::nullopt;
  }

  /// A Builder move that forces a copy within the fewest further edges (at
  /// most `limit`), in the coordinates of `state`; fresh vertices are
  /// numbered from state.vertex_count().
  std::optional<VertexPair> winning_move(const ColoredGraphState& state, int limit) {
    if (state.has_pending()) throw Error(ErrorCode::kPendingEdge, "winning_move expects a fully coloured state");
    std::vector<Vertex> back;
    for (Vertex v = 0; v < state.vertex_count(); ++v)
      if (state.degree(v) > 0) back.push_back(v);
    Node node = make_node(to_board(state, limit));
    for (int k = options_.use_lower_bound ? lower_bound(node) : 1; k <= limit; ++k) {
      auto mv = search(node, k, 0);
      if (!mv) continue;
      // search works on the canonical relabelling; undo it
      const CanonicalForm form = canonical_form(node.board.matrix(), symmetric_);
      const int n = int(node.board.vertex_count());
      std::vector<Vertex> from_canon(n);
      for (int v = 0; v < n; ++v) from_canon[form.labeling[v]] = back[v];
      const Vertex fresh = state.vertex_count();
      auto lift = [&](int x) { return x < n ? from_canon[x] : Vertex(fresh + (x - n)); };
      return VertexPair::of(lift(mv->u), lift(mv->v));
    }
    return std::nullopt;
  }

  /// Painter's best colour for the pending edge: the one after which Builder
  /// needs the most further edges (survival within `remaining` counts as
  /// infinitely many). Ties go to the lowest colour.
  Color best_color(const ColoredGraphState& state, int remaining) {
    if (!state.has_pending()) throw Error(ErrorCode::kNoPendingEdge, "best_color needs a pending edge");
    Color best = 1;
    int best_need = -1;
    for (Color c = 1; c <= q_; ++c) {
      auto child = state;
      child.paint(c);
      int need;
      if (find_copy_through(child, overlap_.pattern(), state.pending()->u, state.pending()->v, c)) {
        need = 0;
      } else {
        auto k = edges_needed(child, std::max(remaining, 0));
        need = k ? *k : std::numeric_limits<int>::max();
      }
      if (need > best_need) {
        best_need = need;
        best = c;
      }
    }
    return best;
  }

  SolveStats stats() const {
    SolveStats s;
    s.nodes = nodes_.load();
    s.table_hits = hits_.load();
    s.table_entries = table_.size();
    s.depth = depth_.load();
    return s;
  }

 private:
  struct Node {
    SmallBoard board;
    std::array<int, kMaxColors + 1> overlap{};
  };

  struct Candidate {
    detail::Move move;
    std::array<int, kMaxColors + 1> child_overlap{};
    std::array<bool, kMaxColors + 1> mono{};
  };

  SmallBoard to_board(const ColoredGraphState& state, int budget) const {
    // isolated vertices never matter; drop them and compact the labels
    std::vector<int> id(state.vertex_count(), -1);
    int next = 0;
    for (Vertex v = 0; v < state.vertex_count(); ++v)
      if (state.degree(v) > 0) id[v] = next++;
    if (next + 2 * budget > SmallBoard::kMaxVertices) {
      throw Error(ErrorCode::kEnvelopeExceeded, "state too large for the exact solver");
    }
    SmallBoard b(q_);
    for (const auto& e : state.edges()) {
      if (e.color == kUncolored) continue;
      b.add_edge(Vertex(id[e.u]), Vertex(id[e.v]), e.color);
    }
    return b;
  }

  Node make_node(SmallBoard board) const {
    Node n{std::move(board), {}};
    for (Color c = 1; c <= q_; ++c) n.overlap[c] = overlap_.max_overlap(n.board, c);
    return n;
  }

  int lower_bound(const std::array<int, kMaxColors + 1>& overlap) const {
    const int e = overlap_.target_edges();
    int lb = 1;
    for (Color c = 1; c <= q_; ++c) lb += std::max(0, e - overlap[c] - 1);
    return lb;
  }
  int lower_bound(const Node& n) const { return lower_bound(n.overlap); }

  /// Candidate moves on a canonical board, reduced by twin classes.
  std::vector<detail::Move> raw_moves(const SmallBoard& b, int k) const {
    const int n = int(b.vertex_count());
    std::vector<int> rep(n);
    for (int v = 0; v < n; ++v) {
      rep[v] = v;
      for (int u = 0; u < v; ++u) {
        if (rep[u] != u) continue;
        bool twin = true;
        for (int x = 0; x < n && twin; ++x)
          if (x != u && x != v && b.color(Vertex(u), Vertex(x)) != b.color(Vertex(v), Vertex(x))) twin = false;
        if (twin) {
          rep[v] = u;
          break;
        }
      }
    }
    std::vector<detail::Move> out;
    for (int u = 0; u < n; ++u) {
      if (rep[u] != u) continue;
      for (int v = u + 1; v < n; ++v) {
        if (b.color(Vertex(u), Vertex(v)) != kNoEdge) continue;
        // v must be the first member of its class other than u
        bool first = true;
        for (int w = 0; w < v && first; ++w)
          if (w != u && rep[w] == rep[v]) first = false;
        if (first) out.push_back({std::uint8_t(u), std::uint8_t(v)});
      }
      if (n + 1 + 2 * (k - 1) <= SmallBoard::kMaxVertices) out.push_back({std::uint8_t(u), std::uint8_t(n)});
    }
    if (n + 2 + 2 * (k - 1) <= SmallBoard::kMaxVertices) out.push_back({std::uint8_t(n), std::uint8_t(n + 1)});
    return out;
  }

  std::optional<detail::Move> search(const Node& node, int k, int depth) {
    return search_impl(node, k, depth);
  }

  std::optional<detail::Move> search_impl(const Node& node, int k, int depth) {
    ++nodes_;
    for (int d = depth_.load(); d < depth && !depth_.compare_exchange_weak(d, depth);) {
    }
    if (k <= 0) return std::nullopt;
    if (options_.use_lower_bound && lower_bound(node) > k) return std::nullopt;

    const CanonicalForm form = canonical_form(node.board.matrix(), symmetric_);
    Node canon{node.board.relabel(form), {}};
    for (Color c = 1; c <= q_; ++c) canon.overlap[form.color_map[c]] = node.overlap[c];
    const std::string& key = form.key.bytes();

    const bool tabled = options_.use_table && k >= 2;
    if (tabled) {
      if (auto e = table_.find(key)) {
        if (e->min_win <= k) {
          ++hits_;
          return e->move;
        }
        if (e->max_lose >= k) {
          ++hits_;
          return std::nullopt;
        }
      }
    }

    std::vector<Candidate> viable;
    for (auto mv : raw_moves(canon.board, k)) {
      Candidate cand{mv, canon.overlap, {}};
      bool ok = true;
      for (Color c = 1; c <= q_ && ok; ++c) {
        SmallBoard child = canon.board;
        child.add_edge(mv.u, mv.v, c);
        const int e = overlap_.target_edges();
        if (overlap_.overlap_through(child, c, mv.u, mv.v, canon.overlap[c] + 1)) cand.child_overlap[c] = canon.overlap[c] + 1;
        if (cand.child_overlap[c] >= e) {
          cand.mono[c] = true;
          continue;
        }
        if (k == 1) ok = false;
        else if (options_.use_lower_bound && lower_bound(cand.child_overlap) > k - 1) ok = false;
      }
      if (ok) viable.push_back(cand);
    }

    // exact orbit dedupe among survivors
    if (viable.size() > 1) {
      std::unordered_set<std::string> seen;
      std::vector<Candidate> unique;
      const int n = int(canon.board.vertex_count());
      for (auto& cand : viable) {
        const int extra = std::max(0, int(cand.move.v) + 1 - n);
        ColorMatrix marked = canon.board.matrix(extra);
        marked.set(cand.move.u, cand.move.v, std::uint8_t(q_ + 1));
        if (seen.insert(canonical_form(marked, symmetric_).key.bytes()).second) unique.push_back(cand);
      }
      viable = std::move(unique);
    }

    if (depth == 0 && options_.threads > 1 && viable.size() > 1) {
      // root split: workers take candidates in order; the lowest winning
      // index is kept so the chosen move does not depend on scheduling
      std::atomic<std::size_t> next{0};
      std::atomic<std::size_t> best{viable.size()};
      auto work = [&]() {
        for (std::size_t i = next++; i < viable.size(); i = next++) {
          if (i > best.load()) break;
          if (candidate_wins(canon, viable[i], k, depth)) {
            for (std::size_t b = best.load(); i < b && !best.compare_exchange_weak(b, i);) {
            }
          }
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < options_.threads; ++t) pool.emplace_back(work);
      work();
      for (auto& th : pool) th.join();
      if (best.load() < viable.size()) {
        if (tabled) table_.record_win(key, k, viable[best.load()].move);
        return viable[best.load()].move;
      }
      if (tabled) table_.record_loss(key, k);
      return std::nullopt;
    }

    for (const auto& cand : viable) {
      if (candidate_wins(canon, cand, k, depth)) {
        if (tabled) table_.record_win(key, k, cand.move);
        return cand.move;
      }
    }
    if (tabled) table_.record_loss(key, k);
    return std::nullopt;
  }

  /// True if Builder wins in k after playing `cand` from `canon`.
  bool candidate_wins(const Node& canon, const Candidate& cand, int k, int depth) {
    std::vector<Color> order;
    for (Color c = 1; c <= q_; ++c)
      if (!cand.mono[c]) order.push_back(c);
    // likeliest refutation first: the colour leaving Builder the most to do
    std::stable_sort(order.begin(), order.end(), [&](Color a, Color b) {
      return cand.child_overlap[a] < cand.child_overlap[b];
    });
    bool all = true;
    for (Color c : order) {
      Node child{canon.board, canon.overlap};
      child.board.add_edge(cand.move.u, cand.move.v, c);
      child.overlap[c] = cand.child_overlap[c];
      if (!search_impl(child, k - 1, depth + 1)) {
        all = false;
        break;
      }
    }
    return all;
  }

  void builder_certificate(const SmallBoard& board, int k, Certificate& cert, std::unordered_set<std::string>& seen) {
    const CanonicalForm form = canonical_form(board.matrix(), symmetric_);
    if (!seen.insert(form.key.bytes()).second) return;
    Node canon = make_node(board.relabel(form));
    auto mv = search(canon, k, 0);
    if (!mv) throw Error(ErrorCode::kCertificateInvalid, "solver lost a winning position while building certificate");
    cert.builder[form.key.hex()] = {mv->u, mv->v};
    for (Color c = 1; c <= q_; ++c) {
      SmallBoard child = canon.board;
      child.add_edge(mv->u, mv->v, c);
      if (find_copy_through(child, overlap_.pattern(), mv->u, mv->v, c)) continue;
      builder_certificate(child, k - 1, cert, seen);
    }
  }

  void painter_certificate(const SmallBoard& board, int k, Certificate& cert, std::unordered_set<std::string>& seen) {
    const CanonicalForm form = canonical_form(board.matrix(), symmetric_);
    if (!seen.insert(form.key.bytes()).second) return;
    const SmallBoard canon = board.relabel(form);
    const int n = int(canon.vertex_count());
    std::vector<std::pair<int, int>> moves;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v)
        if (canon.color(Vertex(u), Vertex(v)) == kNoEdge) moves.emplace_back(u, v);
      moves.emplace_back(u, n);
    }
    moves.emplace_back(n, n + 1);
    std::unordered_set<std::string> done;
    for (auto [u, v] : moves) {
      ColorMatrix marked = canon.matrix(std::max(0, v + 1 - n));
      marked.set(u, v, std::uint8_t(q_ + 1));
      const CanonicalForm mform = canonical_form(marked, symmetric_);
      if (!done.insert(mform.key.bytes()).second) continue;
      std::optional<Color> pick;
      SmallBoard chosen;
      // lowest canonical colour that keeps Builder from winning
      std::vector<Color> by_canon;
      for (Color c = 1; c <= q_; ++c) by_canon.push_back(c);
      std::sort(by_canon.begin(), by_canon.end(),
                [&](Color a, Color b) { return mform.color_map[a] < mform.color_map[b]; });
      for (Color c : by_canon) {
        SmallBoard child = canon;
        child.add_edge(Vertex(u), Vertex(v), c);
        if (find_copy_through(child, overlap_.pattern(), Vertex(u), Vertex(v), c)) continue;
        if (k - 1 > 0 && search(make_node(child), k - 1, 0)) continue;
        pick = c;
        chosen = child;
        break;
      }
      if (!pick) throw Error(ErrorCode::kCertificateInvalid, "no surviving colour while building painter certificate");
      cert.painter[mform.key.hex()] = mform.color_map[*pick];
      if (k - 1 > 0) painter_certificate(chosen, k - 1, cert, seen);
    }
  }

  TargetSpec target_;
  SolverOptions options_;
  OverlapOracle overlap_;
  int q_;
  bool symmetric_ = true;
  detail::TranspositionTable table_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<int> depth_{0};
};

inline SolveResult solve(const TargetSpec& target, SolverOptions options = {}) { return Solver(target, options).solve(); }

struct CertificateReport {
  bool builder_ok = false;
  bool painter_ok = false;
  std::size_t builder_states = 0;
  std::size_t painter_states = 0;
  std::string message;
  bool ok() const { return builder_ok && painter_ok; }
};

namespace detail {

inline CanonicalForm marked_form(const ColoredGraphState& s, Vertex u, Vertex v, bool sym) {
  const int n = int(s.vertex_count());
  ColorMatrix m = to_color_matrix(s, s.q());
  m.grow(std::max(0, int(std::max(u, v)) + 1 - n));
  m.set(int(u), int(v), std::uint8_t(s.q() + 1));
  return canonical_form(m, sym);
}

inline void ensure_vertices(ColoredGraphState& s, Vertex upto) {
  while (s.vertex_count() <= upto) s.add_vertex();
}

}  // namespace detail

/// Replays both policies exhaustively on graph-core states: the builder map
/// against every painter colour sequence within `value` edges, the painter
/// map against every builder move within value - 1 edges. Positions are
/// memoized by canonical key, which is exact because both policies are
/// functions of the canonical position. Throws certificate-invalid on the
/// first failure.
inline CertificateReport verify_certificate(const SolveResult& result) {
  if (!result.value) throw Error(ErrorCode::kInvalidArgument, "certificate verification needs a value-form result");
  const auto& cert = result.certificate;
  const TargetSpec& target = result.target;
  const Pattern pattern(target);
  const int q = target.q();
  const bool sym = result.color_symmetric;
  CertificateReport report;

  std::unordered_set<std::string> seen;
  std::function<void(const ColoredGraphState&, int)> check_builder = [&](const ColoredGraphState& s, int k) {
    const CanonicalForm form = canonical_form(s, sym);
    if (!seen.insert(form.key.bytes()).second) return;
    ++report.builder_states;
    auto it = cert.builder.find(form.key.hex());
    if (it == cert.builder.end()) throw Error(ErrorCode::kCertificateInvalid, "builder certificate has no move for a reachable state");
    if (k < 1) throw Error(ErrorCode::kCertificateInvalid, "builder certificate ran out of budget");
    const int n = int(s.vertex_count());
    std::vector<Vertex> back(n);
    for (int v = 0; v < n; ++v) back[form.labeling[v]] = Vertex(v);
    auto lift = [&](int x, int fresh_offset) { return x < n ? back[x] : Vertex(n + fresh_offset); };
    const auto [a, b] = it->second;
    const Vertex u = lift(a, 0);
    const Vertex v = lift(b, a < n ? 0 : 1);
    if (u == v || (a >= n && b >= n && b != a + 1) || (a < n && b > n)) {
      throw Error(ErrorCode::kCertificateInvalid, "builder certificate move is malformed");
    }
    for (Color c = 1; c <= q; ++c) {
      ColoredGraphState child = s;
      detail::ensure_vertices(child, std::max(u, v));
      child.draw(u, v);  // throws on an illegal move
      child.paint(c);
      if (find_copy_through(child, pattern, u, v, c)) continue;
      if (k - 1 < 1) throw Error(ErrorCode::kCertificateInvalid, "painter survives the builder certificate");
      check_builder(child, k - 1);
    }
  };
  ColoredGraphState root(q);
  check_builder(root, cert.builder_budget);
  report.builder_ok = true;

  seen.clear();
  std::function<void(const ColoredGraphState&, int)> check_painter = [&](const ColoredGraphState& s, int k) {
    if (!seen.insert(canonical_form(s, sym).key.bytes()).second) return;
    ++report.painter_states;
    const int n = int(s.vertex_count());
    std::vector<std::pair<Vertex, Vertex>> moves;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v)
        if (!s.has_edge(Vertex(u), Vertex(v))) moves.emplace_back(Vertex(u), Vertex(v));
      moves.emplace_back(Vertex(u), Vertex(n));
    }
    moves.emplace_back(Vertex(n), Vertex(n + 1));
    for (auto [u, v] : moves) {
      const CanonicalForm mform = detail::marked_form(s, u, v, sym);
      auto it = cert.painter.find(mform.key.hex());
      if (it == cert.painter.end()) throw Error(ErrorCode::kCertificateInvalid, "painter certificate has no colour for a reachable move");
      Color c = 0;
      for (Color x = 1; x <= q; ++x)
        if (mform.color_map[x] == it->second) c = x;
      if (c == 0) throw Error(ErrorCode::kCertificateInvalid, "painter certificate colour out of range");
      ColoredGraphState child = s;
      detail::ensure_vertices(child, std::max(u, v));
      child.draw(u, v);
      child.paint(c);
      if (find_copy_through(child, pattern, u, v, c)) {
        throw Error(ErrorCode::kCertificateInvalid, "builder beats the painter certificate");
      }
      if (k - 1 > 0) check_painter(child, k - 1);
    }
  };
  if (cert.painter_budget > 0) check_painter(root, cert.painter_budget);
  report.painter_ok = true;
  report.message = "builder certificate wins within " + std::to_string(cert.builder_budget) +
                   " edges; painter certificate survives " + std::to_string(cert.painter_budget) + " edges";
  return report;
}

inline nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json b = nlohmann::json::object();
  for (const auto& [k, mv] : cert.builder) b[k] = {mv.first, mv.second};
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [k, c] : cert.painter) p[k] = c;
  return {{"v", 1}, {"builder_budget", cert.builder_budget}, {"painter_budget", cert.painter_budget}, {"builder", b}, {"painter", p}};
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate cert;
  try {
    cert.builder_budget = j.at("builder_budget").get<int>();
    cert.painter_budget = j.at("painter_budget").get<int>();
    for (const auto& [k, mv] : j.at("builder").items()) cert.builder[k] = {mv.at(0).get<int>(), mv.at(1).get<int>()};
    for (const auto& [k, c] : j.at("painter").items()) cert.painter[k] = c.get<int>();
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("certificate: ") + ex.what());
  }
  return cert;
}

inline nlohmann::json to_json(const SolveResult& r, bool with_certificate = false) {
  nlohmann::json j{{"v", 1},
                   {"target", r.target.name()},
                   {"q", r.target.q()},
                   {"value", r.value ? nlohmann::json(*r.value) : nlohmann::json(nullptr)},
                   {"lower_bound", r.lower_bound},
                   {"color_symmetric", r.color_symmetric},
                   {"stats",
                    {{"nodes", r.stats.nodes},
                     {"table_hits", r.stats.table_hits},
                     {"table_entries", r.stats.table_entries},
                     {"depth", r.stats.depth},
                     {"seconds", r.stats.seconds}}},
                   {"certificate_size", {{"builder", r.certificate.builder.size()}, {"painter", r.certificate.painter.size()}}}};
  if (with_certificate) j["certificate"] = to_json(r.certificate);
  return j;
}

}  // namespace olr
