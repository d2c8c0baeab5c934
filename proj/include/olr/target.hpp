#pragma once

#include <algorithm>
#include <charconv>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "olr/error.hpp"

namespace olr {

enum class TargetKind { kClique, kPath, kBiclique, kArbitrary };

/// The graph G Painter must avoid in every colour, plus the colour count.
///
/// Text form: "K4" (clique), "P5" (path on 5 vertices), "K3,3" (biclique),
/// "G:0-1,1-2,2-0" (arbitrary, vertices numbered from 0).
class TargetSpec {
 public:
  static constexpr int kArbitraryVertexGuard = 10;

  static TargetSpec clique(int t, int q = 2) { return TargetSpec(TargetKind::kClique, t, {}, q); }
  static TargetSpec path(int n, int q = 2) { return TargetSpec(TargetKind::kPath, n, {}, q); }
  static TargetSpec biclique(int t, int q = 2) { return TargetSpec(TargetKind::kBiclique, t, {}, q); }
  static TargetSpec arbitrary(std::vector<std::pair<int, int>> edges, int q = 2, bool relax_guard = false) {
    TargetSpec spec(TargetKind::kArbitrary, 0, std::move(edges), q);
    spec.validate_arbitrary(relax_guard);
    return spec;
  }

  TargetKind kind() const noexcept { return kind_; }
  /// t for cliques and bicliques, n for paths, vertex count for arbitrary targets.
  int size() const noexcept { return size_; }
  int q() const noexcept { return q_; }

  /// Every target here is "a copy of G in any single colour", so the game
  /// value is invariant under permuting colours.
  bool color_agnostic() const noexcept { return true; }

  int vertex_count() const {
    switch (kind_) {
      case TargetKind::kClique:
      case TargetKind::kPath:
      case TargetKind::kArbitrary: return size_;
      case TargetKind::kBiclique: return 2 * size_;
    }
    return 0;
  }

  /// Edge list with a fixed order: every prefix of a path, clique or
  /// biclique edge list is connected, which the prefix-threat metric uses.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    switch (kind_) {
      case TargetKind::kClique:
        for (int j = 1; j < size_; ++j)
          for (int i = 0; i < j; ++i) out.emplace_back(i, j);
        break;
      case TargetKind::kPath:
        for (int i = 0; i + 1 < size_; ++i) out.emplace_back(i, i + 1);
        break;
      case TargetKind::kBiclique:
        // sides {0..t-1} and {t..2t-1}, grown as nested squares
        for (int k = 0; k < size_; ++k) {
          for (int i = 0; i < k; ++i) out.emplace_back(i, size_ + k);
          for (int j = 0; j <= k; ++j) out.emplace_back(k, size_ + j);
        }
        break;
      case TargetKind::kArbitrary: out = arbitrary_edges_; break;
    }
    return out;
  }

  std::size_t edge_count() const {
    switch (kind_) {
      case TargetKind::kClique: return std::size_t(size_) * (size_ - 1) / 2;
      case TargetKind::kPath: return std::size_t(size_ - 1);
      case TargetKind::kBiclique: return std::size_t(size_) * size_;
      case TargetKind::kArbitrary: return arbitrary_edges_.size();
    }
    return 0;
  }

  std::string name() const {
    switch (kind_) {
      case TargetKind::kClique: return "K" + std::to_string(size_);
      case TargetKind::kPath: return "P" + std::to_string(size_);
      case TargetKind::kBiclique: return "K" + std::to_string(size_) + "," + std::to_string(size_);
      case TargetKind::kArbitrary: {
        std::string s = "G:";
        for (std::size_t i = 0; i < arbitrary_edges_.size(); ++i) {
          if (i) s += ',';
          s += std::to_string(arbitrary_edges_[i].first) + "-" + std::to_string(arbitrary_edges_[i].second);
        }
        return s;
      }
    }
    return {};
  }

  TargetSpec with_q(int q) const {
    TargetSpec copy = *this;
    copy.q_ = q;
    copy.check_q();
    return copy;
  }

  friend bool operator==(const TargetSpec&, const TargetSpec&) = default;

 private:
  TargetSpec(TargetKind kind, int size, std::vector<std::pair<int, int>> edges, int q)
      : kind_(kind), size_(size), q_(q), arbitrary_edges_(std::move(edges)) {
    check_q();
    if (kind_ == TargetKind::kPath && size_ < 2) throw Error(ErrorCode::kInvalidArgument, "path needs n >= 2");
    if ((kind_ == TargetKind::kClique || kind_ == TargetKind::kBiclique) && size_ < 2) {
      throw Error(ErrorCode::kInvalidArgument, "clique and biclique targets need t >= 2");
    }
  }

  void check_q() const {
    if (q_ < 2 || q_ > 8) throw Error(ErrorCode::kInvalidArgument, "q must be in 2..8");
  }

  void validate_arbitrary(bool relax_guard) {
    if (arbitrary_edges_.empty()) throw Error(ErrorCode::kInvalidArgument, "arbitrary target needs an edge");
    int n = 0;
    for (auto& [a, b] : arbitrary_edges_) {
      if (a < 0 || b < 0 || a == b) throw Error(ErrorCode::kInvalidArgument, "bad target edge");
      if (a > b) std::swap(a, b);
      n = std::max(n, b + 1);
    }
    auto sorted = arbitrary_edges_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate target edge");
    }
    if (!relax_guard && n > kArbitraryVertexGuard) {
      throw Error(ErrorCode::kInvalidArgument, "arbitrary targets are limited to 10 vertices");
    }
    // connected, no isolated vertices
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [a, b] : arbitrary_edges_) parent[find(a)] = find(b);
    for (int v = 0; v < n; ++v) {
      if (find(v) != find(0)) throw Error(ErrorCode::kInvalidArgument, "arbitrary target must be connected");
    }
    size_ = n;
  }

  TargetKind kind_;
  int size_;
  int q_;
  std::vector<std::pair<int, int>> arbitrary_edges_;
};

namespace detail {
inline int parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, "expected integer, got '" + std::string(s) + "'");
  }
  return value;
}
}  // namespace detail

inline TargetSpec parse_target(std::string_view text, int q = 2) {
  if (text.size() < 2) throw Error(ErrorCode::kParse, "target '" + std::string(text) + "'");
  if (text.starts_with("G:")) {
    std::vector<std::pair<int, int>> edges;
    std::string_view rest = text.substr(2);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto item = rest.substr(0, comma);
      auto dash = item.find('-');
      if (dash == std::string_view::npos) throw Error(ErrorCode::kParse, "edge '" + std::string(item) + "'");
      edges.emplace_back(detail::parse_int(item.substr(0, dash)), detail::parse_int(item.substr(dash + 1)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return TargetSpec::arbitrary(std::move(edges), q);
  }
  const char head = text.front();
  auto body = text.substr(1);
  if (head == 'P' || head == 'p') return TargetSpec::path(detail::parse_int(body), q);
  if (head == 'K' || head == 'k') {
    auto comma = body.find(',');
    if (comma == std::string_view::npos) return TargetSpec::clique(detail::parse_int(body), q);
    int a = detail::parse_int(body.substr(0, comma));
    int b = detail::parse_int(body.substr(comma + 1));
    if (a != b) throw Error(ErrorCode::kParse, "only balanced bicliques K_{t,t} are supported");
    return TargetSpec::biclique(a, q);
  }
  throw Error(ErrorCode::kParse, "target '" + std::string(text) + "'");
}

}  // namespace olr
