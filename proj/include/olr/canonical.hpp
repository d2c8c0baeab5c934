#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "olr/embedding.hpp"
#include "olr/graph.hpp"

namespace olr {

/// Dense colour matrix used for canonical labeling. Cell values: 0 no edge,
/// 1..q colours (permuted under colour symmetry), q+1.. fixed markers.
struct ColorMatrix {
  int n = 0;
  int q = 2;
  std::vector<std::uint8_t> cells;

  ColorMatrix() = default;
  ColorMatrix(int vertex_count, int colors) : n(vertex_count), q(colors), cells(std::size_t(n) * n, 0) {}

  std::uint8_t at(int i, int j) const { return cells[std::size_t(i) * n + j]; }
  void set(int i, int j, std::uint8_t c) { cells[std::size_t(i) * n + j] = cells[std::size_t(j) * n + i] = c; }
  void grow(int extra) {
    ColorMatrix bigger(n + extra, q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) bigger.cells[std::size_t(i) * bigger.n + j] = at(i, j);
    *this = std::move(bigger);
  }
};

/// Isomorphism-invariant fingerprint of a coloured board (optionally also
/// invariant under colour permutations). Exact: equal keys iff isomorphic.
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const noexcept { return bytes_; }
  std::string hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes_.size() * 2);
    for (unsigned char b : bytes_) {
      out.push_back(kDigits[b >> 4]);
      out.push_back(kDigits[b & 15]);
    }
    return out;
  }

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  std::string bytes_;
};

struct CanonicalForm {
  CanonicalKey key;
  /// labeling[v] = canonical index of board vertex v.
  std::vector<int> labeling;
  /// color_map[c] = canonical colour of board colour c (identity on markers).
  std::array<std::uint8_t, 16> color_map{};
};

namespace detail {

class ComponentCanonizer {
 public:
  ComponentCanonizer(const ColorMatrix& m, const std::vector<int>& vertices, const std::array<std::uint8_t, 16>& cmap)
      : s_(int(vertices.size())), local_(std::size_t(s_) * s_) {
    for (int i = 0; i < s_; ++i)
      for (int j = 0; j < s_; ++j) local_[std::size_t(i) * s_ + j] = cmap[m.at(vertices[i], vertices[j])];
  }

  /// Returns the canonical code; `order` receives position -> local index.
  std::string run(std::vector<int>& order) {
    std::vector<int> cell(s_, 0);
    refine(cell);
    best_.clear();
    search(cell);
    order = best_order_;
    return best_;
  }

 private:
  std::uint8_t at(int i, int j) const { return local_[std::size_t(i) * s_ + j]; }

  static int count_cells(const std::vector<int>& cell) { return *std::max_element(cell.begin(), cell.end()) + 1; }

  void refine(std::vector<int>& cell) const {
    int cells = count_cells(cell);
    std::vector<std::vector<int>> sig(s_);
    while (true) {
      for (int v = 0; v < s_; ++v) {
        auto& sv = sig[v];
        sv.clear();
        sv.push_back(cell[v]);
        for (int w = 0; w < s_; ++w)
          if (at(v, w)) sv.push_back(at(v, w) * 4096 + cell[w]);
        std::sort(sv.begin() + 1, sv.end());
      }
      std::vector<int> idx(s_);
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a] < sig[b]; });
      int next = -1;
      for (int i = 0; i < s_; ++i) {
        if (i == 0 || sig[idx[i]] != sig[idx[i - 1]]) ++next;
        cell[idx[i]] = next;
      }
      if (next + 1 == cells) return;
      cells = next + 1;
    }
  }

  /// Swapping v and w (fixing everything else) is an automorphism.
  bool twins(int v, int w) const {
    for (int x = 0; x < s_; ++x)
      if (x != v && x != w && at(v, x) != at(w, x)) return false;
    return true;
  }

  void search(const std::vector<int>& cell) {
    const int cells = count_cells(cell);
    if (cells == s_) {
      std::vector<int> order(s_);
      for (int v = 0; v < s_; ++v) order[cell[v]] = v;
      std::string code;
      code.reserve(std::size_t(s_) * (s_ - 1) / 2 + 2);
      code.push_back(char(s_ >> 8));
      code.push_back(char(s_ & 0xFF));
      for (int i = 0; i < s_; ++i)
        for (int j = i + 1; j < s_; ++j) code.push_back(char(at(order[i], order[j])));
      if (best_.empty() || code < best_) {
        best_ = std::move(code);
        best_order_ = std::move(order);
      }
      return;
    }
    // first non-singleton cell
    std::vector<int> size(cells, 0);
    for (int v = 0; v < s_; ++v) ++size[cell[v]];
    int target = 0;
    while (size[target] == 1) ++target;
    std::vector<int> tried;
    for (int v = 0; v < s_; ++v) {
      if (cell[v] != target) continue;
      bool redundant = false;
      for (int u : tried)
        if (twins(u, v)) {
          redundant = true;
          break;
        }
      if (redundant) continue;
      tried.push_back(v);
      std::vector<int> next(cell);
      for (int w = 0; w < s_; ++w) {
        if (next[w] > target) ++next[w];
        else if (next[w] == target && w != v) next[w] = target + 1;
      }
      refine(next);
      search(next);
    }
  }

  int s_;
  std::vector<std::uint8_t> local_;
  std::string best_;
  std::vector<int> best_order_;
};

inline std::vector<std::array<std::uint8_t, 16>> color_maps(int q, bool symmetric) {
  std::array<std::uint8_t, 16> identity{};
  std::iota(identity.begin(), identity.end(), std::uint8_t{0});
  if (!symmetric) return {identity};
  std::vector<std::array<std::uint8_t, 16>> out;
  std::vector<std::uint8_t> perm(q);
  std::iota(perm.begin(), perm.end(), std::uint8_t{1});
  do {
    auto m = identity;
    for (int c = 1; c <= q; ++c) m[c] = perm[c - 1];
    out.push_back(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

/// Canonical form by colour refinement plus exhaustive individualization.
/// Connected components are labelled independently and sorted, which keeps
/// disjoint unions cheap; transposition automorphisms (twins) prune the
/// individualization tree.
inline CanonicalForm canonical_form(const ColorMatrix& m, bool color_symmetric) {
  // components by any-colour adjacency
  std::vector<int> comp(m.n, -1);
  std::vector<std::vector<int>> members;
  for (int s = 0; s < m.n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = int(members.size());
    members.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members[id].push_back(v);
      for (int w = 0; w < m.n; ++w)
        if (comp[w] < 0 && m.at(v, w)) {
          comp[w] = id;
          stack.push_back(w);
        }
    }
    std::sort(members[id].begin(), members[id].end());
  }

  CanonicalForm best;
  bool have = false;
  for (const auto& cmap : detail::color_maps(m.q, color_symmetric)) {
    struct Part {
      std::string code;
      std::vector<int> vertices;  // position -> board vertex
    };
    std::vector<Part> parts;
    parts.reserve(members.size());
    for (const auto& mem : members) {
      std::vector<int> order;
      detail::ComponentCanonizer canon(m, mem, cmap);
      Part p;
      p.code = canon.run(order);
      for (int local : order) p.vertices.push_back(mem[local]);
      parts.push_back(std::move(p));
    }
    std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) { return a.code < b.code; });
    std::string key;
    for (const auto& p : parts) key += p.code;
    if (!have || key < best.key.bytes()) {
      have = true;
      best.key = CanonicalKey(std::move(key));
      best.labeling.assign(m.n, -1);
      int next = 0;
      for (const auto& p : parts)
        for (int v : p.vertices) best.labeling[v] = next++;
      best.color_map = cmap;
    }
  }
  if (!have) best.key = CanonicalKey(std::string{});
  return best;
}

template <HostGraph H>
ColorMatrix to_color_matrix(const H& host, int q) {
  ColorMatrix m(int(host.vertex_count()), q);
  for (Vertex u = 0; u < Vertex(m.n); ++u)
    host.for_each_neighbor(u, [&](Vertex w, Color c) { m.set(int(u), int(w), c == kUncolored ? q + 1 : c); });
  return m;
}

inline CanonicalForm canonical_form(const ColoredGraphState& state, bool color_symmetric) {
  if (state.has_pending()) throw Error(ErrorCode::kPendingEdge, "canonical key needs a fully coloured state");
  return canonical_form(to_color_matrix(state, state.q()), color_symmetric);
}

inline CanonicalKey canonical_key(const ColoredGraphState& state, bool color_symmetric) {
  return canonical_form(state, color_symmetric).key;
}

/// One class of equivalent Builder moves. Fresh endpoints are written as
/// vertex_count (and vertex_count + 1 for a second fresh vertex).
struct PairOrbit {
  VertexPair representative;
  std::size_t size = 0;
};

/// Partitions every legal Builder move (existing non-adjacent pairs, one
/// existing vertex with a fresh one, two fresh vertices) into classes of
/// moves related by an automorphism of the board. Classes are listed in
/// order of their lexicographically least member.
inline std::vector<PairOrbit> pair_orbits(const ColorMatrix& board, bool color_symmetric) {
  const int n = board.n;
  const auto marker = std::uint8_t(board.q + 1);
  std::map<std::string, std::size_t> index;
  std::vector<PairOrbit> out;
  auto add = [&](const ColorMatrix& marked, VertexPair move) {
    auto key = canonical_form(marked, color_symmetric).key.bytes();
    auto [it, inserted] = index.emplace(std::move(key), out.size());
    if (inserted) out.push_back({move, 0});
    ++out[it->second].size;
  };
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (board.at(u, v)) continue;
      ColorMatrix marked = board;
      marked.set(u, v, marker);
      add(marked, VertexPair{Vertex(u), Vertex(v)});
    }
    ColorMatrix marked = board;
    marked.grow(1);
    marked.set(u, n, marker);
    add(marked, VertexPair{Vertex(u), Vertex(n)});
  }
  ColorMatrix marked = board;
  marked.grow(2);
  marked.set(n, n + 1, marker);
  add(marked, VertexPair{Vertex(n), Vertex(n + 1)});
  return out;
}

inline std::vector<PairOrbit> pair_orbits(const ColoredGraphState& state) {
  if (state.has_pending()) throw Error(ErrorCode::kPendingEdge, "pair orbits need a fully coloured state");
  return pair_orbits(to_color_matrix(state, state.q()), false);
}

}  // namespace olr
