#pragma once

// Naive reference implementations shared by the test binaries. They favour
// obviousness over speed and only run on tiny inputs.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "olr/graph.hpp"
#include "olr/target.hpp"

namespace olr::naive {

/// Injective target -> host maps checked edge by edge.
inline bool has_mono_copy(const ColoredGraphState& s, const TargetSpec& target) {
  const int k = target.vertex_count();
  const int n = int(s.vertex_count());
  const auto edges = target.edges();
  if (k > n) return false;
  for (Color c = 1; c <= s.q(); ++c) {
    std::vector<int> phi(std::size_t(k), -1);
    std::vector<bool> used(std::size_t(n), false);
    std::function<bool(int)> place = [&](int i) -> bool {
      if (i == k) {
        for (auto [a, b] : edges)
          if (s.color(Vertex(phi[a]), Vertex(phi[b])) != c) return false;
        return true;
      }
      for (int v = 0; v < n; ++v) {
        if (used[v]) continue;
        used[v] = true;
        phi[i] = v;
        if (place(i + 1)) return true;
        used[v] = false;
      }
      return false;
    };
    if (place(0)) return true;
  }
  return false;
}

/// Random fully coloured state: each pair is an edge with probability
/// `density`, coloured uniformly.
inline ColoredGraphState random_state(int n, int q, double density, std::mt19937_64& rng) {
  ColoredGraphState s(q, Vertex(n));
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<int> col(1, q);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (edge(rng)) {
        s.draw(Vertex(u), Vertex(v));
        s.paint(Color(col(rng)));
      }
  return s;
}

/// Cell string of the colour matrix under every vertex permutation (and
/// colour swap when asked); the lexicographic minimum is a canonical form.
inline std::string brute_canonical(const ColoredGraphState& s, bool swap_colors) {
  const int n = int(s.vertex_count());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool have = false;
  do {
    for (int swap = 0; swap <= (swap_colors ? 1 : 0); ++swap) {
      std::string cells;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Color c = s.color(Vertex(perm[i]), Vertex(perm[j]));
          if (c == kUncolored) {
            cells.push_back('*');  // the pending edge is a fixed marker
            continue;
          }
          if (c == kNoEdge) c = 0;
          if (swap && c) c = Color(3 - c);
          cells.push_back(char('0' + c));
        }
      if (!have || cells < best) best = cells, have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline ColoredGraphState relabel(const ColoredGraphState& s, const std::vector<Vertex>& perm) {
  ColoredGraphState out(s.q(), s.vertex_count());
  for (const auto& e : s.edges()) {
    out.draw(perm[e.u], perm[e.v]);
    if (e.color != kUncolored) out.paint(e.color);
  }
  return out;
}

}  // namespace olr::naive
