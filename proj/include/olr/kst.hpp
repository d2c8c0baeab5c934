#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "olr/bignum.hpp"
#include "olr/error.hpp"

namespace olr {

/// Fixed-width bitset over a runtime number of bits.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const noexcept { return bits_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::size_t(std::popcount(w));
    return c;
  }

  BitRow& operator&=(const BitRow& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  /// Indices of set bits, at most `limit` of them.
  std::vector<std::size_t> members(std::size_t limit = SIZE_MAX) const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size() && out.size() < limit; ++w) {
      auto word = words_[w];
      while (word && out.size() < limit) {
        out.push_back(w * 64 + std::size_t(std::countr_zero(word)));
        word &= word - 1;
      }
    }
    return out;
  }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// One colour class of a bipartite graph between A (size m) and B (size n).
struct KstInstance {
  int m = 0;
  int n = 0;
  Rational epsilon{1, 2};
  int r = 1;
  int s = 1;
  std::vector<BitRow> rows;  // rows[a] has bit b set iff a ~ b

  KstInstance() = default;
  KstInstance(int m_, int n_, Rational eps, int r_, int s_)
      : m(m_), n(n_), epsilon(std::move(eps)), r(r_), s(s_), rows(std::size_t(m_), BitRow(std::size_t(n_))) {}

  void connect(int a, int b) { rows[std::size_t(a)].set(std::size_t(b)); }
  bool adjacent(int a, int b) const { return rows[std::size_t(a)].test(std::size_t(b)); }

  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& row : rows) e += row.count();
    return e;
  }

  Rational density() const {
    if (m == 0 || n == 0) return 0;
    return Rational(BigInt(edge_count()), BigInt(m) * n);
  }
};

struct KstThresholds {
  BigInt m_min;
  BigInt n_min;
};

/// (ceil(2 r^2 / eps), ceil(2 s / eps^r)), exactly.
inline KstThresholds kst_thresholds(const Rational& epsilon, int r, int s) {
  if (!(epsilon > 0 && epsilon <= 1)) throw Error(ErrorCode::kDomainViolation, "epsilon must be in (0, 1]");
  if (r < 1 || s < 1) throw Error(ErrorCode::kDomainViolation, "r and s must be >= 1");
  return {ceil_rational(Rational(2 * r * r) / epsilon), ceil_rational(Rational(2 * s) / pow_rational(epsilon, r))};
}

struct KstCheck {
  bool density_ok = false;
  bool m_ok = false;
  bool n_ok = false;
  bool ok() const { return density_ok && m_ok && n_ok; }
};

/// Explicit precondition check, all comparisons exact.
inline KstCheck check_thresholds(const KstInstance& inst) {
  auto th = kst_thresholds(inst.epsilon, inst.r, inst.s);
  KstCheck c;
  // edges * den >= num * m * n
  c.density_ok = BigInt(inst.edge_count()) * boost::multiprecision::denominator(inst.epsilon) >=
                 boost::multiprecision::numerator(inst.epsilon) * BigInt(inst.m) * inst.n;
  c.m_ok = BigInt(inst.m) >= th.m_min;
  c.n_ok = BigInt(inst.n) >= th.n_min;
  return c;
}

struct KstResult {
  std::vector<int> a_side;  // size r, subset of A
  std::vector<int> b_side;  // size s, subset of B
  int random_rounds = 0;    // randomized rounds used (cap + 1 when the fallback ran)
  bool used_fallback = false;
};

inline bool is_complete_bipartite(const KstInstance& inst, const std::vector<int>& a_side, const std::vector<int>& b_side) {
  for (int a : a_side)
    for (int b : b_side)
      if (!inst.adjacent(a, b)) return false;
  return true;
}

struct KstOptions {
  std::uint64_t seed = 1;
  int retry_factor = 64;  // randomized rounds = retry_factor * s
  bool randomized = true;
};

/// Finds A' (|A'| = r) and B' (|B'| = s) spanning a complete bipartite graph.
/// Randomized averaging first: a B-vertex chosen with weight C(d(v), r) and a
/// uniform r-subset of its neighbourhood is a uniform random (vertex, r-set)
/// incidence, so an r-set with support >= s is hit with positive probability
/// whenever the counting bound applies. After the cap, r-subsets of every
/// B-neighbourhood are enumerated exhaustively, highest degree first.
inline KstResult extract_krs(const KstInstance& inst, const KstOptions& opts = {}) {
  if (inst.r < 1 || inst.s < 1) throw Error(ErrorCode::kDomainViolation, "r and s must be >= 1");
  if (int(inst.rows.size()) != inst.m) throw Error(ErrorCode::kInvalidArgument, "row count does not match m");

  std::vector<BitRow> cols(std::size_t(inst.n), BitRow(std::size_t(inst.m)));
  for (int a = 0; a < inst.m; ++a)
    for (auto b : inst.rows[std::size_t(a)].members()) cols[b].set(std::size_t(a));
  std::vector<int> degree(std::size_t(inst.n));
  for (int b = 0; b < inst.n; ++b) degree[std::size_t(b)] = int(cols[std::size_t(b)].count());

  KstResult result;
  auto support = [&](const std::vector<int>& a_side) {
    BitRow common = inst.rows[std::size_t(a_side[0])];
    for (std::size_t i = 1; i < a_side.size(); ++i) common &= inst.rows[std::size_t(a_side[i])];
    return common;
  };
  auto accept = [&](std::vector<int> a_side) {
    BitRow common = support(a_side);
    if (common.count() < std::size_t(inst.s)) return false;
    std::sort(a_side.begin(), a_side.end());
    result.a_side = std::move(a_side);
    for (auto b : common.members(std::size_t(inst.s))) result.b_side.push_back(int(b));
    return true;
  };

  if (opts.randomized) {
    std::vector<double> weight(std::size_t(inst.n));
    bool any = false;
    for (int b = 0; b < inst.n; ++b) {
      // C(d, r) in floating point is only a sampling weight
      double w = degree[std::size_t(b)] >= inst.r ? std::exp(std::lgamma(degree[std::size_t(b)] + 1.0) -
                                                             std::lgamma(inst.r + 1.0) -
                                                             std::lgamma(degree[std::size_t(b)] - inst.r + 1.0))
                                                  : 0.0;
      weight[std::size_t(b)] = w;
      any = any || w > 0;
    }
    if (any) {
      std::mt19937_64 rng(opts.seed);
      std::discrete_distribution<int> pick(weight.begin(), weight.end());
      const int cap = opts.retry_factor * inst.s;
      for (int round = 1; round <= cap; ++round) {
        result.random_rounds = round;
        auto nbhd = cols[std::size_t(pick(rng))].members();
        std::vector<std::size_t> chosen;
        std::sample(nbhd.begin(), nbhd.end(), std::back_inserter(chosen), inst.r, rng);
        std::vector<int> a_side(chosen.begin(), chosen.end());
        if (accept(std::move(a_side))) return result;
      }
    }
  }

  result.used_fallback = true;
  result.random_rounds = opts.randomized ? opts.retry_factor * inst.s + 1 : 0;
  std::vector<int> order(std::size_t(inst.n));
  for (int b = 0; b < inst.n; ++b) order[std::size_t(b)] = b;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return degree[std::size_t(x)] > degree[std::size_t(y)]; });
  for (int b : order) {
    if (degree[std::size_t(b)] < inst.r) break;
    auto nbhd = cols[std::size_t(b)].members();
    // A-vertices of higher degree first: their subsets tend to have more support
    std::stable_sort(nbhd.begin(), nbhd.end(), [&](std::size_t x, std::size_t y) {
      return inst.rows[x].count() > inst.rows[y].count();
    });
    std::vector<int> idx(std::size_t(inst.r));
    for (int i = 0; i < inst.r; ++i) idx[std::size_t(i)] = i;
    const int d = int(nbhd.size());
    while (true) {
      std::vector<int> a_side;
      for (int i : idx) a_side.push_back(int(nbhd[std::size_t(i)]));
      if (accept(std::move(a_side))) return result;
      int i = inst.r - 1;
      while (i >= 0 && idx[std::size_t(i)] == d - inst.r + i) --i;
      if (i < 0) break;
      ++idx[std::size_t(i)];
      for (int j = i + 1; j < inst.r; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
  }
  const double measured = inst.m && inst.n ? double(inst.edge_count()) / (double(inst.m) * inst.n) : 0.0;
  throw Error(ErrorCode::kNotFound, "no K_{" + std::to_string(inst.r) + "," + std::to_string(inst.s) +
                                        "} in colour class (measured density " + std::to_string(measured) + ")");
}

/// Random instance with exactly ceil(eps m n) edges placed uniformly.
inline KstInstance random_kst_instance(int m, int n, const Rational& epsilon, int r, int s, std::mt19937_64& rng) {
  KstInstance inst(m, n, epsilon, r, s);
  const std::size_t total = std::size_t(m) * std::size_t(n);
  const auto edges = ceil_rational(epsilon * Rational(BigInt(total))).convert_to<std::size_t>();
  std::vector<std::size_t> cells(total);
  for (std::size_t i = 0; i < total; ++i) cells[i] = i;
  std::shuffle(cells.begin(), cells.end(), rng);
  for (std::size_t i = 0; i < edges; ++i) inst.connect(int(cells[i] / std::size_t(n)), int(cells[i] % std::size_t(n)));
  return inst;
}

inline KstInstance kst_instance_from_json(const nlohmann::json& j) {
  try {
    const auto& eps = j.at("epsilon");
    Rational epsilon = eps.is_array() ? Rational(eps.at(0).get<long long>(), eps.at(1).get<long long>())
                                      : parse_rational(eps.get<std::string>());
    KstInstance inst(j.at("m").get<int>(), j.at("n").get<int>(), epsilon, j.at("r").get<int>(), j.at("s").get<int>());
    const auto& adj = j.at("adj");
    if (int(adj.size()) != inst.m) throw Error(ErrorCode::kParse, "adj must have m rows");
    for (int a = 0; a < inst.m; ++a) {
      const auto& row = adj.at(std::size_t(a));
      if (row.is_string()) {
        const auto text = row.get<std::string>();
        if (int(text.size()) != inst.n) throw Error(ErrorCode::kParse, "adj row length must be n");
        for (int b = 0; b < inst.n; ++b)
          if (text[std::size_t(b)] == '1') inst.connect(a, b);
      } else {
        if (int(row.size()) != inst.n) throw Error(ErrorCode::kParse, "adj row length must be n");
        for (int b = 0; b < inst.n; ++b)
          if (row.at(std::size_t(b)).get<int>() != 0) inst.connect(a, b);
      }
    }
    return inst;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::kParse, std::string("kst instance: ") + ex.what());
  }
}

inline nlohmann::json to_json(const KstInstance& inst) {
  nlohmann::json adj = nlohmann::json::array();
  for (const auto& row : inst.rows) {
    nlohmann::json bits = nlohmann::json::array();
    for (int b = 0; b < inst.n; ++b) bits.push_back(row.test(std::size_t(b)) ? 1 : 0);
    adj.push_back(std::move(bits));
  }
  return {{"m", inst.m},
          {"n", inst.n},
          {"epsilon", {boost::multiprecision::numerator(inst.epsilon).convert_to<long long>(),
                       boost::multiprecision::denominator(inst.epsilon).convert_to<long long>()}},
          {"r", inst.r},
          {"s", inst.s},
          {"adj", adj}};
}

}  // namespace olr
