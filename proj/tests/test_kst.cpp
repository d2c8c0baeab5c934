#include <gtest/gtest.h>

#include <random>
#include <set>

#include "olr/kst.hpp"

using namespace olr;

namespace {

// Every chosen A-vertex sees every chosen B-vertex, with distinct, in-range
// vertices of the requested sizes. Written against the raw adjacency.
bool valid_krs(const KstInstance& inst, const KstResult& r) {
  if (int(r.a_side.size()) != inst.r || int(r.b_side.size()) != inst.s) return false;
  if (std::set<int>(r.a_side.begin(), r.a_side.end()).size() != r.a_side.size()) return false;
  if (std::set<int>(r.b_side.begin(), r.b_side.end()).size() != r.b_side.size()) return false;
  for (int a : r.a_side) {
    if (a < 0 || a >= inst.m) return false;
    for (int b : r.b_side) {
      if (b < 0 || b >= inst.n) return false;
      if (!inst.adjacent(a, b)) return false;
    }
  }
  return true;
}

// ceil(x / y) for positive integers
long long cdiv(long long x, long long y) { return (x + y - 1) / y; }

}  // namespace

TEST(KstThresholds, Examples) {
  auto a = kst_thresholds(Rational(1, 2), 2, 3);
  EXPECT_EQ(a.m_min, 16);
  EXPECT_EQ(a.n_min, 24);
  auto b = kst_thresholds(Rational(1), 3, 1);
  EXPECT_EQ(b.m_min, 18);
  EXPECT_EQ(b.n_min, 2);
  auto c = kst_thresholds(Rational(1, 3), 2, 2);
  EXPECT_EQ(c.m_min, 24);
  EXPECT_EQ(c.n_min, 36);
}

TEST(KstThresholds, MatchesIntegerCeilings) {
  for (long long num = 1; num <= 6; ++num)
    for (long long den = num; den <= 9; ++den)
      for (int r = 1; r <= 4; ++r)
        for (int s = 1; s <= 5; ++s) {
          const auto th = kst_thresholds(Rational(num, den), r, s);
          long long np = 1, dp = 1;
          for (int i = 0; i < r; ++i) np *= num, dp *= den;
          EXPECT_EQ(th.m_min, cdiv(2LL * r * r * den, num));
          EXPECT_EQ(th.n_min, cdiv(2LL * s * dp, np));
        }
}

TEST(KstThresholds, Monotone) {
  const std::vector<Rational> eps{Rational(1, 5), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1)};
  for (int r = 1; r <= 3; ++r)
    for (int s = 1; s <= 3; ++s)
      for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
        const auto lo = kst_thresholds(eps[i], r, s);
        const auto hi = kst_thresholds(eps[i + 1], r, s);
        EXPECT_GE(lo.m_min, hi.m_min);
        EXPECT_GE(lo.n_min, hi.n_min);
        EXPECT_LE(lo.m_min, kst_thresholds(eps[i], r + 1, s).m_min);
        EXPECT_LE(lo.n_min, kst_thresholds(eps[i], r + 1, s).n_min);
        EXPECT_LE(lo.n_min, kst_thresholds(eps[i], r, s + 1).n_min);
      }
}

TEST(KstThresholds, DomainErrors) {
  EXPECT_THROW(kst_thresholds(Rational(0), 2, 2), Error);
  EXPECT_THROW(kst_thresholds(Rational(3, 2), 2, 2), Error);
  EXPECT_THROW(kst_thresholds(Rational(1, 2), 0, 2), Error);
}

TEST(KstExtract, CompleteBipartite) {
  KstInstance inst(16, 24, Rational(1, 2), 2, 3);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 24; ++b) inst.connect(a, b);
  EXPECT_TRUE(check_thresholds(inst).ok());
  const auto r = extract_krs(inst);
  EXPECT_TRUE(valid_krs(inst, r));
  EXPECT_TRUE(is_complete_bipartite(inst, r.a_side, r.b_side));
  EXPECT_EQ(r.random_rounds, 1);
  EXPECT_FALSE(r.used_fallback);
}

TEST(KstExtract, FindsOneOfTwoBlocks) {
  KstInstance inst(4, 4, Rational(1, 2), 2, 2);
  for (int a : {0, 1})
    for (int b : {0, 1}) inst.connect(a, b);
  for (int a : {2, 3})
    for (int b : {2, 3}) inst.connect(a, b);
  const auto check = check_thresholds(inst);
  EXPECT_TRUE(check.density_ok);
  EXPECT_FALSE(check.m_ok);
  for (bool randomized : {true, false}) {
    KstOptions opts;
    opts.randomized = randomized;
    const auto r = extract_krs(inst, opts);
    EXPECT_TRUE(valid_krs(inst, r));
    const bool first = r.a_side == std::vector<int>{0, 1} && r.b_side == std::vector<int>{0, 1};
    const bool second = r.a_side == std::vector<int>{2, 3} && r.b_side == std::vector<int>{2, 3};
    EXPECT_TRUE(first || second);
    EXPECT_EQ(r.used_fallback, !randomized);
  }
}

TEST(KstExtract, NoCopyReportsDensity) {
  KstInstance inst(3, 3, Rational(1, 3), 2, 2);
  for (int i = 0; i < 3; ++i) inst.connect(i, i);
  try {
    extract_krs(inst);
    FAIL() << "expected not_found";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
    EXPECT_NE(std::string(e.what()).find("density"), std::string::npos);
  }
}

TEST(KstExtract, RejectsMalformedInstances) {
  KstInstance inst(3, 3, Rational(1, 2), 2, 2);
  inst.rows.pop_back();
  EXPECT_THROW(extract_krs(inst), Error);
  KstInstance zero(3, 3, Rational(1, 2), 0, 2);
  EXPECT_THROW(extract_krs(zero), Error);
}

TEST(KstExtract, SeedIsDeterministic) {
  std::mt19937_64 rng(5);
  const auto inst = random_kst_instance(16, 24, Rational(1, 2), 2, 3, rng);
  KstOptions opts;
  opts.seed = 77;
  const auto a = extract_krs(inst, opts);
  const auto b = extract_krs(inst, opts);
  EXPECT_EQ(a.a_side, b.a_side);
  EXPECT_EQ(a.b_side, b.b_side);
  EXPECT_EQ(a.random_rounds, b.random_rounds);
}

struct KstCase {
  int r, s;
};

class KstAtThreshold : public ::testing::TestWithParam<KstCase> {};

TEST_P(KstAtThreshold, RandomInstancesAlwaysYieldValidCopies) {
  const auto [r, s] = GetParam();
  const std::vector<Rational> eps{Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(1)};
  std::mt19937_64 rng(1000 + 10 * r + s);
  for (int i = 0; i < 60; ++i) {
    const Rational e = eps[std::size_t(i) % eps.size()];
    const auto th = kst_thresholds(e, r, s);
    const auto inst = random_kst_instance(th.m_min.convert_to<int>(), th.n_min.convert_to<int>(), e, r, s, rng);
    ASSERT_TRUE(check_thresholds(inst).ok());
    KstOptions opts;
    opts.seed = std::uint64_t(i);
    const auto res = extract_krs(inst, opts);
    EXPECT_TRUE(valid_krs(inst, res)) << "instance " << i;
    opts.randomized = false;
    EXPECT_TRUE(valid_krs(inst, extract_krs(inst, opts))) << "instance " << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, KstAtThreshold, ::testing::Values(KstCase{2, 2}, KstCase{2, 3}, KstCase{3, 2}),
                         [](const auto& info) {
                           return "r" + std::to_string(info.param.r) + "s" + std::to_string(info.param.s);
                         });

TEST(KstRandomInstance, ExactEdgeCount) {
  std::mt19937_64 rng(3);
  const auto inst = random_kst_instance(7, 9, Rational(1, 3), 2, 2, rng);
  EXPECT_EQ(inst.edge_count(), 21u);
  const auto odd = random_kst_instance(5, 5, Rational(1, 3), 2, 2, rng);
  EXPECT_EQ(odd.edge_count(), 9u);  // ceil(25/3)
}

TEST(KstJson, RoundTrip) {
  std::mt19937_64 rng(9);
  const auto inst = random_kst_instance(6, 10, Rational(2, 5), 2, 2, rng);
  const auto back = kst_instance_from_json(to_json(inst));
  EXPECT_EQ(back.m, 6);
  EXPECT_EQ(back.n, 10);
  EXPECT_EQ(back.epsilon, Rational(2, 5));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 10; ++b) EXPECT_EQ(back.adjacent(a, b), inst.adjacent(a, b));
}

TEST(KstJson, StringRowsAndErrors) {
  const auto j = nlohmann::json::parse(R"({"m":2,"n":3,"epsilon":"1/2","r":1,"s":2,"adj":["110","011"]})");
  const auto inst = kst_instance_from_json(j);
  EXPECT_TRUE(inst.adjacent(0, 1));
  EXPECT_FALSE(inst.adjacent(0, 2));
  EXPECT_EQ(inst.edge_count(), 4u);
  auto bad = j;
  bad["adj"] = {"11", "011"};
  try {
    kst_instance_from_json(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
  bad = j;
  bad.erase("m");
  EXPECT_THROW(kst_instance_from_json(bad), Error);
}
