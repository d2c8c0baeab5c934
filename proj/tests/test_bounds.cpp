#include <gtest/gtest.h>

#include <functional>
#include <vector>

#include "olr/ramsey_bounds.hpp"
#include "oracle_values.hpp"

using namespace olr;

namespace {

Real R(const char* s) { return Real(s); }

bool close_rel(const Real& a, const Real& b, const Real& tol) {
  using boost::multiprecision::abs;
  return abs(a - b) <= tol * std::max(Real(1), abs(b));
}

BigInt B(const char* s) { return BigInt(s); }

// Pascal's triangle by repeated addition: no factorials, no division.
std::vector<std::vector<BigInt>> pascal(int rows) {
  std::vector<std::vector<BigInt>> c(std::size_t(rows) + 1);
  for (int n = 0; n <= rows; ++n) {
    c[n].assign(std::size_t(n) + 1, 1);
    for (int k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
  }
  return c;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an olr::Error";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(EsBound, Examples) {
  EXPECT_EQ(es_bound(3, 3, EsMode::kClassical), 6);
  EXPECT_EQ(es_bound(2, 5, EsMode::kClassical), 5);
  EXPECT_EQ(es_bound(1, 7), 1);
  EXPECT_EQ(es_bound(7, 1, EsMode::kClassical), 1);
  EXPECT_EQ(es_bound(3, 3), 20);
  EXPECT_EQ(code_of([] { es_bound(0, 3); }), ErrorCode::kDomainViolation);
}

TEST(EsBound, MatchesPascalUpToTwenty) {
  const auto c = pascal(40);
  for (int k = 2; k <= 20; ++k)
    for (int l = 2; l <= 20; ++l) {
      EXPECT_EQ(es_bound(k, l), c[k + l][k]);
      EXPECT_EQ(es_bound(k, l, EsMode::kClassical), c[k + l - 2][k - 1]);
    }
}

TEST(MultinomialBound, Examples) {
  std::vector<long long> a{3, 3}, b{3, 3, 3};
  EXPECT_EQ(multinomial_bound(a), 20);
  EXPECT_EQ(multinomial_bound(b), 1680);
  std::vector<long long> bad{3, 0};
  EXPECT_EQ(code_of([&] { multinomial_bound(bad); }), ErrorCode::kDomainViolation);
}

TEST(MultinomialBound, TwoColoursIsBinomial) {
  for (long long k = 1; k <= 10; ++k)
    for (long long l = 1; l <= 10; ++l) {
      std::vector<long long> ks{k, l};
      EXPECT_EQ(multinomial_bound(ks), binomial(k + l, k));
    }
}

TEST(MultinomialBound, MatchesProductOfBinomials) {
  const auto c = pascal(60);
  for (long long a = 1; a <= 20; a += 3)
    for (long long b = 1; b <= 20; b += 4)
      for (long long d = 1; d <= 20; d += 5) {
        std::vector<long long> ks{a, b, d};
        EXPECT_EQ(multinomial_bound(ks), c[a + b][a] * c[a + b + d][d]);
      }
}

TEST(DiagonalBound, ZeroConstantIsBinomial) {
  for (long long k = 3; k <= 30; ++k)
    for (long long l = (k + 1) / 2; l <= 2 * k; ++l)
      EXPECT_TRUE(close_rel(diagonal_bound_log2(k, l, {}), log2_big(binomial(k + l, k)), R("1e-40")));
}

TEST(DiagonalBound, HighPrecisionValues) {
  BoundParams quarter;
  quarter.c_diag = R("0.25");
  EXPECT_TRUE(close_rel(diagonal_bound_log2(16, 16, quarter), R(oracle::kDiagonalLog2_16_16_quarter), R("1e-12")));
  BoundParams half;
  half.c_diag = R("0.5");
  EXPECT_TRUE(close_rel(diagonal_bound_log2(12, 20, half), R(oracle::kDiagonalLog2_12_20_half), R("1e-12")));
}

TEST(DiagonalBound, DomainViolation) {
  EXPECT_EQ(code_of([] { diagonal_bound_log2(4, 16, {}); }), ErrorCode::kDomainViolation);
  EXPECT_EQ(code_of([] { diagonal_bound_log2(20, 4, {}); }), ErrorCode::kDomainViolation);
  EXPECT_EQ(code_of([] { diagonal_bound_log2(2, 3, {}); }), ErrorCode::kDomainViolation);
}

TEST(Oracle, Examples) {
  const auto o = RamseyOracle::with_default_table();
  auto a = o.r(2, 7);
  EXPECT_EQ(a.value, 7);
  EXPECT_EQ(a.provenance, Provenance::kTrivial);
  auto b = o.r(3, 3);
  EXPECT_EQ(b.value, 6);
  EXPECT_EQ(b.provenance, Provenance::kTable);
  auto c = o.r(5, 5);
  EXPECT_EQ(c.value, 70);
  EXPECT_EQ(c.provenance, Provenance::kFormula);
  EXPECT_EQ(o.r(1, 9).value, 1);
  EXPECT_EQ(o.r(std::vector<long long>{3, 3, 3}).value, 17);
  EXPECT_EQ(o.r(std::vector<long long>{2, 3, 3}).value, 6);
}

TEST(Oracle, FormulaBoundsDominateTable) {
  const auto table = RamseyOracle::with_default_table();
  const auto formula = RamseyOracle::formula_only();
  for (const auto& [ks, entry] : table.table()) EXPECT_GE(formula.r(ks).value, entry.value);
}

TEST(Oracle, MonotoneInEachArgument) {
  for (const auto& o : {RamseyOracle::with_default_table(), RamseyOracle::formula_only()})
    for (long long k = 1; k <= 12; ++k)
      for (long long l = 1; l <= 12; ++l) {
        EXPECT_LE(o.r(k, l).value, o.r(k + 1, l).value) << k << "," << l;
        EXPECT_LE(o.r(k, l).value, o.r(k, l + 1).value) << k << "," << l;
        EXPECT_EQ(o.r(k, l).value, o.r(l, k).value);
      }
}

TEST(Oracle, JsonRoundTrip) {
  const auto o = RamseyOracle::with_default_table();
  const auto back = RamseyOracle::from_json(o.to_json());
  EXPECT_EQ(back.to_json(), o.to_json());
  EXPECT_EQ(code_of([] { RamseyOracle::from_json(nlohmann::json{{"3,x", {{"value", 6}}}}); }), ErrorCode::kParse);
}

TEST(BudgetSpecifics, MatchesIndependentEvaluation) {
  const auto table = RamseyOracle::with_default_table();
  const auto es = RamseyOracle::formula_only();
  const char* p_table[] = {oracle::kSpecificsP_table_2,  oracle::kSpecificsP_table_3,  oracle::kSpecificsP_table_4,
                           oracle::kSpecificsP_table_5,  oracle::kSpecificsP_table_6,  oracle::kSpecificsP_table_7,
                           oracle::kSpecificsP_table_8,  oracle::kSpecificsP_table_9,  oracle::kSpecificsP_table_10,
                           oracle::kSpecificsP_table_11, oracle::kSpecificsP_table_12};
  const char* total_table[] = {oracle::kSpecificsTotal_table_2,  oracle::kSpecificsTotal_table_3,
                               oracle::kSpecificsTotal_table_4,  oracle::kSpecificsTotal_table_5,
                               oracle::kSpecificsTotal_table_6,  oracle::kSpecificsTotal_table_7,
                               oracle::kSpecificsTotal_table_8,  oracle::kSpecificsTotal_table_9,
                               oracle::kSpecificsTotal_table_10, oracle::kSpecificsTotal_table_11,
                               oracle::kSpecificsTotal_table_12};
  const char* p_es[] = {oracle::kSpecificsP_es_2,  oracle::kSpecificsP_es_3,  oracle::kSpecificsP_es_4,
                        oracle::kSpecificsP_es_5,  oracle::kSpecificsP_es_6,  oracle::kSpecificsP_es_7,
                        oracle::kSpecificsP_es_8,  oracle::kSpecificsP_es_9,  oracle::kSpecificsP_es_10,
                        oracle::kSpecificsP_es_11, oracle::kSpecificsP_es_12};
  const char* total_es[] = {oracle::kSpecificsTotal_es_2,  oracle::kSpecificsTotal_es_3,  oracle::kSpecificsTotal_es_4,
                            oracle::kSpecificsTotal_es_5,  oracle::kSpecificsTotal_es_6,  oracle::kSpecificsTotal_es_7,
                            oracle::kSpecificsTotal_es_8,  oracle::kSpecificsTotal_es_9,  oracle::kSpecificsTotal_es_10,
                            oracle::kSpecificsTotal_es_11, oracle::kSpecificsTotal_es_12};
  for (int t = 2; t <= 12; ++t) {
    const auto a = budget_specifics(t, table);
    EXPECT_EQ(a.p, B(p_table[t - 2])) << t;
    EXPECT_EQ(a.total, B(total_table[t - 2])) << t;
    EXPECT_EQ(a.n, pow_int(2, a.m) * a.p);
    EXPECT_EQ(a.m, (3 * t + 1) / 2);
    const auto b = budget_specifics(t, es);
    EXPECT_EQ(b.p, B(p_es[t - 2])) << t;
    EXPECT_EQ(b.total, B(total_es[t - 2])) << t;
  }
}

TEST(BudgetSpecifics, TwelveWithTable) {
  const auto b = budget_specifics(12, RamseyOracle::with_default_table());
  EXPECT_EQ(b.p, 6);
  EXPECT_EQ(b.m, 18);
  EXPECT_EQ(b.chain_edges, BigInt(18) * (BigInt(1) << 18) * 6);
  // the relaxed form t 2^{m+1} p + C(p,2)
  EXPECT_EQ(b.relaxed_total, BigInt(12) * (BigInt(1) << 19) * 6 + 15);
  EXPECT_EQ(b.relaxed_total, 37748751);
  EXPECT_LE(b.total, b.relaxed_total);
}

TEST(BudgetSpecifics, DegenerateTwo) {
  const auto b = budget_specifics(2, RamseyOracle::with_default_table());
  EXPECT_EQ(b.p, 1);
  EXPECT_GE(b.total, 1);
  EXPECT_EQ(code_of([] { budget_specifics(1, RamseyOracle::formula_only()); }), ErrorCode::kDomainViolation);
}

TEST(BudgetMulticolor, MatchesIndependentEvaluation) {
  const auto table = RamseyOracle::with_default_table();
  const auto es = RamseyOracle::formula_only();
  EXPECT_EQ(budget_multicolor(3, 2, table).total, B(oracle::kMulticolorTotal_table_3_2));
  EXPECT_EQ(budget_multicolor(3, 3, table).total, B(oracle::kMulticolorTotal_table_3_3));
  EXPECT_EQ(budget_multicolor(4, 3, table).total, B(oracle::kMulticolorTotal_table_4_3));
  EXPECT_EQ(budget_multicolor(3, 3, es).p, B(oracle::kMulticolorP_es_3_3));
  EXPECT_EQ(budget_multicolor(4, 3, es).total, B(oracle::kMulticolorTotal_es_4_3));
}

TEST(BudgetMain, MatchesIndependentEvaluation) {
  const auto table = RamseyOracle::with_default_table();
  const auto es = RamseyOracle::formula_only();
  struct Case {
    AdaptiveParams params;
    const RamseyOracle* oracle;
    const char *p, *n, *total;
  };
  const std::vector<Case> cases = {
      {{4, Rational(1, 4), Rational(1, 2), Rational(1, 4)}, &es, oracle::kMainP_small4_es, oracle::kMainN_small4_es,
       oracle::kMainTotal_small4_es},
      {{2, Rational(1, 2), Rational(3, 4), Rational(1, 2)}, &table, oracle::kMainP_small2_table,
       oracle::kMainN_small2_table, oracle::kMainTotal_small2_table},
      {AdaptiveParams::asymptotic_preset(4), &table, oracle::kMainP_asym4_table, oracle::kMainN_asym4_table,
       oracle::kMainTotal_asym4_table},
      {{6, Rational(1, 3), Rational(2, 3), Rational(1, 3)}, &table, oracle::kMainP_small6_table,
       oracle::kMainN_small6_table, oracle::kMainTotal_small6_table},
  };
  for (const auto& c : cases) {
    const auto b = budget_main(c.params, *c.oracle);
    EXPECT_EQ(b.p, B(c.p));
    ASSERT_TRUE(b.n && b.total);
    EXPECT_EQ(*b.n, B(c.n));
    EXPECT_EQ(*b.total, B(c.total));
  }
}

TEST(BudgetMain, AsymptoticPresetLogDomain) {
  const auto table = RamseyOracle::with_default_table();
  const auto exact = budget_main(AdaptiveParams::asymptotic_preset(10000), table);
  EXPECT_TRUE(close_rel(exact.log2_total, R(oracle::kMainLog2Total_asym_10000), R("1e-12")));
  const auto logd = budget_main(AdaptiveParams::asymptotic_preset(10000), table, 100);
  EXPECT_FALSE(logd.total);
  EXPECT_TRUE(close_rel(logd.log2_total, exact.log2_total, R("1e-9")));
  const auto big = budget_main(AdaptiveParams::asymptotic_preset(1000000), table);
  EXPECT_GT(big.log2_total, 0);
  EXPECT_LT(big.log2_total, big.log2_relaxed + 64);
}

TEST(BudgetMain, RejectsInfeasibleParameters) {
  const auto o = RamseyOracle::formula_only();
  EXPECT_EQ(code_of([&] { budget_main({4, Rational(0), Rational(1, 2), Rational(1, 4)}, o); }),
            ErrorCode::kDomainViolation);
  EXPECT_EQ(code_of([&] { budget_main({4, Rational(1, 4), Rational(1, 4), Rational(1, 2)}, o); }),
            ErrorCode::kDomainViolation);
}

TEST(BudgetBipartite, FormulaValues) {
  EXPECT_TRUE(close_rel(budget_bipartite(2, 4), R(oracle::kBipartiteDeclared_2_4), R("1e-25")));
  EXPECT_TRUE(close_rel(budget_bipartite(2, 8), R(oracle::kBipartiteDeclared_2_8), R("1e-25")));
  EXPECT_TRUE(close_rel(budget_bipartite(3, 3), R(oracle::kBipartiteDeclared_3_3), R("1e-25")));
  // 48 * 2^6 * 4^{5/2} * 2^{1/2}
  EXPECT_TRUE(close_rel(budget_bipartite(2, 4), 48 * 64 * 32 * boost::multiprecision::sqrt(Real(2)), R("1e-40")));
  EXPECT_EQ(code_of([] { budget_bipartite(3, 2); }), ErrorCode::kDomainViolation);
}

TEST(BudgetBipartite, PlanSizes) {
  const auto p = bipartite_plan(2, 4);
  EXPECT_EQ(p.m_size, 384);
  EXPECT_EQ(p.n_size, 64);
  EXPECT_EQ(p.phase1_edges, 24576);
  struct Case {
    int q, t;
    const char *m, *n2, *eps;
  };
  for (const auto& c : {Case{2, 4, oracle::kBipartiteM_2_4, oracle::kBipartiteN2_2_4, oracle::kBipartiteEps_2_4},
                        Case{2, 5, oracle::kBipartiteM_2_5, oracle::kBipartiteN2_2_5, oracle::kBipartiteEps_2_5},
                        Case{2, 6, oracle::kBipartiteM_2_6, oracle::kBipartiteN2_2_6, oracle::kBipartiteEps_2_6},
                        Case{2, 8, oracle::kBipartiteM_2_8, oracle::kBipartiteN2_2_8, oracle::kBipartiteEps_2_8},
                        Case{3, 3, oracle::kBipartiteM_3_3, oracle::kBipartiteN2_3_3, oracle::kBipartiteEps_3_3}}) {
    const auto plan = bipartite_plan(c.q, c.t);
    EXPECT_EQ(plan.m_size, B(c.m));
    EXPECT_EQ(plan.n2_size, B(c.n2));
    EXPECT_TRUE(close_rel(plan.epsilon, R(c.eps), R("1e-25")));
    EXPECT_EQ(plan.s1, BigInt(3) * c.q * c.t * c.t);
  }
}

TEST(BudgetBipartite, EightFitsItsBudget) {
  const auto p = bipartite_plan(2, 8);
  EXPECT_LE(Real(p.phase1_edges + p.phase2_edges), p.declared);
}

TEST(MainChain, MillionAllTrue) {
  const auto r = verify_main_chain(1000000);
  EXPECT_TRUE(r.all_true()) << to_text(r);
}

TEST(MainChain, ConstantLink) {
  const auto r = verify_main_chain(100);
  const auto& l = r.link("const_1066");
  EXPECT_TRUE(l.holds);
  EXPECT_TRUE(close_rel(l.lhs, R(oracle::kMainConst1066Lhs), R("1e-12")));
}

TEST(MainChain, SmallTFails) {
  const auto r = verify_main_chain(10);
  EXPECT_FALSE(r.all_true());
  EXPECT_FALSE(r.failed().empty());
}

TEST(MainChain, EsLinkAtThousand) {
  const auto r = verify_main_chain(1000);
  EXPECT_TRUE(close_rel(r.link("es").lhs, R(oracle::kMainEsLinkLhs_1000), R("1e-12")));
}

TEST(MainChain, ScanReportsThreshold) {
  const auto r = verify_main_chain(2000, RamseyOracle::with_default_table(), 2000);
  for (const auto& l : r.links)
    if (l.holds) {
      EXPECT_TRUE(l.holds_from.has_value()) << l.name;
    }
}

TEST(SpecificsChain, MillionAllTrue) {
  const auto r = verify_specifics_chain(1000000);
  EXPECT_TRUE(r.all_true()) << to_text(r);
}

TEST(SpecificsChain, PBoundAtHundred) {
  const auto r = verify_specifics_chain(100);
  EXPECT_TRUE(close_rel(r.link("p_bound").lhs, R(oracle::kSpecificsPBoundLhs_100), R("1e-12")));
  EXPECT_TRUE(r.link("const_5_3").holds);
}

TEST(BipartiteChain, LargeTAllTrue) {
  const auto r = verify_bipartite_chain(2, 1024);
  EXPECT_TRUE(r.all_true()) << to_text(r);
}

TEST(BipartiteChain, SixFailsGrowthLink) {
  const auto r = verify_bipartite_chain(2, 6);
  const auto& l = r.link("growth");
  EXPECT_FALSE(l.holds);
  const Real value = l.lhs_value();
  EXPECT_TRUE(close_rel(value, R(oracle::kGrowthLink_2_6), R("1e-12")));
  EXPECT_LT(boost::multiprecision::abs(value - R("6.6")), R("0.066"));
}

TEST(BipartiteChain, DomainChecks) {
  EXPECT_EQ(code_of([] { verify_bipartite_chain(2, 1); }), ErrorCode::kDomainViolation);
  EXPECT_TRUE(verify_bipartite_chain(2, 4).link("eps_positive").holds);
}

TEST(Chains, LogDomainAgreesWithExactUpTo64) {
  int compared = 0;
  auto agree = [](const BoundLink& l, const Real& fast, const Real& exact) {
    using boost::multiprecision::abs;
    if (l.log_scale) return abs(boost::multiprecision::pow(Real(2), fast - exact) - 1) < R("1e-9");
    return abs(fast - exact) <= R("1e-9") * std::max(Real(1), abs(exact));
  };
  auto check = [&](const BoundReport& r) {
    for (const auto& l : r.links) {
      if (l.lhs_exact) {
        ++compared;
        EXPECT_TRUE(agree(l, l.lhs, *l.lhs_exact)) << r.point << " " << l.name;
      }
      if (l.rhs_exact) {
        EXPECT_TRUE(agree(l, l.rhs, *l.rhs_exact)) << r.point << " " << l.name;
      }
    }
  };
  for (long long t = 2; t <= 64; ++t) {
    check(verify_main_chain(t));
    check(verify_specifics_chain(t));
    check(verify_bipartite_chain(2, t));
  }
  EXPECT_GT(compared, 150);
}

TEST(Chains, Deterministic) {
  EXPECT_EQ(to_json(verify_main_chain(5000)), to_json(verify_main_chain(5000)));
  EXPECT_EQ(to_json(verify_bipartite_chain(3, 40)), to_json(verify_bipartite_chain(3, 40)));
}

TEST(Chains, TextTableMarksFailures) {
  const auto text = to_text(verify_bipartite_chain(2, 6));
  EXPECT_NE(text.find("growth"), std::string::npos);
  EXPECT_NE(text.find("NO"), std::string::npos);
  const auto j = to_json(verify_bipartite_chain(2, 6));
  EXPECT_EQ(j["v"], 1);
  EXPECT_FALSE(j["all_true"].get<bool>());
}
