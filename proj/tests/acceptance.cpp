// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// `--stretch` adds the P7 solve to the path-value check.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "olr/olr.hpp"
#include "oracle_values.hpp"

using namespace olr;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt(double x, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << x;
  return os.str();
}

// Solves P_n and verifies the certificate; appends "Pn=v (s)" to `detail`.
bool path_value(int n, int expect, double limit_s, std::string& detail) {
  SolverOptions opts;
  opts.max_budget = expect;
  const auto start = Clock::now();
  const auto r = solve(TargetSpec::path(n), opts);
  const double secs = since(start);
  bool ok = r.value == expect && secs < limit_s;
  std::string cert = "no certificate";
  if (r.value) {
    const auto report = verify_certificate(r);
    ok = ok && report.ok();
    cert = "certificate " + std::string(report.ok() ? "ok" : "BAD") + " (" + std::to_string(report.builder_states) + "+" +
           std::to_string(report.painter_states) + " states)";
  }
  detail += (detail.empty() ? "" : "; ") + std::string("P") + std::to_string(n) + "=" +
            (r.value ? std::to_string(*r.value) : ">=" + std::to_string(r.lower_bound)) + " want " +
            std::to_string(expect) + " in " + fmt(secs) + "s, " + cert;
  return ok;
}

Verdict path_values(bool stretch) {
  Verdict v;
  v.ok = path_value(4, 5, 10, v.detail);
  v.ok = path_value(5, 7, 600, v.detail) && v.ok;
  v.ok = path_value(6, 10, 4 * 3600, v.detail) && v.ok;
  if (stretch) v.ok = path_value(7, 12, 4 * 3600, v.detail) && v.ok;
  return v;
}

Verdict small_values() {
  Verdict v{true, {}};
  for (auto [target, expect] : {std::pair{TargetSpec::clique(2), 1}, std::pair{TargetSpec::path(3), 3}}) {
    const auto r = solve(target);
    const bool ok = r.value == expect && verify_certificate(r).ok();
    v.ok = v.ok && ok;
    v.detail += target.name() + "=" + (r.value ? std::to_string(*r.value) : "?") + (ok ? " certified; " : " WRONG; ");
  }
  const auto start = Clock::now();
  const auto with_table = solve(TargetSpec::clique(3));
  SolverOptions plain;
  plain.use_table = false;
  plain.certificates = false;
  const auto without = solve(TargetSpec::clique(3), plain);
  const bool agree = with_table.value && with_table.value == without.value;
  v.ok = v.ok && agree;
  v.detail += "K3 table=" + (with_table.value ? std::to_string(*with_table.value) : "?") +
              " no-table=" + (without.value ? std::to_string(*without.value) : "?") + " in " + fmt(since(start)) + "s";
  return v;
}

Verdict exhaustive_chains() {
  Verdict v{true, {}};
  for (const char* id : {"chase:t=3", "multichase:q=3,t=3"}) {
    const auto start = Clock::now();
    auto b = make_builder(id);
    const long long budget = resolve_budget(*b, std::nullopt);
    const auto report = exhaustive_painter_check(*b, *b->natural_target(), budget);
    const bool ok = report.all_win && (long long)report.max_edges <= budget;
    v.ok = v.ok && ok;
    v.detail += std::string(id) + ": " + (report.all_win ? "all painters lose" : "FAILS: " + report.failure) +
                ", worst " + std::to_string(report.max_edges) + "/" + std::to_string(budget) + " edges, " +
                std::to_string(report.nodes) + " nodes, " + fmt(since(start)) + "s; ";
  }
  return v;
}

Verdict budget_compliance() {
  std::vector<std::string> builders;
  for (const char* oracle : {"table", "es"}) {
    const std::string o = std::string(",oracle=") + oracle;
    for (int t : {3, 4, 5}) builders.push_back("chase:t=" + std::to_string(t) + o);
    builders.push_back("multichase:q=3,t=3" + o);
    for (const char* preset : {"t=4", "t=4,alpha=1/4,mu=1/2,nu=1/4", "t=4,alpha=1/2,mu=3/4,nu=1/2",
                               "t=5,alpha=2/5,mu=3/5,nu=2/5", "t=6,alpha=1/3,mu=2/3,nu=1/3"})
      builders.push_back(std::string("adaptive:") + preset + o);
  }
  for (int t : {4, 5, 6}) {
    builders.push_back("bipartite:q=2,t=" + std::to_string(t));
    builders.push_back("bipartite:q=2,t=" + std::to_string(t) + ",force=1");
  }
  std::vector<std::string> painters;
  for (int seed = 0; seed < 20; ++seed) painters.push_back("random:seed=" + std::to_string(seed));
  painters.push_back("greedy");
  painters.push_back("minthreat:depth=2");

  const auto start = Clock::now();
  int matches = 0, wins = 0, explained = 0;
  std::vector<std::string> unexplained;
  for (const auto& bid : builders) {
    const auto proto = make_builder(bid);
    const auto failures = proto->precondition_failures();
    for (const auto& pid : painters) {
      MatchConfig cfg;
      cfg.builder = bid;
      cfg.painter = pid;
      const auto rec = run_match(cfg);
      ++matches;
      if (rec.builder_won() && !rec.budget_violation()) {
        ++wins;
      } else if (bid.starts_with("bipartite") && !failures.empty() &&
                 (rec.result.kind != ResultKind::kAborted || rec.result.failures == failures)) {
        ++explained;
      } else if (unexplained.size() < 5) {
        unexplained.push_back(bid + " vs " + pid + " -> " + to_string(rec.result.kind) + " after " +
                              std::to_string(rec.result.edges) + " edges " + rec.result.message);
      } else {
        unexplained.push_back("...");
      }
    }
  }
  const double secs = since(start);
  Verdict v;
  const std::size_t bad = std::size_t(matches - wins - explained);
  v.ok = bad == 0 && matches >= 500 && secs < 1800;
  v.detail = std::to_string(matches) + " matches over " + std::to_string(builders.size()) + " builders: " +
             std::to_string(wins) + " builder wins within budget, " + std::to_string(explained) +
             " bipartite runs explained by failed preconditions, " + std::to_string(bad) + " unexplained, " +
             fmt(secs) + "s";
  for (const auto& u : unexplained) v.detail += "; " + u;
  return v;
}

Verdict kst() {
  const auto start = Clock::now();
  const std::vector<Rational> eps{Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(1, 3), Rational(1)};
  int instances = 0, valid = 0;
  for (auto [r, s] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    std::mt19937_64 rng(7000 + 10 * r + s);
    for (int i = 0; i < 200; ++i) {
      const Rational e = eps[std::size_t(i) % eps.size()];
      const auto th = kst_thresholds(e, r, s);
      const auto inst = random_kst_instance(th.m_min.convert_to<int>(), th.n_min.convert_to<int>(), e, r, s, rng);
      if (!check_thresholds(inst).ok()) continue;
      ++instances;
      KstOptions opts;
      opts.seed = std::uint64_t(i);
      const auto res = extract_krs(inst, opts);
      // direct adjacency verification, independent of the extractor
      bool ok = int(res.a_side.size()) == r && int(res.b_side.size()) == s;
      for (int a : res.a_side)
        for (int b : res.b_side) ok = ok && a >= 0 && a < inst.m && b >= 0 && b < inst.n && inst.adjacent(a, b);
      valid += ok;
    }
  }
  const double secs = since(start);
  return {instances == 600 && valid == 600 && secs < 60,
          std::to_string(valid) + "/" + std::to_string(instances) + " at-threshold instances yield a verified K_{r,s} in " +
              fmt(secs) + "s"};
}

Verdict chains() {
  using boost::multiprecision::abs;
  Verdict v{true, {}};
  auto record = [&](const char* name, const BoundReport& r) {
    v.ok = v.ok && r.all_true();
    v.detail += std::string(name) + (r.all_true() ? " all-true; " : " FAILED " + std::to_string(r.failed().size()) + "; ");
  };
  record("main(1e6)", verify_main_chain(1000000));
  record("specifics(1e6, C=0)", verify_specifics_chain(1000000, BoundParams{}));
  record("bipartite(2, 1024)", verify_bipartite_chain(2, 1024));

  const auto six = verify_bipartite_chain(2, 6).link("growth");
  const Real value = six.lhs_value();
  const bool growth_ok = !six.holds && abs(value - Real("6.6")) < Real("0.066") &&
                         abs(value / Real(oracle::kGrowthLink_2_6) - 1) < Real("1e-12");
  v.ok = v.ok && growth_ok;
  v.detail += "bipartite(2, 6) growth link " + std::string(six.holds ? "holds" : "fails") + " at " +
              detail::real_str(value, 6) + "; ";

  Real worst = 0;
  int compared = 0;
  auto rel = [](const BoundLink& l, const Real& fast, const Real& exact) -> Real {
    if (l.log_scale) return abs(boost::multiprecision::pow(Real(2), fast - exact) - 1);
    return abs(fast - exact) / std::max(Real(1), abs(exact));
  };
  for (long long t = 2; t <= 64; ++t) {
    for (const auto& r : {verify_main_chain(t), verify_specifics_chain(t), verify_bipartite_chain(2, t)}) {
      for (const auto& l : r.links) {
        if (l.lhs_exact) ++compared, worst = std::max(worst, rel(l, l.lhs, *l.lhs_exact));
        if (l.rhs_exact) ++compared, worst = std::max(worst, rel(l, l.rhs, *l.rhs_exact));
      }
    }
  }
  const bool agree = compared > 0 && worst < Real("1e-9");
  v.ok = v.ok && agree;
  v.detail += "log vs exact over " + std::to_string(compared) + " values, worst relative error " + detail::real_str(worst, 3);
  return v;
}

Verdict oracle_integrity() {
  const auto start = Clock::now();
  const auto entry = RamseyOracle::with_default_table().r(3, 3);
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) pairs.emplace_back(u, v);
  auto mono_triangle = [](int n, auto colour) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          if (colour(a, b) == colour(a, c) && colour(a, b) == colour(b, c)) return true;
    return false;
  };
  int covered = 0, engine_agrees = 0;
  for (int mask = 0; mask < (1 << 15); ++mask) {
    int idx[6][6] = {};
    ColoredGraphState s(2, 6);
    for (int i = 0; i < 15; ++i) {
      auto [u, v] = pairs[std::size_t(i)];
      idx[u][v] = idx[v][u] = (mask >> i & 1) + 1;
      s.draw(Vertex(u), Vertex(v));
      s.paint(Color(idx[u][v]));
    }
    const bool direct = mono_triangle(6, [&](int a, int b) { return idx[a][b]; });
    covered += direct;
    engine_agrees += direct == contains_mono_copy(s, TargetSpec::clique(3)).has_value();
  }
  // pentagon and pentagram
  auto c5 = [](int a, int b) { return (b - a == 1 || b - a == 4) ? 1 : 2; };
  const bool k5_free = !mono_triangle(5, c5);
  const double secs = since(start);
  const bool ok = entry.value == 6 && covered == (1 << 15) && engine_agrees == (1 << 15) && k5_free && secs < 1;
  return {ok, "table r(3,3)=" + entry.value.str() + "; " + std::to_string(covered) +
                  "/32768 colourings of K6 contain a mono triangle; K5 pentagon colouring " +
                  (k5_free ? "triangle-free" : "HAS a triangle") + "; " + fmt(secs) + "s"};
}

}  // namespace

int main(int argc, char** argv) {
  bool stretch = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--stretch") {
      stretch = true;
    } else {
      std::cerr << "usage: acceptance [--stretch]\n";
      return 2;
    }
  }
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"path values", [&] { return path_values(stretch); }},
      {"small values and solver modes", small_values},
      {"chase strategies vs exhaustive painters", exhaustive_chains},
      {"budget compliance suite", budget_compliance},
      {"KST extraction", kst},
      {"inequality chains", chains},
      {"r(3,3) table entry", oracle_integrity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += !v.ok;
    std::cout << (v.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << v.detail << std::endl;
  }
  return failed ? 1 : 0;
}
