#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "olr/bignum.hpp"
#include "olr/error.hpp"

namespace olr {

// ---------------------------------------------------------------------------
// Closed-form Ramsey upper bounds
// ---------------------------------------------------------------------------

enum class EsMode {
  kBinomial,   // C(k+l, k)
  kClassical,  // C(k+l-2, k-1)
};

/// Erdos-Szekeres style bound; r(1, l) = r(k, 1) = 1 in both modes.
inline BigInt es_bound(long long k, long long l, EsMode mode = EsMode::kBinomial) {
  if (k < 1 || l < 1) throw Error(ErrorCode::kDomainViolation, "es_bound needs k, l >= 1");
  if (k == 1 || l == 1) return 1;
  return mode == EsMode::kBinomial ? binomial(k + l, k) : binomial(k + l - 2, k - 1);
}

/// The multinomial coefficient (k_1 + ... + k_q)! / prod k_i!, an upper
/// bound for r(k_1, ..., k_q).
inline BigInt multinomial_bound(std::span<const long long> ks) {
  for (long long k : ks)
    if (k < 1) throw Error(ErrorCode::kDomainViolation, "multinomial_bound needs every k_i >= 1");
  return multinomial(ks);
}

/// Multicolour analogue of the classical mode: multinomial over (k_i - 1).
inline BigInt classical_multinomial_bound(std::span<const long long> ks) {
  std::vector<long long> reduced;
  for (long long k : ks) reduced.push_back(k - 1);
  return multinomial(reduced);
}

/// Unspecified constants of the asymptotic statements. All default to 0, in
/// which case the diagonal bound degrades to the plain binomial.
struct BoundParams {
  Real c_diag = 0;       // exponent constant of the off-diagonal binomial improvement
  Real c_specifics = 0;  // c in t^{-c log t / log log t} for the clique budget
  bool trust_diagonal = false;  // let the oracle use diagonal_bound (only sound if c_diag is a proven constant)
};

/// log2 of k^{-C ln k / ln ln k} * C(k+l, k), valid for l/2 <= k <= 2l, k >= 3.
inline Real diagonal_bound_log2(long long k, long long l, const BoundParams& params) {
  if (2 * k < l || k > 2 * l) {
    throw Error(ErrorCode::kDomainViolation, "diagonal bound needs l/2 <= k <= 2l (k=" + std::to_string(k) +
                                                 ", l=" + std::to_string(l) + ")");
  }
  if (k < 3) throw Error(ErrorCode::kDomainViolation, "diagonal bound needs k >= 3");
  using boost::multiprecision::log;
  const Real kr = k;
  const Real lnk = log(kr);
  const Real penalty = params.c_diag * (lnk / log(lnk)) * log2_real(kr);
  return log2_binomial(Real(k + l), kr) - penalty;
}

// ---------------------------------------------------------------------------
// Ramsey oracle
// ---------------------------------------------------------------------------

enum class Provenance { kTrivial, kTable, kFormula };

constexpr const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kTrivial: return "trivial";
    case Provenance::kTable: return "table";
    case Provenance::kFormula: return "formula";
  }
  return "?";
}

struct OracleValue {
  BigInt value;
  Provenance provenance;
};

/// Upper bounds r-bar(k_1, ..., k_q) >= r(k_1, ..., k_q): a table of known
/// small values, trivial cases, and closed-form fallbacks.
class RamseyOracle {
 public:
  struct Entry {
    BigInt value;
    std::string status;  // "verified" | "literature"
  };

  /// Known exact values. r(3,3) is verified by exhaustive search in the test
  /// suite; the rest are standard literature values.
  static RamseyOracle with_default_table() {
    RamseyOracle o;
    o.set({3, 3}, 6, "verified");
    o.set({3, 4}, 9, "literature");
    o.set({3, 5}, 14, "literature");
    o.set({3, 6}, 18, "literature");
    o.set({3, 7}, 23, "literature");
    o.set({3, 8}, 28, "literature");
    o.set({3, 9}, 36, "literature");
    o.set({4, 4}, 18, "literature");
    o.set({4, 5}, 25, "literature");
    o.set({3, 3, 3}, 17, "literature");
    return o;
  }

  /// No table: trivial cases and formulas only ("es_bound" oracle).
  static RamseyOracle formula_only() { return RamseyOracle{}; }

  static RamseyOracle from_json(const nlohmann::json& j) {
    RamseyOracle o;
    try {
      for (const auto& [key, entry] : j.items()) {
        std::vector<long long> ks;
        std::stringstream ss(key);
        std::string part;
        while (std::getline(ss, part, ',')) ks.push_back(std::stoll(part));
        o.set(ks, BigInt(entry.at("value").get<long long>()), entry.value("status", "literature"));
      }
    } catch (const std::exception& ex) {
      throw Error(ErrorCode::kParse, std::string("oracle table: ") + ex.what());
    }
    return o;
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [ks, entry] : table_) {
      std::string key;
      for (std::size_t i = 0; i < ks.size(); ++i) key += (i ? "," : "") + std::to_string(ks[i]);
      j[key] = {{"value", entry.value.convert_to<long long>()}, {"status", entry.status}};
    }
    return j;
  }

  void set(std::vector<long long> ks, BigInt value, std::string status) {
    std::sort(ks.begin(), ks.end());
    table_[ks] = Entry{std::move(value), std::move(status)};
  }

  const std::map<std::vector<long long>, Entry>& table() const noexcept { return table_; }

  void set_params(const BoundParams& params) { params_ = params; }

  OracleValue r(long long k, long long l) const { return r(std::vector<long long>{k, l}); }

  OracleValue r(std::vector<long long> ks) const {
    for (long long k : ks)
      if (k < 1) throw Error(ErrorCode::kDomainViolation, "oracle arguments must be >= 1");
    if (ks.empty()) throw Error(ErrorCode::kDomainViolation, "oracle needs at least one argument");
    if (std::find(ks.begin(), ks.end(), 1) != ks.end()) return {1, Provenance::kTrivial};
    std::sort(ks.begin(), ks.end());
    // a colour asking only for K_2 is satisfied by any edge of that colour
    std::vector<long long> rest;
    for (long long k : ks)
      if (k != 2) rest.push_back(k);
    if (rest.empty()) return {2, Provenance::kTrivial};
    if (rest.size() == 1) return {rest.front(), Provenance::kTrivial};
    if (auto it = table_.find(rest); it != table_.end()) return {it->second.value, Provenance::kTable};
    BigInt best = classical_multinomial_bound(rest);
    best = std::min(best, multinomial_bound(rest));
    if (params_.trust_diagonal && rest.size() == 2 && 2 * rest[0] >= rest[1] && rest[0] >= 3) {
      const Real d = boost::multiprecision::pow(Real(2), diagonal_bound_log2(rest[0], rest[1], params_));
      best = std::min(best, floor_real(d));
    }
    return {best, Provenance::kFormula};
  }

  /// log2 of r(k, l), switching to the log-domain classical bound for
  /// arguments too large to evaluate exactly.
  Real log2_r(long long k, long long l) const {
    if (k < 1 || l < 1) throw Error(ErrorCode::kDomainViolation, "oracle arguments must be >= 1");
    if (std::min(k, l) <= 2 || k + l <= 4000) return log2_big(r(k, l).value);
    return log2_binomial(Real(k + l - 2), Real(k - 1));
  }

 private:
  std::map<std::vector<long long>, Entry> table_;
  BoundParams params_;
};

/// Oracle on residual sizes, where a residual <= 1 means the chain alone
/// already closes a clique once any vertex is left.
inline BigInt residual_oracle(const RamseyOracle& oracle, std::vector<long long> residuals) {
  for (long long k : residuals)
    if (k <= 1) return 1;
  return oracle.r(std::move(residuals)).value;
}

// ---------------------------------------------------------------------------
// Strategy budgets
// ---------------------------------------------------------------------------

struct SpecificsBudget {
  int t = 0;
  int m = 0;  // chain steps, ceil(3t/2)
  BigInt p;   // fill size
  BigInt n;   // 2^m p
  BigInt chain_edges;    // m * n
  BigInt total;          // m n + p(p-1)/2
  BigInt relaxed_total;  // t 2^{m+1} p + p(p-1)/2
};

inline BigInt pairs(const BigInt& p) { return p * (p - 1) / 2; }

inline SpecificsBudget budget_specifics(int t, const RamseyOracle& oracle) {
  if (t < 2) throw Error(ErrorCode::kDomainViolation, "budget_specifics needs t >= 2");
  SpecificsBudget b;
  b.t = t;
  b.m = (3 * t + 1) / 2;
  b.p = 1;
  for (int a = 0; a <= b.m; ++a) b.p = std::max(b.p, residual_oracle(oracle, {t - a, t - (b.m - a)}));
  b.n = pow_int(2, b.m) * b.p;
  b.chain_edges = BigInt(b.m) * b.n;
  b.total = b.chain_edges + pairs(b.p);
  b.relaxed_total = BigInt(t) * pow_int(2, b.m + 1) * b.p + pairs(b.p);
  return b;
}

struct MulticolorBudget {
  int q = 0;
  int t = 0;
  int m = 0;
  BigInt p;
  BigInt n;
  BigInt total;
};

/// Default chain length ceil((q-1) t), capped where some colour must have
/// reached t-1 steps anyway.
inline int default_multicolor_chain(int q, int t) { return (q - 1) * t; }

inline MulticolorBudget budget_multicolor(int q, int t, const RamseyOracle& oracle, std::optional<int> chain = {}) {
  if (q < 2 || t < 2) throw Error(ErrorCode::kDomainViolation, "budget_multicolor needs q, t >= 2");
  MulticolorBudget b;
  b.q = q;
  b.t = t;
  b.m = std::min(chain.value_or(default_multicolor_chain(q, t)), q * (t - 2) + 1);
  if (b.m < 1) throw Error(ErrorCode::kDomainViolation, "chain length must be >= 1");
  b.p = 1;
  // every split of m chain steps among q colours
  std::vector<long long> counts(q, 0);
  std::function<void(int, int)> rec = [&](int colour, int left) {
    if (colour == q - 1) {
      counts[colour] = left;
      std::vector<long long> residual;
      for (long long a : counts) residual.push_back(t - a);
      b.p = std::max(b.p, residual_oracle(oracle, residual));
      return;
    }
    for (int a = 0; a <= left; ++a) {
      counts[colour] = a;
      rec(colour + 1, left - a);
    }
  };
  rec(0, b.m);
  b.n = pow_int(q, b.m) * b.p;
  b.total = BigInt(b.m) * b.n + pairs(b.p);
  return b;
}

struct AdaptiveParams {
  int t = 0;
  Rational alpha;
  Rational mu;
  Rational nu;

  static AdaptiveParams asymptotic_preset(int t) { return {t, Rational(1, 100), Rational(99, 100), Rational(1, 100)}; }

  long long mu_count() const { return ceil_rational(mu * t).convert_to<long long>(); }
  long long nu_count() const { return ceil_rational(nu * t).convert_to<long long>(); }

  void validate() const {
    if (t < 2) throw Error(ErrorCode::kDomainViolation, "adaptive strategy needs t >= 2");
    if (!(alpha > 0 && alpha < 1)) throw Error(ErrorCode::kDomainViolation, "alpha must be in (0,1)");
    if (!(nu > 0 && nu < mu && mu < 1)) throw Error(ErrorCode::kDomainViolation, "need 0 < nu < mu < 1");
    if (nu_count() < 1) throw Error(ErrorCode::kDomainViolation, "ceil(nu t) must be >= 1");
  }
};

struct MainBudget {
  long long m_max = 0;  // longest possible colour string
  BigInt p;
  std::optional<BigInt> n;      // exact when feasible
  std::optional<BigInt> total;  // m_max n + p(p-1)/2
  Real log2_n;
  Real log2_total;
  Real log2_relaxed;  // log2 of t (2/alpha)^{nu t} (1-alpha)^{-t} p + p(p-1)/2
};

/// Budget of the colour-string strategy. Exponents use the ceiled step
/// counts ceil(nu t), ceil(mu t) so n stays an exact rational ceiling.
inline MainBudget budget_main(const AdaptiveParams& params, const RamseyOracle& oracle, long long exact_limit = 20000) {
  params.validate();
  const long long t = params.t;
  const long long mu_c = params.mu_count();
  const long long nu_c = params.nu_count();
  MainBudget b;
  b.m_max = mu_c + nu_c - 1;
  const long long low = ceil_rational((1 - params.mu) * t).convert_to<long long>();
  const long long diag = ceil_rational((1 - params.nu) * t).convert_to<long long>();
  Real log2_p;
  if (t <= exact_limit) {
    b.p = std::max(residual_oracle(oracle, {low, t}), residual_oracle(oracle, {diag, diag}));
    log2_p = log2_big(b.p);
  } else {
    log2_p = std::max(low <= 1 ? Real(0) : oracle.log2_r(low, t), diag <= 1 ? Real(0) : oracle.log2_r(diag, diag));
  }
  const Real log2_growth = Real(nu_c) * log2_rational(2 / params.alpha) - Real(mu_c) * log2_rational(1 - params.alpha);
  if (t <= exact_limit) {
    // (2/alpha)^nu_c (1-alpha)^{-mu_c} with alpha = a/d, kept as one fraction
    const BigInt a = boost::multiprecision::numerator(params.alpha);
    const BigInt d = boost::multiprecision::denominator(params.alpha);
    const BigInt growth = ceil_div(pow_int(2 * d, nu_c) * pow_int(d, mu_c), pow_int(a, nu_c) * pow_int(d - a, mu_c));
    b.n = growth * b.p;
    b.total = BigInt(b.m_max) * *b.n + pairs(b.p);
    b.log2_n = log2_big(*b.n);
    b.log2_total = log2_big(*b.total);
  } else {
    b.log2_n = log2_growth + log2_p;
    b.log2_total = log2_add(log2_real(Real(b.m_max)) + b.log2_n, 2 * log2_p - 1);
  }
  const Real tr = Real(t);
  const Real log2_relaxed_chain = log2_real(tr) + to_real(params.nu) * tr * log2_rational(2 / params.alpha) -
                                  tr * log2_rational(1 - params.alpha) + log2_p;
  b.log2_relaxed = log2_add(log2_relaxed_chain, 2 * log2_p - 1);
  return b;
}

/// log_q(x) at 50 digits.
inline Real log_base(const Real& x, int q) { return boost::multiprecision::log(x) / boost::multiprecision::log(Real(q)); }

/// Sizes used by the bipartite strategy at (q, t). log is base q.
struct BipartitePlan {
  int q = 0;
  int t = 0;
  int log_ceil = 0;  // L = ceil(log_q t)
  int r1 = 0;        // t - 2L joint neighbours found in N
  Real log_t;        // log_q t
  Real epsilon;      // (q-1)(log t - log log t) / (q^2 t)
  BigInt m_size;     // |M| = ceil(6 q^{t+1} log t)
  BigInt n_size;     // |N| = 2 q t^2
  BigInt s1;         // 3 q t^2 = |M'|
  BigInt n2_size;    // |N'| = ceil(12 q^t t^{1-1/q} log^{1/q} t)
  BigInt phase1_edges;
  BigInt phase2_edges;
  Real declared;     // 48 q^{t+2} t^{3-1/q} log^{1/q} t
  BigInt declared_floor;
};

inline Real budget_bipartite(int q, int t) {
  if (q < 2 || t < q) throw Error(ErrorCode::kDomainViolation, "budget_bipartite needs q >= 2 and t >= q");
  using boost::multiprecision::pow;
  const Real lg = log_base(Real(t), q);
  const Real qr = q;
  const Real tr = t;
  return 48 * pow(qr, tr + 2) * pow(tr, 3 - 1 / qr) * pow(lg, 1 / qr);
}

inline BipartitePlan bipartite_plan(int q, int t) {
  if (q < 2 || t < q) throw Error(ErrorCode::kDomainViolation, "bipartite plan needs q >= 2 and t >= q");
  if (t > 4096) throw Error(ErrorCode::kDomainViolation, "bipartite plan sizes are evaluated exactly only for t <= 4096");
  using boost::multiprecision::pow;
  BipartitePlan p;
  p.q = q;
  p.t = t;
  p.log_t = log_base(Real(t), q);
  p.log_ceil = ceil_real(p.log_t).convert_to<int>();
  p.r1 = t - 2 * p.log_ceil;
  const Real qr = q;
  const Real tr = t;
  p.epsilon = (qr - 1) * (p.log_t - log_base(p.log_t, q)) / (qr * qr * tr);
  p.m_size = ceil_real(6 * pow(qr, tr + 1) * p.log_t);
  p.n_size = BigInt(2) * q * t * t;
  p.s1 = BigInt(3) * q * t * t;
  p.n2_size = ceil_real(12 * pow(qr, tr) * pow(tr, 1 - 1 / qr) * pow(p.log_t, 1 / qr));
  p.phase1_edges = p.m_size * p.n_size;
  p.phase2_edges = p.s1 * p.n2_size;
  p.declared = budget_bipartite(q, t);
  p.declared_floor = floor_real(p.declared);
  return p;
}

// ---------------------------------------------------------------------------
// Inequality chains
// ---------------------------------------------------------------------------

/// One evaluated inequality lhs <= rhs. On the log2 scale both sides are
/// base-2 logarithms; on the linear scale they are plain values.
struct BoundLink {
  std::string name;
  std::string formula;
  bool log_scale = true;
  bool strict = true;  // real-valued links need rhs - lhs > 1e-12
  Real lhs;
  Real rhs;
  bool holds = false;
  std::optional<Real> lhs_exact;  // same quantities via exact rational arithmetic
  std::optional<Real> rhs_exact;
  std::optional<long long> holds_from;  // empirical threshold from a scan, when requested

  Real margin() const { return rhs - lhs; }
  /// lhs as a plain number (2^lhs on the log scale).
  Real lhs_value() const { return log_scale ? boost::multiprecision::pow(Real(2), lhs) : lhs; }
  Real rhs_value() const { return log_scale ? boost::multiprecision::pow(Real(2), rhs) : rhs; }
};

struct BoundReport {
  std::string chain;
  std::string point;
  std::vector<BoundLink> links;

  bool all_true() const {
    return std::all_of(links.begin(), links.end(), [](const BoundLink& l) { return l.holds; });
  }

  const BoundLink& link(const std::string& name) const {
    for (const auto& l : links)
      if (l.name == name) return l;
    throw Error(ErrorCode::kNotFound, "no link named " + name);
  }

  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& l : links)
      if (!l.holds) out.push_back(l.name);
    return out;
  }
};

namespace detail {

inline std::string real_str(const Real& x, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

inline void judge(BoundLink& link) {
  static const Real tol("1e-12");
  link.holds = link.strict ? (link.rhs - link.lhs > tol) : (link.rhs - link.lhs >= -tol);
}

struct LinkEval {
  Real lhs;
  Real rhs;
  std::optional<Real> lhs_exact;
  std::optional<Real> rhs_exact;
};

struct LinkDef {
  std::string name;
  std::string formula;
  bool log_scale;
  bool strict;
  std::function<LinkEval(long long)> eval;
};

inline BoundLink run_link(const LinkDef& def, long long t, long long scan_from, long long scan_to) {
  BoundLink link;
  link.name = def.name;
  link.formula = def.formula;
  link.log_scale = def.log_scale;
  link.strict = def.strict;
  auto e = def.eval(t);
  link.lhs = e.lhs;
  link.rhs = e.rhs;
  link.lhs_exact = e.lhs_exact;
  link.rhs_exact = e.rhs_exact;
  judge(link);
  if (scan_to >= scan_from) {
    // smallest t0 such that the link holds on every t in [t0, scan_to]
    long long from = scan_to + 1;
    for (long long s = scan_to; s >= scan_from; --s) {
      BoundLink probe = link;
      auto pe = def.eval(s);
      probe.lhs = pe.lhs;
      probe.rhs = pe.rhs;
      judge(probe);
      if (!probe.holds) break;
      from = s;
    }
    if (from <= scan_to) link.holds_from = from;
  }
  return link;
}

/// log2(2^a - 1) for a > 0.
inline Real log2_minus_one(const Real& a) {
  return a + log2_real(1 - boost::multiprecision::pow(Real(2), -a));
}

inline Real log2_ll(long long x) { return log2_real(Real(x)); }

/// Finds the k in [lo, hi] maximizing f_fast (long double), then returns the
/// precise value of the best few candidates under f_precise.
inline std::pair<long long, Real> argmax_scan(long long lo, long long hi, const std::function<long double(long long)>& f_fast,
                                              const std::function<Real(long long)>& f_precise) {
  std::vector<std::pair<long double, long long>> top;
  for (long long k = lo; k <= hi; ++k) {
    top.emplace_back(f_fast(k), k);
    if (top.size() > 8) {
      std::sort(top.begin(), top.end(), std::greater<>());
      top.resize(4);
    }
  }
  long long best_k = lo;
  Real best = 0;
  bool have = false;
  for (auto [v, k] : top) {
    Real p = f_precise(k);
    if (!have || p > best) {
      best = p;
      best_k = k;
      have = true;
    }
  }
  return {best_k, best};
}

inline long double log2_binom_fast(long long n, long long k) {
  return (std::lgamma((long double)n + 1) - std::lgamma((long double)k + 1) - std::lgamma((long double)(n - k) + 1)) /
         std::log(2.0L);
}

}  // namespace detail

/// Links of the colour-string strategy's estimate at the asymptotic constants
/// alpha = nu = 0.01, mu = 0.99, with r(t) >= 2^{t/2} standing in for r(t).
inline BoundReport verify_main_chain(long long t, const RamseyOracle& oracle = RamseyOracle::with_default_table(),
                                     long long scan_to = 0) {
  if (t < 2) throw Error(ErrorCode::kDomainViolation, "verify_main_chain needs t >= 2");
  using boost::multiprecision::log;
  using detail::LinkDef;
  using detail::LinkEval;
  const Real e1 = boost::multiprecision::exp(Real(1));
  auto kk = [](long long s) { return (s + 99) / 100; };  // ceil(0.01 s)
  auto exact_ok = [](long long s) { return s <= 64; };

  std::vector<LinkDef> defs;
  defs.push_back({"es", "r(0.01t, t) <= C(1.01t, t)", true, true, [&](long long s) {
                    const long long k = kk(s);
                    LinkEval e{oracle.log2_r(k, s), log2_binomial(Real(s + k), Real(k)), {}, {}};
                    if (exact_ok(s)) {
                      e.lhs_exact = log2_big(oracle.r(k, s).value);
                      e.rhs_exact = log2_big(binomial(s + k, k));
                    }
                    return e;
                  }});
  defs.push_back({"binom_exp", "C(1.01t, t) <= (1.01 e t / 0.01t)^{0.01t}", true, true, [&](long long s) {
                    const long long k = kk(s);
                    return LinkEval{log2_binomial(Real(s + k), Real(k)),
                                    Real(k) * log2_real(e1 * Real(s + k) / Real(k)), {}, {}};
                  }});
  defs.push_back({"exp_106", "(1.01 e t / 0.01t)^{0.01t} <= 1.06^t", true, true, [&](long long s) {
                    const long long k = kk(s);
                    return LinkEval{Real(k) * log2_real(e1 * Real(s + k) / Real(k)),
                                    Real(s) * log2_real(Real("1.06")), {}, {}};
                  }});
  defs.push_back({"sqrt2", "1.06^t <= 1.25^{-t} 2^{t/2}", true, true, [&](long long s) {
                    LinkEval e{Real(s) * (log2_real(Real("1.06")) + log2_real(Real("1.25"))), Real(s) / 2, {}, {}};
                    if (exact_ok(s)) {
                      e.lhs_exact = log2_rational(pow_rational(Rational(106, 100) * Rational(125, 100), s));
                      e.rhs_exact = Real(s) / 2;
                    }
                    return e;
                  }});
  defs.push_back({"const_1066", "200^{0.01} 0.99^{-1} <= 1.066", true, true, [&](long long) {
                    return LinkEval{Real("0.01") * log2_real(Real(200)) - log2_real(Real("0.99")),
                                    log2_real(Real("1.066")), {}, {}};
                  }});
  defs.push_back({"step_1066", "t 200^{0.01t} 0.99^{-t} <= t 1.066^t", true, true, [&](long long s) {
                    const Real sr = s;
                    return LinkEval{detail::log2_ll(s) + sr * (Real("0.01") * log2_real(Real(200)) - log2_real(Real("0.99"))),
                                    detail::log2_ll(s) + sr * log2_real(Real("1.066")), {}, {}};
                  }});
  defs.push_back({"quarter", "t 1.066^t <= (r(t) - 1)/4 at r(t) = 2^{t/2}", true, true, [&](long long s) {
                    const Real sr = s;
                    LinkEval e{detail::log2_ll(s) + sr * log2_real(Real("1.066")), detail::log2_minus_one(sr / 2) - 2, {}, {}};
                    if (exact_ok(s) && s % 2 == 0) {
                      e.lhs_exact = log2_rational(Rational(s) * pow_rational(Rational(1066, 1000), s));
                      e.rhs_exact = log2_rational(Rational(pow_int(2, s / 2) - 1, 4));
                    }
                    return e;
                  }});
  defs.push_back({"final", "(r-1)/4 p + C(p,2) <= 1.001^{-t} C(r,2) at p = 1.001^{-t} r, r = 2^{t/2}", true, true,
                  [&](long long s) {
                    const Real sr = s;
                    const Real log2_r = sr / 2;
                    const Real log2_x = -sr * log2_real(Real("1.001"));
                    const Real log2_p = log2_x + log2_r;
                    const Real chain = detail::log2_minus_one(log2_r) - 2 + log2_p;
                    const Real fill = log2_p + detail::log2_minus_one(log2_p) - 1;
                    LinkEval e{log2_add(chain, fill), log2_x + log2_r + detail::log2_minus_one(log2_r) - 1, {}, {}};
                    if (exact_ok(s) && s % 2 == 0) {
                      const Rational r = Rational(pow_int(2, s / 2));
                      const Rational x = pow_rational(Rational(1001, 1000), -s);
                      const Rational p = x * r;
                      e.lhs_exact = log2_rational((r - 1) / 4 * p + p * (p - 1) / 2);
                      e.rhs_exact = log2_rational(x * r * (r - 1) / 2);
                    }
                    return e;
                  }});
  BoundReport report{"main", "t=" + std::to_string(t), {}};
  for (const auto& d : defs) report.links.push_back(detail::run_link(d, t, 2, scan_to));
  return report;
}

/// Links of the neighbourhood-chase estimate with m = ceil(3t/2).
inline BoundReport verify_specifics_chain(long long t, const BoundParams& params = {}, long long scan_to = 0) {
  if (t < 2) throw Error(ErrorCode::kDomainViolation, "verify_specifics_chain needs t >= 2");
  using detail::LinkDef;
  using detail::LinkEval;
  auto residual = [](long long s) { return 2 * s - (3 * s + 1) / 2; };
  auto c_term = [&](long long s) -> Real {
    // log2 of t^{-c ln t / ln ln t}; zero where ln ln t is not positive
    if (params.c_specifics == 0 || s < 16) return Real(0);
    using boost::multiprecision::log;
    const Real lt = log(Real(s));
    return -params.c_specifics * (lt / log(lt)) * log2_real(Real(s));
  };
  auto p_log2 = [&](long long s) {
    const long long R = residual(s);
    return log2_binomial(Real(R), Real(R / 2));
  };

  std::vector<LinkDef> defs;
  defs.push_back({"p_bound", "max_{a+b=3t/2} r(t-a, t-b) <= 2^{t/2}", true, true, [&](long long s) {
                    const long long R = residual(s);
                    LinkEval e{p_log2(s), Real(s) / 2, {}, {}};
                    if (s <= 64) {
                      e.lhs_exact = log2_big(binomial(R, R / 2));
                      e.rhs_exact = Real(s) / 2;
                    }
                    return e;
                  }});
  defs.push_back({"balanced_min_k", "l/2 <= k <= 2l implies k >= t/8", false, false, [&](long long s) {
                    const long long R = residual(s);
                    return LinkEval{Real(s) / 8, Real((R + 2) / 3), {}, {}};
                  }});
  defs.push_back({"diagonal", "r(t-a,t-b) <= t^{-c log t/log log t} 2^{t/2} (balanced)", true, true, [&](long long s) {
                    const long long R = residual(s);
                    const long long lo = (R + 2) / 3;
                    const long long hi = (2 * R) / 3;
                    Real best = 0;
                    if (lo <= hi) {
                      auto fast = [&](long long k) -> long double {
                        const long double base = detail::log2_binom_fast(R, k);
                        if (k < 3) return base;
                        const long double lk = std::log((long double)k);
                        return base - (long double)params.c_diag * (lk / std::log(lk)) * std::log2((long double)k);
                      };
                      auto precise = [&](long long k) -> Real {
                        if (k < 3) return log2_binomial(Real(R), Real(k));
                        return diagonal_bound_log2(k, R - k, params) - log2_binomial(Real(R), Real(k)) +
                               log2_binomial(Real(R), Real(k));
                      };
                      best = detail::argmax_scan(lo, hi, fast, precise).second;
                    }
                    return LinkEval{best, c_term(s) + Real(s) / 2, {}, {}};
                  }});
  defs.push_back({"product", "C(2t-(a+b), t-a) <= 2^{(t-a)+3(t-b)/4} (5/3)^{(t-b)/4} (unbalanced)", true, false,
                  [&](long long s) {
                    const long long R = residual(s);
                    const long long hi = R / 3;  // k <= l/2 with k + l = R
                    const Real log53 = log2_real(Real(5) / 3);
                    auto rhs_of = [&](long long k) {
                      const Real l = Real(R - k);
                      return Real(k) + 3 * l / 4 + l / 4 * log53;
                    };
                    auto fast = [&](long long k) -> long double {
                      const long double l = (long double)(R - k);
                      return detail::log2_binom_fast(R, k) - ((long double)k + 0.75L * l + 0.25L * l * std::log2(5.0L / 3));
                    };
                    auto precise = [&](long long k) { return log2_binomial(Real(R), Real(k)) - rhs_of(k); };
                    auto [k, gap] = detail::argmax_scan(0, hi, fast, precise);
                    (void)gap;
                    return LinkEval{log2_binomial(Real(R), Real(k)), rhs_of(k), {}, {}};
                  }});
  defs.push_back({"const_5_3", "(5/3)^{1/4} <= 2^{1/4}", true, true, [&](long long) {
                    return LinkEval{log2_real(Real(5) / 3) / 4, Real(1) / 4, {}, {}};
                  }});
  defs.push_back({"final", "t 2^{3t/2+1} p + p^2 <= 2 t^{-c log t/log log t + 1} 4^t + 2^t", true, true, [&](long long s) {
                    const Real sr = s;
                    const Real lp = p_log2(s);
                    const Real lhs = log2_add(detail::log2_ll(s) + 3 * sr / 2 + 1 + lp, 2 * lp);
                    const Real rhs = log2_add(1 + c_term(s) + detail::log2_ll(s) + 2 * sr, sr);
                    LinkEval e{lhs, rhs, {}, {}};
                    if (s <= 64 && s % 2 == 0 && params.c_specifics == 0) {
                      const long long R = residual(s);
                      const BigInt p = binomial(R, R / 2);
                      e.lhs_exact = log2_big(BigInt(s) * pow_int(2, 3 * s / 2 + 1) * p + p * p);
                      e.rhs_exact = log2_big(2 * BigInt(s) * pow_int(4, s) + pow_int(2, s));
                    }
                    return e;
                  }});
  BoundReport report{"specifics", "t=" + std::to_string(t), {}};
  for (const auto& d : defs) report.links.push_back(detail::run_link(d, t, 2, scan_to));
  return report;
}

/// Links of the q-colour K_{t,t} argument, log base q. The KST threshold
/// links use the strategy's actual (ceiled) set sizes.
inline BoundReport verify_bipartite_chain(int q, long long t, long long scan_to = 0) {
  if (q < 2 || t < q) throw Error(ErrorCode::kDomainViolation, "verify_bipartite_chain needs q >= 2 and t >= q");
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  using detail::LinkDef;
  using detail::LinkEval;
  const Real qr = q;
  const Real log2q = log2_real(qr);
  struct At {
    Real t, lg, eps;
    long long L;
  };
  auto at = [&](long long s) {
    At a;
    a.t = s;
    a.lg = log_base(a.t, q);
    a.eps = (qr - 1) * (a.lg - (a.lg > 0 ? log_base(a.lg, q) : Real(0))) / (qr * qr * a.t);
    a.L = ceil_real(a.lg).convert_to<long long>();
    return a;
  };
  // log2 of the strategy's set sizes
  auto log2_m = [&](const At& a) { return log2_real(Real(ceil_real(6 * pow(qr, a.t + 1) * a.lg))); };
  auto log2_n2 = [&](const At& a) {
    return log2_real(Real(ceil_real(12 * pow(qr, a.t) * pow(a.t, 1 - 1 / qr) * pow(a.lg, 1 / qr))));
  };
  auto log2_s1 = [&](const At& a) { return log2_real(3 * qr * a.t * a.t); };

  std::vector<LinkDef> defs;
  defs.push_back({"eps_positive", "log log t < log t", false, true, [&](long long s) {
                    auto a = at(s);
                    return LinkEval{a.lg > 0 ? log_base(a.lg, q) : Real(-1), a.lg, {}, {}};
                  }});
  defs.push_back({"q_eps", "q eps <= 1/2", false, false, [&](long long s) {
                    auto a = at(s);
                    return LinkEval{qr * a.eps, Real(1) / 2, {}, {}};
                  }});
  defs.push_back({"structure", "t - 2 ceil(log t) >= 1", false, false, [&](long long s) {
                    auto a = at(s);
                    return LinkEval{Real(1), Real(s - 2 * a.L), {}, {}};
                  }});
  defs.push_back({"blue_density", "(1/q - eps)^{-t} <= 3 q^t (t/log t)^{1-1/q}", true, true, [&](long long s) {
                    auto a = at(s);
                    return LinkEval{-a.t * log2_real(1 / qr - a.eps),
                                    log2_real(Real(3)) + a.t * log2q + (1 - 1 / qr) * log2_real(a.t / a.lg), {}, {}};
                  }});
  defs.push_back({"growth", "(1 + 2 log^2 t / t^2)^t <= 3", true, true, [&](long long s) {
                    auto a = at(s);
                    LinkEval e{a.t * log2_real(1 + 2 * a.lg * a.lg / (a.t * a.t)), log2_real(Real(3)), {}, {}};
                    if (s <= 64 && pow_int(q, a.L) == s) {
                      e.lhs_exact = log2_rational(pow_rational(1 + Rational(2 * a.L * a.L, s * s), s));
                      e.rhs_exact = log2_real(Real(3));
                    }
                    return e;
                  }});
  defs.push_back({"other_density", "(1/q + eps/(q-1))^{-t} <= 3 q^t (log t/t)^{1/q}", true, true, [&](long long s) {
                    auto a = at(s);
                    return LinkEval{-a.t * log2_real(1 / qr + a.eps / (qr - 1)),
                                    log2_real(Real(3)) + a.t * log2q + log2_real(a.lg / a.t) / qr, {}, {}};
                  }});
  defs.push_back({"kst1_rows", "|N| = 2qt^2 >= 2 q (t - 2 log t)^2", true, false, [&](long long s) {
                    auto a = at(s);
                    const Real r1 = std::max<long long>(s - 2 * a.L, 1);
                    return LinkEval{log2_real(2 * qr * r1 * r1), log2_real(2 * qr * a.t * a.t), {}, {}};
                  }});
  defs.push_back({"kst1_cols", "|M| >= 2 q^{t - 2 log t} 3qt^2", true, false, [&](long long s) {
                    auto a = at(s);
                    const Real r1 = std::max<long long>(s - 2 * a.L, 1);
                    return LinkEval{1 + r1 * log2q + log2_s1(a), log2_m(a), {}, {}};
                  }});
  defs.push_back({"kst2_blue_rows", "|M'| >= 2 (1/q - eps)^{-1} t^2", true, false, [&](long long s) {
                    auto a = at(s);
                    return LinkEval{1 - log2_real(1 / qr - a.eps) + 2 * log2_real(a.t), log2_s1(a), {}, {}};
                  }});
  defs.push_back({"kst2_blue_cols", "|N'| >= 2 (1/q - eps)^{-t} 2 log t", true, false, [&](long long s) {
                    auto a = at(s);
                    return LinkEval{1 - a.t * log2_real(1 / qr - a.eps) + log2_real(Real(2 * a.L)), log2_n2(a), {}, {}};
                  }});
  defs.push_back({"kst2_other_rows", "|M'| >= 2 (1/q + eps/(q-1))^{-1} t^2", true, false, [&](long long s) {
                    auto a = at(s);
                    return LinkEval{1 - log2_real(1 / qr + a.eps / (qr - 1)) + 2 * log2_real(a.t), log2_s1(a), {}, {}};
                  }});
  defs.push_back({"kst2_other_cols", "|N'| >= 2 (1/q + eps/(q-1))^{-t} t", true, false, [&](long long s) {
                    auto a = at(s);
                    return LinkEval{1 - a.t * log2_real(1 / qr + a.eps / (qr - 1)) + log2_real(a.t), log2_n2(a), {}, {}};
                  }});
  defs.push_back({"budget", "|M||N| + |M'||N'| <= 48 q^{t+2} t^{3-1/q} log^{1/q} t", true, false, [&](long long s) {
                    auto a = at(s);
                    const Real lhs = log2_add(log2_m(a) + log2_real(2 * qr * a.t * a.t), log2_s1(a) + log2_n2(a));
                    const Real rhs = log2_real(Real(48)) + (a.t + 2) * log2q + (3 - 1 / qr) * log2_real(a.t) +
                                     log2_real(a.lg) / qr;
                    return LinkEval{lhs, rhs, {}, {}};
                  }});
  BoundReport report{"bipartite", "q=" + std::to_string(q) + ",t=" + std::to_string(t), {}};
  for (const auto& d : defs) report.links.push_back(detail::run_link(d, t, q, scan_to));
  return report;
}

inline nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json links = nlohmann::json::array();
  for (const auto& l : report.links) {
    nlohmann::json j{{"name", l.name},
                     {"formula", l.formula},
                     {"scale", l.log_scale ? "log2" : "linear"},
                     {"lhs", detail::real_str(l.lhs, 20)},
                     {"rhs", detail::real_str(l.rhs, 20)},
                     {"margin", detail::real_str(l.margin(), 6)},
                     {"holds", l.holds}};
    if (l.lhs_exact) j["lhs_exact"] = detail::real_str(*l.lhs_exact, 20);
    if (l.rhs_exact) j["rhs_exact"] = detail::real_str(*l.rhs_exact, 20);
    if (l.holds_from) j["holds_from"] = *l.holds_from;
    links.push_back(std::move(j));
  }
  return {{"v", 1}, {"chain", report.chain}, {"point", report.point}, {"links", links}, {"all_true", report.all_true()}};
}

/// Aligned text table, one row per link.
inline std::string to_text(const BoundReport& report) {
  std::ostringstream os;
  os << report.chain << " chain at " << report.point << (report.all_true() ? "  [all true]" : "  [has failures]") << "\n";
  os << std::left << std::setw(18) << "link" << std::setw(8) << "holds" << std::setw(24) << "lhs" << std::setw(24) << "rhs"
     << "formula\n";
  for (const auto& l : report.links) {
    auto show = [&](const Real& v) {
      if (!l.log_scale) return detail::real_str(v, 8);
      if (boost::multiprecision::abs(v) < 60) return detail::real_str(boost::multiprecision::pow(Real(2), v), 8);
      return "2^" + detail::real_str(v, 10);
    };
    os << std::setw(18) << l.name << std::setw(8) << (l.holds ? "yes" : "NO") << std::setw(24) << show(l.lhs)
       << std::setw(24) << show(l.rhs) << l.formula;
    if (l.holds_from) os << "  (holds from t=" << *l.holds_from << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace olr
