// olr: command-line front end for the solver, match engine, bound
// calculator, KST extractor and the session server.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "olr/olr.hpp"
#include "olr/service.hpp"

using namespace olr;

namespace {

nlohmann::json read_json(const std::string& path) {
  if (path == "-") return nlohmann::json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  return nlohmann::json::parse(in);
}

void print(const nlohmann::json& j, bool compact) { std::cout << (compact ? j.dump() : j.dump(2)) << '\n'; }

int run_solve(const std::string& target_text, int q, int max_budget, bool no_table, bool certificate, int threads,
              bool compact) {
  SolverOptions opts;
  opts.max_budget = max_budget;
  opts.use_table = !no_table;
  opts.certificates = certificate;
  opts.threads = threads;
  const auto r = solve(parse_target(target_text, q), opts);
  auto j = to_json(r, certificate);
  if (certificate && r.value) j["certificate_verified"] = verify_certificate(r).ok();
  print(j, compact);
  return r.value ? 0 : 3;
}

int run_match_cmd(const MatchConfig& cfg, int games, const std::string& ndjson, bool compact) {
  std::ofstream log;
  if (!ndjson.empty()) {
    log.open(ndjson, std::ios::app);
    if (!log) throw Error(ErrorCode::kInvalidArgument, "cannot open " + ndjson);
  }
  int builder_wins = 0;
  for (int g = 0; g < games; ++g) {
    MatchConfig c = cfg;
    c.seed = cfg.seed + std::uint64_t(g);
    const auto rec = run_match(c);
    builder_wins += rec.builder_won();
    if (log.is_open()) write_ndjson(log, rec);
    if (games == 1) {
      auto j = to_json(rec);
      if (compact) j.erase("moves");
      print(j, compact);
    } else {
      print({{"seed", c.seed}, {"result", to_json(rec.result)}, {"budget", rec.budget}}, true);
    }
  }
  if (games > 1) print({{"games", games}, {"builder_wins", builder_wins}}, true);
  return 0;
}

int run_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  int bad = 0, n = 0;
  for (const auto& rec : read_ndjson(in)) {
    const auto out = replay(rec);
    ++n;
    bad += !out.matches;
    print({{"line", n}, {"builder", rec.builder_id}, {"painter", rec.painter_id}, {"consistent", out.matches}}, true);
  }
  return bad ? 1 : 0;
}

BoundReport chain_report(const std::string& chain, long long t, int q, long long scan_to, double c_specifics) {
  if (chain == "main") return verify_main_chain(t, RamseyOracle::with_default_table(), scan_to);
  if (chain == "specifics") {
    BoundParams p;
    p.c_specifics = Real(c_specifics);
    return verify_specifics_chain(t, p, scan_to);
  }
  if (chain == "bipartite") return verify_bipartite_chain(q, t, scan_to);
  throw Error(ErrorCode::kInvalidArgument, "unknown chain '" + chain + "' (main, specifics, bipartite)");
}

int run_bounds(const std::string& chain, long long t, int q, long long scan_to, double c_specifics, bool json) {
  const auto report = chain_report(chain, t, q, scan_to, c_specifics);
  if (json) {
    print(to_json(report), false);
  } else {
    std::cout << to_text(report);
  }
  return report.all_true() ? 0 : 1;
}

int run_budget(const std::string& id) {
  auto b = make_builder(id);
  nlohmann::json j = {{"builder", b->id()}};
  if (auto d = b->declared_budget()) j["declared_budget"] = d->str();
  if (auto t = b->natural_target()) j["target"] = t->name();
  const auto failures = b->precondition_failures();
  if (!failures.empty()) j["precondition_failures"] = failures;
  print(j, false);
  return 0;
}

int run_kst(const std::string& path, std::uint64_t seed, bool exhaustive) {
  const auto inst = kst_instance_from_json(read_json(path));
  const auto check = check_thresholds(inst);
  KstOptions opts;
  opts.seed = seed;
  opts.randomized = !exhaustive;
  nlohmann::json j = {{"m", inst.m}, {"n", inst.n}, {"r", inst.r}, {"s", inst.s},
                      {"thresholds_met", check.ok()}};
  try {
    const auto res = extract_krs(inst, opts);
    j["a_side"] = res.a_side;
    j["b_side"] = res.b_side;
    j["random_rounds"] = res.random_rounds;
    j["used_fallback"] = res.used_fallback;
    j["verified"] = is_complete_bipartite(inst, res.a_side, res.b_side);
  } catch (const Error& e) {
    j["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    print(j, false);
    return 1;
  }
  print(j, false);
  return 0;
}

int run_serve(ServeOptions opts) {
  SessionStore store(opts.log_path);
  httplib::Server server;
  mount_routes(server, store);
  std::cerr << "listening on " << opts.host << ":" << opts.port << '\n';
  if (!server.listen(opts.host, opts.port)) {
    std::cerr << "cannot bind " << opts.host << ":" << opts.port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"on-line Ramsey game toolkit"};
  app.require_subcommand(1);
  bool compact = false;
  app.add_flag("--compact", compact, "single-line JSON output");

  auto* solve_cmd = app.add_subcommand("solve", "exact on-line Ramsey value of a small target");
  std::string target = "P4";
  int q = 2, max_budget = 12, threads = 1;
  bool no_table = false, certificate = false;
  solve_cmd->add_option("target", target, "K3, P5, K2,2 or G:0-1,1-2")->required();
  solve_cmd->add_option("-q,--colors", q, "number of colours")->check(CLI::Range(2, 4));
  solve_cmd->add_option("--max-budget", max_budget, "give up beyond this many edges")->check(CLI::Range(1, 16));
  solve_cmd->add_flag("--no-table", no_table, "disable the transposition table");
  solve_cmd->add_flag("--certificate", certificate, "emit and verify both policies");
  solve_cmd->add_option("--threads", threads)->check(CLI::Range(1, 64));

  auto* match_cmd = app.add_subcommand("match", "play one builder against one painter");
  MatchConfig cfg;
  std::optional<std::string> match_target;
  std::optional<long long> budget;
  int games = 1;
  std::string ndjson;
  match_cmd->add_option("-b,--builder", cfg.builder, "e.g. chase:t=3")->required();
  match_cmd->add_option("-p,--painter", cfg.painter, "e.g. random:seed=7")->required();
  match_cmd->add_option("--target", match_target, "defaults to the builder's own target");
  match_cmd->add_option("-q,--colors", q, "colours for --target")->check(CLI::Range(2, 4));
  match_cmd->add_option("--budget", budget, "defaults to the declared budget");
  match_cmd->add_option("--seed", cfg.seed);
  match_cmd->add_option("--games", games, "consecutive seeds")->check(CLI::PositiveNumber);
  match_cmd->add_option("--ndjson", ndjson, "append records to this file");

  auto* replay_cmd = app.add_subcommand("replay", "re-check match records");
  std::string replay_path;
  replay_cmd->add_option("file", replay_path, "ndjson written by match --ndjson")->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "bound chains and declared budgets");
  bounds_cmd->require_subcommand(1);
  auto* chain_cmd = bounds_cmd->add_subcommand("chain", "evaluate an inequality chain");
  std::string chain = "main";
  long long t = 10, scan_to = 0;
  double c_specifics = 0;
  bool json = false;
  chain_cmd->add_option("chain", chain, "main, specifics or bipartite")->required();
  chain_cmd->add_option("-t", t)->required();
  chain_cmd->add_option("-q,--colors", q);
  chain_cmd->add_option("--scan-to", scan_to, "report the smallest t from which each link holds up to here");
  chain_cmd->add_option("--c-specifics", c_specifics);
  chain_cmd->add_flag("--json", json);
  auto* budget_cmd = bounds_cmd->add_subcommand("budget", "declared budget of a builder");
  std::string builder_id;
  budget_cmd->add_option("builder", builder_id)->required();

  auto* kst_cmd = app.add_subcommand("verify-kst", "extract a complete bipartite subgraph");
  std::string kst_path;
  std::uint64_t kst_seed = 1;
  bool exhaustive = false;
  kst_cmd->add_option("file", kst_path, "instance JSON, - for stdin")->required();
  kst_cmd->add_option("--seed", kst_seed);
  kst_cmd->add_flag("--exhaustive", exhaustive, "skip the randomized rounds");

  auto* serve_cmd = app.add_subcommand("serve", "HTTP session API");
  ServeOptions serve = ServeOptions::from_env();
  serve_cmd->add_option("--host", serve.host, "OLR_BIND");
  serve_cmd->add_option("--port", serve.port, "OLR_PORT")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--session-log", serve.log_path, "OLR_SESSION_LOG");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*solve_cmd) return run_solve(target, q, max_budget, no_table, certificate, threads, compact);
    if (*match_cmd) {
      if (match_target) cfg.target = parse_target(*match_target, q);
      cfg.budget = budget;
      return run_match_cmd(cfg, games, ndjson, compact);
    }
    if (*replay_cmd) return run_replay(replay_path);
    if (*chain_cmd) return run_bounds(chain, t, q, scan_to, c_specifics, json);
    if (*budget_cmd) return run_budget(builder_id);
    if (*kst_cmd) return run_kst(kst_path, kst_seed, exhaustive);
    if (*serve_cmd) return run_serve(serve);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error [parse]: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
