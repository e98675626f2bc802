#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "detgeo/harness.hpp"
#include "detgeo/json_io.hpp"

namespace {

using detgeo::SuiteConfig;
using detgeo::SuiteId;
using nlohmann::json;

std::vector<SuiteId> parse_suites(const std::string& csv) {
  std::vector<SuiteId> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token == "all") {
      for (SuiteId id : detgeo::all_suites()) out.push_back(id);
      continue;
    }
    auto id = detgeo::suite_from_name(token);
    if (!id) {
      throw detgeo::InvalidInputError("unknown suite '" + token + "'");
    }
    out.push_back(*id);
  }
  if (out.empty()) {
    throw detgeo::InvalidInputError("no suites selected");
  }
  // Drop repeats while keeping first-mention order.
  std::vector<SuiteId> unique;
  for (SuiteId id : out) {
    bool seen = false;
    for (SuiteId u : unique) seen = seen || (u == id);
    if (!seen) unique.push_back(id);
  }
  return unique;
}

int run_verify(const SuiteConfig& cfg, const std::string& out_path) {
  detgeo::SuiteReport report = detgeo::run_suites(cfg);
  detgeo::emit_report(report, out_path);
  for (const auto& s : report.suites) {
    std::fprintf(stderr, "%-12s %s  max_residual=%.3e  tol=%.1e  trials=%d\n",
                 s.name.c_str(), s.pass ? "pass" : "FAIL", s.max_residual,
                 s.tolerance, s.trials);
    if (!s.note.empty()) std::fprintf(stderr, "  note: %s\n", s.note.c_str());
  }
  std::fprintf(stderr, "overall: %s\n", report.pass ? "PASS" : "FAIL");
  return report.pass ? 0 : 1;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw detgeo::IoError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw detgeo::IoError("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

const json& require_key(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw detgeo::IoError(std::string("case object is missing key '") + key + "'");
  }
  return *it;
}

int run_show_case(const std::string& in_path, const std::string& suite_arg) {
  json doc = load_json(in_path);

  json kase;
  if (doc.contains("suites")) {
    const json& suites = doc["suites"];
    if (!suites.is_array() || suites.empty()) {
      throw detgeo::IoError("report has no suite entries");
    }
    const json* chosen = nullptr;
    if (!suite_arg.empty()) {
      auto want = detgeo::suite_from_name(suite_arg);
      if (!want) throw detgeo::InvalidInputError("unknown suite '" + suite_arg + "'");
      std::string canon = detgeo::suite_name(*want);
      for (const auto& entry : suites) {
        if (entry.value("name", "") == canon) chosen = &entry;
      }
      if (!chosen) {
        throw detgeo::IoError("report has no entry for suite '" + canon + "'");
      }
    } else {
      for (const auto& entry : suites) {
        if (!entry.value("pass", true)) {
          chosen = &entry;
          break;
        }
      }
      if (!chosen) chosen = &suites.front();
    }
    kase = require_key(*chosen, "worst_case");
  } else {
    kase = doc;
  }

  std::string name = suite_arg.empty()
                         ? require_key(kase, "suite").get<std::string>()
                         : suite_arg;
  auto id = detgeo::suite_from_name(name);
  if (!id) throw detgeo::InvalidInputError("unknown suite '" + name + "'");

  SuiteConfig cfg;
  cfg.seed = require_key(kase, "seed").get<std::uint64_t>();
  cfg.dim_plus = require_key(kase, "dim_plus").get<detgeo::Index>();
  cfg.dim_minus = require_key(kase, "dim_minus").get<detgeo::Index>();
  cfg.fd_step = require_key(kase, "fd_step").get<double>();
  int trial = require_key(kase, "trial").get<int>();
  double stored = require_key(kase, "residual").get<double>();

  json inputs;
  double recomputed = detgeo::run_suite_trial(*id, trial, cfg, &inputs);
  double gap = std::abs(stored - recomputed);
  bool reproduced = gap <= 1e-14;

  std::printf("suite:       %s\n", detgeo::suite_name(*id));
  std::printf("trial:       %d\n", trial);
  std::printf("seed:        %llu\n", static_cast<unsigned long long>(cfg.seed));
  std::printf("dims:        %lld x %lld\n",
              static_cast<long long>(cfg.dim_plus),
              static_cast<long long>(cfg.dim_minus));
  std::printf("stored:      %.17g\n", stored);
  std::printf("recomputed:  %.17g\n", recomputed);
  std::printf("difference:  %.3e\n", gap);
  std::printf("reproduced:  %s\n", reproduced ? "yes" : "no");
  return reproduced ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical checks for the regularized determinant line bundle"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string suites_csv = "all";
  detgeo::Index dim = 0;
  SuiteConfig cfg;
  std::string out_path = "-";
  verify->add_option("--suites", suites_csv,
                     "comma-separated suite names, or 'all'");
  auto* dim_opt = verify->add_option("--dim", dim, "sets both block dimensions");
  auto* dp_opt = verify->add_option("--dim-plus", cfg.dim_plus, "rows kept by pr_plus");
  auto* dm_opt = verify->add_option("--dim-minus", cfg.dim_minus, "rows kept by pr_minus");
  verify->add_option("--trials", cfg.trials, "random trials per suite");
  verify->add_option("--seed", cfg.seed, "base seed for the trial streams");
  verify->add_option("--tol-exact", cfg.tol_exact, "tolerance for algebraic suites");
  verify->add_option("--tol-fd", cfg.tol_fd, "tolerance for finite-difference suites");
  verify->add_option("--fd-step", cfg.fd_step, "finite-difference step");
  verify->add_option("--out", out_path, "report path, '-' for stdout");

  // show-case
  auto* show = app.add_subcommand("show-case", "replay a recorded worst case");
  std::string in_path;
  std::string suite_arg;
  show->add_option("--in", in_path, "report or case JSON file")->required();
  show->add_option("--suite", suite_arg, "suite to replay (default: first failing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      if (dim_opt->count() > 0) {
        if (dp_opt->count() == 0) cfg.dim_plus = dim;
        if (dm_opt->count() == 0) cfg.dim_minus = dim;
      }
      cfg.suites = parse_suites(suites_csv);
      return run_verify(cfg, out_path);
    }
    return run_show_case(in_path, suite_arg);
  } catch (const detgeo::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const detgeo::InvalidInputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const detgeo::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
