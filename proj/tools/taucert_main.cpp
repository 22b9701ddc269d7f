// Batch front end: parameter grids, seeds, machine-readable certification
// reports. Links only the public C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "taucert/taucert.h"

namespace {

using nlohmann::json;

struct Job {
  std::string command;  // dims | h1 | certify | unique
  json args;            // normalized parameters
  std::uint64_t seed = 0;
};

struct JobOutcome {
  json result;
  taucert_verdict verdict = TAUCERT_VERDICT_INCONCLUSIVE;
  bool errored = false;
  std::string error;
  double wall_ms = 0.0;
};

// "2", "2..4", "3,7,14..15" -> expanded integer list.
std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      values.push_back(std::stoi(token));
    } else {
      const int lo = std::stoi(token.substr(0, dots));
      const int hi = std::stoi(token.substr(dots + 2));
      if (hi < lo) throw CLI::ValidationError("grid", "range '" + token + "' is empty");
      for (int v = lo; v <= hi; ++v) values.push_back(v);
    }
  }
  if (values.empty()) throw CLI::ValidationError("grid", "no values in '" + text + "'");
  return values;
}

std::uint64_t env_prime() {
  if (const char* env = std::getenv("TAUCERT_PRIME"); env != nullptr && *env != '\0')
    return std::strtoull(env, nullptr, 10);
  return 0;
}

unsigned env_workers(std::size_t jobs) {
  unsigned workers = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("TAUCERT_WORKERS"); env != nullptr && *env != '\0')
    workers = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  if (workers < 1) workers = 1;
  if (workers > jobs) workers = static_cast<unsigned>(jobs);
  return workers;
}

JobOutcome execute(const Job& job) {
  JobOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  taucert_report* report = nullptr;
  taucert_status status = TAUCERT_OK;
  const auto& a = job.args;
  const auto prime = a.value("prime", std::uint64_t{0});
  const int trials = a.value("trials", 0);

  if (job.command == "dims") {
    status = taucert_dims(a["m"], a["d"], a["t"], job.seed, prime, &report);
  } else if (job.command == "h1") {
    if (a.contains("scheme")) {
      const std::string scheme = a["scheme"];
      status = taucert_rank_certificate(scheme.c_str(), a["m"], a["d"], trials, job.seed, prime,
                                        &report);
    } else if (a.value("lemma", "") == "triples") {
      status = taucert_h1_triples(a["m"], a["d"], trials, job.seed, prime, &report);
    } else {
      status = taucert_h1_quadruple(a["m"], a["d"], trials, job.seed, prime, &report);
    }
  } else if (job.command == "certify") {
    if (a.value("target", "drip") == "weak3o") {
      status = taucert_weak_3o(a["m"], a["d"], a["t"], trials, job.seed, prime, &report);
    } else {
      status = taucert_drip(a["m"], a["d"], a["t"], trials, job.seed, prime,
                            a.value("allow_out_of_range", false) ? 1 : 0, &report);
    }
  } else if (job.command == "duality") {
    status = taucert_duality(a["m"], a["d"], a["t"], job.seed, prime, &report);
  } else if (job.command == "unique") {
    status = taucert_unique(a["m"], a["d"], a["t"], a.value("instances", 1),
                            a.value("restarts", 50), job.seed, a.value("tol", 0.0),
                            a.value("match_tol", 0.0), &report);
  } else {
    outcome.errored = true;
    outcome.error = "unknown command '" + job.command + "'";
  }

  if (!outcome.errored) {
    if (status != TAUCERT_OK) {
      outcome.errored = true;
      outcome.error = std::string(taucert_status_string(status)) + ": " + taucert_last_error();
    } else {
      outcome.result = json::parse(taucert_report_json(report));
      outcome.verdict = taucert_report_verdict(report);
    }
  }
  taucert_report_free(report);
  outcome.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&tt));
  return buf;
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

std::string csv_escape(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string to_csv(const std::vector<Job>& jobs, const std::vector<JobOutcome>& outcomes) {
  std::ostringstream out;
  out << "index,command,type,m,d,t,seed,verdict,expected_rank,achieved_rank,tau_dim,sigma_dim,"
         "converged,matched,min_residual\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& r = outcomes[i].result;
    auto field = [&](const char* key) { return r.contains(key) ? csv_escape(r[key]) : ""; };
    out << i << ',' << jobs[i].command << ',' << field("type") << ','
        << csv_escape(jobs[i].args.value("m", json())) << ','
        << csv_escape(jobs[i].args.value("d", json())) << ','
        << csv_escape(jobs[i].args.value("t", json())) << ',' << jobs[i].seed << ','
        << (outcomes[i].errored ? "error" : field("verdict")) << ',' << field("expected_rank")
        << ',' << field("achieved_rank") << ',' << field("tau_dim") << ',' << field("sigma_dim")
        << ',' << field("total_converged") << ',' << field("total_matched") << ','
        << field("min_residual") << '\n';
  }
  return out.str();
}

int run_jobs(std::vector<Job> jobs, const std::string& out_path, const std::string& format) {
  std::vector<JobOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> cursor{0};
  const unsigned workers = env_workers(jobs.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= jobs.size()) break;
        outcomes[i] = execute(jobs[i]);
      }
    });
  }
  for (auto& t : pool) t.join();

  json job_list = json::array();
  json wall_ms = json::array();
  bool any_failed = false, any_inconclusive = false, any_error = false;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    json entry{{"command", jobs[i].command}, {"seed", jobs[i].seed}};
    for (auto& [key, value] : jobs[i].args.items()) entry[key] = value;
    if (outcomes[i].errored) {
      entry["error"] = outcomes[i].error;
      any_error = true;
    } else {
      entry["result"] = outcomes[i].result;
      switch (outcomes[i].verdict) {
        case TAUCERT_VERDICT_CERTIFIED:
          break;
        case TAUCERT_VERDICT_FAILED:
          any_failed = true;
          break;
        default:
          any_inconclusive = true;
          break;
      }
    }
    job_list.push_back(std::move(entry));
    wall_ms.push_back(outcomes[i].wall_ms);
  }

  char host[256] = "unknown";
  if (std::getenv("HOSTNAME") != nullptr) std::snprintf(host, sizeof host, "%s", std::getenv("HOSTNAME"));
  json envelope{{"schema_version", 1},
                {"tool", std::string("taucert/") + taucert_version()},
                {"jobs", job_list},
                {"meta", json{{"timestamp", iso_timestamp()},
                              {"host", host},
                              {"wall_ms_per_job", wall_ms}}}};

  const std::string payload =
      format == "csv" ? to_csv(jobs, outcomes) : envelope.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    write_atomically(out_path, payload);
  }

  if (any_error) return 64;
  if (any_failed) return 1;
  if (any_inconclusive) return 2;
  return 0;
}

struct CommonFlags {
  std::string m_grid, d_grid, t_grid;
  std::vector<std::string> grid_terms;
  int trials = 0;
  std::uint64_t seed = 1;
  std::uint64_t prime = 0;
  std::string out_path;
  std::string format = "json";

  // Fold `--grid m=2..3 d=7 t=3..5` terms into the per-axis grids.
  void apply_grid_terms() {
    for (const auto& term : grid_terms) {
      const auto eq = term.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("--grid", "expected key=values, got '" + term + "'");
      const std::string key = term.substr(0, eq), value = term.substr(eq + 1);
      if (key == "m")
        m_grid = value;
      else if (key == "d")
        d_grid = value;
      else if (key == "t")
        t_grid = value;
      else
        throw CLI::ValidationError("--grid", "unknown axis '" + key + "'");
    }
    if (m_grid.empty() || d_grid.empty())
      throw CLI::ValidationError("--grid", "m and d must be given (flags or grid terms)");
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_t) {
  auto* m_opt = cmd->add_option("--m", flags.m_grid,
                                "ambient dimension (value, range a..b, or list)");
  auto* d_opt = cmd->add_option("--d", flags.d_grid, "degree (value, range, or list)");
  auto* t_opt = cmd->add_option("--t", flags.t_grid, "number of summands (value, range, or list)");
  auto* grid_opt = cmd->add_option("--grid", flags.grid_terms,
                                   "axis terms like m=2..3 d=7 t=3..5 (alternative to --m/--d/--t)");
  m_opt->excludes(grid_opt);
  cmd->final_callback([&flags, needs_t, m_opt, d_opt, t_opt] {
    flags.apply_grid_terms();
    if (m_opt->count() == 0 && flags.m_grid.empty())
      throw CLI::RequiredError("--m (or --grid m=...)");
    if (d_opt->count() == 0 && flags.d_grid.empty())
      throw CLI::RequiredError("--d (or --grid d=...)");
    if (needs_t && t_opt->count() == 0 && flags.t_grid.empty())
      throw CLI::RequiredError("--t (or --grid t=...)");
  });
  cmd->add_option("--trials", flags.trials, "rank trials per job (default 5)");
  cmd->add_option("--seed", flags.seed, "base seed; expanded jobs use seed+index");
  cmd->add_option("--prime", flags.prime, "prime override (default: built-in 62-bit prime)");
  cmd->add_option("--out", flags.out_path, "write the report to this path instead of stdout");
  cmd->add_option("--format", flags.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

std::vector<Job> expand(const std::string& command, const CommonFlags& flags, json extra) {
  std::vector<Job> jobs;
  const auto ms = parse_grid(flags.m_grid);
  const auto ds = parse_grid(flags.d_grid);
  const auto ts = flags.t_grid.empty() ? std::vector<int>{} : parse_grid(flags.t_grid);
  const std::uint64_t prime = flags.prime != 0 ? flags.prime : env_prime();
  for (int m : ms) {
    for (int d : ds) {
      auto emit = [&](json args) {
        if (flags.trials != 0) args["trials"] = flags.trials;
        if (prime != 0) args["prime"] = prime;
        for (auto& [key, value] : extra.items()) args[key] = value;
        Job job{command, std::move(args), flags.seed + jobs.size()};
        jobs.push_back(std::move(job));
      };
      if (ts.empty()) {
        emit(json{{"m", m}, {"d", d}});
      } else {
        for (int t : ts) emit(json{{"m", m}, {"d", d}, {"t", t}});
      }
    }
  }
  return jobs;
}

int run_job_file(const std::string& path, const std::string& out_path, const std::string& format) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open job file: " << path << "\n";
    return 64;
  }
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.contains("jobs") || !doc["jobs"].is_array()) {
    std::cerr << "malformed job file: expected {\"jobs\": [...]}\n";
    return 64;
  }
  std::vector<Job> jobs;
  std::uint64_t fallback_seed = 1;
  for (const auto& spec : doc["jobs"]) {
    if (!spec.contains("command")) {
      std::cerr << "job without a command\n";
      return 64;
    }
    Job job;
    job.command = spec["command"];
    job.seed = spec.value("seed", fallback_seed);
    fallback_seed = job.seed + 1;
    job.args = spec;
    job.args.erase("command");
    job.args.erase("seed");
    jobs.push_back(std::move(job));
  }
  return run_jobs(std::move(jobs), out_path, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification engine for tangential joins of Veronese varieties"};
  app.set_version_flag("--version", std::string("taucert/") + taucert_version());
  app.require_subcommand(1);

  CommonFlags dims_flags, h1_flags, certify_flags, duality_flags, unique_flags;
  std::string h1_lemma = "quadruple", h1_scheme;
  std::string certify_target = "drip";
  bool certify_oor = false;
  int unique_instances = 1, unique_restarts = 50;
  double unique_tol = 0.0, unique_match_tol = 0.0;
  std::string run_file, schema_out;
  std::string run_out, run_format = "json";

  auto* dims = app.add_subcommand("dims", "dimensions of tau(X,t) and sigma_t(X) vs expected");
  add_common(dims, dims_flags, true);

  auto* h1 = app.add_subcommand("h1", "h^1-vanishing certificates for fat-point unions");
  add_common(h1, h1_flags, false);
  h1->add_option("--lemma", h1_lemma, "triples or quadruple")
      ->check(CLI::IsMember({"triples", "quadruple"}));
  h1->add_option("--scheme", h1_scheme,
                 "explicit component list (e.g. Z23,2Px7 or 4P,2Px6) instead of a lemma preset");

  auto* certify = app.add_subcommand("certify", "drip-defectivity certificates for tau(X,t)");
  add_common(certify, certify_flags, true);
  certify->add_option("--target", certify_target, "drip (default) or weak3o")
      ->check(CLI::IsMember({"drip", "weak3o"}));
  certify->add_flag("--allow-out-of-range", certify_oor,
                    "run beyond t = beta+1; reports 'observed', never 'certified'");

  auto* duality = app.add_subcommand("duality", "primal/dual Terracini consistency check");
  add_common(duality, duality_flags, true);

  auto* unique = app.add_subcommand("unique", "planted-decomposition recovery experiments");
  add_common(unique, unique_flags, true);
  unique->add_option("--instances", unique_instances, "planted instances per job (default 1)");
  unique->add_option("--restarts", unique_restarts, "descents per instance (default 50)");
  unique->add_option("--tol", unique_tol, "convergence tolerance on the relative residual");
  unique->add_option("--match-tol", unique_match_tol, "canonical comparison tolerance");

  auto* run = app.add_subcommand("run", "execute a JSON job file");
  run->add_option("file", run_file, "job file: {\"jobs\": [{\"command\": ..., ...}]}")
      ->required();
  run->add_option("--out", run_out, "write the report to this path instead of stdout");
  run->add_option("--format", run_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* schema = app.add_subcommand("schema", "print the report JSON schema");
  schema->add_option("--out", schema_out, "write the schema to this path instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (dims->parsed()) return run_jobs(expand("dims", dims_flags, {}), dims_flags.out_path,
                                        dims_flags.format);
    if (h1->parsed()) {
      json extra;
      if (!h1_scheme.empty())
        extra["scheme"] = h1_scheme;
      else
        extra["lemma"] = h1_lemma;
      return run_jobs(expand("h1", h1_flags, extra), h1_flags.out_path, h1_flags.format);
    }
    if (certify->parsed()) {
      json extra{{"target", certify_target}};
      if (certify_oor) extra["allow_out_of_range"] = true;
      return run_jobs(expand("certify", certify_flags, extra), certify_flags.out_path,
                      certify_flags.format);
    }
    if (duality->parsed())
      return run_jobs(expand("duality", duality_flags, {}), duality_flags.out_path,
                      duality_flags.format);
    if (unique->parsed()) {
      json extra{{"instances", unique_instances}, {"restarts", unique_restarts}};
      if (unique_tol > 0) extra["tol"] = unique_tol;
      if (unique_match_tol > 0) extra["match_tol"] = unique_match_tol;
      return run_jobs(expand("unique", unique_flags, extra), unique_flags.out_path,
                      unique_flags.format);
    }
    if (run->parsed()) return run_job_file(run_file, run_out, run_format);
    if (schema->parsed()) {
      if (schema_out.empty())
        std::cout << taucert_schema_json();
      else
        write_atomically(schema_out, taucert_schema_json());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
  return 64;
}
