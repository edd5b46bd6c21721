#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "config.hpp"
#include "stochopt/harness/checks.hpp"
#include "stochopt/harness/rate.hpp"
#include "stochopt/version.hpp"

namespace stochopt::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string check_report_lines(const TheoremCheck& check) {
  std::ostringstream os;
  os << check.summary() << '\n';
  for (std::size_t i = 0; i < check.bound.size(); ++i) {
    os << "  " << (check.empirical[i] <= check.bound[i] ? "ok  " : "VIOL")
       << ' ' << check.checkpoint_labels[i] << " empirical=" << check.empirical[i]
       << " bound=" << check.bound[i]
       << " margin=" << check.bound[i] - check.empirical[i] << '\n';
  }
  for (const auto& [name, value] : check.constants) {
    os << "  constant " << name << " = " << value << '\n';
  }
  return os.str();
}

}  // namespace

int cmd_run(const std::string& config_path, long long seed_override,
            const std::string& out_override, int threads) {
  ResolvedRuns runs;
  try {
    runs = load_run_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  if (seed_override >= 0) {
    runs.seeds = {static_cast<std::uint64_t>(seed_override)};
  }
  std::string out_dir = out_override.empty() ? runs.out_dir : out_override;
  std::filesystem::create_directories(out_dir);

  struct Job {
    std::uint64_t seed;
    RunResult result;
  };
  std::vector<Job> jobs;
  for (std::uint64_t seed : runs.seeds) jobs.push_back({seed, {}});

  auto worker_count = static_cast<std::size_t>(std::max(1, threads));
  worker_count = std::min(worker_count, jobs.size());
  std::mutex next_mutex;
  std::size_t next = 0;
  auto work = [&] {
    for (;;) {
      std::size_t mine;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next == jobs.size()) return;
        mine = next++;
      }
      RunSpec spec;
      spec.problem = runs.problem;
      spec.solver = runs.solver;
      spec.w0 = runs.w0;
      spec.lambda1 = runs.lambda1;
      spec.seed = jobs[mine].seed;
      spec.max_iterations = runs.max_iterations;
      spec.max_adp = runs.max_adp;
      spec.trace_every = runs.trace_every;
      spec.record_every = runs.record_every;
      spec.timing = runs.timing;
      spec.run_id = runs.solver_label + "-seed" + std::to_string(jobs[mine].seed);
      spec.config_digest = runs.digest;
      jobs[mine].result = run_solver(spec);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t + 1 < worker_count; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  // Single writer, seed order.
  bool any_diverged = false;
  for (const Job& job : jobs) {
    std::ostringstream csv;
    job.result.trace.write_csv(csv);
    std::filesystem::path path =
        std::filesystem::path(out_dir) /
        ("trace_" + runs.solver_label + "_seed" + std::to_string(job.seed) + ".csv");
    write_file(path, csv.str());
    std::cout << "run solver=" << runs.solver_label << " seed=" << job.seed
              << " status=" << job.result.status
              << " fval=" << format_double(job.result.final_value)
              << " gnorm=" << format_double(job.result.final_gnorm)
              << " adp=" << job.result.final_adp << " trace=" << path.string()
              << '\n';
    if (job.result.status == "diverged" || job.result.status == "step-failure") {
      any_diverged = true;
      std::cerr << "run seed=" << job.seed << " ended with status "
                << job.result.status << "; last finite objective "
                << format_double(job.result.final_value) << '\n';
    }
  }
  return any_diverged ? 1 : 0;
}

int cmd_verify(const std::string& suite, const std::string& out_dir) {
  std::vector<TheoremCheck> checks;
  if (suite == "sg-fixed") {
    checks.push_back(check_fixed_stepsize_gap());
  } else if (suite == "sg-diminishing") {
    checks.push_back(check_diminishing_rate());
  } else if (suite == "nonconvex") {
    checks.push_back(check_nonconvex_average_gradients());
  } else if (suite == "noise-reduction") {
    checks.push_back(check_noise_reduction());
  } else if (suite == "svrg-saga") {
    checks.push_back(check_svrg_saga());
  } else if (suite == "newton") {
    checks.push_back(check_second_order_oracles());
    checks.push_back(check_newton_efficiency());
  } else if (suite == "lbfgs") {
    checks.push_back(check_second_order_oracles());
    checks.push_back(check_sqn_efficiency());
  } else if (suite == "cd") {
    checks.push_back(check_cd_rate());
  } else if (suite == "prox") {
    checks.push_back(check_prox_suite());
  } else {
    std::cerr << "unknown suite '" << suite << "'\n";
    return 2;
  }

  bool all_pass = true;
  std::ostringstream report;
  report << "# stochopt " << kVersion << " verify suite=" << suite << '\n';
  std::ostringstream csv;
  csv << "# stochopt " << kVersion << " verify suite=" << suite << '\n';
  csv << "check,checkpoint,empirical,bound,pass\n";
  for (const TheoremCheck& check : checks) {
    std::string lines = check_report_lines(check);
    std::cout << lines;
    report << lines;
    for (std::size_t i = 0; i < check.bound.size(); ++i) {
      csv << check.id << ',' << check.checkpoint_labels[i] << ','
          << format_double(check.empirical[i]) << ','
          << format_double(check.bound[i]) << ','
          << (check.empirical[i] <= check.bound[i] ? 1 : 0) << '\n';
    }
    all_pass = all_pass && check.pass;
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_file(std::filesystem::path(out_dir) / ("verify_" + suite + ".txt"),
               report.str());
    write_file(std::filesystem::path(out_dir) / ("verify_" + suite + ".csv"),
               csv.str());
  }
  std::cout << (all_pass ? "SUITE PASS " : "SUITE FAIL ") << suite << '\n';
  return all_pass ? 0 : 1;
}

int cmd_compare(const std::string& config_path, const std::string& out_override) {
  ResolvedCompare cmp;
  try {
    cmp = config_path.empty() ? ResolvedCompare{}
                              : load_compare_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  std::string out_dir = out_override.empty() ? cmp.out_dir : out_override;
  std::filesystem::create_directories(out_dir);

  BudgetReport report = budget_experiment(cmp.budget);
  std::cout << report.summary << '\n';
  for (const BudgetRow& row : report.rows) {
    std::cout << "best " << row.solver << " @" << row.budget_epochs
              << "ep objective=" << format_double(row.objective);
    if (row.stepsize > 0.0) std::cout << " alpha=" << format_double(row.stepsize);
    std::cout << '\n';
  }
  for (const std::string& verdict : report.verdicts) std::cout << verdict << '\n';

  std::ostringstream curves;
  curves << "# stochopt " << kVersion << " config=" << cmp.digest << '\n'
         << report.curves_csv;
  write_file(std::filesystem::path(out_dir) / "compare_curves.csv", curves.str());
  std::ostringstream verdicts;
  verdicts << "# stochopt " << kVersion << " config=" << cmp.digest << '\n'
           << report.summary << '\n';
  for (const std::string& v : report.verdicts) verdicts << v << '\n';
  write_file(std::filesystem::path(out_dir) / "compare_verdicts.txt",
             verdicts.str());

  if (report.verdicts.empty()) return 0;  // degenerate single-solver report
  return report.pass ? 0 : 1;
}

int cmd_report(const std::string& trace_path) {
  std::ifstream in(trace_path);
  if (!in) {
    std::cerr << "cannot open trace '" << trace_path << "'\n";
    return 2;
  }
  std::string line;
  index_t rows = 0;
  std::vector<double> fvals;
  std::string last_line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("k,", 0) == 0) continue;
    ++rows;
    last_line = line;
    // fval is the fifth comma-separated field when recorded.
    std::istringstream ls(line);
    std::string field;
    for (int i = 0; i < 5 && std::getline(ls, field, ','); ++i) {
    }
    if (!field.empty()) {
      try {
        fvals.push_back(std::stod(field));
      } catch (...) {
      }
    }
  }
  std::cout << "trace " << trace_path << ": " << rows << " records\n";
  if (!fvals.empty()) {
    double best = *std::min_element(fvals.begin(), fvals.end());
    std::cout << "  first fval=" << format_double(fvals.front())
              << " last fval=" << format_double(fvals.back())
              << " best fval=" << format_double(best) << '\n';
    if (fvals.size() >= 12) {
      std::vector<double> gaps;
      for (double f : fvals) gaps.push_back(f - best);
      gaps.pop_back();
      try {
        RateEstimate est = estimate_rate(
            gaps, static_cast<index_t>(gaps.size()), RateKind::Linear);
        std::cout << "  fitted contraction per record="
                  << format_double(est.contraction) << '\n';
      } catch (const std::exception&) {
      }
    }
  }
  if (!last_line.empty()) std::cout << "  final row: " << last_line << '\n';
  return 0;
}

}  // namespace stochopt::cli
