#include "config.hpp"

#include <algorithm>
#include <fstream>

#include "stochopt/core/trace.hpp"
#include "stochopt/problems/linear_loss.hpp"
#include "stochopt/problems/quadratic.hpp"
#include "stochopt/problems/quartic2d.hpp"
#include "stochopt/problems/synthetic.hpp"

namespace stochopt::cli {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw ConfigError("'" + context + "' must be an object");
  }
  for (const auto& item : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      throw ConfigError("unknown key '" + context + "." + item.key() + "'");
    }
  }
}

double get_num(const json& obj, const std::string& context, const char* key,
               double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError("missing key '" + context + "." + key + "'");
    return fallback;
  }
  if (!obj[key].is_number()) {
    throw ConfigError("key '" + context + "." + key + "' must be a number");
  }
  return obj[key].get<double>();
}

index_t get_int(const json& obj, const std::string& context, const char* key,
                index_t fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError("missing key '" + context + "." + key + "'");
    return fallback;
  }
  if (!obj[key].is_number_integer()) {
    throw ConfigError("key '" + context + "." + key + "' must be an integer");
  }
  return obj[key].get<index_t>();
}

bool get_bool(const json& obj, const std::string& context, const char* key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) {
    throw ConfigError("key '" + context + "." + key + "' must be a boolean");
  }
  return obj[key].get<bool>();
}

std::string get_str(const json& obj, const std::string& context, const char* key,
                    const std::string& fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError("missing key '" + context + "." + key + "'");
    return fallback;
  }
  if (!obj[key].is_string()) {
    throw ConfigError("key '" + context + "." + key + "' must be a string");
  }
  return obj[key].get<std::string>();
}

std::shared_ptr<const Problem> build_problem(const json& p) {
  std::string kind = get_str(p, "problem", "kind", "", true);
  if (kind == "quadratic-identity") {
    check_keys(p, "problem", {"kind", "dim", "noise"});
    return std::make_shared<QuadraticEnsembleProblem>(
        QuadraticEnsembleProblem::identity(
            static_cast<int>(get_int(p, "problem", "dim", 10)),
            get_num(p, "problem", "noise", 0.0)));
  }
  if (kind == "quadratic-spd") {
    check_keys(p, "problem", {"kind", "dim", "c", "L", "seed", "noise"});
    return std::make_shared<QuadraticEnsembleProblem>(make_spd_quadratic(
        static_cast<int>(get_int(p, "problem", "dim", 10)),
        get_num(p, "problem", "c", 0.5), get_num(p, "problem", "L", 5.0),
        static_cast<std::uint64_t>(get_int(p, "problem", "seed", 1)),
        get_num(p, "problem", "noise", 0.0)));
  }
  if (kind == "quadratic-ensemble-1d") {
    check_keys(p, "problem", {"kind", "n", "q"});
    return std::make_shared<QuadraticEnsembleProblem>(
        QuadraticEnsembleProblem::evenly_spaced_1d(
            get_int(p, "problem", "n", 10, true),
            get_num(p, "problem", "q", 1.0)));
  }
  if (kind == "logistic-synthetic") {
    check_keys(p, "problem", {"kind", "n", "dim", "lambda", "seed", "row_norm"});
    auto data = make_logistic_dataset(
        get_int(p, "problem", "n", 1000, true),
        static_cast<int>(get_int(p, "problem", "dim", 20, true)),
        static_cast<std::uint64_t>(get_int(p, "problem", "seed", 1)),
        get_num(p, "problem", "row_norm", 1.0));
    return std::make_shared<LogisticProblem>(std::move(data),
                                             get_num(p, "problem", "lambda", 1e-3));
  }
  if (kind == "logistic-libsvm") {
    check_keys(p, "problem", {"kind", "path", "lambda", "dim"});
    auto data = load_libsvm(get_str(p, "problem", "path", "", true),
                            static_cast<int>(get_int(p, "problem", "dim", 0)));
    return std::make_shared<LogisticProblem>(std::move(data),
                                             get_num(p, "problem", "lambda", 1e-3));
  }
  if (kind == "least-squares-synthetic") {
    check_keys(p, "problem",
               {"kind", "n", "dim", "lambda", "seed", "noise_sd", "sparsity"});
    auto data = make_regression_dataset(
        get_int(p, "problem", "n", 100, true),
        static_cast<int>(get_int(p, "problem", "dim", 10, true)),
        static_cast<std::uint64_t>(get_int(p, "problem", "seed", 1)),
        get_num(p, "problem", "noise_sd", 0.1),
        static_cast<int>(get_int(p, "problem", "sparsity", 0)));
    return std::make_shared<LeastSquaresProblem>(
        std::move(data), get_num(p, "problem", "lambda", 0.0));
  }
  if (kind == "least-squares-libsvm") {
    check_keys(p, "problem", {"kind", "path", "lambda", "dim"});
    auto data = load_libsvm(get_str(p, "problem", "path", "", true),
                            static_cast<int>(get_int(p, "problem", "dim", 0)));
    return std::make_shared<LeastSquaresProblem>(
        std::move(data), get_num(p, "problem", "lambda", 0.0));
  }
  if (kind == "quartic2d") {
    check_keys(p, "problem", {"kind", "noise", "radius"});
    return std::make_shared<Quartic2dProblem>(
        get_num(p, "problem", "noise", 0.0),
        get_num(p, "problem", "radius", 2.0));
  }
  throw ConfigError("unknown problem.kind '" + kind + "'");
}

StepsizeSchedule build_schedule(const json& config) {
  if (!config.contains("schedule")) return StepsizeSchedule::fixed(0.1);
  const json& s = config["schedule"];
  check_keys(s, "schedule", {"kind", "alpha", "beta", "gamma"});
  std::string kind = get_str(s, "schedule", "kind", "fixed");
  if (kind == "fixed") {
    return StepsizeSchedule::fixed(get_num(s, "schedule", "alpha", 0.1, true));
  }
  if (kind == "diminishing") {
    return StepsizeSchedule::diminishing(get_num(s, "schedule", "beta", 1.0, true),
                                         get_num(s, "schedule", "gamma", 1.0, true));
  }
  if (kind == "sqrt-diminishing") {
    return StepsizeSchedule::sqrt_diminishing(
        get_num(s, "schedule", "beta", 1.0, true),
        get_num(s, "schedule", "gamma", 1.0, true));
  }
  throw ConfigError("unknown schedule.kind '" + kind + "'");
}

SolverSpec build_solver(const json& config) {
  if (!config.contains("solver")) throw ConfigError("missing key 'solver'");
  const json& s = config["solver"];
  std::string kind = get_str(s, "solver", "kind", "", true);

  if (kind == "sg" || kind == "sg-averaged") {
    check_keys(s, "solver", {"kind", "batch_size"});
    SgSpec spec;
    spec.schedule = build_schedule(config);
    spec.batch_size = get_int(s, "solver", "batch_size", 1);
    spec.average = kind == "sg-averaged";
    return spec;
  }
  if (kind == "momentum") {
    check_keys(s, "solver", {"kind", "alpha", "beta", "batch_size"});
    return MomentumSpec{get_num(s, "solver", "alpha", 0.1, true),
                        get_num(s, "solver", "beta", 0.9, true),
                        get_int(s, "solver", "batch_size", 1)};
  }
  if (kind == "nesterov") {
    check_keys(s, "solver", {"kind", "alpha", "beta", "batch_size"});
    return NesterovSpec{get_num(s, "solver", "alpha", 0.1, true),
                        get_num(s, "solver", "beta", kNesterovScheduleBeta),
                        get_int(s, "solver", "batch_size", 1)};
  }
  if (kind == "adagrad") {
    check_keys(s, "solver", {"kind", "alpha", "mu_reg", "batch_size"});
    return AdagradSpec{get_num(s, "solver", "alpha", 0.1, true),
                       get_num(s, "solver", "mu_reg", kDefaultMuReg),
                       get_int(s, "solver", "batch_size", 1)};
  }
  if (kind == "rmsprop") {
    check_keys(s, "solver", {"kind", "alpha", "decay", "mu_reg", "batch_size"});
    return RmspropSpec{get_num(s, "solver", "alpha", 0.01, true),
                       get_num(s, "solver", "decay", 0.1),
                       get_num(s, "solver", "mu_reg", kDefaultMuReg),
                       get_int(s, "solver", "batch_size", 1)};
  }
  if (kind == "dynamic-sg") {
    check_keys(s, "solver", {"kind", "alpha", "tau", "adaptive", "chi"});
    return DynamicSgSpec{get_num(s, "solver", "alpha", 0.1, true),
                         get_num(s, "solver", "tau", 0.0),
                         get_bool(s, "solver", "adaptive", false),
                         get_num(s, "solver", "chi", 0.5)};
  }
  if (kind == "svrg") {
    check_keys(s, "solver", {"kind", "alpha", "m", "option"});
    SvrgSpec spec;
    spec.alpha = get_num(s, "solver", "alpha", 0.1, true);
    spec.m = get_int(s, "solver", "m", 0);
    std::string option = get_str(s, "solver", "option", "average");
    if (option == "last") spec.option = SvrgOption::LastIterate;
    else if (option == "average") spec.option = SvrgOption::InnerAverage;
    else if (option == "random") spec.option = SvrgOption::RandomIterate;
    else throw ConfigError("unknown solver.option '" + option + "'");
    return spec;
  }
  if (kind == "saga" || kind == "sag") {
    check_keys(s, "solver", {"kind", "alpha", "init"});
    SagaSpec spec;
    spec.alpha = get_num(s, "solver", "alpha", 0.0);
    spec.sag = kind == "sag";
    std::string init = get_str(s, "solver", "init", "full");
    if (init == "full") spec.init = SagaInit::FullAtStart;
    else if (init == "assimilate") spec.init = SagaInit::Assimilate;
    else throw ConfigError("unknown solver.init '" + init + "'");
    return spec;
  }
  if (kind == "gd") {
    check_keys(s, "solver", {"kind", "alpha"});
    return GdSpec{get_num(s, "solver", "alpha", 0.0)};
  }
  if (kind == "newton-cg") {
    check_keys(s, "solver",
               {"kind", "rho", "max_cg", "eta", "backtrack", "curvature",
                "hessian_batch_ratio", "gn_regularization", "batch_size"});
    NewtonCgSpec spec;
    spec.options.cg_tolerance = get_num(s, "solver", "rho", 0.1);
    spec.options.max_cg = get_int(s, "solver", "max_cg", 10);
    spec.options.armijo_c = get_num(s, "solver", "eta", 1e-4);
    spec.options.backtrack = get_num(s, "solver", "backtrack", 0.5);
    spec.options.hessian_batch_ratio =
        get_num(s, "solver", "hessian_batch_ratio", 1.0);
    spec.options.gn_regularization =
        get_num(s, "solver", "gn_regularization", 1e-8);
    std::string curvature = get_str(s, "solver", "curvature", "hessian");
    if (curvature == "hessian") spec.options.curvature = CurvatureKind::Hessian;
    else if (curvature == "gauss-newton") spec.options.curvature = CurvatureKind::GaussNewton;
    else if (curvature == "generalized-gn") spec.options.curvature = CurvatureKind::GeneralizedGaussNewton;
    else if (curvature == "fisher") spec.options.curvature = CurvatureKind::Fisher;
    else throw ConfigError("unknown solver.curvature '" + curvature + "'");
    spec.batch_size = get_int(s, "solver", "batch_size", 0);
    return spec;
  }
  if (kind == "sqn" || kind == "olbfgs") {
    check_keys(s, "solver", {"kind", "memory", "batch_size", "cadence",
                             "strategy", "hessian_batch_size"});
    SqnSpec spec;
    spec.options.memory = get_int(s, "solver", "memory", 10);
    spec.options.batch_size = get_int(s, "solver", "batch_size", 1);
    spec.options.pair_cadence =
        get_int(s, "solver", "cadence", kind == "olbfgs" ? 1 : 10);
    std::string strategy =
        get_str(s, "solver", "strategy",
                kind == "olbfgs" ? "online" : "hessian-action");
    if (strategy == "online") spec.options.strategy = PairStrategy::OnlineSameSeed;
    else if (strategy == "hessian-action") spec.options.strategy = PairStrategy::HessianAction;
    else throw ConfigError("unknown solver.strategy '" + strategy + "'");
    spec.options.hessian_batch_size = get_int(s, "solver", "hessian_batch_size", 0);
    spec.schedule = build_schedule(config);
    return spec;
  }
  if (kind == "diagonal") {
    check_keys(s, "solver", {"kind", "variant", "alpha", "averaging", "mu_reg",
                             "proj_lo", "proj_hi", "batch_size"});
    DiagonalSpec spec;
    std::string variant = get_str(s, "solver", "variant", "gn-average");
    if (variant == "gn-average") spec.options.variant = DiagonalVariant::GnRunningAverage;
    else if (variant == "ratio-average") spec.options.variant = DiagonalVariant::RatioAverage;
    else if (variant == "ratio-sum") spec.options.variant = DiagonalVariant::RatioSum;
    else throw ConfigError("unknown solver.variant '" + variant + "'");
    spec.options.alpha = get_num(s, "solver", "alpha", 0.01);
    spec.options.averaging = get_num(s, "solver", "averaging", 0.1);
    spec.options.mu_reg = get_num(s, "solver", "mu_reg", 1e-8);
    spec.options.proj_lo = get_num(s, "solver", "proj_lo", 0.0);
    spec.options.proj_hi = get_num(s, "solver", "proj_hi", 0.0);
    spec.options.batch_size = get_int(s, "solver", "batch_size", 1);
    return spec;
  }
  if (kind == "cd") {
    check_keys(s, "solver", {"kind", "rule", "mode"});
    CdSpec spec;
    std::string rule = get_str(s, "solver", "rule", "uniform");
    if (rule == "cyclic") spec.rule = CDRule::Cyclic;
    else if (rule == "shuffled") spec.rule = CDRule::ShuffledCyclic;
    else if (rule == "uniform") spec.rule = CDRule::UniformRandom;
    else if (rule == "gauss-southwell") spec.rule = CDRule::GaussSouthwell;
    else throw ConfigError("unknown solver.rule '" + rule + "'");
    std::string mode = get_str(s, "solver", "mode", "fixed");
    if (mode == "fixed") spec.mode = CDStepMode::FixedMaxLipschitz;
    else if (mode == "per-coordinate") spec.mode = CDStepMode::PerCoordinate;
    else if (mode == "exact") spec.mode = CDStepMode::ExactLineSearch;
    else throw ConfigError("unknown solver.mode '" + mode + "'");
    return spec;
  }
  if (kind == "sdca") {
    check_keys(s, "solver", {"kind"});
    return SdcaSpec{};
  }
  if (kind == "ista" || kind == "fista" || kind == "split" ||
      kind == "prox-newton" || kind == "orthant") {
    check_keys(s, "solver", {"kind", "alpha", "batch_size"});
    ProxSpec spec;
    if (kind == "ista") spec.method = ProxMethod::Ista;
    if (kind == "fista") spec.method = ProxMethod::Fista;
    if (kind == "split") spec.method = ProxMethod::Split;
    if (kind == "prox-newton") spec.method = ProxMethod::ProxNewton;
    if (kind == "orthant") spec.method = ProxMethod::Orthant;
    spec.alpha = get_num(s, "solver", "alpha", 0.0);
    spec.batch_size = get_int(s, "solver", "batch_size", 0);
    return spec;
  }
  throw ConfigError("unknown solver.kind '" + kind + "'");
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json config;
  try {
    in >> config;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config;
}

}  // namespace

ResolvedRuns parse_run_config(const json& config) {
  check_keys(config, "config",
             {"problem", "solver", "schedule", "lambda1", "seed", "seeds",
              "budget", "trace", "out", "w0"});
  if (!config.contains("problem")) throw ConfigError("missing key 'problem'");

  ResolvedRuns runs;
  runs.problem = build_problem(config["problem"]);
  runs.solver = build_solver(config);
  runs.solver_label = solver_name(runs.solver);
  runs.lambda1 = get_num(config, "config", "lambda1", 0.0);

  if (config.contains("seeds")) {
    if (!config["seeds"].is_array()) throw ConfigError("'seeds' must be an array");
    for (const auto& s : config["seeds"]) {
      if (!s.is_number_integer()) throw ConfigError("'seeds' entries must be integers");
      runs.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  if (config.contains("seed")) {
    runs.seeds.push_back(
        static_cast<std::uint64_t>(get_int(config, "config", "seed", 1)));
  }
  if (runs.seeds.empty()) runs.seeds.push_back(1);

  if (config.contains("budget")) {
    const json& b = config["budget"];
    check_keys(b, "budget", {"iterations", "adp"});
    runs.max_iterations = get_int(b, "budget", "iterations", 100);
    runs.max_adp = get_int(b, "budget", "adp", 0);
  }
  if (config.contains("trace")) {
    const json& t = config["trace"];
    check_keys(t, "trace", {"every_adp", "record_every", "timing"});
    runs.trace_every = get_int(t, "trace", "every_adp", 0);
    runs.record_every = get_int(t, "trace", "record_every", 1);
    runs.timing = get_bool(t, "trace", "timing", false);
  }
  if (config.contains("w0")) {
    if (!config["w0"].is_array()) throw ConfigError("'w0' must be an array");
    runs.w0.resize(static_cast<int>(config["w0"].size()));
    int i = 0;
    for (const auto& x : config["w0"]) {
      if (!x.is_number()) throw ConfigError("'w0' entries must be numbers");
      runs.w0[i++] = x.get<double>();
    }
    if (runs.w0.size() != runs.problem->dim()) {
      throw ConfigError("'w0' length must match the problem dimension");
    }
  }
  runs.out_dir = get_str(config, "config", "out", ".");
  runs.digest = config_digest(config.dump());
  return runs;
}

ResolvedRuns load_run_config(const std::string& path) {
  return parse_run_config(load_json(path));
}

ResolvedCompare parse_compare_config(const json& config) {
  check_keys(config, "config",
             {"n", "dim", "lambda", "data_seed", "run_seed", "budgets",
              "long_budget", "stepsizes", "solvers", "out"});
  ResolvedCompare cmp;
  cmp.budget.n = get_int(config, "config", "n", 10000);
  cmp.budget.dim = static_cast<int>(get_int(config, "config", "dim", 50));
  cmp.budget.lambda = get_num(config, "config", "lambda", 1e-4);
  cmp.budget.data_seed =
      static_cast<std::uint64_t>(get_int(config, "config", "data_seed", 11));
  cmp.budget.run_seed =
      static_cast<std::uint64_t>(get_int(config, "config", "run_seed", 4242));
  if (config.contains("budgets")) {
    if (!config["budgets"].is_array()) throw ConfigError("'budgets' must be an array");
    cmp.budget.short_budgets_epochs.clear();
    for (const auto& b : config["budgets"]) {
      if (!b.is_number()) throw ConfigError("'budgets' entries must be numbers");
      cmp.budget.short_budgets_epochs.push_back(b.get<double>());
    }
    if (!std::is_sorted(cmp.budget.short_budgets_epochs.begin(),
                        cmp.budget.short_budgets_epochs.end())) {
      throw ConfigError("'budgets' must be ascending");
    }
  }
  cmp.budget.long_budget_epochs = get_num(config, "config", "long_budget", 1000.0);
  if (!cmp.budget.short_budgets_epochs.empty() &&
      cmp.budget.long_budget_epochs <= cmp.budget.short_budgets_epochs.back()) {
    throw ConfigError("'long_budget' must exceed the last entry of 'budgets'");
  }
  if (config.contains("stepsizes")) {
    if (!config["stepsizes"].is_array()) throw ConfigError("'stepsizes' must be an array");
    for (const auto& a : config["stepsizes"]) {
      cmp.budget.sg_stepsizes.push_back(a.get<double>());
    }
  }
  if (config.contains("solvers")) {
    if (!config["solvers"].is_array()) throw ConfigError("'solvers' must be an array");
    cmp.budget.solvers.clear();
    for (const auto& s : config["solvers"]) {
      std::string name = s.get<std::string>();
      if (name != "sg" && name != "gd" && name != "lbfgs") {
        throw ConfigError("unknown entry '" + name + "' in 'solvers'");
      }
      cmp.budget.solvers.push_back(name);
    }
  }
  cmp.out_dir = get_str(config, "config", "out", ".");
  cmp.digest = config_digest(config.dump());
  return cmp;
}

ResolvedCompare load_compare_config(const std::string& path) {
  return parse_compare_config(load_json(path));
}

}  // namespace stochopt::cli
