#pragma once

#include <memory>
#include <string>
#include <variant>

#include "stochopt/cd/coordinate.hpp"
#include "stochopt/core/schedule.hpp"
#include "stochopt/core/trace.hpp"
#include "stochopt/nr/saga.hpp"
#include "stochopt/nr/svrg.hpp"
#include "stochopt/problems/problem.hpp"
#include "stochopt/sg/sg.hpp"
#include "stochopt/so/diagonal.hpp"
#include "stochopt/so/newton_cg.hpp"
#include "stochopt/so/sqn.hpp"

namespace stochopt {

struct SgSpec {
  StepsizeSchedule schedule = StepsizeSchedule::fixed(0.1);
  index_t batch_size = 1;
  bool average = false;  // Polyak-Ruppert averaging alongside the iterates
};
struct MomentumSpec {
  double alpha = 0.1;
  double beta = 0.9;
  index_t batch_size = 1;
};
struct NesterovSpec {
  double alpha = 0.1;
  double beta = kNesterovScheduleBeta;  // negative: (k-1)/(k+2) schedule
  index_t batch_size = 1;
};
struct AdagradSpec {
  double alpha = 0.1;
  double mu_reg = kDefaultMuReg;
  index_t batch_size = 1;
};
struct RmspropSpec {
  double alpha = 0.01;
  double decay = 0.1;
  double mu_reg = kDefaultMuReg;
  index_t batch_size = 1;
};
struct DynamicSgSpec {
  double alpha = 0.1;
  double tau = 0.0;  // <= 0 selects the admissible upper endpoint
  bool adaptive = false;
  double chi = 0.5;
};
struct SvrgSpec {
  double alpha = 0.1;
  index_t m = 0;  // 0 selects m = n
  SvrgOption option = SvrgOption::InnerAverage;
};
struct SagaSpec {
  double alpha = 0.0;  // 0 selects 1/(2(cn+L)) or 1/(3L)
  bool sag = false;
  SagaInit init = SagaInit::FullAtStart;
};
struct GdSpec {
  double alpha = 0.0;  // 0 selects 1/L
};
struct NewtonCgSpec {
  NewtonCGOptions options;
  index_t batch_size = 0;  // 0 = full batch (deterministic)
};
struct SqnSpec {
  SqnOptions options;
  StepsizeSchedule schedule = StepsizeSchedule::fixed(0.1);
};
struct DiagonalSpec {
  DiagonalOptions options;
};
struct CdSpec {
  CDRule rule = CDRule::UniformRandom;
  CDStepMode mode = CDStepMode::FixedMaxLipschitz;
};
struct SdcaSpec {};
enum class ProxMethod { Ista, Fista, Split, ProxNewton, Orthant };
struct ProxSpec {
  ProxMethod method = ProxMethod::Ista;
  double alpha = 0.0;  // 0 selects 1/L
  index_t batch_size = 0;  // >0: stochastic proximal gradient
};

using SolverSpec =
    std::variant<SgSpec, MomentumSpec, NesterovSpec, AdagradSpec, RmspropSpec,
                 DynamicSgSpec, SvrgSpec, SagaSpec, GdSpec, NewtonCgSpec,
                 SqnSpec, DiagonalSpec, CdSpec, SdcaSpec, ProxSpec>;

const char* solver_name(const SolverSpec& spec);

struct RunSpec {
  std::shared_ptr<const Problem> problem;
  double lambda1 = 0.0;  // > 0 wraps the problem for the prox solvers
  SolverSpec solver;
  Vector w0;  // empty: start from zero
  std::uint64_t seed = 1;
  index_t max_iterations = 100;
  index_t max_adp = 0;     // 0: no ADP cap
  index_t trace_every = 0; // fval/gnorm cadence in ADP units; 0 = one epoch
  index_t record_every = 1;  // row cadence in iterations
  bool timing = false;     // fill wall_ns (breaks byte-reproducibility)
  std::string run_id;
  std::string config_digest;
};

struct RunResult {
  Trace trace;
  Vector final_iterate;
  double final_value = 0.0;
  double final_gnorm = 0.0;
  index_t final_adp = 0;
  std::string status;  // ok | converged | diverged | step-failure
};

// Executes one configured run, producing the per-iteration trace.  For
// coordinate descent the adp column counts feature touches (its natural
// cost unit); for everything else it counts component-gradient accesses.
RunResult run_solver(const RunSpec& spec);

}  // namespace stochopt
