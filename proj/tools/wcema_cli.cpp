#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wcema/config.hpp"
#include "wcema/csv.hpp"
#include "wcema/errors.hpp"
#include "wcema/experiment.hpp"
#include "wcema/moreau.hpp"
#include "wcema/phase_retrieval.hpp"
#include "wcema/theory_bound.hpp"
#include "wcema/trace_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kUsage = 2;

constexpr const char* kOutputEnv = "WCEMA_OUTPUT_DIR";

std::filesystem::path resolve_output(const wcema::ExperimentConfig& config,
                                     const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputEnv); env && *env) return env;
  return config.output_dir;
}

int cmd_run(const std::string& config_path, const std::string& output_flag, bool quiet) {
  const auto config = wcema::load_config(config_path);
  const auto out_dir = resolve_output(config, output_flag);
  wcema::ProgressCallback progress;
  if (!quiet) {
    progress = [](std::size_t done, std::size_t total) {
      if (done == total || done % 10 == 0) {
        std::cerr << "\r" << done << "/" << total << " runs" << (done == total ? "\n" : "")
                  << std::flush;
      }
    };
  }
  const auto result = wcema::run_experiment(config, progress);
  wcema::write_results(result, out_dir);
  if (config.save_traces) {
    const auto trace_dir = out_dir / "traces";
    std::filesystem::create_directories(trace_dir);
    for (const auto& run : result.runs) {
      if (!run.ok()) continue;
      const auto name = run.algorithm + "_g" + std::to_string(run.grid_index) + "_r" +
                        std::to_string(run.repetition) + ".json";
      wcema::save_trace(trace_dir / name, wcema::saved_trace_from_run(config, run));
    }
  }
  std::size_t failed = 0;
  for (const auto& run : result.runs) {
    if (!run.ok()) ++failed;
  }
  if (!quiet) {
    std::cerr << "wrote results for " << result.runs.size() << " runs to " << out_dir.string()
              << "\n";
  }
  if (failed > 0) {
    std::cerr << failed << " run(s) failed; see " << (out_dir / "failures.csv").string() << "\n";
    return kRuntimeFailure;
  }
  return kOk;
}

int cmd_validate(const std::string& config_path) {
  const auto config = wcema::load_config(config_path);
  std::cout << config_path << ": ok (" << config.algorithms.size() << " algorithms, "
            << config.grid.count << " stepsizes, " << config.repetitions << " repetitions, T+1 = "
            << config.horizon() + 1 << ")\n";
  return kOk;
}

struct BoundArgs {
  std::string variant = "projected_fema";
  double rho = 0.0;
  std::optional<double> rho_bar;
  double G = 1.0;
  double D = 1.0;
  std::size_t d = 1;
  std::uint64_t T = 0;
  double alpha = 0.0;
  std::string step_rule = "over_sqrt_horizon";
  double beta1 = 0.9;
  double beta2 = 0.999;
  double beta3 = 0.9;
  std::optional<double> pi;
  double delta = 0.0;
  std::optional<double> mu;
  std::optional<double> lipschitz;
  std::optional<double> lambda_min_q;
};

int cmd_bound(const BoundArgs& a) {
  wcema::BoundInputs in;
  in.rho = a.rho;
  in.rho_bar = a.rho_bar.value_or(2.0 * a.rho);
  in.G_inf = a.G;
  in.D_inf = a.D;
  in.d = a.d;
  in.schedule.beta1 = a.beta1;
  in.schedule.beta2 = a.beta2;
  in.schedule.beta3 = a.beta3;
  if (a.pi) {
    in.schedule.beta1_mode = wcema::DecaySchedule::Beta1Mode::geometric;
    in.schedule.pi = *a.pi;
  }
  const auto steps = a.step_rule == "constant" ? wcema::StepsizeSchedule::constant(a.alpha)
                                               : wcema::StepsizeSchedule::over_sqrt_horizon(a.alpha);
  in.stepsizes = steps.materialize(a.T);
  in.delta_psi = a.delta;
  in.mu = a.mu;
  in.lipschitz = a.lipschitz;
  in.lambda_min_q = a.lambda_min_q;
  const auto b = wcema::theory_bound(in, wcema::parse_bound_variant(a.variant));
  std::cout << "variant " << a.variant << "\n"
            << "bound " << wcema::format_double(b.value) << "\n"
            << "tau " << wcema::format_double(b.tau) << "\n"
            << "C1 " << wcema::format_double(b.c1) << "\n"
            << "C2 " << wcema::format_double(b.c2) << "\n"
            << "C3 " << wcema::format_double(b.c3) << "\n"
            << "sum_alpha " << wcema::format_double(b.sum_alpha) << "\n"
            << "sum_alpha_sq " << wcema::format_double(b.sum_alpha_sq) << "\n";
  return kOk;
}

int cmd_stationarity(const std::string& trace_path, double zeta, std::uint64_t max_iter,
                     double tol) {
  const auto trace = wcema::load_trace(trace_path);
  const auto inst = wcema::build_problem(trace.problem, trace.data_seed);
  wcema::InnerSolverOptions opts;
  opts.max_iter = max_iter;
  opts.tol = tol;
  const wcema::DiagonalMetric vmetric(wcema::elementwise_sqrt(trace.v_hat_tstar));
  const auto identity = wcema::DiagonalMetric::identity(trace.problem.d);
  const auto rv = wcema::moreau_gradient(inst.problem, trace.x_tstar, zeta, vmetric, opts);
  const auto ri = wcema::moreau_gradient(inst.problem, trace.x_tstar, zeta, identity, opts);
  std::cout << "algorithm " << trace.algorithm << "\n"
            << "tstar " << trace.tstar << "\n"
            << "zeta " << wcema::format_double(zeta) << "\n"
            << "moreau_grad_norm_sq_vhat " << wcema::format_double(rv.grad_norm_sq) << "\n"
            << "moreau_grad_norm_sq_identity " << wcema::format_double(ri.grad_norm_sq) << "\n"
            << "envelope_identity " << wcema::format_double(ri.envelope) << "\n"
            << "inner_iterations " << rv.inner_iterations << " " << ri.inner_iterations << "\n"
            << "inner_converged " << (rv.converged && ri.converged ? "true" : "false") << "\n";
  return kOk;
}

int cmd_instance(std::size_t d, std::size_t n, std::uint64_t seed, const std::string& out) {
  const auto inst = wcema::generate_phase_retrieval(d, n, seed);
  if (out.empty() || out == "-") {
    wcema::write_instance(std::cout, inst);
  } else {
    std::ofstream os(out);
    if (!os) throw wcema::Error("cannot open '" + out + "' for writing");
    wcema::write_instance(os, inst);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive EMA subgradient methods for weakly convex stochastic problems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("-o,--output-dir", output_dir,
                  std::string("output directory (overrides ") + kOutputEnv + " and the config)");
  run->add_flag("-q,--quiet", quiet, "no progress output");

  auto* validate = app.add_subcommand("validate", "check a config file without running it");
  validate->add_option("config", config_path, "config file")->required();

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "evaluate the worst-case stationarity bound");
  bound->add_option("--variant", ba.variant,
                    "projected_fema, proximal_fema, projected_zema or proximal_zema");
  bound->add_option("--rho", ba.rho, "weak-convexity modulus")->required();
  bound->add_option("--rho-bar", ba.rho_bar, "rho_bar (default 2 rho)");
  bound->add_option("--G", ba.G, "sup norm bound on the stochastic subgradients");
  bound->add_option("--D", ba.D, "sup norm diameter of the domain");
  bound->add_option("--d", ba.d, "dimension")->required();
  bound->add_option("--T", ba.T, "last iteration index")->required();
  bound->add_option("--alpha", ba.alpha, "stepsize parameter")->required();
  bound->add_option("--step-rule", ba.step_rule, "over_sqrt_horizon or constant");
  bound->add_option("--beta1", ba.beta1);
  bound->add_option("--beta2", ba.beta2);
  bound->add_option("--beta3", ba.beta3);
  bound->add_option("--pi", ba.pi, "geometric beta1 decay (beta1_t = beta1 pi^(t-1))");
  bound->add_option("--delta", ba.delta, "initial envelope gap");
  bound->add_option("--mu", ba.mu, "smoothing parameter (zeroth-order variants)");
  bound->add_option("--lipschitz", ba.lipschitz, "L_F (zeroth-order variants)");
  bound->add_option("--lambda-min-q", ba.lambda_min_q, "lambda_min(Q) (proximal variants)");

  std::string trace_path;
  double zeta = 0.0;
  std::uint64_t max_iter = 5000;
  double tol = 1e-9;
  auto* stat = app.add_subcommand("stationarity", "Moreau stationarity of a saved trace");
  stat->add_option("trace", trace_path, "trace JSON file")->required();
  stat->add_option("zeta", zeta, "envelope parameter")->required();
  stat->add_option("--max-iter", max_iter, "inner solver iteration cap");
  stat->add_option("--tol", tol, "inner solver tolerance");

  std::size_t inst_d = 10;
  std::size_t inst_n = 1000;
  std::uint64_t inst_seed = 1;
  std::string inst_out;
  auto* instance = app.add_subcommand("instance", "write a phase retrieval instance file");
  instance->add_option("--d", inst_d);
  instance->add_option("--n", inst_n);
  instance->add_option("--seed", inst_seed);
  instance->add_option("-o,--out", inst_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(config_path, output_dir, quiet);
    if (*validate) return cmd_validate(config_path);
    if (*bound) return cmd_bound(ba);
    if (*stat) return cmd_stationarity(trace_path, zeta, max_iter, tol);
    if (*instance) return cmd_instance(inst_d, inst_n, inst_seed, inst_out);
  } catch (const wcema::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const wcema::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kUsage;
}
