#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "prefsamp/basis_model.hpp"
#include "prefsamp/dataset_io.hpp"
#include "prefsamp/diagnostics.hpp"
#include "prefsamp/experiment.hpp"
#include "prefsamp/scenario.hpp"

namespace {

using namespace prefsamp;

std::string resolve_out_dir(const std::string& flag_value, bool flag_given,
                            const std::string& fallback) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("PREFSAMP_OUTPUT_DIR"); env && *env) return env;
  return fallback;
}

void write_summary_csv(const ModelReplicationRecord& record, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "parameter,estimate,lower,upper\n";
  for (std::size_t p = 0; p < record.tracked_names.size(); ++p) {
    out << record.tracked_names[p] << ',' << format_sig6(record.tracked[p].estimate) << ','
        << format_sig6(record.tracked[p].lower) << ',' << format_sig6(record.tracked[p].upper)
        << '\n';
  }
}

int cmd_simulate(int scenario, std::uint64_t seed, const std::string& out_dir, int n_candidates,
                 int target_n, double noise_sd) {
  std::filesystem::create_directories(out_dir);
  ScenarioDraw draw;
  if (scenario == 1) {
    draw = simulate_scenario1(n_candidates, noise_sd, seed);
  } else {
    const GpSimulator gp(make_grid(unit_square(), kTruthGridSize, kTruthGridSize),
                         CovSpec{1.0, 0.5, 1e-8});
    draw = simulate_scenario2(gp.draw(seed), target_n, noise_sd, seed + 1);
  }
  write_samples_csv(draw.samples, out_dir + "/samples.csv");
  write_truth_csv(draw.truth, out_dir + "/truth_surface.csv");
  std::cout << "wrote " << draw.samples.size() << " samples to " << out_dir << "/samples.csv\n";
  return 0;
}

// Fit one model to an external x,y,z dataset; basis-family likelihood for
// uw/pew, shared process for prd, closed-form regression for wcr.
int cmd_fit(const std::string& data_path, const std::string& model, const std::string& out_dir,
            std::uint64_t seed, int n_iter, int n_burn, bool emit_surface_csv) {
  std::filesystem::create_directories(out_dir);
  ExperimentConfig cfg;
  cfg.scenario = ScenarioTag::kExternal;
  cfg.models = {model_tag_from_string(model)};
  cfg.n_replications = 1;
  cfg.base_seed = seed;
  cfg.external_data = data_path;
  cfg.output_dir = out_dir;
  if (n_iter > 0) {
    cfg.pl_sampler.n_iter = n_iter;
    cfg.prd_sampler.n_iter = n_iter;
  }
  if (n_burn >= 0) {
    cfg.pl_sampler.n_burn = n_burn;
    cfg.prd_sampler.n_burn = n_burn;
  }
  const AggregateReport report = run_experiment(cfg);
  (void)emit_surface_csv;  // surfaces are always part of the run outputs
  const ModelReplicationRecord& record = report.replications.front().models.front();
  write_summary_csv(record, out_dir + "/summary_" + model + ".csv");
  std::cout << "fit " << model << " to " << data_path << "; outputs in " << out_dir << "\n";
  for (std::size_t p = 0; p < record.tracked_names.size(); ++p) {
    std::cout << "  " << record.tracked_names[p] << " = "
              << format_sig6(record.tracked[p].estimate) << "\n";
  }
  return 0;
}

ExperimentConfig desk_scale_config(int table) {
  ExperimentConfig cfg;
  if (table == 1 || table == 2) {
    cfg.scenario = ScenarioTag::kScenario1;
  } else {
    cfg.scenario = ScenarioTag::kScenario2;
    cfg.target_n = 150;
  }
  cfg.models = {ModelTag::kUw, ModelTag::kPew, ModelTag::kPkw, ModelTag::kPrd};
  cfg.n_replications = 100;
  cfg.pl_sampler = SamplerConfig{5500, 1000, 25, 0.8, 0};
  cfg.prd_sampler = SamplerConfig{12000, 2000, 25, 0.8, 0};
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prefsamp: preferential sampling simulation and bias-corrected inference"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate one preferentially sampled dataset");
  int sim_scenario = 1;
  std::uint64_t sim_seed = 1;
  std::string sim_out = "out";
  int sim_candidates = 1000;
  int sim_target_n = 150;
  double sim_noise = 0.7071067811865476;
  sim->add_option("--scenario", sim_scenario, "1 or 2")->check(CLI::Range(1, 2));
  sim->add_option("--seed", sim_seed, "RNG seed");
  auto* sim_out_opt = sim->add_option("--out", sim_out, "output directory");
  sim->add_option("--n-candidates", sim_candidates, "scenario 1 candidate count");
  sim->add_option("--target-n", sim_target_n, "scenario 2 expected sample size");
  sim->add_option("--noise-sd", sim_noise, "response noise sd");

  // fit / predict
  auto* fit = app.add_subcommand("fit", "Fit one model to an x,y,z dataset");
  auto* pred = app.add_subcommand("predict", "Fit a model and emit its prediction surface");
  std::string fit_data, fit_model = "uw", fit_out = "out";
  std::uint64_t fit_seed = 1;
  int fit_iters = 0, fit_burn = -1;
  for (CLI::App* sub : {fit, pred}) {
    sub->add_option("--data", fit_data, "CSV file with header x,y,z")->required();
    sub->add_option("--model", fit_model, "uw|pew|prd|wcr");
    sub->add_option("--seed", fit_seed, "RNG seed");
    sub->add_option("--iters", fit_iters, "sampler iterations (0 = default)");
    sub->add_option("--burn", fit_burn, "burn-in iterations (-1 = default)");
  }
  auto* fit_out_opt = fit->add_option("--out", fit_out, "output directory");
  auto* pred_out_opt = pred->add_option("--out", fit_out, "output directory");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Run a replication study from a JSON config");
  std::string eval_config, eval_out;
  eval->add_option("--config", eval_config, "JSON experiment config")->required();
  auto* eval_out_opt = eval->add_option("--out", eval_out, "override output directory");

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Reproduce a results table at desk scale");
  int rep_table = 2;
  std::string rep_out;
  int rep_reps = 0;
  int rep_pl_iters = 0, rep_pl_burn = -1, rep_prd_iters = 0, rep_prd_burn = -1, rep_workers = 0;
  rep->add_option("--table", rep_table, "1, 2 or 3")->check(CLI::Range(1, 3));
  auto* rep_out_opt = rep->add_option("--out", rep_out, "output directory");
  rep->add_option("--reps", rep_reps, "replication count override");
  rep->add_option("--pl-iters", rep_pl_iters, "pseudo-likelihood sampler iterations override");
  rep->add_option("--pl-burn", rep_pl_burn, "pseudo-likelihood burn-in override");
  rep->add_option("--prd-iters", rep_prd_iters, "shared-process sampler iterations override");
  rep->add_option("--prd-burn", rep_prd_burn, "shared-process burn-in override");
  rep->add_option("--workers", rep_workers, "concurrent replication workers (0 = all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return cmd_simulate(sim_scenario, sim_seed,
                          resolve_out_dir(sim_out, sim_out_opt->count() > 0, "out"),
                          sim_candidates, sim_target_n, sim_noise);
    }
    if (fit->parsed() || pred->parsed()) {
      const bool given = fit->parsed() ? fit_out_opt->count() > 0 : pred_out_opt->count() > 0;
      return cmd_fit(fit_data, fit_model, resolve_out_dir(fit_out, given, "out"), fit_seed,
                     fit_iters, fit_burn, pred->parsed());
    }
    if (eval->parsed()) {
      ExperimentConfig cfg = config_from_json_file(eval_config);
      if (eval_out_opt->count() > 0) {
        cfg.output_dir = eval_out;
      } else if (const char* env = std::getenv("PREFSAMP_OUTPUT_DIR"); env && *env) {
        cfg.output_dir = env;
      }
      run_experiment(cfg);
      std::cout << "outputs in " << cfg.output_dir << "\n";
      return 0;
    }
    if (rep->parsed()) {
      ExperimentConfig cfg = desk_scale_config(rep_table);
      cfg.output_dir = resolve_out_dir(rep_out, rep_out_opt->count() > 0,
                                       "out/table" + std::to_string(rep_table));
      if (rep_reps > 0) cfg.n_replications = rep_reps;
      if (rep_pl_iters > 0) cfg.pl_sampler.n_iter = rep_pl_iters;
      if (rep_pl_burn >= 0) cfg.pl_sampler.n_burn = rep_pl_burn;
      if (rep_prd_iters > 0) cfg.prd_sampler.n_iter = rep_prd_iters;
      if (rep_prd_burn >= 0) cfg.prd_sampler.n_burn = rep_prd_burn;
      cfg.n_workers = rep_workers;
      run_experiment(cfg);
      std::cout << "outputs in " << cfg.output_dir << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
