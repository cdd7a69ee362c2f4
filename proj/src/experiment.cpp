#include "prefsamp/experiment.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "prefsamp/basis_model.hpp"
#include "prefsamp/dataset_io.hpp"
#include "prefsamp/diagnostics.hpp"
#include "prefsamp/errors.hpp"
#include "prefsamp/kde.hpp"
#include "prefsamp/linear_model.hpp"
#include "prefsamp/predict.hpp"
#include "prefsamp/scenario.hpp"
#include "prefsamp/shared_sampler.hpp"
#include "prefsamp/stats.hpp"
#include "prefsamp/weights.hpp"

namespace prefsamp {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const char* to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::kUw: return "uw";
    case ModelTag::kPew: return "pew";
    case ModelTag::kPkw: return "pkw";
    case ModelTag::kPrd: return "prd";
    case ModelTag::kWcr: return "wcr";
  }
  return "unknown";
}

ModelTag model_tag_from_string(const std::string& s) {
  if (s == "uw") return ModelTag::kUw;
  if (s == "pew") return ModelTag::kPew;
  if (s == "pkw") return ModelTag::kPkw;
  if (s == "prd") return ModelTag::kPrd;
  if (s == "wcr") return ModelTag::kWcr;
  throw std::invalid_argument("unknown model tag '" + s + "' (expected uw|pew|pkw|prd|wcr)");
}

void ExperimentConfig::validate() const {
  if (n_replications < 1) throw std::invalid_argument("config: n_replications must be >= 1");
  if (models.empty()) throw std::invalid_argument("config: no models selected");
  if (noise_sd < 0.0) throw std::invalid_argument("config: noise_sd must be >= 0");
  if (n_candidates < 10) throw std::invalid_argument("config: n_candidates must be >= 10");
  if (target_n < 10) throw std::invalid_argument("config: target_n must be >= 10");
  if (!(ps_strength > 0.0)) throw std::invalid_argument("config: ps_strength must be > 0");
  pl_sampler.validate();
  prd_sampler.validate();
  const bool has_pkw =
      std::find(models.begin(), models.end(), ModelTag::kPkw) != models.end();
  if (scenario == ScenarioTag::kExternal) {
    if (has_pkw) {
      throw std::invalid_argument("config: pkw requires a scenario with known p_true");
    }
    if (external_data.empty()) {
      throw std::invalid_argument("config: external scenario requires external_data");
    }
    if (n_replications != 1) {
      throw std::invalid_argument("config: external scenario runs a single replication");
    }
  }
}

std::string config_to_json_string(const ExperimentConfig& cfg) {
  json j;
  switch (cfg.scenario) {
    case ScenarioTag::kScenario1: j["scenario"] = 1; break;
    case ScenarioTag::kScenario2: j["scenario"] = 2; break;
    case ScenarioTag::kExternal: j["scenario"] = "external"; break;
  }
  j["models"] = json::array();
  for (ModelTag m : cfg.models) j["models"].push_back(to_string(m));
  j["n_replications"] = cfg.n_replications;
  j["base_seed"] = cfg.base_seed;
  j["noise_sd"] = cfg.noise_sd;
  j["n_candidates"] = cfg.n_candidates;
  j["target_n"] = cfg.target_n;
  j["ps_strength"] = cfg.ps_strength;
  j["pl_sampler"] = {{"n_iter", cfg.pl_sampler.n_iter},
                     {"n_burn", cfg.pl_sampler.n_burn},
                     {"leapfrog_steps", cfg.pl_sampler.leapfrog_steps},
                     {"target_accept", cfg.pl_sampler.target_accept}};
  j["prd_sampler"] = {{"n_iter", cfg.prd_sampler.n_iter},
                      {"n_burn", cfg.prd_sampler.n_burn},
                      {"leapfrog_steps", cfg.prd_sampler.leapfrog_steps},
                      {"target_accept", cfg.prd_sampler.target_accept}};
  j["output_dir"] = cfg.output_dir;
  j["n_workers"] = cfg.n_workers;
  j["external_data"] = cfg.external_data;
  return j.dump(2);
}

namespace {

SamplerConfig sampler_from_json(const json& j, SamplerConfig base) {
  base.n_iter = j.value("n_iter", base.n_iter);
  base.n_burn = j.value("n_burn", base.n_burn);
  base.leapfrog_steps = j.value("leapfrog_steps", base.leapfrog_steps);
  base.target_accept = j.value("target_accept", base.target_accept);
  base.seed = 0;
  return base;
}

}  // namespace

ExperimentConfig config_from_json_string(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig cfg;
  if (j.contains("scenario")) {
    const json& s = j["scenario"];
    if (s.is_number_integer()) {
      const int v = s.get<int>();
      if (v == 1) cfg.scenario = ScenarioTag::kScenario1;
      else if (v == 2) cfg.scenario = ScenarioTag::kScenario2;
      else throw std::invalid_argument("config: scenario must be 1, 2 or \"external\"");
    } else {
      const std::string v = s.get<std::string>();
      if (v == "1" || v == "scenario1") cfg.scenario = ScenarioTag::kScenario1;
      else if (v == "2" || v == "scenario2") cfg.scenario = ScenarioTag::kScenario2;
      else if (v == "external") cfg.scenario = ScenarioTag::kExternal;
      else throw std::invalid_argument("config: scenario must be 1, 2 or \"external\"");
    }
  }
  if (j.contains("models")) {
    cfg.models.clear();
    for (const auto& m : j["models"]) cfg.models.push_back(model_tag_from_string(m.get<std::string>()));
  }
  cfg.n_replications = j.value("n_replications", cfg.n_replications);
  cfg.base_seed = j.value("base_seed", cfg.base_seed);
  cfg.noise_sd = j.value("noise_sd", cfg.noise_sd);
  cfg.n_candidates = j.value("n_candidates", cfg.n_candidates);
  cfg.target_n = j.value("target_n", cfg.target_n);
  cfg.ps_strength = j.value("ps_strength", cfg.ps_strength);
  if (j.contains("pl_sampler")) cfg.pl_sampler = sampler_from_json(j["pl_sampler"], cfg.pl_sampler);
  if (j.contains("prd_sampler")) cfg.prd_sampler = sampler_from_json(j["prd_sampler"], cfg.prd_sampler);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.n_workers = j.value("n_workers", cfg.n_workers);
  cfg.external_data = j.value("external_data", cfg.external_data);
  return cfg;
}

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json_string(text);
}

namespace {

// Immutable state shared by all replications of one run.
struct RunContext {
  ExperimentConfig cfg;
  std::optional<GpSimulator> gp;             // scenario 2
  std::optional<BasisSet> basis;             // basis-family PL models
  std::optional<SharedProcessSpec> shared;   // prd
  std::optional<ExternalDataset> external;
  bool linear_family = false;                // scenario 1 uses the linear PL model
};

struct FitOutput {
  ModelReplicationRecord record;
  Eigen::VectorXd surface_mean;
  PredictionSurface surface;
};

WeightVector weights_for(ModelTag tag, const SampleSet& samples) {
  switch (tag) {
    case ModelTag::kUw: return weights_from_mode(samples, WeightMode::kUnit);
    case ModelTag::kPkw: return weights_from_mode(samples, WeightMode::kKnown);
    case ModelTag::kPew:
    case ModelTag::kWcr: return weights_from_mode(samples, WeightMode::kKde);
    case ModelTag::kPrd: break;
  }
  throw std::logic_error("weights_for: prd does not use weights");
}

FitOutput fit_pl_linear(ModelTag tag, const ScenarioDraw& draw, const RegularGrid& grid,
                        SamplerConfig sampler, std::uint64_t seed) {
  PseudoLinearSpec spec;
  spec.weights = weights_for(tag, draw.samples);
  PseudoLinearModel model(spec, draw.samples);

  const WlsFit wls = wls_solve(draw.samples, spec.weights);
  Eigen::VectorXd init(3);
  init << wls.beta[0], wls.beta[1], std::log(std::sqrt(std::max(wls.residual_variance, 1e-6)));

  sampler.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  const PosteriorDraws draws = hmc_sample(
      [m = std::move(model)](const Eigen::VectorXd& p) { return m(p); }, init, sampler,
      PseudoLinearModel::param_names());
  const double elapsed = seconds_since(t0);

  const PosteriorSummary summary = summarize(draws, 0.90);
  FitOutput out;
  out.record.model = to_string(tag);
  out.record.fit_seconds = elapsed;
  out.record.iterations = sampler.n_iter;
  out.record.has_intervals = true;
  for (const char* name : {"beta1", "beta2"}) {
    const ParamSummary& ps = summary.find(name);
    out.record.tracked_names.push_back(name);
    out.record.tracked.push_back({ps.mean, ps.lower, ps.upper});
  }
  out.surface = predict_surface_linear(draws, grid);
  out.surface_mean = out.surface.mean;
  return out;
}

FitOutput fit_pl_basis(ModelTag tag, const ScenarioDraw& draw, const BasisSet& basis,
                       const RegularGrid& grid, SamplerConfig sampler, std::uint64_t seed) {
  BasisSpatialSpec spec;
  spec.basis = basis;
  spec.weights = weights_for(tag, draw.samples);
  BasisSpatialModel model(spec, draw.samples);
  const int k = model.n_basis();

  // Ridge solution as a deterministic starting point.
  const Eigen::MatrixXd& phi = model.basis_matrix();
  const Eigen::VectorXd& w = spec.weights.normalized;
  Eigen::MatrixXd a = phi.transpose() * (w.asDiagonal() * phi);
  a.diagonal().array() += 1.0;
  const Eigen::VectorXd eta0 = a.ldlt().solve(phi.transpose() * (w.asDiagonal() * draw.samples.z));
  const Eigen::VectorXd resid = draw.samples.z - phi * eta0;

  Eigen::VectorXd init = Eigen::VectorXd::Zero(model.dim());
  init.head(k) = eta0;
  init[2 * k] = std::log(0.5);
  init[2 * k + 1] = std::log(std::max(sample_sd(resid), 0.05));

  // Sample in the whitened parameterization, report in the natural one.
  sampler.seed = seed;
  std::vector<std::string> names = model.param_names();
  const auto t0 = std::chrono::steady_clock::now();
  PosteriorDraws draws = hmc_sample(
      [&model](const Eigen::VectorXd& p) { return model.noncentered(p); },
      model.to_noncentered(init), sampler, std::move(names));
  for (Eigen::Index r = 0; r < draws.draws.rows(); ++r) {
    draws.draws.row(r) = model.from_noncentered(draws.draws.row(r).transpose()).transpose();
  }
  const double elapsed = seconds_since(t0);

  // Summarize only the interpretable scalars (the eta block is read through
  // the prediction surface).
  PosteriorDraws scalars;
  scalars.names = {draws.names.end() - 2, draws.names.end()};
  scalars.draws = draws.draws.rightCols(2);
  scalars.seed = draws.seed;
  const PosteriorSummary summary = summarize(scalars, 0.90);
  FitOutput out;
  out.record.model = to_string(tag);
  out.record.fit_seconds = elapsed;
  out.record.iterations = sampler.n_iter;
  out.record.has_intervals = true;
  for (const char* name : {"log_tau", "log_sigma_z"}) {
    const ParamSummary& ps = summary.find(name);
    out.record.tracked_names.push_back(name);
    out.record.tracked.push_back({ps.mean, ps.lower, ps.upper});
  }
  out.surface = predict_surface_basis(draws, basis, grid);
  out.surface_mean = out.surface.mean;
  return out;
}

FitOutput fit_prd(const ScenarioDraw& draw, const SharedProcessSpec& spec,
                  const RegularGrid& grid, SamplerConfig sampler, std::uint64_t seed) {
  sampler.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  const PosteriorDraws draws = mwg_sample_shared(spec, draw.samples, sampler);
  const double elapsed = seconds_since(t0);

  const int n_scalars = spec.n_mean_coefs() + 3;
  PosteriorDraws scalars;
  scalars.names = {draws.names.end() - n_scalars, draws.names.end()};
  scalars.draws = draws.draws.rightCols(n_scalars);
  scalars.seed = draws.seed;
  const PosteriorSummary summary = summarize(scalars, 0.90);
  FitOutput out;
  out.record.model = to_string(ModelTag::kPrd);
  out.record.fit_seconds = elapsed;
  out.record.iterations = sampler.n_iter;
  out.record.has_intervals = true;
  for (const auto& ps : summary.params) {
    out.record.tracked_names.push_back(ps.name);
    out.record.tracked.push_back({ps.mean, ps.lower, ps.upper});
  }
  out.surface = predict_surface_shared(draws, spec, grid);
  out.surface_mean = out.surface.mean;
  return out;
}

FitOutput fit_wcr(const ScenarioDraw& draw, const RegularGrid& grid) {
  const auto t0 = std::chrono::steady_clock::now();
  const KDEConfig kde_cfg = default_kde_config(draw.samples.locations);
  const WeightVector weights = weights_from_mode(draw.samples, WeightMode::kKde, kde_cfg);
  const WeightCovariateFit fit = weight_covariate_fit(draw.samples, weights);

  // Extend the fitted mean to the grid: the weight covariate is the same
  // inverse KDE density, normalized with the sample constant.
  const Eigen::VectorXd grid_density = kde2d_density(draw.samples.locations, kde_cfg, grid.centers);
  const double norm_const = static_cast<double>(weights.size()) / weights.raw.sum();
  Eigen::VectorXd mean(grid.size());
  for (int g = 0; g < grid.size(); ++g) {
    const Point2& c = grid.centers[static_cast<std::size_t>(g)];
    const double w_at = norm_const / grid_density[g];
    mean[g] = fit.beta[0] * c.s1 + fit.beta[1] * c.s2 + fit.weight_coef * w_at;
  }
  const double elapsed = seconds_since(t0);

  FitOutput out;
  out.record.model = to_string(ModelTag::kWcr);
  out.record.fit_seconds = elapsed;
  out.record.iterations = 1;
  out.record.has_intervals = false;
  out.record.tracked_names = {"beta1", "beta2", "a_w"};
  out.record.tracked = {{fit.beta[0], fit.beta[0], fit.beta[0]},
                        {fit.beta[1], fit.beta[1], fit.beta[1]},
                        {fit.weight_coef, fit.weight_coef, fit.weight_coef}};
  out.surface.grid = grid;
  out.surface.mean = mean;
  out.surface.lower = mean;
  out.surface.upper = mean;
  out.surface_mean = std::move(mean);
  return out;
}

struct ReplicationOutput {
  ReplicationRecord record;
  std::vector<Eigen::VectorXd> surface_means;  // per model, config order
  Eigen::VectorXd truth_values;
  std::vector<PredictionSurface> surfaces;     // kept only for the emitted replication
  std::optional<ScenarioDraw> draw;            // kept only for the emitted replication
};

ScenarioDraw simulate_for(const RunContext& ctx, std::uint64_t seed) {
  switch (ctx.cfg.scenario) {
    case ScenarioTag::kScenario1:
      return simulate_scenario1(ctx.cfg.n_candidates, ctx.cfg.noise_sd, seed);
    case ScenarioTag::kScenario2: {
      const GPRealization gp = ctx.gp->draw(mix_seed(seed, 0xA11CE));
      return simulate_scenario2(gp, ctx.cfg.target_n, ctx.cfg.noise_sd, mix_seed(seed, 0xB0B),
                                ctx.cfg.ps_strength);
    }
    case ScenarioTag::kExternal: {
      ScenarioDraw draw;
      draw.samples = ctx.external->samples;
      draw.truth.grid = make_grid(unit_square(), kTruthGridSize, kTruthGridSize);
      draw.truth.values = Eigen::VectorXd::Constant(draw.truth.grid.size(), kNaN);
      return draw;
    }
  }
  throw std::logic_error("simulate_for: unhandled scenario");
}

ReplicationOutput run_replication(const RunContext& ctx, int r, bool keep_surfaces) {
  const ExperimentConfig& cfg = ctx.cfg;
  std::string last_error;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(r) +
                               static_cast<std::uint64_t>(attempt) * 1000000007ULL;
    try {
      const ScenarioDraw draw = simulate_for(ctx, seed);
      const RegularGrid& grid = draw.truth.grid;

      ReplicationOutput out;
      out.record.replication = r;
      out.record.seed = seed;
      out.record.n_samples = draw.samples.size();
      out.truth_values = draw.truth.values;

      int model_idx = 0;
      for (ModelTag tag : cfg.models) {
        const std::uint64_t fit_seed = mix_seed(seed, 0xF17 + static_cast<std::uint64_t>(model_idx));
        FitOutput fit = [&]() {
          switch (tag) {
            case ModelTag::kPrd:
              return fit_prd(draw, *ctx.shared, grid, cfg.prd_sampler, fit_seed);
            case ModelTag::kWcr:
              return fit_wcr(draw, grid);
            default:
              return ctx.linear_family
                         ? fit_pl_linear(tag, draw, grid, cfg.pl_sampler, fit_seed)
                         : fit_pl_basis(tag, draw, *ctx.basis, grid, cfg.pl_sampler, fit_seed);
          }
        }();
        if (out.truth_values.allFinite()) {
          TruthSurface truth{grid, out.truth_values};
          fit.record.mse = surface_mse(fit.surface, truth);
        } else {
          fit.record.mse = kNaN;
        }
        out.record.models.push_back(std::move(fit.record));
        out.surface_means.push_back(std::move(fit.surface_mean));
        if (keep_surfaces) out.surfaces.push_back(std::move(fit.surface));
        ++model_idx;
      }
      if (keep_surfaces) out.draw = draw;
      return out;
    } catch (const std::exception& e) {
      last_error = e.what();
      std::cerr << "[prefsamp] replication " << r << " attempt " << attempt
                << " failed: " << last_error << "\n";
    }
  }
  throw std::runtime_error("replication " + std::to_string(r) +
                           " failed after retries: " + last_error);
}

json report_to_json(const AggregateReport& report) {
  json j;
  j["config"] = json::parse(config_to_json_string(report.config));
  j["models"] = json::array();
  for (const auto& m : report.models) {
    json jm;
    jm["model"] = m.model;
    jm["mse"] = m.mse;
    jm["mean_abs_bias"] = m.bias;
    jm["mean_fit_seconds"] = m.mean_fit_seconds;
    jm["runtime_vs_uw"] = m.runtime_vs_uw;
    jm["seconds_per_iteration"] = m.seconds_per_iteration;
    jm["params"] = json::array();
    for (std::size_t p = 0; p < m.param_names.size(); ++p) {
      jm["params"].push_back({{"name", m.param_names[p]},
                              {"mean_estimate", m.mean_estimate[p]},
                              {"ci_coverage", m.has_intervals ? json(m.coverage[p]) : json()},
                              {"mean_ci_width", m.has_intervals ? json(m.mean_width[p]) : json()}});
    }
    j["models"].push_back(std::move(jm));
  }
  j["replications"] = json::array();
  for (const auto& r : report.replications) {
    json jr;
    jr["replication"] = r.replication;
    jr["seed"] = r.seed;
    jr["n_samples"] = r.n_samples;
    jr["models"] = json::array();
    for (const auto& m : r.models) {
      json jm;
      jm["model"] = m.model;
      jm["mse"] = std::isfinite(m.mse) ? json(m.mse) : json();
      jm["fit_seconds"] = m.fit_seconds;
      jm["iterations"] = m.iterations;
      jm["params"] = json::array();
      for (std::size_t p = 0; p < m.tracked_names.size(); ++p) {
        jm["params"].push_back({{"name", m.tracked_names[p]},
                                {"estimate", m.tracked[p].estimate},
                                {"lower", m.tracked[p].lower},
                                {"upper", m.tracked[p].upper}});
      }
      jr["models"].push_back(std::move(jm));
    }
    j["replications"].push_back(std::move(jr));
  }
  return j;
}

}  // namespace

void emit_tables(const AggregateReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);

  if (report.config.scenario != ScenarioTag::kExternal) {
    if (report.config.scenario == ScenarioTag::kScenario1) {
      std::ofstream t1(dir + "/table1.csv");
      t1 << "model,parameter,mean,ci_coverage,mean_ci_width\n";
      for (const auto& m : report.models) {
        if (!m.has_intervals) continue;
        for (std::size_t p = 0; p < m.param_names.size(); ++p) {
          if (!std::isfinite(m.coverage[p])) continue;  // no defined truth
          t1 << m.model << ',' << m.param_names[p] << ',' << format_sig6(m.mean_estimate[p])
             << ',' << format_sig6(m.coverage[p]) << ',' << format_sig6(m.mean_width[p]) << '\n';
        }
      }
    }
    const std::string table_name =
        report.config.scenario == ScenarioTag::kScenario1 ? "/table2.csv" : "/table3.csv";
    std::ofstream t2(dir + table_name);
    t2 << "model,mse,mean_abs_bias\n";
    for (const auto& m : report.models) {
      t2 << m.model << ',' << format_sig6(m.mse) << ',' << format_sig6(m.bias) << '\n';
    }
  }

  std::ofstream js(dir + "/report.json");
  js << report_to_json(report).dump(2) << '\n';
}

AggregateReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.output_dir);

  RunContext ctx;
  ctx.cfg = cfg;
  ctx.linear_family = cfg.scenario == ScenarioTag::kScenario1;
  const bool any_pl = std::any_of(cfg.models.begin(), cfg.models.end(), [](ModelTag t) {
    return t == ModelTag::kUw || t == ModelTag::kPew || t == ModelTag::kPkw;
  });
  if (!ctx.linear_family && any_pl) ctx.basis = build_basis_set(unit_square(), 2);
  if (std::find(cfg.models.begin(), cfg.models.end(), ModelTag::kPrd) != cfg.models.end()) {
    ctx.shared = default_shared_spec(unit_square());
    // Scenario 1 has coordinate covariates in the generating model; the
    // shared-process response mean carries them too.
    ctx.shared->linear_covariates = cfg.scenario == ScenarioTag::kScenario1;
  }
  if (cfg.scenario == ScenarioTag::kScenario2) {
    ctx.gp.emplace(make_grid(unit_square(), kTruthGridSize, kTruthGridSize), CovSpec{1.0, 0.5, 1e-8});
  }
  if (cfg.scenario == ScenarioTag::kExternal) ctx.external = ingest_csv(cfg.external_data);

  const int n_reps = cfg.n_replications;
  std::vector<ReplicationOutput> results(static_cast<std::size_t>(n_reps));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(n_reps));
  std::atomic<int> next{0};
  std::mutex log_mutex;

  int workers = cfg.n_workers > 0 ? cfg.n_workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n_reps);

  auto work = [&]() {
    for (int r = next.fetch_add(1); r < n_reps; r = next.fetch_add(1)) {
      try {
        results[static_cast<std::size_t>(r)] = run_replication(ctx, r, r == 0);
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "[prefsamp] replication " << (r + 1) << "/" << n_reps << " done (n="
                  << results[static_cast<std::size_t>(r)].record.n_samples << ")\n";
      } catch (...) {
        failures[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  AggregateReport report;
  report.config = cfg;
  // Known truths for tracked parameters; only these get coverage entries.
  auto truth_of = [](const std::string& name) -> std::optional<double> {
    if (name == "beta1") return 5.0;
    if (name == "beta2") return 2.0;
    return std::nullopt;
  };

  std::vector<double> uw_seconds;
  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
    if (cfg.models[mi] != ModelTag::kUw) continue;
    for (const auto& rep : results) uw_seconds.push_back(rep.record.models[mi].fit_seconds);
  }

  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
    ModelAggregate agg;
    agg.model = to_string(cfg.models[mi]);
    agg.has_intervals = results.front().record.models[mi].has_intervals;

    const auto& names = results.front().record.models[mi].tracked_names;
    agg.param_names = names;
    for (std::size_t p = 0; p < names.size(); ++p) {
      std::vector<ParamTrack> tracks;
      tracks.reserve(results.size());
      double est_sum = 0.0;
      for (const auto& rep : results) {
        tracks.push_back(rep.record.models[mi].tracked[p]);
        est_sum += tracks.back().estimate;
      }
      agg.mean_estimate.push_back(est_sum / static_cast<double>(results.size()));
      const std::optional<double> truth = truth_of(names[p]);
      if (agg.has_intervals && truth) {
        const CoverageWidth cw = coverage_and_width(tracks, *truth);
        agg.coverage.push_back(cw.coverage);
        agg.mean_width.push_back(cw.mean_width);
      } else {
        double width = 0.0;
        for (const auto& t : tracks) width += t.upper - t.lower;
        agg.coverage.push_back(kNaN);
        agg.mean_width.push_back(width / static_cast<double>(tracks.size()));
      }
    }

    std::vector<double> seconds;
    std::vector<Eigen::VectorXd> means, truths_grid;
    double mse_sum = 0.0;
    long mse_count = 0;
    long iters = 0;
    for (const auto& rep : results) {
      const auto& mr = rep.record.models[mi];
      seconds.push_back(mr.fit_seconds);
      iters = mr.iterations;
      if (std::isfinite(mr.mse)) {
        mse_sum += mr.mse;
        ++mse_count;
        means.push_back(rep.surface_means[mi]);
        truths_grid.push_back(rep.truth_values);
      }
    }
    agg.mse = mse_count > 0 ? mse_sum / static_cast<double>(mse_count) : kNaN;
    agg.bias = means.empty() ? kNaN : mean_abs_bias(means, truths_grid);
    agg.mean_fit_seconds = 0.0;
    for (double s : seconds) agg.mean_fit_seconds += s;
    agg.mean_fit_seconds /= static_cast<double>(seconds.size());
    agg.runtime_vs_uw = uw_seconds.empty() ? 0.0 : runtime_ratio(seconds, uw_seconds);
    agg.seconds_per_iteration = iters > 0 ? agg.mean_fit_seconds / static_cast<double>(iters) : 0.0;
    report.models.push_back(std::move(agg));
  }

  report.replications.reserve(results.size());
  for (auto& rep : results) report.replications.push_back(std::move(rep.record));

  emit_tables(report, cfg.output_dir);

  // Plot-ready artifacts from the first replication.
  const ReplicationOutput& first = results.front();
  if (first.draw) {
    write_samples_csv(first.draw->samples, cfg.output_dir + "/samples.csv");
    if (first.truth_values.allFinite()) {
      write_truth_csv(first.draw->truth, cfg.output_dir + "/truth_surface.csv");
    }
    for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
      emit_surface(first.surfaces[mi], cfg.output_dir, to_string(cfg.models[mi]));
    }
  }

  {
    std::ofstream rc(cfg.output_dir + "/replications.csv");
    rc << "replication,model,mse\n";
    for (const auto& rep : report.replications) {
      for (const auto& m : rep.models) {
        rc << rep.replication << ',' << m.model << ','
           << (std::isfinite(m.mse) ? format_sig6(m.mse) : "") << '\n';
      }
    }
  }

  return report;
}

}  // namespace prefsamp
