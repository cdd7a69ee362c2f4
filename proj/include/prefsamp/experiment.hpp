#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prefsamp/hmc.hpp"
#include "prefsamp/metrics.hpp"
#include "prefsamp/sample_set.hpp"

namespace prefsamp {

enum class ModelTag { kUw, kPew, kPkw, kPrd, kWcr };

const char* to_string(ModelTag tag);
ModelTag model_tag_from_string(const std::string& s);

struct ExperimentConfig {
  ScenarioTag scenario = ScenarioTag::kScenario1;
  std::vector<ModelTag> models = {ModelTag::kUw, ModelTag::kPew, ModelTag::kPkw, ModelTag::kPrd};
  int n_replications = 100;
  std::uint64_t base_seed = 20240801;
  double noise_sd = 0.7071067811865476;  // sqrt(0.5)
  int n_candidates = 1000;               // scenario 1 candidate count
  int target_n = 150;                    // scenario 2 expected sample size
  double ps_strength = 1.0;              // scenario 2 log-linear intensity coefficient
  SamplerConfig pl_sampler{5500, 1000, 25, 0.8, 0};
  SamplerConfig prd_sampler{12000, 2000, 25, 0.8, 0};
  std::string output_dir = "out";
  int n_workers = 0;  // 0 = hardware concurrency
  std::string external_data;

  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

std::string config_to_json_string(const ExperimentConfig& cfg);
ExperimentConfig config_from_json_string(const std::string& text);
ExperimentConfig config_from_json_file(const std::string& path);

struct ModelReplicationRecord {
  std::string model;
  double mse = 0.0;
  double fit_seconds = 0.0;
  long iterations = 0;
  bool has_intervals = false;
  std::vector<std::string> tracked_names;
  std::vector<ParamTrack> tracked;
};

struct ReplicationRecord {
  int replication = 0;
  std::uint64_t seed = 0;
  int n_samples = 0;
  std::vector<ModelReplicationRecord> models;
};

struct ModelAggregate {
  std::string model;
  std::vector<std::string> param_names;
  std::vector<double> mean_estimate;
  std::vector<double> coverage;
  std::vector<double> mean_width;
  bool has_intervals = false;
  double mse = 0.0;
  double bias = 0.0;
  double mean_fit_seconds = 0.0;
  double runtime_vs_uw = 0.0;           // 0 when the baseline is absent
  double seconds_per_iteration = 0.0;
};

struct AggregateReport {
  ExperimentConfig config;
  std::vector<ModelAggregate> models;
  std::vector<ReplicationRecord> replications;
};

// Runs the replication loop (concurrently, deterministically per seed),
// aggregates, and writes tables, surfaces, and the JSON mirror to
// config.output_dir.
AggregateReport run_experiment(const ExperimentConfig& cfg);

/// Writes table1/table2 (scenario 1) or table3 (scenario 2) CSVs plus report.json.
void emit_tables(const AggregateReport& report, const std::string& dir);

}  // namespace prefsamp
