// Copyright 2026 The rrls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/evaluate.hpp"
#include "core/trainers.hpp"

namespace rrls {

/// Evaluation block of an experiment config.
struct EvalConfig {
    int nb_mesh_dim = 0; // 0 = per-dim default
    std::vector<std::uint64_t> seeds = default_eval_seeds();
    int episodes_per_seed = 5;
    bool discounted = false;
    double gamma = 0.99;
};

/// Parsed experiment configuration. Loaded from JSON; invalid documents
/// raise ConfigError naming the offending field.
struct ExperimentConfig {
    std::string env_id;
    std::string algorithm; // nominal | dr | worstcase | adversarial |
                           // action-robust | tabular-robust
    long long budget = 0;
    std::vector<std::uint64_t> seeds;
    ParamSpace space; // inline, from file, or the env's bundled default
    TrainerOptions trainer;
    EvalConfig evaluation;
    std::string output_dir = ".";

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json(const nlohmann::json& doc, const std::string& base_dir);

    nlohmann::json resolved_json() const;
};

const std::vector<std::string>& known_algorithms();

/// Trains one policy per config seed and writes, under output_dir:
/// policy_seed<k>.json (adversary_seed<k>.json for two-player trainers),
/// train_log_seed<k>.csv, config.resolved.json, and run_meta.json (the
/// only file carrying timestamps).
void run_train(const ExperimentConfig& config, const std::string& output_dir_override,
               int workers);

/// Evaluates a saved policy over the config's mesh; writes the episode
/// CSV and the summary JSON. Optional base/target summaries add
/// normalized worst/average scores to the summary.
void run_evaluate(const std::string& policy_path, const ExperimentConfig& config,
                  const std::string& out_csv, const std::string& out_json,
                  const std::string& base_summary_path,
                  const std::string& target_summary_path, int workers);

/// Scans a run directory for training logs and summaries; writes
/// report/curve_<algorithm>.svg per run plus report/summary.md with a
/// worst-case / average-case table.
void run_report(const std::string& run_dir, const std::string& out_dir);

} // namespace rrls
