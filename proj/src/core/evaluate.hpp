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

#include <iosfwd>
#include <memory>
#include <optional>

#include "core/cem.hpp"
#include "core/mesh.hpp"
#include "core/rollout.hpp"

#include "nlohmann/json_fwd.hpp"

namespace rrls {

/// One evaluated episode. A faulted episode keeps its record (return is
/// NaN) and marks the cell incomplete instead of aborting the sweep.
struct EpisodeRecord {
    int cell_index = 0;
    std::uint64_t seed = 0;
    int episode = 0;
    double episode_return = 0.0;
    int length = 0;
    bool fault = false;
};

/// Aggregates of a mesh sweep: per-cell mean returns (pooled over seeds
/// and episodes), the worst-case/average-case reduction over cells, and
/// across-seed standard deviations of those two aggregates. `valid` is
/// false when any cell is incomplete, which poisons the worst case.
struct MetricsSummary {
    std::vector<double> cell_mean;
    std::vector<double> cell_std; // across per-seed means within the cell
    std::vector<bool> cell_complete;
    double worst_case = 0.0;
    double average_case = 0.0;
    double worst_case_std = 0.0;   // across seeds
    double average_case_std = 0.0; // across seeds
    bool valid = false;

    nlohmann::json to_json() const;
    static MetricsSummary from_json(const nlohmann::json& doc);
};

struct EvalOptions {
    int episodes_per_seed = 5; // protocol default
    bool discounted = false;   // undiscounted episodic returns by default
    double gamma = 0.99;       // used only when discounted
    std::optional<int> horizon; // default: env's registered horizon when
                                // resolvable, else 1000
    int workers = 1;
};

/// The protocol default seed list {0, ..., 9}.
std::vector<std::uint64_t> default_eval_seeds();

using EnvFactory = std::function<std::unique_ptr<Env>()>;

struct EvalResult {
    std::vector<EpisodeRecord> records; // sorted by (cell, seed, episode)
    MetricsSummary summary;
};

/// Sweeps the mesh: per cell, sets the cell's parameters and runs
/// |seeds| x episodes_per_seed episodes with derived seeds
/// mix(cell, seed, episode). Cells may be evaluated by parallel workers;
/// records and aggregates are identical for any worker count, and
/// aggregation folds in (cell, seed, episode) key order so permuting the
/// seed list leaves the summary unchanged.
EvalResult evaluate_policy(const PolicyFn& policy, const EnvFactory& make_env,
                           const EvaluationMesh& mesh,
                           const std::vector<std::uint64_t>& seeds,
                           const EvalOptions& options = {});

/// CSV with header cell_index,<dim names...>,seed,episode,return,length.
void write_records_csv(std::ostream& out, const EvaluationMesh& mesh,
                       const std::vector<EpisodeRecord>& records);

struct NormalizedScore {
    double raw = 0.0;
    double base = 0.0;
    double target = 0.0;
    double value = 0.0;     // (raw - base) / |target - base|
    bool degenerate = false; // |target - base| < eps: value undefined
};

/// Anchors raw between a baseline score (-> 0) and a target score
/// (-> sign(target-base) * 1). Degeneracy is flagged, not thrown.
NormalizedScore normalize_score(double raw, double base, double target, double eps = 1e-9);

/// Moving average of the mean-fitness series over a trailing window;
/// point i of the output is keyed at the env-step count of the window's
/// last entry. Throws on an empty log or window < 1.
std::vector<std::pair<long long, double>> training_curve(const TrainLog& log, int window);

} // namespace rrls
