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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace rrls {

struct TrainLogEntry {
    int iteration = 0;
    long long env_steps = 0; // cumulative environment steps consumed
    double mean_fitness = 0.0;
    double best_fitness = 0.0;
    double wall_time_s = 0.0;
};

/// Per-iteration training records. The env-step counter is monotone
/// non-decreasing. Wall times live only in memory and in run metadata;
/// the CSV form carries the reproducible columns.
struct TrainLog {
    std::vector<TrainLogEntry> entries;

    void write_csv(std::ostream& out) const;
    static TrainLog read_csv(std::istream& in);
};

struct CemOptions {
    int dim = 0;
    int population = 64;
    double elite_frac = 0.125;
    int max_iterations = 1000;
    std::uint64_t seed = 0;
    double init_std = 1.0;
    double std_floor = 1e-3;
    std::vector<double> init_mean; // empty = zeros
};

/// Candidate score; std::nullopt aborts the current generation (used by
/// trainers when the env-step budget runs out mid-generation). Non-finite
/// scores discard the candidate with a warning.
using CemFitness = std::function<std::optional<double>(std::span<const double>)>;

struct CemResult {
    std::vector<double> best; // best-ever candidate
    double best_fitness = 0.0;
    std::vector<double> final_mean;
    TrainLog log;
    bool aborted = false; // fitness requested an early stop
};

/// Cross-entropy method over a diagonal Gaussian: sample a population,
/// refit mean/std on the top elite_frac, track the best-ever candidate.
/// Candidates are drawn and evaluated in a fixed order, so results are a
/// deterministic function of (options, fitness).
CemResult cem_optimize(const CemFitness& fitness, const CemOptions& options,
                       const std::function<long long()>& env_steps = {});

} // namespace rrls
