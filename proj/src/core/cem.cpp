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

#include "core/cem.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "core/rng.hpp"

namespace rrls {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

void TrainLog::write_csv(std::ostream& out) const {
    out << "iteration,env_steps,mean_fitness,best_fitness\n";
    for (const TrainLogEntry& e : entries)
        out << e.iteration << "," << e.env_steps << "," << format_double(e.mean_fitness) << ","
            << format_double(e.best_fitness) << "\n";
}

TrainLog TrainLog::read_csv(std::istream& in) {
    TrainLog log;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("TrainLog: empty CSV");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        TrainLogEntry e;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        e.iteration = std::stoi(field);
        std::getline(row, field, ',');
        e.env_steps = std::stoll(field);
        std::getline(row, field, ',');
        e.mean_fitness = std::stod(field);
        std::getline(row, field, ',');
        e.best_fitness = std::stod(field);
        log.entries.push_back(e);
    }
    return log;
}

CemResult cem_optimize(const CemFitness& fitness, const CemOptions& options,
                       const std::function<long long()>& env_steps) {
    if (options.dim < 1) throw std::invalid_argument("cem_optimize: dim must be >= 1");
    if (options.population < 4)
        throw std::invalid_argument("cem_optimize: population must be >= 4");
    if (!(options.elite_frac > 0.0 && options.elite_frac <= 0.5))
        throw std::invalid_argument("cem_optimize: elite_frac must lie in (0, 0.5]");
    if (!options.init_mean.empty() &&
        options.init_mean.size() != static_cast<std::size_t>(options.dim))
        throw std::invalid_argument("cem_optimize: init_mean size mismatch");

    const int n_elite = std::max(1, static_cast<int>(std::lround(options.population *
                                                                 options.elite_frac)));
    std::vector<double> mean = options.init_mean.empty()
                                   ? std::vector<double>(options.dim, 0.0)
                                   : options.init_mean;
    std::vector<double> stddev(options.dim, options.init_std);

    std::mt19937_64 engine = make_engine(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    CemResult result;
    result.best_fitness = -std::numeric_limits<double>::infinity();
    auto started = std::chrono::steady_clock::now();

    std::vector<double> candidate(options.dim);
    std::vector<std::vector<double>> population(options.population);
    std::vector<double> scores(options.population);

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        int n_valid = 0;
        double score_sum = 0.0;
        bool aborted = false;
        std::vector<int> valid_idx;
        valid_idx.reserve(options.population);
        for (int i = 0; i < options.population && !aborted; ++i) {
            for (int j = 0; j < options.dim; ++j)
                candidate[j] = mean[j] + stddev[j] * normal(engine);
            population[i] = candidate;
            std::optional<double> score = fitness(candidate);
            if (!score.has_value()) {
                aborted = true;
                break;
            }
            if (!std::isfinite(*score)) {
                std::cerr << "cem_optimize: discarding candidate " << i << " of iteration "
                          << iter << " with non-finite fitness\n";
                scores[i] = -std::numeric_limits<double>::infinity();
                continue;
            }
            scores[i] = *score;
            valid_idx.push_back(i);
            score_sum += *score;
            ++n_valid;
            // Ties go to the later candidate, biasing best-ever toward
            // the converged distribution.
            if (*score >= result.best_fitness) {
                result.best_fitness = *score;
                result.best = population[i];
            }
        }
        if (aborted) {
            // Budget ran out mid-generation: the partial generation is
            // discarded without a log entry or an update.
            result.aborted = true;
            break;
        }
        if (n_valid > 0) {
            // Elite refit: stable sort keeps lowest candidate index first
            // among equal scores.
            std::stable_sort(valid_idx.begin(), valid_idx.end(),
                             [&](int a, int b) { return scores[a] > scores[b]; });
            int take = std::min<int>(n_elite, n_valid);
            for (int j = 0; j < options.dim; ++j) {
                double m = 0.0;
                for (int e = 0; e < take; ++e) m += population[valid_idx[e]][j];
                m /= take;
                double var = 0.0;
                for (int e = 0; e < take; ++e) {
                    double d = population[valid_idx[e]][j] - m;
                    var += d * d;
                }
                var /= take;
                mean[j] = m;
                stddev[j] = std::max(options.std_floor, std::sqrt(var));
            }
        }
        TrainLogEntry entry;
        entry.iteration = iter;
        entry.env_steps = env_steps ? env_steps() : 0;
        entry.mean_fitness = n_valid > 0 ? score_sum / n_valid
                                         : -std::numeric_limits<double>::infinity();
        entry.best_fitness = result.best_fitness;
        entry.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        result.log.entries.push_back(entry);
    }

    if (result.best.empty()) {
        // No candidate was ever scored (immediate abort or all
        // non-finite): fall back to the current mean.
        result.best = mean;
        result.best_fitness = std::numeric_limits<double>::quiet_NaN();
    }
    result.final_mean = std::move(mean);
    return result;
}

} // namespace rrls
