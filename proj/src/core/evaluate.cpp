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

#include "core/evaluate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "nlohmann/json.hpp"

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace rrls {

std::vector<std::uint64_t> default_eval_seeds() {
    std::vector<std::uint64_t> seeds(10);
    for (std::uint64_t i = 0; i < 10; ++i) seeds[i] = i;
    return seeds;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

double stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    long double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    long double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= xs.size();
    return static_cast<double>(std::sqrt(var));
}

} // namespace

EvalResult evaluate_policy(const PolicyFn& policy, const EnvFactory& make_env,
                           const EvaluationMesh& mesh,
                           const std::vector<std::uint64_t>& seeds,
                           const EvalOptions& options) {
    if (seeds.empty()) throw std::invalid_argument("evaluate_policy: empty seed list");
    if (options.episodes_per_seed < 1)
        throw std::invalid_argument("evaluate_policy: episodes_per_seed must be >= 1");
    if (mesh.cells.empty()) throw std::invalid_argument("evaluate_policy: empty mesh");

    const int per_cell = static_cast<int>(seeds.size()) * options.episodes_per_seed;
    EvalResult result;
    result.records.resize(mesh.cells.size() * static_cast<std::size_t>(per_cell));

    parallel_for(mesh.cells.size(), options.workers, [&](std::size_t cell) {
        std::unique_ptr<Env> env = make_env();
        env->set_params(mesh.cells[cell]);
        int horizon = options.horizon.value_or(1000);
        std::size_t slot = cell * static_cast<std::size_t>(per_cell);
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            for (int e = 0; e < options.episodes_per_seed; ++e, ++slot) {
                EpisodeRecord& record = result.records[slot];
                record.cell_index = static_cast<int>(cell);
                record.seed = seeds[si];
                record.episode = e;
                std::uint64_t episode_seed =
                    mix_seed(static_cast<std::uint64_t>(cell), seeds[si],
                             static_cast<std::uint64_t>(e));
                try {
                    RolloutResult r = rollout(*env, policy, options.gamma, horizon,
                                              episode_seed);
                    record.episode_return =
                        options.discounted ? r.discounted_return : r.undiscounted_return;
                    record.length = r.length;
                } catch (const EnvFault&) {
                    record.fault = true;
                    record.episode_return = std::numeric_limits<double>::quiet_NaN();
                }
            }
        }
    });

    // Deterministic fold in (cell, seed value, episode) key order, so the
    // summary is independent of seed-list order and worker count.
    std::vector<std::size_t> order(result.records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const EpisodeRecord& ra = result.records[a];
        const EpisodeRecord& rb = result.records[b];
        if (ra.cell_index != rb.cell_index) return ra.cell_index < rb.cell_index;
        if (ra.seed != rb.seed) return ra.seed < rb.seed;
        return ra.episode < rb.episode;
    });

    MetricsSummary& summary = result.summary;
    summary.cell_mean.assign(mesh.cells.size(), 0.0);
    summary.cell_std.assign(mesh.cells.size(), 0.0);
    summary.cell_complete.assign(mesh.cells.size(), true);

    // Per-seed aggregates for the across-seed stds. Keyed by seed value.
    std::map<std::uint64_t, std::vector<double>> per_seed_cell_means;
    for (std::uint64_t s : seeds) per_seed_cell_means[s].assign(mesh.cells.size(), 0.0);

    std::size_t cursor = 0;
    for (std::size_t cell = 0; cell < mesh.cells.size(); ++cell) {
        long double pooled = 0.0;
        int pooled_count = 0;
        std::vector<double> seed_means;
        std::uint64_t current_seed = 0;
        long double seed_sum = 0.0;
        int seed_count = 0;
        bool first = true;
        for (; cursor < order.size(); ++cursor) {
            const EpisodeRecord& record = result.records[order[cursor]];
            if (record.cell_index != static_cast<int>(cell)) break;
            if (record.fault) {
                summary.cell_complete[cell] = false;
                continue;
            }
            if (first || record.seed != current_seed) {
                if (!first && seed_count > 0) {
                    double m = static_cast<double>(seed_sum / seed_count);
                    seed_means.push_back(m);
                    per_seed_cell_means[current_seed][cell] = m;
                }
                current_seed = record.seed;
                seed_sum = 0.0;
                seed_count = 0;
                first = false;
            }
            seed_sum += record.episode_return;
            ++seed_count;
            pooled += record.episode_return;
            ++pooled_count;
        }
        if (!first && seed_count > 0) {
            double m = static_cast<double>(seed_sum / seed_count);
            seed_means.push_back(m);
            per_seed_cell_means[current_seed][cell] = m;
        }
        summary.cell_mean[cell] = pooled_count > 0
                                      ? static_cast<double>(pooled / pooled_count)
                                      : std::numeric_limits<double>::quiet_NaN();
        summary.cell_std[cell] = stddev(seed_means);
    }

    summary.valid = true;
    for (bool complete : summary.cell_complete) summary.valid = summary.valid && complete;

    long double total = 0.0;
    double worst = std::numeric_limits<double>::infinity();
    for (double m : summary.cell_mean) {
        total += m;
        worst = std::min(worst, m);
    }
    summary.worst_case = worst;
    summary.average_case = static_cast<double>(total / summary.cell_mean.size());
    if (!summary.valid) {
        summary.worst_case = std::numeric_limits<double>::quiet_NaN();
        summary.average_case = std::numeric_limits<double>::quiet_NaN();
    }

    std::vector<double> seed_worsts, seed_averages;
    for (const auto& [seed, means] : per_seed_cell_means) {
        long double avg = 0.0;
        double w = std::numeric_limits<double>::infinity();
        for (double m : means) {
            avg += m;
            w = std::min(w, m);
        }
        seed_worsts.push_back(w);
        seed_averages.push_back(static_cast<double>(avg / means.size()));
    }
    summary.worst_case_std = stddev(seed_worsts);
    summary.average_case_std = stddev(seed_averages);
    return result;
}

void write_records_csv(std::ostream& out, const EvaluationMesh& mesh,
                       const std::vector<EpisodeRecord>& records) {
    out << "cell_index";
    for (const auto& dim : mesh.space.dims) out << "," << dim.name;
    out << ",seed,episode,return,length\n";
    for (const EpisodeRecord& record : records) {
        out << record.cell_index;
        for (double p : mesh.cells[static_cast<std::size_t>(record.cell_index)])
            out << "," << format_double(p);
        out << "," << record.seed << "," << record.episode << ","
            << format_double(record.episode_return) << "," << record.length << "\n";
    }
}

nlohmann::json MetricsSummary::to_json() const {
    return nlohmann::json{{"cell_mean", cell_mean},
                          {"cell_std", cell_std},
                          {"cell_complete", cell_complete},
                          {"worst_case", worst_case},
                          {"average_case", average_case},
                          {"worst_case_std", worst_case_std},
                          {"average_case_std", average_case_std},
                          {"valid", valid}};
}

MetricsSummary MetricsSummary::from_json(const nlohmann::json& doc) {
    MetricsSummary summary;
    try {
        summary.cell_mean = doc.at("cell_mean").get<std::vector<double>>();
        summary.cell_std = doc.at("cell_std").get<std::vector<double>>();
        summary.cell_complete = doc.at("cell_complete").get<std::vector<bool>>();
        summary.worst_case = doc.at("worst_case").get<double>();
        summary.average_case = doc.at("average_case").get<double>();
        summary.worst_case_std = doc.at("worst_case_std").get<double>();
        summary.average_case_std = doc.at("average_case_std").get<double>();
        summary.valid = doc.at("valid").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("MetricsSummary: malformed document: ") +
                                    e.what());
    }
    return summary;
}

NormalizedScore normalize_score(double raw, double base, double target, double eps) {
    NormalizedScore score;
    score.raw = raw;
    score.base = base;
    score.target = target;
    double denom = std::abs(target - base);
    if (denom < eps) {
        score.degenerate = true;
        score.value = std::numeric_limits<double>::quiet_NaN();
        return score;
    }
    score.value = (raw - base) / denom;
    return score;
}

std::vector<std::pair<long long, double>> training_curve(const TrainLog& log, int window) {
    if (window < 1) throw std::invalid_argument("training_curve: window must be >= 1");
    if (log.entries.empty()) throw std::invalid_argument("training_curve: empty log");
    std::vector<std::pair<long long, double>> series;
    if (static_cast<int>(log.entries.size()) < window) return series;
    for (std::size_t i = static_cast<std::size_t>(window) - 1; i < log.entries.size(); ++i) {
        long double acc = 0.0;
        for (std::size_t j = i + 1 - static_cast<std::size_t>(window); j <= i; ++j)
            acc += log.entries[j].mean_fitness;
        series.emplace_back(log.entries[i].env_steps, static_cast<double>(acc / window));
    }
    return series;
}

} // namespace rrls
