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

#include "core/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "nlohmann/json.hpp"

#include "core/errors.hpp"
#include "core/gridworld.hpp"
#include "core/registry.hpp"
#include "core/svg.hpp"

namespace fs = std::filesystem;

namespace rrls {

const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> algorithms = {
        "nominal", "dr", "worstcase", "adversarial", "action-robust", "tabular-robust"};
    return algorithms;
}

namespace {

std::string join_algorithms() {
    std::string out;
    for (const std::string& a : known_algorithms()) {
        if (!out.empty()) out += ", ";
        out += a;
    }
    return out;
}

nlohmann::json load_json_file(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + what + " '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(what + " '" + path + "': invalid JSON: " + e.what());
    }
    return doc;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
}

std::string iso_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

template <typename T>
T field(const nlohmann::json& doc, const std::string& key, const T& fallback) {
    if (!doc.contains(key)) return fallback;
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

template <typename T>
T required_field(const nlohmann::json& doc, const std::string& key) {
    if (!doc.contains(key)) throw ConfigError("config is missing the field '" + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    nlohmann::json doc = load_json_file(path, "experiment config");
    return from_json(doc, fs::path(path).parent_path().string());
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc,
                                             const std::string& base_dir) {
    ExperimentConfig config;
    config.env_id = required_field<std::string>(doc, "env_id");
    const EnvInfo& info = env_info(config.env_id); // throws ConfigError on unknown ids

    config.algorithm = required_field<std::string>(doc, "algorithm");
    if (std::find(known_algorithms().begin(), known_algorithms().end(), config.algorithm) ==
        known_algorithms().end())
        throw ConfigError("config field 'algorithm': unknown algorithm '" + config.algorithm +
                          "' (valid algorithms: " + join_algorithms() + ")");

    config.budget = required_field<long long>(doc, "budget");
    if (config.budget <= 0) throw ConfigError("config field 'budget' must be positive");

    config.seeds = required_field<std::vector<std::uint64_t>>(doc, "seeds");
    if (config.seeds.empty()) throw ConfigError("config field 'seeds' must be non-empty");

    if (doc.contains("space") && doc.contains("space_file"))
        throw ConfigError("config fields 'space' and 'space_file' are mutually exclusive");
    if (doc.contains("space")) {
        try {
            config.space = ParamSpace::from_json(doc.at("space"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config field 'space': ") + e.what());
        }
    } else if (doc.contains("space_file")) {
        fs::path p = required_field<std::string>(doc, "space_file");
        if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
        try {
            config.space = ParamSpace::from_json(load_json_file(p.string(), "space file"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config field 'space_file': ") + e.what());
        }
    } else {
        config.space = info.space;
    }
    if (static_cast<int>(config.space.size()) != info.param_dim)
        throw ConfigError("config field 'space' has " + std::to_string(config.space.size()) +
                          " dims but environment '" + config.env_id + "' exposes " +
                          std::to_string(info.param_dim) + " parameters");

    if (doc.contains("train")) {
        const nlohmann::json& train = doc.at("train");
        config.trainer.population = field<int>(train, "population", config.trainer.population);
        config.trainer.elite_frac =
            field<double>(train, "elite_frac", config.trainer.elite_frac);
        config.trainer.hidden = field<int>(train, "hidden", config.trainer.hidden);
        config.trainer.episodes_per_eval =
            field<int>(train, "episodes_per_eval", config.trainer.episodes_per_eval);
        config.trainer.init_std = field<double>(train, "init_std", config.trainer.init_std);
        config.trainer.rounds = field<int>(train, "rounds", config.trainer.rounds);
        config.trainer.adversary_mesh_dim =
            field<int>(train, "adversary_mesh_dim", config.trainer.adversary_mesh_dim);
        config.trainer.alpha = field<double>(train, "alpha", config.trainer.alpha);
        if (train.contains("horizon"))
            config.trainer.horizon = field<int>(train, "horizon", info.default_horizon);
    }

    if (doc.contains("evaluation")) {
        const nlohmann::json& eval = doc.at("evaluation");
        config.evaluation.nb_mesh_dim =
            field<int>(eval, "nb_mesh_dim", config.evaluation.nb_mesh_dim);
        if (eval.contains("seeds")) {
            if (eval.at("seeds").is_number()) {
                int n = eval.at("seeds").get<int>();
                if (n < 1) throw ConfigError("config field 'evaluation.seeds' must be >= 1");
                config.evaluation.seeds.clear();
                for (int i = 0; i < n; ++i) config.evaluation.seeds.push_back(i);
            } else {
                config.evaluation.seeds =
                    required_field<std::vector<std::uint64_t>>(eval, "seeds");
                if (config.evaluation.seeds.empty())
                    throw ConfigError("config field 'evaluation.seeds' must be non-empty");
            }
        }
        config.evaluation.episodes_per_seed =
            field<int>(eval, "episodes_per_seed", config.evaluation.episodes_per_seed);
        config.evaluation.discounted =
            field<bool>(eval, "discounted", config.evaluation.discounted);
        config.evaluation.gamma = field<double>(eval, "gamma", config.evaluation.gamma);
    }
    if (config.evaluation.nb_mesh_dim == 0)
        config.evaluation.nb_mesh_dim = default_nb_mesh_dim(config.space.size());

    std::string out_dir = field<std::string>(doc, "output_dir", config.output_dir);
    fs::path out_path = out_dir;
    if (out_path.is_relative() && !base_dir.empty()) out_path = fs::path(base_dir) / out_path;
    config.output_dir = out_path.string();
    return config;
}

nlohmann::json ExperimentConfig::resolved_json() const {
    return nlohmann::json{
        {"env_id", env_id},
        {"algorithm", algorithm},
        {"budget", budget},
        {"seeds", seeds},
        {"space", space.to_json()},
        {"train",
         {{"population", trainer.population},
          {"elite_frac", trainer.elite_frac},
          {"hidden", trainer.hidden},
          {"episodes_per_eval", trainer.episodes_per_eval},
          {"init_std", trainer.init_std},
          {"rounds", trainer.rounds},
          {"adversary_mesh_dim", trainer.adversary_mesh_dim},
          {"alpha", trainer.alpha},
          {"horizon", trainer.horizon.value_or(env_info(env_id).default_horizon)}}},
        {"evaluation",
         {{"nb_mesh_dim", evaluation.nb_mesh_dim},
          {"seeds", evaluation.seeds},
          {"episodes_per_seed", evaluation.episodes_per_seed},
          {"discounted", evaluation.discounted},
          {"gamma", evaluation.gamma}}},
        {"output_dir", output_dir}};
}

namespace {

TrainOutcome dispatch_train(const ExperimentConfig& config, std::uint64_t seed) {
    if (config.algorithm == "nominal")
        return train_nominal(config.env_id, config.budget, seed, config.trainer);
    if (config.algorithm == "dr")
        return train_dr(config.env_id, config.space, config.budget, seed, config.trainer);
    if (config.algorithm == "worstcase")
        return train_worstcase(config.env_id, config.space, config.budget, seed,
                               config.trainer.adversary_mesh_dim, config.trainer);
    if (config.algorithm == "adversarial")
        return train_adversarial(config.env_id, config.space, config.budget, seed,
                                 config.trainer);
    if (config.algorithm == "action-robust")
        return train_action_robust(config.env_id, config.trainer.alpha, config.budget, seed,
                                   config.trainer);
    if (config.algorithm == "tabular-robust") {
        std::unique_ptr<Env> env = make_env(config.env_id);
        std::vector<ParamVector> cells;
        if (config.trainer.adversary_mesh_dim <= 1)
            cells.push_back(config.space.reference);
        else
            cells = generate_evaluation_set(config.space, config.trainer.adversary_mesh_dim)
                        .cells;
        KernelSet ks = extract_tabular_kernel(*env, cells);
        RobustSolveResult solved = robust_value_iteration(ks);
        TrainOutcome outcome;
        outcome.policy.env_id = config.env_id;
        outcome.policy.kind = "tabular";
        outcome.policy.hidden = 0;
        outcome.policy.seed = seed;
        outcome.policy.params.reserve(ks.base.n_states);
        for (int s = 0; s < ks.base.n_states; ++s)
            outcome.policy.params.push_back(static_cast<double>(solved.policy.mode_action(s)));
        outcome.policy.train_config_json =
            nlohmann::json{{"algorithm", "tabular-robust"},
                           {"adversary_mesh_dim", config.trainer.adversary_mesh_dim},
                           {"kernels", ks.n_kernels()}}
                .dump();
        TrainLogEntry entry;
        entry.iteration = 1;
        entry.env_steps = 0;
        entry.mean_fitness = weighted_value(ks.base.rho, solved.values);
        entry.best_fitness = entry.mean_fitness;
        outcome.log.entries.push_back(entry);
        return outcome;
    }
    throw ConfigError("unknown algorithm '" + config.algorithm +
                      "' (valid algorithms: " + join_algorithms() + ")");
}

} // namespace

void run_train(const ExperimentConfig& config, const std::string& output_dir_override,
               int workers) {
    (void)workers; // training is sequential so outputs never depend on worker count
    fs::path out_dir = output_dir_override.empty() ? fs::path(config.output_dir)
                                                   : fs::path(output_dir_override);
    fs::create_directories(out_dir);

    auto t0 = std::chrono::steady_clock::now();
    nlohmann::json meta;
    meta["started_at"] = iso_timestamp();
    meta["algorithm"] = config.algorithm;
    meta["env_id"] = config.env_id;

    long long total_steps = 0;
    for (std::uint64_t seed : config.seeds) {
        TrainOutcome outcome = dispatch_train(config, seed);
        total_steps += outcome.steps_used;
        outcome.policy.save((out_dir / ("policy_seed" + std::to_string(seed) + ".json"))
                                .string());
        if (outcome.adversary)
            outcome.adversary->save(
                (out_dir / ("adversary_seed" + std::to_string(seed) + ".json")).string());
        std::ofstream log_out(out_dir / ("train_log_seed" + std::to_string(seed) + ".csv"));
        if (!log_out) throw IoError("cannot write training log in '" + out_dir.string() + "'");
        outcome.log.write_csv(log_out);
    }

    write_text_file(out_dir / "config.resolved.json", config.resolved_json().dump(2) + "\n");
    meta["finished_at"] = iso_timestamp();
    meta["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    meta["total_env_steps"] = total_steps;
    write_text_file(out_dir / "run_meta.json", meta.dump(2) + "\n");
}

void run_evaluate(const std::string& policy_path, const ExperimentConfig& config,
                  const std::string& out_csv, const std::string& out_json,
                  const std::string& base_summary_path,
                  const std::string& target_summary_path, int workers) {
    PolicyArtifact artifact = PolicyArtifact::load(policy_path);
    if (artifact.env_id != config.env_id)
        throw ConfigError("policy was trained on '" + artifact.env_id +
                          "' but the config evaluates '" + config.env_id + "'");
    const EnvInfo& info = env_info(config.env_id);

    EvaluationMesh mesh = generate_evaluation_set(config.space, config.evaluation.nb_mesh_dim);
    PolicyFn policy = bind_policy(artifact, info.observation_dim, info.action_bounds.low,
                                  info.action_bounds.high);
    EvalOptions options;
    options.episodes_per_seed = config.evaluation.episodes_per_seed;
    options.discounted = config.evaluation.discounted;
    options.gamma = config.evaluation.gamma;
    options.horizon = info.default_horizon;
    options.workers = workers;
    EvalResult result =
        evaluate_policy(policy, [&]() { return make_env(config.env_id); }, mesh,
                        config.evaluation.seeds, options);

    std::ofstream csv(out_csv);
    if (!csv) throw IoError("cannot write '" + out_csv + "'");
    write_records_csv(csv, mesh, result.records);

    nlohmann::json summary = result.summary.to_json();
    summary["env_id"] = config.env_id;
    summary["policy"] = fs::path(policy_path).filename().string();
    summary["nb_mesh_dim"] = mesh.nb_mesh_dim;
    summary["n_cells"] = mesh.cells.size();
    summary["seeds"] = config.evaluation.seeds;
    summary["episodes_per_seed"] = config.evaluation.episodes_per_seed;
    summary["discounted"] = config.evaluation.discounted;
    try {
        summary["algorithm"] =
            nlohmann::json::parse(artifact.train_config_json).value("algorithm", "unknown");
    } catch (const nlohmann::json::exception&) {
        summary["algorithm"] = "unknown";
    }

    if (!base_summary_path.empty() && !target_summary_path.empty()) {
        nlohmann::json base = load_json_file(base_summary_path, "base summary");
        nlohmann::json target = load_json_file(target_summary_path, "target summary");
        auto normalized = [&](const char* key) {
            NormalizedScore score =
                normalize_score(summary.at(key).get<double>(), base.at(key).get<double>(),
                                target.at(key).get<double>());
            nlohmann::json doc{{"raw", score.raw},
                               {"base", score.base},
                               {"target", score.target},
                               {"degenerate", score.degenerate}};
            if (!score.degenerate) doc["value"] = score.value;
            return doc;
        };
        summary["normalized"] = {{"worst_case", normalized("worst_case")},
                                 {"average_case", normalized("average_case")}};
    } else if (!base_summary_path.empty() || !target_summary_path.empty()) {
        throw ConfigError("normalized scores need both --base and --target summaries");
    }

    write_text_file(out_json, summary.dump(2) + "\n");
}

namespace {

struct RunArtifacts {
    fs::path dir;
    std::string algorithm;
    std::vector<fs::path> logs;
    std::optional<nlohmann::json> summary;
};

std::optional<RunArtifacts> scan_run_dir(const fs::path& dir) {
    if (!fs::exists(dir / "run_meta.json")) return std::nullopt;
    RunArtifacts run;
    run.dir = dir;
    run.algorithm = "unknown";
    if (fs::exists(dir / "config.resolved.json")) {
        nlohmann::json config = load_json_file((dir / "config.resolved.json").string(),
                                               "resolved config");
        run.algorithm = config.value("algorithm", "unknown");
    }
    std::vector<fs::path> logs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string name = entry.path().filename().string();
        if (name.rfind("train_log_seed", 0) == 0 && entry.path().extension() == ".csv")
            logs.push_back(entry.path());
    }
    std::sort(logs.begin(), logs.end());
    run.logs = std::move(logs);
    if (fs::exists(dir / "summary.json"))
        run.summary = load_json_file((dir / "summary.json").string(), "summary");
    return run;
}

std::string fmt_cell(const nlohmann::json& summary, const char* key, const char* std_key) {
    if (!summary.contains(key)) return "-";
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << summary.at(key).get<double>();
    if (summary.contains(std_key)) out << " ± " << summary.at(std_key).get<double>();
    return out.str();
}

} // namespace

void run_report(const std::string& run_dir, const std::string& out_dir_arg) {
    fs::path root(run_dir);
    if (!fs::exists(root)) throw IoError("run directory '" + run_dir + "' does not exist");

    std::vector<RunArtifacts> runs;
    if (auto run = scan_run_dir(root)) runs.push_back(std::move(*run));
    std::vector<fs::path> children;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) children.push_back(entry.path());
    std::sort(children.begin(), children.end());
    for (const fs::path& child : children)
        if (auto run = scan_run_dir(child)) runs.push_back(std::move(*run));
    if (runs.empty())
        throw IoError("no runs found under '" + run_dir +
                      "' (expected run_meta.json and training logs)");

    fs::path out_dir = out_dir_arg.empty() ? root / "report" : fs::path(out_dir_arg);
    fs::create_directories(out_dir);

    std::ostringstream md;
    md << "# Run report\n\n";
    md << "| algorithm | worst-case | average-case | normalized worst | normalized avg |\n";
    md << "|---|---|---|---|---|\n";
    for (const RunArtifacts& run : runs) {
        if (!run.logs.empty()) {
            std::vector<std::vector<std::pair<long long, double>>> series;
            for (const fs::path& log_path : run.logs) {
                std::ifstream in(log_path);
                if (!in) throw IoError("cannot read '" + log_path.string() + "'");
                TrainLog log = TrainLog::read_csv(in);
                std::vector<std::pair<long long, double>> s;
                for (const TrainLogEntry& e : log.entries)
                    s.emplace_back(e.env_steps, e.mean_fitness);
                if (!s.empty()) series.push_back(std::move(s));
            }
            if (!series.empty())
                write_text_file(out_dir / ("curve_" + run.algorithm + ".svg"),
                                training_curve_svg(run.algorithm, series));
        }
        std::string worst = "-", average = "-", norm_worst = "-", norm_avg = "-";
        if (run.summary) {
            worst = fmt_cell(*run.summary, "worst_case", "worst_case_std");
            average = fmt_cell(*run.summary, "average_case", "average_case_std");
            if (run.summary->contains("normalized")) {
                const auto& normalized = run.summary->at("normalized");
                if (normalized.at("worst_case").contains("value")) {
                    std::ostringstream v;
                    v.precision(3);
                    v << std::fixed << normalized.at("worst_case").at("value").get<double>();
                    norm_worst = v.str();
                }
                if (normalized.at("average_case").contains("value")) {
                    std::ostringstream v;
                    v.precision(3);
                    v << std::fixed << normalized.at("average_case").at("value").get<double>();
                    norm_avg = v.str();
                }
            }
        }
        md << "| " << run.algorithm << " | " << worst << " | " << average << " | "
           << norm_worst << " | " << norm_avg << " |\n";
    }
    md << "\nCurves: mean return with a ±1 std band across seeds.\n";
    write_text_file(out_dir / "summary.md", md.str());
}

} // namespace rrls
