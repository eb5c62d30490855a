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

// Batch front door for the rrls toolkit. Built purely on the C API so it
// doubles as a usage example for foreign-language bindings.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rrls/rrls.h"

namespace {

// Exit codes: 0 success, 1 runtime fault, 2 config error.
int exit_code_for(rrls_status status) {
    switch (status) {
        case RRLS_OK:
            return 0;
        case RRLS_ERROR_CONFIG:
            return 2;
        default:
            return 1;
    }
}

int finish(rrls_status status) {
    if (status != RRLS_OK) std::fprintf(stderr, "rrls: %s\n", rrls_last_error());
    return exit_code_for(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rrls - robust reinforcement learning suite"};
    app.require_subcommand(1);

    int workers = 0; // 0 = RRLS_WORKERS env var, then 1
    app.add_option("--workers", workers, "worker cap for evaluation sweeps");

    std::string train_config, train_output;
    CLI::App* train = app.add_subcommand("train", "train policies per an experiment config");
    train->add_option("--config", train_config, "experiment config JSON")->required();
    train->add_option("--output-dir", train_output, "override the config's output_dir");

    std::string eval_policy, eval_config, eval_csv = "records.csv", eval_json = "summary.json";
    std::string eval_base, eval_target;
    CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate a policy over the mesh");
    evaluate->add_option("--policy", eval_policy, "trained policy JSON")->required();
    evaluate->add_option("--config", eval_config, "experiment config JSON")->required();
    evaluate->add_option("--out-csv", eval_csv, "episode records CSV path");
    evaluate->add_option("--out-json", eval_json, "metrics summary JSON path");
    evaluate->add_option("--base", eval_base, "baseline summary JSON for normalized scores");
    evaluate->add_option("--target", eval_target, "target summary JSON for normalized scores");

    std::string report_dir, report_out;
    CLI::App* report = app.add_subcommand("report", "render curves and a score table");
    report->add_option("--run-dir", report_dir, "directory holding training runs")->required();
    report->add_option("--out", report_out, "report output directory");

    app.add_subcommand("list-envs", "list registered environments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are config errors
    }

    if (train->parsed())
        return finish(rrls_cmd_train(train_config.c_str(),
                                     train_output.empty() ? nullptr : train_output.c_str(),
                                     workers));

    if (evaluate->parsed())
        return finish(rrls_cmd_evaluate(eval_policy.c_str(), eval_config.c_str(),
                                        eval_csv.c_str(), eval_json.c_str(),
                                        eval_base.empty() ? nullptr : eval_base.c_str(),
                                        eval_target.empty() ? nullptr : eval_target.c_str(),
                                        workers));

    if (report->parsed())
        return finish(rrls_cmd_report(report_dir.c_str(),
                                      report_out.empty() ? nullptr : report_out.c_str()));

    // list-envs
    std::vector<char> buf(16384);
    size_t required = 0;
    rrls_status status = rrls_list_envs(buf.data(), buf.size(), &required);
    if (status == RRLS_ERROR_BUFFER) {
        buf.resize(required);
        status = rrls_list_envs(buf.data(), buf.size(), &required);
    }
    if (status != RRLS_OK) return finish(status);
    std::fputs(buf.data(), stdout);
    return 0;
}
