// Copyright 2026 The billiard-prop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "billiard_cli/config.hpp"
#include "billiard_cli/run.hpp"

int main(int argc, char **argv) {
    using namespace billiard::cli;

    CLI::App app{"Quantum billiard eigenstates, propagators and covariances"};
    std::string scenario_name;
    std::string config_path;
    std::string out_dir;
    bool verbose = false;
    app.add_option("scenario", scenario_name,
                   "eigen | evolve | covariance | greens-check | domain")
        ->required();
    app.add_option("--config", config_path, "Configuration file")->required();
    app.add_option("--out", out_dir, "Output directory (overrides output.path)");
    app.add_flag("--verbose", verbose, "Progress on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error kind=UsageError code=" << kExitUsage
                  << " message=\"" << e.what() << "\"\n";
        return kExitUsage;
    }

    try {
        Scenario scenario{};
        try {
            scenario = parse_scenario(scenario_name);
        } catch (const billiard::ValidationError &e) {
            std::cerr << "error kind=UsageError code=" << kExitUsage
                      << " message=\"" << e.what() << "\"\n";
            return kExitUsage;
        }
        RunConfig config = parse_config(read_file(config_path));
        if (config.scenario_set && config.scenario != scenario) {
            throw billiard::ValidationError(
                "config scenario '" + std::string(to_string(config.scenario)) +
                "' does not match command '" + scenario_name + "'");
        }
        config.scenario = scenario;
        const std::string dir = out_dir.empty() ? config.output_path : out_dir;
        const RunResult result = run(config, dir, verbose ? &std::cerr : nullptr);
        if (verbose) {
            std::cerr << "done: " << result.files.size() << " file(s)\n";
        }
    } catch (const std::exception &e) {
        std::cerr << error_line(e) << '\n';
        return exit_code(e);
    }
    return kExitOk;
}
