// Copyright 2026 The qlump Authors
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

// Subcommands of the qlump tool. Each one renders its whole output into a
// string; nothing is written unless the run (and its verification)
// succeeds.
//
// CSV: '#' comment lines (subcommand, effective config), then a header row,
// then data in grid order. Numbers use 17 significant digits.
// JSON: one object with a "config" member holding the effective config.

#ifndef QLUMP_CLI_COMMANDS_H
#define QLUMP_CLI_COMMANDS_H

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qlump/cli/config.h"

namespace qlump::cli {

/// A --verify oracle disagreed with the closed-form result.
struct VerifyMismatch : Error {
    using Error::Error;
};

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_config = 2,
    exit_verify = 3,
    exit_cap = 4,
};

/// Names accepted by run_command, in help order.
const std::vector<std::string> &command_names();

/// tau,N,tab
std::string cmd_tab_sweep(const ExperimentConfig &config, bool verify);
/// tau,d,re,im,abs
std::string cmd_coherence_sweep(const ExperimentConfig &config, bool verify);
/// theta,tau,D1,D2,delta
std::string cmd_witness_grid(const ExperimentConfig &config, bool verify);
/// {N, tau_max, tau_M, tau_S, residuals, config}
std::string cmd_magic(const ExperimentConfig &config, bool verify);
/// {lumpability, coherence, classification, scope, config}
std::string cmd_markov_check(const ExperimentConfig &config, bool verify);
/// trajectory_id,step,label
std::string cmd_sample(const ExperimentConfig &config, bool verify);

/// Dispatches by name. Throws ConfigError for unknown names.
std::string run_command(std::string_view name, const ExperimentConfig &config, bool verify);

/// `%.17g`.
std::string format_double(double value);

/// Full command line entry point. Writes output to --out (or `out` when
/// absent or "-"), diagnostics to `err`, and returns an ExitCode.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qlump::cli

#endif
