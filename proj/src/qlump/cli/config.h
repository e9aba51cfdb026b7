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

// Experiment configuration: a sectioned key = value file plus overrides.
//
//     [model]
//     spec = ring:N=6
//     partition = A:0,2,4;B:1,3,5
//
//     [run]
//     tau_grid = 0:2*pi:201
//     n = 2
//
// Every value is kept as text next to where it came from, so the
// effective configuration can be echoed verbatim into output headers.

#ifndef QLUMP_CLI_CONFIG_H
#define QLUMP_CLI_CONFIG_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlump/errors.h"
#include "qlump/linalg.h"
#include "qlump/models.h"
#include "qlump/qstate.h"
#include "qlump/strobe.h"
#include "qlump/tolerances.h"

namespace qlump::cli {

/// Bad input: unknown keys, unparsable values, invalid combinations.
struct ConfigError : Error {
    using Error::Error;
};

/// Raw settings keyed by "section.key", with provenance.
class Settings {
   public:
    struct Entry {
        std::string value;
        std::string origin;  // "path:line" or "--flag"
    };

    /// Parses the file format above. Blank lines and lines starting with
    /// '#' or ';' are ignored. Throws ConfigError naming path and line.
    static Settings parse(std::string_view text, std::string_view source_name);
    static Settings load(const std::string &path);

    /// Replaces (or adds) a value. Throws ConfigError for unknown keys.
    void set(const std::string &key, std::string value, std::string origin);
    const Entry *find(const std::string &key) const;
    const std::map<std::string, Entry> &entries() const {
        return entries_;
    }

    /// Every accepted "section.key".
    static const std::vector<std::string> &known_keys();

   private:
    std::map<std::string, Entry> entries_;
};

enum class ModelKind { ring, two_qubit, file };

struct ModelSpec {
    ModelKind kind = ModelKind::ring;
    std::size_t sites = 6;
    double lambda1 = 1;
    double lambda2 = 1;
    std::string path;

    static ModelSpec parse(std::string_view text);
    ComplexMatrix hamiltonian() const;
    /// Parity for rings, the probe partition for two qubits.
    std::optional<MesostatePartition> default_partition() const;
    std::size_t dim() const;
};

/// Real number with an optional `pi` factor: "0.7", "pi/3", "-2*pi",
/// "1.5e-3". Throws ConfigError.
double parse_number(std::string_view text);

/// "start:stop:count" (inclusive), "start:stop:count:open" (stop
/// excluded) or a comma-separated list. Entries go through parse_number.
std::vector<double> parse_grid(std::string_view text);

/// basis:K | pure:a0,a1,... | diag:w0,w1,... | witness:theta=X |
/// witness:reference. Amplitudes accept "re", "re+imi" and "imi" forms;
/// short lists are zero-padded to `dim`.
DensityMatrix parse_initial_state(std::string_view text, std::size_t dim);

/// Validated, typed view of a Settings object.
struct ExperimentConfig {
    Settings settings;

    ModelSpec model;
    ComplexMatrix hamiltonian{1};
    std::optional<MesostatePartition> partition;
    Scheme scheme = Scheme::quantum;
    std::optional<double> tau;
    std::vector<double> tau_grid;
    std::vector<double> theta_grid;
    std::size_t n = 1;
    double tau_max = 0;
    std::string initial_spec = "basis:0";
    std::optional<DensityMatrix> initial;
    uint64_t seed = 0;
    std::size_t trajectories = 1000;
    std::vector<std::size_t> ring_sizes;
    PhaseConvention convention = PhaseConvention::derivation;
    Tolerances tolerances;
    /// Threshold on |Q_n| and on coherence coefficients.
    double coherence_tol = 1e-10;

    /// Throws ConfigError (with the origin of the offending value).
    static ExperimentConfig from_settings(Settings settings);

    /// Explicit partition, or the model default. Throws ConfigError.
    const MesostatePartition &require_partition() const;
    /// tau_grid, or the single tau. Throws ConfigError when both are empty.
    std::vector<double> taus() const;
    double require_tau() const;
    std::size_t require_ring() const;

    /// "section.key = value" lines of every effective setting, sorted.
    std::vector<std::string> echo() const;
};

}  // namespace qlump::cli

#endif
