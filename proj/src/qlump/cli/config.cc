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

#include "qlump/cli/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qlump/witness.h"

namespace qlump::cli {

namespace {

struct KeySpec {
    const char *key;
    const char *fallback;  // nullptr: unset unless given
};

const std::vector<KeySpec> &key_table() {
    static const std::vector<KeySpec> table = {
        {"model.spec", "ring:N=6"},
        {"model.partition", nullptr},
        {"run.scheme", "quantum"},
        {"run.tau", nullptr},
        {"run.tau_grid", nullptr},
        {"run.theta_grid", nullptr},
        {"run.n", "1"},
        {"run.tau_max", "2*pi"},
        {"run.initial", "basis:0"},
        {"run.seed", "0"},
        {"run.trajectories", "1000"},
        {"run.ring_sizes", nullptr},
        {"run.convention", "derivation"},
        {"tolerances.hermitian", "1e-12"},
        {"tolerances.state", "1e-10"},
        {"tolerances.zero_branch", "1e-14"},
        {"tolerances.lumpability", "1e-10"},
        {"tolerances.coherence", "1e-10"},
    };
    return table;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

double parse_plain(std::string_view text, std::string_view whole) {
    double value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw ConfigError("cannot parse number '" + std::string(whole) + "'");
    }
    return value;
}

uint64_t parse_unsigned(std::string_view text, std::string_view what) {
    text = trim(text);
    uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw ConfigError(std::string(what) + ": expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return value;
}

// "re", "imi", "re+imi", "re-imi".
Complex parse_complex(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        throw ConfigError("empty amplitude");
    }
    if (text.back() != 'i') {
        return parse_number(text);
    }
    std::string_view body = text.substr(0, text.size() - 1);
    std::size_t cut = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    auto imag_part = [&](std::string_view s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return parse_number(s);
    };
    if (cut == std::string_view::npos) {
        return {0, imag_part(body)};
    }
    return {parse_number(body.substr(0, cut)), imag_part(body.substr(cut))};
}

std::vector<std::pair<std::string_view, std::string_view>> parse_params(std::string_view text, std::string_view what) {
    std::vector<std::pair<std::string_view, std::string_view>> out;
    for (auto item : split(text, ',')) {
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(what) + ": expected key=value, got '" + std::string(item) + "'");
        }
        out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
    return out;
}

}  // namespace

const std::vector<std::string> &Settings::known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto &spec : key_table()) {
            out.emplace_back(spec.key);
        }
        return out;
    }();
    return keys;
}

Settings Settings::parse(std::string_view text, std::string_view source_name) {
    Settings out;
    std::string section;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        line_no++;
        std::string origin = std::string(source_name) + ":" + std::to_string(line_no);
        auto line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(origin + ": unterminated section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(origin + ": expected 'key = value'");
        }
        if (section.empty()) {
            throw ConfigError(origin + ": key outside of any [section]");
        }
        std::string key = section + "." + std::string(trim(line.substr(0, eq)));
        if (out.find(key) != nullptr) {
            throw ConfigError(origin + ": duplicate key '" + key + "' (first set at " + out.find(key)->origin + ")");
        }
        try {
            out.set(key, std::string(trim(line.substr(eq + 1))), origin);
        } catch (const ConfigError &e) {
            throw ConfigError(origin + ": " + e.what());
        }
    }
    return out;
}

Settings Settings::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

void Settings::set(const std::string &key, std::string value, std::string origin) {
    const auto &keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ConfigError("unknown key '" + key + "'");
    }
    entries_[key] = {std::move(value), std::move(origin)};
}

const Settings::Entry *Settings::find(const std::string &key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

double parse_number(std::string_view text) {
    std::string_view whole = text;
    text = trim(text);
    if (text.empty()) {
        throw ConfigError("empty number");
    }
    double sign = 1;
    if (text.front() == '-' || text.front() == '+') {
        sign = text.front() == '-' ? -1 : 1;
        text = trim(text.substr(1));
    }
    // product of factors joined by '*' and '/'
    double value = 1;
    char op = '*';
    while (true) {
        std::size_t pos = text.find_first_of("*/");
        auto factor = trim(text.substr(0, pos));
        double f = factor == "pi" ? std::numbers::pi : parse_plain(factor, whole);
        value = op == '*' ? value * f : value / f;
        if (pos == std::string_view::npos) {
            break;
        }
        op = text[pos];
        text = text.substr(pos + 1);
    }
    if (!std::isfinite(value)) {
        throw ConfigError("number '" + std::string(whole) + "' is not finite");
    }
    return sign * value;
}

std::vector<double> parse_grid(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        throw ConfigError("grid is empty");
    }
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        auto parts = split(text, ':');
        bool open = parts.size() == 4 && parts[3] == "open";
        if (parts.size() != 3 && !open) {
            throw ConfigError("grid '" + std::string(text) + "': expected start:stop:count[:open]");
        }
        double start = parse_number(parts[0]);
        double stop = parse_number(parts[1]);
        std::size_t count = parse_unsigned(parts[2], "grid count");
        double intervals = static_cast<double>(open ? count : count - 1);
        for (std::size_t i = 0; i < count; i++) {
            out.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / intervals);
        }
    } else {
        for (auto item : split(text, ',')) {
            out.push_back(parse_number(item));
        }
    }
    if (out.empty()) {
        throw ConfigError("grid '" + std::string(text) + "' has no points");
    }
    return out;
}

ModelSpec ModelSpec::parse(std::string_view text) {
    text = trim(text);
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("model '" + std::string(text) + "': expected ring:N=..., twoqubit:l1=...,l2=... or file:PATH");
    }
    auto kind = text.substr(0, colon);
    auto rest = text.substr(colon + 1);
    ModelSpec out;
    if (kind == "ring") {
        out.kind = ModelKind::ring;
        auto params = parse_params(rest, "ring model");
        if (params.size() != 1 || params[0].first != "N") {
            throw ConfigError("ring model: expected N=<even size>");
        }
        out.sites = parse_unsigned(params[0].second, "ring size N");
        if (out.sites < 2 || out.sites % 2 != 0) {
            throw ConfigError("ring model: N must be even and at least 2");
        }
        if (out.sites > max_enumeration_dim) {
            throw ConfigError("ring model: N must not exceed " + std::to_string(max_enumeration_dim));
        }
    } else if (kind == "twoqubit") {
        out.kind = ModelKind::two_qubit;
        for (auto [key, value] : parse_params(rest, "two-qubit model")) {
            if (key == "l1") {
                out.lambda1 = parse_number(value);
            } else if (key == "l2") {
                out.lambda2 = parse_number(value);
            } else {
                throw ConfigError("two-qubit model: unknown parameter '" + std::string(key) + "'");
            }
        }
    } else if (kind == "file") {
        out.kind = ModelKind::file;
        out.path = std::string(rest);
        if (out.path.empty()) {
            throw ConfigError("file model: missing path");
        }
    } else {
        throw ConfigError("unknown model kind '" + std::string(kind) + "'");
    }
    return out;
}

ComplexMatrix ModelSpec::hamiltonian() const {
    switch (kind) {
        case ModelKind::ring:
            return ring_hamiltonian(sites).hamiltonian;
        case ModelKind::two_qubit:
            return two_qubit_model(lambda1, lambda2).hamiltonian;
        case ModelKind::file:
            break;
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open Hamiltonian file '" + path + "'");
    }
    std::vector<std::vector<Complex>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        std::vector<Complex> row;
        std::istringstream words{std::string(body)};
        std::string word;
        while (words >> word) {
            try {
                row.push_back(parse_complex(word));
            } catch (const ConfigError &e) {
                throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    for (const auto &row : rows) {
        if (row.size() != rows.size()) {
            throw ConfigError(path + ": Hamiltonian must be square");
        }
    }
    if (rows.empty() || rows.size() > max_enumeration_dim) {
        throw ConfigError(path + ": Hamiltonian dimension must be between 1 and " +
                          std::to_string(max_enumeration_dim));
    }
    std::vector<Complex> flat;
    for (const auto &row : rows) {
        flat.insert(flat.end(), row.begin(), row.end());
    }
    ComplexMatrix h(rows.size(), std::move(flat));
    if (hermiticity_defect(h) > Tolerances{}.hermitian) {
        throw ConfigError(path + ": Hamiltonian is not Hermitian");
    }
    return h;
}

std::optional<MesostatePartition> ModelSpec::default_partition() const {
    switch (kind) {
        case ModelKind::ring:
            return MesostatePartition::parity(sites);
        case ModelKind::two_qubit:
            return two_qubit_model(lambda1, lambda2).probe_partition;
        case ModelKind::file:
            break;
    }
    return std::nullopt;
}

DensityMatrix parse_initial_state(std::string_view text, std::size_t dim) {
    text = trim(text);
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("initial state '" + std::string(text) + "': expected kind:arguments");
    }
    auto kind = text.substr(0, colon);
    auto rest = text.substr(colon + 1);
    try {
        if (kind == "basis") {
            return basis_state(dim, parse_unsigned(rest, "basis index"));
        }
        if (kind == "pure" || kind == "diag") {
            auto items = split(rest, ',');
            if (items.size() > dim) {
                throw ConfigError("initial state lists " + std::to_string(items.size()) + " entries for dimension " +
                                  std::to_string(dim));
            }
            if (kind == "pure") {
                std::vector<Complex> amplitudes(dim);
                std::transform(items.begin(), items.end(), amplitudes.begin(), parse_complex);
                return pure_state(amplitudes);
            }
            std::vector<double> weights(dim);
            std::transform(items.begin(), items.end(), weights.begin(), parse_number);
            return diagonal_state(weights);
        }
        if (kind == "witness") {
            if (trim(rest) == "reference") {
                return reference_preparation(dim);
            }
            auto params = parse_params(rest, "witness preparation");
            if (params.size() != 1 || params[0].first != "theta") {
                throw ConfigError("witness preparation: expected theta=<angle> or reference");
            }
            return theta_preparation(dim, parse_number(params[0].second));
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError("initial state '" + std::string(text) + "': " + e.what());
    }
    throw ConfigError("unknown initial state kind '" + std::string(kind) + "'");
}

std::size_t ModelSpec::dim() const {
    switch (kind) {
        case ModelKind::ring:
            return sites;
        case ModelKind::two_qubit:
            return 4;
        case ModelKind::file:
            break;
    }
    return hamiltonian().dim();
}

ExperimentConfig ExperimentConfig::from_settings(Settings settings) {
    ExperimentConfig out;
    std::map<std::string, std::string> effective;
    for (const auto &spec : key_table()) {
        if (const auto *entry = settings.find(spec.key)) {
            effective[spec.key] = entry->value;
        } else if (spec.fallback != nullptr) {
            effective[spec.key] = spec.fallback;
        }
    }
    auto has = [&](const char *key) {
        return effective.count(key) != 0;
    };
    // Runs `parse` on a value and prefixes any failure with its origin.
    auto with_origin = [&](const char *key, auto parse) {
        try {
            return parse(effective.at(key));
        } catch (const Error &e) {
            const auto *entry = settings.find(key);
            std::string origin = entry ? entry->origin : "default";
            throw ConfigError(origin + ": " + key + ": " + e.what());
        }
    };

    out.model = with_origin("model.spec", [](const std::string &v) { return ModelSpec::parse(v); });
    out.hamiltonian = with_origin("model.spec", [&](const std::string &) { return out.model.hamiltonian(); });
    std::size_t dim = out.hamiltonian.dim();
    if (has("model.partition")) {
        out.partition = with_origin("model.partition", [&](const std::string &v) {
            return MesostatePartition::parse(v, dim);
        });
    } else {
        out.partition = out.model.default_partition();
    }
    out.scheme = with_origin("run.scheme", [](const std::string &v) { return parse_scheme(v); });
    if (has("run.tau")) {
        out.tau = with_origin("run.tau", [](const std::string &v) { return parse_number(v); });
    }
    if (has("run.tau_grid")) {
        out.tau_grid = with_origin("run.tau_grid", [](const std::string &v) { return parse_grid(v); });
    }
    if (has("run.theta_grid")) {
        out.theta_grid = with_origin("run.theta_grid", [](const std::string &v) { return parse_grid(v); });
    }
    out.n = with_origin("run.n", [](const std::string &v) { return parse_unsigned(v, "n"); });
    out.tau_max = with_origin("run.tau_max", [](const std::string &v) {
        double value = parse_number(v);
        if (!(value > 0)) {
            throw ConfigError("must be positive");
        }
        return value;
    });
    out.initial_spec = effective.at("run.initial");
    out.initial = with_origin("run.initial", [&](const std::string &v) { return parse_initial_state(v, dim); });
    out.seed = with_origin("run.seed", [](const std::string &v) { return parse_unsigned(v, "seed"); });
    out.trajectories = with_origin("run.trajectories", [](const std::string &v) {
        return parse_unsigned(v, "trajectories");
    });
    if (has("run.ring_sizes")) {
        out.ring_sizes = with_origin("run.ring_sizes", [](const std::string &v) {
            std::vector<std::size_t> sizes;
            for (auto item : split(v, ',')) {
                std::size_t sites = parse_unsigned(item, "ring size");
                if (sites < 2 || sites % 2 != 0 || sites > max_enumeration_dim) {
                    throw ConfigError("ring sizes must be even, between 2 and " +
                                      std::to_string(max_enumeration_dim));
                }
                sizes.push_back(sites);
            }
            return sizes;
        });
    }
    out.convention = with_origin("run.convention", [](const std::string &v) {
        if (v == "derivation") {
            return PhaseConvention::derivation;
        }
        if (v == "printed") {
            return PhaseConvention::printed;
        }
        throw ConfigError("expected 'derivation' or 'printed'");
    });
    auto positive = [](const std::string &v) {
        double value = parse_number(v);
        if (!(value > 0)) {
            throw ConfigError("tolerance must be positive");
        }
        return value;
    };
    out.tolerances.hermitian = with_origin("tolerances.hermitian", positive);
    double state_tol = with_origin("tolerances.state", positive);
    out.tolerances.state_hermitian = state_tol;
    out.tolerances.state_positivity = state_tol;
    out.tolerances.state_trace = state_tol;
    out.tolerances.zero_branch = with_origin("tolerances.zero_branch", positive);
    out.tolerances.lumpability = with_origin("tolerances.lumpability", positive);
    out.coherence_tol = with_origin("tolerances.coherence", positive);
    out.tolerances.coherence_root = out.coherence_tol;

    out.settings = std::move(settings);
    for (const auto &[key, value] : effective) {
        if (out.settings.find(key) == nullptr) {
            out.settings.set(key, value, "default");
        }
    }
    return out;
}

const MesostatePartition &ExperimentConfig::require_partition() const {
    if (!partition) {
        throw ConfigError("model.partition: required for file-loaded models");
    }
    return *partition;
}

std::vector<double> ExperimentConfig::taus() const {
    if (!tau_grid.empty()) {
        return tau_grid;
    }
    if (tau) {
        return {*tau};
    }
    throw ConfigError("run.tau_grid: no tau grid (or tau) configured");
}

double ExperimentConfig::require_tau() const {
    if (!tau) {
        throw ConfigError("run.tau: required by this subcommand");
    }
    return *tau;
}

std::size_t ExperimentConfig::require_ring() const {
    if (model.kind != ModelKind::ring) {
        throw ConfigError("model.spec: this subcommand needs a ring model");
    }
    return model.sites;
}

std::vector<std::string> ExperimentConfig::echo() const {
    std::vector<std::string> out;
    for (const auto &[key, entry] : settings.entries()) {
        out.push_back(key + " = " + entry.value);
    }
    return out;
}

}  // namespace qlump::cli
