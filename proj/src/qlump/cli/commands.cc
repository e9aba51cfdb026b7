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

#include "qlump/cli/commands.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "qlump/models.h"
#include "qlump/parallel.h"
#include "qlump/strobe.h"
#include "qlump/witness.h"

namespace qlump::cli {

namespace {

using json = nlohmann::ordered_json;

// Agreement demanded from every --verify oracle.
constexpr double verify_tol = 1e-10;

class Csv {
   public:
    Csv(std::string_view command, const ExperimentConfig &config, bool verify, std::string_view columns) {
        out_ << "# qlump " << command << "\n";
        for (const auto &line : config.echo()) {
            out_ << "# " << line << "\n";
        }
        out_ << "# verify = " << (verify ? "true" : "false") << "\n";
        columns_ = columns;
    }
    void note(const std::string &text) {
        out_ << "# " << text << "\n";
    }
    template <typename... Cells>
    void row(const Cells &...cells) {
        if (!header_done_) {
            out_ << columns_ << "\n";
            header_done_ = true;
        }
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << "\n";
    }
    std::string str() {
        if (!header_done_) {
            out_ << columns_ << "\n";
            header_done_ = true;
        }
        return out_.str();
    }

   private:
    static std::string cell(double v) {
        return format_double(v);
    }
    static std::string cell(std::size_t v) {
        return std::to_string(v);
    }
    static std::string cell(int v) {
        return std::to_string(v);
    }
    static std::string cell(const std::string &v) {
        return v;
    }
    std::ostringstream out_;
    std::string columns_;
    bool header_done_ = false;
};

// Collects oracle disagreements and throws them together.
class VerifyReport {
   public:
    void expect_close(const std::string &what, double got, double oracle, double tol = verify_tol) {
        checks_++;
        if (!(std::abs(got - oracle) <= tol)) {
            lines_.push_back(what + ": got " + format_double(got) + ", oracle " + format_double(oracle) +
                             ", |diff| " + format_double(std::abs(got - oracle)) + " > " + format_double(tol));
        }
    }
    void expect(const std::string &what, bool ok) {
        checks_++;
        if (!ok) {
            lines_.push_back(what);
        }
    }
    void merge(const VerifyReport &other) {
        checks_ += other.checks_;
        lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end());
    }
    void finish() const {
        if (lines_.empty()) {
            return;
        }
        std::string text =
            "verification failed (" + std::to_string(lines_.size()) + " of " + std::to_string(checks_) + " checks):";
        for (const auto &line : lines_) {
            text += "\n  " + line;
        }
        throw VerifyMismatch(text);
    }

   private:
    std::size_t checks_ = 0;
    std::vector<std::string> lines_;
};

json config_json(const ExperimentConfig &config, bool verify) {
    json out = json::object();
    for (const auto &[key, entry] : config.settings.entries()) {
        out[key] = entry.value;
    }
    out["verify"] = verify;
    return out;
}

std::string dump(const json &doc) {
    return doc.dump(2) + "\n";
}

std::size_t require_lumpable_ring(const ExperimentConfig &config) {
    std::size_t sites = config.require_ring();
    if (sites < 4) {
        throw ConfigError("model.spec: this subcommand needs a ring with N >= 4");
    }
    return sites;
}

const DensityMatrix &require_initial(const ExperimentConfig &config) {
    if (!config.initial) {
        throw ConfigError("run.initial: no initial state configured");
    }
    return *config.initial;
}

// Brute-force coherence coefficient from propagator entries:
// c_{y - z} = 2N sum_{x in A} U(x, y) conj(U(x, z)) for odd y, z.
Complex brute_coefficient(const ComplexMatrix &u, std::size_t sites, int d) {
    std::size_t z = 1;
    std::size_t y = (z + static_cast<std::size_t>(d)) % sites;
    Complex acc = 0;
    for (std::size_t x = 0; x < sites; x += 2) {
        acc += u(x, y) * std::conj(u(x, z));
    }
    return 2.0 * static_cast<double>(sites) * acc;
}

// Lumped A -> B probability from the brute-force transition matrix.
double brute_tab(std::size_t sites, double tau, VerifyReport &report, const std::string &where) {
    auto model = ring_hamiltonian(sites);
    auto lump = check_lumpability(transition_matrix(model.hamiltonian, tau), model.parity_partition);
    report.expect(where + ": ring is not lumpable (violation " + format_double(lump.max_violation) + ")", lump.lumpable);
    if (!lump.lumped) {
        return std::nan("");
    }
    return (*lump.lumped)(model.parity_partition.index_of("B"), model.parity_partition.index_of("A"));
}

// Every record of steps + 1 outcomes over `blocks` symbols.
std::vector<OutcomeSequence> all_records(std::size_t blocks, std::size_t steps) {
    std::vector<OutcomeSequence> out;
    OutcomeSequence seq{std::vector<std::size_t>(steps + 1, 0)};
    while (true) {
        out.push_back(seq);
        std::size_t k = seq.items.size();
        while (k > 0 && ++seq.items[k - 1] == blocks) {
            seq.items[k - 1] = 0;
            k--;
        }
        if (k == 0) {
            return out;
        }
    }
}

// Marginal of the last outcome summed record by record (no shared prefixes).
Marginal brute_marginal(
    const DensityMatrix &rho0, const StroboscopicProtocol &protocol, std::size_t epoch, const MesostatePartition &part) {
    Marginal out;
    for (const auto &block : part.blocks()) {
        out[block.label] = 0;
    }
    for (const auto &seq : all_records(part.size(), epoch)) {
        out[part.block(seq.items.back()).label] += joint_quantum(rho0, protocol, seq, part);
    }
    return out;
}

std::string json_number_list(const std::vector<double> &values) {
    std::string out;
    for (double v : values) {
        out += (out.empty() ? "" : ", ") + format_double(v);
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = {
        "tab-sweep", "coherence-sweep", "witness-grid", "magic", "markov-check", "sample"};
    return names;
}

std::string cmd_tab_sweep(const ExperimentConfig &config, bool verify) {
    std::vector<std::size_t> sizes = config.ring_sizes;
    if (sizes.empty()) {
        sizes.push_back(config.require_ring());
    }
    auto taus = config.taus();

    std::vector<double> values(sizes.size() * taus.size());
    parallel_for(values.size(), [&](std::size_t cell) {
        std::size_t sites = sizes[cell / taus.size()];
        double tau = taus[cell % taus.size()];
        if (sites == 2) {
            values[cell] = transition_matrix(ring_hamiltonian(2).hamiltonian, tau)(1, 0);
        } else {
            values[cell] = lumped_transition_ab(sites, tau);
        }
    });

    if (verify) {
        std::vector<VerifyReport> reports(values.size());
        parallel_for(values.size(), [&](std::size_t cell) {
            std::size_t sites = sizes[cell / taus.size()];
            double tau = taus[cell % taus.size()];
            std::string where = "N=" + std::to_string(sites) + " tau=" + format_double(tau);
            double oracle = sites == 2 ? std::pow(std::sin(2 * tau), 2) : brute_tab(sites, tau, reports[cell], where);
            reports[cell].expect_close(where, values[cell], oracle);
        });
        VerifyReport all;
        for (const auto &r : reports) {
            all.merge(r);
        }
        all.finish();
    }

    Csv csv("tab-sweep", config, verify, "tau,N,tab");
    if (std::find(sizes.begin(), sizes.end(), 2) != sizes.end()) {
        csv.note("note: N = 2 has single-site blocks; its tab column is the site-to-site transition probability "
                 "|<1|U(tau)|0>|^2");
    }
    for (std::size_t cell = 0; cell < values.size(); cell++) {
        csv.row(taus[cell % taus.size()], sizes[cell / taus.size()], values[cell]);
    }
    return csv.str();
}

std::string cmd_coherence_sweep(const ExperimentConfig &config, bool verify) {
    std::size_t sites = require_lumpable_ring(config);
    auto taus = config.taus();

    std::vector<std::map<int, Complex>> coefficients(taus.size());
    parallel_for(taus.size(), [&](std::size_t i) {
        coefficients[i] = coherence_coefficients(sites, taus[i], config.convention);
    });

    if (verify) {
        VerifyReport report;
        auto ring = ring_hamiltonian(sites);
        for (std::size_t i = 0; i < taus.size(); i++) {
            auto u = propagator(ring.hamiltonian, taus[i]);
            for (const auto &[d, value] : coefficients[i]) {
                Complex oracle;
                // The printed phase convention doubles the site difference.
                int shift = config.convention == PhaseConvention::derivation ? d : (2 * d) % static_cast<int>(sites);
                if (shift == 0) {
                    double tab = brute_tab(sites, taus[i], report, "tau=" + format_double(taus[i]));
                    oracle = 2.0 * static_cast<double>(sites) * tab;
                } else {
                    oracle = brute_coefficient(u, sites, shift);
                }
                std::string where = "tau=" + format_double(taus[i]) + " d=" + std::to_string(d);
                report.expect_close(where + " re", value.real(), oracle.real());
                report.expect_close(where + " im", value.imag(), oracle.imag());
            }
        }
        report.finish();
    }

    Csv csv("coherence-sweep", config, verify, "tau,d,re,im,abs");
    csv.note("root tolerance = " + format_double(config.coherence_tol));
    for (std::size_t i = 0; i < taus.size(); i++) {
        double worst = 0;
        for (const auto &[d, value] : coefficients[i]) {
            worst = std::max(worst, std::abs(value));
        }
        if (worst < config.coherence_tol) {
            csv.note("root: tau = " + format_double(taus[i]) + " (max abs = " + format_double(worst) + ")");
        }
    }
    double lo = *std::min_element(taus.begin(), taus.end());
    double hi = *std::max_element(taus.begin(), taus.end());
    if (config.convention == PhaseConvention::derivation && hi > 0) {
        std::vector<double> inside;
        for (double root : quantum_magic_times(sites, hi)) {
            if (root >= lo) {
                inside.push_back(root);
            }
        }
        csv.note("exact roots in [" + format_double(lo) + ", " + format_double(hi) + "]: " + json_number_list(inside));
    }
    for (std::size_t i = 0; i < taus.size(); i++) {
        for (const auto &[d, value] : coefficients[i]) {
            csv.row(taus[i], d, value.real(), value.imag(), std::abs(value));
        }
    }
    return csv.str();
}

std::string cmd_witness_grid(const ExperimentConfig &config, bool verify) {
    const auto &part = config.require_partition();
    std::size_t dim = config.hamiltonian.dim();
    if (dim < 5) {
        throw ConfigError("model.spec: the witness preparations need at least 5 basis states");
    }
    if (config.theta_grid.empty()) {
        throw ConfigError("run.theta_grid: required by witness-grid");
    }
    if (config.n == 0) {
        throw ConfigError("run.n: the witness index starts at 1");
    }
    auto taus = config.taus();
    check_enumeration_caps(dim, config.n, part.size());
    auto cells = scan_theta_tau(config.hamiltonian, part, config.theta_grid, taus, config.n, config.tolerances);

    if (verify) {
        std::vector<VerifyReport> reports(cells.size());
        auto sigma0 = reference_preparation(dim);
        parallel_for(cells.size(), [&](std::size_t cell) {
            double theta = config.theta_grid[cell / taus.size()];
            double tau = taus[cell % taus.size()];
            StroboscopicProtocol protocol(config.hamiltonian, tau, config.tolerances);
            auto rho0 = theta_preparation(dim, theta);
            double d_n = kolmogorov_distance(
                brute_marginal(rho0, protocol, config.n - 1, part), brute_marginal(sigma0, protocol, config.n - 1, part));
            double d_next = kolmogorov_distance(
                brute_marginal(rho0, protocol, config.n, part), brute_marginal(sigma0, protocol, config.n, part));
            std::string where = "theta=" + format_double(theta) + " tau=" + format_double(tau);
            reports[cell].expect_close(where + " D1", cells[cell].d_n, d_n);
            reports[cell].expect_close(where + " D2", cells[cell].d_next, d_next);
        });
        VerifyReport all;
        for (const auto &r : reports) {
            all.merge(r);
        }
        all.finish();
    }

    Csv csv("witness-grid", config, verify, "theta,tau,D1,D2,delta");
    csv.note("D1 = D_n and D2 = D_{n+1} for n = " + std::to_string(config.n) +
             "; D_m compares outcome marginals at epoch m - 1");
    csv.note("rows are theta-major");
    for (std::size_t cell = 0; cell < cells.size(); cell++) {
        csv.row(config.theta_grid[cell / taus.size()], taus[cell % taus.size()], cells[cell].d_n, cells[cell].d_next,
                cells[cell].delta);
    }
    return csv.str();
}

std::string cmd_magic(const ExperimentConfig &config, bool verify) {
    std::size_t sites = require_lumpable_ring(config);
    auto tau_m = lumped_magic_times(sites, config.tau_max);
    auto tau_s = quantum_magic_times(sites, config.tau_max);
    std::vector<double> res_m;
    std::vector<double> res_s;
    for (double tau : tau_m) {
        res_m.push_back(std::abs(lumped_transition_ab(sites, tau)));
    }
    for (double tau : tau_s) {
        res_s.push_back(coherence_residual(sites, tau));
    }

    if (verify) {
        VerifyReport report;
        auto ring = ring_hamiltonian(sites);
        for (double tau : tau_m) {
            std::string where = "tau_M=" + format_double(tau);
            double tab = brute_tab(sites, tau, report, where);
            report.expect_close(where + " lumped A->B", tab, 0);
            bool listed = std::any_of(tau_s.begin(), tau_s.end(), [&](double s) { return std::abs(s - tau) < 1e-6; });
            report.expect(where + " is missing from tau_S", listed);
        }
        for (double tau : tau_s) {
            auto u = propagator(ring.hamiltonian, tau);
            for (int d = 2; d <= static_cast<int>(sites) - 2; d += 2) {
                report.expect_close(
                    "tau_S=" + format_double(tau) + " |c_" + std::to_string(d) + "|",
                    std::abs(brute_coefficient(u, sites, d)), 0, config.coherence_tol);
            }
        }
        report.finish();
    }

    json doc;
    doc["N"] = sites;
    doc["tau_max"] = config.tau_max;
    doc["tau_M"] = tau_m;
    doc["tau_S"] = tau_s;
    doc["residuals"] = {{"tau_M", res_m}, {"tau_S", res_s}};
    doc["config"] = config_json(config, verify);
    return dump(doc);
}

std::string cmd_markov_check(const ExperimentConfig &config, bool verify) {
    const auto &part = config.require_partition();
    const auto &rho0 = require_initial(config);
    double tau = config.require_tau();
    std::size_t steps = config.n;
    if (steps == 0) {
        throw ConfigError("run.n: markov-check needs n >= 1");
    }
    check_enumeration_caps(config.hamiltonian.dim(), steps, part.size());
    StroboscopicProtocol protocol(config.hamiltonian, tau, config.tolerances);
    auto report = check_lumpability(transition_matrix(protocol), part, config.tolerances.lumpability);

    std::vector<double> max_q(steps, 0);
    std::vector<VerifyReport> checks(steps);
    parallel_for(steps, [&](std::size_t i) {
        std::size_t m = i + 1;
        auto quantum = joint_distribution(rho0, protocol, part, m, Scheme::quantum);
        auto classical = joint_distribution(rho0, protocol, part, m, Scheme::classical);
        for (const auto &[seq, p] : quantum.table) {
            double q = p - classical.at(seq);
            max_q[i] = std::max(max_q[i], std::abs(q));
            if (verify) {
                Complex pairs = coherence_path_pair_sum(rho0, protocol, seq, part);
                std::string where = "n=" + std::to_string(m) + " record " + seq.str(part);
                checks[i].expect_close(where + " Q by path pairs", pairs.real(), q);
                checks[i].expect_close(where + " Q imaginary part", pairs.imag(), 0);
            }
        }
    });
    if (verify) {
        VerifyReport all;
        for (const auto &c : checks) {
            all.merge(c);
        }
        all.finish();
    }

    double overall = *std::max_element(max_q.begin(), max_q.end());
    std::string classification = !report.lumpable                 ? "classical-memory"
                                 : overall > config.coherence_tol ? "purely-quantum-memory"
                                                                   : "markov";
    json doc;
    json blocks = json::array();
    for (const auto &block : part.blocks()) {
        blocks.push_back(block.label);
    }
    json lump;
    lump["lumpable"] = report.lumpable;
    lump["max_violation"] = report.max_violation;
    lump["tolerance"] = config.tolerances.lumpability;
    lump["blocks"] = blocks;
    if (report.lumped) {
        json rows = json::array();
        for (std::size_t to = 0; to < part.size(); to++) {
            json row = json::array();
            for (std::size_t from = 0; from < part.size(); from++) {
                row.push_back((*report.lumped)(to, from));
            }
            rows.push_back(row);
        }
        lump["lumped_matrix"] = rows;
    } else {
        lump["lumped_matrix"] = nullptr;
    }
    if (report.witness) {
        const auto &w = *report.witness;
        lump["witness"] = {
            {"destination_block", part.block(w.destination_block).label},
            {"source_block", part.block(w.source_block).label},
            {"source", w.source},
            {"other_source", w.other_source},
        };
    } else {
        lump["witness"] = nullptr;
    }
    doc["lumpability"] = lump;
    json coherence = json::array();
    for (std::size_t i = 0; i < steps; i++) {
        coherence.push_back({{"n", i + 1}, {"max_abs_q", max_q[i]}});
    }
    doc["coherence"] = {{"per_n", coherence}, {"max_abs_q", overall}, {"tolerance", config.coherence_tol}};
    doc["classification"] = classification;
    doc["scope"] = "up to n = " + std::to_string(steps);
    doc["config"] = config_json(config, verify);
    return dump(doc);
}

std::string cmd_sample(const ExperimentConfig &config, bool verify) {
    const auto &part = config.require_partition();
    const auto &rho0 = require_initial(config);
    double tau = config.require_tau();
    if (config.trajectories == 0) {
        throw ConfigError("run.trajectories: must be at least 1");
    }
    check_enumeration_caps(config.hamiltonian.dim(), config.n);
    StroboscopicProtocol protocol(config.hamiltonian, tau, config.tolerances);
    auto records = sample_trajectories(rho0, protocol, config.n, config.scheme, part, config.seed, config.trajectories);
    auto labels_of = config.scheme == Scheme::ideal ? MesostatePartition::singletons(config.hamiltonian.dim()) : part;

    if (verify) {
        // Frequencies must sit within five standard errors of the exact law.
        auto exact = joint_distribution(rho0, protocol, part, config.n, config.scheme);
        std::map<OutcomeSequence, std::size_t> counts;
        for (const auto &r : records) {
            counts[r]++;
        }
        VerifyReport report;
        double total = static_cast<double>(records.size());
        for (const auto &[seq, p] : exact.table) {
            double freq = static_cast<double>(counts.count(seq) ? counts[seq] : 0) / total;
            double se = std::sqrt(std::max(p * (1 - p), 0.0) / total);
            report.expect_close("record " + seq.str(labels_of) + " frequency", freq, p, 5 * se + 1e-12);
        }
        report.finish();
    }

    Csv csv("sample", config, verify, "trajectory_id,step,label");
    for (std::size_t j = 0; j < records.size(); j++) {
        for (std::size_t step = 0; step < records[j].items.size(); step++) {
            csv.row(j, step, labels_of.block(records[j].items[step]).label);
        }
    }
    return csv.str();
}

std::string run_command(std::string_view name, const ExperimentConfig &config, bool verify) {
    using Fn = std::string (*)(const ExperimentConfig &, bool);
    static const std::map<std::string, Fn, std::less<>> table = {
        {"tab-sweep", cmd_tab_sweep},       {"coherence-sweep", cmd_coherence_sweep},
        {"witness-grid", cmd_witness_grid}, {"magic", cmd_magic},
        {"markov-check", cmd_markov_check}, {"sample", cmd_sample},
    };
    auto it = table.find(name);
    if (it == table.end()) {
        throw ConfigError("unknown subcommand '" + std::string(name) + "'");
    }
    return it->second(config, verify);
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Stroboscopic lumping experiments: sweeps, magic times, Markov checks and sampling."};
    app.require_subcommand(1, 1);

    struct Overrides {
        std::string config_path;
        std::string out_path;
        bool verify = false;
        std::map<std::string, std::string> values;
    };
    Overrides opts;
    // flag name, settings key
    const std::vector<std::pair<std::string, std::string>> flags = {
        {"--model", "model.spec"},           {"--partition", "model.partition"},
        {"--scheme", "run.scheme"},          {"--tau", "run.tau"},
        {"--tau-grid", "run.tau_grid"},      {"--theta-grid", "run.theta_grid"},
        {"--n", "run.n"},                    {"--tau-max", "run.tau_max"},
        {"--initial", "run.initial"},        {"--seed", "run.seed"},
        {"--trajectories", "run.trajectories"}, {"--ring-sizes", "run.ring_sizes"},
        {"--convention", "run.convention"},
    };
    std::map<std::string, std::string> raw;
    for (const auto &name : command_names()) {
        auto *sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "Config file (sectioned key = value)");
        sub->add_option("--out", opts.out_path, "Output file; '-' or absent for stdout");
        sub->add_flag("--verify", opts.verify, "Recompute closed forms with brute-force oracles");
        for (const auto &[flag, key] : flags) {
            sub->add_option(flag, raw[flag], "Overrides " + key);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return exit_config;
    }
    std::string command = app.get_subcommands().front()->get_name();
    const auto *sub = app.get_subcommands().front();

    try {
        Settings settings = opts.config_path.empty() ? Settings{} : Settings::load(opts.config_path);
        for (const auto &[flag, key] : flags) {
            if (sub->count(flag) > 0) {
                settings.set(key, raw[flag], flag);
            }
        }
        auto config = ExperimentConfig::from_settings(std::move(settings));
        std::string text = run_command(command, config, opts.verify);
        if (opts.out_path.empty() || opts.out_path == "-") {
            out << text;
        } else {
            std::ofstream file(opts.out_path, std::ios::binary);
            if (!file || !(file << text) || !file.flush()) {
                err << "qlump: cannot write '" << opts.out_path << "'\n";
                return exit_failure;
            }
        }
        return exit_ok;
    } catch (const ConfigError &e) {
        err << "qlump " << command << ": config error: " << e.what() << "\n";
        return exit_config;
    } catch (const VerifyMismatch &e) {
        err << "qlump " << command << ": " << e.what() << "\n";
        return exit_verify;
    } catch (const CapExceeded &e) {
        err << "qlump " << command << ": " << e.what() << "\n";
        return exit_cap;
    } catch (const std::exception &e) {
        err << "qlump " << command << ": " << e.what() << "\n";
        return exit_failure;
    }
}

}  // namespace qlump::cli
