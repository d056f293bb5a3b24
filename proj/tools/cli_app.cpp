// Copyright 2026 The qfi-probe Authors
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

#include "cli_app.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "CLI11.hpp"

#include "qfiprobe/oracle.hpp"
#include "qfiprobe/parallel.hpp"
#include "qfiprobe/partial_ent.hpp"

namespace qfiprobe::cli {

namespace {

/// Invalid command line or configuration file; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<int> d{2};
    double theta_start = 0.1;
    double theta_stop = 0.9;
    double theta_step = 0.1;
    std::vector<std::string> schemes{"O", "E", "B"};
    int n = 1;
    double eta = 0.9;
    std::vector<double> psi;
    int samples = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::int64_t shots = 100000;
    int trials = 400;
};

struct RunInfo {
    std::string command;
    std::string invocation;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, sep)) {
        if (!item.empty()) {
            parts.push_back(item);
        }
    }
    return parts;
}

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

long long parse_int(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const long long value = std::stoll(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return value;
    } catch (const std::exception&) {
        throw ConfigError(what + ": not an integer: '" + text + "'");
    }
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const unsigned long long value = std::stoull(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return value;
    } catch (const std::exception&) {
        throw ConfigError(what + ": not an unsigned integer: '" + text + "'");
    }
}

double parse_real(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return value;
    } catch (const std::exception&) {
        throw ConfigError(what + ": not a number: '" + text + "'");
    }
}

std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::map<std::string, std::string> values;
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config file line " + std::to_string(lineno) +
                              ": expected key=value");
        }
        values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return values;
}

void apply_config_key(Options& opts, const std::string& key, const std::string& value) {
    const std::string what = "config key '" + key + "'";
    if (key == "d") {
        opts.d.clear();
        for (const auto& item : split(value, ',')) {
            opts.d.push_back(static_cast<int>(parse_int(item, what)));
        }
    } else if (key == "theta-start") {
        opts.theta_start = parse_real(value, what);
    } else if (key == "theta-stop") {
        opts.theta_stop = parse_real(value, what);
    } else if (key == "theta-step") {
        opts.theta_step = parse_real(value, what);
    } else if (key == "schemes") {
        opts.schemes = split(value, ',');
    } else if (key == "n") {
        opts.n = static_cast<int>(parse_int(value, what));
    } else if (key == "eta") {
        opts.eta = parse_real(value, what);
    } else if (key == "psi") {
        opts.psi.clear();
        for (const auto& item : split(value, ',')) {
            opts.psi.push_back(parse_real(item, what));
        }
    } else if (key == "samples") {
        opts.samples = static_cast<int>(parse_int(value, what));
    } else if (key == "seed") {
        opts.seed = parse_u64(value, what);
    } else if (key == "out") {
        opts.out = value;
    } else if (key == "shots") {
        opts.shots = parse_int(value, what);
    } else if (key == "trials") {
        opts.trials = static_cast<int>(parse_int(value, what));
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

/// Final settings: per-command defaults, then the environment seed, then the
/// config file, then explicit command-line flags.
Options resolve(const std::string& command, const CLI::App& cmd, const Options& flags,
                const std::map<std::string, std::string>& config) {
    Options opts;
    if (command == "crb") {
        opts.theta_start = 0.3;
        opts.theta_stop = 0.7;
        opts.theta_step = 0.2;
        opts.schemes = {"O", "E"};
    }
    opts.out = command + ".csv";

    if (const char* env = std::getenv("QFI_PROBE_SEED")) {
        opts.seed = parse_u64(env, "QFI_PROBE_SEED");
    }
    for (const auto& [key, value] : config) {
        apply_config_key(opts, key, value);
    }

    if (cmd.count("--d") > 0) opts.d = flags.d;
    if (cmd.count("--theta-start") > 0) opts.theta_start = flags.theta_start;
    if (cmd.count("--theta-stop") > 0) opts.theta_stop = flags.theta_stop;
    if (cmd.count("--theta-step") > 0) opts.theta_step = flags.theta_step;
    if (cmd.count("--schemes") > 0) opts.schemes = flags.schemes;
    if (cmd.count("--n") > 0) opts.n = flags.n;
    if (cmd.count("--eta") > 0) opts.eta = flags.eta;
    if (cmd.count("--psi") > 0) opts.psi = flags.psi;
    if (cmd.count("--samples") > 0) opts.samples = flags.samples;
    if (cmd.count("--seed") > 0) opts.seed = flags.seed;
    if (cmd.count("--out") > 0) opts.out = flags.out;
    if (cmd.count("--shots") > 0) opts.shots = flags.shots;
    if (cmd.count("--trials") > 0) opts.trials = flags.trials;

    std::erase_if(opts.schemes, [](const std::string& name) { return name.empty(); });
    std::sort(opts.schemes.begin(), opts.schemes.end());
    opts.schemes.erase(std::unique(opts.schemes.begin(), opts.schemes.end()),
                       opts.schemes.end());
    std::sort(opts.d.begin(), opts.d.end());
    opts.d.erase(std::unique(opts.d.begin(), opts.d.end()), opts.d.end());
    return opts;
}

void check_dimensions(const Options& opts) {
    if (opts.d.empty()) {
        throw ConfigError("at least one dimension is required");
    }
    for (const int d : opts.d) {
        if (d < 2) {
            throw ConfigError("dimensions must be at least 2");
        }
    }
}

std::vector<double> theta_grid(const Options& opts, double lo, double hi) {
    if (opts.theta_step <= 0.0) {
        throw ConfigError("theta-step must be positive");
    }
    if (opts.theta_start > opts.theta_stop) {
        throw ConfigError("theta-start must not exceed theta-stop");
    }
    if (opts.theta_start < lo || opts.theta_stop > hi) {
        throw ConfigError("theta grid must lie within [" + format_number(lo) + ", " +
                          format_number(hi) + "]");
    }
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double theta = opts.theta_start + k * opts.theta_step;
        if (theta > opts.theta_stop + 1e-12) {
            break;
        }
        grid.push_back(theta);
        if (grid.size() > 100000) {
            throw ConfigError("theta grid has more than 100000 points");
        }
    }
    return grid;
}

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names,
                                  const std::string& command) {
    std::vector<Scheme> schemes;
    for (const auto& name : names) {
        const auto scheme = scheme_from_string(name);
        if (!scheme.has_value()) {
            throw ConfigError("unknown scheme '" + name + "'");
        }
        if (*scheme == Scheme::Partial) {
            throw ConfigError("scheme 'Partial' is not available in '" + command +
                              "'; use the partial command");
        }
        schemes.push_back(*scheme);
    }
    return schemes;
}

SchemeSpec make_spec(Scheme kind, int d, const Options& opts) {
    if (kind == Scheme::Eeta) {
        if (opts.n != 1) {
            throw ConfigError("scheme 'Eeta' supports n=1 only");
        }
        if (opts.eta <= 0.0 || opts.eta > 1.0) {
            throw ConfigError("eta must lie in (0, 1]");
        }
        return SchemeSpec::with_eta(d, opts.eta);
    }
    if (opts.n < 1) {
        throw ConfigError("n must be at least 1");
    }
    return SchemeSpec::make(kind, d, opts.n);
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    for (const auto& line : lines) {
        file << line << '\n';
    }
    if (!file) {
        throw ConfigError("failed writing output file '" + path + "'");
    }
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string joined;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            joined += sep;
        }
        joined += parts[i];
    }
    return joined;
}

std::string format_int_list(const std::vector<int>& values) {
    std::vector<std::string> parts;
    parts.reserve(values.size());
    for (const int v : values) {
        parts.push_back(std::to_string(v));
    }
    return join(parts, ',');
}

std::string format_real_list(const std::vector<double>& values) {
    std::vector<std::string> parts;
    parts.reserve(values.size());
    for (const double v : values) {
        parts.push_back(format_number(v));
    }
    return join(parts, ',');
}

void write_manifest(const Options& opts, const RunInfo& info) {
    std::vector<std::string> lines;
    lines.push_back("# qfi_probe run manifest");
    lines.push_back(std::string("version=") + kVersion);
    lines.push_back("command=" + info.command);
    lines.push_back("invocation=" + info.invocation);
    lines.push_back("seed=" + std::to_string(opts.seed));
    lines.push_back("d=" + format_int_list(opts.d));
    lines.push_back("schemes=" + join(opts.schemes, ','));
    lines.push_back("n=" + std::to_string(opts.n));
    lines.push_back("eta=" + format_number(opts.eta));
    lines.push_back("theta-start=" + format_number(opts.theta_start));
    lines.push_back("theta-stop=" + format_number(opts.theta_stop));
    lines.push_back("theta-step=" + format_number(opts.theta_step));
    lines.push_back("psi=" + format_real_list(opts.psi));
    lines.push_back("samples=" + std::to_string(opts.samples));
    lines.push_back("shots=" + std::to_string(opts.shots));
    lines.push_back("trials=" + std::to_string(opts.trials));
    lines.push_back("out=" + opts.out);
    write_lines(opts.out + ".manifest", lines);
}

int cmd_curves(const Options& opts, const RunInfo& info) {
    check_dimensions(opts);
    const std::vector<double> grid = theta_grid(opts, 0.01, 0.99);
    const std::vector<Scheme> schemes = parse_schemes(opts.schemes, info.command);

    struct Task {
        std::string name;
        SchemeSpec spec;
        double theta;
    };
    std::vector<Task> tasks;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        for (const int d : opts.d) {
            const SchemeSpec spec = make_spec(schemes[s], d, opts);
            for (const double theta : grid) {
                tasks.push_back({opts.schemes[s], spec, theta});
            }
        }
    }

    std::vector<std::string> rows(tasks.size());
    detail::parallel_for(0, static_cast<std::int64_t>(tasks.size()), [&](std::int64_t i) {
        const Task& task = tasks[static_cast<std::size_t>(i)];
        const QfiPoint point = qfi_scheme(task.spec, task.theta);
        const double j_numeric = qfi_numeric(family(task.spec), task.theta);
        const double rel =
            std::abs(point.j_per_shot() - j_numeric) / std::max(std::abs(j_numeric), 1e-300);
        std::string eta_field =
            task.spec.kind == Scheme::Eeta ? format_number(task.spec.eta) : "";
        rows[static_cast<std::size_t>(i)] =
            task.name + "," + std::to_string(task.spec.d) + "," +
            std::to_string(task.spec.n) + "," + eta_field + "," +
            format_number(task.theta) + "," + format_number(point.j_per_use) + "," +
            format_number(point.j_per_shot()) + "," + format_number(j_numeric) + "," +
            format_number(rel);
    });

    std::vector<std::string> lines;
    lines.push_back("scheme,d,n,eta,theta,j_per_use,j_per_shot,j_numeric,rel_err");
    lines.insert(lines.end(), rows.begin(), rows.end());
    write_lines(opts.out, lines);
    write_manifest(opts, info);
    std::cout << "curves: wrote " << rows.size() << " rows to " << opts.out << "\n";
    return 0;
}

int cmd_thresholds(const Options& opts, const RunInfo& info) {
    check_dimensions(opts);
    if (opts.eta <= 0.0 || opts.eta > 1.0) {
        throw ConfigError("eta must lie in (0, 1]");
    }

    std::vector<std::string> lines;
    lines.push_back("kind,d,eta,theta_star");
    for (const int d : opts.d) {
        lines.push_back("B_vs_O," + std::to_string(d) + ",," +
                        format_number(threshold_b_vs_o(d)));
    }
    for (const int d : opts.d) {
        lines.push_back("g_eta," + std::to_string(d) + "," + format_number(opts.eta) +
                        "," + format_number(eta_crossover(opts.eta, d)));
    }
    write_lines(opts.out, lines);
    write_manifest(opts, info);
    std::cout << "thresholds: wrote " << lines.size() - 1 << " rows to " << opts.out
              << "\n";
    return 0;
}

int cmd_partial(const Options& opts, const RunInfo& info) {
    check_dimensions(opts);
    const std::vector<double> grid = theta_grid(opts, 0.01, 0.99);
    if (opts.psi.empty() && opts.samples == 0) {
        throw ConfigError("partial: provide --psi or a positive --samples count");
    }
    if (opts.samples < 0) {
        throw ConfigError("samples must be nonnegative");
    }

    std::vector<SchmidtVector> states;
    if (!opts.psi.empty()) {
        RealVector coeffs(static_cast<Eigen::Index>(opts.psi.size()));
        for (std::size_t i = 0; i < opts.psi.size(); ++i) {
            coeffs(static_cast<Eigen::Index>(i)) = opts.psi[i];
        }
        try {
            states.emplace_back(std::move(coeffs));
        } catch (const Error& e) {
            throw ConfigError(std::string("invalid --psi: ") + e.what());
        }
    }
    SplitMix64 rng(opts.seed);
    for (const int d : opts.d) {
        for (int s = 0; s < opts.samples; ++s) {
            states.push_back(random_schmidt(d, rng));
        }
    }

    struct Task {
        const SchmidtVector* psi;
        double theta;
    };
    std::vector<Task> tasks;
    for (const SchmidtVector& psi : states) {
        for (const double theta : grid) {
            tasks.push_back({&psi, theta});
        }
    }

    std::vector<std::string> rows(tasks.size());
    detail::parallel_for(0, static_cast<std::int64_t>(tasks.size()), [&](std::int64_t i) {
        const Task& task = tasks[static_cast<std::size_t>(i)];
        const SchmidtVector& psi = *task.psi;
        const int d = psi.dim();
        const double j_partial = qfi_partial(psi, task.theta);
        const double j_o = qfi_scheme(SchemeSpec::make(Scheme::O, d), task.theta).j_per_use;
        const double j_e = qfi_scheme(SchemeSpec::make(Scheme::E, d), task.theta).j_per_use;
        const double j_oracle =
            qfi_numeric(family(SchemeSpec::with_psi(psi)), task.theta);
        const bool sandwich_ok = j_partial >= j_o - 1e-9 && j_partial <= j_e + 1e-9;

        std::vector<std::string> coeffs;
        coeffs.reserve(static_cast<std::size_t>(d));
        for (int c = 0; c < d; ++c) {
            coeffs.push_back(format_number(psi[c]));
        }
        rows[static_cast<std::size_t>(i)] =
            join(coeffs, ';') + "," + format_number(task.theta) + "," +
            format_number(j_partial) + "," + format_number(j_o) + "," +
            format_number(j_e) + "," + format_number(j_oracle) + "," +
            (sandwich_ok ? "true" : "false");
    });

    std::vector<std::string> lines;
    lines.push_back("psi,theta,j_partial,j_O,j_E,j_oracle,sandwich_ok");
    lines.insert(lines.end(), rows.begin(), rows.end());
    write_lines(opts.out, lines);
    write_manifest(opts, info);
    std::cout << "partial: wrote " << rows.size() << " rows to " << opts.out << "\n";
    return 0;
}

int cmd_crb(const Options& opts, const RunInfo& info) {
    check_dimensions(opts);
    const std::vector<double> grid = theta_grid(opts, 0.2, 0.8);
    const std::vector<Scheme> schemes = parse_schemes(opts.schemes, info.command);
    if (opts.shots < 1000) {
        throw ConfigError("shots must be at least 1000");
    }
    if (opts.trials < 1) {
        throw ConfigError("trials must be at least 1");
    }

    std::vector<std::string> lines;
    lines.push_back("scheme,d,n,eta,theta,n_shots,n_trials,seed,mse,crb,ratio");
    SplitMix64 seed_seq(opts.seed);
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        for (const int d : opts.d) {
            const SchemeSpec spec = make_spec(schemes[s], d, opts);
            for (const double theta : grid) {
                const std::uint64_t point_seed = seed_seq.next();
                const CrbReport report =
                    crb_experiment(spec, theta, opts.shots, opts.trials, point_seed);
                const std::string eta_field =
                    spec.kind == Scheme::Eeta ? format_number(spec.eta) : "";
                lines.push_back(opts.schemes[s] + "," + std::to_string(d) + "," +
                                std::to_string(spec.n) + "," + eta_field + "," +
                                format_number(theta) + "," +
                                std::to_string(report.n_shots) + "," +
                                std::to_string(report.n_trials) + "," +
                                std::to_string(point_seed) + "," +
                                format_number(report.mse) + "," +
                                format_number(report.crb) + "," +
                                format_number(report.ratio));
            }
        }
    }
    write_lines(opts.out, lines);
    write_manifest(opts, info);
    std::cout << "crb: wrote " << lines.size() - 1 << " rows to " << opts.out << "\n";
    return 0;
}

}  // namespace

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

int run(int argc, char** argv) {
    try {
        CLI::App app{"Fisher information of qudit depolarizing-channel probes"};
        app.set_version_flag("--version", std::string("qfi_probe ") + kVersion);
        app.require_subcommand(0, 1);

        Options flags;
        std::string config_path;
        const auto add_common = [&](CLI::App* cmd) {
            cmd->add_option("--d", flags.d, "Channel dimensions")->delimiter(',');
            cmd->add_option("--theta-start", flags.theta_start, "First grid point");
            cmd->add_option("--theta-stop", flags.theta_stop, "Last grid point");
            cmd->add_option("--theta-step", flags.theta_step, "Grid spacing");
            cmd->add_option("--schemes", flags.schemes,
                            "Comma-separated scheme names (O, E, B, Eeta)")
                ->delimiter(',');
            cmd->add_option("--n", flags.n, "Sequential channel uses");
            cmd->add_option("--eta", flags.eta, "Ancilla depolarization strength");
            cmd->add_option("--psi", flags.psi, "Explicit Schmidt coefficients")
                ->delimiter(',');
            cmd->add_option("--samples", flags.samples, "Random Schmidt vectors per d");
            cmd->add_option("--seed", flags.seed, "Sampling seed");
            cmd->add_option("--out", flags.out, "Output CSV path");
            cmd->add_option("--shots", flags.shots, "Measurements per trial");
            cmd->add_option("--trials", flags.trials, "Independent trials per point");
            cmd->add_option("--config", config_path, "key=value configuration file");
        };

        CLI::App* curves = app.add_subcommand(
            "curves", "Closed-form and score-operator information across a theta grid");
        CLI::App* thresholds = app.add_subcommand(
            "thresholds", "Break-even channel parameters between probing schemes");
        CLI::App* partial = app.add_subcommand(
            "partial", "Information carried by partially entangled probes");
        CLI::App* crb = app.add_subcommand(
            "crb", "Monte Carlo check of the Cramer-Rao bound for optimal measurements");
        for (CLI::App* cmd : {curves, thresholds, partial, crb}) {
            add_common(cmd);
        }

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            std::cerr << "error: config: " << e.what() << "\n";
            return 2;
        }

        CLI::App* active = nullptr;
        for (CLI::App* cmd : {curves, thresholds, partial, crb}) {
            if (cmd->parsed()) {
                active = cmd;
            }
        }
        if (active == nullptr) {
            std::cerr << app.help();
            return 2;
        }

        RunInfo info;
        info.command = active->get_name();
        for (int i = 0; i < argc; ++i) {
            if (i > 0) {
                info.invocation += ' ';
            }
            info.invocation += argv[i];
        }

        std::map<std::string, std::string> config;
        if (!config_path.empty()) {
            config = load_config(config_path);
        }
        const Options opts = resolve(info.command, *active, flags, config);

        if (info.command == "curves") {
            return cmd_curves(opts, info);
        }
        if (info.command == "thresholds") {
            return cmd_thresholds(opts, info);
        }
        if (info.command == "partial") {
            return cmd_partial(opts, info);
        }
        return cmd_crb(opts, info);
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qfiprobe::cli
