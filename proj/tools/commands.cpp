// Copyright 2026 The entdepth Authors
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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "entdepth/analysis.hpp"
#include "entdepth/circuit.hpp"
#include "entdepth/config.hpp"
#include "entdepth/oracle_check.hpp"
#include "entdepth/records_io.hpp"

#ifndef ENTDEPTH_VERSION
#define ENTDEPTH_VERSION "unknown"
#endif

namespace entdepth::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string join_args(const std::vector<std::string> &args) {
    std::string out = "entdepth";
    for (const std::string &a : args) {
        out += ' ';
        out += a;
    }
    return out;
}

template <typename Writer>
void write_file(const fs::path &path, Writer writer) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    writer(f);
    f.flush();
    if (!f) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

// Forwards records to a collecting sink and reports coarse progress.
template <typename Record>
class ProgressSink final : public RecordSink<Record> {
   public:
    ProgressSink(std::ostream &err, std::string label, std::size_t total)
        : err_(err), label_(std::move(label)), total_(total), step_(std::max<std::size_t>(1, total / 10)) {}

    void append(const Record &record) override {
        records_.append(record);
        const std::size_t n = ++count_;
        if (n % step_ == 0 || n == total_) {
            std::lock_guard lock(mutex_);
            err_ << "[" << label_ << "] " << n << "/" << total_ << " records\n" << std::flush;
        }
    }

    std::vector<Record> sorted() const { return records_.sorted(); }

   private:
    CollectingSink<Record> records_;
    std::ostream &err_;
    std::string label_;
    std::size_t total_;
    std::size_t step_;
    std::atomic<std::size_t> count_{0};
    std::mutex mutex_;
};

struct ScanFlags {
    std::string config;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string out;
    CLI::Option *seed_opt = nullptr;
    CLI::Option *threads_opt = nullptr;
};

void add_scan_flags(CLI::App &cmd, ScanFlags &flags) {
    cmd.add_option("--config", flags.config, "Scan configuration (key = value); a manifest also works")
        ->check(CLI::ExistingFile);
    flags.seed_opt = cmd.add_option("--seed", flags.seed, "Override master_seed");
    flags.threads_opt = cmd.add_option("--threads", flags.threads, "Worker threads (0 = all cores)");
    cmd.add_option("--out", flags.out, "Output directory (default: $ENTDEPTH_OUT or .)");
}

ScanConfig resolve_config(const ScanFlags &flags) {
    ScanConfig config = flags.config.empty() ? ScanConfig::full_defaults() : load_scan_config(flags.config);
    if (flags.seed_opt->count() > 0) {
        config.ensemble.master_seed = flags.seed;
    }
    if (flags.threads_opt->count() > 0) {
        config.threads = flags.threads;
    }
    config.ensemble.validate();
    return config;
}

fs::path resolve_out_dir(const std::string &out) {
    fs::path dir = out.empty() ? fs::path(default_output_dir()) : fs::path(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    return dir;
}

void write_manifest(const fs::path &path, const ScanConfig &config, const std::string &command,
                    const std::string &started, const std::string &finished, const fs::path &output) {
    write_file(path, [&](std::ostream &f) {
        f << "# entdepth run manifest; pass back with --config to reproduce\n"
          << to_config_text(config) << "tool_version = " << ENTDEPTH_VERSION << '\n'
          << "command = " << command << '\n'
          << "started = " << started << '\n';
        if (!finished.empty()) {
            f << "finished = " << finished << '\n';
        }
        f << "output = " << output.string() << '\n';
    });
}

void report_summary(std::ostream &err, const std::string &label, const EnsembleSummary &s) {
    err << "[" << label << "] " << s.realizations << " realizations, " << s.structure_builds << " structure builds, "
        << s.builds_with_escalation << " with w>=3 merges, " << s.builds_with_factorization
        << " finished by exact factorization\n";
}

template <typename Record, typename Run, typename Write>
int run_scan(const std::string &label, const std::string &csv_name, const ScanFlags &flags,
             const std::vector<std::string> &args, std::size_t expected_records, const ScanConfig &config, Run run,
             Write write, std::ostream &out, std::ostream &err) {
    const fs::path dir = resolve_out_dir(flags.out);
    const fs::path csv = dir / csv_name;
    const fs::path manifest = dir / (label + "_manifest.cfg");
    const std::string started = utc_now();
    write_manifest(manifest, config, join_args(args), started, "", csv);

    ProgressSink<Record> sink(err, label, expected_records);
    EnsembleSummary summary;
    try {
        summary = run(sink);
    } catch (const EnsembleAborted &e) {
        err << "[" << label << "] " << e.what() << "\n[" << label << "] partial manifest left at " << manifest.string()
            << '\n';
        return kFailure;
    }
    const std::vector<Record> records = sink.sorted();
    write_file(csv, [&](std::ostream &f) { write(f, records); });
    write_manifest(manifest, config, join_args(args), started, utc_now(), csv);
    report_summary(err, label, summary);
    out << csv.string() << '\n';
    return kOk;
}

std::size_t count_depth_records(const EnsembleSpec &spec) {
    return spec.p_values.size() * spec.L_values.size() * spec.n_realizations;
}

std::size_t count_boxcount_records(const EnsembleSpec &spec, const std::vector<std::size_t> &sizes) {
    std::size_t per = 0;
    for (std::size_t L : spec.L_values) {
        per += static_cast<std::size_t>(std::count_if(sizes.begin(), sizes.end(), [L](std::size_t b) { return b <= L; }));
    }
    return spec.p_values.size() * spec.n_realizations * per;
}

// ---------------------------------------------------------------------------

int cmd_fit(const std::string &depth_path, const std::string &box_path, const std::string &out_dir, BoxRange range,
            std::ostream &out, std::ostream &err) {
    if (depth_path.empty() && box_path.empty()) {
        throw UsageError("fit needs --depth and/or --boxcount");
    }
    auto open = [](const std::string &path) {
        std::ifstream f(path);
        if (!f) {
            throw std::runtime_error("cannot open '" + path + "'");
        }
        return f;
    };
    std::vector<DepthRecord> depth;
    std::vector<BoxCountRecord> boxes;
    if (!depth_path.empty()) {
        std::ifstream f = open(depth_path);
        depth = read_depth_csv(f);
    }
    if (!box_path.empty()) {
        std::ifstream f = open(box_path);
        boxes = read_boxcount_csv(f);
    }

    std::map<double, std::vector<DepthRecord>> depth_by_p;
    for (const DepthRecord &r : depth) {
        depth_by_p[r.p].push_back(r);
    }
    std::map<double, std::vector<BoxCountRecord>> boxes_by_p;
    for (const BoxCountRecord &r : boxes) {
        boxes_by_p[r.p].push_back(r);
    }
    std::set<double> ps;
    for (const auto &[p, recs] : depth_by_p) {
        ps.insert(p);
    }
    for (const auto &[p, recs] : boxes_by_p) {
        ps.insert(p);
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<FitRow> rows;
    for (double p : ps) {
        FitRow row{p, nan, nan, nan, nan, 0, 0};
        if (auto it = depth_by_p.find(p); it != depth_by_p.end()) {
            const FitResult g = fit_gamma(it->second);
            row.gamma = g.slope;
            row.gamma_err = g.slope_err;
            row.n_L_points = g.n_points;
        }
        if (auto it = boxes_by_p.find(p); it != boxes_by_p.end()) {
            // Box counting is a single-size measurement; use the largest L.
            std::size_t largest = 0;
            for (const BoxCountRecord &r : it->second) {
                largest = std::max(largest, r.L);
            }
            std::vector<BoxCountRecord> at_size;
            std::copy_if(it->second.begin(), it->second.end(), std::back_inserter(at_size),
                         [largest](const BoxCountRecord &r) { return r.L == largest; });
            const FitResult d = fit_fractal_dim(at_size, range);
            row.d = -d.slope;
            row.d_err = d.slope_err;
            row.n_b_points = d.n_points;
        }
        rows.push_back(row);
    }

    const fs::path dir = resolve_out_dir(out_dir);
    const fs::path fits = dir / "fits.csv";
    write_file(fits, [&](std::ostream &f) { write_fits_csv(f, rows); });
    out << render_fit_table(rows);
    err << "[fit] wrote " << fits.string() << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------

struct SnapshotFlags {
    double p = 0.0;
    std::size_t L = 0;
    std::uint64_t seed = 0;
    std::size_t steps = 0;
    bool periodic = false;
    std::vector<std::size_t> box_sizes = {1, 2, 4};
    std::string state_path;
    std::string out;
    std::string structure_path;
    std::string tableau_path;
};

int cmd_snapshot(const SnapshotFlags &flags, std::ostream &out, std::ostream &err) {
    StabilizerTableau state = StabilizerTableau::product_state(1);
    Snapshot snapshot;
    snapshot.p = flags.p;
    snapshot.seed = flags.seed;
    if (!flags.state_path.empty()) {
        std::ifstream f(flags.state_path);
        if (!f) {
            throw std::runtime_error("cannot open '" + flags.state_path + "'");
        }
        std::stringstream text;
        text << f.rdbuf();
        state = StabilizerTableau::from_text(text.str());
    } else {
        if (flags.L == 0) {
            throw UsageError("snapshot needs --L (or --state)");
        }
        state = run_realization({flags.L, flags.p, flags.steps, flags.seed, flags.periodic});
    }
    snapshot.L = state.n_qubits();

    std::ostringstream dumps;
    for (std::size_t b : flags.box_sizes) {
        if (b == 0 || b > snapshot.L) {
            throw UsageError("box size " + std::to_string(b) + " outside 1.." + std::to_string(snapshot.L));
        }
        const EntanglementStructure structure = build_structure(state, coarse_grain(snapshot.L, b));
        const DepthReport report = depth_report(structure);
        SnapshotBitmap bitmap{b, std::vector<bool>(snapshot.L, false)};
        for (Qubit q : report.largest_cluster) {
            bitmap.membership[q] = true;
        }
        snapshot.bitmaps.push_back(std::move(bitmap));
        dumps << "# b=" << b << " depth=" << report.depth_qubits << '\n' << dump_structure(structure);
    }

    if (flags.out.empty()) {
        write_snapshot(out, snapshot);
    } else {
        write_file(flags.out, [&](std::ostream &f) { write_snapshot(f, snapshot); });
        err << "[snapshot] wrote " << flags.out << '\n';
    }
    if (!flags.structure_path.empty()) {
        write_file(flags.structure_path, [&](std::ostream &f) { f << dumps.str(); });
    }
    if (!flags.tableau_path.empty()) {
        write_file(flags.tableau_path, [&](std::ostream &f) { f << state.to_text(); });
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct OracleFlags {
    std::size_t L = 4;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::vector<double> p_values = {0.0, 0.2, 0.5, 1.0};
    std::size_t steps = 0;
    int entropy_offset = 0;
    bool skip_structures = false;
};

int cmd_oracle_check(const OracleFlags &flags, std::ostream &out, std::ostream &err) {
    if (flags.L < 2 || flags.L > 10) {
        throw UsageError("oracle-check supports 2 <= L <= 10");
    }
    std::size_t passed = 0, failed = 0, subsets = 0;
    for (std::size_t pi = 0; pi < flags.p_values.size(); ++pi) {
        const double p = flags.p_values[pi];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw UsageError("measurement probabilities must lie in [0, 1]");
        }
        for (std::size_t t = 0; t < flags.trials; ++t) {
            CoupledCheckOptions options;
            options.n_qubits = flags.L;
            options.p = p;
            options.steps = flags.steps;
            options.seed = realization_seed(flags.seed, pi, flags.L, t);
            options.compare_structures = !flags.skip_structures;
            options.entropy_offset = flags.entropy_offset;
            const CoupledCheckResult r = run_coupled_check(options);
            subsets += r.subsets_compared;
            if (r.passed) {
                ++passed;
            } else {
                ++failed;
                err << "[oracle-check] mismatch: " << r.failure << '\n';
            }
        }
    }
    out << "oracle-check L=" << flags.L << " trials=" << flags.trials << ": " << passed << " passed, " << failed
        << " failed, " << subsets << " subset entropies compared\n";
    return failed == 0 ? kOk : kFailure;
}

}  // namespace

std::string default_output_dir() {
    const char *env = std::getenv("ENTDEPTH_OUT");
    return (env != nullptr && *env != '\0') ? std::string(env) : std::string(".");
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Entanglement depth and fractal structure of monitored random Clifford circuits", "entdepth"};
    app.set_version_flag("--version", ENTDEPTH_VERSION);
    app.require_subcommand(1);

    ScanFlags depth_flags, box_flags;
    CLI::App *depth = app.add_subcommand("depth-scan", "Ensemble of entanglement depths over a (p, L) grid");
    add_scan_flags(*depth, depth_flags);
    CLI::App *box = app.add_subcommand("boxcount-scan", "Ensemble of largest-cluster box counts over box sizes");
    add_scan_flags(*box, box_flags);

    std::string fit_depth, fit_box, fit_out;
    BoxRange range;
    CLI::App *fit = app.add_subcommand("fit", "Fit gamma and d per p from scan CSVs");
    fit->add_option("--depth", fit_depth, "depth.csv")->check(CLI::ExistingFile);
    fit->add_option("--boxcount", fit_box, "boxcount.csv")->check(CLI::ExistingFile);
    fit->add_option("--out", fit_out, "Output directory (default: $ENTDEPTH_OUT or .)");
    fit->add_option("--b-min", range.min_b, "Smallest box size in the fractal fit")->capture_default_str();
    fit->add_option("--b-max", range.max_b, "Largest box size in the fractal fit")->capture_default_str();

    SnapshotFlags snap;
    CLI::App *snapshot = app.add_subcommand("snapshot", "Largest-cluster membership of one realization at several b");
    snapshot->add_option("--p", snap.p, "Measurement probability");
    snapshot->add_option("--L", snap.L, "System size");
    snapshot->add_option("--seed", snap.seed, "Realization seed (the seed column of depth.csv)");
    snapshot->add_option("--steps", snap.steps, "Circuit steps (0 = 4L)");
    snapshot->add_flag("--periodic", snap.periodic, "Periodic chain");
    snapshot->add_option("--b", snap.box_sizes, "Box sizes")->capture_default_str()->delimiter(',');
    snapshot->add_option("--state", snap.state_path, "Read the state from a tableau text file instead")
        ->check(CLI::ExistingFile);
    snapshot->add_option("--out", snap.out, "Snapshot file (default: stdout)");
    snapshot->add_option("--structure", snap.structure_path, "Also write the structure dumps here");
    snapshot->add_option("--tableau", snap.tableau_path, "Also write the final tableau here");

    OracleFlags oracle;
    CLI::App *check = app.add_subcommand("oracle-check", "Compare the tableau against a dense statevector");
    check->add_option("--L", oracle.L, "System size (2..10)")->capture_default_str();
    check->add_option("--trials", oracle.trials, "Realizations per p")->capture_default_str();
    check->add_option("--seed", oracle.seed, "Master seed")->capture_default_str();
    check->add_option("--p", oracle.p_values, "Measurement probabilities")->delimiter(',');
    check->add_option("--steps", oracle.steps, "Circuit steps (0 = 4L)");
    check->add_flag("--no-structures", oracle.skip_structures, "Skip the partition comparison");
    check->add_option("--entropy-offset", oracle.entropy_offset,
                      "Corrupt tableau entropies by this amount (mutation check)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (depth->parsed()) {
            const ScanConfig config = resolve_config(depth_flags);
            return run_scan<DepthRecord>(
                "depth", "depth.csv", depth_flags, args, count_depth_records(config.ensemble), config,
                [&](RecordSink<DepthRecord> &sink) { return run_ensemble(config.ensemble, sink, {config.threads}); },
                [](std::ostream &f, const std::vector<DepthRecord> &r) { write_depth_csv(f, r); }, out, err);
        }
        if (box->parsed()) {
            const ScanConfig config = resolve_config(box_flags);
            return run_scan<BoxCountRecord>(
                "boxcount", "boxcount.csv", box_flags, args, count_boxcount_records(config.ensemble, config.box_sizes),
                config,
                [&](RecordSink<BoxCountRecord> &sink) {
                    return run_boxcount_ensemble(config.ensemble, config.box_sizes, sink, {config.threads});
                },
                [](std::ostream &f, const std::vector<BoxCountRecord> &r) { write_boxcount_csv(f, r); }, out, err);
        }
        if (fit->parsed()) {
            return cmd_fit(fit_depth, fit_box, fit_out, range, out, err);
        }
        if (snapshot->parsed()) {
            return cmd_snapshot(snap, out, err);
        }
        if (check->parsed()) {
            return cmd_oracle_check(oracle, out, err);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace entdepth::cli
