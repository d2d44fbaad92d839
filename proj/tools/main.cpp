#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "gridforge/pipeline.hpp"
#include "gridforge/report.hpp"
#include "gridforge/scenario.hpp"
#include "gridforge/text.hpp"

namespace {

using namespace gridforge;

// Stable exit codes: 0 success, 1 usage error, 2 scenario/parse error,
// 3 authentication rejection present, 4 internal error.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitScenario = 2;
constexpr int kExitAuthRejected = 3;
constexpr int kExitInternal = 4;

struct CommonOptions {
    std::string scenario_path;
    std::string keydir;
    std::string out = "-";
    double granularity = -1.0;
    double tcomm = -1.0;
    double overhead = -1.0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--scenario", opts.scenario_path,
                    "Scenario file path, or builtin:paper-r16")
        ->required();
    cmd->add_option("--keydir", opts.keydir, "Directory of <name>.priv/.pub key files")
        ->envname("GRIDFORGE_KEYDIR");
    cmd->add_option("--out", opts.out, "Output file, '-' for stdout");
    cmd->add_option("--granularity", opts.granularity, "Override granularity size in seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tcomm", opts.tcomm, "Override communication window in seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--overhead", opts.overhead, "Override per-group dispatch overhead in seconds")
        ->check(CLI::NonNegativeNumber);
}

Scenario resolve_scenario(const CommonOptions& opts) {
    Scenario scenario;
    if (opts.scenario_path == "builtin:paper-r16") {
        scenario = builtin_paper_r16();
    } else if (opts.scenario_path.rfind("builtin:", 0) == 0) {
        throw ScenarioError("unknown builtin scenario '" + opts.scenario_path + "'");
    } else {
        scenario = load_scenario(opts.scenario_path);
    }
    if (opts.granularity > 0.0) {
        scenario.params.granularity_s = opts.granularity;
    }
    if (opts.tcomm > 0.0) {
        scenario.params.tcomm_s = opts.tcomm;
    }
    if (opts.overhead >= 0.0) {
        scenario.overhead_s = opts.overhead;
    }
    return scenario;
}

void emit(const std::string& out, const std::string& content) {
    if (out == "-") {
        std::cout << content;
    } else {
        text::write_file_atomic(out, content);
    }
}

int cmd_run(const CommonOptions& opts, const std::string& algorithm_name, int synthetic_jobs) {
    Scenario scenario = resolve_scenario(opts);
    if (synthetic_jobs > 0) {
        if (scenario.users.empty()) {
            throw ScenarioError("--jobs needs at least one scenario user");
        }
        auto extra = synthetic_workload(synthetic_jobs, scenario.users.front().name);
        scenario.jobs.insert(scenario.jobs.end(), extra.begin(), extra.end());
    }
    pipeline::Algorithm algorithm = pipeline::algorithm_from_string(algorithm_name);
    pipeline::PipelineResult result = pipeline::run_pipeline(scenario, algorithm, opts.keydir);
    emit(opts.out, report::run_report(result, scenario.params));

    for (const pipeline::Rejection& rejection : result.rejections) {
        if (rejection.reason != pipeline::RejectReason::infeasible) {
            return kExitAuthRejected;
        }
    }
    return kExitOk;
}

int cmd_compare(const CommonOptions& opts, const std::vector<int>& job_counts) {
    Scenario scenario = resolve_scenario(opts);
    auto rows = pipeline::compare_algorithms(scenario, job_counts, opts.keydir);
    emit(opts.out, report::comparison_csv(rows));
    return kExitOk;
}

int cmd_keygen(const std::string& name, int bits, const std::string& keydir, bool force) {
    if (!text::is_plain_name(name)) {
        throw ScenarioError("key name '" + name + "' is not a plain name");
    }
    std::filesystem::path dir = keydir.empty() ? std::filesystem::path(".")
                                               : std::filesystem::path(keydir);
    std::filesystem::create_directories(dir);
    std::filesystem::path priv = dir / (name + ".priv");
    std::filesystem::path pub = dir / (name + ".pub");
    if (!force && (std::filesystem::exists(priv) || std::filesystem::exists(pub))) {
        throw ScenarioError("key files for '" + name + "' already exist (use --force)");
    }
    auth::KeyPair pair = auth::generate_keypair(bits);
    auth::save_private_key(priv, pair.private_part);
    auth::save_public_key(pub, pair.public_part);
    std::cout << priv.string() << "\n" << pub.string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gridforge: secure job-grouping grid scheduling simulator"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    std::string algorithm = "srjm";
    int synthetic_jobs = 0;
    CLI::App* run = app.add_subcommand("run", "Run one scheduling pipeline and write a report");
    add_common(run, run_opts);
    run->add_option("--algorithm", algorithm, "srjm or djg")
        ->check(CLI::IsMember({"srjm", "djg", "djgb"}));
    run->add_option("--jobs", synthetic_jobs, "Append N synthetic workload jobs")
        ->check(CLI::NonNegativeNumber);

    CommonOptions compare_opts;
    std::vector<int> job_counts = {3, 5, 8, 10, 14};
    CLI::App* compare =
        app.add_subcommand("compare", "Compare srjm vs djgb over job-count levels");
    add_common(compare, compare_opts);
    compare->add_option("--job-counts", job_counts, "Comma-separated job counts")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);

    std::string key_name;
    int bits = 2048;
    std::string keygen_dir;
    bool force = false;
    CLI::App* keygen = app.add_subcommand("keygen", "Generate a <name>.priv/.pub RSA key pair");
    keygen->add_option("name", key_name, "Key owner name")->required();
    keygen->add_option("--bits", bits, "Modulus size (1024, 2048 or 3072)")
        ->check(CLI::IsMember({1024, 2048, 3072}));
    keygen->add_option("--keydir", keygen_dir, "Target directory")->envname("GRIDFORGE_KEYDIR");
    keygen->add_flag("--force", force, "Overwrite existing key files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_opts, algorithm, synthetic_jobs);
        }
        if (compare->parsed()) {
            return cmd_compare(compare_opts, job_counts);
        }
        if (keygen->parsed()) {
            return cmd_keygen(key_name, bits, keygen_dir, force);
        }
        return kExitUsage;
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitScenario;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
