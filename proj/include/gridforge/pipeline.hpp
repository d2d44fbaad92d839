#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridforge/registry.hpp"
#include "gridforge/scenario.hpp"
#include "gridforge/scheduler.hpp"
#include "gridforge/sim.hpp"

namespace gridforge::pipeline {

/// srjm: authenticated registration and submission, grouping under all
/// three packing conditions. djgb: the insecure MIPS-only grouping
/// baseline; it also pays the scenario's per-group dispatch overhead,
/// which the informed scheduler avoids.
enum class Algorithm { srjm, djgb };

std::string_view to_string(Algorithm algorithm);
Algorithm algorithm_from_string(std::string_view s); // accepts "srjm", "djg", "djgb"
Mode mode_of(Algorithm algorithm);

enum class RejectReason { unknown_user, bad_signature, infeasible };

std::string_view to_string(RejectReason reason);

struct Rejection {
    std::string job_id;
    std::string user;
    RejectReason reason = RejectReason::infeasible;
};

struct PipelineResult {
    Algorithm algorithm = Algorithm::srjm;
    std::vector<Job> submitted;          // all jobs offered, in submission order
    std::vector<Resource> resources;     // registered resources, FCFS order
    std::vector<Cluster> clusters;
    sched::GroupingOutcome outcome;      // groups after the overflow drain
    std::vector<sched::Assignment> assignments;
    sim::ScheduleMetrics metrics;
    std::vector<Rejection> rejections;   // auth failures and terminal overflow
    gis::Registry registry;              // final registry state
};

/// Executes the whole flow on one scenario: key loading, user and resource
/// registration, submission authentication (srjm only), grouping, overflow
/// drain, global dispatch, per-cluster local refinement and the schedule
/// run. `keydir` resolves user key files; users without a key file get a
/// fresh ephemeral keypair.
PipelineResult run_pipeline(const Scenario& scenario, Algorithm algorithm,
                            const std::filesystem::path& keydir = {});

struct ComparisonRow {
    int jobs = 0;
    double srjm_total_s = 0.0;
    double djgb_total_s = 0.0;
    double srjm_makespan_s = 0.0;
    double djgb_makespan_s = 0.0;
    double srjm_mean_util = 0.0;
    double djgb_mean_util = 0.0;
    int srjm_groups = 0;
    int djgb_groups = 0;
    int srjm_rejected = 0;
    int djgb_rejected = 0;
};

/// Runs both algorithms on the scenario once per job-count level, replacing
/// the scenario's job list with the synthetic workload of that size. The
/// scenario must define at least one user.
std::vector<ComparisonRow> compare_algorithms(const Scenario& scenario,
                                              std::span<const int> job_counts,
                                              const std::filesystem::path& keydir = {});

} // namespace gridforge::pipeline
