#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridforge {

/// A unit of user work. `length_mi` is the computational size in Million
/// Instructions; `submit_seq` is the FCFS submission order within a scenario.
struct Job {
    std::string job_id;
    std::string user_id;
    double length_mi = 0.0;
    double memory_mb = 0.0;
    std::int64_t submit_seq = 0;
};

/// A registered compute node. `mips` is the processing rate in Million
/// Instructions Per Second, `enter_time` the registration timestamp in
/// seconds since the scenario epoch.
struct Resource {
    std::string resource_id;
    std::string name;
    double mips = 0.0;
    double bandwidth_mbps = 0.0;
    double memory_mb = 0.0;
    double enter_time = 0.0;
};

/// Scenario-level knobs for the grouping capacity math.
/// `tcomm_s` defaults to the granularity window.
struct SchedulingParams {
    double granularity_s = 3.0;
    double tcomm_s = 3.0;
};

/// An ordered batch of jobs bound for one resource. Totals are the exact
/// left-to-right sums over the members; members are ascending in submit_seq.
struct GroupedJob {
    std::string group_id;
    std::string resource_id;
    std::vector<std::string> members;
    double total_mi = 0.0;
    double total_memory_mb = 0.0;
};

struct Cluster {
    std::string cluster_id;
    std::vector<std::string> resource_ids;
};

/// Grouping mode: `jgs` enforces the MI, memory and transfer conditions;
/// `djg` is the MIPS-only baseline.
enum class Mode { jgs, djg };

std::string_view to_string(Mode mode);

/// The three packing conditions, in check order.
enum class Condition { none, mi_capacity, memory, transfer };

std::string_view to_string(Condition cond);

/// Feasibility verdict; `violated` names the first failing condition.
struct Feasibility {
    bool ok = true;
    Condition violated = Condition::none;
};

/// MI a resource can process within one granularity window:
/// mips * granularity_s.
double group_capacity_mi(const Resource& resource, const SchedulingParams& params);

/// Mb a resource can transfer within the communication window:
/// bandwidth_mbps * tcomm_s.
double transfer_capacity_mb(const Resource& resource, const SchedulingParams& params);

/// Checks the packing conditions for a group on a resource.
/// jgs: (i) total_mi <= group_capacity_mi, (ii) total_memory_mb <= resource
/// memory, (iii) total_memory_mb <= transfer_capacity_mb. djg: (i) only.
Feasibility check_group_feasible(const GroupedJob& group, const Resource& resource,
                                 const SchedulingParams& params, Mode mode);

/// Builds a group over `members`, computing the exact left-to-right totals.
/// Members must already be in ascending submit_seq order.
GroupedJob make_group(std::string group_id, std::string resource_id,
                      std::span<const Job> members);

// Invariant checks; throw std::invalid_argument naming the offending field.
void validate(const Job& job);
void validate(const Resource& resource);
void validate(const SchedulingParams& params);

} // namespace gridforge
