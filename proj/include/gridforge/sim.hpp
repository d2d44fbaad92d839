#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "gridforge/model.hpp"
#include "gridforge/scheduler.hpp"

namespace gridforge::sim {

struct GroupTiming {
    double transfer_s = 0.0;
    double compute_s = 0.0;
    double start_s = 0.0;
    double finish_s = 0.0;
};

/// Timing report for one schedule run.
///
/// busy_s per resource equals the finish time of its last group, which by
/// construction is the exact left-to-right sum of that resource's group
/// occupation times; total_processing_s is the sum of busy_s over the
/// resource map. Utilization is busy_s / makespan_s (0 when idle).
struct ScheduleMetrics {
    std::map<std::string, GroupTiming> per_group;
    std::map<std::string, double> per_resource_busy_s;
    std::map<std::string, double> utilization;
    double makespan_s = 0.0;
    double total_processing_s = 0.0;
    std::vector<std::string> rejected_jobs;
};

/// total_mi / mips.
double compute_time_s(const GroupedJob& group, const Resource& resource);

/// total_memory_mb / bandwidth_mbps; bounded by tcomm_s for feasible
/// jgs groups.
double transfer_time_s(const GroupedJob& group, const Resource& resource);

/// Runs the assignments in order. Groups on one resource execute serially,
/// each occupying it for overhead_s + transfer + compute; resources run
/// concurrently in simulated time. Deterministic for identical inputs.
/// Every resource in `resources` appears in the busy/utilization maps.
ScheduleMetrics run_schedule(std::span<const sched::Assignment> assignments,
                             std::span<const GroupedJob> groups,
                             std::span<const Resource> resources, double overhead_s);

double mean_utilization(const ScheduleMetrics& metrics);

} // namespace gridforge::sim
