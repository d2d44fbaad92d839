#include "gridforge/sim.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace gridforge::sim {

double compute_time_s(const GroupedJob& group, const Resource& resource) {
    return group.total_mi / resource.mips;
}

double transfer_time_s(const GroupedJob& group, const Resource& resource) {
    return group.total_memory_mb / resource.bandwidth_mbps;
}

ScheduleMetrics run_schedule(std::span<const sched::Assignment> assignments,
                             std::span<const GroupedJob> groups,
                             std::span<const Resource> resources, double overhead_s) {
    std::unordered_map<std::string_view, const GroupedJob*> group_by_id;
    for (const GroupedJob& group : groups) {
        group_by_id.emplace(group.group_id, &group);
    }
    std::unordered_map<std::string_view, const Resource*> resource_by_id;
    for (const Resource& resource : resources) {
        resource_by_id.emplace(resource.resource_id, &resource);
    }

    ScheduleMetrics metrics;
    for (const Resource& resource : resources) {
        metrics.per_resource_busy_s[resource.resource_id] = 0.0;
    }

    for (const sched::Assignment& assignment : assignments) {
        auto grp = group_by_id.find(assignment.group_id);
        auto res = resource_by_id.find(assignment.resource_id);
        if (grp == group_by_id.end() || res == resource_by_id.end()) {
            throw std::invalid_argument("run_schedule: assignment references unknown group '" +
                                        assignment.group_id + "' or resource '" +
                                        assignment.resource_id + "'");
        }
        GroupTiming timing;
        timing.transfer_s = transfer_time_s(*grp->second, *res->second);
        timing.compute_s = compute_time_s(*grp->second, *res->second);
        double& busy = metrics.per_resource_busy_s[assignment.resource_id];
        timing.start_s = busy;
        timing.finish_s = busy + overhead_s + timing.transfer_s + timing.compute_s;
        busy = timing.finish_s;
        metrics.per_group.emplace(assignment.group_id, timing);
    }

    for (const auto& [id, busy] : metrics.per_resource_busy_s) {
        metrics.makespan_s = std::max(metrics.makespan_s, busy);
        metrics.total_processing_s += busy;
    }
    for (const auto& [id, busy] : metrics.per_resource_busy_s) {
        metrics.utilization[id] = metrics.makespan_s > 0.0 ? busy / metrics.makespan_s : 0.0;
    }
    return metrics;
}

double mean_utilization(const ScheduleMetrics& metrics) {
    if (metrics.utilization.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& [id, util] : metrics.utilization) {
        sum += util;
    }
    return sum / static_cast<double>(metrics.utilization.size());
}

} // namespace gridforge::sim
