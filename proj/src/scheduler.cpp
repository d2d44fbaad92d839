#include "gridforge/scheduler.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "gridforge/text.hpp"

namespace gridforge::sched {

namespace {

std::string group_id_for(int seq) {
    return "G" + text::zero_pad(seq, 3);
}

bool fits(const GroupedJob& group, const Job& job, const Resource& resource,
          const SchedulingParams& params, Mode mode) {
    GroupedJob candidate = group;
    candidate.total_mi += job.length_mi;
    candidate.total_memory_mb += job.memory_mb;
    return check_group_feasible(candidate, resource, params, mode).ok;
}

} // namespace

std::string_view to_string(DecidedBy d) {
    return d == DecidedBy::global ? "global" : "local";
}

GroupingOutcome group_jobs(std::span<const Job> jobs, std::span<const Resource> resources,
                           const SchedulingParams& params, Mode mode, int first_group_seq) {
    if (!std::is_sorted(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
            return a.submit_seq < b.submit_seq;
        })) {
        throw std::invalid_argument("group_jobs: jobs must be ascending in submit_seq");
    }

    GroupingOutcome outcome;
    std::deque<const Job*> queue;
    for (const Job& job : jobs) {
        queue.push_back(&job);
    }
    if (resources.empty()) {
        for (const Job* job : queue) {
            outcome.overflow.push_back(job->job_id);
        }
        return outcome;
    }

    int next_seq = first_group_seq;
    std::size_t r = 0;
    bool packed_this_cycle = false;
    while (!queue.empty()) {
        if (r == 0) {
            ++outcome.passes;
        }
        const Resource& resource = resources[r];

        GroupedJob group;
        group.resource_id = resource.resource_id;
        std::vector<const Job*> members;
        while (!queue.empty() && fits(group, *queue.front(), resource, params, mode)) {
            const Job* job = queue.front();
            queue.pop_front();
            members.push_back(job);
            group.members.push_back(job->job_id);
            group.total_mi += job->length_mi;
            group.total_memory_mb += job->memory_mb;
        }
        if (!members.empty()) {
            group.group_id = group_id_for(next_seq++);
            outcome.groups.push_back(std::move(group));
            packed_this_cycle = true;
        }

        r = (r + 1) % resources.size();
        if (r == 0) {
            // A cycle with no packing means the front job was offered an
            // empty group on every resource and fit none of them.
            if (!packed_this_cycle && !queue.empty()) {
                outcome.overflow.push_back(queue.front()->job_id);
                queue.pop_front();
            }
            packed_this_cycle = false;
        }
    }
    return outcome;
}

GroupingOutcome drain_overflow(const GroupingOutcome& outcome, std::span<const Job> jobs,
                               std::span<const Resource> resources,
                               const SchedulingParams& params, Mode mode) {
    if (outcome.overflow.empty()) {
        return outcome;
    }
    std::unordered_map<std::string_view, const Job*> by_id;
    for (const Job& job : jobs) {
        by_id.emplace(job.job_id, &job);
    }
    std::vector<Job> pending;
    pending.reserve(outcome.overflow.size());
    for (const std::string& id : outcome.overflow) {
        auto it = by_id.find(id);
        if (it == by_id.end()) {
            throw std::invalid_argument("overflow job '" + id + "' not found in job list");
        }
        pending.push_back(*it->second);
    }

    GroupingOutcome drained = group_jobs(pending, resources, params, mode,
                                         static_cast<int>(outcome.groups.size()) + 1);
    GroupingOutcome merged;
    merged.groups = outcome.groups;
    merged.groups.insert(merged.groups.end(), drained.groups.begin(), drained.groups.end());
    merged.overflow = std::move(drained.overflow);
    merged.passes = outcome.passes + drained.passes;
    return merged;
}

std::vector<Assignment> dispatch(std::span<const GroupedJob> groups,
                                 std::span<const Cluster> clusters, gis::Registry& registry) {
    std::unordered_map<std::string_view, std::string_view> cluster_of;
    for (const Cluster& cluster : clusters) {
        for (const std::string& id : cluster.resource_ids) {
            cluster_of.emplace(id, cluster.cluster_id);
        }
    }

    std::vector<Assignment> assignments;
    assignments.reserve(groups.size());
    for (const GroupedJob& group : groups) {
        registry.resource_characteristics(group.resource_id); // throws if unregistered
        auto it = cluster_of.find(group.resource_id);
        if (it == cluster_of.end()) {
            throw gis::RegistryError("resource '" + group.resource_id +
                                     "' does not belong to any cluster");
        }
        assignments.push_back(
            {group.group_id, std::string(it->second), group.resource_id, DecidedBy::global});
        registry.set_availability(group.resource_id, gis::Availability::busy);
    }
    return assignments;
}

std::vector<Assignment> local_refine(std::span<const Assignment> assignments,
                                     const std::map<std::string, int>& queue_depths,
                                     std::span<const Resource> cluster_resources,
                                     std::span<const GroupedJob> groups,
                                     const SchedulingParams& params, Mode mode) {
    std::unordered_map<std::string_view, const Resource*> resource_by_id;
    for (const Resource& resource : cluster_resources) {
        resource_by_id.emplace(resource.resource_id, &resource);
    }
    std::unordered_map<std::string_view, const GroupedJob*> group_by_id;
    for (const GroupedJob& group : groups) {
        group_by_id.emplace(group.group_id, &group);
    }

    std::map<std::string, int> depth(queue_depths);
    std::vector<Assignment> refined(assignments.begin(), assignments.end());
    for (Assignment& assignment : refined) {
        auto res_it = resource_by_id.find(assignment.resource_id);
        auto grp_it = group_by_id.find(assignment.group_id);
        if (res_it == resource_by_id.end() || grp_it == group_by_id.end()) {
            throw std::invalid_argument("local_refine: assignment references unknown group or "
                                        "resource outside the cluster");
        }
        const Resource& current = *res_it->second;
        const GroupedJob& group = *grp_it->second;

        const Resource* target = nullptr;
        if (depth[assignment.resource_id] >= 1) {
            for (const Resource& candidate : cluster_resources) {
                if (candidate.resource_id == assignment.resource_id) {
                    continue;
                }
                if (depth[candidate.resource_id] != 0 || candidate.mips < current.mips) {
                    continue;
                }
                GroupedJob moved = group;
                moved.resource_id = candidate.resource_id;
                if (check_group_feasible(moved, candidate, params, mode).ok) {
                    target = &candidate;
                    break;
                }
            }
        }
        if (target != nullptr) {
            assignment.resource_id = target->resource_id;
            assignment.decided_by = DecidedBy::local;
        }
        ++depth[assignment.resource_id];
    }
    return refined;
}

} // namespace gridforge::sched
