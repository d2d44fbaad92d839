#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridforge/model.hpp"
#include "gridforge/registry.hpp"

namespace gridforge::sched {

/// Result of a grouping run. Every input job appears exactly once across
/// groups and overflow; within each group, members are consecutive in
/// submission order.
struct GroupingOutcome {
    std::vector<GroupedJob> groups;
    std::vector<std::string> overflow;
    int passes = 0;
};

/// Groups jobs onto resources by cyclic FCFS prefix packing.
///
/// Resources are visited in the given order, wrapping around. At each
/// resource one group is filled greedily: the next job in submission order
/// joins while the post-append totals stay feasible under `mode` (exact-fit
/// groups are accepted). A job that would violate feasibility closes the
/// group, and packing moves to the next resource starting at that job. When
/// a full cycle over the resource list packs nothing, the front job fits no
/// resource and is moved to the overflow list (JobList1); packing then
/// resumes with the remaining jobs. Empty groups are never emitted.
///
/// `jobs` must be ascending in submit_seq (throws std::invalid_argument
/// otherwise); `resources` in FCFS order as returned by
/// Registry::available_resources. Group ids continue from
/// `first_group_seq`.
GroupingOutcome group_jobs(std::span<const Job> jobs, std::span<const Resource> resources,
                           const SchedulingParams& params, Mode mode, int first_group_seq = 1);

/// Re-offers the overflow jobs of `outcome` to `resources` (typically the
/// list of resources that have become available again). Newly formed groups
/// are appended to the outcome; jobs that still fit nowhere remain in
/// overflow as terminally rejected. `jobs` resolves overflow ids.
GroupingOutcome drain_overflow(const GroupingOutcome& outcome, std::span<const Job> jobs,
                               std::span<const Resource> resources,
                               const SchedulingParams& params, Mode mode);

enum class DecidedBy { global, local };

std::string_view to_string(DecidedBy d);

struct Assignment {
    std::string group_id;
    std::string cluster_id;
    std::string resource_id;
    DecidedBy decided_by = DecidedBy::global;
};

/// Global-level dispatch: maps each group to its grouping resource's
/// cluster and marks that resource busy in the registry. Throws
/// RegistryError if a group references an unregistered resource or a
/// resource outside every cluster.
std::vector<Assignment> dispatch(std::span<const GroupedJob> groups,
                                 std::span<const Cluster> clusters, gis::Registry& registry);

/// Local-level refinement within one cluster.
///
/// Assignments are processed in order against working queue depths seeded
/// from `queue_depths` (missing resources count as idle). A group whose
/// resource already has queued work (depth >= 1) moves to the first
/// cluster resource in FCFS order that is idle, has equal-or-higher MIPS
/// and keeps the group feasible under `mode`; moved assignments carry
/// decided_by = local. Groups that stay (or move) add to the working depth
/// of their final resource. Membership of groups never changes.
std::vector<Assignment> local_refine(std::span<const Assignment> assignments,
                                     const std::map<std::string, int>& queue_depths,
                                     std::span<const Resource> cluster_resources,
                                     std::span<const GroupedJob> groups,
                                     const SchedulingParams& params, Mode mode);

} // namespace gridforge::sched
