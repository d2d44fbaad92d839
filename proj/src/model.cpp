#include "gridforge/model.hpp"

#include <stdexcept>

namespace gridforge {

std::string_view to_string(Mode mode) {
    return mode == Mode::jgs ? "jgs" : "djg";
}

std::string_view to_string(Condition cond) {
    switch (cond) {
    case Condition::mi_capacity: return "mi_capacity";
    case Condition::memory: return "memory";
    case Condition::transfer: return "transfer";
    case Condition::none: break;
    }
    return "none";
}

double group_capacity_mi(const Resource& resource, const SchedulingParams& params) {
    return resource.mips * params.granularity_s;
}

double transfer_capacity_mb(const Resource& resource, const SchedulingParams& params) {
    return resource.bandwidth_mbps * params.tcomm_s;
}

Feasibility check_group_feasible(const GroupedJob& group, const Resource& resource,
                                 const SchedulingParams& params, Mode mode) {
    if (group.total_mi > group_capacity_mi(resource, params)) {
        return {false, Condition::mi_capacity};
    }
    if (mode == Mode::jgs) {
        if (group.total_memory_mb > resource.memory_mb) {
            return {false, Condition::memory};
        }
        if (group.total_memory_mb > transfer_capacity_mb(resource, params)) {
            return {false, Condition::transfer};
        }
    }
    return {};
}

GroupedJob make_group(std::string group_id, std::string resource_id,
                      std::span<const Job> members) {
    GroupedJob group;
    group.group_id = std::move(group_id);
    group.resource_id = std::move(resource_id);
    group.members.reserve(members.size());
    for (const Job& job : members) {
        group.members.push_back(job.job_id);
        group.total_mi += job.length_mi;
        group.total_memory_mb += job.memory_mb;
    }
    return group;
}

void validate(const Job& job) {
    if (!(job.length_mi > 0.0)) {
        throw std::invalid_argument("job " + job.job_id + ": length_mi must be > 0");
    }
    if (job.memory_mb < 0.0) {
        throw std::invalid_argument("job " + job.job_id + ": memory_mb must be >= 0");
    }
}

void validate(const Resource& resource) {
    if (!(resource.mips > 0.0)) {
        throw std::invalid_argument("resource " + resource.name + ": mips must be > 0");
    }
    if (!(resource.bandwidth_mbps > 0.0)) {
        throw std::invalid_argument("resource " + resource.name + ": bandwidth_mbps must be > 0");
    }
    if (!(resource.memory_mb > 0.0)) {
        throw std::invalid_argument("resource " + resource.name + ": memory_mb must be > 0");
    }
}

void validate(const SchedulingParams& params) {
    if (!(params.granularity_s > 0.0)) {
        throw std::invalid_argument("granularity_s must be > 0");
    }
    if (!(params.tcomm_s > 0.0)) {
        throw std::invalid_argument("tcomm_s must be > 0");
    }
}

} // namespace gridforge
