#include "gridforge/report.hpp"

#include <unordered_map>

#include "gridforge/text.hpp"

namespace gridforge::report {

namespace {

using text::format_real;

const char* flag(bool violated) {
    return violated ? "violated" : "ok";
}

} // namespace

std::string run_report(const pipeline::PipelineResult& result, const SchedulingParams& params) {
    std::unordered_map<std::string, const Resource*> resource_by_id;
    for (const Resource& resource : result.resources) {
        resource_by_id.emplace(resource.resource_id, &resource);
    }
    std::unordered_map<std::string, const sched::Assignment*> assignment_by_group;
    for (const sched::Assignment& assignment : result.assignments) {
        assignment_by_group.emplace(assignment.group_id, &assignment);
    }
    std::unordered_map<std::string, const Job*> job_by_id;
    for (const Job& job : result.submitted) {
        job_by_id.emplace(job.job_id, &job);
    }

    std::string out;
    out += "[summary]\n";
    out += "algorithm,groups,rejected,total_processing_s,makespan_s,mean_utilization\n";
    out += std::string(pipeline::to_string(result.algorithm)) + "," +
           std::to_string(result.outcome.groups.size()) + "," +
           std::to_string(result.rejections.size()) + "," +
           format_real(result.metrics.total_processing_s) + "," +
           format_real(result.metrics.makespan_s) + "," +
           format_real(sim::mean_utilization(result.metrics)) + "\n";

    out += "[groups]\n";
    out += "group_id,resource_id,cluster_id,decided_by,members,total_mi,total_memory_mb,"
           "transfer_s,compute_s,start_s,finish_s,cond_mi,cond_memory,cond_transfer\n";
    for (const GroupedJob& group : result.outcome.groups) {
        const sched::Assignment& assignment = *assignment_by_group.at(group.group_id);
        const Resource& resource = *resource_by_id.at(assignment.resource_id);
        const sim::GroupTiming& timing = result.metrics.per_group.at(group.group_id);
        std::string members;
        for (const std::string& id : group.members) {
            if (!members.empty()) {
                members += ' ';
            }
            members += id;
        }
        // Diagnostics report all three conditions regardless of mode; the
        // baseline may run groups whose memory conditions are violated.
        bool over_mi = group.total_mi > group_capacity_mi(resource, params);
        bool over_mem = group.total_memory_mb > resource.memory_mb;
        bool over_transfer = group.total_memory_mb > transfer_capacity_mb(resource, params);
        out += group.group_id + "," + assignment.resource_id + "," + assignment.cluster_id + "," +
               std::string(sched::to_string(assignment.decided_by)) + "," + members + "," +
               format_real(group.total_mi) + "," + format_real(group.total_memory_mb) + "," +
               format_real(timing.transfer_s) + "," + format_real(timing.compute_s) + "," +
               format_real(timing.start_s) + "," + format_real(timing.finish_s) + "," +
               flag(over_mi) + "," + flag(over_mem) + "," + flag(over_transfer) + "\n";
    }

    out += "[resources]\n";
    out += "resource_id,busy_s,utilization\n";
    for (const auto& [id, busy] : result.metrics.per_resource_busy_s) {
        out += id + "," + format_real(busy) + "," + format_real(result.metrics.utilization.at(id)) +
               "\n";
    }

    out += "[rejected]\n";
    out += "job_id,user,reason\n";
    for (const pipeline::Rejection& rejection : result.rejections) {
        std::string user = rejection.user;
        if (auto it = job_by_id.find(rejection.job_id); it != job_by_id.end()) {
            user = it->second->user_id;
        }
        out += rejection.job_id + "," + user + "," + std::string(pipeline::to_string(rejection.reason)) +
               "\n";
    }
    return out;
}

std::string comparison_csv(std::span<const pipeline::ComparisonRow> rows) {
    std::string out = "jobs,srjm_total_s,djgb_total_s,srjm_makespan_s,djgb_makespan_s,"
                      "srjm_mean_util,djgb_mean_util\n";
    for (const pipeline::ComparisonRow& row : rows) {
        out += std::to_string(row.jobs) + "," + format_real(row.srjm_total_s) + "," +
               format_real(row.djgb_total_s) + "," + format_real(row.srjm_makespan_s) + "," +
               format_real(row.djgb_makespan_s) + "," + format_real(row.srjm_mean_util) + "," +
               format_real(row.djgb_mean_util) + "\n";
    }
    return out;
}

} // namespace gridforge::report
