#include "gridforge/pipeline.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "gridforge/text.hpp"

namespace gridforge::pipeline {

namespace {

struct UserKeys {
    auth::PrivateKey private_part;
    auth::PublicKey public_part;
    std::string user_id;
};

} // namespace

std::string_view to_string(Algorithm algorithm) {
    return algorithm == Algorithm::srjm ? "srjm" : "djgb";
}

Algorithm algorithm_from_string(std::string_view s) {
    if (s == "srjm") {
        return Algorithm::srjm;
    }
    if (s == "djg" || s == "djgb") {
        return Algorithm::djgb;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

Mode mode_of(Algorithm algorithm) {
    return algorithm == Algorithm::srjm ? Mode::jgs : Mode::djg;
}

std::string_view to_string(RejectReason reason) {
    switch (reason) {
    case RejectReason::unknown_user: return "unknown-user";
    case RejectReason::bad_signature: return "bad-signature";
    case RejectReason::infeasible: return "infeasible";
    }
    return "unknown";
}

PipelineResult run_pipeline(const Scenario& scenario, Algorithm algorithm,
                            const std::filesystem::path& keydir) {
    validate(scenario);
    const Mode mode = mode_of(algorithm);
    const auth::HashAlg alg = scenario.hash_alg;

    PipelineResult result;
    result.algorithm = algorithm;

    // Key material per user: load from the key directory when named,
    // otherwise generate an ephemeral pair (small, test-friendly size).
    std::map<std::string, UserKeys> keys;
    for (const ScenarioUser& user : scenario.users) {
        if (user.key_file.empty()) {
            auth::KeyPair pair = auth::generate_keypair(1024);
            keys.emplace(user.name,
                         UserKeys{std::move(pair.private_part), std::move(pair.public_part), ""});
        } else {
            std::filesystem::path base = keydir / user.key_file;
            try {
                auth::PrivateKey priv = auth::load_private_key(base.string() + ".priv");
                auth::PublicKey pub = auth::load_public_key(base.string() + ".pub");
                keys.emplace(user.name, UserKeys{std::move(priv), std::move(pub), ""});
            } catch (const std::runtime_error& e) {
                throw ScenarioError("key files for user '" + user.name + "': " + e.what());
            }
        }
    }

    // Registration. User enrollment requests are self-signed; resource
    // registrations are signed by the owner.
    double user_time = 0.0;
    for (const ScenarioUser& user : scenario.users) {
        UserKeys& uk = keys.at(user.name);
        auth::SignedEnvelope request = auth::seal(
            {{"user_name", user.name},
             {"pubkey", uk.public_part.der_base64()},
             {"user_time", text::format_real(user_time)}},
            uk.private_part, alg, user.name);
        uk.user_id = result.registry.register_user(request);
        user_time += 1.0;
    }

    std::unordered_map<std::string, std::string> resource_id_by_name;
    for (const ScenarioResource& resource : scenario.resources) {
        UserKeys& owner = keys.at(resource.owner);
        auth::SignedEnvelope request = auth::seal(
            {{"resource_name", resource.name},
             {"enter_time", text::format_real(resource.enter_time)},
             {"mips", text::format_real(resource.mips)},
             {"bandwidth_mbps", text::format_real(resource.bandwidth_mbps)},
             {"memory_mb", text::format_real(resource.memory_mb)}},
            owner.private_part, alg, owner.user_id);
        resource_id_by_name.emplace(resource.name,
                                    result.registry.register_resource(request, owner.user_id));
    }

    for (const ScenarioCluster& cluster : scenario.clusters) {
        Cluster out{cluster.cluster_id, {}};
        for (const std::string& name : cluster.resource_names) {
            out.resource_ids.push_back(resource_id_by_name.at(name));
        }
        result.clusters.push_back(std::move(out));
    }

    // Submission: every job arrives as a signed envelope claiming its
    // user's identity. The secure model refuses envelopes that fail
    // verification; the baseline has no such gate.
    std::vector<Job> accepted;
    int job_seq = 0;
    for (const ScenarioJob& sj : scenario.jobs) {
        ++job_seq;
        Job job;
        job.job_id = "J" + text::zero_pad(job_seq, 3);
        job.user_id = keys.at(sj.user).user_id;
        job.length_mi = sj.length_mi;
        job.memory_mb = sj.memory_mb;
        job.submit_seq = job_seq;
        result.submitted.push_back(job);

        const UserKeys& signer = keys.at(sj.signer.empty() ? sj.user : sj.signer);
        auth::SignedEnvelope envelope = auth::seal(
            {{"job_id", job.job_id},
             {"length_mi", text::format_real(job.length_mi)},
             {"memory_mb", text::format_real(job.memory_mb)},
             {"submit_seq", std::to_string(job.submit_seq)},
             {"user_name", sj.user}},
            signer.private_part, alg, job.user_id);

        if (algorithm == Algorithm::srjm) {
            gis::AuthVerdict verdict =
                result.registry.authenticate_submission(envelope, job.user_id);
            if (!verdict.accepted) {
                result.rejections.push_back(
                    {job.job_id, sj.user,
                     verdict.reason == gis::AuthFailure::unknown_user ? RejectReason::unknown_user
                                                                      : RejectReason::bad_signature});
                continue;
            }
        }
        accepted.push_back(std::move(job));
    }

    result.resources = result.registry.available_resources();

    result.outcome = sched::group_jobs(accepted, result.resources, scenario.params, mode);
    result.outcome =
        sched::drain_overflow(result.outcome, accepted, result.resources, scenario.params, mode);
    for (const std::string& job_id : result.outcome.overflow) {
        auto it = std::find_if(accepted.begin(), accepted.end(),
                               [&](const Job& j) { return j.job_id == job_id; });
        result.rejections.push_back(
            {job_id, it != accepted.end() ? it->user_id : "", RejectReason::infeasible});
    }

    result.assignments = sched::dispatch(result.outcome.groups, result.clusters, result.registry);

    // Local refinement, cluster by cluster, preserving assignment order.
    std::unordered_map<std::string, const Cluster*> cluster_by_id;
    for (const Cluster& cluster : result.clusters) {
        cluster_by_id.emplace(cluster.cluster_id, &cluster);
    }
    std::unordered_map<std::string, Resource> resource_by_id;
    for (const Resource& resource : result.resources) {
        resource_by_id.emplace(resource.resource_id, resource);
    }
    for (const Cluster& cluster : result.clusters) {
        std::vector<std::size_t> positions;
        std::vector<sched::Assignment> subset;
        for (std::size_t i = 0; i < result.assignments.size(); ++i) {
            if (result.assignments[i].cluster_id == cluster.cluster_id) {
                positions.push_back(i);
                subset.push_back(result.assignments[i]);
            }
        }
        if (subset.empty()) {
            continue;
        }
        std::vector<Resource> members;
        for (const std::string& id : cluster.resource_ids) {
            members.push_back(resource_by_id.at(id));
        }
        std::sort(members.begin(), members.end(), [](const Resource& a, const Resource& b) {
            if (a.enter_time != b.enter_time) {
                return a.enter_time < b.enter_time;
            }
            return a.resource_id < b.resource_id;
        });
        std::vector<sched::Assignment> refined = sched::local_refine(
            subset, {}, members, result.outcome.groups, scenario.params, mode);
        for (std::size_t i = 0; i < positions.size(); ++i) {
            result.assignments[positions[i]] = refined[i];
        }
    }

    // Keep the group records consistent with their final placement.
    std::unordered_map<std::string, const sched::Assignment*> assignment_by_group;
    for (const sched::Assignment& assignment : result.assignments) {
        assignment_by_group.emplace(assignment.group_id, &assignment);
    }
    for (GroupedJob& group : result.outcome.groups) {
        group.resource_id = assignment_by_group.at(group.group_id)->resource_id;
    }

    const double overhead = algorithm == Algorithm::djgb ? scenario.overhead_s : 0.0;
    result.metrics = sim::run_schedule(result.assignments, result.outcome.groups,
                                       result.resources, overhead);
    for (const Rejection& rejection : result.rejections) {
        result.metrics.rejected_jobs.push_back(rejection.job_id);
    }
    return result;
}

std::vector<ComparisonRow> compare_algorithms(const Scenario& scenario,
                                              std::span<const int> job_counts,
                                              const std::filesystem::path& keydir) {
    if (scenario.users.empty()) {
        throw ScenarioError("comparison needs at least one scenario user");
    }
    std::vector<ComparisonRow> rows;
    rows.reserve(job_counts.size());
    for (int count : job_counts) {
        Scenario level = scenario;
        level.jobs = synthetic_workload(count, scenario.users.front().name);

        PipelineResult srjm = run_pipeline(level, Algorithm::srjm, keydir);
        PipelineResult djgb = run_pipeline(level, Algorithm::djgb, keydir);

        ComparisonRow row;
        row.jobs = count;
        row.srjm_total_s = srjm.metrics.total_processing_s;
        row.djgb_total_s = djgb.metrics.total_processing_s;
        row.srjm_makespan_s = srjm.metrics.makespan_s;
        row.djgb_makespan_s = djgb.metrics.makespan_s;
        row.srjm_mean_util = sim::mean_utilization(srjm.metrics);
        row.djgb_mean_util = sim::mean_utilization(djgb.metrics);
        row.srjm_groups = static_cast<int>(srjm.outcome.groups.size());
        row.djgb_groups = static_cast<int>(djgb.outcome.groups.size());
        row.srjm_rejected = static_cast<int>(srjm.rejections.size());
        row.djgb_rejected = static_cast<int>(djgb.rejections.size());
        rows.push_back(row);
    }
    return rows;
}

} // namespace gridforge::pipeline
