#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridforge/auth.hpp"
#include "gridforge/model.hpp"

namespace gridforge {

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

struct ScenarioUser {
    std::string name;
    std::string key_file; // base name under the key directory; empty = ephemeral key
};

struct ScenarioResource {
    std::string name;
    double enter_time = 0.0;
    double mips = 0.0;
    double bandwidth_mbps = 0.0;
    double memory_mb = 0.0;
    std::string owner;
};

struct ScenarioCluster {
    std::string cluster_id;
    std::vector<std::string> resource_names;
};

struct ScenarioJob {
    std::string user;
    double length_mi = 0.0;
    double memory_mb = 0.0;
    std::string signer; // key actually used to sign; empty = the user's own
};

/// A full simulation input: parameters, users with keys, resources with
/// owners, the cluster partition, and the job batch.
struct Scenario {
    std::string name = "scenario";
    SchedulingParams params;
    double overhead_s = 1.0;
    auth::HashAlg hash_alg = auth::HashAlg::sha256;
    std::vector<ScenarioUser> users;
    std::vector<ScenarioResource> resources;
    std::vector<ScenarioCluster> clusters;
    std::vector<ScenarioJob> jobs;
};

/// Checks scenario invariants: plain names, positive characteristics,
/// known users behind every job and resource, and a cluster partition that
/// covers every resource exactly once. Throws ScenarioError naming the
/// offending entity.
void validate(const Scenario& scenario);

/// Parses and validates a sectioned scenario file. Sections: [params]
/// key|value lines (granularity_s, tcomm_s, overhead_s, hash_alg);
/// [users] name|key_file; [resources] name|enter_time|mips|bandwidth_mbps|
/// memory_mb|owner; [clusters] id|comma-separated resource names;
/// [jobs] user|length_mi|memory_mb[|signer]. A missing [clusters] section
/// puts every resource into one cluster "c1".
Scenario load_scenario(const std::filesystem::path& path);

/// The built-in reference setup: resources R1..R16 with MIPS 10..160,
/// bandwidth 100..850, memory 100..1600, in four clusters of four,
/// granularity 3 s, md5 envelopes, one user owning everything, no jobs.
Scenario builtin_paper_r16();

/// Deterministic job batch used by the comparison harness:
/// job i has length_mi = 20 + 7*(i mod 9), memory_mb = 30 + 11*(i mod 13).
std::vector<ScenarioJob> synthetic_workload(int count, const std::string& user);

} // namespace gridforge
