#include "gridforge/scenario.hpp"

#include <cmath>
#include <set>
#include <unordered_set>

#include "gridforge/text.hpp"

namespace gridforge {

namespace {

double positive(double value, const std::string& what, int line) {
    if (!(value > 0.0)) {
        throw ScenarioError(what + " must be > 0", line);
    }
    return value;
}

} // namespace

void validate(const Scenario& scenario) {
    try {
        gridforge::validate(scenario.params);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
    if (!std::isfinite(scenario.params.granularity_s) || !std::isfinite(scenario.params.tcomm_s)) {
        throw ScenarioError("scheduling parameters must be finite");
    }
    if (!(scenario.overhead_s >= 0.0) || !std::isfinite(scenario.overhead_s)) {
        throw ScenarioError("overhead_s must be finite and >= 0");
    }

    std::unordered_set<std::string> user_names;
    for (const ScenarioUser& user : scenario.users) {
        if (!text::is_plain_name(user.name)) {
            throw ScenarioError("user name '" + user.name + "' is not a plain name");
        }
        if (!user_names.insert(user.name).second) {
            throw ScenarioError("duplicate user '" + user.name + "'");
        }
    }

    std::unordered_set<std::string> resource_names;
    for (const ScenarioResource& resource : scenario.resources) {
        if (!text::is_plain_name(resource.name)) {
            throw ScenarioError("resource name '" + resource.name + "' is not a plain name");
        }
        if (!resource_names.insert(resource.name).second) {
            throw ScenarioError("duplicate resource '" + resource.name + "'");
        }
        if (!(resource.mips > 0.0 && resource.bandwidth_mbps > 0.0 && resource.memory_mb > 0.0) ||
            !std::isfinite(resource.mips) || !std::isfinite(resource.bandwidth_mbps) ||
            !std::isfinite(resource.memory_mb) || !std::isfinite(resource.enter_time)) {
            throw ScenarioError("resource '" + resource.name +
                                "' needs positive finite mips, bandwidth and memory");
        }
        if (user_names.count(resource.owner) == 0) {
            throw ScenarioError("resource '" + resource.name + "' references unknown owner '" +
                                resource.owner + "'");
        }
    }

    std::set<std::string> clustered;
    for (const ScenarioCluster& cluster : scenario.clusters) {
        if (!text::is_plain_name(cluster.cluster_id)) {
            throw ScenarioError("cluster id '" + cluster.cluster_id + "' is not a plain name");
        }
        if (cluster.resource_names.empty()) {
            throw ScenarioError("cluster '" + cluster.cluster_id + "' has no resources");
        }
        for (const std::string& name : cluster.resource_names) {
            if (resource_names.count(name) == 0) {
                throw ScenarioError("cluster '" + cluster.cluster_id +
                                    "' references unknown resource '" + name + "'");
            }
            if (!clustered.insert(name).second) {
                throw ScenarioError("resource '" + name + "' appears in more than one cluster");
            }
        }
    }
    if (clustered.size() != resource_names.size()) {
        for (const ScenarioResource& resource : scenario.resources) {
            if (clustered.count(resource.name) == 0) {
                throw ScenarioError("resource '" + resource.name + "' belongs to no cluster");
            }
        }
    }

    int index = 0;
    for (const ScenarioJob& job : scenario.jobs) {
        ++index;
        if (user_names.count(job.user) == 0) {
            throw ScenarioError("job #" + std::to_string(index) + " references unknown user '" +
                                job.user + "'");
        }
        if (!job.signer.empty() && user_names.count(job.signer) == 0) {
            throw ScenarioError("job #" + std::to_string(index) + " references unknown signer '" +
                                job.signer + "'");
        }
        if (!(job.length_mi > 0.0) || !std::isfinite(job.length_mi)) {
            throw ScenarioError("job #" + std::to_string(index) + " needs finite length_mi > 0");
        }
        if (!(job.memory_mb >= 0.0) || !std::isfinite(job.memory_mb)) {
            throw ScenarioError("job #" + std::to_string(index) + " needs finite memory_mb >= 0");
        }
    }
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::string content;
    try {
        content = text::read_file(path);
    } catch (const std::runtime_error& e) {
        throw ScenarioError(e.what());
    }

    Scenario scenario;
    scenario.name = path.stem().string();
    scenario.clusters.clear();

    std::vector<text::Section> sections;
    try {
        sections = text::parse_sections(content);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }

    auto expect_fields = [](const text::Line& line, std::size_t min, std::size_t max,
                            const char* what) {
        if (line.fields.size() < min || line.fields.size() > max) {
            throw ScenarioError(std::string("expected ") + what, line.number);
        }
    };
    auto real_field = [](const text::Line& line, std::size_t i, const char* what) {
        try {
            return text::parse_real(line.fields[i]);
        } catch (const std::invalid_argument&) {
            throw ScenarioError(std::string(what) + ": '" + line.fields[i] + "' is not a number",
                                line.number);
        }
    };

    for (const text::Section& section : sections) {
        if (section.name == "params") {
            for (const text::Line& line : section.lines) {
                expect_fields(line, 2, 2, "key|value");
                const std::string& key = line.fields[0];
                if (key == "granularity_s") {
                    scenario.params.granularity_s =
                        positive(real_field(line, 1, "granularity_s"), "granularity_s", line.number);
                } else if (key == "tcomm_s") {
                    scenario.params.tcomm_s =
                        positive(real_field(line, 1, "tcomm_s"), "tcomm_s", line.number);
                } else if (key == "overhead_s") {
                    scenario.overhead_s = real_field(line, 1, "overhead_s");
                } else if (key == "hash_alg") {
                    try {
                        scenario.hash_alg = auth::hash_alg_from_string(line.fields[1]);
                    } catch (const auth::CryptoError& e) {
                        throw ScenarioError(e.what(), line.number);
                    }
                } else {
                    throw ScenarioError("unknown parameter '" + key + "'", line.number);
                }
            }
        } else if (section.name == "users") {
            for (const text::Line& line : section.lines) {
                expect_fields(line, 1, 2, "name[|key_file]");
                ScenarioUser user;
                user.name = line.fields[0];
                if (line.fields.size() == 2) {
                    user.key_file = line.fields[1];
                }
                scenario.users.push_back(std::move(user));
            }
        } else if (section.name == "resources") {
            for (const text::Line& line : section.lines) {
                expect_fields(line, 6, 6, "name|enter_time|mips|bandwidth_mbps|memory_mb|owner");
                ScenarioResource resource;
                resource.name = line.fields[0];
                resource.enter_time = real_field(line, 1, "enter_time");
                resource.mips = real_field(line, 2, "mips");
                resource.bandwidth_mbps = real_field(line, 3, "bandwidth_mbps");
                resource.memory_mb = real_field(line, 4, "memory_mb");
                resource.owner = line.fields[5];
                scenario.resources.push_back(std::move(resource));
            }
        } else if (section.name == "clusters") {
            for (const text::Line& line : section.lines) {
                expect_fields(line, 2, 2, "cluster_id|resource,resource,...");
                ScenarioCluster cluster;
                cluster.cluster_id = line.fields[0];
                cluster.resource_names = text::split(line.fields[1], ',');
                scenario.clusters.push_back(std::move(cluster));
            }
        } else if (section.name == "jobs") {
            for (const text::Line& line : section.lines) {
                expect_fields(line, 3, 4, "user|length_mi|memory_mb[|signer]");
                ScenarioJob job;
                job.user = line.fields[0];
                job.length_mi = real_field(line, 1, "length_mi");
                job.memory_mb = real_field(line, 2, "memory_mb");
                if (line.fields.size() == 4) {
                    job.signer = line.fields[3];
                }
                scenario.jobs.push_back(std::move(job));
            }
        } else {
            throw ScenarioError("unknown section [" + section.name + "]");
        }
    }

    if (scenario.clusters.empty() && !scenario.resources.empty()) {
        ScenarioCluster all{"c1", {}};
        for (const ScenarioResource& resource : scenario.resources) {
            all.resource_names.push_back(resource.name);
        }
        scenario.clusters.push_back(std::move(all));
    }

    validate(scenario);
    return scenario;
}

Scenario builtin_paper_r16() {
    Scenario scenario;
    scenario.name = "paper-r16";
    scenario.params = {3.0, 3.0};
    scenario.overhead_s = 1.0;
    scenario.hash_alg = auth::HashAlg::md5;
    scenario.users.push_back({"u1", ""});
    for (int k = 1; k <= 16; ++k) {
        ScenarioResource resource;
        resource.name = "R" + std::to_string(k);
        resource.enter_time = static_cast<double>(k - 1);
        resource.mips = 10.0 * k;
        resource.bandwidth_mbps = 100.0 + 50.0 * (k - 1);
        resource.memory_mb = 100.0 * k;
        resource.owner = "u1";
        scenario.resources.push_back(std::move(resource));
    }
    for (int c = 0; c < 4; ++c) {
        ScenarioCluster cluster;
        cluster.cluster_id = "c" + std::to_string(c + 1);
        for (int k = 4 * c + 1; k <= 4 * c + 4; ++k) {
            cluster.resource_names.push_back("R" + std::to_string(k));
        }
        scenario.clusters.push_back(std::move(cluster));
    }
    validate(scenario);
    return scenario;
}

std::vector<ScenarioJob> synthetic_workload(int count, const std::string& user) {
    std::vector<ScenarioJob> jobs;
    jobs.reserve(static_cast<std::size_t>(count > 0 ? count : 0));
    for (int i = 0; i < count; ++i) {
        ScenarioJob job;
        job.user = user;
        job.length_mi = 20.0 + 7.0 * (i % 9);
        job.memory_mb = 30.0 + 11.0 * (i % 13);
        jobs.push_back(std::move(job));
    }
    return jobs;
}

} // namespace gridforge
