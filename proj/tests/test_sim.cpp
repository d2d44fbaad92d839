#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cfloat>
#include <random>
#include <unordered_map>

#include "gridforge/pipeline.hpp"
#include "gridforge/sim.hpp"
#include "support/generators.hpp"

using namespace gridforge;

namespace {

GroupedJob group(const std::string& id, const std::string& resource_id, double mi, double mem) {
    GroupedJob g;
    g.group_id = id;
    g.resource_id = resource_id;
    g.members = {"J1"};
    g.total_mi = mi;
    g.total_memory_mb = mem;
    return g;
}

} // namespace

TEST_CASE("per-group times are plain work/rate ratios") {
    auto resources = testsupport::paper_r16_resources();
    CHECK(sim::compute_time_s(group("G", "R1", 25, 0), resources[0]) == 2.5);
    CHECK(sim::compute_time_s(group("G", "R16", 480, 0), resources[15]) == 3.0);
    CHECK(sim::transfer_time_s(group("G", "R1", 0, 50), resources[0]) == 0.5);
    CHECK(sim::transfer_time_s(group("G", "R8", 0, 1350), resources[7]) == 3.0); // = tcomm
    CHECK(sim::transfer_time_s(group("G", "R1", 0, 0), resources[0]) == 0.0);
}

TEST_CASE("run_schedule: single group occupies its resource end to end") {
    auto all = testsupport::paper_r16_resources();
    std::vector<Resource> r1 = {all[0]};
    std::vector<GroupedJob> groups = {group("G001", "R1", 25, 50)}; // 2.5 s + 0.5 s
    std::vector<sched::Assignment> assignments = {
        {"G001", "c1", "R1", sched::DecidedBy::global}};

    sim::ScheduleMetrics metrics = sim::run_schedule(assignments, groups, r1, 0.0);
    CHECK(metrics.makespan_s == 3.0);
    CHECK(metrics.per_resource_busy_s.at("R1") == 3.0);
    CHECK(metrics.utilization.at("R1") == 1.0);
    CHECK(metrics.total_processing_s == 3.0);
    const sim::GroupTiming& timing = metrics.per_group.at("G001");
    CHECK(timing.transfer_s == 0.5);
    CHECK(timing.compute_s == 2.5);
    CHECK(timing.start_s == 0.0);
    CHECK(timing.finish_s == 3.0);
}

TEST_CASE("run_schedule: groups on different resources run concurrently") {
    auto all = testsupport::paper_r16_resources();
    std::vector<Resource> pair = {all[0], all[0]};
    pair[1].resource_id = "R1b";
    std::vector<GroupedJob> groups = {group("G001", "R1", 25, 50),
                                      group("G002", "R1b", 25, 50)};
    std::vector<sched::Assignment> assignments = {
        {"G001", "c1", "R1", sched::DecidedBy::global},
        {"G002", "c1", "R1b", sched::DecidedBy::global}};

    sim::ScheduleMetrics metrics = sim::run_schedule(assignments, groups, pair, 0.0);
    CHECK(metrics.makespan_s == 3.0);          // parallel: same as one group
    CHECK(metrics.total_processing_s == 6.0);  // sum: twice one group
}

TEST_CASE("run_schedule: serial execution on one resource") {
    auto all = testsupport::paper_r16_resources();
    std::vector<Resource> r1 = {all[0]};
    std::vector<GroupedJob> groups = {group("G001", "R1", 10, 0),  // 1.0 s
                                      group("G002", "R1", 20, 0)}; // 2.0 s
    std::vector<sched::Assignment> assignments = {
        {"G001", "c1", "R1", sched::DecidedBy::global},
        {"G002", "c1", "R1", sched::DecidedBy::global}};

    sim::ScheduleMetrics metrics = sim::run_schedule(assignments, groups, r1, 0.5);
    CHECK(metrics.per_group.at("G001").start_s == 0.0);
    CHECK(metrics.per_group.at("G001").finish_s == 1.5);
    CHECK(metrics.per_group.at("G002").start_s == 1.5);
    CHECK(metrics.per_group.at("G002").finish_s == 4.0);
    CHECK(metrics.makespan_s == 4.0);
    CHECK(metrics.per_resource_busy_s.at("R1") == 4.0);
}

TEST_CASE("run_schedule: empty schedule") {
    auto all = testsupport::paper_r16_resources();
    std::vector<Resource> r1 = {all[0]};
    sim::ScheduleMetrics metrics = sim::run_schedule({}, {}, r1, 0.0);
    CHECK(metrics.makespan_s == 0.0);
    CHECK(metrics.total_processing_s == 0.0);
    CHECK(metrics.per_group.empty());
    CHECK(metrics.utilization.at("R1") == 0.0);
}

TEST_CASE("property: utilization bounds and work conservation") {
    std::mt19937 rng(211);
    for (int trial = 0; trial < 150; ++trial) {
        Scenario scenario = testsupport::random_scenario(rng, 40);
        scenario.overhead_s = static_cast<double>(rng() % 3);
        pipeline::Algorithm algorithm =
            (rng() % 2 == 0) ? pipeline::Algorithm::srjm : pipeline::Algorithm::djgb;
        pipeline::PipelineResult result = pipeline::run_pipeline(scenario, algorithm);
        const sim::ScheduleMetrics& m = result.metrics;

        double busy_sum = 0.0;
        for (const auto& [id, busy] : m.per_resource_busy_s) {
            REQUIRE(busy >= 0.0);
            REQUIRE(busy <= m.makespan_s);
            double util = m.utilization.at(id);
            REQUIRE(util >= 0.0);
            REQUIRE(util <= 1.0);
            busy_sum += busy;
        }

        // every group stays feasible on its final (possibly refined) resource
        std::unordered_map<std::string, const Resource*> resource_by_id;
        for (const Resource& r : result.resources) {
            resource_by_id.emplace(r.resource_id, &r);
        }
        for (const GroupedJob& g : result.outcome.groups) {
            REQUIRE(check_group_feasible(g, *resource_by_id.at(g.resource_id), scenario.params,
                                         pipeline::mode_of(algorithm))
                        .ok);
        }

        // pipeline-level conservation: submitted = grouped + rejected
        std::size_t grouped = 0;
        for (const GroupedJob& g : result.outcome.groups) {
            grouped += g.members.size();
        }
        REQUIRE(grouped + result.rejections.size() == result.submitted.size());
        // total_processing_s is defined as the sum of busy times; the busy
        // time of a resource equals the finish of its last group, which is
        // the exact left-to-right sum of its groups' occupation times.
        REQUIRE(busy_sum == m.total_processing_s);

        for (const auto& [group_id, timing] : m.per_group) {
            REQUIRE(timing.finish_s >= timing.start_s);
            REQUIRE(timing.finish_s <= m.makespan_s);
        }
    }
}

TEST_CASE("property: jgs groups respect the time windows") {
    std::mt19937 rng(223);
    const SchedulingParams params{3.0, 3.0};
    // Allow two ulps past the window: capacity is defined by the rounded
    // product mips*granularity, so work/rate may exceed the window by the
    // division rounding alone.
    const double mi_bound = params.granularity_s * (1.0 + 4.0 * DBL_EPSILON);
    const double mb_bound = params.tcomm_s * (1.0 + 4.0 * DBL_EPSILON);
    auto resources = testsupport::paper_r16_resources();
    for (int trial = 0; trial < 200; ++trial) {
        auto jobs = testsupport::random_jobs(rng, 40);
        sched::GroupingOutcome outcome = sched::group_jobs(jobs, resources, params, Mode::jgs);
        for (const GroupedJob& group : outcome.groups) {
            const Resource& resource =
                *std::find_if(resources.begin(), resources.end(), [&](const Resource& r) {
                    return r.resource_id == group.resource_id;
                });
            CHECK(sim::compute_time_s(group, resource) <= mi_bound);
            CHECK(sim::transfer_time_s(group, resource) <= mb_bound);
        }
    }
}

TEST_CASE("compare_algorithms: single-job scenario ends in one group per run") {
    Scenario scenario = builtin_paper_r16();
    std::vector<int> counts = {1};
    auto rows = pipeline::compare_algorithms(scenario, counts);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].jobs == 1);
    CHECK(rows[0].srjm_groups == 1);
    CHECK(rows[0].djgb_groups == 1);
    CHECK(rows[0].srjm_total_s <= rows[0].djgb_total_s);
}

TEST_CASE("compare_algorithms: identical runs with zero memory and overhead") {
    std::mt19937 rng(227);
    for (int trial = 0; trial < 20; ++trial) {
        Scenario scenario = testsupport::random_scenario(rng, 30, 0.0); // memory 0
        scenario.overhead_s = 0.0;
        pipeline::PipelineResult srjm = pipeline::run_pipeline(scenario, pipeline::Algorithm::srjm);
        pipeline::PipelineResult djgb = pipeline::run_pipeline(scenario, pipeline::Algorithm::djgb);
        REQUIRE(srjm.outcome.groups.size() == djgb.outcome.groups.size());
        for (std::size_t i = 0; i < srjm.outcome.groups.size(); ++i) {
            REQUIRE(srjm.outcome.groups[i].members == djgb.outcome.groups[i].members);
            REQUIRE(srjm.outcome.groups[i].resource_id == djgb.outcome.groups[i].resource_id);
        }
        REQUIRE(srjm.metrics.total_processing_s == djgb.metrics.total_processing_s);
        REQUIRE(srjm.metrics.makespan_s == djgb.metrics.makespan_s);
    }
}
