#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gridforge/auth.hpp"
#include "gridforge/model.hpp"
#include "gridforge/pipeline.hpp"
#include "gridforge/report.hpp"
#include "gridforge/scenario.hpp"
#include "gridforge/scheduler.hpp"
#include "gridforge/sim.hpp"

namespace py = pybind11;
using namespace gridforge;

namespace {

std::vector<std::uint8_t> to_bytes(const py::bytes& data) {
    std::string_view view = data;
    return {view.begin(), view.end()};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "gridforge core: job grouping, feasibility and comparison runs";

    py::enum_<Mode>(m, "Mode")
        .value("jgs", Mode::jgs)
        .value("djg", Mode::djg);

    py::enum_<Condition>(m, "Condition")
        .value("none", Condition::none)
        .value("mi_capacity", Condition::mi_capacity)
        .value("memory", Condition::memory)
        .value("transfer", Condition::transfer);

    py::class_<Job>(m, "Job")
        .def(py::init([](std::string job_id, std::string user_id, double length_mi,
                         double memory_mb, std::int64_t submit_seq) {
                 Job job{std::move(job_id), std::move(user_id), length_mi, memory_mb, submit_seq};
                 validate(job);
                 return job;
             }),
             py::arg("job_id"), py::arg("user_id"), py::arg("length_mi"),
             py::arg("memory_mb") = 0.0, py::arg("submit_seq") = 0)
        .def_readonly("job_id", &Job::job_id)
        .def_readonly("user_id", &Job::user_id)
        .def_readonly("length_mi", &Job::length_mi)
        .def_readonly("memory_mb", &Job::memory_mb)
        .def_readonly("submit_seq", &Job::submit_seq);

    py::class_<Resource>(m, "Resource")
        .def(py::init([](std::string resource_id, double mips, double bandwidth_mbps,
                         double memory_mb, double enter_time) {
                 Resource r{resource_id, resource_id, mips, bandwidth_mbps, memory_mb, enter_time};
                 validate(r);
                 return r;
             }),
             py::arg("resource_id"), py::arg("mips"), py::arg("bandwidth_mbps"),
             py::arg("memory_mb"), py::arg("enter_time") = 0.0)
        .def_readonly("resource_id", &Resource::resource_id)
        .def_readonly("mips", &Resource::mips)
        .def_readonly("bandwidth_mbps", &Resource::bandwidth_mbps)
        .def_readonly("memory_mb", &Resource::memory_mb)
        .def_readonly("enter_time", &Resource::enter_time);

    py::class_<SchedulingParams>(m, "SchedulingParams")
        .def(py::init<double, double>(), py::arg("granularity_s") = 3.0, py::arg("tcomm_s") = 3.0)
        .def_readwrite("granularity_s", &SchedulingParams::granularity_s)
        .def_readwrite("tcomm_s", &SchedulingParams::tcomm_s);

    py::class_<GroupedJob>(m, "GroupedJob")
        .def_readonly("group_id", &GroupedJob::group_id)
        .def_readonly("resource_id", &GroupedJob::resource_id)
        .def_readonly("members", &GroupedJob::members)
        .def_readonly("total_mi", &GroupedJob::total_mi)
        .def_readonly("total_memory_mb", &GroupedJob::total_memory_mb);

    py::class_<Feasibility>(m, "Feasibility")
        .def_readonly("ok", &Feasibility::ok)
        .def_readonly("violated", &Feasibility::violated)
        .def("__bool__", [](const Feasibility& f) { return f.ok; });

    py::class_<sched::GroupingOutcome>(m, "GroupingOutcome")
        .def_readonly("groups", &sched::GroupingOutcome::groups)
        .def_readonly("overflow", &sched::GroupingOutcome::overflow)
        .def_readonly("passes", &sched::GroupingOutcome::passes);

    m.def("group_capacity_mi", &group_capacity_mi, py::arg("resource"), py::arg("params"));
    m.def("transfer_capacity_mb", &transfer_capacity_mb, py::arg("resource"), py::arg("params"));
    m.def("check_group_feasible", &check_group_feasible, py::arg("group"), py::arg("resource"),
          py::arg("params"), py::arg("mode"));
    m.def(
        "group_jobs",
        [](const std::vector<Job>& jobs, const std::vector<Resource>& resources,
           const SchedulingParams& params, Mode mode) {
            return sched::group_jobs(jobs, resources, params, mode);
        },
        py::arg("jobs"), py::arg("resources"), py::arg("params"), py::arg("mode"));
    m.def(
        "drain_overflow",
        [](const sched::GroupingOutcome& outcome, const std::vector<Job>& jobs,
           const std::vector<Resource>& resources, const SchedulingParams& params, Mode mode) {
            return sched::drain_overflow(outcome, jobs, resources, params, mode);
        },
        py::arg("outcome"), py::arg("jobs"), py::arg("resources"), py::arg("params"),
        py::arg("mode"));

    m.def("get_hash",
          [](const py::bytes& message, const std::string& alg) {
              auto digest = auth::get_hash(to_bytes(message), auth::hash_alg_from_string(alg));
              return py::bytes(reinterpret_cast<const char*>(digest.data()), digest.size());
          },
          py::arg("message"), py::arg("alg") = "sha256");
    m.def("generate_keypair", [](int bits) {
        auth::KeyPair pair = auth::generate_keypair(bits);
        return py::make_tuple(pair.private_part.pem(), pair.public_part.pem());
    });
    m.def("create_signature", [](const py::bytes& digest, const std::string& alg,
                                 const std::string& private_pem) {
        auto signature = auth::create_signature(
            to_bytes(digest), auth::hash_alg_from_string(alg), auth::PrivateKey::from_pem(private_pem));
        return py::bytes(reinterpret_cast<const char*>(signature.data()), signature.size());
    });
    m.def("verify_signature", [](const py::bytes& digest, const std::string& alg,
                                 const py::bytes& signature, const std::string& public_pem) {
        return auth::verify_signature(to_bytes(digest), auth::hash_alg_from_string(alg),
                                      to_bytes(signature), auth::PublicKey::from_pem(public_pem));
    });

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readwrite("params", &Scenario::params)
        .def_readwrite("overhead_s", &Scenario::overhead_s);

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("builtin_paper_r16", &builtin_paper_r16);

    py::class_<pipeline::ComparisonRow>(m, "ComparisonRow")
        .def_readonly("jobs", &pipeline::ComparisonRow::jobs)
        .def_readonly("srjm_total_s", &pipeline::ComparisonRow::srjm_total_s)
        .def_readonly("djgb_total_s", &pipeline::ComparisonRow::djgb_total_s)
        .def_readonly("srjm_makespan_s", &pipeline::ComparisonRow::srjm_makespan_s)
        .def_readonly("djgb_makespan_s", &pipeline::ComparisonRow::djgb_makespan_s)
        .def_readonly("srjm_mean_util", &pipeline::ComparisonRow::srjm_mean_util)
        .def_readonly("djgb_mean_util", &pipeline::ComparisonRow::djgb_mean_util)
        .def_readonly("srjm_groups", &pipeline::ComparisonRow::srjm_groups)
        .def_readonly("djgb_groups", &pipeline::ComparisonRow::djgb_groups);

    m.def(
        "compare_algorithms",
        [](const Scenario& scenario, const std::vector<int>& job_counts,
           const std::string& keydir) {
            return pipeline::compare_algorithms(scenario, job_counts, keydir);
        },
        py::arg("scenario"), py::arg("job_counts"), py::arg("keydir") = "");

    m.def(
        "run_report",
        [](const Scenario& scenario, const std::string& algorithm, const std::string& keydir) {
            pipeline::PipelineResult result = pipeline::run_pipeline(
                scenario, pipeline::algorithm_from_string(algorithm), keydir);
            return report::run_report(result, scenario.params);
        },
        py::arg("scenario"), py::arg("algorithm") = "srjm", py::arg("keydir") = "");
}
