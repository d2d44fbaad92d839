#pragma once

#include <span>
#include <string>

#include "gridforge/pipeline.hpp"

namespace gridforge::report {

/// Sectioned report for one pipeline run: [summary], [groups] with
/// per-group timings and condition diagnostics, [resources] with busy
/// times and utilization, [rejected]. Each section is a CSV table with a
/// header row; reals print with full round-trip precision, LF endings.
std::string run_report(const pipeline::PipelineResult& result, const SchedulingParams& params);

/// One CSV row per comparison level:
/// jobs,srjm_total_s,djgb_total_s,srjm_makespan_s,djgb_makespan_s,
/// srjm_mean_util,djgb_mean_util.
std::string comparison_csv(std::span<const pipeline::ComparisonRow> rows);

} // namespace gridforge::report
