#pragma once

// Long-format results table: one row per (grid point, scheme, metric).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rismux/monte_carlo.hpp"

namespace rismux {

inline constexpr std::string_view kCsvHeader =
    "sweep_param,sweep_value,scheme,metric,estimate,ci_low,ci_high,n,seed,"
    "in_converged_fraction,in_mean_iterations,pr_mean_residual,trial_errors";

/// Rows for a sweep. Numbers are written with 17 significant digits.
void write_results_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Rows for a single scenario; sweep_param is "none" and sweep_value empty.
void write_results_csv(std::ostream& out, const ScenarioResult& result, std::uint64_t seed);

/// One message per outage estimate whose interval reaches down to 0, i.e. no
/// outage was observed at this sample size.
std::vector<std::string> zero_outage_warnings(std::span<const SweepRow> rows);
std::vector<std::string> zero_outage_warnings(const ScenarioResult& result);

}  // namespace rismux
