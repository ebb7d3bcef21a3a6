#include "rismux/results_csv.hpp"

#include <cstdio>
#include <optional>
#include <ostream>

namespace rismux {

namespace {

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_scheme(std::ostream& out, std::string_view param, const std::string& value, std::uint64_t seed,
                  const SchemeEstimates& est) {
    const SchemeDiagnostics& d = est.diagnostics;
    std::string diagnostics = ",";
    diagnostics += d.nulling_runs ? number(d.nulling_converged_fraction()) : "";
    diagnostics += ",";
    diagnostics += d.nulling_runs ? number(d.nulling_mean_iterations()) : "";
    diagnostics += ",";
    diagnostics += d.partition_runs ? number(d.partition_mean_residual()) : "";
    diagnostics += "," + std::to_string(d.failed_trials);

    const std::pair<std::string_view, const Estimate*> metrics[] = {
        {"urllc_outage", &est.urllc_outage}, {"embb_outage", &est.embb_outage}, {"embb_se", &est.embb_se}};
    for (const auto& [metric, e] : metrics) {
        out << param << ',' << value << ',' << to_string(est.scheme) << ',' << metric << ',' << number(e->value)
            << ',' << number(e->ci_low) << ',' << number(e->ci_high) << ',' << e->n << ',' << seed << diagnostics
            << '\n';
    }
}

void warn_if_zero(std::vector<std::string>& out, const std::string& where, const SchemeEstimates& est) {
    if (est.urllc_outage.ci_low == 0.0) {
        out.push_back(where + std::string(to_string(est.scheme)) + ": no URLLC outage in " +
                      std::to_string(est.urllc_outage.n) + " trials; estimate below resolution");
    }
}

}  // namespace

void write_results_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << kCsvHeader << '\n';
    for (const auto& row : rows) write_scheme(out, to_string(row.param), number(row.value), row.seed, row.estimates);
}

void write_results_csv(std::ostream& out, const ScenarioResult& result, std::uint64_t seed) {
    out << kCsvHeader << '\n';
    for (const auto& est : result.schemes) write_scheme(out, "none", "", seed, est);
}

std::vector<std::string> zero_outage_warnings(std::span<const SweepRow> rows) {
    std::vector<std::string> out;
    for (const auto& row : rows) {
        warn_if_zero(out, std::string(to_string(row.param)) + "=" + number(row.value) + " ", row.estimates);
    }
    return out;
}

std::vector<std::string> zero_outage_warnings(const ScenarioResult& result) {
    std::vector<std::string> out;
    for (const auto& est : result.schemes) warn_if_zero(out, "", est);
    return out;
}

}  // namespace rismux
