#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "rismux/results_csv.hpp"
#include "rismux/scenario_file.hpp"

using namespace rismux;

namespace {

struct CsvRow {
    std::string param, value, scheme, metric;
    double estimate, low, high;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::vector<CsvRow> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::istringstream cells(line);
        for (std::string cell; std::getline(cells, cell, ',');) f.push_back(cell);
        rows.push_back({f[0], f[1], f[2], f[3], std::stod(f[4]), std::stod(f[5]), std::stod(f[6])});
    }
    return rows;
}

std::string run_experiment(const Experiment& e, unsigned workers = 1) {
    std::ostringstream out;
    if (e.sweep) {
        write_results_csv(out, run_sweep(*e.sweep, e.config, workers));
    } else {
        write_results_csv(out, run_scenario(e.config, workers), e.config.seed);
    }
    return out.str();
}

}  // namespace

TEST_CASE("scenario document to results table") {
    Experiment e;
    std::istringstream doc(
        "ris.elements = 64\n"
        "region.radial_min_m = 4.05\n"
        "trials = 3000\n"
        "seed = 12\n"
        "schemes = all\n"
        "sweep.param = r_urllc\n"
        "sweep.values = 2, 6\n");
    apply_scenario(e, doc);
    const auto rows = parse_csv(run_experiment(e));
    REQUIRE(rows.size() == 2 * 6 * 3);

    std::map<std::string, double> outage;
    for (const auto& r : rows) {
        CHECK(r.low <= r.estimate);
        CHECK(r.estimate <= r.high);
        if (r.metric == "urllc_outage") outage[r.value + "/" + r.scheme] = r.estimate;
        if (r.metric != "embb_se") {
            CHECK(r.estimate >= 0.0);
            CHECK(r.estimate <= 1.0);
        }
    }
    for (const char* v : {"2", "6"}) {
        const std::string p = std::string(v) + "/";
        CHECK(outage[p + "genie"] <= outage[p + "proposed_in"]);
        CHECK(outage[p + "proposed_in"] <= outage[p + "proposed_pr"]);
        CHECK(outage[p + "proposed_pr"] <= outage[p + "random"]);
        CHECK(outage[p + "random"] <= outage[p + "missed_preamble"]);
    }
}

TEST_CASE("formatted scenario reruns to identical results") {
    Experiment e = make_preset("fig-c");
    e.config.trials = 400;
    e.config.seed = 31;
    Experiment replay;
    std::istringstream doc(format_scenario(e));
    apply_scenario(replay, doc);
    CHECK(run_experiment(replay) == run_experiment(e, 3));
}

TEST_CASE("certain detection misses make every scheme identical") {
    Experiment e;
    e.config.trials = 2000;
    e.config.link.detection.miss_rate = 1.0;
    const auto result = run_scenario(e.config, 2);
    const auto& ref = result.at(SchemeKind::MissedPreamble);
    for (const auto& s : result.schemes) {
        CHECK(s.urllc_outage.value == ref.urllc_outage.value);
        CHECK(s.embb_outage.value == ref.embb_outage.value);
        CHECK(s.embb_se.value == ref.embb_se.value);
    }
}

TEST_CASE("pinned eMBB radius keeps high-SNR spectral efficiency near analytic") {
    Experiment e = make_preset("fig-e");
    e.config.trials = 500;
    e.config.schemes = {SchemeKind::ProposedIN};
    const auto rows = run_sweep(*e.sweep, e.config, 1);
    REQUIRE(rows.size() == e.sweep->values.size());
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double dp = e.sweep->values[k] - e.sweep->values[k - 1];
        const double slope = (rows[k].estimates.embb_se.value - rows[k - 1].estimates.embb_se.value) / dp;
        // log2(10)/10 bit/s/Hz per dB, scaled by the eMBB pre-log
        CHECK(slope == doctest::Approx(std::log2(10.0) / 10.0 * 75.0 / 80.0).epsilon(0.01));
    }
}
