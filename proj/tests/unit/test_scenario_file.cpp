#include <doctest.h>

#include <sstream>

#include "rismux/scenario_file.hpp"

using namespace rismux;

namespace {

std::string error_key(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<none>";
}

Experiment parse(const std::string& text) {
    Experiment e;
    std::istringstream in(text);
    apply_scenario(e, in);
    return e;
}

}  // namespace

TEST_SUITE("scenario_file") {

TEST_CASE("empty document keeps the baseline") {
    const Experiment e = parse("# nothing\n\n   \n");
    const ScenarioConfig base;
    CHECK(e.config.num_elements == 100);
    CHECK(e.config.link.budget.embb_power == base.link.budget.embb_power);
    CHECK(e.config.link.budget.noise_power == base.link.budget.noise_power);
    CHECK(e.config.pathloss.exponent == 3.67);
    CHECK_FALSE(e.sweep.has_value());
}

TEST_CASE("values are parsed and converted once") {
    const Experiment e = parse(
        "ris.elements = 64\n"
        "power.embb_dbm = 30   # one watt\n"
        "power.noise_dbm=-100\n"
        "region.embb_radius_m = 100\n"
        "region.sampling = volume\n"
        "genie.embb_interference = true\n"
        "schemes = proposed_in, puncturing\n"
        "seed = 18446744073709551615\n"
        "sweep.param = epsilon_m\n"
        "sweep.values = 0, 1e-3, 1\n");
    CHECK(e.config.num_elements == 64);
    CHECK(e.config.link.budget.embb_power == 1.0);
    CHECK(e.config.link.budget.noise_power == doctest::Approx(1e-13));
    CHECK(e.config.embb_radius == 100.0);
    CHECK(e.config.sampling == SamplingMeasure::Volume);
    CHECK(e.config.link.settings.genie_embb_interference);
    CHECK(e.config.schemes == std::vector<SchemeKind>{SchemeKind::ProposedIN, SchemeKind::PreemptivePuncturing});
    CHECK(e.config.seed == 18446744073709551615ULL);
    REQUIRE(e.sweep.has_value());
    CHECK(e.sweep->param == SweepParam::MissRate);
    CHECK(e.sweep->values == std::vector<double>{0.0, 1e-3, 1.0});
}

TEST_CASE("unresolved sentinels") {
    Experiment e = parse("region.radial_min_m = 18\nbs.distance_m = 18\n");
    CHECK(e.config.radial_min == 18.0);
    CHECK(e.config.bs_distance == 18.0);
    apply_setting(e, "region.radial_min_m", "far_field");
    apply_setting(e, "bs.distance_m", "far_field");
    CHECK_FALSE(e.config.radial_min.has_value());
    CHECK_FALSE(e.config.bs_distance.has_value());
    apply_setting(e, "sweep.param", "r_urllc");
    apply_setting(e, "sweep.param", "none");
    CHECK_FALSE(e.sweep.has_value());
}

TEST_CASE("errors carry the key path") {
    Experiment e;
    CHECK(error_key([&] { apply_setting(e, "ris.colour", "red"); }) == "ris.colour");
    CHECK(error_key([&] { apply_setting(e, "ris.elements", "ten"); }) == "ris.elements");
    CHECK(error_key([&] { apply_setting(e, "ris.elements", "-4"); }) == "ris.elements");
    CHECK(error_key([&] { apply_setting(e, "rate.urllc", "4 bits"); }) == "rate.urllc");
    CHECK(error_key([&] { apply_setting(e, "miss.erase_embb", "yes"); }) == "miss.erase_embb");
    CHECK(error_key([&] { apply_setting(e, "schemes", "proposed_in, magic"); }) == "schemes");
    CHECK(error_key([&] { apply_setting(e, "sweep.param", "beta"); }) == "sweep.param");
    CHECK(error_key([&] { apply_setting(e, "sweep.values", "1,,2"); }) == "sweep.values");
    CHECK(error_key([&] { apply_setting(e, "region.sampling", "poisson"); }) == "region.sampling");
    CHECK(error_key([] { split_assignment("trials"); }) == "trials");
}

TEST_CASE("line numbers are reported") {
    try {
        parse("trials = 10\n\nbogus = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "bogus");
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("formatted scenario reproduces the experiment") {
    for (auto name : preset_names()) {
        Experiment original = make_preset(name);
        original.config.link.budget.urllc_power = dbm_to_watts(17.3);
        original.config.seed = 4242;
        const Experiment copy = parse(format_scenario(original));
        CHECK(scenario_entries(copy) == scenario_entries(original));
        CHECK(copy.config.link.budget.urllc_power == original.config.link.budget.urllc_power);
        CHECK(copy.config.link.budget.embb_power == original.config.link.budget.embb_power);
        CHECK(copy.config.azimuth_min == original.config.azimuth_min);
        REQUIRE(copy.sweep.has_value());
        CHECK(copy.sweep->values == original.sweep->values);
    }
}

TEST_CASE("presets") {
    CHECK(preset_names().size() == 5);
    CHECK(error_key([] { make_preset("fig-z"); }) == "preset");

    const auto a = make_preset("fig-a");
    CHECK(a.sweep->param == SweepParam::UrllcRate);
    CHECK(a.sweep->values.size() == 10);

    const auto b = make_preset("fig-b");
    CHECK(b.sweep->param == SweepParam::PowerRatio);
    CHECK(b.config.link.budget.urllc_power == dbm_to_watts(23.0));

    const auto c = make_preset("fig-c");
    CHECK(c.sweep->param == SweepParam::MissRate);
    CHECK(c.sweep->values.front() == 0.0);
    CHECK(c.sweep->values.back() == 1.0);

    const auto d = make_preset("fig-d");
    CHECK(d.sweep->param == SweepParam::NumElements);
    CHECK(d.config.radial_min == 18.0);
    CHECK(d.config.bs_distance == 18.0);
    for (double n : d.sweep->values) CHECK_NOTHROW(apply_sweep_value(d.config, d.sweep->param, n).validate());

    const auto e = make_preset("fig-e");
    CHECK(e.sweep->param == SweepParam::EmbbPower);
    CHECK(e.config.embb_radius == 100.0);
    for (auto name : preset_names()) CHECK_FALSE(preset_description(name).empty());
}

}
