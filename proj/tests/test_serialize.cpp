#include <xyqpt/serialize.hpp>

#include <doctest.h>

using namespace xyqpt;

TEST_CASE("ground state json")
{
    const auto gs = build_ground_state({0.2, 0.5, 0.5}, 8);
    const auto j = to_json(gs);
    CHECK(j["n_sites"] == 8);
    CHECK(j["k_t"] == gs.k_t);
    CHECK(j["params"]["gamma"] == 0.5);
    REQUIRE(j["modes"].size() == gs.modes.size());
    const auto& m = j["modes"][1];
    CHECK(m["k"] == 1);
    CHECK(m["band"] == "hole");
    CHECK(m["paired"] == true);
    CHECK(m["u"].size() == 2);
    CHECK(m["v"][1].get<double>() == gs.modes[1].amp.v.imag());
    CHECK(!j.contains("occupation_mask"));

    const auto iso = to_json(isotropic_ground_state(0.0, 8));
    CHECK(iso["occupation_mask"].size() == 8);
}

TEST_CASE("spectrum json round trip")
{
    const auto ed = oracle::ed_ground({0.0, 1.0, 0.3}, 4);
    const auto j = nlohmann::json::parse(to_json(ed).dump());
    CHECK(j["n_sites"] == 4);
    REQUIRE(j["energies"].size() == 16);
    CHECK(j["energies"][0].get<double>() == ed.energies(0));
    REQUIRE(j["ground_vector"].size() == 16);
    CHECK(j["ground_vector"][3][0].get<double>() == ed.ground_vector(3).real());
}
