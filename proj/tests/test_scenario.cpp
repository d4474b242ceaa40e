#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <utility>

#include <json.hpp>

#include "thermoecon/scenario.hpp"

using namespace thermoecon;

TEST_CASE("presets: the full published list") {
    const std::vector<std::string> names = preset_names();
    REQUIRE(names.size() == 12);
    for (const std::string& n : names) {
        CAPTURE(n);
        CHECK(is_preset(n));
        CHECK_NOTHROW(preset(n).validate());
    }
    CHECK(!is_preset("case9-nope"));
    CHECK_THROWS_AS(preset("case9-nope"), std::invalid_argument);
}

TEST_CASE("presets: table values are pinned") {
    SUBCASE("case2-optimal carries the resource case-study constants") {
        const ScenarioSpec s = preset("case2-optimal");
        CHECK(s.mode == RunMode::SheetOnly);
        REQUIRE(s.sheets.size() == 1);
        CHECK(s.sheets[0].params.X_T == 1000.0);
        CHECK(s.sheets[0].params.r == 0.025);
        CHECK(s.sheets[0].params.s == 0.2);
        CHECK(s.sheets[0].params.R_P == 1e-3);
        CHECK(s.sheets[0].params.R_R == 1e-3);
        CHECK(s.demand == 30.0);
        CHECK(s.sheets[0].policy.mode == IntensityMode::Optimal);
    }
    SUBCASE("case3-weak runs at a fifth of the optimal root") {
        const ScenarioSpec s = preset("case3-weak");
        CHECK(s.sheets[0].policy.mode == IntensityMode::FractionOfOptimal);
        CHECK(s.sheets[0].policy.fraction == 0.2);
    }
    SUBCASE("recycling presets differ only in the regeneration threshold") {
        CHECK(preset("recycling-s20").sheets[0].params.s == 0.2);
        CHECK(preset("recycling-s10").sheets[0].params.s == 0.1);
    }
    SUBCASE("friction presets pin the two extreme impedances") {
        CHECK(preset("friction-low").sheets[0].params.R_P == 4e-5);
        CHECK(preset("friction-high").sheets[0].params.R_P == 0.1);
    }
    SUBCASE("macro scenarios: resource size, friction and recycling switch") {
        CHECK(preset("macro-1").sheets[0].params.X_T == 1e8);
        CHECK(preset("macro-2").sheets[0].params.X_T == 100.0);
        CHECK(preset("macro-3").sheets[0].params.n_R == 0.0);
        CHECK(preset("macro-3").sheets[0].params.R_P == 1e-3);
        CHECK(preset("macro-4").sheets[0].params.R_P == 0.1);
        for (const char* n : {"macro-1", "macro-2", "macro-3", "macro-4"}) {
            const ScenarioSpec s = preset(n);
            CHECK(s.mode == RunMode::Coupled);
            CHECK(s.coupling.kappa > 0.0);
            CHECK(s.coupling.kappa == preset("macro-2").coupling.kappa);
            CHECK(s.econ_init.Y == 64.45e9);
            CHECK(s.econ_init.N == 4.55e9);
        }
    }
    SUBCASE("goodwin is the bare macro block") {
        const ScenarioSpec s = preset("goodwin");
        CHECK(s.mode == RunMode::GoodwinOnly);
        CHECK(s.sheets.empty());
        CHECK(s.econ.nu == 2.89);
        CHECK(s.econ.phi0 == -0.73);
        CHECK(s.econ.phi1 == 1.08);
        CHECK(s.econ.m == 0.2);
        CHECK(s.econ.P_N == 7.059e9);
    }
}

TEST_CASE("scenario json: unknown keys are rejected by name") {
    CHECK_THROWS_WITH_AS(scenario_from_json(R"({"foo": 1})"),
                         doctest::Contains("unknown key 'foo'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        scenario_from_json(R"({"sheets": [{"params": {"X_t": 10}}]})"),
        doctest::Contains("unknown key 'X_t'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        scenario_from_json(R"({"economy": {"params": {"mu": 2.89}}})"),
        doctest::Contains("unknown key 'mu'"), std::invalid_argument);
}

TEST_CASE("scenario json: validation failures carry the field") {
    CHECK_THROWS_WITH_AS(scenario_from_json(R"({"dt": -0.5})"),
                         doctest::Contains("dt"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        scenario_from_json(R"({"sheets": [{"params": {"X_T": -3}}]})"),
        doctest::Contains("X_T"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        scenario_from_json(
            R"({"sheets": [{"initial": {"X_H": 10, "X_L": 0, "X_S": 0}}]})"),
        doctest::Contains("sum to X_T"), std::invalid_argument);
}

TEST_CASE("scenario json: comments are allowed, round trip is stable") {
    const ScenarioSpec parsed = scenario_from_json(R"(
    {
      // a hand-written scenario with comments
      "name": "commented",
      "mode": "sheet_only",
      "horizon": 10,
      "demand": 12.5,
      "sheets": [{"params": {"X_T": 500.0, "s": 0.1}}]
    })");
    CHECK(parsed.name == "commented");
    CHECK(parsed.sheets[0].params.X_T == 500.0);
    CHECK(parsed.demand == 12.5);

    for (const std::string& name : preset_names()) {
        CAPTURE(name);
        const std::string once = scenario_to_json(preset(name));
        const std::string twice = scenario_to_json(scenario_from_json(once));
        CHECK(once == twice);
    }
}

TEST_CASE("scenario json: an injected unknown key anywhere is always caught") {
    // walk every object in a fully populated document, add one bogus key,
    // and require the parser to refuse it by name
    const std::string text = scenario_to_json(preset("macro-2"));
    std::vector<std::string> pointers;
    {
        // collect object paths from the canonical document
        nlohmann::json doc = nlohmann::json::parse(text);
        std::vector<std::pair<std::string, nlohmann::json*>> stack{{"", &doc}};
        while (!stack.empty()) {
            auto [path, node] = stack.back();
            stack.pop_back();
            if (node->is_object()) {
                pointers.push_back(path);
                for (auto& [k, v] : node->items())
                    stack.push_back({path + "/" + k, &v});
            } else if (node->is_array()) {
                for (std::size_t i = 0; i < node->size(); ++i)
                    stack.push_back({path + "/" + std::to_string(i), &(*node)[i]});
            }
        }
    }
    REQUIRE(pointers.size() >= 6);  // root, sheet, params, policy, economy, coupling
    for (const std::string& path : pointers) {
        CAPTURE(path);
        nlohmann::json doc = nlohmann::json::parse(text);
        doc[nlohmann::json::json_pointer(path + "/bogus_key_xyz")] = 1.0;
        CHECK_THROWS_WITH_AS(scenario_from_json(doc.dump()),
                             doctest::Contains("bogus_key_xyz"), std::invalid_argument);
    }
}

TEST_CASE("load_scenario: preset names, files, and clear failures") {
    CHECK(load_scenario("case1-max").name == "case1-max");

    const std::string path = "test_scenario_tmp.json";
    {
        std::ofstream out(path);
        out << scenario_to_json(preset("macro-2"));
    }
    const ScenarioSpec from_file = load_scenario(path);
    CHECK(from_file.mode == RunMode::Coupled);
    CHECK(from_file.sheets[0].params.X_T == 100.0);
    std::remove(path.c_str());

    CHECK_THROWS_WITH_AS(load_scenario("no-such-thing"),
                         doctest::Contains("no such preset or file"),
                         std::invalid_argument);
}
