#include <catch2/catch_amalgamated.hpp>

#include "qknap/knapsack.hpp"

using namespace qknap;

TEST_CASE("catalog has the full scenario set") {
    const auto& catalog = load_catalog();
    REQUIRE(catalog.size() == 22);
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        REQUIRE(catalog[i].scenario_id == static_cast<int>(i));
        REQUIRE_NOTHROW(validate(catalog[i]));
    }
}

TEST_CASE("catalog scenario 0 fields") {
    const KnapsackInstance& inst = load_catalog()[0];
    REQUIRE(inst.num_knapsacks() == 1);
    REQUIRE(inst.capacities == std::vector<std::int64_t>{9});
    REQUIRE(inst.weights == std::vector<std::int64_t>{4, 6});
    REQUIRE(inst.values == std::vector<std::vector<std::int64_t>>{{19, 16}});
}

TEST_CASE("catalog scenario 10 fields") {
    const KnapsackInstance& inst = load_catalog()[10];
    REQUIRE(inst.num_knapsacks() == 2);
    REQUIRE(inst.capacities == std::vector<std::int64_t>{11, 8});
    REQUIRE(inst.num_items() == 3);
    REQUIRE(inst.weights == std::vector<std::int64_t>{2, 4, 4});
}

TEST_CASE("feasibility on scenario 0") {
    const KnapsackInstance& inst = load_catalog()[0];
    Assignment first_item(1, 2);
    first_item.at(0, 0) = 1;
    REQUIRE(is_feasible(inst, first_item));
    REQUIRE(assignment_value(inst, first_item) == 19);

    Assignment both(1, 2);
    both.at(0, 0) = 1;
    both.at(0, 1) = 1;
    REQUIRE_FALSE(is_feasible(inst, both));  // weight 10 > capacity 9
    REQUIRE(assignment_value(inst, both) == 35);

    const Assignment empty(1, 2);
    REQUIRE(is_feasible(inst, empty));
    REQUIRE(assignment_value(inst, empty) == 0);
}

TEST_CASE("empty assignment is feasible on every scenario") {
    for (const auto& inst : load_catalog()) {
        REQUIRE(is_feasible(inst, Assignment(inst.num_knapsacks(), inst.num_items())));
    }
}

TEST_CASE("multi-assignment is infeasible even under capacity") {
    const KnapsackInstance& inst = load_catalog()[10];
    Assignment doubled(2, 3);
    doubled.at(0, 0) = 1;
    doubled.at(1, 0) = 1;  // item 0 in both knapsacks, loads 2 and 2
    REQUIRE_FALSE(is_feasible(inst, doubled));
}

TEST_CASE("dimension mismatch is rejected") {
    const KnapsackInstance& inst = load_catalog()[0];
    const Assignment wrong(2, 2);
    REQUIRE_THROWS_AS(is_feasible(inst, wrong), std::invalid_argument);
    REQUIRE_THROWS_AS(assignment_value(inst, wrong), std::invalid_argument);
}

TEST_CASE("validate flags bad instances") {
    KnapsackInstance inst = load_catalog()[0];
    inst.capacities[0] = 0;
    REQUIRE_THROWS_WITH(validate(inst), Catch::Matchers::ContainsSubstring("capacities[0]"));

    inst = load_catalog()[0];
    inst.weights.push_back(3);
    REQUIRE_THROWS_WITH(validate(inst), Catch::Matchers::ContainsSubstring("values[0]"));

    inst = load_catalog()[0];
    inst.values[0][1] = -4;
    REQUIRE_THROWS_WITH(validate(inst), Catch::Matchers::ContainsSubstring("values[0][1]"));
}

TEST_CASE("assignment x-key round trip") {
    Assignment a(2, 3);
    a.at(0, 1) = 1;
    a.at(1, 2) = 1;
    const Assignment b = Assignment::from_x_key(2, 3, a.x_key());
    REQUIRE(a == b);
    REQUIRE(a.x_key() == ((1u << 1) | (1u << 5)));
}
