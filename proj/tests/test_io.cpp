#include <catch2/catch_amalgamated.hpp>

#include "qknap/io.hpp"

using namespace qknap;

TEST_CASE("instance serialization round trips") {
    const KnapsackInstance& inst = load_catalog()[3];
    const KnapsackInstance parsed = parse_instance(serialize_instance(inst));
    REQUIRE(parsed.scenario_id == inst.scenario_id);
    REQUIRE(parsed.capacities == inst.capacities);
    REQUIRE(parsed.weights == inst.weights);
    REQUIRE(parsed.values == inst.values);
}

TEST_CASE("multi-knapsack round trip") {
    const KnapsackInstance& inst = load_catalog()[20];
    const KnapsackInstance parsed = parse_instance(serialize_instance(inst));
    REQUIRE(parsed.values == inst.values);
    REQUIRE(parsed.num_knapsacks() == 3);
}

TEST_CASE("parse errors carry field paths") {
    SECTION("malformed document") {
        REQUIRE_THROWS_WITH(parse_instance("{not json"), Catch::Matchers::ContainsSubstring("document"));
    }
    SECTION("dimension mismatch") {
        // three weights declared, two value columns
        const std::string text =
            R"({"capacities": [5], "weights": [1, 2, 3], "values": [[4, 5]]})";
        REQUIRE_THROWS_WITH(parse_instance(text), Catch::Matchers::ContainsSubstring("values[0]"));
    }
    SECTION("wrong row count") {
        const std::string text =
            R"({"capacities": [5, 6], "weights": [1], "values": [[4]]})";
        REQUIRE_THROWS_WITH(parse_instance(text), Catch::Matchers::ContainsSubstring("expected 2 rows"));
    }
    SECTION("non-positive entries") {
        const std::string zero_cap =
            R"({"capacities": [0], "weights": [1], "values": [[4]]})";
        REQUIRE_THROWS_WITH(parse_instance(zero_cap),
                            Catch::Matchers::ContainsSubstring("capacities[0]") &&
                                Catch::Matchers::ContainsSubstring("positive"));
        const std::string negative_weight =
            R"({"capacities": [5], "weights": [-1], "values": [[4]]})";
        REQUIRE_THROWS_WITH(parse_instance(negative_weight),
                            Catch::Matchers::ContainsSubstring("weights[0]"));
    }
    SECTION("missing fields") {
        REQUIRE_THROWS_WITH(parse_instance(R"({"weights": [1], "values": [[1]]})"),
                            Catch::Matchers::ContainsSubstring("capacities"));
    }
}

TEST_CASE("scenario id is optional") {
    const KnapsackInstance parsed =
        parse_instance(R"({"capacities": [5], "weights": [2, 3], "values": [[4, 5]]})");
    REQUIRE_FALSE(parsed.scenario_id.has_value());
    REQUIRE(parsed.num_items() == 2);
}

TEST_CASE("qubo export shape") {
    const KnapsackInstance& inst = load_catalog()[0];
    const QuadraticModel model =
        build_hamiltonian(inst, QuboVariant::Standard, default_weights(inst, QuboVariant::Standard));
    const nlohmann::json doc = qubo_to_json(model);
    REQUIRE(doc["num_vars"] == 6);
    REQUIRE(doc["layout"]["num_x"] == 2);
    REQUIRE(doc["layout"]["total"] == 6);
    REQUIRE(doc["layout"]["slack_spans"].size() == 1);
    REQUIRE(doc["linear"].contains("0"));
    REQUIRE(doc["quadratic"].contains("0,1"));
    // energies reconstruct: E(x0) = linear["0"], offset from the empty string
    double energy = doc["offset"].get<double>() + doc["linear"]["0"].get<double>();
    REQUIRE(energy == qubo_energy(model, {1, 0, 0, 0, 0, 0}));
}

TEST_CASE("sampleset serialization is qubit-0-first") {
    SampleSet samples;
    samples.shots = 7;
    samples.num_qubits = 3;
    samples.counts[0b001] = 3;  // qubit 0 set -> "100"
    samples.counts[0b110] = 4;  // qubits 1, 2 set -> "011"
    const nlohmann::json doc = sampleset_to_json(samples);
    REQUIRE(doc["shots"] == 7);
    REQUIRE(doc["counts"]["100"] == 3);
    REQUIRE(doc["counts"]["011"] == 4);
}

TEST_CASE("bitstring helpers invert each other") {
    for (std::uint64_t index : {0ull, 1ull, 5ull, 127ull, 170ull}) {
        REQUIRE(index_from_bitstring(bitstring_from_index(index, 8)) == index);
        REQUIRE(index_from_bits(bits_from_index(index, 8)) == index);
    }
}
