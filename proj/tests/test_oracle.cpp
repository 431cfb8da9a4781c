#include <catch2/catch_amalgamated.hpp>

#include <cstdint>

#include "qknap/oracle.hpp"
#include "qknap/qubo.hpp"

using namespace qknap;

namespace {

// Independent reference: enumerate all 2^(M*N) raw bitstrings and filter with
// the feasibility predicate, in contrast to the library's base-(M+1)
// placement walk. Only usable for small M*N.
struct RawEnumeration {
    std::int64_t optimal_value = 0;
    std::int64_t num_optimal = 0;
    std::int64_t count_at_least(const KnapsackInstance& inst, std::int64_t numer, std::int64_t denom) const {
        std::int64_t count = 0;
        const std::uint64_t limit = std::uint64_t{1} << inst.num_x_bits();
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            const Assignment a = Assignment::from_x_key(inst.num_knapsacks(), inst.num_items(), mask);
            if (is_feasible(inst, a) && denom * assignment_value(inst, a) >= numer * optimal_value) {
                ++count;
            }
        }
        return count;
    }
};

RawEnumeration raw_enumerate(const KnapsackInstance& inst) {
    RawEnumeration result;
    const std::uint64_t limit = std::uint64_t{1} << inst.num_x_bits();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        const Assignment a = Assignment::from_x_key(inst.num_knapsacks(), inst.num_items(), mask);
        if (!is_feasible(inst, a)) {
            continue;
        }
        const std::int64_t value = assignment_value(inst, a);
        if (value > result.optimal_value) {
            result.optimal_value = value;
            result.num_optimal = 1;
        } else if (value == result.optimal_value) {
            ++result.num_optimal;
        }
    }
    return result;
}

} // namespace

TEST_CASE("brute force agrees with raw bitstring enumeration") {
    for (const auto& inst : load_catalog()) {
        if (inst.num_x_bits() > 12) {
            continue;
        }
        const RawEnumeration expected = raw_enumerate(inst);
        const OracleResult oracle = brute_force_solve(inst);
        INFO("scenario " << inst.scenario_id.value_or(-1));
        REQUIRE(oracle.optimal_value == expected.optimal_value);
        REQUIRE(static_cast<std::int64_t>(oracle.optimal_assignments.size()) == expected.num_optimal);
        REQUIRE(oracle.count_90pct == expected.count_at_least(inst, 9, 10));
    }
}

TEST_CASE("brute force reproduces known optima") {
    const auto& catalog = load_catalog();
    const OracleResult s5 = brute_force_solve(catalog[5]);
    REQUIRE(s5.optimal_value == 55);
    REQUIRE(s5.optimal_assignments.size() == 1);

    const OracleResult s16 = brute_force_solve(catalog[16]);
    REQUIRE(s16.optimal_value == 72);
    REQUIRE(s16.optimal_assignments.size() == 24);

    const OracleResult s1 = brute_force_solve(catalog[1]);
    REQUIRE(s1.optimal_value == 4);
    REQUIRE(s1.optimal_assignments.size() == 2);
}

TEST_CASE("optimal assignments are feasible and optimal") {
    for (const auto& inst : load_catalog()) {
        const OracleResult oracle = brute_force_solve(inst);
        REQUIRE_FALSE(oracle.optimal_assignments.empty());
        REQUIRE(oracle.count_90pct >= static_cast<std::int64_t>(oracle.optimal_assignments.size()));
        for (const Assignment& a : oracle.optimal_assignments) {
            REQUIRE(is_feasible(inst, a));
            REQUIRE(assignment_value(inst, a) == oracle.optimal_value);
        }
    }
}

TEST_CASE("90 percent count is monotone in the threshold") {
    const KnapsackInstance& inst = load_catalog()[10];
    const RawEnumeration raw = raw_enumerate(inst);
    std::int64_t previous = raw.count_at_least(inst, 10, 10);
    for (std::int64_t numer = 9; numer >= 0; --numer) {
        const std::int64_t count = raw.count_at_least(inst, numer, 10);
        REQUIRE(count >= previous);
        previous = count;
    }
    REQUIRE(brute_force_solve(inst).count_90pct == raw.count_at_least(inst, 9, 10));
}

TEST_CASE("enumeration bound is enforced") {
    KnapsackInstance inst;
    inst.capacities.assign(4, 10);
    inst.weights.assign(8, 1);
    inst.values.assign(4, std::vector<std::int64_t>(8, 1));
    REQUIRE(inst.num_x_bits() == 32);
    REQUIRE_THROWS_AS(brute_force_solve(inst), std::invalid_argument);
}

TEST_CASE("qubo minimizer on a single variable") {
    QuadraticModel q(1);
    q.add_linear(0, 1.0);  // E(x) = x
    const QuboMinimum minimum = brute_force_qubo_min(q);
    REQUIRE(minimum.min_energy == 0.0);
    REQUIRE(minimum.argmin == std::vector<std::uint64_t>{0});
}

TEST_CASE("qubo minimizer variable bound") {
    QuadraticModel q(25);
    REQUIRE_THROWS_AS(brute_force_qubo_min(q), std::invalid_argument);
}

TEST_CASE("equality-form minimizer of scenario 0 packs both items") {
    const KnapsackInstance& inst = load_catalog()[0];
    PenaltyWeights weights{45.0, 45.0, 1.0};
    const QuadraticModel model = build_hamiltonian(inst, QuboVariant::NoSlack, weights);
    const QuboMinimum minimum = brute_force_qubo_min(model);
    REQUIRE(minimum.argmin == std::vector<std::uint64_t>{0b11});
    // A*H_single + B*capacity + C*objective = 0 + 45*1 - 35
    REQUIRE(minimum.min_energy == 10.0);
}

TEST_CASE("slack-form ground state of scenario 0 is the true optimum") {
    const KnapsackInstance& inst = load_catalog()[0];
    const PenaltyWeights weights = default_weights(inst, QuboVariant::Standard);
    const QuadraticModel model = build_hamiltonian(inst, QuboVariant::Standard, weights);
    const QuboMinimum minimum = brute_force_qubo_min(model);
    REQUIRE(minimum.min_energy == -19.0);
    REQUIRE(minimum.argmin.size() == 1);
    // x-part: item 0 only; slack encodes the gap 9 - 4 = 5 as 101 in bits 2..5
    const std::uint64_t mask = minimum.argmin[0];
    REQUIRE((mask & 0b11) == 0b01);
    std::int64_t slack = 0;
    for (int b = 0; b < 4; ++b) {
        if ((mask >> (2 + b)) & 1u) {
            slack += std::int64_t{1} << b;
        }
    }
    REQUIRE(slack == 5);
}
