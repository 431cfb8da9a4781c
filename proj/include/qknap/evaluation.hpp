#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <string>
#include <unordered_set>
#include <vector>

#include "qknap/bits.hpp"
#include "qknap/knapsack.hpp"
#include "qknap/oracle.hpp"
#include "qknap/qubo.hpp"
#include "qknap/statevector.hpp"

namespace qknap {

/// The three ways of wiring the capacity inequality into circuit and
/// objective:
///  - StandardSlack: circuit runs the slack-bit Hamiltonian and the
///    evaluation scores the full QUBO energy of x and y bits;
///  - SlackXOnly: same circuit, but evaluation applies the classical
///    inequality objective to the x-bit prefix only;
///  - NoSlack: circuit runs the equality-form Hamiltonian over x-bits and
///    evaluation is again the classical inequality objective.
enum class Protocol {
    StandardSlack,
    SlackXOnly,
    NoSlack,
};

inline QuboVariant circuit_variant(Protocol protocol) {
    return protocol == Protocol::NoSlack ? QuboVariant::NoSlack : QuboVariant::Standard;
}

inline std::string to_string(Protocol protocol) {
    switch (protocol) {
        case Protocol::StandardSlack:
            return "standard";
        case Protocol::SlackXOnly:
            return "slack-xonly";
        case Protocol::NoSlack:
            return "noslack";
    }
    return "unknown";
}

inline Protocol protocol_from_string(const std::string& name) {
    if (name == "standard") {
        return Protocol::StandardSlack;
    }
    if (name == "slack-xonly") {
        return Protocol::SlackXOnly;
    }
    if (name == "noslack") {
        return Protocol::NoSlack;
    }
    throw std::invalid_argument("unknown protocol: " + name);
}

/// Inequality-aware objective on x-bits: C * H_obj + A * H_single plus a
/// quadratic penalty on the capacity excess only. Under-filled knapsacks
/// contribute nothing, so feasible assignments score exactly C * H_obj.
inline double classical_objective(const KnapsackInstance& inst, const std::vector<std::uint8_t>& x_bits,
                                  const PenaltyWeights& weights) {
    const int m = inst.num_knapsacks();
    const int n = inst.num_items();
    if (static_cast<int>(x_bits.size()) != m * n) {
        throw std::invalid_argument("classical_objective: expected " + std::to_string(m * n) + " x-bits, got " +
                                    std::to_string(x_bits.size()));
    }
    std::int64_t objective = 0;
    std::int64_t single = 0;
    std::int64_t excess_sq = 0;
    for (int i = 0; i < n; ++i) {
        std::int64_t placements = 0;
        for (int k = 0; k < m; ++k) {
            placements += x_bits[static_cast<std::size_t>(k * n + i)];
        }
        single += placements * (placements - 1);
    }
    for (int k = 0; k < m; ++k) {
        std::int64_t load = 0;
        for (int i = 0; i < n; ++i) {
            if (x_bits[static_cast<std::size_t>(k * n + i)]) {
                load += inst.weights[static_cast<std::size_t>(i)];
                objective -= inst.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
            }
        }
        const std::int64_t excess = load - inst.capacities[static_cast<std::size_t>(k)];
        if (excess > 0) {
            excess_sq += excess * excess;
        }
    }
    return weights.single_a * static_cast<double>(single) + weights.capacity_b * static_cast<double>(excess_sq) +
           weights.objective_c * static_cast<double>(objective);
}

namespace detail {

// Scores one basis state under the protocol's evaluation rule.
inline double protocol_score(std::uint64_t index, int width, Protocol protocol, const KnapsackInstance& inst,
                             const PenaltyWeights& weights, const QuadraticModel* standard_qubo) {
    if (protocol == Protocol::StandardSlack) {
        if (standard_qubo == nullptr) {
            throw std::invalid_argument("expectation: StandardSlack requires the slack QUBO model");
        }
        return qubo_energy(*standard_qubo, bits_from_index(index, width));
    }
    return classical_objective(inst, bits_from_index(index, inst.num_x_bits()), weights);
}

inline void check_width(int width, Protocol protocol, const KnapsackInstance& inst,
                        const QuadraticModel* standard_qubo) {
    int expected = inst.num_x_bits();
    if (protocol != Protocol::NoSlack) {
        expected = standard_qubo != nullptr ? standard_qubo->num_vars : make_slack_layout(inst).total;
    }
    if (width != expected) {
        throw std::invalid_argument("expectation: bitstring width " + std::to_string(width) +
                                    " does not match protocol width " + std::to_string(expected));
    }
}

} // namespace detail

/// Sample-weighted mean of the protocol score. StandardSlack scores the full
/// QUBO energy via `standard_qubo` (unnormalized, problem scale); SlackXOnly
/// and NoSlack apply classical_objective to the x-bit prefix.
inline double expectation(const SampleSet& samples, Protocol protocol, const KnapsackInstance& inst,
                          const PenaltyWeights& weights, const QuadraticModel* standard_qubo = nullptr) {
    detail::check_width(samples.num_qubits, protocol, inst, standard_qubo);
    double total = 0.0;
    for (const auto& [index, count] : samples.counts) {
        total += static_cast<double>(count) *
                 detail::protocol_score(index, samples.num_qubits, protocol, inst, weights, standard_qubo);
    }
    return total / static_cast<double>(samples.shots);
}

/// Expectation over an exact probability vector (index -> probability).
inline double expectation(const std::vector<double>& probabilities, int num_qubits, Protocol protocol,
                          const KnapsackInstance& inst, const PenaltyWeights& weights,
                          const QuadraticModel* standard_qubo = nullptr) {
    detail::check_width(num_qubits, protocol, inst, standard_qubo);
    double total = 0.0;
    for (std::size_t index = 0; index < probabilities.size(); ++index) {
        if (probabilities[index] == 0.0) {
            continue;
        }
        total += probabilities[index] *
                 detail::protocol_score(index, num_qubits, protocol, inst, weights, standard_qubo);
    }
    return total;
}

/// Success statistics of a final measurement round.
struct Metrics {
    double p_opt = 0.0;
    double p_90 = 0.0;
    double baseline_p_opt = 0.0;
    double baseline_p_90 = 0.0;
    std::int64_t best_value_found = -1;  ///< best feasible sampled value, -1 if none
    bool optimum_found = false;
};

namespace detail {

struct SamplePredicates {
    int num_x;
    std::unordered_set<std::uint64_t> optimal_keys;

    SamplePredicates(const KnapsackInstance& inst, const OracleResult& oracle) : num_x(inst.num_x_bits()) {
        for (const Assignment& a : oracle.optimal_assignments) {
            optimal_keys.insert(a.x_key());
        }
    }
};

// True iff every slack register encodes exactly the capacity gap of its
// knapsack, i.e. the slack-bit capacity penalty is zero.
inline bool slack_converged(const KnapsackInstance& inst, std::uint64_t index, const BitLayout& layout) {
    const int n = inst.num_items();
    for (int k = 0; k < inst.num_knapsacks(); ++k) {
        std::int64_t load = 0;
        for (int i = 0; i < n; ++i) {
            if ((index >> (k * n + i)) & 1u) {
                load += inst.weights[static_cast<std::size_t>(i)];
            }
        }
        const auto [start, count] = layout.slack_spans[static_cast<std::size_t>(k)];
        std::int64_t slack = 0;
        for (int b = 0; b < count; ++b) {
            if ((index >> (start + b)) & 1u) {
                slack += std::int64_t{1} << b;
            }
        }
        if (load + slack != inst.capacities[static_cast<std::size_t>(k)]) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/// Scores sampled (or exactly weighted) bitstrings against the oracle.
/// A sample is optimal iff its x-part is an optimal feasible assignment;
/// StandardSlack additionally requires the slack bits to encode the exact
/// capacity gap. The 90%-optimal predicate asks for feasibility and value
/// >= 0.9 * optimum (integer comparison), with the same slack requirement
/// under StandardSlack. Baselines divide the oracle counts by 2^num_x.
template <class WeightedStates>
Metrics compute_metrics_impl(const WeightedStates& states, double total_weight, const KnapsackInstance& inst,
                             Protocol protocol, const OracleResult& oracle) {
    detail::SamplePredicates predicates(inst, oracle);
    const BitLayout layout =
        protocol == Protocol::StandardSlack ? make_slack_layout(inst) : make_x_layout(inst);
    const std::uint64_t x_mask = (std::uint64_t{1} << predicates.num_x) - 1;

    Metrics metrics;
    double opt_weight = 0.0;
    double p90_weight = 0.0;
    for (const auto& [index, weight] : states) {
        if (weight == 0.0) {
            continue;
        }
        const std::uint64_t x_part = index & x_mask;
        const Assignment a = Assignment::from_x_key(inst.num_knapsacks(), inst.num_items(), x_part);
        if (!is_feasible(inst, a)) {
            continue;
        }
        const std::int64_t value = assignment_value(inst, a);
        if (value > metrics.best_value_found) {
            metrics.best_value_found = value;
        }
        if (protocol == Protocol::StandardSlack && !detail::slack_converged(inst, index, layout)) {
            continue;
        }
        if (10 * value >= 9 * oracle.optimal_value) {
            p90_weight += weight;
        }
        if (predicates.optimal_keys.count(x_part) != 0) {
            opt_weight += weight;
        }
    }
    metrics.p_opt = opt_weight / total_weight;
    metrics.p_90 = p90_weight / total_weight;
    const double num_x_states = std::pow(2.0, predicates.num_x);
    metrics.baseline_p_opt = static_cast<double>(oracle.optimal_assignments.size()) / num_x_states;
    metrics.baseline_p_90 = static_cast<double>(oracle.count_90pct) / num_x_states;
    metrics.optimum_found = metrics.best_value_found == oracle.optimal_value;
    return metrics;
}

inline Metrics compute_metrics(const SampleSet& samples, const KnapsackInstance& inst, Protocol protocol,
                               const OracleResult& oracle) {
    std::vector<std::pair<std::uint64_t, double>> states;
    states.reserve(samples.counts.size());
    for (const auto& [index, count] : samples.counts) {
        states.emplace_back(index, static_cast<double>(count));
    }
    return compute_metrics_impl(states, static_cast<double>(samples.shots), inst, protocol, oracle);
}

/// Exact-distribution variant: probabilities take the place of shot counts.
inline Metrics compute_metrics(const std::vector<double>& probabilities, const KnapsackInstance& inst,
                               Protocol protocol, const OracleResult& oracle) {
    std::vector<std::pair<std::uint64_t, double>> states;
    states.reserve(probabilities.size());
    for (std::size_t index = 0; index < probabilities.size(); ++index) {
        states.emplace_back(static_cast<std::uint64_t>(index), probabilities[index]);
    }
    return compute_metrics_impl(states, 1.0, inst, protocol, oracle);
}

/// Everything a protocol needs to run: the unnormalized circuit QUBO, its
/// normalized Ising form, and the precomputed energy table.
struct ProtocolSetup {
    QuadraticModel circuit_qubo;
    IsingModel circuit_ising;
    DiagonalHamiltonian diagonal;
    PenaltyWeights weights;
    int circuit_qubits = 0;
};

inline ProtocolSetup prepare_protocol(const KnapsackInstance& inst, Protocol protocol,
                                      const PenaltyWeights& weights, int max_qubits = kDefaultMaxQubits) {
    ProtocolSetup setup;
    setup.weights = weights;
    setup.circuit_qubo = build_hamiltonian(inst, circuit_variant(protocol), weights);
    setup.circuit_qubits = setup.circuit_qubo.num_vars;
    check_qubit_budget(setup.circuit_qubits, max_qubits);
    setup.circuit_ising = normalize_ising(qubo_to_ising(setup.circuit_qubo));
    setup.diagonal = build_diagonal(setup.circuit_ising, max_qubits);
    return setup;
}

} // namespace qknap
