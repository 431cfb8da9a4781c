#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qknap/knapsack.hpp"
#include "qknap/qubo.hpp"

namespace qknap {

/// Exact solution summary from exhaustive enumeration.
struct OracleResult {
    std::int64_t optimal_value = 0;
    std::vector<Assignment> optimal_assignments;
    std::int64_t count_90pct = 0;  ///< feasible assignments with value >= 0.9 * optimum
};

/// Exact optimum by enumerating all (M+1)^N placements: each item goes to one
/// knapsack or to none, which bakes in the single-assignment constraint.
/// Requires M*N <= 30.
inline OracleResult brute_force_solve(const KnapsackInstance& inst) {
    const int m = inst.num_knapsacks();
    const int n = inst.num_items();
    if (m * n > 30) {
        throw std::invalid_argument("brute_force_solve: instance too large for enumeration (" +
                                    std::to_string(m * n) + " x-bits > 30)");
    }

    // Digit i of the odometer places item i: 0 means "no knapsack" and digit
    // d in 1..M means knapsack d-1.
    std::vector<int> placement(static_cast<std::size_t>(n), 0);
    std::vector<std::int64_t> load(static_cast<std::size_t>(m), 0);

    // Walks the base-(M+1) odometer, calling fn(value) for each feasible
    // placement. Loads and value are maintained incrementally.
    auto enumerate = [&](auto&& fn) {
        std::fill(placement.begin(), placement.end(), 0);
        std::fill(load.begin(), load.end(), 0);
        std::int64_t value = 0;
        while (true) {
            bool feasible = true;
            for (int k = 0; k < m; ++k) {
                if (load[static_cast<std::size_t>(k)] > inst.capacities[static_cast<std::size_t>(k)]) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                fn(value);
            }
            int i = 0;
            for (; i < n; ++i) {
                const int old = placement[static_cast<std::size_t>(i)];
                if (old != 0) {
                    load[static_cast<std::size_t>(old - 1)] -= inst.weights[static_cast<std::size_t>(i)];
                    value -= inst.values[static_cast<std::size_t>(old - 1)][static_cast<std::size_t>(i)];
                }
                const int next = (old + 1) % (m + 1);
                placement[static_cast<std::size_t>(i)] = next;
                if (next != 0) {
                    load[static_cast<std::size_t>(next - 1)] += inst.weights[static_cast<std::size_t>(i)];
                    value += inst.values[static_cast<std::size_t>(next - 1)][static_cast<std::size_t>(i)];
                    break;
                }
            }
            if (i == n) {
                break;
            }
        }
    };

    OracleResult result;
    result.optimal_value = 0;  // the empty assignment is always feasible
    enumerate([&](std::int64_t value) {
        if (value > result.optimal_value) {
            result.optimal_value = value;
        }
    });

    auto to_assignment = [&]() {
        Assignment a(m, n);
        for (int i = 0; i < n; ++i) {
            if (placement[static_cast<std::size_t>(i)] != 0) {
                a.at(placement[static_cast<std::size_t>(i)] - 1, i) = 1;
            }
        }
        return a;
    };

    enumerate([&](std::int64_t value) {
        // integer comparison value >= 0.9 * opt, exact (no float ties)
        if (10 * value >= 9 * result.optimal_value) {
            ++result.count_90pct;
        }
        if (value == result.optimal_value) {
            result.optimal_assignments.push_back(to_assignment());
        }
    });
    return result;
}

/// Exact QUBO minimum over all bitstrings. Requires num_vars <= 24.
struct QuboMinimum {
    double min_energy = 0.0;
    std::vector<std::uint64_t> argmin;  ///< bit i of each mask is variable i
};

inline QuboMinimum brute_force_qubo_min(const QuadraticModel& q) {
    if (q.num_vars > 24) {
        throw std::invalid_argument("brute_force_qubo_min: too many variables (" +
                                    std::to_string(q.num_vars) + " > 24)");
    }
    struct PairTerm {
        std::uint64_t mask;
        double coeff;
    };
    std::vector<PairTerm> pairs;
    pairs.reserve(q.quadratic.size());
    for (const auto& [key, c] : q.quadratic) {
        pairs.push_back({(std::uint64_t{1} << key.first) | (std::uint64_t{1} << key.second), c});
    }

    QuboMinimum result;
    const std::uint64_t count = std::uint64_t{1} << q.num_vars;
    for (std::uint64_t b = 0; b < count; ++b) {
        double energy = q.offset;
        std::uint64_t rest = b;
        while (rest != 0) {
            const int i = std::countr_zero(rest);
            energy += q.linear[static_cast<std::size_t>(i)];
            rest &= rest - 1;
        }
        for (const PairTerm& t : pairs) {
            if ((b & t.mask) == t.mask) {
                energy += t.coeff;
            }
        }
        if (b == 0 || energy < result.min_energy) {
            result.min_energy = energy;
            result.argmin.clear();
            result.argmin.push_back(b);
        } else if (energy == result.min_energy) {
            result.argmin.push_back(b);
        }
    }
    return result;
}

} // namespace qknap
