#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qknap/bits.hpp"

namespace qknap {

/// A 0/1 multi-knapsack instance: N items with positive integer weights w_i,
/// M knapsacks with positive integer capacities c_k, and a positive value
/// v_{k,i} for packing item i into knapsack k. Each item may go into at most
/// one knapsack and no knapsack load may exceed its capacity.
struct KnapsackInstance {
    std::optional<int> scenario_id;
    std::vector<std::int64_t> capacities;           ///< size M
    std::vector<std::int64_t> weights;              ///< size N
    std::vector<std::vector<std::int64_t>> values;  ///< M rows of N columns

    int num_knapsacks() const { return static_cast<int>(capacities.size()); }
    int num_items() const { return static_cast<int>(weights.size()); }
    int num_x_bits() const { return num_knapsacks() * num_items(); }
};

/// Throws std::invalid_argument if dimensions or positivity are violated.
/// Messages name the offending field (and index) so callers can surface them.
inline void validate(const KnapsackInstance& inst) {
    if (inst.capacities.empty()) {
        throw std::invalid_argument("capacities: must contain at least one knapsack");
    }
    if (inst.weights.empty()) {
        throw std::invalid_argument("weights: must contain at least one item");
    }
    for (std::size_t k = 0; k < inst.capacities.size(); ++k) {
        if (inst.capacities[k] <= 0) {
            throw std::invalid_argument("capacities[" + std::to_string(k) + "]: must be a positive integer");
        }
    }
    for (std::size_t i = 0; i < inst.weights.size(); ++i) {
        if (inst.weights[i] <= 0) {
            throw std::invalid_argument("weights[" + std::to_string(i) + "]: must be a positive integer");
        }
    }
    if (inst.values.size() != inst.capacities.size()) {
        throw std::invalid_argument("values: expected " + std::to_string(inst.capacities.size()) +
                                    " rows, got " + std::to_string(inst.values.size()));
    }
    for (std::size_t k = 0; k < inst.values.size(); ++k) {
        if (inst.values[k].size() != inst.weights.size()) {
            throw std::invalid_argument("values[" + std::to_string(k) + "]: expected " +
                                        std::to_string(inst.weights.size()) + " columns, got " +
                                        std::to_string(inst.values[k].size()));
        }
        for (std::size_t i = 0; i < inst.values[k].size(); ++i) {
            if (inst.values[k][i] <= 0) {
                throw std::invalid_argument("values[" + std::to_string(k) + "][" + std::to_string(i) +
                                            "]: must be a positive integer");
            }
        }
    }
}

/// Binary item-to-knapsack assignment, knapsack-major: bit(k, i) says whether
/// item i sits in knapsack k. Feasibility is a predicate, not an invariant.
struct Assignment {
    int num_knapsacks = 0;
    int num_items = 0;
    std::vector<std::uint8_t> bits;  ///< M*N entries, entry (k,i) at k*N + i

    Assignment() = default;
    Assignment(int m, int n)
        : num_knapsacks(m), num_items(n), bits(static_cast<std::size_t>(m) * static_cast<std::size_t>(n), 0) {}

    std::uint8_t& at(int k, int i) { return bits[static_cast<std::size_t>(k) * num_items + i]; }
    std::uint8_t at(int k, int i) const { return bits[static_cast<std::size_t>(k) * num_items + i]; }

    /// Packed x-bit key: bit k*N+i of the result is entry (k, i).
    std::uint64_t x_key() const { return index_from_bits(bits); }

    static Assignment from_x_key(int m, int n, std::uint64_t key) {
        Assignment a(m, n);
        a.bits = bits_from_index(key, m * n);
        return a;
    }

    friend bool operator==(const Assignment& a, const Assignment& b) {
        return a.num_knapsacks == b.num_knapsacks && a.num_items == b.num_items && a.bits == b.bits;
    }
};

inline void check_dimensions(const KnapsackInstance& inst, const Assignment& a) {
    if (a.num_knapsacks != inst.num_knapsacks() || a.num_items != inst.num_items()) {
        throw std::invalid_argument("assignment dimensions " + std::to_string(a.num_knapsacks) + "x" +
                                    std::to_string(a.num_items) + " do not match instance " +
                                    std::to_string(inst.num_knapsacks()) + "x" + std::to_string(inst.num_items()));
    }
}

/// True iff every item is in at most one knapsack and no capacity is exceeded.
inline bool is_feasible(const KnapsackInstance& inst, const Assignment& a) {
    check_dimensions(inst, a);
    const int m = inst.num_knapsacks();
    const int n = inst.num_items();
    for (int i = 0; i < n; ++i) {
        int placements = 0;
        for (int k = 0; k < m; ++k) {
            placements += a.at(k, i);
        }
        if (placements > 1) {
            return false;
        }
    }
    for (int k = 0; k < m; ++k) {
        std::int64_t load = 0;
        for (int i = 0; i < n; ++i) {
            if (a.at(k, i)) {
                load += inst.weights[static_cast<std::size_t>(i)];
            }
        }
        if (load > inst.capacities[static_cast<std::size_t>(k)]) {
            return false;
        }
    }
    return true;
}

/// Total packed value, ignoring feasibility.
inline std::int64_t assignment_value(const KnapsackInstance& inst, const Assignment& a) {
    check_dimensions(inst, a);
    std::int64_t total = 0;
    for (int k = 0; k < inst.num_knapsacks(); ++k) {
        for (int i = 0; i < inst.num_items(); ++i) {
            if (a.at(k, i)) {
                total += inst.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
            }
        }
    }
    return total;
}

/// The built-in 22-scenario benchmark catalog (ids 0-21). Scenario 0 uses
/// capacity 9; that is the value consistent with the optimal-term table.
inline const std::vector<KnapsackInstance>& load_catalog() {
    static const std::vector<KnapsackInstance> catalog = [] {
        auto make = [](int id, std::vector<std::int64_t> c, std::vector<std::int64_t> w,
                       std::vector<std::vector<std::int64_t>> v) {
            KnapsackInstance inst;
            inst.scenario_id = id;
            inst.capacities = std::move(c);
            inst.weights = std::move(w);
            inst.values = std::move(v);
            validate(inst);
            return inst;
        };
        std::vector<KnapsackInstance> all;
        all.push_back(make(0, {9}, {4, 6}, {{19, 16}}));
        all.push_back(make(1, {3}, {2, 2, 2, 3}, {{4, 4, 1, 2}}));
        all.push_back(make(2, {3}, {3, 2, 2, 2, 3, 2}, {{1, 3, 5, 2, 4, 1}}));
        all.push_back(make(3, {10}, {6, 6, 3, 7}, {{19, 19, 17, 17}}));
        all.push_back(make(4, {8}, {2, 6, 5, 5, 4}, {{15, 15, 16, 17, 17}}));
        all.push_back(make(5, {8}, {2, 4, 5, 2, 3}, {{18, 17, 19, 18, 19}}));
        all.push_back(make(6, {10}, {7, 1, 6, 7, 5, 3}, {{19, 17, 15, 17, 15, 18}}));
        all.push_back(make(7, {8}, {6, 7, 4, 3, 3, 2}, {{19, 18, 16, 18, 17, 16}}));
        all.push_back(make(8, {8}, {5, 4, 1, 5, 4, 1, 2, 3}, {{17, 16, 17, 15, 18, 17, 16, 18}}));
        all.push_back(make(9, {9}, {3, 2, 5, 1, 4, 4, 1, 4}, {{16, 17, 17, 19, 18, 16, 17, 19}}));
        all.push_back(make(10, {11, 8}, {2, 4, 4}, {{19, 16, 16}, {19, 16, 18}}));
        all.push_back(make(11, {8, 11}, {3, 6, 2}, {{18, 19, 17}, {18, 17, 18}}));
        all.push_back(make(12, {9, 9}, {4, 6, 4, 6}, {{19, 16, 19, 16}, {19, 16, 19, 16}}));
        all.push_back(make(13, {10, 10}, {7, 1, 5, 7}, {{18, 16, 15, 19}, {16, 17, 15, 16}}));
        all.push_back(make(14, {8, 8}, {7, 4, 3, 7, 4, 3},
                           {{15, 15, 18, 15, 15, 18}, {15, 15, 18, 15, 15, 18}}));
        all.push_back(make(15, {8, 8}, {5, 5, 5, 5, 5, 5},
                           {{19, 17, 18, 19, 17, 18}, {19, 17, 18, 19, 17, 18}}));
        all.push_back(make(16, {10, 10}, {6, 6, 3, 7, 6, 6, 3, 7},
                           {{19, 19, 17, 17, 19, 19, 17, 17}, {19, 19, 17, 17, 19, 19, 17, 17}}));
        all.push_back(make(17, {11, 9}, {1, 6, 4, 5, 7, 3, 4, 5},
                           {{19, 19, 17, 15, 19, 15, 16, 15}, {19, 15, 18, 15, 15, 18, 18, 17}}));
        all.push_back(make(18, {9, 10}, {3, 5, 2, 3, 2, 6, 5, 2, 7},
                           {{15, 18, 15, 17, 16, 18, 16, 16, 15}, {18, 15, 18, 17, 16, 16, 19, 18, 17}}));
        all.push_back(make(19, {8, 9}, {1, 5, 1, 1, 5, 7, 7, 5, 3},
                           {{18, 15, 15, 16, 17, 16, 19, 15, 17}, {18, 15, 16, 16, 16, 18, 15, 19, 15}}));
        all.push_back(make(20, {9, 9, 9}, {4, 6, 4, 6, 4, 6},
                           {{19, 16, 19, 16, 19, 16}, {19, 16, 19, 16, 19, 16}, {19, 16, 19, 16, 19, 16}}));
        all.push_back(make(21, {9, 10, 11}, {7, 6, 7, 5, 5, 4},
                           {{19, 16, 19, 17, 17, 19}, {16, 17, 19, 17, 18, 16}, {15, 16, 19, 17, 17, 19}}));
        return all;
    }();
    return catalog;
}

} // namespace qknap
