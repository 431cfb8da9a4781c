#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qknap/knapsack.hpp"

namespace qknap {

/// Variable layout of a knapsack QUBO. x-bit (knapsack k, item i) sits at
/// index k*N + i; slack bits follow all x-bits, knapsack-major, ascending
/// power 2^0 ... 2^floor(log2 c_k).
struct BitLayout {
    int num_x = 0;
    std::vector<std::pair<int, int>> slack_spans;  ///< per knapsack: (start, bit count)
    int total = 0;

    int x_index(int k, int i, int num_items) const { return k * num_items + i; }
};

inline int slack_bit_count(std::int64_t capacity) {
    // floor(log2 c) + 1 bits, representable slack range [0, 2^count - 1] >= c.
    return std::bit_width(static_cast<std::uint64_t>(capacity));
}

/// Layout with slack bits for every knapsack (the slack-QUBO variant).
inline BitLayout make_slack_layout(const KnapsackInstance& inst) {
    BitLayout layout;
    layout.num_x = inst.num_x_bits();
    int next = layout.num_x;
    for (int k = 0; k < inst.num_knapsacks(); ++k) {
        const int count = slack_bit_count(inst.capacities[static_cast<std::size_t>(k)]);
        layout.slack_spans.emplace_back(next, count);
        next += count;
    }
    layout.total = next;
    return layout;
}

/// Layout over x-bits only.
inline BitLayout make_x_layout(const KnapsackInstance& inst) {
    BitLayout layout;
    layout.num_x = inst.num_x_bits();
    layout.total = layout.num_x;
    return layout;
}

/// Sparse binary quadratic form E(x) = offset + sum_i linear_i x_i
/// + sum_{i<j} quadratic_ij x_i x_j. Squares of binaries fold into the
/// linear part, so quadratic keys always satisfy i < j.
struct QuadraticModel {
    int num_vars = 0;
    std::vector<double> linear;                      ///< size num_vars
    std::map<std::pair<int, int>, double> quadratic; ///< keys (i, j), i < j
    double offset = 0.0;
    BitLayout layout;

    explicit QuadraticModel(int n = 0) : num_vars(n), linear(static_cast<std::size_t>(n), 0.0) {}

    void add_linear(int i, double c) { linear[static_cast<std::size_t>(i)] += c; }

    void add_quadratic(int i, int j, double c) {
        if (i == j) {
            add_linear(i, c);  // x^2 = x for binary x
            return;
        }
        if (i > j) {
            std::swap(i, j);
        }
        auto [it, inserted] = quadratic.emplace(std::make_pair(i, j), c);
        if (!inserted) {
            it->second += c;
        }
    }

    /// Adds factor * other into this model (matching variable indices).
    void add_scaled(const QuadraticModel& other, double factor) {
        offset += factor * other.offset;
        for (int i = 0; i < other.num_vars; ++i) {
            if (other.linear[static_cast<std::size_t>(i)] != 0.0) {
                add_linear(i, factor * other.linear[static_cast<std::size_t>(i)]);
            }
        }
        for (const auto& [key, c] : other.quadratic) {
            add_quadratic(key.first, key.second, factor * c);
        }
    }
};

inline double qubo_energy(const QuadraticModel& q, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != q.num_vars) {
        throw std::invalid_argument("qubo_energy: expected " + std::to_string(q.num_vars) +
                                    " bits, got " + std::to_string(bits.size()));
    }
    double energy = q.offset;
    for (int i = 0; i < q.num_vars; ++i) {
        if (bits[static_cast<std::size_t>(i)]) {
            energy += q.linear[static_cast<std::size_t>(i)];
        }
    }
    for (const auto& [key, c] : q.quadratic) {
        if (bits[static_cast<std::size_t>(key.first)] && bits[static_cast<std::size_t>(key.second)]) {
            energy += c;
        }
    }
    return energy;
}

/// Penalty weights of the combined Hamiltonian
/// A * H_single + B * H_capacity + C * H_obj.
struct PenaltyWeights {
    double single_a = 1.0;
    double capacity_b = 1.0;
    double objective_c = 1.0;
};

enum class QuboVariant {
    Standard,  ///< capacity inequality encoded with slack bits
    NoSlack,   ///< capacity treated as an equality over x-bits only
};

/// Objective term, negated so that packing value lowers the energy:
/// -sum_k sum_i v_{k,i} x_{k,i}.
inline QuadraticModel term_h_obj(const KnapsackInstance& inst) {
    const int n = inst.num_items();
    QuadraticModel q(inst.num_x_bits());
    q.layout = make_x_layout(inst);
    for (int k = 0; k < inst.num_knapsacks(); ++k) {
        for (int i = 0; i < n; ++i) {
            q.add_linear(k * n + i, -static_cast<double>(inst.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]));
        }
    }
    return q;
}

/// Single-assignment penalty: for each item, (sum_k x)(sum_k x - 1) over the
/// knapsacks holding it. Zero iff every item is in at most one knapsack;
/// expands to 2 x_{k,i} x_{k',i} over knapsack pairs since x^2 = x.
inline QuadraticModel term_h_single(const KnapsackInstance& inst) {
    const int n = inst.num_items();
    QuadraticModel q(inst.num_x_bits());
    q.layout = make_x_layout(inst);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < inst.num_knapsacks(); ++k) {
            for (int k2 = k + 1; k2 < inst.num_knapsacks(); ++k2) {
                q.add_quadratic(k * n + i, k2 * n + i, 2.0);
            }
        }
    }
    return q;
}

namespace detail {

// Expands sum_k (sum_j a_j z_j - c_k)^2 where z runs over the given
// (index, coefficient) pairs for knapsack k.
inline void add_squared_load_terms(QuadraticModel& q, const std::vector<std::pair<int, double>>& terms,
                                   double capacity) {
    for (std::size_t a = 0; a < terms.size(); ++a) {
        const auto [ia, ca] = terms[a];
        q.add_linear(ia, ca * ca - 2.0 * capacity * ca);
        for (std::size_t b = a + 1; b < terms.size(); ++b) {
            const auto [ib, cb] = terms[b];
            q.add_quadratic(ia, ib, 2.0 * ca * cb);
        }
    }
    q.offset += capacity * capacity;
}

} // namespace detail

/// Slack-bit capacity penalty: sum_k (load_k + slack_k - c_k)^2 with
/// slack_k = sum_b 2^b y_{k,b}.
inline QuadraticModel term_h_capacity_slack(const KnapsackInstance& inst, const BitLayout& layout) {
    const int n = inst.num_items();
    QuadraticModel q(layout.total);
    q.layout = layout;
    for (int k = 0; k < inst.num_knapsacks(); ++k) {
        std::vector<std::pair<int, double>> terms;
        for (int i = 0; i < n; ++i) {
            terms.emplace_back(k * n + i, static_cast<double>(inst.weights[static_cast<std::size_t>(i)]));
        }
        const auto [start, count] = layout.slack_spans[static_cast<std::size_t>(k)];
        for (int b = 0; b < count; ++b) {
            terms.emplace_back(start + b, static_cast<double>(std::uint64_t{1} << b));
        }
        detail::add_squared_load_terms(q, terms, static_cast<double>(inst.capacities[static_cast<std::size_t>(k)]));
    }
    return q;
}

/// Equality-form capacity penalty over x-bits only: sum_k (load_k - c_k)^2.
inline QuadraticModel term_h_capacity_noslack(const KnapsackInstance& inst) {
    const int n = inst.num_items();
    QuadraticModel q(inst.num_x_bits());
    q.layout = make_x_layout(inst);
    for (int k = 0; k < inst.num_knapsacks(); ++k) {
        std::vector<std::pair<int, double>> terms;
        for (int i = 0; i < n; ++i) {
            terms.emplace_back(k * n + i, static_cast<double>(inst.weights[static_cast<std::size_t>(i)]));
        }
        detail::add_squared_load_terms(q, terms, static_cast<double>(inst.capacities[static_cast<std::size_t>(k)]));
    }
    return q;
}

/// A * H_single + B * H_capacity + C * H_obj. Standard spans x + slack bits,
/// NoSlack spans x-bits only.
inline QuadraticModel build_hamiltonian(const KnapsackInstance& inst, QuboVariant variant,
                                        const PenaltyWeights& weights) {
    if (weights.single_a <= 0.0 || weights.capacity_b <= 0.0 || weights.objective_c <= 0.0) {
        throw std::invalid_argument("penalty weights must be positive");
    }
    const BitLayout layout = (variant == QuboVariant::Standard) ? make_slack_layout(inst) : make_x_layout(inst);
    QuadraticModel q(layout.total);
    q.layout = layout;
    q.add_scaled(term_h_single(inst), weights.single_a);
    if (variant == QuboVariant::Standard) {
        q.add_scaled(term_h_capacity_slack(inst, layout), weights.capacity_b);
    } else {
        q.add_scaled(term_h_capacity_noslack(inst), weights.capacity_b);
    }
    q.add_scaled(term_h_obj(inst), weights.objective_c);
    return q;
}

/// The benchmark weight rule: B = sum of all weights plus sum of all values,
/// C = 1, and A = B with slack bits or A = 50 B without them (the equality
/// form needs the single-assignment constraint weighted harder).
inline PenaltyWeights default_weights(const KnapsackInstance& inst, QuboVariant variant) {
    std::int64_t b = 0;
    for (std::int64_t w : inst.weights) {
        b += w;
    }
    for (const auto& row : inst.values) {
        for (std::int64_t v : row) {
            b += v;
        }
    }
    PenaltyWeights weights;
    weights.capacity_b = static_cast<double>(b);
    weights.single_a = (variant == QuboVariant::Standard) ? static_cast<double>(b) : 50.0 * static_cast<double>(b);
    weights.objective_c = 1.0;
    return weights;
}

} // namespace qknap
