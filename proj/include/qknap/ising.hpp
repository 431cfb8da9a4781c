#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qknap/qubo.hpp"

namespace qknap {

/// Spin form of a QUBO: E(z) = offset + sum_i h_i z_i + sum_{i<j} J_ij z_i z_j
/// with z_i in {+1, -1} and the map x_i = (1 - z_i) / 2. nu_max records the
/// accumulated normalization divisor (1.0 for an unnormalized model).
struct IsingModel {
    int num_vars = 0;
    std::vector<double> h;
    std::map<std::pair<int, int>, double> coupling;  ///< J, keys (i, j) with i < j
    double offset = 0.0;
    double nu_max = 1.0;

    explicit IsingModel(int n = 0) : num_vars(n), h(static_cast<std::size_t>(n), 0.0) {}
};

/// Substitute x_i = (1 - z_i) / 2; energies agree with the QUBO on every
/// bitstring under z = 1 - 2x.
inline IsingModel qubo_to_ising(const QuadraticModel& q) {
    IsingModel m(q.num_vars);
    m.offset = q.offset;
    for (int i = 0; i < q.num_vars; ++i) {
        const double a = q.linear[static_cast<std::size_t>(i)];
        m.offset += a / 2.0;
        m.h[static_cast<std::size_t>(i)] -= a / 2.0;
    }
    for (const auto& [key, b] : q.quadratic) {
        m.offset += b / 4.0;
        m.h[static_cast<std::size_t>(key.first)] -= b / 4.0;
        m.h[static_cast<std::size_t>(key.second)] -= b / 4.0;
        auto [it, inserted] = m.coupling.emplace(key, b / 4.0);
        if (!inserted) {
            it->second += b / 4.0;
        }
    }
    return m;
}

inline double ising_energy(const IsingModel& m, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != m.num_vars) {
        throw std::invalid_argument("ising_energy: expected " + std::to_string(m.num_vars) +
                                    " bits, got " + std::to_string(bits.size()));
    }
    auto spin = [&](int i) { return bits[static_cast<std::size_t>(i)] ? -1.0 : 1.0; };
    double energy = m.offset;
    for (int i = 0; i < m.num_vars; ++i) {
        energy += m.h[static_cast<std::size_t>(i)] * spin(i);
    }
    for (const auto& [key, j] : m.coupling) {
        energy += j * spin(key.first) * spin(key.second);
    }
    return energy;
}

/// Divide h, J and the offset by nu_max = max(max|h|, max|J|), so the largest
/// coefficient magnitude of the result is 1. The divisor accumulates into
/// nu_max, which makes normalization idempotent. Throws on an all-zero model.
inline IsingModel normalize_ising(const IsingModel& m) {
    double scale = 0.0;
    for (double hi : m.h) {
        scale = std::max(scale, std::abs(hi));
    }
    for (const auto& [key, j] : m.coupling) {
        scale = std::max(scale, std::abs(j));
    }
    if (scale == 0.0) {
        throw std::invalid_argument("normalize_ising: model has no nonzero coefficient");
    }
    IsingModel out(m.num_vars);
    out.offset = m.offset / scale;
    out.nu_max = m.nu_max * scale;
    for (int i = 0; i < m.num_vars; ++i) {
        out.h[static_cast<std::size_t>(i)] = m.h[static_cast<std::size_t>(i)] / scale;
    }
    for (const auto& [key, j] : m.coupling) {
        out.coupling.emplace(key, j / scale);
    }
    return out;
}

} // namespace qknap
