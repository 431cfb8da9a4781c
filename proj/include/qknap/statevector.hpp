#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "qknap/ising.hpp"
#include "qknap/rng.hpp"

namespace qknap {

/// Hard cap on simulator width unless the caller raises it; 26 qubits is
/// about 1 GiB of complex-double amplitudes.
inline constexpr int kDefaultMaxQubits = 26;

/// Per-layer mixing/phase angle pairs shared by the schedule-driven and the
/// variational circuit. betas and gammas always have equal length p.
struct CircuitParams {
    std::vector<double> betas;
    std::vector<double> gammas;

    int layers() const { return static_cast<int>(betas.size()); }
};

/// Dense register of 2^n complex amplitudes; basis index b carries qubit q as
/// bit q (qubit 0 least significant).
struct StateVector {
    int num_qubits = 0;
    std::vector<std::complex<double>> amplitudes;
};

inline void check_qubit_budget(int n, int max_qubits) {
    if (n < 1) {
        throw std::invalid_argument("state width must be at least one qubit");
    }
    if (n > max_qubits) {
        throw std::invalid_argument("state width " + std::to_string(n) + " exceeds the configured maximum of " +
                                    std::to_string(max_qubits) + " qubits");
    }
}

/// |-><-|^n register: amplitude of index b is (-1)^popcount(b) / sqrt(2^n),
/// the ground state of the transverse mixer.
inline StateVector init_minus_state(int n, int max_qubits = kDefaultMaxQubits) {
    check_qubit_budget(n, max_qubits);
    StateVector psi;
    psi.num_qubits = n;
    const std::uint64_t size = std::uint64_t{1} << n;
    const double mag = 1.0 / std::sqrt(static_cast<double>(size));
    psi.amplitudes.resize(size);
    for (std::uint64_t b = 0; b < size; ++b) {
        psi.amplitudes[b] = (std::popcount(b) & 1) ? -mag : mag;
    }
    return psi;
}

/// Energy table of a diagonal Hamiltonian: energies[b] is the Ising energy
/// (offset included) of basis state b. Built once per model and shared across
/// layers and optimizer iterations.
struct DiagonalHamiltonian {
    int num_qubits = 0;
    std::vector<double> energies;
};

/// Tabulates all 2^n energies of an Ising model. Each entry extends the
/// entry with its lowest set bit cleared, so the cost is O(2^n * degree)
/// rather than O(2^n * terms).
inline DiagonalHamiltonian build_diagonal(const IsingModel& m, int max_qubits = kDefaultMaxQubits) {
    check_qubit_budget(m.num_vars, max_qubits);
    const int n = m.num_vars;
    std::vector<std::vector<std::pair<int, double>>> adjacency(static_cast<std::size_t>(n));
    double all_plus = m.offset;
    for (int i = 0; i < n; ++i) {
        all_plus += m.h[static_cast<std::size_t>(i)];
    }
    for (const auto& [key, j] : m.coupling) {
        all_plus += j;
        adjacency[static_cast<std::size_t>(key.first)].emplace_back(key.second, j);
        adjacency[static_cast<std::size_t>(key.second)].emplace_back(key.first, j);
    }

    DiagonalHamiltonian diag;
    diag.num_qubits = n;
    const std::uint64_t size = std::uint64_t{1} << n;
    diag.energies.resize(size);
    diag.energies[0] = all_plus;  // all bits 0 <=> all spins +1
    for (std::uint64_t b = 1; b < size; ++b) {
        const int q = std::countr_zero(b);
        const std::uint64_t prev = b & (b - 1);
        // flip spin q from +1 to -1 against the configuration `prev`
        double delta = -2.0 * m.h[static_cast<std::size_t>(q)];
        for (const auto& [j, coupling] : adjacency[static_cast<std::size_t>(q)]) {
            const double spin_j = ((prev >> j) & 1u) ? -1.0 : 1.0;
            delta -= 2.0 * coupling * spin_j;
        }
        diag.energies[b] = diag.energies[prev] + delta;
    }
    return diag;
}

/// Phase separation e^{-i gamma H} for diagonal H: an elementwise complex
/// rotation. Leaves every basis-state probability unchanged.
inline void apply_phase(StateVector& psi, const DiagonalHamiltonian& diag, double gamma) {
    if (diag.num_qubits != psi.num_qubits) {
        throw std::invalid_argument("apply_phase: diagonal has " + std::to_string(diag.num_qubits) +
                                    " qubits, state has " + std::to_string(psi.num_qubits));
    }
    const std::uint64_t size = std::uint64_t{1} << psi.num_qubits;
    for (std::uint64_t b = 0; b < size; ++b) {
        const double angle = -gamma * diag.energies[b];
        psi.amplitudes[b] *= std::complex<double>(std::cos(angle), std::sin(angle));
    }
}

/// Transverse mixer e^{-i beta sum_q X_q}, applied as n single-qubit passes
/// with the 2x2 unitary [[cos b, -i sin b], [-i sin b, cos b]].
inline void apply_mixer(StateVector& psi, double beta) {
    const double c = std::cos(beta);
    const std::complex<double> ms(0.0, -std::sin(beta));
    const std::uint64_t size = std::uint64_t{1} << psi.num_qubits;
    for (int q = 0; q < psi.num_qubits; ++q) {
        const std::uint64_t step = std::uint64_t{1} << q;
        for (std::uint64_t base = 0; base < size; base += 2 * step) {
            for (std::uint64_t offset = 0; offset < step; ++offset) {
                const std::uint64_t i0 = base + offset;
                const std::uint64_t i1 = i0 + step;
                const std::complex<double> a0 = psi.amplitudes[i0];
                const std::complex<double> a1 = psi.amplitudes[i1];
                psi.amplitudes[i0] = c * a0 + ms * a1;
                psi.amplitudes[i1] = ms * a0 + c * a1;
            }
        }
    }
}

/// Layered circuit of Eq.-style alternation: start in |->^n, then for each
/// layer l apply the phase operator with gamma_l followed by the mixer with
/// beta_l. p = 0 returns the initial state.
inline StateVector run_circuit(const DiagonalHamiltonian& diag, const CircuitParams& params,
                               int max_qubits = kDefaultMaxQubits) {
    if (params.betas.size() != params.gammas.size()) {
        throw std::invalid_argument("run_circuit: betas and gammas must have equal length");
    }
    StateVector psi = init_minus_state(diag.num_qubits, max_qubits);
    for (int l = 0; l < params.layers(); ++l) {
        apply_phase(psi, diag, params.gammas[static_cast<std::size_t>(l)]);
        apply_mixer(psi, params.betas[static_cast<std::size_t>(l)]);
    }
    return psi;
}

inline std::vector<double> exact_distribution(const StateVector& psi) {
    std::vector<double> probs(psi.amplitudes.size());
    for (std::size_t b = 0; b < psi.amplitudes.size(); ++b) {
        probs[b] = std::norm(psi.amplitudes[b]);
    }
    return probs;
}

inline double state_norm(const StateVector& psi) {
    double total = 0.0;
    for (const auto& a : psi.amplitudes) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

/// Measured bitstring counts. Keys are basis indices; serialization renders
/// them qubit-0-first.
struct SampleSet {
    std::uint64_t shots = 0;
    int num_qubits = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
};

/// Multinomial draw from the exact distribution, deterministic given the
/// seed. Sorted uniforms are swept through the cumulative probabilities in
/// one pass, so no table of 2^n partial sums is materialized.
inline SampleSet sample(const StateVector& psi, std::uint64_t shots, std::uint64_t rng_seed) {
    if (shots < 1) {
        throw std::invalid_argument("sample: shots must be at least 1");
    }
    std::mt19937_64 rng(rng_seed);
    std::vector<double> draws(shots);
    for (auto& u : draws) {
        u = uniform_unit(rng);
    }
    std::sort(draws.begin(), draws.end());

    SampleSet set;
    set.shots = shots;
    set.num_qubits = psi.num_qubits;
    const std::uint64_t size = std::uint64_t{1} << psi.num_qubits;
    double cumulative = 0.0;
    std::size_t next = 0;
    std::uint64_t last_occupied = 0;
    for (std::uint64_t b = 0; b < size && next < draws.size(); ++b) {
        const double p = std::norm(psi.amplitudes[b]);
        if (p == 0.0) {
            continue;
        }
        last_occupied = b;
        cumulative += p;
        std::uint64_t hits = 0;
        while (next < draws.size() && draws[next] < cumulative) {
            ++hits;
            ++next;
        }
        if (hits > 0) {
            set.counts[b] += hits;
        }
    }
    // Rounding can leave the cumulative sum a hair under the largest draws.
    if (next < draws.size()) {
        set.counts[last_occupied] += draws.size() - next;
    }
    return set;
}

} // namespace qknap
