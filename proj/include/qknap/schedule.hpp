#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "qknap/rng.hpp"
#include "qknap/statevector.hpp"

namespace qknap {

enum class ScheduleKind {
    Sinusoidal,    ///< s(l dt) = sin^2[(pi/2) sin^2(pi l / 2p)]
    Linear,        ///< s(l dt) = l / p
    RandomAngles,  ///< beta in [0, pi], gamma in [0, 2 pi], seeded
};

/// Annealing-schedule choice plus the Trotter step size. delta_t and rng_seed
/// are ignored where the kind does not use them.
struct ScheduleSpec {
    ScheduleKind kind = ScheduleKind::Sinusoidal;
    double delta_t = 0.75;
    int layers = 1;
    std::uint64_t rng_seed = 0;
};

/// Schedule value at Trotter step l of p, in [0, 1] with s(p) = 1.
inline double s_value(ScheduleKind kind, int l, int p) {
    if (l < 1 || l > p) {
        throw std::invalid_argument("s_value: step " + std::to_string(l) + " outside 1.." + std::to_string(p));
    }
    switch (kind) {
        case ScheduleKind::Linear:
            return static_cast<double>(l) / static_cast<double>(p);
        case ScheduleKind::Sinusoidal: {
            const double inner = std::sin(std::numbers::pi * l / (2.0 * p));
            const double outer = std::sin(std::numbers::pi / 2.0 * inner * inner);
            return outer * outer;
        }
        case ScheduleKind::RandomAngles:
            break;
    }
    throw std::invalid_argument("s_value: random angles have no schedule value");
}

/// Angles from the schedule: beta_l = (1 - s(l dt)) dt and gamma_l = s(l dt) dt
/// for step l = 1..p (first Trotter step acts first). RandomAngles draws
/// beta_l then gamma_l per layer from the seeded generator.
inline CircuitParams derive_params(const ScheduleSpec& spec) {
    if (spec.layers < 1) {
        throw std::invalid_argument("derive_params: layer count must be positive");
    }
    CircuitParams params;
    params.betas.reserve(static_cast<std::size_t>(spec.layers));
    params.gammas.reserve(static_cast<std::size_t>(spec.layers));
    if (spec.kind == ScheduleKind::RandomAngles) {
        std::mt19937_64 rng(spec.rng_seed);
        for (int l = 1; l <= spec.layers; ++l) {
            params.betas.push_back(uniform_unit(rng) * std::numbers::pi);
            params.gammas.push_back(uniform_unit(rng) * 2.0 * std::numbers::pi);
        }
        return params;
    }
    if (spec.delta_t <= 0.0) {
        throw std::invalid_argument("derive_params: delta_t must be positive");
    }
    for (int l = 1; l <= spec.layers; ++l) {
        const double s = s_value(spec.kind, l, spec.layers);
        params.betas.push_back((1.0 - s) * spec.delta_t);
        params.gammas.push_back(s * spec.delta_t);
    }
    return params;
}

inline std::string to_string(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::Sinusoidal:
            return "sine";
        case ScheduleKind::Linear:
            return "linear";
        case ScheduleKind::RandomAngles:
            return "random";
    }
    return "unknown";
}

inline ScheduleKind schedule_kind_from_string(const std::string& name) {
    if (name == "sine" || name == "sinusoidal") {
        return ScheduleKind::Sinusoidal;
    }
    if (name == "linear") {
        return ScheduleKind::Linear;
    }
    if (name == "random") {
        return ScheduleKind::RandomAngles;
    }
    throw std::invalid_argument("unknown schedule kind: " + name);
}

} // namespace qknap
