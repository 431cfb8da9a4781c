#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qknap/evaluation.hpp"
#include "qknap/rng.hpp"
#include "qknap/schedule.hpp"
#include "qknap/statevector.hpp"

namespace qknap {

/// Adam settings plus the windowed stopping criterion: every `window` steps
/// the moving average of the last `window` objective values is compared with
/// the previous checkpoint's average; the run stops once the change falls
/// below f_window while the finite-difference second derivative exceeds f_sd
/// in every dimension (which rules out plateaus).
struct OptimizerConfig {
    double learning_rate = 0.01;
    int window = 10;
    double f_window = 10.0;
    double f_sd = 10.0;
    double fd_step = 0.1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps_adam = 1e-8;
    int max_iterations = 1000;
};

enum class StopReason {
    Converged,
    MaxIterations,
};

struct OptimizationTrace {
    std::vector<double> objective_values;  ///< one entry per iteration
    std::vector<double> final_params;
    int iterations_used = 0;
    StopReason stop_reason = StopReason::MaxIterations;
};

using ObjectiveFn = std::function<double(const std::vector<double>&)>;

/// Central differences (f(x + e) - f(x - e)) / 2e per dimension.
inline std::vector<double> finite_diff_gradient(const ObjectiveFn& f, const std::vector<double>& params,
                                                double eps) {
    if (eps <= 0.0) {
        throw std::invalid_argument("finite_diff_gradient: step must be positive");
    }
    std::vector<double> gradient(params.size());
    std::vector<double> probe = params;
    for (std::size_t k = 0; k < params.size(); ++k) {
        probe[k] = params[k] + eps;
        const double up = f(probe);
        probe[k] = params[k] - eps;
        const double down = f(probe);
        probe[k] = params[k];
        gradient[k] = (up - down) / (2.0 * eps);
    }
    return gradient;
}

/// Second-order central differences (f(x + e) - 2 f(x) + f(x - e)) / e^2.
inline std::vector<double> finite_diff_second(const ObjectiveFn& f, const std::vector<double>& params,
                                              double eps) {
    if (eps <= 0.0) {
        throw std::invalid_argument("finite_diff_second: step must be positive");
    }
    const double center = f(params);
    std::vector<double> second(params.size());
    std::vector<double> probe = params;
    for (std::size_t k = 0; k < params.size(); ++k) {
        probe[k] = params[k] + eps;
        const double up = f(probe);
        probe[k] = params[k] - eps;
        const double down = f(probe);
        probe[k] = params[k];
        second[k] = (up - 2.0 * center + down) / (eps * eps);
    }
    return second;
}

namespace detail {

inline void check_finite(double value, int iteration) {
    if (!std::isfinite(value)) {
        throw std::runtime_error("adam_minimize: objective returned a non-finite value at iteration " +
                                 std::to_string(iteration));
    }
}

} // namespace detail

/// Adam descent with numerically estimated gradients. `project`, when given,
/// clamps the parameters after each update (used by the annealing-time mode).
inline OptimizationTrace adam_minimize(const ObjectiveFn& f, const std::vector<double>& init_params,
                                       const OptimizerConfig& config,
                                       const std::function<void(std::vector<double>&)>& project = {}) {
    if (config.window < 2) {
        throw std::invalid_argument("adam_minimize: window must be at least 2");
    }
    OptimizationTrace trace;
    trace.final_params = init_params;
    if (init_params.empty()) {
        trace.iterations_used = 0;
        trace.stop_reason = StopReason::Converged;
        return trace;
    }

    std::vector<double> params = init_params;
    std::vector<double> m(params.size(), 0.0);
    std::vector<double> v(params.size(), 0.0);
    bool have_checkpoint = false;
    double checkpoint_average = 0.0;

    for (int t = 1; t <= config.max_iterations; ++t) {
        const double value = f(params);
        detail::check_finite(value, t);
        trace.objective_values.push_back(value);
        trace.iterations_used = t;

        if (t % config.window == 0) {
            const auto tail = trace.objective_values.end();
            const double average =
                std::accumulate(tail - config.window, tail, 0.0) / static_cast<double>(config.window);
            if (have_checkpoint && std::abs(average - checkpoint_average) < config.f_window) {
                const std::vector<double> second = finite_diff_second(f, params, config.fd_step);
                const bool curved = std::all_of(second.begin(), second.end(),
                                                [&](double s) { return s > config.f_sd; });
                if (curved) {
                    trace.stop_reason = StopReason::Converged;
                    trace.final_params = params;
                    return trace;
                }
            }
            have_checkpoint = true;
            checkpoint_average = average;
        }

        const std::vector<double> gradient = finite_diff_gradient(f, params, config.fd_step);
        for (std::size_t k = 0; k < params.size(); ++k) {
            m[k] = config.beta1 * m[k] + (1.0 - config.beta1) * gradient[k];
            v[k] = config.beta2 * v[k] + (1.0 - config.beta2) * gradient[k] * gradient[k];
            const double m_hat = m[k] / (1.0 - std::pow(config.beta1, t));
            const double v_hat = v[k] / (1.0 - std::pow(config.beta2, t));
            params[k] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.eps_adam);
        }
        if (project) {
            project(params);
        }
    }
    trace.stop_reason = StopReason::MaxIterations;
    trace.final_params = params;
    return trace;
}

/// Expectation of the protocol objective at the given angles. shots == 0
/// evaluates the exact distribution; otherwise a fresh multinomial sample of
/// the given size is drawn per call from the provided seed stream.
class CircuitObjective {
  public:
    CircuitObjective(const KnapsackInstance& inst, const ProtocolSetup& setup, Protocol protocol,
                     std::uint64_t shots, std::uint64_t seed, int max_qubits = kDefaultMaxQubits)
        : inst_(inst), setup_(setup), protocol_(protocol), shots_(shots), seed_(seed), max_qubits_(max_qubits) {}

    double operator()(const CircuitParams& params) const {
        const StateVector psi = run_circuit(setup_.diagonal, params, max_qubits_);
        const QuadraticModel* standard =
            protocol_ == Protocol::StandardSlack ? &setup_.circuit_qubo : nullptr;
        if (shots_ == 0) {
            return expectation(exact_distribution(psi), psi.num_qubits, protocol_, inst_, setup_.weights,
                               standard);
        }
        const SampleSet samples = sample(psi, shots_, mix_seed(seed_, calls_++));
        return expectation(samples, protocol_, inst_, setup_.weights, standard);
    }

  private:
    const KnapsackInstance& inst_;
    const ProtocolSetup& setup_;
    Protocol protocol_;
    std::uint64_t shots_;
    std::uint64_t seed_;
    int max_qubits_;
    mutable std::uint64_t calls_ = 0;
};

/// Flat parameter vector layout used by the QAOA optimizer:
/// [beta_1..beta_p, gamma_1..gamma_p].
inline std::vector<double> pack_params(const CircuitParams& params) {
    std::vector<double> flat = params.betas;
    flat.insert(flat.end(), params.gammas.begin(), params.gammas.end());
    return flat;
}

inline CircuitParams unpack_params(const std::vector<double>& flat) {
    CircuitParams params;
    const std::size_t p = flat.size() / 2;
    params.betas.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(p));
    params.gammas.assign(flat.begin() + static_cast<std::ptrdiff_t>(p), flat.end());
    return params;
}

struct QaoaResult {
    CircuitParams params;
    OptimizationTrace trace;
};

/// Adam-optimized QAOA run: angles start from the schedule, the objective is
/// the protocol expectation over a fresh sample per evaluation (or the exact
/// distribution when shots == 0). p = 0 returns empty parameters untouched.
inline QaoaResult optimize_qaoa(const KnapsackInstance& inst, Protocol protocol, const ScheduleSpec& schedule,
                                const PenaltyWeights& weights, std::uint64_t shots, std::uint64_t seed,
                                const OptimizerConfig& config, int max_qubits = kDefaultMaxQubits) {
    QaoaResult result;
    if (schedule.layers == 0) {
        result.trace.stop_reason = StopReason::Converged;
        return result;
    }
    const ProtocolSetup setup = prepare_protocol(inst, protocol, weights, max_qubits);
    const CircuitObjective objective(inst, setup, protocol, shots, seed, max_qubits);
    const CircuitParams init = derive_params(schedule);
    const ObjectiveFn f = [&](const std::vector<double>& flat) { return objective(unpack_params(flat)); };
    result.trace = adam_minimize(f, pack_params(init), config);
    result.params = unpack_params(result.trace.final_params);
    return result;
}

struct AnnealingTimeResult {
    double best_time = 0.0;
    OptimizationTrace trace;
};

/// Variational annealing time: a single Adam-driven parameter T > 0, with the
/// layer angles rederived from the schedule at dt = T / p on every
/// evaluation. T is floored at 1e-3 after each update.
inline AnnealingTimeResult optimize_annealing_time(const KnapsackInstance& inst, Protocol protocol,
                                                   ScheduleKind kind, int layers, const PenaltyWeights& weights,
                                                   std::uint64_t shots, std::uint64_t seed,
                                                   const OptimizerConfig& config,
                                                   int max_qubits = kDefaultMaxQubits) {
    if (layers < 1) {
        throw std::invalid_argument("optimize_annealing_time: layer count must be positive");
    }
    constexpr double kMinTime = 1e-3;
    const ProtocolSetup setup = prepare_protocol(inst, protocol, weights, max_qubits);
    const CircuitObjective objective(inst, setup, protocol, shots, seed, max_qubits);
    const ObjectiveFn f = [&](const std::vector<double>& theta) {
        ScheduleSpec spec{kind, std::max(theta[0], kMinTime) / layers, layers, 0};
        return objective(derive_params(spec));
    };
    const auto project = [&](std::vector<double>& theta) { theta[0] = std::max(theta[0], kMinTime); };

    AnnealingTimeResult result;
    result.trace = adam_minimize(f, {0.75 * layers}, config, project);
    result.best_time = std::max(result.trace.final_params[0], kMinTime);
    return result;
}

} // namespace qknap
