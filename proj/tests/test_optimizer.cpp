#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qknap/optimizer.hpp"

using namespace qknap;

namespace {

double squared_norm(const std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) {
        total += x * x;
    }
    return total;
}

// Higher-order reference gradient, used to cross-check the central
// differences on smooth circuit objectives.
std::vector<double> five_point_stencil(const ObjectiveFn& f, const std::vector<double>& params, double h) {
    std::vector<double> gradient(params.size());
    std::vector<double> probe = params;
    for (std::size_t k = 0; k < params.size(); ++k) {
        auto at = [&](double offset) {
            probe[k] = params[k] + offset;
            const double value = f(probe);
            probe[k] = params[k];
            return value;
        };
        gradient[k] = (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
    }
    return gradient;
}

} // namespace

TEST_CASE("central differences are exact up to quadratics") {
    const ObjectiveFn square = [](const std::vector<double>& x) { return x[0] * x[0]; };
    REQUIRE_THAT(finite_diff_gradient(square, {3.0}, 0.1)[0], Catch::Matchers::WithinAbs(6.0, 1e-12));

    const ObjectiveFn constant = [](const std::vector<double>&) { return 4.2; };
    const auto zero = finite_diff_gradient(constant, {1.0, 2.0, 3.0}, 0.1);
    for (double g : zero) {
        REQUIRE(g == 0.0);
    }

    const ObjectiveFn bilinear = [](const std::vector<double>& x) { return x[0] * x[1]; };
    const auto grad = finite_diff_gradient(bilinear, {2.0, 5.0}, 0.1);
    REQUIRE_THAT(grad[0], Catch::Matchers::WithinAbs(5.0, 1e-12));
    REQUIRE_THAT(grad[1], Catch::Matchers::WithinAbs(2.0, 1e-12));

    REQUIRE_THROWS_AS(finite_diff_gradient(square, {1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("second differences") {
    const ObjectiveFn square = [](const std::vector<double>& x) { return x[0] * x[0]; };
    REQUIRE_THAT(finite_diff_second(square, {3.0}, 0.1)[0], Catch::Matchers::WithinAbs(2.0, 1e-10));

    const ObjectiveFn linear = [](const std::vector<double>& x) { return 7.0 * x[0] - 1.0; };
    REQUIRE_THAT(finite_diff_second(linear, {3.0}, 0.1)[0], Catch::Matchers::WithinAbs(0.0, 1e-10));

    // quartic at 1 with eps 0.1: (1.1^4 - 2 + 0.9^4) / 0.01
    const ObjectiveFn quartic = [](const std::vector<double>& x) { return std::pow(x[0], 4.0); };
    REQUIRE_THAT(finite_diff_second(quartic, {1.0}, 0.1)[0], Catch::Matchers::WithinAbs(12.02, 1e-9));
}

TEST_CASE("gradients of polynomials match analytic values to machine precision") {
    const ObjectiveFn cubic = [](const std::vector<double>& x) { return std::pow(x[0], 3.0); };
    // derivative 3 t^2 with O(eps^2) bias: exact remainder is eps^2
    const double eps = 0.01;
    REQUIRE_THAT(finite_diff_gradient(cubic, {2.0}, eps)[0],
                 Catch::Matchers::WithinAbs(12.0 + eps * eps, 1e-10));
}

TEST_CASE("adam descends a convex quadratic") {
    const ObjectiveFn f = [](const std::vector<double>& x) { return x[0] * x[0] + x[1] * x[1]; };
    OptimizerConfig config;
    config.max_iterations = 2000;
    const OptimizationTrace trace = adam_minimize(f, {5.0, 5.0}, config);
    for (std::size_t t = 1; t < 100; ++t) {
        REQUIRE(trace.objective_values[t] < trace.objective_values[t - 1]);
    }
    REQUIRE(squared_norm(trace.final_params) < squared_norm({5.0, 5.0}));
    REQUIRE(trace.objective_values.back() < 1e-3);
}

TEST_CASE("the stopping criterion never fires on a plateau") {
    const ObjectiveFn flat = [](const std::vector<double>&) { return 0.0; };
    OptimizerConfig config;
    config.max_iterations = 200;
    const OptimizationTrace trace = adam_minimize(flat, {1.0}, config);
    REQUIRE(trace.stop_reason == StopReason::MaxIterations);
    REQUIRE(trace.iterations_used == 200);
}

TEST_CASE("the stopping criterion fires on a settled curved objective") {
    // Steep curvature and a tiny learning rate: the moving average settles
    // while the second derivative stays far above the threshold.
    const ObjectiveFn bowl = [](const std::vector<double>& x) { return 50.0 * x[0] * x[0]; };
    OptimizerConfig config;
    config.max_iterations = 500;
    const OptimizationTrace trace = adam_minimize(bowl, {0.05}, config);
    REQUIRE(trace.stop_reason == StopReason::Converged);
    REQUIRE(trace.iterations_used < 500);
}

TEST_CASE("adam is deterministic") {
    const ObjectiveFn f = [](const std::vector<double>& x) { return std::cos(x[0]) + x[1] * x[1]; };
    OptimizerConfig config;
    config.max_iterations = 50;
    const OptimizationTrace a = adam_minimize(f, {0.3, -0.8}, config);
    const OptimizationTrace b = adam_minimize(f, {0.3, -0.8}, config);
    REQUIRE(a.objective_values == b.objective_values);
    REQUIRE(a.final_params == b.final_params);
}

TEST_CASE("non-finite objectives abort with a diagnostic") {
    const ObjectiveFn nan_fn = [](const std::vector<double>&) { return std::nan(""); };
    OptimizerConfig config;
    REQUIRE_THROWS_WITH(adam_minimize(nan_fn, {1.0}, config),
                        Catch::Matchers::ContainsSubstring("non-finite"));
}

TEST_CASE("empty parameter vectors return immediately") {
    const ObjectiveFn f = [](const std::vector<double>&) { return 1.0; };
    const OptimizationTrace trace = adam_minimize(f, {}, OptimizerConfig{});
    REQUIRE(trace.iterations_used == 0);
    REQUIRE(trace.objective_values.empty());
}

TEST_CASE("exact-mode circuit objective is reproducible") {
    const KnapsackInstance& inst = load_catalog()[1];
    const PenaltyWeights weights = default_weights(inst, QuboVariant::NoSlack);
    const ProtocolSetup setup = prepare_protocol(inst, Protocol::NoSlack, weights);
    const CircuitObjective objective(inst, setup, Protocol::NoSlack, 0, 1);
    const CircuitParams params = derive_params({ScheduleKind::Sinusoidal, 0.75, 2, 0});
    REQUIRE(objective(params) == objective(params));
}

TEST_CASE("sampled circuit objective sees fresh noise per call") {
    const KnapsackInstance& inst = load_catalog()[1];
    const PenaltyWeights weights = default_weights(inst, QuboVariant::NoSlack);
    const ProtocolSetup setup = prepare_protocol(inst, Protocol::NoSlack, weights);
    const CircuitObjective objective(inst, setup, Protocol::NoSlack, 500, 1);
    const CircuitParams params = derive_params({ScheduleKind::Sinusoidal, 0.75, 2, 0});
    REQUIRE(objective(params) != objective(params));
}

TEST_CASE("central differences match a five-point stencil on the exact expectation") {
    const KnapsackInstance& inst = load_catalog()[1];  // 4 x-bits
    const PenaltyWeights weights = default_weights(inst, QuboVariant::NoSlack);
    const ProtocolSetup setup = prepare_protocol(inst, Protocol::NoSlack, weights);
    const CircuitObjective objective(inst, setup, Protocol::NoSlack, 0, 1);
    const ObjectiveFn f = [&](const std::vector<double>& flat) { return objective(unpack_params(flat)); };

    const std::vector<double> at = pack_params(derive_params({ScheduleKind::Sinusoidal, 0.75, 2, 0}));
    const std::vector<double> central = finite_diff_gradient(f, at, 1e-3);
    const std::vector<double> reference = five_point_stencil(f, at, 0.02);
    for (std::size_t k = 0; k < at.size(); ++k) {
        REQUIRE_THAT(central[k], Catch::Matchers::WithinAbs(reference[k], 1e-4));
    }
}

TEST_CASE("qaoa optimization improves the exact expectation") {
    const KnapsackInstance& inst = load_catalog()[1];
    const PenaltyWeights weights = default_weights(inst, QuboVariant::NoSlack);
    OptimizerConfig config;
    config.max_iterations = 120;
    const ScheduleSpec schedule{ScheduleKind::Sinusoidal, 0.75, 3, 0};
    const QaoaResult result = optimize_qaoa(inst, Protocol::NoSlack, schedule, weights, 0, 7, config);
    REQUIRE(result.trace.iterations_used > 0);

    const ProtocolSetup setup = prepare_protocol(inst, Protocol::NoSlack, weights);
    const CircuitObjective objective(inst, setup, Protocol::NoSlack, 0, 1);
    const double initial = objective(derive_params(schedule));
    const double final_value = objective(result.params);
    REQUIRE(final_value <= initial);
}

TEST_CASE("p = 0 qaoa has nothing to optimize") {
    const KnapsackInstance& inst = load_catalog()[0];
    const ScheduleSpec schedule{ScheduleKind::Sinusoidal, 0.75, 0, 0};
    const QaoaResult result = optimize_qaoa(inst, Protocol::NoSlack, schedule,
                                            default_weights(inst, QuboVariant::NoSlack), 0, 1,
                                            OptimizerConfig{});
    REQUIRE(result.params.layers() == 0);
    REQUIRE(result.trace.iterations_used == 0);
}

TEST_CASE("annealing-time optimization") {
    const KnapsackInstance& inst = load_catalog()[1];
    const PenaltyWeights weights = default_weights(inst, QuboVariant::NoSlack);
    OptimizerConfig config;
    config.max_iterations = 40;

    SECTION("single layer reduces to a flat scan") {
        // With one sinusoidal step the mixer angle is zero, so the final
        // distribution is independent of T; a grid scan confirms it.
        const AnnealingTimeResult result =
            optimize_annealing_time(inst, Protocol::NoSlack, ScheduleKind::Sinusoidal, 1, weights, 0, 3, config);
        const ProtocolSetup setup = prepare_protocol(inst, Protocol::NoSlack, weights);
        const CircuitObjective objective(inst, setup, Protocol::NoSlack, 0, 1);
        double grid_best = 1e300;
        for (int g = 1; g <= 50; ++g) {
            const double t = 0.1 * g;
            grid_best =
                std::min(grid_best, objective(derive_params({ScheduleKind::Sinusoidal, t / 1, 1, 0})));
        }
        const double returned = objective(derive_params({ScheduleKind::Sinusoidal, result.best_time / 1, 1, 0}));
        REQUIRE_THAT(returned, Catch::Matchers::WithinAbs(grid_best, 1e-9));
    }

    SECTION("two layers improve on the initial time") {
        const AnnealingTimeResult result =
            optimize_annealing_time(inst, Protocol::NoSlack, ScheduleKind::Sinusoidal, 2, weights, 0, 3, config);
        REQUIRE(result.best_time > 0.0);
        const ProtocolSetup setup = prepare_protocol(inst, Protocol::NoSlack, weights);
        const CircuitObjective objective(inst, setup, Protocol::NoSlack, 0, 1);
        const double at_init = objective(derive_params({ScheduleKind::Sinusoidal, 0.75, 2, 0}));
        const double at_best =
            objective(derive_params({ScheduleKind::Sinusoidal, result.best_time / 2, 2, 0}));
        REQUIRE(at_best <= at_init);
    }

    SECTION("deterministic under a fixed seed") {
        const AnnealingTimeResult a =
            optimize_annealing_time(inst, Protocol::NoSlack, ScheduleKind::Sinusoidal, 2, weights, 800, 3, config);
        const AnnealingTimeResult b =
            optimize_annealing_time(inst, Protocol::NoSlack, ScheduleKind::Sinusoidal, 2, weights, 800, 3, config);
        REQUIRE(a.best_time == b.best_time);
        REQUIRE(a.trace.objective_values == b.trace.objective_values);
    }
}
