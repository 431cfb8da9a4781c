// Command-line front end for the knapsack variational-optimization toolkit:
// catalog access, exact solving, QUBO export, experiment sweeps, result
// reports and reference-table verification.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qknap/qknap.hpp"

namespace {

qknap::KnapsackInstance resolve_instance(const std::string& ref) {
    // A bare integer selects a catalog scenario, anything else is a file path.
    if (!ref.empty() && ref.find_first_not_of("0123456789") == std::string::npos) {
        const int id = std::stoi(ref);
        const auto& catalog = qknap::load_catalog();
        if (id < 0 || id >= static_cast<int>(catalog.size())) {
            throw std::invalid_argument("scenario id out of range: " + ref);
        }
        return catalog[static_cast<std::size_t>(id)];
    }
    return qknap::load_instance_file(ref);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << text;
}

int run_instances_list() {
    std::cout << "scenario  knapsacks  items  x_bits  slack_bits  capacities\n";
    for (const auto& inst : qknap::load_catalog()) {
        const qknap::BitLayout layout = qknap::make_slack_layout(inst);
        std::ostringstream caps;
        for (std::size_t k = 0; k < inst.capacities.size(); ++k) {
            caps << (k == 0 ? "" : ",") << inst.capacities[k];
        }
        char line[160];
        std::snprintf(line, sizeof(line), "%-9d %-10d %-6d %-7d %-11d (%s)\n", inst.scenario_id.value_or(-1),
                      inst.num_knapsacks(), inst.num_items(), inst.num_x_bits(),
                      layout.total - layout.num_x, caps.str().c_str());
        std::cout << line;
    }
    return 0;
}

int run_instances_export(int scenario, const std::string& output) {
    if (scenario >= 0) {
        const auto& catalog = qknap::load_catalog();
        if (scenario >= static_cast<int>(catalog.size())) {
            throw std::invalid_argument("scenario id out of range: " + std::to_string(scenario));
        }
        write_text(output, qknap::serialize_instance(catalog[static_cast<std::size_t>(scenario)]) + "\n");
        return 0;
    }
    nlohmann::json all = nlohmann::json::array();
    for (const auto& inst : qknap::load_catalog()) {
        all.push_back(qknap::instance_to_json(inst));
    }
    write_text(output, all.dump(2) + "\n");
    return 0;
}

int run_solve(const std::string& ref, bool show_assignments) {
    const qknap::KnapsackInstance inst = resolve_instance(ref);
    const qknap::OracleResult oracle = qknap::brute_force_solve(inst);
    std::cout << "optimal_value: " << oracle.optimal_value << "\n";
    std::cout << "num_optimal: " << oracle.optimal_assignments.size() << "\n";
    std::cout << "count_90pct: " << oracle.count_90pct << "\n";
    if (show_assignments) {
        for (const auto& a : oracle.optimal_assignments) {
            std::cout << "  " << qknap::bitstring_from_index(a.x_key(), inst.num_x_bits()) << "\n";
        }
    }
    return 0;
}

int run_qubo_build(const std::string& ref, const std::string& variant_name, const std::string& export_path,
                   double a, double b, double c) {
    const qknap::KnapsackInstance inst = resolve_instance(ref);
    const qknap::QuboVariant variant =
        variant_name == "standard" ? qknap::QuboVariant::Standard : qknap::QuboVariant::NoSlack;
    qknap::PenaltyWeights weights = qknap::default_weights(inst, variant);
    if (a > 0) {
        weights.single_a = a;
    }
    if (b > 0) {
        weights.capacity_b = b;
    }
    if (c > 0) {
        weights.objective_c = c;
    }
    const qknap::QuadraticModel model = qknap::build_hamiltonian(inst, variant, weights);
    std::cout << "variant: " << variant_name << "\n";
    std::cout << "num_vars: " << model.num_vars << " (x: " << model.layout.num_x
              << ", slack: " << model.layout.total - model.layout.num_x << ")\n";
    std::cout << "weights: A=" << weights.single_a << " B=" << weights.capacity_b
              << " C=" << weights.objective_c << "\n";
    std::cout << "quadratic terms: " << model.quadratic.size() << ", offset: " << model.offset << "\n";
    if (!export_path.empty()) {
        write_text(export_path, qknap::qubo_to_json(model).dump(2) + "\n");
        std::cout << "exported to " << export_path << "\n";
    }
    return 0;
}

int run_experiment_cmd(const std::string& config_path, const std::string& output_override, int jobs_override) {
    std::ifstream in(config_path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + config_path);
    }
    nlohmann::json doc;
    in >> doc;
    qknap::ExperimentConfig config = qknap::experiment_config_from_json(doc);
    if (!output_override.empty()) {
        config.output_path = output_override;
    }
    if (jobs_override > 0) {
        config.jobs = jobs_override;
    }
    const qknap::ExperimentResult result = qknap::run_experiment(config);
    int failures = 0;
    for (const auto& cell : result.cells) {
        if (!cell.ok()) {
            ++failures;
            std::cerr << "cell (scenario " << cell.scenario << ", p " << cell.p << ", rep " << cell.repetition
                      << ") failed: " << cell.error << "\n";
        }
    }
    std::cout << "completed " << result.cells.size() - failures << "/" << result.cells.size() << " cells";
    if (!config.output_path.empty()) {
        std::cout << " -> " << config.output_path;
    }
    std::cout << "\n";
    std::cout << qknap::results_to_summary(result.cells);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variational quantum optimization toolkit for multi-knapsack instances"};
    app.require_subcommand(1);

    // instances list | export
    auto* instances = app.add_subcommand("instances", "browse or export the built-in scenario catalog");
    instances->require_subcommand(1);
    auto* list_cmd = instances->add_subcommand("list", "print the catalog overview");
    int export_scenario = -1;
    std::string export_output;
    auto* export_cmd = instances->add_subcommand("export", "write catalog instances as JSON");
    export_cmd->add_option("--scenario", export_scenario, "export a single scenario id");
    export_cmd->add_option("-o,--output", export_output, "output file (default stdout)");

    // solve
    std::string solve_ref;
    bool solve_show = false;
    auto* solve_cmd = app.add_subcommand("solve", "exact brute-force solution of an instance");
    solve_cmd->add_option("instance", solve_ref, "catalog scenario id or instance JSON file")->required();
    solve_cmd->add_flag("--assignments", solve_show, "also print the optimal assignments");

    // qubo build
    auto* qubo = app.add_subcommand("qubo", "construct knapsack Hamiltonians");
    qubo->require_subcommand(1);
    std::string qubo_ref;
    std::string qubo_variant = "standard";
    std::string qubo_export;
    double qubo_a = 0, qubo_b = 0, qubo_c = 0;
    auto* build_cmd = qubo->add_subcommand("build", "build a QUBO and optionally export it as JSON");
    build_cmd->add_option("instance", qubo_ref, "catalog scenario id or instance JSON file")->required();
    build_cmd->add_option("--variant", qubo_variant, "standard (slack bits) or noslack")
        ->check(CLI::IsMember({"standard", "noslack"}));
    build_cmd->add_option("--export", qubo_export, "write the model to this JSON file");
    build_cmd->add_option("--penalty-a", qubo_a, "override the single-assignment weight A");
    build_cmd->add_option("--penalty-b", qubo_b, "override the capacity weight B");
    build_cmd->add_option("--penalty-c", qubo_c, "override the objective weight C");

    // run
    std::string run_config;
    std::string run_output;
    int run_jobs = 0;
    auto* run_cmd = app.add_subcommand("run", "run an experiment sweep from a JSON config");
    run_cmd->add_option("config", run_config, "experiment config JSON file")->required();
    run_cmd->add_option("-o,--output", run_output, "override the results JSONL path");
    run_cmd->add_option("--jobs", run_jobs, "worker threads (results are identical for any count)");

    // report
    std::string report_path;
    std::string report_format = "summary-table";
    std::string report_output;
    auto* report_cmd = app.add_subcommand("report", "render a stored results file");
    report_cmd->add_option("results", report_path, "results JSONL file")->required();
    report_cmd->add_option("--format", report_format, "csv, json or summary-table")
        ->check(CLI::IsMember({"csv", "json", "summary-table", "summary"}));
    report_cmd->add_option("-o,--output", report_output, "output file (default stdout)");

    // verify-tables
    auto* verify_cmd = app.add_subcommand("verify-tables", "check the oracles against the reference tables");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list_cmd) {
            return run_instances_list();
        }
        if (*export_cmd) {
            return run_instances_export(export_scenario, export_output);
        }
        if (*solve_cmd) {
            return run_solve(solve_ref, solve_show);
        }
        if (*build_cmd) {
            return run_qubo_build(qubo_ref, qubo_variant, qubo_export, qubo_a, qubo_b, qubo_c);
        }
        if (*run_cmd) {
            return run_experiment_cmd(run_config, run_output, run_jobs);
        }
        if (*report_cmd) {
            const std::string text = qknap::report(report_path, qknap::report_format_from_string(report_format));
            write_text(report_output, text);
            return 0;
        }
        if (*verify_cmd) {
            const qknap::VerifyReport result = qknap::verify_tables();
            std::cout << result.text;
            std::cout << (result.ok ? "all " + std::to_string(result.checks) + " checks passed"
                                    : std::to_string(result.mismatches) + " of " +
                                          std::to_string(result.checks) + " checks failed")
                      << "\n";
            return result.ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
