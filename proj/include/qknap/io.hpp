#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qknap/bits.hpp"
#include "qknap/knapsack.hpp"
#include "qknap/qubo.hpp"
#include "qknap/statevector.hpp"

namespace qknap {

/// Error raised by malformed documents; the message carries the field path.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::int64_t require_positive_int(const nlohmann::json& node, const std::string& path) {
    if (!node.is_number_integer()) {
        throw ParseError(path + ": expected an integer");
    }
    const auto value = node.get<std::int64_t>();
    if (value <= 0) {
        throw ParseError(path + ": must be a positive integer");
    }
    return value;
}

} // namespace detail

inline nlohmann::json instance_to_json(const KnapsackInstance& inst) {
    nlohmann::json doc;
    if (inst.scenario_id) {
        doc["scenario_id"] = *inst.scenario_id;
    }
    doc["capacities"] = inst.capacities;
    doc["weights"] = inst.weights;
    doc["values"] = inst.values;
    return doc;
}

inline std::string serialize_instance(const KnapsackInstance& inst) { return instance_to_json(inst).dump(2); }

inline KnapsackInstance instance_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ParseError("document: expected a JSON object");
    }
    KnapsackInstance inst;
    if (doc.contains("scenario_id")) {
        if (!doc["scenario_id"].is_number_integer()) {
            throw ParseError("scenario_id: expected an integer");
        }
        inst.scenario_id = doc["scenario_id"].get<int>();
    }
    for (const char* field : {"capacities", "weights", "values"}) {
        if (!doc.contains(field)) {
            throw ParseError(std::string(field) + ": missing required field");
        }
    }
    if (!doc["capacities"].is_array() || doc["capacities"].empty()) {
        throw ParseError("capacities: expected a non-empty array");
    }
    for (std::size_t k = 0; k < doc["capacities"].size(); ++k) {
        inst.capacities.push_back(
            detail::require_positive_int(doc["capacities"][k], "capacities[" + std::to_string(k) + "]"));
    }
    if (!doc["weights"].is_array() || doc["weights"].empty()) {
        throw ParseError("weights: expected a non-empty array");
    }
    for (std::size_t i = 0; i < doc["weights"].size(); ++i) {
        inst.weights.push_back(
            detail::require_positive_int(doc["weights"][i], "weights[" + std::to_string(i) + "]"));
    }
    if (!doc["values"].is_array()) {
        throw ParseError("values: expected an array of rows");
    }
    if (doc["values"].size() != inst.capacities.size()) {
        throw ParseError("values: expected " + std::to_string(inst.capacities.size()) + " rows, got " +
                         std::to_string(doc["values"].size()));
    }
    for (std::size_t k = 0; k < doc["values"].size(); ++k) {
        const auto& row = doc["values"][k];
        const std::string row_path = "values[" + std::to_string(k) + "]";
        if (!row.is_array()) {
            throw ParseError(row_path + ": expected an array");
        }
        if (row.size() != inst.weights.size()) {
            throw ParseError(row_path + ": expected " + std::to_string(inst.weights.size()) + " columns, got " +
                             std::to_string(row.size()));
        }
        inst.values.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
            inst.values.back().push_back(
                detail::require_positive_int(row[i], row_path + "[" + std::to_string(i) + "]"));
        }
    }
    return inst;
}

inline KnapsackInstance parse_instance(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("document: ") + e.what());
    }
    return instance_from_json(doc);
}

inline KnapsackInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open instance file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

/// QUBO export for external annealers/solvers. Linear keys are variable
/// indices, quadratic keys "i,j" with i < j.
inline nlohmann::json qubo_to_json(const QuadraticModel& q) {
    nlohmann::json doc;
    doc["num_vars"] = q.num_vars;
    doc["offset"] = q.offset;
    nlohmann::json linear = nlohmann::json::object();
    for (int i = 0; i < q.num_vars; ++i) {
        if (q.linear[static_cast<std::size_t>(i)] != 0.0) {
            linear[std::to_string(i)] = q.linear[static_cast<std::size_t>(i)];
        }
    }
    doc["linear"] = std::move(linear);
    nlohmann::json quadratic = nlohmann::json::object();
    for (const auto& [key, c] : q.quadratic) {
        quadratic[std::to_string(key.first) + "," + std::to_string(key.second)] = c;
    }
    doc["quadratic"] = std::move(quadratic);
    nlohmann::json layout;
    layout["num_x"] = q.layout.num_x;
    layout["total"] = q.layout.total;
    nlohmann::json spans = nlohmann::json::array();
    for (const auto& [start, count] : q.layout.slack_spans) {
        spans.push_back({start, count});
    }
    layout["slack_spans"] = std::move(spans);
    doc["layout"] = std::move(layout);
    return doc;
}

/// {"shots": n, "counts": {bitstring: count}} with qubit-0-first bitstrings.
inline nlohmann::json sampleset_to_json(const SampleSet& samples) {
    nlohmann::json doc;
    doc["shots"] = samples.shots;
    doc["num_qubits"] = samples.num_qubits;
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [index, count] : samples.counts) {
        counts[bitstring_from_index(index, samples.num_qubits)] = count;
    }
    doc["counts"] = std::move(counts);
    return doc;
}

} // namespace qknap
