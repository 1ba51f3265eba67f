#include "bornforge/serialize.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace bornforge {

using nlohmann::json;

nlohmann::json circuit_to_json(const Circuit& circuit) {
    json gates = json::array();
    for (const GateInstance& g : circuit.gates) {
        json entry;
        entry["kind"] = std::string(gate_name(g.kind));
        if (is_two_qubit(g.kind))
            entry["qubits"] = {static_cast<int>(g.q0), static_cast<int>(g.q1)};
        else
            entry["qubits"] = {static_cast<int>(g.q0)};
        entry["slot"] = g.slot;
        gates.push_back(std::move(entry));
    }
    return json{{"n_qubits", circuit.n_qubits}, {"gates", std::move(gates)},
                {"theta", circuit.theta}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
    Circuit c;
    c.n_qubits = j.at("n_qubits").get<int>();
    c.theta = j.at("theta").get<std::vector<double>>();
    for (const json& entry : j.at("gates")) {
        const GateKind kind = gate_kind_from_name(entry.at("kind").get<std::string>());
        const auto qubits = entry.at("qubits").get<std::vector<int>>();
        const int q1 = qubits.size() > 1 ? qubits[1] : -1;
        c.gates.push_back(make_gate(kind, qubits.at(0), q1, entry.at("slot").get<int>()));
    }
    c.validate();
    return c;
}

nlohmann::json pool_to_json(const OperatorPool& pool) {
    json ops = json::array();
    for (const PoolOperator& op : pool.operators) {
        json entry;
        entry["kind"] = std::string(gate_name(op.kind));
        if (op.two_qubit())
            entry["qubits"] = {op.q0, op.q1};
        else
            entry["qubits"] = {op.q0};
        ops.push_back(std::move(entry));
    }
    return json{{"n_qubits", pool.n_qubits}, {"operators", std::move(ops)}};
}

OperatorPool pool_from_json(const nlohmann::json& j) {
    OperatorPool pool;
    pool.n_qubits = j.at("n_qubits").get<int>();
    for (const json& entry : j.at("operators")) {
        PoolOperator op;
        op.kind = gate_kind_from_name(entry.at("kind").get<std::string>());
        const auto qubits = entry.at("qubits").get<std::vector<int>>();
        op.q0 = qubits.at(0);
        op.q1 = qubits.size() > 1 ? qubits[1] : -1;
        pool.operators.push_back(op);
    }
    return pool;
}

nlohmann::json metrics_to_json(const TrainReport& report) {
    return json{
        {"loss_final", report.final_loss},
        {"kl", report.final_kl},
        {"fisher_rao", report.final_fisher_rao},
        {"converged", report.converged},
        {"iterations", report.iterations.size()},
        {"epochs_total", report.epochs.size()},
        {"pool_scorings", report.pool_scorings},
        {"measurements", report.total_measurements},
        {"floor_hits", report.floor_hits},
        {"parameters", report.resources.parameters},
        {"one_qubit_gates", report.resources.one_qubit_gates},
        {"two_qubit_gates", report.resources.two_qubit_gates},
        {"depth", report.resources.depth},
    };
}

nlohmann::json pricing_to_json(const PricingReport& report) {
    return json{
        {"expectation_target", report.expectation_target},
        {"expectation_model", report.expectation_model},
        {"difference", report.difference},
        {"kl", report.kl},
        {"bound", report.bound},
        {"vacuous", report.vacuous},
    };
}

void write_history_csv(std::ostream& out, const TrainReport& report) {
    out << "iteration,epoch,loss,grad_norm,lr,n_params,cumulative_measurements\n";
    for (const EpochRecord& row : report.epochs) {
        out << row.iteration << ',' << row.epoch << ',' << format_double(row.loss) << ','
            << format_double(row.grad_norm) << ',' << format_double(row.lr) << ','
            << row.n_params << ',' << row.measurements << '\n';
    }
}

void write_matrix_csv(std::ostream& out, const CorrelationMatrix& matrix) {
    for (int i = 0; i < matrix.n_qubits; ++i) {
        for (int j = 0; j < matrix.n_qubits; ++j) {
            if (j > 0) out << ',';
            out << format_double(matrix.at(i, j));
        }
        out << '\n';
    }
}

void write_distribution_csv(std::ostream& out, std::span<const double> p) {
    out << "index,probability\n";
    for (std::size_t x = 0; x < p.size(); ++x)
        out << x << ',' << format_double(p[x]) << '\n';
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::uint64_t hash = 1469598103934665603ull;
    char ch;
    while (in.get(ch)) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex << hash;
    return hex.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace bornforge
