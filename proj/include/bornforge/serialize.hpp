#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <ostream>
#include <string>

#include "bornforge/bounds.hpp"
#include "bornforge/entanglement.hpp"
#include "bornforge/pool.hpp"
#include "bornforge/trainer.hpp"

namespace bornforge {

nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& j);

nlohmann::json pool_to_json(const OperatorPool& pool);
OperatorPool pool_from_json(const nlohmann::json& j);

nlohmann::json metrics_to_json(const TrainReport& report);
nlohmann::json pricing_to_json(const PricingReport& report);

/// Columns: iteration,epoch,loss,grad_norm,lr,n_params,cumulative_measurements.
void write_history_csv(std::ostream& out, const TrainReport& report);

void write_matrix_csv(std::ostream& out, const CorrelationMatrix& matrix);
void write_distribution_csv(std::ostream& out, std::span<const double> p);

/// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

/// FNV-1a 64-bit digest of a file, hex encoded; used for run manifests.
std::string file_digest(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace bornforge
