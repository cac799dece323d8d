#pragma once

#include "mtsep/approx.hpp"
#include "mtsep/observables.hpp"
#include "mtsep/params.hpp"
#include "mtsep/reference.hpp"
#include "mtsep/sim.hpp"
#include "mtsep/theorems.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mtsep::io {

// Configuration schema:
//   { "n_cells": int, "alpha": number|"p/q",
//     "types": [ { "a": ..., "p": ..., "beta": ... }, ... ] }
// Rational strings are parsed as exact integer ratios.
SystemParams params_from_json(const nlohmann::json& doc);
nlohmann::json params_to_json(const SystemParams& params);

// Every emitted document embeds a manifest describing how it was produced.
struct Manifest {
    std::string command;
    std::string version;
    std::string timestamp;
    nlohmann::json config;  // resolved configuration, or null
    std::optional<std::uint64_t> seed;
    std::string out_path;   // empty -> null
};

Manifest make_manifest(const std::string& command,
                       const nlohmann::json& config = nullptr,
                       std::optional<std::uint64_t> seed = std::nullopt,
                       const std::string& out_path = {});
nlohmann::json manifest_to_json(const Manifest& manifest);
std::string current_timestamp_utc();

// Result-document family (stable field order via ordered_json).
nlohmann::json result_document(const Manifest& manifest, const PipelineResult& result);
nlohmann::json comparison_document(const Manifest& manifest, const ComparisonReport& report);
nlohmann::json sim_document(const Manifest& manifest, const sim::Estimate& estimate);
nlohmann::json report_document(const Manifest& manifest,
                               const std::vector<ResidualReport>& reports);
nlohmann::json table1_document(const Manifest& manifest,
                               const std::vector<Table1RowResult>& rows);

// Flat (section,key,index,value) CSV rendering of any document above.
std::string document_to_csv(const nlohmann::json& doc);

} // namespace mtsep::io
