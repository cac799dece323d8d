#include "mtsep/io.hpp"

#include "mtsep/errors.hpp"
#include "mtsep/stationary.hpp"
#include "mtsep/version.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace mtsep::io {

namespace {

double probability_from_json(const nlohmann::json& value, const std::string& where) {
    if (value.is_string()) {
        return parse_probability(value.get<std::string>());
    }
    if (value.is_number()) {
        return value.get<double>();
    }
    throw ValidationError(where + " must be a number or a \"p/q\" string");
}

nlohmann::json observables_json(const Observables& obs) {
    nlohmann::json flow;
    flow["in"] = obs.flow_in;
    flow["cross"] = obs.flow_cross;
    flow["out"] = obs.flow_out;

    nlohmann::json doc;
    doc["density"] = obs.density;
    doc["density_by_type"] = obs.density_by_type;
    doc["flow"] = flow;
    return doc;
}

nlohmann::json pipeline_json(const PipelineResult& result) {
    nlohmann::json doc = observables_json(result.obs);
    doc["pi"] = result.dist.pi;
    doc["residual"] = result.dist.residual;
    doc["method"] = method_name(result.dist.method);
    return doc;
}

nlohmann::json identities_json(const ResidualReport& report) {
    nlohmann::json items = nlohmann::json::array();
    for (const IdentityCheck& c : report.identities) {
        items.push_back({{"id", c.id},
                         {"lhs", c.lhs},
                         {"rhs", c.rhs},
                         {"residual", c.residual},
                         {"pass", c.pass}});
    }
    return items;
}

void flatten_csv(const nlohmann::json& node, const std::string& path, std::string& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            flatten_csv(value, path.empty() ? key : path + "." + key, out);
        }
    } else if (node.is_array()) {
        std::size_t i = 0;
        for (const auto& value : node) {
            flatten_csv(value, path + "[" + std::to_string(i++) + "]", out);
        }
    } else {
        out += path;
        out += ",";
        out += node.dump();
        out += "\n";
    }
}

} // namespace

SystemParams params_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ValidationError("configuration must be a JSON object");
    }
    if (!doc.contains("n_cells") || !doc["n_cells"].is_number_integer()) {
        throw ValidationError("configuration requires integer \"n_cells\"");
    }
    if (!doc.contains("alpha")) {
        throw ValidationError("configuration requires \"alpha\"");
    }
    if (!doc.contains("types") || !doc["types"].is_array() || doc["types"].empty()) {
        throw ValidationError("configuration requires a non-empty \"types\" array");
    }

    SystemParams params;
    params.n_cells = doc["n_cells"].get<int>();
    params.alpha = probability_from_json(doc["alpha"], "alpha");
    for (std::size_t k = 0; k < doc["types"].size(); ++k) {
        const nlohmann::json& entry = doc["types"][k];
        const std::string where = "types[" + std::to_string(k) + "]";
        if (!entry.is_object() || !entry.contains("a") || !entry.contains("p") ||
            !entry.contains("beta")) {
            throw ValidationError(where + " must be an object with \"a\", \"p\", \"beta\"");
        }
        TypeSpec t;
        t.arrival_weight = probability_from_json(entry["a"], where + ".a");
        t.hop_prob = probability_from_json(entry["p"], where + ".p");
        t.exit_prob = probability_from_json(entry["beta"], where + ".beta");
        params.types.push_back(t);
    }
    return params;
}

nlohmann::json params_to_json(const SystemParams& params) {
    nlohmann::json types = nlohmann::json::array();
    for (const TypeSpec& t : params.types) {
        types.push_back({{"a", t.arrival_weight}, {"p", t.hop_prob}, {"beta", t.exit_prob}});
    }
    return {{"n_cells", params.n_cells}, {"alpha", params.alpha}, {"types", types}};
}

std::string current_timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

Manifest make_manifest(const std::string& command, const nlohmann::json& config,
                       std::optional<std::uint64_t> seed, const std::string& out_path) {
    Manifest manifest;
    manifest.command = command;
    manifest.version = kVersion;
    manifest.timestamp = current_timestamp_utc();
    manifest.config = config;
    manifest.seed = seed;
    manifest.out_path = out_path;
    return manifest;
}

nlohmann::json manifest_to_json(const Manifest& manifest) {
    nlohmann::json doc;
    doc["command"] = manifest.command;
    doc["version"] = manifest.version;
    doc["timestamp"] = manifest.timestamp;
    doc["config"] = manifest.config;
    doc["seed"] = manifest.seed ? nlohmann::json(*manifest.seed) : nlohmann::json(nullptr);
    doc["out"] = manifest.out_path.empty() ? nlohmann::json(nullptr)
                                           : nlohmann::json(manifest.out_path);
    return doc;
}

nlohmann::json result_document(const Manifest& manifest, const PipelineResult& result) {
    nlohmann::json doc = pipeline_json(result);
    doc["manifest"] = manifest_to_json(manifest);
    return doc;
}

nlohmann::json comparison_document(const Manifest& manifest, const ComparisonReport& report) {
    nlohmann::json approx = pipeline_json(report.approx);
    approx["params"] = params_to_json(report.approx.params);

    nlohmann::json doc;
    doc["manifest"] = manifest_to_json(manifest);
    doc["exact"] = pipeline_json(report.exact);
    doc["approx"] = approx;
    doc["error"] = {{"density_abs", report.density_abs_err},
                    {"density_rel", report.density_rel_err},
                    {"flow_abs", report.flow_abs_err},
                    {"flow_rel", report.flow_rel_err}};
    return doc;
}

nlohmann::json sim_document(const Manifest& manifest, const sim::Estimate& estimate) {
    nlohmann::json doc;
    doc["manifest"] = manifest_to_json(manifest);
    doc["density"] = estimate.density_mean;
    doc["density_stderr"] = estimate.density_se;
    doc["flow"] = estimate.flow_mean;
    doc["flow_stderr"] = estimate.flow_se;
    doc["seed"] = estimate.seed;
    doc["warmup_steps"] = estimate.warmup_steps;
    doc["sampled_steps"] = estimate.sampled_steps;
    doc["batches"] = estimate.batches;
    return doc;
}

nlohmann::json report_document(const Manifest& manifest,
                               const std::vector<ResidualReport>& reports) {
    bool all_pass = true;
    nlohmann::json items = nlohmann::json::array();
    for (const ResidualReport& report : reports) {
        all_pass = all_pass && report.all_pass();
        items.push_back({{"name", report.name},
                         {"tolerance", report.tolerance},
                         {"pass", report.all_pass()},
                         {"max_residual", report.max_residual()},
                         {"identities", identities_json(report)}});
    }
    nlohmann::json doc;
    doc["manifest"] = manifest_to_json(manifest);
    doc["reports"] = items;
    doc["pass"] = all_pass;
    return doc;
}

nlohmann::json table1_document(const Manifest& manifest,
                               const std::vector<Table1RowResult>& rows) {
    const auto& refs = reference_rows();
    bool all_match = true;
    nlohmann::json items = nlohmann::json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Table1RowResult& row = rows[i];
        all_match = all_match && row.all_match();
        auto cells = [](const std::array<CellComparison, 3>& side) {
            nlohmann::json out;
            out["computed"] = {side[0].computed, side[1].computed, side[2].computed};
            out["rounded"] = {side[0].rounded, side[1].rounded, side[2].rounded};
            out["reference"] = {side[0].reference, side[1].reference, side[2].reference};
            out["match"] = {side[0].match, side[1].match, side[2].match};
            return out;
        };
        items.push_back({{"id", row.id},
                         {"params", params_to_json(refs[i].params)},
                         {"exact", cells(row.exact)},
                         {"approx", cells(row.approx)},
                         {"all_match", row.all_match()}});
    }
    nlohmann::json doc;
    doc["manifest"] = manifest_to_json(manifest);
    doc["tolerance"] = kReferenceTol;
    doc["rows"] = items;
    doc["all_match"] = all_match;
    return doc;
}

std::string document_to_csv(const nlohmann::json& doc) {
    std::string out = "key,value\n";
    for (const auto& [key, value] : doc.items()) {
        if (key == "manifest") continue;
        flatten_csv(value, key, out);
    }
    return out;
}

} // namespace mtsep::io
