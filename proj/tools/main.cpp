#include "mtsep/approx.hpp"
#include "mtsep/draws.hpp"
#include "mtsep/errors.hpp"
#include "mtsep/io.hpp"
#include "mtsep/observables.hpp"
#include "mtsep/reference.hpp"
#include "mtsep/sim.hpp"
#include "mtsep/theorems.hpp"
#include "mtsep/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using mtsep::SystemParams;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitInput = 2;

// Fixed seed for the built-in randomized verify suite; --seed overrides.
constexpr std::uint64_t kVerifySuiteSeed = 0x7261666669632331ULL;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "table";
    std::uint64_t state_cap = mtsep::kDefaultStateCap;
    bool force = false;
};

SystemParams load_params(const CommonOptions& opts) {
    std::ifstream in(opts.config_path);
    if (!in) {
        throw mtsep::ValidationError("cannot open config file \"" + opts.config_path + "\"");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw mtsep::ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    const SystemParams params = mtsep::io::params_from_json(doc);
    if (opts.force) {
        std::cerr << "warning: --force relaxes validation; the instance may be "
                     "non-ergodic and results are exploratory\n";
        return mtsep::validate(params, mtsep::Strictness::forced);
    }
    return mtsep::validate(params);
}

void emit(const nlohmann::json& doc, const CommonOptions& opts,
          const std::string& table_rendering) {
    if (opts.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else if (opts.format == "csv") {
        std::cout << mtsep::io::document_to_csv(doc);
    } else {
        std::cout << table_rendering;
    }
    if (!opts.out_path.empty()) {
        std::ofstream out(opts.out_path);
        if (!out) {
            throw mtsep::ValidationError("cannot write output file \"" + opts.out_path + "\"");
        }
        out << doc.dump(2) << "\n";
    }
}

std::string fmt(double value, int digits = 6) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    return buffer;
}

std::string sci(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2e", value);
    return buffer;
}

std::string render_observables(const mtsep::PipelineResult& result) {
    std::string out;
    const auto& obs = result.obs;
    char line[64];
    out += "cell  density   ";
    for (int k = 1; k <= result.params.num_types(); ++k) {
        std::snprintf(line, sizeof(line), "type%-6d", k);
        out += line;
    }
    out += "\n";
    for (std::size_t i = 0; i < obs.density.size(); ++i) {
        std::snprintf(line, sizeof(line), "%-6zu%s", i + 1, fmt(obs.density[i]).c_str());
        out += line;
        for (double d : obs.density_by_type[i]) {
            out += "  " + fmt(d);
        }
        out += "\n";
    }
    out += "flow in " + fmt(obs.flow_in);
    for (std::size_t i = 0; i < obs.flow_cross.size(); ++i) {
        out += "  cross(" + std::to_string(i + 1) + ") " + fmt(obs.flow_cross[i]);
    }
    out += "  out " + fmt(obs.flow_out) + "\n";
    out += "solver " + mtsep::method_name(result.dist.method) + ", residual " +
           sci(result.dist.residual) + "\n";
    return out;
}

std::string render_comparison(const mtsep::ComparisonReport& report) {
    std::string out = "cell  exact     approx    abs_err   rel_err\n";
    for (std::size_t i = 0; i < report.exact.obs.density.size(); ++i) {
        out += std::to_string(i + 1) + "     " + fmt(report.exact.obs.density[i]) + "  " +
               fmt(report.approx.obs.density[i]) + "  " + fmt(report.density_abs_err[i]) +
               "  " + fmt(report.density_rel_err[i]) + "\n";
    }
    out += "J     " + fmt(report.exact.obs.flow_in) + "  " + fmt(report.approx.obs.flow_in) +
           "  " + fmt(report.flow_abs_err) + "  " + fmt(report.flow_rel_err) + "\n";
    const auto& aux = report.approx.params.types[0];
    out += "surrogate p* " + fmt(aux.hop_prob) + ", beta* " + fmt(aux.exit_prob) + "\n";
    return out;
}

std::string render_reports(const std::vector<mtsep::ResidualReport>& reports) {
    std::string out;
    for (const auto& report : reports) {
        out += report.name + (report.all_pass() ? "  PASS" : "  FAIL") +
               "  (max residual " + sci(report.max_residual()) + ")\n";
        for (const auto& identity : report.identities) {
            out += "  " + identity.id + "  residual " + sci(identity.residual) +
                   (identity.pass ? "  pass" : "  FAIL") + "\n";
        }
    }
    return out;
}

std::string render_sim(const mtsep::sim::Estimate& estimate) {
    std::string out = "cell  density    stderr\n";
    for (std::size_t i = 0; i < estimate.density_mean.size(); ++i) {
        out += std::to_string(i + 1) + "     " + fmt(estimate.density_mean[i]) + "  " +
               fmt(estimate.density_se[i]) + "\n";
    }
    out += "flow  " + fmt(estimate.flow_mean) + "  " + fmt(estimate.flow_se) + "\n";
    out += "seed " + std::to_string(estimate.seed) + ", sampled " +
           std::to_string(estimate.sampled_steps) + " steps in " +
           std::to_string(estimate.batches) + " batches (warmup " +
           std::to_string(estimate.warmup_steps) + ")\n";
    return out;
}

std::string render_table1(const std::vector<mtsep::Table1RowResult>& rows) {
    std::string out = "row  kind    rho1               rho2               J\n";
    auto cell = [](const mtsep::CellComparison& c) {
        return fmt(c.rounded, 4) + "/" + fmt(c.reference, 4) + (c.match ? " ok " : " DIFF");
    };
    for (const auto& row : rows) {
        out += std::to_string(row.id) + "    exact   " + cell(row.exact[0]) + "  " +
               cell(row.exact[1]) + "  " + cell(row.exact[2]) + "\n";
        out += "     approx  " + cell(row.approx[0]) + "  " + cell(row.approx[1]) + "  " +
               cell(row.approx[2]) + "\n";
    }
    out += "(computed/reference, ok = within 5e-5)\n";
    return out;
}

int cmd_exact(const CommonOptions& opts) {
    const SystemParams params = load_params(opts);
    const mtsep::PipelineResult result = mtsep::exact_pipeline(params, opts.state_cap);
    const auto manifest =
        mtsep::io::make_manifest("exact", mtsep::io::params_to_json(params), std::nullopt,
                                 opts.out_path);
    emit(mtsep::io::result_document(manifest, result), opts, render_observables(result));
    return kExitOk;
}

int cmd_approx(const CommonOptions& opts) {
    const SystemParams params = load_params(opts);
    const mtsep::ComparisonReport report = mtsep::compare(params, opts.state_cap);
    const auto manifest =
        mtsep::io::make_manifest("approx", mtsep::io::params_to_json(params), std::nullopt,
                                 opts.out_path);
    emit(mtsep::io::comparison_document(manifest, report), opts, render_comparison(report));
    return kExitOk;
}

int cmd_simulate(const CommonOptions& opts, const mtsep::sim::Config& config) {
    const SystemParams params = load_params(opts);
    const mtsep::sim::Estimate estimate = mtsep::sim::run(params, config);
    const auto manifest = mtsep::io::make_manifest(
        "simulate", mtsep::io::params_to_json(params), config.seed, opts.out_path);
    emit(mtsep::io::sim_document(manifest, estimate), opts, render_sim(estimate));
    return kExitOk;
}

// Aggregates identity checks across draws, keeping the worst residual per id.
void merge_worst(std::map<std::string, mtsep::IdentityCheck>& worst,
                 const mtsep::ResidualReport& report) {
    for (const auto& identity : report.identities) {
        auto it = worst.find(identity.id);
        if (it == worst.end() || identity.residual > it->second.residual) {
            worst[identity.id] = identity;
        }
    }
}

mtsep::ResidualReport worst_report(const std::string& name, double tol,
                                   const std::map<std::string, mtsep::IdentityCheck>& worst) {
    mtsep::ResidualReport report;
    report.name = name;
    report.tolerance = tol;
    for (const auto& [id, identity] : worst) {
        report.identities.push_back(identity);
    }
    return report;
}

int cmd_verify(const CommonOptions& opts, bool allow_mismatch, bool eq23_literal,
               int draws, std::uint64_t seed) {
    const auto variant = eq23_literal ? mtsep::Eq23Variant::published_literal
                                      : mtsep::Eq23Variant::corrected;
    std::vector<mtsep::ResidualReport> reports;
    nlohmann::json config = nullptr;

    if (!opts.config_path.empty()) {
        const SystemParams params = load_params(opts);
        config = mtsep::io::params_to_json(params);
        if (params.n_cells != 2) {
            throw mtsep::PreconditionError("verify requires a two-cell instance");
        }
        if (params.num_types() == 2) {
            reports.push_back(mtsep::verify_theorem2(params, allow_mismatch));
            reports.push_back(mtsep::verify_theorem3(params, allow_mismatch));
            reports.push_back(mtsep::verify_theorems4_5(params, allow_mismatch));
        }
        if (params.num_types() <= 2) {
            reports.push_back(mtsep::verify_balance_equations(params, variant));
        }
    } else {
        // Built-in randomized special-case suite: N=2, K=2, equal exit
        // probabilities, fixed seed unless overridden.
        mtsep::Xoshiro256pp rng(seed);
        std::map<std::string, mtsep::IdentityCheck> t2, t3, t45, bal2, bal1;
        for (int d = 0; d < draws; ++d) {
            const SystemParams params = mtsep::random_instance(rng, 2, 2, true);
            merge_worst(t2, mtsep::verify_theorem2(params));
            merge_worst(t3, mtsep::verify_theorem3(params));
            merge_worst(t45, mtsep::verify_theorems4_5(params));
            merge_worst(bal2, mtsep::verify_balance_equations(params, variant));
            merge_worst(bal1, mtsep::verify_balance_equations(mtsep::reduce(params), variant));
        }
        reports.push_back(worst_report("theorem2", 1e-10, t2));
        reports.push_back(worst_report("theorem3", 1e-10, t3));
        reports.push_back(worst_report("theorems4_5", 1e-10, t45));
        reports.push_back(worst_report("balance_two_type", 1e-10, bal2));
        reports.push_back(worst_report("balance_single_type", 1e-10, bal1));
        config = {{"suite", "builtin"}, {"draws", draws}};
    }

    const auto manifest = mtsep::io::make_manifest(
        "verify", config,
        opts.config_path.empty() ? std::optional<std::uint64_t>(seed) : std::nullopt,
        opts.out_path);
    const nlohmann::json doc = mtsep::io::report_document(manifest, reports);
    emit(doc, opts, render_reports(reports));
    return doc["pass"].get<bool>() ? kExitOk : kExitNumerical;
}

int cmd_table1(const CommonOptions& opts) {
    const auto rows = mtsep::reproduce_table1();
    const auto manifest = mtsep::io::make_manifest("table1", nullptr, std::nullopt,
                                                   opts.out_path);
    emit(mtsep::io::table1_document(manifest, rows), opts, render_table1(rows));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-type synchronous exclusion process on an open lattice"};
    app.set_version_flag("--version", mtsep::kVersion);
    app.require_subcommand(1);

    CommonOptions opts;
    mtsep::sim::Config sim_config;
    bool allow_mismatch = false;
    bool eq23_literal = false;
    int verify_draws = 100;
    std::uint64_t verify_seed = kVerifySuiteSeed;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* config = cmd->add_option("--config", opts.config_path, "instance config (JSON)");
        if (needs_config) config->required();
        cmd->add_option("--out", opts.out_path, "write the JSON document here");
        cmd->add_option("--format", opts.format, "stdout format")
            ->check(CLI::IsMember({"json", "csv", "table"}));
        cmd->add_option("--cap", opts.state_cap, "state-space cap");
    };

    auto* exact = app.add_subcommand("exact", "stationary distribution and observables");
    add_common(exact, true);
    exact->add_flag("--force", opts.force, "relax validation (exploratory)");

    auto* approx = app.add_subcommand("approx", "surrogate approximation vs exact");
    add_common(approx, true);

    auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo estimates");
    add_common(simulate, true);
    simulate->add_flag("--force", opts.force, "relax validation (exploratory)");
    simulate->add_option("--seed", sim_config.seed, "RNG seed");
    simulate->add_option("--steps", sim_config.sample_steps, "sampled steps");
    simulate->add_option("--warmup", sim_config.warmup_steps, "warmup steps");
    simulate->add_option("--batches", sim_config.batches, "batch count for error bars");

    auto* verify = app.add_subcommand("verify", "special-case identity suite");
    add_common(verify, false);
    verify->add_flag("--allow-mismatch", allow_mismatch,
                     "probe identities outside the equal-exit special case");
    verify->add_flag("--eq23-paper-literal", eq23_literal,
                     "evaluate the published eq23 without the corrected exit factor");
    verify->add_option("--draws", verify_draws, "draws for the built-in suite");
    verify->add_option("--seed", verify_seed, "seed for the built-in suite");

    auto* table1 = app.add_subcommand("table1", "reproduce the reference table");
    add_common(table1, false);

    try {
        app.parse(argc, argv);
        if (exact->parsed()) return cmd_exact(opts);
        if (approx->parsed()) return cmd_approx(opts);
        if (simulate->parsed()) return cmd_simulate(opts, sim_config);
        if (verify->parsed())
            return cmd_verify(opts, allow_mismatch, eq23_literal, verify_draws, verify_seed);
        if (table1->parsed()) return cmd_table1(opts);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitInput;
    } catch (const mtsep::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const mtsep::PreconditionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const mtsep::StateSpaceError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const mtsep::SolverError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
