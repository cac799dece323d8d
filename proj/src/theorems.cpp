#include "mtsep/theorems.hpp"

#include "mtsep/approx.hpp"
#include "mtsep/errors.hpp"
#include "mtsep/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace mtsep {

namespace {

IdentityCheck check(std::string id, double lhs, double rhs, double tol) {
    IdentityCheck c;
    c.id = std::move(id);
    c.lhs = lhs;
    c.rhs = rhs;
    c.residual = std::abs(lhs - rhs);
    c.pass = c.residual <= tol;
    return c;
}

bool equal_exit_probs(const SystemParams& params) {
    for (const TypeSpec& t : params.types) {
        if (t.exit_prob != params.types[0].exit_prob) return false;
    }
    return true;
}

void require_special_case(const SystemParams& params, bool allow_mismatch,
                          const char* what, bool need_two_types) {
    if (params.n_cells != 2 || (need_two_types && params.num_types() != 2)) {
        throw PreconditionError(std::string(what) +
                                ": precondition violated (requires N=2, K=2)");
    }
    if (!allow_mismatch && !equal_exit_probs(params)) {
        throw PreconditionError(std::string(what) +
                                ": precondition violated (requires equal exit "
                                "probabilities; pass allow_mismatch to probe anyway)");
    }
}

} // namespace

bool ResidualReport::all_pass() const {
    return std::all_of(identities.begin(), identities.end(),
                       [](const IdentityCheck& c) { return c.pass; });
}

double ResidualReport::max_residual() const {
    double worst = 0.0;
    for (const IdentityCheck& c : identities) worst = std::max(worst, c.residual);
    return worst;
}

GSetIndex GSetIndex::build(const SystemParams& params, std::uint64_t state_cap) {
    const StateCodec codec(params.n_cells, params.num_types());
    if (codec.num_states() > state_cap) {
        throw StateSpaceError("state space too large; use simulator");
    }
    const StateCodec aux_codec(params.n_cells, 1);

    GSetIndex index;
    index.groups_.assign(static_cast<std::size_t>(aux_codec.num_states()), {});
    for (std::uint64_t code = 0; code < codec.num_states(); ++code) {
        const LatticeState state = codec.decode(code);
        LatticeState pattern;
        pattern.cells.reserve(state.cells.size());
        for (int v : state.cells) pattern.cells.push_back(eta(v));
        index.groups_[static_cast<std::size_t>(aux_codec.encode(pattern))].push_back(code);
    }
    return index;
}

ResidualReport verify_theorem2(const SystemParams& params, bool allow_mismatch, double tol) {
    require_special_case(params, allow_mismatch, "theorem2", true);

    const SystemParams aux = reduce(params);
    const std::vector<double> pi = exact_pipeline(params).dist.pi;       // 9 states, base 3
    const std::vector<double> pi_aux = exact_pipeline(aux).dist.pi;      // 4 states, base 2

    const double a1 = params.types[0].arrival_weight;
    const double a2 = params.types[1].arrival_weight;
    const double p1 = params.types[0].hop_prob;
    const double p2 = params.types[1].hop_prob;
    const double p_star = aux.types[0].hop_prob;

    auto s = [&pi](int x1, int x2) { return pi[static_cast<std::size_t>(3 * x1 + x2)]; };
    auto t = [&pi_aux](int x1, int x2) { return pi_aux[static_cast<std::size_t>(2 * x1 + x2)]; };

    ResidualReport report;
    report.name = "theorem2";
    report.tolerance = tol;
    report.identities = {
        check("eq3", s(0, 0), t(0, 0), tol),
        check("eq4", s(0, 1), a1 * t(0, 1), tol),
        check("eq5", s(0, 2), a2 * t(0, 1), tol),
        check("eq6", s(1, 0), a1 * p_star / p1 * t(1, 0), tol),
        check("eq7", s(1, 1), a1 * a1 * t(1, 1), tol),
        check("eq8", s(1, 2), a1 * a2 * t(1, 1), tol),
        check("eq9", s(2, 0), a2 * p_star / p2 * t(1, 0), tol),
        check("eq10", s(2, 1), a1 * a2 * t(1, 1), tol),
        check("eq11", s(2, 2), a2 * a2 * t(1, 1), tol),
    };
    return report;
}

ResidualReport verify_theorem3(const SystemParams& params, bool allow_mismatch, double tol) {
    require_special_case(params, allow_mismatch, "theorem3", true);

    const std::vector<double> pi = exact_pipeline(params).dist.pi;
    const std::vector<double> pi_aux = exact_pipeline(reduce(params)).dist.pi;
    const GSetIndex index = GSetIndex::build(params);
    const StateCodec aux_codec(params.n_cells, 1);

    ResidualReport report;
    report.name = "theorem3";
    report.tolerance = tol;
    for (std::uint64_t aux_code = 0; aux_code < index.num_aux_states(); ++aux_code) {
        double group_sum = 0.0;
        for (std::uint64_t member : index.members(aux_code)) {
            group_sum += pi[static_cast<std::size_t>(member)];
        }
        const LatticeState aux_state = aux_codec.decode(aux_code);
        std::string id = "G(";
        for (std::size_t i = 0; i < aux_state.cells.size(); ++i) {
            if (i > 0) id += ",";
            id += std::to_string(aux_state.cells[i]);
        }
        id += ")";
        report.identities.push_back(
            check(std::move(id), group_sum, pi_aux[static_cast<std::size_t>(aux_code)], tol));
    }
    return report;
}

ResidualReport verify_theorems4_5(const SystemParams& params, bool allow_mismatch, double tol) {
    require_special_case(params, allow_mismatch, "theorems4_5", false);

    const PipelineResult exact = exact_pipeline(params);
    const PipelineResult approx = approximate_pipeline(params);

    ResidualReport report;
    report.name = "theorems4_5";
    report.tolerance = tol;
    for (std::size_t i = 0; i < exact.obs.density.size(); ++i) {
        report.identities.push_back(check("rho_" + std::to_string(i + 1),
                                          exact.obs.density[i], approx.obs.density[i], tol));
    }
    report.identities.push_back(check("flow", exact.obs.flow_in, approx.obs.flow_in, tol));
    return report;
}

std::vector<IdentityCheck> balance_residuals(const SystemParams& params,
                                             std::span<const double> pi,
                                             Eq23Variant variant, double tol) {
    if (params.n_cells != 2) {
        throw PreconditionError("balance equations: precondition violated (requires N=2)");
    }
    const double alpha = params.alpha;

    if (params.num_types() == 1) {
        if (pi.size() != 4) {
            throw ValidationError("distribution dimension does not match the state space");
        }
        const double p = params.types[0].hop_prob;
        const double beta = params.types[0].exit_prob;
        auto t = [&pi](int x1, int x2) { return pi[static_cast<std::size_t>(2 * x1 + x2)]; };
        return {
            check("eq12", alpha * t(0, 0), (1 - alpha) * beta * t(0, 1), tol),
            check("eq13", (1 - (1 - alpha) * (1 - beta)) * t(0, 1), p * t(1, 0), tol),
            check("eq14", p * t(1, 0),
                  alpha * t(0, 0) + alpha * beta * t(0, 1) + beta * t(1, 1), tol),
            check("eq15", beta * t(1, 1), alpha * (1 - beta) * t(0, 1), tol),
            check("eq16", t(0, 0) + t(0, 1) + t(1, 0) + t(1, 1), 1.0, tol),
        };
    }

    if (params.num_types() == 2) {
        if (pi.size() != 9) {
            throw ValidationError("distribution dimension does not match the state space");
        }
        const double a1 = params.types[0].arrival_weight;
        const double a2 = params.types[1].arrival_weight;
        const double p1 = params.types[0].hop_prob;
        const double p2 = params.types[1].hop_prob;
        const double b1 = params.types[0].exit_prob;
        const double b2 = params.types[1].exit_prob;
        auto s = [&pi](int x1, int x2) { return pi[static_cast<std::size_t>(3 * x1 + x2)]; };

        // Exit factors carry the beta of the particle type being displaced;
        // with b1 == b2 this is the published equal-beta system.
        const double eq23_third = variant == Eq23Variant::corrected
                                      ? alpha * a2 * b2 * s(0, 2)
                                      : alpha * a2 * s(0, 2);
        double total = 0.0;
        for (int x1 = 0; x1 < 3; ++x1)
            for (int x2 = 0; x2 < 3; ++x2) total += s(x1, x2);

        return {
            check("eq17", alpha * s(0, 0),
                  (1 - alpha) * b1 * s(0, 1) + (1 - alpha) * b2 * s(0, 2), tol),
            check("eq18", (1 - (1 - alpha) * (1 - b1)) * s(0, 1), p1 * s(1, 0), tol),
            check("eq19", (1 - (1 - alpha) * (1 - b2)) * s(0, 2), p2 * s(2, 0), tol),
            check("eq20", p1 * s(1, 0),
                  alpha * a1 * s(0, 0) + alpha * a1 * b1 * s(0, 1) + alpha * a1 * b2 * s(0, 2) +
                      b1 * s(1, 1) + b2 * s(1, 2),
                  tol),
            check("eq21", b1 * s(1, 1), alpha * a1 * (1 - b1) * s(0, 1), tol),
            check("eq22", b2 * s(1, 2), alpha * a1 * (1 - b2) * s(0, 2), tol),
            check("eq23", p2 * s(2, 0),
                  alpha * a2 * s(0, 0) + alpha * a2 * b1 * s(0, 1) + eq23_third +
                      b1 * s(2, 1) + b2 * s(2, 2),
                  tol),
            check("eq24", b1 * s(2, 1), alpha * a2 * (1 - b1) * s(0, 1), tol),
            check("eq25", b2 * s(2, 2), alpha * a2 * (1 - b2) * s(0, 2), tol),
            check("eq26", total, 1.0, tol),
        };
    }

    throw PreconditionError("balance equations: precondition violated (requires K <= 2)");
}

ResidualReport verify_balance_equations(const SystemParams& params, Eq23Variant variant,
                                        double tol) {
    const PipelineResult exact = exact_pipeline(params);
    ResidualReport report;
    report.name = params.num_types() == 1 ? "balance_single_type" : "balance_two_type";
    report.tolerance = tol;
    report.identities = balance_residuals(params, exact.dist.pi, variant, tol);
    return report;
}

ResidualReport probe_gset_sums(const SystemParams& params, double tol) {
    if (params.n_cells != 2) {
        throw PreconditionError("gset probe: precondition violated (requires N=2)");
    }
    if (!equal_exit_probs(params)) {
        throw PreconditionError(
            "gset probe: precondition violated (requires equal exit probabilities)");
    }

    const std::vector<double> pi = exact_pipeline(params).dist.pi;
    const std::vector<double> pi_aux = exact_pipeline(reduce(params)).dist.pi;
    const GSetIndex index = GSetIndex::build(params);

    ResidualReport report;
    report.name = "gset_probe";
    report.tolerance = tol;
    for (std::uint64_t aux_code = 0; aux_code < index.num_aux_states(); ++aux_code) {
        double group_sum = 0.0;
        for (std::uint64_t member : index.members(aux_code)) {
            group_sum += pi[static_cast<std::size_t>(member)];
        }
        report.identities.push_back(check("G#" + std::to_string(aux_code), group_sum,
                                          pi_aux[static_cast<std::size_t>(aux_code)], tol));
    }
    return report;
}

} // namespace mtsep
