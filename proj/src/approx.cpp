#include "mtsep/approx.hpp"

#include <cmath>
#include <cstddef>

namespace mtsep {

SystemParams reduce(const SystemParams& params) {
    double hop_weight = 0.0;
    double exit_weight = 0.0;
    for (const TypeSpec& t : params.types) {
        hop_weight += t.arrival_weight / t.hop_prob;
        exit_weight += t.arrival_weight / t.exit_prob;
    }

    SystemParams aux;
    aux.n_cells = params.n_cells;
    aux.alpha = params.alpha;
    aux.types = {TypeSpec{1.0, 1.0 / hop_weight, 1.0 / exit_weight}};
    return aux;
}

PipelineResult approximate_pipeline(const SystemParams& params, std::uint64_t state_cap) {
    return exact_pipeline(reduce(params), state_cap);
}

Observables approximate_observables(const SystemParams& params, std::uint64_t state_cap) {
    return approximate_pipeline(params, state_cap).obs;
}

ComparisonReport compare(const SystemParams& params, std::uint64_t state_cap) {
    ComparisonReport report;
    report.exact = exact_pipeline(params, state_cap);
    report.approx = approximate_pipeline(params, state_cap);

    const std::size_t n = report.exact.obs.density.size();
    report.density_abs_err.assign(n, 0.0);
    report.density_rel_err.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double exact = report.exact.obs.density[i];
        const double approx = report.approx.obs.density[i];
        report.density_abs_err[i] = std::abs(exact - approx);
        report.density_rel_err[i] = exact != 0.0 ? report.density_abs_err[i] / exact : 0.0;
    }
    const double j_exact = report.exact.obs.flow_in;
    const double j_approx = report.approx.obs.flow_in;
    report.flow_abs_err = std::abs(j_exact - j_approx);
    report.flow_rel_err = j_exact != 0.0 ? report.flow_abs_err / j_exact : 0.0;
    return report;
}

} // namespace mtsep
