#include "mtsep/observables.hpp"

#include "mtsep/errors.hpp"
#include "mtsep/kernel.hpp"
#include "mtsep/state.hpp"

#include <cstddef>

namespace mtsep {

Observables observables(const StationaryDistribution& dist, const SystemParams& params) {
    const StateCodec codec(params.n_cells, params.num_types());
    if (dist.pi.size() != codec.num_states()) {
        throw ValidationError("distribution dimension does not match the state space");
    }

    const std::size_t n = static_cast<std::size_t>(params.n_cells);
    const std::size_t k_types = static_cast<std::size_t>(params.num_types());

    Observables obs;
    obs.density.assign(n, 0.0);
    obs.density_by_type.assign(n, std::vector<double>(k_types, 0.0));
    obs.flow_cross.assign(n > 1 ? n - 1 : 0, 0.0);

    for (std::uint64_t code = 0; code < codec.num_states(); ++code) {
        const double mass = dist.pi[static_cast<std::size_t>(code)];
        if (mass == 0.0) continue;
        const LatticeState state = codec.decode(code);
        for (std::size_t i = 0; i < n; ++i) {
            const int k = state.cells[i];
            if (k == 0) continue;
            obs.density_by_type[i][static_cast<std::size_t>(k - 1)] += mass;
            if (i + 1 < n && state.cells[i + 1] == 0) {
                obs.flow_cross[i] += params.types[static_cast<std::size_t>(k - 1)].hop_prob * mass;
            }
        }
        const int k_last = state.cells[n - 1];
        if (k_last > 0) {
            obs.flow_out += params.types[static_cast<std::size_t>(k_last - 1)].exit_prob * mass;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (double d : obs.density_by_type[i]) obs.density[i] += d;
    }
    obs.flow_in = params.alpha * (1.0 - obs.density[0]);
    return obs;
}

PipelineResult exact_pipeline(const SystemParams& params, std::uint64_t state_cap) {
    PipelineResult result;
    result.params = params;
    const TransitionKernel kernel = build_kernel(params, state_cap);
    if (kernel.num_states() <= kDenseSolveCap) {
        result.dist = solve_direct(kernel);
    } else {
        result.dist = solve_power(kernel);
    }
    result.obs = observables(result.dist, params);
    return result;
}

} // namespace mtsep
