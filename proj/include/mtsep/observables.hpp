#pragma once

#include "mtsep/params.hpp"
#include "mtsep/stationary.hpp"

#include <cstdint>
#include <vector>

namespace mtsep {

// Stationary per-cell densities and the three flow-rate estimators. At
// stationarity the inflow, every bond crossing rate, and the outflow agree.
struct Observables {
    std::vector<double> density;                       // rho_i, i = 1..N
    std::vector<std::vector<double>> density_by_type;  // [cell][type]
    double flow_in = 0.0;                              // alpha * (1 - rho_1)
    std::vector<double> flow_cross;                    // bond i -> i+1, size N-1
    double flow_out = 0.0;                             // sum_k beta_k * rho_N^(k)
};

Observables observables(const StationaryDistribution& dist, const SystemParams& params);

// Kernel build -> stationary solve -> observables. Uses the direct solver
// up to the dense cap and falls back to power iteration above it.
struct PipelineResult {
    SystemParams params;
    StationaryDistribution dist;
    Observables obs;
};

PipelineResult exact_pipeline(const SystemParams& params,
                              std::uint64_t state_cap = kDefaultStateCap);

} // namespace mtsep
