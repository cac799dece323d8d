#pragma once

#include "mtsep/observables.hpp"
#include "mtsep/params.hpp"

#include <cstdint>
#include <vector>

namespace mtsep {

// Single-type surrogate: same lattice and arrival probability, one type
// whose hop and exit probabilities are the arrival-weighted harmonic means
// of the originals. The surrogate's state space has 2^N states whatever K is.
SystemParams reduce(const SystemParams& params);

// Densities and flow of the surrogate, used as the approximation for the
// multi-type system. Never solves the multi-type chain.
PipelineResult approximate_pipeline(const SystemParams& params,
                                    std::uint64_t state_cap = kDefaultStateCap);
Observables approximate_observables(const SystemParams& params,
                                    std::uint64_t state_cap = kDefaultStateCap);

// Exact and approximate observables side by side with per-cell errors.
struct ComparisonReport {
    PipelineResult exact;
    PipelineResult approx;
    std::vector<double> density_abs_err;  // |rho_i - rho_i*|
    std::vector<double> density_rel_err;  // relative to the exact value
    double flow_abs_err = 0.0;            // |J - J*|, J taken as flow_in
    double flow_rel_err = 0.0;
};

ComparisonReport compare(const SystemParams& params,
                         std::uint64_t state_cap = kDefaultStateCap);

} // namespace mtsep
