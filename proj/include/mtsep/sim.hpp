#pragma once

#include "mtsep/params.hpp"
#include "mtsep/rng.hpp"
#include "mtsep/state.hpp"

#include <cstdint>
#include <vector>

namespace mtsep::sim {

struct Config {
    std::uint64_t seed = 1;
    std::uint64_t warmup_steps = 10'000;
    std::uint64_t sample_steps = 1'000'000;
    int batches = 20;
};

struct StepRecord {
    bool arrived = false;
    bool exited = false;
    int moves = 0;
};

// One synchronous step in place. Every enabled event gets one Bernoulli
// draw against the time-t state, in a fixed order (arrival, bonds left to
// right, exit); an arrival draws the type from the cumulative weights.
// The order only fixes the stream layout - events never conflict.
StepRecord step(LatticeState& state, const SystemParams& params, Xoshiro256pp& rng);

struct Estimate {
    std::vector<double> density_mean;
    std::vector<double> density_se;
    double flow_mean = 0.0;  // arrivals per step
    double flow_se = 0.0;
    std::uint64_t sampled_steps = 0;
    std::uint64_t warmup_steps = 0;
    std::uint64_t seed = 0;
    int batches = 0;
};

// Runs from the empty lattice, discards the warmup, and accumulates
// occupancy indicators and arrival counts. Standard errors come from batch
// means over `batches` equal contiguous blocks; a trailing remainder of
// sample_steps not divisible by batches is dropped.
Estimate run(const SystemParams& params, const Config& config);

struct ChiSquareReport {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    std::uint64_t draws = 0;
    bool foreign_state = false;  // a sampled successor had zero model probability

    bool pass_at(double significance) const {
        return !foreign_state && p_value > significance;
    }
};

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_sf(double statistic, int dof);

// Pearson statistic for observed category counts against expected
// probabilities; used by the transition test and by negative controls.
ChiSquareReport chi_square_from_counts(const std::vector<std::uint64_t>& observed,
                                       const std::vector<double>& expected_probs,
                                       std::uint64_t draws);

// Samples `draws` one-step transitions from `state` and tests the
// empirical successor frequencies against the model distribution.
ChiSquareReport chi_square_transition_test(const SystemParams& params,
                                           const LatticeState& state,
                                           std::uint64_t draws, std::uint64_t seed);

} // namespace mtsep::sim
