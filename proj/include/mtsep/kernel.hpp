#pragma once

#include "mtsep/params.hpp"
#include "mtsep/state.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mtsep {

// The independent events enabled by a configuration under the parallel
// update rule. Every enabling condition reads the time-t state only, so a
// cell vacated at t+1 cannot be entered at t+1. Enabled events never write
// the same cell, which is what makes them independent.
struct EventSet {
    bool arrival = false;          // cell 1 vacant
    std::vector<int> movable;      // 0-based cells i with x[i] > 0 and x[i+1] == 0, i < N-1
    bool exit = false;             // last cell occupied
};

EventSet enabled_events(const LatticeState& state, const SystemParams& params);

// One-step successor distribution: the product measure over the enabled
// events, with the arrival event branching over the K types. Duplicate
// successors are merged; entries are sorted by state code and sum to 1.
std::vector<std::pair<LatticeState, double>> successors(const LatticeState& state,
                                                        const SystemParams& params);

// Sparse row-stochastic transition matrix over the full state space in
// codec order.
class TransitionKernel {
public:
    static TransitionKernel build(const SystemParams& params,
                                  std::uint64_t state_cap = kDefaultStateCap);

    // Assembles a kernel from explicit rows (tests and hand-written oracles).
    static TransitionKernel from_rows(
        const std::vector<std::vector<std::pair<std::uint64_t, double>>>& rows);

    std::uint64_t num_states() const { return n_; }
    std::size_t num_entries() const { return cols_.size(); }

    std::span<const std::uint64_t> row_states(std::uint64_t row) const;
    std::span<const double> row_probs(std::uint64_t row) const;
    double row_sum(std::uint64_t row) const;

    // next = current * P (one synchronous step of the distribution).
    void next_distribution(std::span<const double> current, std::span<double> next) const;

private:
    std::uint64_t n_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint64_t> cols_;
    std::vector<double> probs_;
};

TransitionKernel build_kernel(const SystemParams& params,
                              std::uint64_t state_cap = kDefaultStateCap);

} // namespace mtsep
