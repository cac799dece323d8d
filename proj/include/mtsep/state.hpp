#pragma once

#include "mtsep/params.hpp"

#include <cstdint>
#include <vector>

namespace mtsep {

// One lattice configuration. cells[i] == 0 means cell i+1 is vacant,
// cells[i] == k means it holds a particle of type k.
struct LatticeState {
    std::vector<int> cells;

    bool operator==(const LatticeState&) const = default;
};

// Default bound on (K+1)^N for exhaustive enumeration and kernel builds.
inline constexpr std::uint64_t kDefaultStateCap = std::uint64_t{1} << 24;

// Bijection between configurations and {0, ..., (K+1)^N - 1} via
// base-(K+1) digits, cell 1 most significant.
class StateCodec {
public:
    StateCodec(int n_cells, int num_types);

    std::uint64_t num_states() const { return num_states_; }
    int n_cells() const { return n_cells_; }
    int base() const { return base_; }

    std::uint64_t encode(const LatticeState& state) const;
    LatticeState decode(std::uint64_t code) const;

private:
    int n_cells_;
    int base_;
    std::uint64_t num_states_;
};

// All states in ascending codec order. Throws StateSpaceError when the
// state count exceeds `state_cap`.
std::vector<LatticeState> enumerate_states(const SystemParams& params,
                                           std::uint64_t state_cap = kDefaultStateCap);

} // namespace mtsep
