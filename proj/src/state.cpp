#include "mtsep/state.hpp"

#include "mtsep/errors.hpp"

#include <limits>
#include <string>

namespace mtsep {

namespace {

// Hard ceiling so codec arithmetic never overflows uint64.
constexpr std::uint64_t kCodecLimit = std::uint64_t{1} << 62;

} // namespace

StateCodec::StateCodec(int n_cells, int num_types)
    : n_cells_(n_cells), base_(num_types + 1), num_states_(1) {
    if (n_cells < 1) throw ValidationError("n_cells must be at least 1");
    if (num_types < 1) throw ValidationError("at least one particle type is required");
    for (int i = 0; i < n_cells_; ++i) {
        if (num_states_ > kCodecLimit / static_cast<std::uint64_t>(base_)) {
            throw StateSpaceError("state space too large; use simulator");
        }
        num_states_ *= static_cast<std::uint64_t>(base_);
    }
}

std::uint64_t StateCodec::encode(const LatticeState& state) const {
    std::uint64_t code = 0;
    for (int value : state.cells) {
        code = code * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(value);
    }
    return code;
}

LatticeState StateCodec::decode(std::uint64_t code) const {
    LatticeState state;
    state.cells.assign(static_cast<std::size_t>(n_cells_), 0);
    for (int i = n_cells_ - 1; i >= 0; --i) {
        state.cells[static_cast<std::size_t>(i)] =
            static_cast<int>(code % static_cast<std::uint64_t>(base_));
        code /= static_cast<std::uint64_t>(base_);
    }
    return state;
}

std::vector<LatticeState> enumerate_states(const SystemParams& params,
                                           std::uint64_t state_cap) {
    const StateCodec codec(params.n_cells, params.num_types());
    if (codec.num_states() > state_cap) {
        throw StateSpaceError("state space too large; use simulator");
    }
    std::vector<LatticeState> states;
    states.reserve(static_cast<std::size_t>(codec.num_states()));
    for (std::uint64_t code = 0; code < codec.num_states(); ++code) {
        states.push_back(codec.decode(code));
    }
    return states;
}

} // namespace mtsep
