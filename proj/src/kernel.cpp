#include "mtsep/kernel.hpp"

#include "mtsep/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

namespace mtsep {

namespace {

struct Branch {
    LatticeState state;
    double prob;
};

// Expands the product measure over enabled events. Events write disjoint
// cells, so the expansion order does not matter.
std::vector<Branch> expand_events(const LatticeState& state, const SystemParams& params,
                                  const EventSet& events) {
    std::vector<Branch> branches;
    branches.push_back({state, 1.0});

    const int last = params.n_cells - 1;

    if (events.exit) {
        const int k = state.cells[static_cast<std::size_t>(last)];
        const double beta = params.types[static_cast<std::size_t>(k - 1)].exit_prob;
        std::vector<Branch> next;
        next.reserve(branches.size() * 2);
        for (const Branch& b : branches) {
            if (beta > 0.0) {
                Branch gone = b;
                gone.state.cells[static_cast<std::size_t>(last)] = 0;
                gone.prob *= beta;
                next.push_back(std::move(gone));
            }
            if (beta < 1.0) {
                Branch stay = b;
                stay.prob *= 1.0 - beta;
                next.push_back(std::move(stay));
            }
        }
        branches = std::move(next);
    }

    for (int i : events.movable) {
        const int k = state.cells[static_cast<std::size_t>(i)];
        const double p = params.types[static_cast<std::size_t>(k - 1)].hop_prob;
        std::vector<Branch> next;
        next.reserve(branches.size() * 2);
        for (const Branch& b : branches) {
            if (p > 0.0) {
                Branch moved = b;
                moved.state.cells[static_cast<std::size_t>(i)] = 0;
                moved.state.cells[static_cast<std::size_t>(i + 1)] = k;
                moved.prob *= p;
                next.push_back(std::move(moved));
            }
            if (p < 1.0) {
                Branch stay = b;
                stay.prob *= 1.0 - p;
                next.push_back(std::move(stay));
            }
        }
        branches = std::move(next);
    }

    if (events.arrival) {
        const double alpha = params.alpha;
        std::vector<Branch> next;
        next.reserve(branches.size() * (params.types.size() + 1));
        for (const Branch& b : branches) {
            if (alpha < 1.0) {
                Branch none = b;
                none.prob *= 1.0 - alpha;
                next.push_back(std::move(none));
            }
            if (alpha > 0.0) {
                for (std::size_t k = 0; k < params.types.size(); ++k) {
                    Branch arrived = b;
                    arrived.state.cells[0] = static_cast<int>(k + 1);
                    arrived.prob *= alpha * params.types[k].arrival_weight;
                    next.push_back(std::move(arrived));
                }
            }
        }
        branches = std::move(next);
    }

    return branches;
}

std::vector<std::pair<std::uint64_t, double>> successor_codes(const LatticeState& state,
                                                              const SystemParams& params,
                                                              const StateCodec& codec) {
    const EventSet events = enabled_events(state, params);
    std::vector<std::pair<std::uint64_t, double>> out;
    for (const Branch& b : expand_events(state, params, events)) {
        out.emplace_back(codec.encode(b.state), b.prob);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge duplicates (distinct event subsets reaching the same state)
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.size(); ++r) {
        if (w > 0 && out[w - 1].first == out[r].first) {
            out[w - 1].second += out[r].second;
        } else {
            out[w++] = out[r];
        }
    }
    out.resize(w);
    return out;
}

} // namespace

EventSet enabled_events(const LatticeState& state, const SystemParams& params) {
    EventSet events;
    const int n = params.n_cells;
    events.arrival = state.cells[0] == 0;
    for (int i = 0; i + 1 < n; ++i) {
        if (state.cells[static_cast<std::size_t>(i)] > 0 &&
            state.cells[static_cast<std::size_t>(i + 1)] == 0) {
            events.movable.push_back(i);
        }
    }
    events.exit = state.cells[static_cast<std::size_t>(n - 1)] > 0;
    return events;
}

std::vector<std::pair<LatticeState, double>> successors(const LatticeState& state,
                                                        const SystemParams& params) {
    const StateCodec codec(params.n_cells, params.num_types());
    std::vector<std::pair<LatticeState, double>> out;
    for (const auto& [code, prob] : successor_codes(state, params, codec)) {
        out.emplace_back(codec.decode(code), prob);
    }
    return out;
}

TransitionKernel TransitionKernel::build(const SystemParams& params,
                                         std::uint64_t state_cap) {
    const StateCodec codec(params.n_cells, params.num_types());
    if (codec.num_states() > state_cap) {
        throw StateSpaceError("state space too large; use simulator");
    }

    TransitionKernel kernel;
    kernel.n_ = codec.num_states();
    kernel.offsets_.reserve(static_cast<std::size_t>(kernel.n_) + 1);
    kernel.offsets_.push_back(0);
    for (std::uint64_t code = 0; code < kernel.n_; ++code) {
        const LatticeState state = codec.decode(code);
        for (const auto& [to, prob] : successor_codes(state, params, codec)) {
            kernel.cols_.push_back(to);
            kernel.probs_.push_back(prob);
        }
        kernel.offsets_.push_back(kernel.cols_.size());
    }
    return kernel;
}

TransitionKernel TransitionKernel::from_rows(
    const std::vector<std::vector<std::pair<std::uint64_t, double>>>& rows) {
    TransitionKernel kernel;
    kernel.n_ = rows.size();
    kernel.offsets_.push_back(0);
    for (const auto& row : rows) {
        for (const auto& [to, prob] : row) {
            if (to >= kernel.n_) {
                throw ValidationError("kernel row references state " + std::to_string(to) +
                                      " outside the state space");
            }
            kernel.cols_.push_back(to);
            kernel.probs_.push_back(prob);
        }
        kernel.offsets_.push_back(kernel.cols_.size());
    }
    return kernel;
}

std::span<const std::uint64_t> TransitionKernel::row_states(std::uint64_t row) const {
    const std::size_t begin = offsets_[static_cast<std::size_t>(row)];
    const std::size_t end = offsets_[static_cast<std::size_t>(row) + 1];
    return {cols_.data() + begin, end - begin};
}

std::span<const double> TransitionKernel::row_probs(std::uint64_t row) const {
    const std::size_t begin = offsets_[static_cast<std::size_t>(row)];
    const std::size_t end = offsets_[static_cast<std::size_t>(row) + 1];
    return {probs_.data() + begin, end - begin};
}

double TransitionKernel::row_sum(std::uint64_t row) const {
    double sum = 0.0;
    for (double p : row_probs(row)) sum += p;
    return sum;
}

void TransitionKernel::next_distribution(std::span<const double> current,
                                         std::span<double> next) const {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::uint64_t l = 0; l < n_; ++l) {
        const double mass = current[static_cast<std::size_t>(l)];
        if (mass == 0.0) continue;
        const auto states = row_states(l);
        const auto probs = row_probs(l);
        for (std::size_t j = 0; j < states.size(); ++j) {
            next[static_cast<std::size_t>(states[j])] += mass * probs[j];
        }
    }
}

TransitionKernel build_kernel(const SystemParams& params, std::uint64_t state_cap) {
    return TransitionKernel::build(params, state_cap);
}

} // namespace mtsep
