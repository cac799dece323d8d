#include "mtsep/draws.hpp"

#include <cstddef>

namespace mtsep {

namespace {

double uniform_in(Xoshiro256pp& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.uniform();
}

} // namespace

SystemParams random_instance(Xoshiro256pp& rng, int n_cells, int num_types,
                             bool equal_exit_probs) {
    SystemParams params;
    params.n_cells = n_cells;
    params.alpha = uniform_in(rng, 0.1, 0.9);

    std::vector<double> weights(static_cast<std::size_t>(num_types));
    double sum = 0.0;
    for (double& w : weights) {
        w = uniform_in(rng, 0.1, 1.0);
        sum += w;
    }

    const double shared_exit = uniform_in(rng, 0.1, 0.95);
    for (int k = 0; k < num_types; ++k) {
        TypeSpec t;
        t.arrival_weight = weights[static_cast<std::size_t>(k)] / sum;
        t.hop_prob = uniform_in(rng, 0.1, 0.95);
        t.exit_prob = equal_exit_probs ? shared_exit : uniform_in(rng, 0.1, 0.95);
        params.types.push_back(t);
    }
    return params;
}

} // namespace mtsep
