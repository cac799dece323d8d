#pragma once

#include "mtsep/params.hpp"
#include "mtsep/rng.hpp"

namespace mtsep {

// Random valid instance for randomized verification suites. Probabilities
// are kept away from the interval edges so every draw is comfortably
// ergodic and well conditioned.
SystemParams random_instance(Xoshiro256pp& rng, int n_cells, int num_types,
                             bool equal_exit_probs = false);

} // namespace mtsep
