#pragma once

#include <string>
#include <vector>

namespace mtsep {

// One particle class. Arrival weights over all classes sum to 1.
struct TypeSpec {
    double arrival_weight = 1.0; // a_k, in (0,1]
    double hop_prob = 1.0;       // p_k, forward move probability, in (0,1]
    double exit_prob = 1.0;      // beta_k, exit probability from the last cell, in (0,1]
};

// Full specification of an open-lattice instance: N cells, arrival
// probability alpha at cell 1, and K particle types.
struct SystemParams {
    int n_cells = 1;
    double alpha = 0.5;
    std::vector<TypeSpec> types;

    int num_types() const { return static_cast<int>(types.size()); }
    int cell_base() const { return num_types() + 1; }
};

// Validation policy. Strict enforces the ergodicity ranges (alpha in the
// open interval, hop/exit probabilities strictly positive). Forced keeps
// only the structural requirements so degenerate instances can be explored.
enum class Strictness { strict, forced };

// Checks every invariant and returns the params unchanged; throws
// ValidationError naming the first violated invariant.
SystemParams validate(const SystemParams& params, Strictness strictness = Strictness::strict);

// Parses "3/7" (exact integer ratio) or a plain decimal like "0.25".
double parse_probability(const std::string& text);

} // namespace mtsep
