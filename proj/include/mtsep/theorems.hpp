#pragma once

#include "mtsep/params.hpp"
#include "mtsep/state.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mtsep {

// Occupancy indicator: 0 for a vacant cell, 1 for any particle type.
inline int eta(int cell_value) { return cell_value > 0 ? 1 : 0; }

// Partition of the multi-type state space by occupancy pattern. Group
// g(x*) holds every state whose eta-image equals the single-type state x*.
class GSetIndex {
public:
    static GSetIndex build(const SystemParams& params,
                           std::uint64_t state_cap = kDefaultStateCap);

    std::uint64_t num_aux_states() const { return static_cast<std::uint64_t>(groups_.size()); }
    const std::vector<std::uint64_t>& members(std::uint64_t aux_code) const {
        return groups_[static_cast<std::size_t>(aux_code)];
    }

private:
    std::vector<std::vector<std::uint64_t>> groups_;
};

struct IdentityCheck {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool pass = false;
};

struct ResidualReport {
    std::string name;
    double tolerance = 1e-10;
    std::vector<IdentityCheck> identities;

    bool all_pass() const;
    double max_residual() const;
};

// Which transcription of the two-type balance system to evaluate. The
// published eq23 omits one exit factor that symmetry with eq20 requires;
// `corrected` carries it, `published_literal` reproduces the text.
enum class Eq23Variant { corrected, published_literal };

// Product-form identities (eq3..eq11) tying the two-type stationary vector
// to the single-type surrogate. Requires N=2, K=2; equal exit
// probabilities unless allow_mismatch is set.
ResidualReport verify_theorem2(const SystemParams& params, bool allow_mismatch = false,
                               double tol = 1e-10);

// Group sums: the stationary mass of each occupancy class equals the
// surrogate's stationary probability. Same precondition as theorem 2.
ResidualReport verify_theorem3(const SystemParams& params, bool allow_mismatch = false,
                               double tol = 1e-10);

// Density and flow equalities between system and surrogate. Same
// precondition as theorem 2.
ResidualReport verify_theorems4_5(const SystemParams& params, bool allow_mismatch = false,
                                  double tol = 1e-10);

// Evaluates the hand-transcribed stationary balance system (eq12..eq16 for
// a single type, eq17..eq26 for two types, with per-type exit
// probabilities) on the exact stationary vector. Requires N=2 and K <= 2.
ResidualReport verify_balance_equations(const SystemParams& params,
                                        Eq23Variant variant = Eq23Variant::corrected,
                                        double tol = 1e-10);

// Same evaluation on a caller-supplied vector (negative controls, tests).
std::vector<IdentityCheck> balance_residuals(const SystemParams& params,
                                             std::span<const double> pi,
                                             Eq23Variant variant = Eq23Variant::corrected,
                                             double tol = 1e-10);

// Exploratory group-sum probe: N=2, equal exit probabilities, any K >= 1.
ResidualReport probe_gset_sums(const SystemParams& params, double tol = 1e-10);

} // namespace mtsep
