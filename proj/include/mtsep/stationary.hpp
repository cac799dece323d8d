#pragma once

#include "mtsep/kernel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mtsep {

// States above this count are out of reach for the dense direct solver.
inline constexpr std::uint64_t kDenseSolveCap = 4096;

struct StationaryDistribution {
    enum class Method { direct, power };

    std::vector<double> pi;   // codec-ordered, nonnegative, sums to 1
    double residual = 0.0;    // max_l |pi_l - (pi P)_l|
    Method method = Method::direct;
};

std::string method_name(StationaryDistribution::Method method);

// Solves (P^T - I) pi = 0 with the last balance row replaced by the
// normalization sum(pi) = 1, using Gaussian elimination with partial
// pivoting. Throws SolverError on a singular system (multiple recurrent
// classes; only reachable when validation was bypassed).
StationaryDistribution solve_direct(const TransitionKernel& kernel);

struct PowerOptions {
    double tol = 1e-13;                    // max-norm change per iteration
    std::uint64_t max_iters = 10'000'000;
};

// Iterates pi <- pi P from the uniform vector until the max-norm change
// drops below tol. Independent of solve_direct by construction.
StationaryDistribution solve_power(const TransitionKernel& kernel,
                                   const PowerOptions& options = {});

// Stationarity defect max |pi - pi P| of an arbitrary vector.
double stationarity_residual(const TransitionKernel& kernel, const std::vector<double>& pi);

} // namespace mtsep
