#include "mtsep/stationary.hpp"

#include "mtsep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace mtsep {

namespace {

void clamp_and_normalize(std::vector<double>& pi) {
    double sum = 0.0;
    for (double& x : pi) {
        if (x < 0.0) x = 0.0;
        sum += x;
    }
    if (sum <= 0.0) {
        throw SolverError("stationary vector collapsed to zero");
    }
    for (double& x : pi) x /= sum;
}

} // namespace

std::string method_name(StationaryDistribution::Method method) {
    return method == StationaryDistribution::Method::direct ? "direct" : "power";
}

double stationarity_residual(const TransitionKernel& kernel, const std::vector<double>& pi) {
    std::vector<double> next(pi.size(), 0.0);
    kernel.next_distribution(pi, next);
    double residual = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        residual = std::max(residual, std::abs(pi[i] - next[i]));
    }
    return residual;
}

StationaryDistribution solve_direct(const TransitionKernel& kernel) {
    const std::uint64_t n64 = kernel.num_states();
    if (n64 > kDenseSolveCap) {
        throw StateSpaceError("state space exceeds dense cap");
    }
    const std::size_t n = static_cast<std::size_t>(n64);

    // A = P^T - I, last row replaced by the normalization equation.
    std::vector<double> a(n * n, 0.0);
    std::vector<double> b(n, 0.0);
    for (std::uint64_t l = 0; l < n64; ++l) {
        const auto states = kernel.row_states(l);
        const auto probs = kernel.row_probs(l);
        for (std::size_t j = 0; j < states.size(); ++j) {
            a[static_cast<std::size_t>(states[j]) * n + static_cast<std::size_t>(l)] += probs[j];
        }
        a[static_cast<std::size_t>(l) * n + static_cast<std::size_t>(l)] -= 1.0;
    }
    for (std::size_t c = 0; c < n; ++c) a[(n - 1) * n + c] = 1.0;
    b[n - 1] = 1.0;

    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(a[r * n + col]);
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best < 1e-13) {
            throw SolverError("singular stationary system (chain is not ergodic)");
        }
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) {
                std::swap(a[pivot * n + c], a[col * n + c]);
            }
            std::swap(b[pivot], b[col]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r * n + col] * inv;
            if (factor == 0.0) continue;
            a[r * n + col] = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) {
                a[r * n + c] -= factor * a[col * n + c];
            }
            b[r] -= factor * b[col];
        }
    }

    StationaryDistribution result;
    result.method = StationaryDistribution::Method::direct;
    result.pi.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double value = b[r];
        for (std::size_t c = r + 1; c < n; ++c) {
            value -= a[r * n + c] * result.pi[c];
        }
        result.pi[r] = value / a[r * n + r];
    }

    clamp_and_normalize(result.pi);
    result.residual = stationarity_residual(kernel, result.pi);
    return result;
}

StationaryDistribution solve_power(const TransitionKernel& kernel,
                                   const PowerOptions& options) {
    const std::size_t n = static_cast<std::size_t>(kernel.num_states());
    std::vector<double> pi(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);

    double change = 0.0;
    bool converged = false;
    for (std::uint64_t iter = 0; iter < options.max_iters; ++iter) {
        kernel.next_distribution(pi, next);
        change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            change = std::max(change, std::abs(next[i] - pi[i]));
        }
        pi.swap(next);
        clamp_and_normalize(pi);
        if (change <= options.tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw SolverError("power iteration did not converge; last residual " +
                          std::to_string(change));
    }

    StationaryDistribution result;
    result.method = StationaryDistribution::Method::power;
    result.pi = std::move(pi);
    result.residual = stationarity_residual(kernel, result.pi);
    return result;
}

} // namespace mtsep
