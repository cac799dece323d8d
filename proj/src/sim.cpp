#include "mtsep/sim.hpp"

#include "mtsep/errors.hpp"
#include "mtsep/kernel.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <unordered_map>

namespace mtsep::sim {

StepRecord step(LatticeState& state, const SystemParams& params, Xoshiro256pp& rng) {
    const int n = params.n_cells;
    const LatticeState before = state;
    StepRecord record;

    if (before.cells[0] == 0 && rng.uniform() < params.alpha) {
        const double u = rng.uniform();
        double acc = 0.0;
        int type = params.num_types();
        for (int k = 0; k < params.num_types(); ++k) {
            acc += params.types[static_cast<std::size_t>(k)].arrival_weight;
            if (u < acc) {
                type = k + 1;
                break;
            }
        }
        state.cells[0] = type;
        record.arrived = true;
    }

    for (int i = 0; i + 1 < n; ++i) {
        const int k = before.cells[static_cast<std::size_t>(i)];
        if (k > 0 && before.cells[static_cast<std::size_t>(i + 1)] == 0 &&
            rng.uniform() < params.types[static_cast<std::size_t>(k - 1)].hop_prob) {
            state.cells[static_cast<std::size_t>(i)] = 0;
            state.cells[static_cast<std::size_t>(i + 1)] = k;
            ++record.moves;
        }
    }

    const int k_last = before.cells[static_cast<std::size_t>(n - 1)];
    if (k_last > 0 &&
        rng.uniform() < params.types[static_cast<std::size_t>(k_last - 1)].exit_prob) {
        state.cells[static_cast<std::size_t>(n - 1)] = 0;
        record.exited = true;
    }

    return record;
}

Estimate run(const SystemParams& params, const Config& config) {
    if (config.batches < 2) {
        throw ValidationError("batches must be at least 2");
    }
    if (config.sample_steps < static_cast<std::uint64_t>(config.batches)) {
        throw ValidationError("sample_steps must be at least the number of batches");
    }

    const std::size_t n = static_cast<std::size_t>(params.n_cells);
    const std::uint64_t batch_len =
        config.sample_steps / static_cast<std::uint64_t>(config.batches);

    Xoshiro256pp rng(config.seed);
    LatticeState state;
    state.cells.assign(n, 0);

    for (std::uint64_t t = 0; t < config.warmup_steps; ++t) {
        step(state, params, rng);
    }

    const std::size_t batches = static_cast<std::size_t>(config.batches);
    std::vector<std::vector<double>> batch_density(batches, std::vector<double>(n, 0.0));
    std::vector<double> batch_flow(batches, 0.0);

    for (std::size_t b = 0; b < batches; ++b) {
        std::vector<std::uint64_t> occupied(n, 0);
        std::uint64_t arrivals = 0;
        for (std::uint64_t t = 0; t < batch_len; ++t) {
            const StepRecord record = step(state, params, rng);
            arrivals += record.arrived ? 1 : 0;
            for (std::size_t i = 0; i < n; ++i) {
                occupied[i] += state.cells[i] > 0 ? 1 : 0;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            batch_density[b][i] =
                static_cast<double>(occupied[i]) / static_cast<double>(batch_len);
        }
        batch_flow[b] = static_cast<double>(arrivals) / static_cast<double>(batch_len);
    }

    Estimate estimate;
    estimate.seed = config.seed;
    estimate.batches = config.batches;
    estimate.warmup_steps = config.warmup_steps;
    estimate.sampled_steps = batch_len * static_cast<std::uint64_t>(config.batches);
    estimate.density_mean.assign(n, 0.0);
    estimate.density_se.assign(n, 0.0);

    const double b_count = static_cast<double>(batches);
    for (std::size_t i = 0; i < n; ++i) {
        double mean = 0.0;
        for (std::size_t b = 0; b < batches; ++b) mean += batch_density[b][i];
        mean /= b_count;
        double var = 0.0;
        for (std::size_t b = 0; b < batches; ++b) {
            const double d = batch_density[b][i] - mean;
            var += d * d;
        }
        estimate.density_mean[i] = mean;
        estimate.density_se[i] = std::sqrt(var / (b_count * (b_count - 1.0)));
    }
    double flow_mean = 0.0;
    for (double f : batch_flow) flow_mean += f;
    flow_mean /= b_count;
    double flow_var = 0.0;
    for (double f : batch_flow) {
        const double d = f - flow_mean;
        flow_var += d * d;
    }
    estimate.flow_mean = flow_mean;
    estimate.flow_se = std::sqrt(flow_var / (b_count * (b_count - 1.0)));
    return estimate;
}

namespace {

// Regularized incomplete gamma P(a,x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized incomplete gamma Q(a,x) by continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double chi_square_sf(double statistic, int dof) {
    if (dof <= 0) {
        return statistic <= 0.0 ? 1.0 : 0.0;
    }
    if (statistic <= 0.0) return 1.0;
    const double a = static_cast<double>(dof) / 2.0;
    const double x = statistic / 2.0;
    if (x < a + 1.0) {
        return 1.0 - gamma_p_series(a, x);
    }
    return gamma_q_cf(a, x);
}

ChiSquareReport chi_square_from_counts(const std::vector<std::uint64_t>& observed,
                                       const std::vector<double>& expected_probs,
                                       std::uint64_t draws) {
    if (observed.size() != expected_probs.size()) {
        throw ValidationError("observed and expected category counts differ");
    }
    ChiSquareReport report;
    report.draws = draws;
    int categories = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected_probs[i] <= 0.0) {
            if (observed[i] > 0) report.foreign_state = true;
            continue;
        }
        ++categories;
        const double expected = expected_probs[i] * static_cast<double>(draws);
        const double diff = static_cast<double>(observed[i]) - expected;
        report.statistic += diff * diff / expected;
    }
    report.dof = categories > 0 ? categories - 1 : 0;
    report.p_value =
        report.foreign_state ? 0.0 : chi_square_sf(report.statistic, report.dof);
    return report;
}

ChiSquareReport chi_square_transition_test(const SystemParams& params,
                                           const LatticeState& state,
                                           std::uint64_t draws, std::uint64_t seed) {
    if (draws < 10'000) {
        throw ValidationError("transition test needs at least 10^4 draws");
    }
    const StateCodec codec(params.n_cells, params.num_types());
    const auto model = successors(state, params);

    std::unordered_map<std::uint64_t, std::size_t> category;
    std::vector<double> expected;
    expected.reserve(model.size());
    for (const auto& [succ, prob] : model) {
        category.emplace(codec.encode(succ), expected.size());
        expected.push_back(prob);
    }

    std::vector<std::uint64_t> observed(expected.size(), 0);
    bool foreign = false;
    Xoshiro256pp rng(seed);
    LatticeState work = state;
    for (std::uint64_t i = 0; i < draws; ++i) {
        work = state;
        step(work, params, rng);
        const auto it = category.find(codec.encode(work));
        if (it == category.end()) {
            foreign = true;
        } else {
            ++observed[it->second];
        }
    }

    ChiSquareReport report = chi_square_from_counts(observed, expected, draws);
    report.foreign_state = report.foreign_state || foreign;
    if (report.foreign_state) report.p_value = 0.0;
    return report;
}

} // namespace mtsep::sim
