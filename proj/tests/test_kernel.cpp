#include <doctest.h>

#include "mtsep/draws.hpp"
#include "mtsep/errors.hpp"
#include "mtsep/kernel.hpp"
#include "mtsep/rng.hpp"

#include "support.hpp"

#include <cmath>
#include <cstdint>
#include <map>

using namespace mtsep;
using test_support::frac;
using test_support::make_params;

namespace {

using DenseKernel = std::map<std::pair<std::uint64_t, std::uint64_t>, double>;

DenseKernel to_dense(const TransitionKernel& kernel) {
    DenseKernel dense;
    for (std::uint64_t row = 0; row < kernel.num_states(); ++row) {
        const auto states = kernel.row_states(row);
        const auto probs = kernel.row_probs(row);
        for (std::size_t j = 0; j < states.size(); ++j) {
            dense[{row, states[j]}] += probs[j];
        }
    }
    return dense;
}

void check_kernels_equal(const TransitionKernel& actual, const DenseKernel& expected) {
    const DenseKernel got = to_dense(actual);
    for (const auto& [key, prob] : expected) {
        REQUIRE_MESSAGE(got.count(key) == 1, "missing transition ", key.first, " -> ",
                        key.second);
        CHECK(std::abs(got.at(key) - prob) <= 1e-15);
    }
    for (const auto& [key, prob] : got) {
        CHECK_MESSAGE(expected.count(key) == 1, "unexpected transition ", key.first,
                      " -> ", key.second, " prob ", prob);
    }
}

// Single-type two-cell kernel written out by hand from the update rule.
DenseKernel single_type_two_cell_oracle(double alpha, double p, double beta) {
    DenseKernel m;
    m[{0, 0}] = 1 - alpha;
    m[{0, 2}] = alpha;
    m[{1, 0}] = (1 - alpha) * beta;
    m[{1, 1}] = (1 - alpha) * (1 - beta);
    m[{1, 2}] = alpha * beta;
    m[{1, 3}] = alpha * (1 - beta);
    m[{2, 1}] = p;
    m[{2, 2}] = 1 - p;
    m[{3, 2}] = beta;
    m[{3, 3}] = 1 - beta;
    return m;
}

// Two-type two-cell kernel transcribed by hand; the off-diagonal entries
// are the coefficients of the stationary balance system.
DenseKernel two_type_two_cell_oracle(double alpha, double a1, double a2, double p1,
                                     double p2, double b1, double b2) {
    DenseKernel m;
    // (0,0) -> arrival only
    m[{0, 0}] = 1 - alpha;
    m[{0, 3}] = alpha * a1;
    m[{0, 6}] = alpha * a2;
    // (0,k): independent arrival and exit
    m[{1, 0}] = (1 - alpha) * b1;
    m[{1, 1}] = (1 - alpha) * (1 - b1);
    m[{1, 3}] = alpha * a1 * b1;
    m[{1, 4}] = alpha * a1 * (1 - b1);
    m[{1, 6}] = alpha * a2 * b1;
    m[{1, 7}] = alpha * a2 * (1 - b1);
    m[{2, 0}] = (1 - alpha) * b2;
    m[{2, 2}] = (1 - alpha) * (1 - b2);
    m[{2, 3}] = alpha * a1 * b2;
    m[{2, 5}] = alpha * a1 * (1 - b2);
    m[{2, 6}] = alpha * a2 * b2;
    m[{2, 8}] = alpha * a2 * (1 - b2);
    // (k,0): forward move only
    m[{3, 1}] = p1;
    m[{3, 3}] = 1 - p1;
    m[{6, 2}] = p2;
    m[{6, 6}] = 1 - p2;
    // (j,k): exit only
    m[{4, 3}] = b1;
    m[{4, 4}] = 1 - b1;
    m[{5, 3}] = b2;
    m[{5, 5}] = 1 - b2;
    m[{7, 6}] = b1;
    m[{7, 7}] = 1 - b1;
    m[{8, 6}] = b2;
    m[{8, 8}] = 1 - b2;
    return m;
}

int particle_count(const LatticeState& state) {
    int count = 0;
    for (int v : state.cells) count += v > 0 ? 1 : 0;
    return count;
}

// A transition is legal under the parallel rule iff every cell either kept
// its occupant, was vacated by a move or exit, or received its left
// neighbour's time-t occupant (cell 1: a fresh arrival).
bool legal_transition(const LatticeState& x, const LatticeState& y, int num_types) {
    const int n = static_cast<int>(x.cells.size());
    for (int i = 0; i < n; ++i) {
        const int before = x.cells[static_cast<std::size_t>(i)];
        const int after = y.cells[static_cast<std::size_t>(i)];
        if (after == before) continue;
        if (after == 0) {
            if (before == 0) return false;
            const bool exited = i == n - 1;
            const bool moved = i + 1 < n && x.cells[static_cast<std::size_t>(i + 1)] == 0 &&
                               y.cells[static_cast<std::size_t>(i + 1)] == before;
            if (!exited && !moved) return false;
        } else if (before == 0) {
            if (i == 0) {
                if (after < 1 || after > num_types) return false;
            } else {
                const int left = x.cells[static_cast<std::size_t>(i - 1)];
                if (left != after || y.cells[static_cast<std::size_t>(i - 1)] != 0) {
                    return false;
                }
            }
        } else {
            return false;  // occupant replaced or retyped in place
        }
    }
    const int delta = particle_count(y) - particle_count(x);
    return delta >= -1 && delta <= 1;
}

} // namespace

TEST_CASE("successor distribution for a movable particle") {
    const auto params = make_params(2, 0.5, {{1.0, 0.7, 0.4}});
    const auto succ = successors(LatticeState{{1, 0}}, params);
    REQUIRE(succ.size() == 2);
    CHECK(succ[0].first == LatticeState{{0, 1}});
    CHECK(succ[0].second == doctest::Approx(0.7));
    CHECK(succ[1].first == LatticeState{{1, 0}});
    CHECK(succ[1].second == doctest::Approx(0.3));
}

TEST_CASE("a blocked particle cannot chase the one leaving") {
    const auto params = make_params(2, 0.5, {{1.0, 0.7, 0.4}});
    const auto succ = successors(LatticeState{{1, 1}}, params);
    REQUIRE(succ.size() == 2);
    CHECK(succ[0].first == LatticeState{{1, 0}});
    CHECK(succ[0].second == doctest::Approx(0.4));
    CHECK(succ[1].first == LatticeState{{1, 1}});
    CHECK(succ[1].second == doctest::Approx(0.6));
}

TEST_CASE("arrival branches over the particle types") {
    const auto params =
        make_params(2, 0.4, {{0.25, 0.5, 0.5}, {0.75, 0.5, 0.5}});
    const auto succ = successors(LatticeState{{0, 0}}, params);
    REQUIRE(succ.size() == 3);
    CHECK(succ[0].first == LatticeState{{0, 0}});
    CHECK(succ[0].second == doctest::Approx(0.6));
    CHECK(succ[1].first == LatticeState{{1, 0}});
    CHECK(succ[1].second == doctest::Approx(0.4 * 0.25));
    CHECK(succ[2].first == LatticeState{{2, 0}});
    CHECK(succ[2].second == doctest::Approx(0.4 * 0.75));
}

TEST_CASE("a fully occupied lattice only exits") {
    const auto params = make_params(4, 0.5, {{1.0, 0.7, 0.4}});
    const auto succ = successors(LatticeState{{1, 1, 1, 1}}, params);
    REQUIRE(succ.size() == 2);
    CHECK(succ[0].first == LatticeState{{1, 1, 1, 0}});
    CHECK(succ[0].second == doctest::Approx(0.4));
    CHECK(succ[1].first == LatticeState{{1, 1, 1, 1}});
    CHECK(succ[1].second == doctest::Approx(0.6));
}

TEST_CASE("single-type two-cell kernel matches the hand oracle") {
    const double alpha = frac(2, 5);
    const double p = frac(3, 5);
    const double beta = frac(3, 10);
    const auto kernel = build_kernel(make_params(2, alpha, {{1.0, p, beta}}));
    REQUIRE(kernel.num_states() == 4);
    check_kernels_equal(kernel, single_type_two_cell_oracle(alpha, p, beta));
}

TEST_CASE("one-cell single-type kernel is the two-state birth-death chain") {
    const auto kernel = build_kernel(make_params(1, 0.3, {{1.0, 1.0, 0.2}}));
    DenseKernel expected;
    expected[{0, 0}] = 0.7;
    expected[{0, 1}] = 0.3;
    expected[{1, 0}] = 0.2;
    expected[{1, 1}] = 0.8;
    check_kernels_equal(kernel, expected);
}

TEST_CASE("two-type two-cell kernel matches the hand oracle") {
    const auto params = test_support::row1_params();
    const auto kernel = build_kernel(params);
    REQUIRE(kernel.num_states() == 9);
    check_kernels_equal(kernel,
                        two_type_two_cell_oracle(params.alpha, frac(3, 7), frac(4, 7),
                                                 frac(3, 5), frac(4, 5), frac(3, 10),
                                                 frac(2, 5)));
}

TEST_CASE("rows are stochastic and transitions legal on random instances") {
    Xoshiro256pp rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 4);
        const int k = 1 + static_cast<int>(rng.next() % 2);
        const auto params = random_instance(rng, n, k);
        const auto kernel = build_kernel(params);
        const StateCodec codec(n, k);
        for (std::uint64_t row = 0; row < kernel.num_states(); ++row) {
            CHECK(std::abs(kernel.row_sum(row) - 1.0) <= 1e-12);
            const LatticeState from = codec.decode(row);
            const auto states = kernel.row_states(row);
            const auto probs = kernel.row_probs(row);
            for (std::size_t j = 0; j < states.size(); ++j) {
                CHECK(probs[j] > 0.0);
                CHECK(legal_transition(from, codec.decode(states[j]), k));
            }
        }
    }
}

TEST_CASE("kernel build refuses above the cap") {
    const auto params = make_params(10, 0.5, {{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}});
    CHECK_THROWS_AS(build_kernel(params, 1024), StateSpaceError);
}

TEST_CASE("explicit rows round-trip through from_rows") {
    const auto kernel = TransitionKernel::from_rows({
        {{0, 0.5}, {1, 0.5}},
        {{0, 1.0}},
    });
    CHECK(kernel.num_states() == 2);
    CHECK(kernel.row_sum(0) == doctest::Approx(1.0));
    std::vector<double> next(2, 0.0);
    kernel.next_distribution(std::vector<double>{1.0, 0.0}, next);
    CHECK(next[0] == doctest::Approx(0.5));
    CHECK(next[1] == doctest::Approx(0.5));
}
