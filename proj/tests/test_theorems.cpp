#include <doctest.h>

#include "mtsep/draws.hpp"
#include "mtsep/errors.hpp"
#include "mtsep/observables.hpp"
#include "mtsep/rng.hpp"
#include "mtsep/theorems.hpp"

#include "support.hpp"

#include <cmath>

using namespace mtsep;
using test_support::frac;
using test_support::make_params;

namespace {

SystemParams special_case_example() {
    // N=2, K=2, equal exit probabilities.
    return make_params(2, frac(2, 5),
                       {{0.5, frac(2, 5), frac(3, 10)}, {0.5, frac(4, 5), frac(3, 10)}});
}

} // namespace

TEST_CASE("eta maps onto occupancy patterns") {
    CHECK(eta(0) == 0);
    CHECK(eta(1) == 1);
    CHECK(eta(7) == 1);
    CHECK(eta(eta(3)) == eta(3));
}

TEST_CASE("product-form identities hold in the special case") {
    const auto report = verify_theorem2(special_case_example());
    REQUIRE(report.identities.size() == 9);
    CHECK(report.all_pass());
    CHECK(report.max_residual() <= 1e-10);
}

TEST_CASE("equal hop probabilities collapse the move identities") {
    const auto params = make_params(2, frac(2, 5),
                                    {{0.3, 0.6, 0.25}, {0.7, 0.6, 0.25}});
    const auto report = verify_theorem2(params);
    // With p1 = p2 = p*, eq6 and eq9 reduce to P(k,0) = a_k P*(1,0).
    CHECK(report.all_pass());
    for (const auto& identity : report.identities) {
        if (identity.id == "eq6" || identity.id == "eq9") {
            CHECK(identity.residual <= 1e-12);
        }
    }
}

TEST_CASE("unequal exit probabilities violate the precondition") {
    const auto params = test_support::row1_params();
    CHECK_THROWS_AS(verify_theorem2(params), PreconditionError);
    CHECK_THROWS_AS(verify_theorem3(params), PreconditionError);
    CHECK_THROWS_AS(verify_theorems4_5(params), PreconditionError);
    CHECK_NOTHROW(verify_theorems4_5(params, true));
}

TEST_CASE("theorem precondition also rejects wrong shape") {
    CHECK_THROWS_AS(verify_theorem2(make_params(3, 0.5, {{0.5, 0.5, 0.5},
                                                         {0.5, 0.5, 0.5}})),
                    PreconditionError);
    CHECK_THROWS_AS(verify_theorem2(make_params(2, 0.5, {{1.0, 0.5, 0.5}})),
                    PreconditionError);
}

TEST_CASE("group sums match the surrogate distribution") {
    const auto report = verify_theorem3(special_case_example());
    REQUIRE(report.identities.size() == 4);
    CHECK(report.all_pass());
}

TEST_CASE("group structure: singleton empty class, K^occupied members") {
    const auto params = special_case_example();
    const auto index = GSetIndex::build(params);
    REQUIRE(index.num_aux_states() == 4);
    CHECK(index.members(0).size() == 1);  // G(0,0)
    CHECK(index.members(1).size() == 2);  // G(0,1)
    CHECK(index.members(2).size() == 2);  // G(1,0)
    CHECK(index.members(3).size() == 4);  // G(1,1)
}

TEST_CASE("groups partition the state space for any shape") {
    Xoshiro256pp rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 4);
        const int k = 1 + static_cast<int>(rng.next() % 3);
        const auto params = random_instance(rng, n, k);
        const auto index = GSetIndex::build(params);
        const StateCodec codec(n, k);
        const StateCodec aux_codec(n, 1);

        std::vector<bool> seen(codec.num_states(), false);
        for (std::uint64_t aux = 0; aux < index.num_aux_states(); ++aux) {
            int occupied = 0;
            const auto aux_state = aux_codec.decode(aux);
            for (int v : aux_state.cells) occupied += v;
            double expected = 1.0;
            for (int i = 0; i < occupied; ++i) expected *= k;
            CHECK(index.members(aux).size() == static_cast<std::size_t>(expected));
            for (std::uint64_t member : index.members(aux)) {
                CHECK(!seen[static_cast<std::size_t>(member)]);
                seen[static_cast<std::size_t>(member)] = true;
            }
        }
        for (bool s : seen) CHECK(s);
    }
}

TEST_CASE("density and flow equalities hold in the special case") {
    const auto report = verify_theorems4_5(special_case_example());
    REQUIRE(report.identities.size() == 3);
    CHECK(report.all_pass());
}

TEST_CASE("a single type satisfies the equalities trivially") {
    const auto report =
        verify_theorems4_5(make_params(2, 0.45, {{1.0, 0.6, 0.35}}));
    CHECK(report.all_pass());
    CHECK(report.max_residual() <= 1e-12);
}

TEST_CASE("outside the special case the equalities visibly break") {
    const auto report = verify_theorems4_5(test_support::row1_params(), true);
    CHECK(!report.all_pass());
    // The published table gap for row 1 is about 7e-4 on rho_1.
    CHECK(report.identities[0].residual > 1e-4);
}

TEST_CASE("balance equations hold on solver output") {
    SUBCASE("two types, unequal exit probabilities") {
        const auto report = verify_balance_equations(test_support::row2_params());
        REQUIRE(report.identities.size() == 10);
        CHECK(report.all_pass());
    }
    SUBCASE("single type") {
        const auto report =
            verify_balance_equations(make_params(2, 0.35, {{1.0, 0.55, 0.45}}));
        REQUIRE(report.identities.size() == 5);
        CHECK(report.all_pass());
    }
}

TEST_CASE("single-type balance identities hold at 1e-12") {
    Xoshiro256pp rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const auto params = random_instance(rng, 2, 1);
        const auto report =
            verify_balance_equations(params, Eq23Variant::corrected, 1e-12);
        CHECK(report.all_pass());
    }
}

TEST_CASE("a uniform vector fails the balance equations") {
    const auto params = make_params(2, 0.35, {{1.0, 0.55, 0.45}});
    const std::vector<double> uniform(4, 0.25);
    const auto checks = balance_residuals(params, uniform);
    bool any_fail = false;
    for (const auto& c : checks) any_fail = any_fail || !c.pass;
    CHECK(any_fail);
}

TEST_CASE("the literal eq23 variant exposes the missing exit factor") {
    const auto corrected = verify_balance_equations(test_support::row1_params());
    const auto literal = verify_balance_equations(test_support::row1_params(),
                                                  Eq23Variant::published_literal);
    CHECK(corrected.all_pass());
    for (const auto& c : literal.identities) {
        if (c.id == "eq23") {
            CHECK(c.residual > 1e-6);
            CHECK(!c.pass);
        } else {
            CHECK(c.pass);
        }
    }
}

TEST_CASE("balance transcription requires two cells and at most two types") {
    CHECK_THROWS_AS(verify_balance_equations(make_params(3, 0.5, {{1.0, 0.5, 0.5}})),
                    PreconditionError);
    CHECK_THROWS_AS(
        verify_balance_equations(make_params(
            2, 0.5,
            {{frac(1, 3), 0.5, 0.5}, {frac(1, 3), 0.5, 0.5}, {frac(1, 3), 0.5, 0.5}})),
        PreconditionError);
}

TEST_CASE("group-sum probe generalizes across type counts") {
    Xoshiro256pp rng(23);
    for (int k = 1; k <= 4; ++k) {
        const auto params = random_instance(rng, 2, k, true);
        const auto report = probe_gset_sums(params);
        CHECK(report.all_pass());
    }
}
