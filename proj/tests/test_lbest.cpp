#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tpred/errors.hpp"
#include "tpred/lbest.hpp"

using namespace tpred;

namespace {

// Returned costs must equal the l smallest exhaustive costs; any cost-equal
// substitute remainder is accepted.
void check_against_exhaustive(const Layout& l, const Sequence& prefix, int limit) {
    const auto sorted = oracle::sorted_remainders(l, prefix);
    const auto got = lbest_remainders(l, prefix, limit);
    const std::size_t want = std::min<std::size_t>(limit, sorted.size());
    REQUIRE(got.remainders.size() == want);
    REQUIRE(got.costs.size() == want);
    CHECK(got.exhaustive_equivalent == sorted.size());
    const int from = prefix.empty() ? -1 : prefix.back();
    for (std::size_t i = 0; i < want; ++i) {
        CHECK(std::abs(got.costs[i] - sorted[i].first) <= 1e-12);
        CHECK(std::abs(oracle::walk(l, from, got.remainders[i]) - got.costs[i]) <= 1e-12);
        Sequence check = got.remainders[i];
        Sequence merged = prefix;
        merged.insert(merged.end(), check.begin(), check.end());
        std::sort(merged.begin(), merged.end());
        for (int k = 0; k < l.size(); ++k) CHECK(merged[k] == k);
        if (i > 0) CHECK(got.costs[i - 1] <= got.costs[i]);
    }
}

} // namespace

TEST_CASE("lbest on the collinear layout") {
    const Layout l = oracle::collinear();
    const Sequence first{0};
    const auto one = lbest_remainders(l, first, 1);
    REQUIRE(one.remainders.size() == 1);
    CHECK(one.remainders[0] == Sequence{1, 2});
    CHECK(one.costs[0] == doctest::Approx(2.0));

    const Sequence all{0, 1, 2};
    const auto done = lbest_remainders(l, all, 5);
    CHECK(done.remainders == std::vector<Sequence>{Sequence{}});
    CHECK(done.costs == std::vector<double>{0.0});

    CHECK_THROWS_AS(lbest_remainders(l, first, 0), InvalidArgument);
    const Sequence dup{0, 0};
    CHECK_THROWS_AS(lbest_remainders(l, dup, 1), InvalidPrefix);
}

TEST_CASE("exhaustive l returns the sorted enumeration") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const Layout l = oracle::random_layout(rng, 5);
        const Sequence prefix{rep % 5};
        const auto got = lbest_remainders(l, prefix, 1000);
        const auto sorted = oracle::sorted_remainders(l, prefix);
        REQUIRE(got.remainders.size() == sorted.size());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            CHECK(got.remainders[i] == sorted[i].second);
            CHECK(std::abs(got.costs[i] - sorted[i].first) <= 1e-12);
        }
    }
}

TEST_CASE("ties at the cutoff break lexicographically and are flagged") {
    // Mirror-symmetric pair: both orders cost the same.
    const Layout l{"mirror", {0.5, 0.1}, {{0.2, 0.5}, {0.8, 0.5}}};
    const auto got = lbest_remainders(l, {}, 1);
    CHECK(got.remainders[0] == Sequence{0, 1});
    CHECK(got.tied_at_cutoff);
    const auto both = lbest_remainders(l, {}, 2);
    CHECK_FALSE(both.tied_at_cutoff);
}

TEST_CASE("property: l-best set matches exhaustive enumeration") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 4 + rep % 6;  // up to 9 targets
        const Layout l = oracle::random_layout(rng, n);
        Sequence prefix;
        if (n > 8) prefix.push_back(rep % n);
        for (int limit : {1, 2, 5}) check_against_exhaustive(l, prefix, limit);
    }
}

TEST_CASE("nearest-neighbor bound never exceeds the true completion cost") {
    std::mt19937_64 rng(41);
    const NearestNeighborBound bound;
    for (int rep = 0; rep < 50; ++rep) {
        const Layout l = oracle::random_layout(rng, 6);
        const DistanceTable dist(l);
        const Sequence prefix{rep % 6};
        const auto sorted = oracle::sorted_remainders(l, prefix);
        std::uint32_t mask = 0x3f & ~(1u << prefix[0]);
        CHECK(bound.lower_bound(dist, mask, prefix[0]) <= sorted[0].first + 1e-12);
    }
}

TEST_CASE("property: truncated predictability bounds the exact one from above") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        const Layout l = oracle::random_layout(rng, 5);
        const Rationality r(1.0 + rep);
        for (const auto& order : oracle::all_plans(l)) {
            for (int t = 0; t <= 3; ++t) {
                const double exact = t_predictability_exact(l, Plan{order}, t, r);
                const double approx = t_predictability_approx(l, Plan{order}, t, r, 2);
                CHECK(approx >= exact * (1.0 - 1e-12));
                CHECK(approx <= 1.0);
                CHECK(approx > 0.0);
            }
        }
    }
}

TEST_CASE("t_predictability_approx examples") {
    const Layout l = oracle::collinear();
    const Plan abc{{0, 1, 2}};
    const Rationality one(1.0);
    CHECK(t_predictability_approx(l, abc, 1, one, 2) == doctest::Approx(0.7310585786300049).epsilon(1e-12));
    CHECK(t_predictability_approx(l, abc, 1, one, 1) == 1.0);
    // Own remainder [2,1] is not the 1-best; it still enters the denominator.
    CHECK(t_predictability_approx(l, Plan{{0, 2, 1}}, 1, one, 1) == doctest::Approx(0.2689414213699951));
    CHECK_THROWS_AS(t_predictability_approx(l, abc, 4, one, 2), HorizonExceeded);

    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 5; ++rep) {
        const Layout r = oracle::random_layout(rng, 6);
        for (const auto& order : oracle::all_plans(r)) {
            const Plan p{order};
            CHECK(std::abs(t_predictability_approx(r, p, 1, one, 120) - t_predictability_exact(r, p, 1, one)) <= 1e-12);
        }
    }
}

TEST_CASE("uniform observer with truncation counts the listed remainders") {
    std::mt19937_64 rng(53);
    const Layout l = oracle::random_layout(rng, 5);
    const auto sorted = oracle::sorted_remainders(l, {});
    CHECK(t_predictability_approx(l, Plan{sorted[0].second}, 0, Rationality::uniform(), 2) == 0.5);
    CHECK(t_predictability_approx(l, Plan{sorted.back().second}, 0, Rationality::uniform(), 2) ==
          doctest::Approx(1.0 / 3.0));
}

TEST_CASE("pruning expands far fewer nodes than exhaustive search at nine open targets") {
    std::mt19937_64 rng(59);
    int effective = 0;
    const int trials = 30;
    for (int rep = 0; rep < trials; ++rep) {
        const Layout l = oracle::random_layout(rng, 9);
        const auto got = lbest_remainders(l, {}, 2);
        CHECK(got.exhaustive_equivalent == 362880);
        if (got.nodes_expanded * 10 < got.exhaustive_equivalent) ++effective;
    }
    CHECK(effective * 10 >= trials * 9);
}
