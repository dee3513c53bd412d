#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qlab/measurement.hpp"
#include "qlab/reductions.hpp"

using namespace qlab;

TEST_CASE("exact search error for grover") {
    const auto grover = make_grover_algorithm(4);
    const auto rep = exact_error_search(*grover, 4, SearchDist::yes_uniform);
    CHECK(rep.eps1.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.eps0.value == 0.0);  // verification rejects the unmarked instance
    CHECK(rep.query_max == grover_iteration_count(4) + 1);
    CHECK_FALSE(rep.eps1.exact.has_value());  // statevector mode reports floats
}

TEST_CASE("exact search error for a fair guess") {
    const auto coin = make_machine_algorithm(coin_flip_algorithm(4));
    for (auto dist : {SearchDist::mixed, SearchDist::no_only, SearchDist::yes_uniform}) {
        const auto rep = exact_error_search(*coin, 4, dist);
        CHECK(*rep.eps_mu.exact == Rat(1, 2));
    }
}

TEST_CASE("exact search error of the derived search solver at n=6") {
    const auto b =
        make_search_reduction(make_machine_algorithm(baseline_perm_solver(6)), 6);
    const auto rep = exact_error_search(*b, 3, SearchDist::mixed);
    CHECK(*rep.eps0.exact == Rat(0));
    CHECK(*rep.eps1.exact == Rat(1, 2));
    CHECK(*rep.eps_mu.exact == Rat(1, 4));
}

TEST_CASE("exact permutation error") {
    CHECK(*exact_error_perm(*make_machine_algorithm(baseline_perm_solver(5)), 5)
               .eps_mu.exact == Rat(0));
    const auto rep = exact_error_perm(*make_machine_algorithm(truncated_scan_solver(4, 2)), 4);
    CHECK(*rep.eps_mu.exact == Rat(1, 4));
    // Uniform weighting identity over the two classes.
    CHECK(*rep.eps_mu.exact == (*rep.eps0.exact + *rep.eps1.exact) / 2);
}

TEST_CASE("exact mode rejections") {
    const auto big = make_machine_algorithm(baseline_perm_solver(9));
    CHECK_THROWS_AS(exact_error_perm(*big, 9), cap_error);

    ClassicalAlgorithm undeclared = coin_flip_algorithm(3);
    undeclared.finite_randomness = false;
    const auto alg = make_machine_algorithm(undeclared);
    CHECK_THROWS_AS(exact_error_search(*alg, 3, SearchDist::mixed), precondition_error);
}

TEST_CASE("exact reports are reproducible") {
    const auto alg = make_machine_algorithm(truncated_scan_solver(4, 2));
    const auto a = exact_error_perm(*alg, 4);
    const auto b = exact_error_perm(*alg, 4);
    CHECK(*a.eps_mu.exact == *b.eps_mu.exact);
    CHECK(a.query_mean == b.query_mean);
}

TEST_CASE("hoeffding half-width") {
    CHECK(hoeffding_halfwidth(100000) ==
          doctest::Approx(std::sqrt(std::log(200.0) / 200000.0)).epsilon(1e-12));
    CHECK(hoeffding_halfwidth(100000) == doctest::Approx(0.0051).epsilon(2e-2));
}

TEST_CASE("monte carlo error on an exact solver") {
    const auto alg = make_machine_algorithm(baseline_perm_solver(5));
    RandomStream rng(1);
    const auto rep = mc_error(*alg, 5, InputDist::perm_uniform, 100000, rng);
    CHECK(rep.eps_mu.value == 0.0);
    CHECK(rep.ci_halfwidth.value() == doctest::Approx(0.005147).epsilon(1e-3));
    CHECK(rep.trials == 100000);
    CHECK(rep.query_max <= 5);

    RandomStream rng2(1);
    const auto rep2 = mc_error(*alg, 5, InputDist::perm_uniform, 100000, rng2);
    CHECK(rep.eps_mu.value == rep2.eps_mu.value);
    CHECK(rep.query_mean == rep2.query_mean);
}

TEST_CASE("monte carlo estimates cover the exact value") {
    // 100 independent estimates of a known 1/4 error rate: the 99% interval
    // must cover in at least 99 of them for this seed set.
    const auto alg = make_machine_algorithm(truncated_scan_solver(4, 2));
    const long trials = 2000;
    int covered = 0;
    for (int seed = 0; seed < 100; ++seed) {
        RandomStream rng(static_cast<std::uint64_t>(seed));
        const auto rep = mc_error(*alg, 4, InputDist::perm_uniform, trials, rng);
        if (std::abs(rep.eps_mu.value - 0.25) < *rep.ci_halfwidth) ++covered;
    }
    CHECK(covered >= 99);
}

TEST_CASE("monte carlo over search distributions") {
    const auto b =
        make_search_reduction(make_machine_algorithm(baseline_perm_solver(4)), 4);
    RandomStream rng(12);
    const auto rep = mc_error(*b, 2, InputDist::search_mixed, 20000, rng);
    CHECK(std::abs(rep.eps_mu.value - 0.25) < *rep.ci_halfwidth);
    CHECK(std::abs(rep.eps1.value - 0.5) < 3 * *rep.ci_halfwidth);
    CHECK(rep.eps0.value <= 0.01);
}

TEST_CASE("uniformity test") {
    // Perfectly uniform synthetic counts pass.
    const std::vector<long> uniform(6, 100);
    CHECK(uniformity_test_counts(uniform, 0.01).pass);

    // All mass on one label out of six fails decisively.
    std::vector<int> degenerate(600, 3);
    const auto bad = uniformity_test(degenerate, 6, 0.01);
    CHECK_FALSE(bad.pass);
    CHECK(bad.statistic > bad.critical);
    CHECK(bad.dof == 5);

    CHECK_THROWS_AS(uniformity_test(std::span<const int>(), 6, 0.01), precondition_error);
    std::vector<int> out_of_range = {7};
    CHECK_THROWS_AS(uniformity_test(out_of_range, 6, 0.01), precondition_error);
}

TEST_CASE("sampled planted collisions look uniform at n=6") {
    const auto collisions = collision_set(6);
    REQUIRE(collisions.size() == 1080);
    std::map<std::string, int> label;
    int next = 0;
    for (const auto& h : collisions) label[to_line(h)] = next++;

    RandomStream rng(1);
    std::vector<int> samples;
    samples.reserve(60000);
    for (int t = 0; t < 60000; ++t) {
        const auto p = sample_uniform_in_class(6, InstanceClass::no_instance, rng);
        const auto neighbors = collision_neighbors(p);
        samples.push_back(
            label.at(to_line(neighbors[static_cast<std::size_t>(rng.uniform_int(3))])));
    }
    CHECK(uniformity_test(samples, next, 0.01).pass);
}
