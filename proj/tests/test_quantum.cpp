#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qlab/quantum.hpp"

using namespace qlab;
using qlab_test::zero_ancilla_distance;
using qlab_test::zero_based;

TEST_CASE("iteration count formula") {
    CHECK(grover_iteration_count(1) == 0);
    CHECK(grover_iteration_count(4) == 1);
    CHECK(grover_iteration_count(16) == 3);
    CHECK(grover_iteration_count(64) == 6);
    CHECK(grover_iteration_count(100) == 7);
}

TEST_CASE("xor oracle basics") {
    const Layout lay = make_layout(4, 1);

    // All-zero table: the identity.
    StateVector s{lay, std::vector<Amp>(lay.dim())};
    for (std::size_t b = 0; b < lay.dim(); ++b)
        s.amp[b] = Amp{static_cast<double>(b + 1), 0.5};
    const auto before = s.amp;
    const std::vector<int> zeros(4, 0);
    apply_xor_table(s, zeros);
    CHECK(s.amp == before);

    // Applying a search oracle twice is the identity.
    const std::vector<int> marked3 = {0, 0, 1, 0};
    apply_xor_table(s, marked3);
    CHECK(s.amp != before);
    apply_xor_table(s, marked3);
    for (std::size_t b = 0; b < lay.dim(); ++b)
        CHECK(std::abs(s.amp[b] - before[b]) < 1e-12);

    // Basis action: |3>|0> -> |3>|1> when position 3 is marked.
    StateVector t = basis_state(lay, 2, 0);
    apply_xor_table(t, marked3);
    CHECK(std::abs(t.amp[lay.pack(2, 1, 0)] - Amp{1.0, 0.0}) < 1e-12);
}

TEST_CASE("oracle unitaries are permutation matrices") {
    const OracleInput input = to_input(Permutation({2, 1, 4, 3}));
    TableOracle oracle(input, OracleValueKind::function_values);
    const Layout lay = oracle.layout();
    for (std::size_t col = 0; col < lay.dim(); ++col) {
        StateVector s{lay, std::vector<Amp>(lay.dim())};
        s.amp[col] = Amp{1.0, 0.0};
        oracle.apply(s);
        int ones = 0;
        for (const auto& a : s.amp) {
            if (std::abs(a - Amp{1.0, 0.0}) < 1e-12) {
                ++ones;
            } else {
                CHECK(std::abs(a) < 1e-12);
            }
        }
        CHECK(ones == 1);
    }
}

TEST_CASE("norm is preserved across long circuits") {
    const Layout lay = make_layout(16, 1);
    StateVector s{lay, std::vector<Amp>(lay.dim())};
    const double a = 1.0 / std::sqrt(32.0);
    for (int i = 0; i < 16; ++i) {
        s.amp[lay.pack(i, 0, 0)] = Amp{a, 0.0};
        s.amp[lay.pack(i, 1, 0)] = Amp{-a, 0.0};
    }
    std::vector<int> table(16, 0);
    table[5] = 1;
    for (int g = 0; g < 5000; ++g) {
        apply_xor_table(s, table);
        apply_diffusion(s);
    }
    CHECK(std::abs(norm(s) - 1.0) < 1e-9);
}

TEST_CASE("hybrid query oracle equals the direct oracle on the clean sector") {
    // Unmarked search input: acts as the permutation oracle.
    const Permutation p({2, 1, 3, 4});
    const OracleInput f0 = to_input(SearchInstance(2, std::nullopt));
    HybridQueryOracle idle(p, f0);
    CHECK(zero_ancilla_distance(idle, zero_based(p.values())) < 1e-9);

    // Marked input: acts as the hybrid's oracle.
    const OracleInput f1 = to_input(SearchInstance(2, 1));
    HybridQueryOracle marked(p, f1);
    const auto h = build_hybrid(p, SearchInstance(2, 1));
    CHECK(h.values() == std::vector<int>{1, 1, 3, 4});
    CHECK(zero_ancilla_distance(marked, zero_based(h.values())) < 1e-9);

    // Two search queries per application.
    HybridQueryOracle counted(p, f1);
    StateVector s = basis_state(counted.layout(), 0, 0, 0);
    counted.apply(s);
    CHECK(counted.queries() == 2);
    counted.apply(s);
    CHECK(counted.queries() == 4);

    // The ancilla bit is restored on every computational basis state.
    HybridQueryOracle anc(p, f1);
    const Layout lay = anc.layout();
    for (std::size_t col = 0; col < lay.dim(); ++col) {
        StateVector t{lay, std::vector<Amp>(lay.dim())};
        t.amp[col] = Amp{1.0, 0.0};
        anc.apply(t);
        for (std::size_t row = 0; row < lay.dim(); ++row)
            if (std::abs(t.amp[row]) > 0.5) CHECK(lay.ancilla_of(row) == lay.ancilla_of(col));
    }

    CHECK_THROWS_AS(HybridQueryOracle(Permutation({2, 1, 3}), f1), precondition_error);
    CHECK_THROWS_AS(HybridQueryOracle(p, to_input(SearchInstance(3, 1))), precondition_error);

    // A state without the ancilla bit is rejected.
    HybridQueryOracle no_anc(p, f1);
    StateVector flat = basis_state(make_layout(4, 2, 0), 0, 0);
    CHECK_THROWS_AS(no_anc.apply(flat), precondition_error);
    InversionSearchOracle narrow(to_input(Permutation({2, 1, 3, 4})));
    StateVector thin = basis_state(make_layout(4, 1, 1), 0, 0);
    CHECK_THROWS_AS(narrow.apply(thin), precondition_error);
}

TEST_CASE("hybrid query oracle across all n=2 hosts and inputs") {
    for (const auto& p : enumerate_permutations(2)) {
        for (const auto marked : {std::optional<int>{}, std::optional<int>{1}}) {
            const SearchInstance f(1, marked);
            HybridQueryOracle oracle(p, to_input(f));
            CHECK(zero_ancilla_distance(oracle, zero_based(build_hybrid(p, f).values())) <
                  1e-9);
        }
    }
}

TEST_CASE("derived search oracle from a permutation") {
    // Identity permutation: the value 1 sits at the odd position 1, so no
    // position qualifies.
    InversionSearchOracle none(to_input(Permutation({1, 2, 3, 4})));
    for (int i = 1; i <= 4; ++i) CHECK(none.value_at(i) == 0);
    CHECK(zero_ancilla_distance(none, std::vector<int>(4, 0)) < 1e-9);

    // Preimage of 1 at position 2: derived bit set there only.
    InversionSearchOracle swapped(to_input(Permutation({2, 1, 3, 4})));
    CHECK(swapped.value_at(1) == 0);
    CHECK(swapped.value_at(2) == 1);
    CHECK(swapped.value_at(3) == 0);
    CHECK(swapped.value_at(4) == 0);
    CHECK(zero_ancilla_distance(swapped, std::vector<int>{0, 1, 0, 0}) < 1e-9);

    InversionSearchOracle counted(to_input(Permutation({2, 1, 3, 4})));
    StateVector s = basis_state(counted.layout(), 0, 0, 0);
    counted.apply(s);
    CHECK(counted.queries() == 2);

    CHECK_THROWS_AS(InversionSearchOracle(to_input(Permutation({1, 2, 3}))),
                    precondition_error);
}

TEST_CASE("grover search") {
    // n = 1: no iterations, one verification query, always correct.
    {
        TableOracle hit(to_input(SearchInstance(1, 1)), OracleValueKind::search_bits);
        const auto out = GroverSearch(1).run_exact(hit);
        CHECK(out.p_one == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(out.query_count == 1);
        TableOracle miss(to_input(SearchInstance(1, std::nullopt)),
                         OracleValueKind::search_bits);
        CHECK(GroverSearch(1).run_exact(miss).p_one == 0.0);
    }

    // Success probabilities match the closed form; the unmarked instance
    // never errs; query counts are iterations + 1.
    for (int n : {2, 4, 8, 16}) {
        const int k = grover_iteration_count(n);
        for (int m = 1; m <= n; m += std::max(1, n / 3)) {
            TableOracle oracle(to_input(SearchInstance(n, m)), OracleValueKind::search_bits);
            const auto out = GroverSearch(n).run_exact(oracle);
            CHECK(std::abs(out.p_one - grover_success_probability(n, k)) < 1e-9);
            CHECK(out.query_count == k + 1);
            CHECK(std::abs(out.p_zero + out.p_one - 1.0) < 1e-9);
        }
        TableOracle miss(to_input(SearchInstance(n, std::nullopt)),
                         OracleValueKind::search_bits);
        CHECK(GroverSearch(n).run_exact(miss).p_one == 0.0);
    }

    // n = 4 reaches certainty after one iteration; n = 8 lands near 0.9453.
    TableOracle four(to_input(SearchInstance(4, 3)), OracleValueKind::search_bits);
    CHECK(std::abs(GroverSearch(4).run_exact(four).p_one - 1.0) < 1e-9);
    TableOracle eight(to_input(SearchInstance(8, 5)), OracleValueKind::search_bits);
    CHECK(GroverSearch(8).run_exact(eight).p_one == doctest::Approx(0.9453).epsilon(1e-4));
}

TEST_CASE("run_quantum modes") {
    const qlab_test::IdleCircuit idle(4);
    TableOracle oracle(to_input(SearchInstance(4, 2)), OracleValueKind::search_bits);
    const auto out = run_quantum(idle, oracle);
    CHECK(out.p_zero == 1.0);
    CHECK(out.query_count == 0);

    // Shots mode is a pure function of the seed.
    auto shots_with_seed = [&](std::uint64_t seed) {
        TableOracle o(to_input(SearchInstance(4, 2)), OracleValueKind::search_bits);
        RandomStream rng(seed);
        return run_quantum_shots(GroverSearch(4), o, 500, rng);
    };
    const auto a = shots_with_seed(5), b = shots_with_seed(5);
    CHECK(a.p_one == b.p_one);
    CHECK(a.query_count == b.query_count);

    // Empirical frequencies track the exact distribution.
    TableOracle o8(to_input(SearchInstance(8, 3)), OracleValueKind::search_bits);
    TableOracle o8s(to_input(SearchInstance(8, 3)), OracleValueKind::search_bits);
    const double exact = GroverSearch(8).run_exact(o8).p_one;
    RandomStream rng(7);
    const long shots = 4000;
    const auto sampled = run_quantum_shots(GroverSearch(8), o8s, shots, rng);
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(shots));
    CHECK(std::abs(sampled.p_one - exact) < 4 * sigma);
}

TEST_CASE("qubit cap") {
    CHECK_THROWS_AS(make_layout(1 << 22, 1, 0), cap_error);
    CHECK(make_layout(1 << 21, 1, 0).total_bits() == 22);
}

TEST_CASE("single-probe circuit pays two search queries through the hybrid oracle") {
    const qlab_test::SingleIndexProbe probe(4);
    HybridQueryOracle oracle(Permutation({2, 1, 3, 4}), to_input(SearchInstance(2, 1)));
    const auto out = probe.run_exact(oracle);
    CHECK(out.query_count == 2);
    // The hybrid maps position 1 to the value 1, so the probe accepts.
    CHECK(out.p_one == doctest::Approx(1.0).epsilon(1e-12));
}
