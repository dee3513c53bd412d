#pragma once
#include <cstdint>
#include <memory>

#include "qlab/algorithm.hpp"
#include "qlab/quantum.hpp"
#include "qlab/rational.hpp"

namespace qlab {

// Parameters for deriving a search solver from an inversion solver: the
// (even) inversion domain size and an assumed bound on the solver's
// distributional error under uniform permutations. The bound feeds only
// reporting and rebalancing; the derivation itself never branches on it.
struct ReductionConfig {
    int n;
    Rat epsilon_bound;
    std::uint64_t seed;

    ReductionConfig(int n_, Rat epsilon_bound_, std::uint64_t seed_ = 0);
};

// Class-conditional error rates of a search algorithm: eps0 on the unmarked
// instance, eps1 averaged over marked instances.
struct ErrorPair {
    Rat eps0;
    Rat eps1;

    ErrorPair(Rat e0, Rat e1);
};

// ---- derived-solver factories ----
// Every factory returns a decision procedure exposing exact evaluation and
// sampled runs; wrappers compose, so derived solvers can be measured,
// symmetrized, and rebalanced like any other algorithm.

// Unique-search solver on {1..n/2} derived from an inversion solver on
// {1..n}: a fair coin picks an answer class, a uniform permutation of that
// class hosts the input as a planted collision, and the inner solver's
// output is negated on the yes class. Classically each inner query costs at
// most one search query (the permutation is known); a quantum inner solver
// pays two search queries per oracle use for the clean simulation.
AlgPtr make_search_reduction(AlgPtr perm_solver, int n);
// Same derivation with the inner circuit's oracle slots filled by the real
// two-query HybridQueryOracle.
AlgPtr make_search_reduction(std::shared_ptr<const QuantumAlgorithm> perm_circuit, int n);

// Conjugates a search algorithm by a uniformly random relabeling of the
// domain; per-instance error becomes the class average, query count is
// unchanged.
AlgPtr symmetrize_search(AlgPtr search_solver);

// Mixes in a constant output that favors the weaker side with probability
// |eps1 - eps0| / (1 + |eps1 - eps0|), equalizing the class errors at
// max{eps0, eps1} / (1 + |eps0 - eps1|).
AlgPtr rebalance(AlgPtr symmetrized_solver, const ErrorPair& errs);

Rat rebalance_probability(const ErrorPair& errs);
Rat rebalanced_worst_case(const ErrorPair& errs);

// Inversion solver on {1..2m} from a search solver on {1..m}: the search
// oracle reads the even positions ("is the value at 2j equal to 1"), one
// permutation query per search query classically, two quantumly.
AlgPtr perm_solver_from_search(AlgPtr search_solver);

// Conjugates an inversion solver by the answer-preserving relabeling pair
// (values permuted fixing 1, positions permuted within parities); any
// instance becomes a uniform instance of its class.
AlgPtr symmetrize_permutation(AlgPtr perm_solver);

// Solves instances on {1..n-1} with a solver for {1..n} by extending the
// input to fix the top point; queries there are answered locally at zero
// oracle cost. Symmetrize the inner solver first for the error guarantees.
AlgPtr restrict_domain(AlgPtr perm_solver);

// Distributional error under uniform permutations on an odd domain, given
// class-conditional errors: ((1 + 1/n) eps0 + (1 - 1/n) eps1) / 2.
Rat uniform_error_odd_n(const ErrorPair& errs, int n);

// Error bounds propagated by the derivation, as functions of the assumed
// inversion-solver bound eps < 1/2.
Rat mu_error_bound(const Rat& eps);     // (1 + 2 eps) / 4
Rat worst_error_bound(const Rat& eps);  // 1 / (3 - 2 eps)

}  // namespace qlab
