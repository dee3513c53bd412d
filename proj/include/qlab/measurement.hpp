#pragma once
#include <optional>
#include <span>
#include <vector>

#include "qlab/algorithm.hpp"
#include "qlab/oracles.hpp"
#include "qlab/rational.hpp"
#include "qlab/random.hpp"

namespace qlab {

enum class ReportMode { exact, mc };

// A numeric result with its provenance: exact values carry the rational they
// were computed as; floats come from exact simulation or sampling.
struct ReportValue {
    double value = 0.0;
    std::optional<Rat> exact;
};

// Class-conditional and combined error rates plus query statistics for one
// algorithm under one input distribution.
struct ErrorReport {
    ReportMode mode = ReportMode::exact;
    ReportValue eps0;                     // error on "no" inputs
    ReportValue eps1;                     // average error on "yes" inputs
    ReportValue eps_mu;                   // combined under the declared weights
    std::optional<ReportValue> worst_case;  // max per-instance error (exact mode)
    long query_max = 0;
    double query_mean = 0.0;
    std::optional<double> ci_halfwidth;   // mc mode: 99% Hoeffding half-width
    long trials = 0;                      // mc mode
};

// Input distributions an error measurement can run against.
enum class InputDist { search_mixed, search_no_only, search_yes_uniform, perm_uniform };

// Exact distributional error over the search distribution: enumerates the
// instances (and, inside evaluate, the algorithm's randomness). Enumeration
// is capped at n = 65536 instances.
ErrorReport exact_error_search(const OracleAlgorithm& alg, int n, SearchDist dist);

// Exact distributional error over uniform permutations; n! enumeration,
// capped at n = 8. eps0/eps1 are conditioned on the instance answer.
ErrorReport exact_error_perm(const OracleAlgorithm& alg, int n);

// Monte Carlo estimate with a 99% distribution-free confidence half-width
// sqrt(ln(2/0.01) / (2 trials)).
ErrorReport mc_error(const OracleAlgorithm& alg, int n, InputDist dist, long trials,
                     RandomStream& rng);

double hoeffding_halfwidth(long trials, double alpha = 0.01);

struct UniformityResult {
    double statistic = 0.0;
    double critical = 0.0;
    long dof = 0;
    bool pass = false;
};

// Chi-square goodness of fit against the uniform distribution on
// {0..domain_size-1} at significance alpha.
UniformityResult uniformity_test(std::span<const int> samples, int domain_size, double alpha);
UniformityResult uniformity_test_counts(std::span<const long> counts, double alpha);

}  // namespace qlab
