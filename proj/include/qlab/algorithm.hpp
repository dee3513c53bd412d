#pragma once
#include <memory>
#include <optional>

#include "qlab/classical.hpp"
#include "qlab/rational.hpp"
#include "qlab/random.hpp"

namespace qlab {

enum class AlgorithmKind { classical, quantum };

// Exact evaluation of a decision procedure against one fixed input table:
// the full output distribution over the procedure's internal randomness.
// Classical procedures with finite randomness carry the exact rational;
// statevector-based procedures report a float.
struct ExactEval {
    double p_one = 0.0;
    std::optional<Rat> p_one_exact;
    long max_queries = 0;
    double mean_queries = 0.0;
};

struct RunSample {
    int output = 0;
    long queries = 0;
};

// A decision procedure that accesses its input only through a counted
// oracle, executable exactly (full enumeration / exact simulation) or as a
// single sampled run.
class OracleAlgorithm {
public:
    virtual ~OracleAlgorithm() = default;
    virtual int domain_size() const = 0;
    virtual AlgorithmKind kind() const = 0;
    virtual ExactEval evaluate(const OracleInput& input) const = 0;
    virtual RunSample sample(const OracleInput& input, RandomStream& rng) const = 0;
};

using AlgPtr = std::shared_ptr<const OracleAlgorithm>;

// Accumulates a probabilistic mixture of child evaluations with exact
// weights. The mixture is exact iff every child is.
class EvalMixer {
public:
    void add(const Rat& weight, const ExactEval& child);
    ExactEval finish() const;

private:
    Rat weight_sum_{0};
    Rat exact_sum_{0};
    double float_sum_ = 0.0;
    double mean_queries_ = 0.0;
    long max_queries_ = 0;
    bool all_exact_ = true;
};

// Exposes an interactive classical algorithm as an OracleAlgorithm. Exact
// evaluation enumerates the full randomness tree.
AlgPtr make_machine_algorithm(ClassicalAlgorithm alg);

}  // namespace qlab
