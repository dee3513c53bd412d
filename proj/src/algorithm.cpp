#include "qlab/algorithm.hpp"

namespace qlab {

void EvalMixer::add(const Rat& weight, const ExactEval& child) {
    weight_sum_ += weight;
    const double w = to_double(weight);
    float_sum_ += w * child.p_one;
    mean_queries_ += w * child.mean_queries;
    max_queries_ = std::max(max_queries_, child.max_queries);
    if (child.p_one_exact && all_exact_)
        exact_sum_ += weight * (*child.p_one_exact);
    else
        all_exact_ = false;
}

ExactEval EvalMixer::finish() const {
    if (weight_sum_ != Rat(1))
        throw error("EvalMixer: mixture weights do not sum to 1");
    ExactEval out;
    out.max_queries = max_queries_;
    out.mean_queries = mean_queries_;
    if (all_exact_) {
        out.p_one_exact = exact_sum_;
        out.p_one = to_double(exact_sum_);
    } else {
        out.p_one = float_sum_;
    }
    return out;
}

namespace {

class MachineAlgorithm final : public OracleAlgorithm {
public:
    explicit MachineAlgorithm(ClassicalAlgorithm alg) : alg_(std::move(alg)) {}

    int domain_size() const override { return alg_.n; }
    AlgorithmKind kind() const override { return AlgorithmKind::classical; }

    ExactEval evaluate(const OracleInput& input) const override {
        if (!alg_.finite_randomness)
            throw precondition_error(
                "evaluate: algorithm does not declare a finite randomness space");
        struct Leaf {
            int output;
            long cost;
        };
        auto leaves = enumerate_draws<Leaf>([&](RandomSource& src) {
            CountedOracle oracle(input);
            auto t = run_classical(alg_, oracle, src);
            return Leaf{t.output, t.cost};
        });
        Rat p(0);
        double mean = 0.0;
        long max_cost = 0;
        for (const auto& [w, leaf] : leaves) {
            if (leaf.output == 1) p += w;
            mean += to_double(w) * static_cast<double>(leaf.cost);
            max_cost = std::max(max_cost, leaf.cost);
        }
        return ExactEval{to_double(p), p, max_cost, mean};
    }

    RunSample sample(const OracleInput& input, RandomStream& rng) const override {
        CountedOracle oracle(input);
        auto t = run_classical(alg_, oracle, rng);
        return RunSample{t.output, t.cost};
    }

private:
    ClassicalAlgorithm alg_;
};

}  // namespace

AlgPtr make_machine_algorithm(ClassicalAlgorithm alg) {
    return std::make_shared<MachineAlgorithm>(std::move(alg));
}

}  // namespace qlab
