#include "qlab/reductions.hpp"

#include <algorithm>
#include <utility>

#include "qlab/oracles.hpp"

namespace qlab {

ReductionConfig::ReductionConfig(int n_, Rat epsilon_bound_, std::uint64_t seed_)
    : n(n_), epsilon_bound(epsilon_bound_), seed(seed_) {
    if (n < 2 || n % 2 != 0)
        throw precondition_error("ReductionConfig: n must be even and >= 2");
    if (epsilon_bound < Rat(0) || epsilon_bound >= Rat(1, 2))
        throw precondition_error("ReductionConfig: epsilon bound must lie in [0, 1/2)");
}

ErrorPair::ErrorPair(Rat e0, Rat e1) : eps0(e0), eps1(e1) {
    if (eps0 < Rat(0) || eps0 > Rat(1) || eps1 < Rat(0) || eps1 > Rat(1))
        throw precondition_error("ErrorPair: error rates must lie in [0, 1]");
}

namespace {

ExactEval negate(ExactEval ev) {
    ev.p_one = 1.0 - ev.p_one;
    if (ev.p_one_exact) ev.p_one_exact = Rat(1) - *ev.p_one_exact;
    return ev;
}

// ---- search solver derived from an inversion solver ----

class SearchReduction final : public OracleAlgorithm {
public:
    SearchReduction(AlgPtr table_solver, std::shared_ptr<const QuantumAlgorithm> circuit_solver,
                    int n)
        : table_solver_(std::move(table_solver)),
          circuit_solver_(std::move(circuit_solver)),
          n_(n) {
        if (n_ < 2 || n_ % 2 != 0)
            throw precondition_error("make_search_reduction: n must be even and >= 2");
        const int inner_n = table_solver_ ? table_solver_->domain_size()
                                          : circuit_solver_->domain_size();
        if (inner_n != n_)
            throw precondition_error("make_search_reduction: inner solver domain mismatch");
    }

    int domain_size() const override { return n_ / 2; }
    AlgorithmKind kind() const override {
        return table_solver_ ? table_solver_->kind() : AlgorithmKind::quantum;
    }

    ExactEval evaluate(const OracleInput& f_input) const override {
        check_input(f_input);
        if (n_ > 8)
            throw cap_error("make_search_reduction: exact evaluation capped at n = 8");
        EvalMixer mix;
        for (auto cls : {InstanceClass::no_instance, InstanceClass::yes_instance}) {
            const auto members = class_members(n_, cls);
            const Rat w = Rat(1, 2) / static_cast<long long>(members.size());
            for (const auto& p : members) {
                ExactEval ev = eval_inner(p, cls, f_input);
                if (cls == InstanceClass::yes_instance) ev = negate(ev);
                mix.add(w, ev);
            }
        }
        return mix.finish();
    }

    RunSample sample(const OracleInput& f_input, RandomStream& rng) const override {
        check_input(f_input);
        const auto cls = rng.uniform_int(2) == 0 ? InstanceClass::no_instance
                                                 : InstanceClass::yes_instance;
        const Permutation p = sample_uniform_in_class(n_, cls, rng);
        RunSample rs;
        if (circuit_solver_) {
            HybridQueryOracle oracle(p, f_input);
            const QuantumOutcome out = circuit_solver_->run_exact(oracle);
            rs = RunSample{rng.uniform01() < out.p_one ? 1 : 0, out.query_count};
        } else {
            rs = table_solver_->sample(hybrid_input(p, cls, f_input), rng);
        }
        if (cls == InstanceClass::yes_instance) rs.output = 1 - rs.output;
        return rs;
    }

private:
    void check_input(const OracleInput& f_input) const {
        if (f_input.n != n_ / 2)
            throw precondition_error("make_search_reduction: search domain must be n/2");
        (void)search_instance_from_input(f_input);
    }

    // The oracle the inner solver sees: the hybrid's table, with each query
    // costed by whether answering it needs the search oracle. Positions of
    // the parity opposite to the class answer slot read the planted value,
    // so they cost one search query; the rest are answered from the known
    // permutation for free.
    OracleInput hybrid_input(const Permutation& p, InstanceClass cls,
                             const OracleInput& f_input) const {
        OracleInput h_in = to_input(build_hybrid(p, search_instance_from_input(f_input)));
        h_in.classical_cost.resize(static_cast<std::size_t>(n_), 0);
        for (int i = 1; i <= n_; ++i) {
            const bool branch = (cls == InstanceClass::yes_instance) ? (i % 2 == 1)
                                                                     : (i % 2 == 0);
            h_in.classical_cost[static_cast<std::size_t>(i - 1)] =
                branch ? f_input.cost_at((i + 1) / 2) : 0;
        }
        h_in.quantum_cost = 2 * f_input.quantum_cost;
        return h_in;
    }

    ExactEval eval_inner(const Permutation& p, InstanceClass cls,
                         const OracleInput& f_input) const {
        if (circuit_solver_) {
            HybridQueryOracle oracle(p, f_input);
            const QuantumOutcome out = circuit_solver_->run_exact(oracle);
            return ExactEval{out.p_one, std::nullopt, out.query_count,
                             static_cast<double>(out.query_count)};
        }
        return table_solver_->evaluate(hybrid_input(p, cls, f_input));
    }

    AlgPtr table_solver_;
    std::shared_ptr<const QuantumAlgorithm> circuit_solver_;
    int n_;
};

// ---- symmetrization wrappers ----

class SymmetrizedSearch final : public OracleAlgorithm {
public:
    explicit SymmetrizedSearch(AlgPtr inner) : inner_(std::move(inner)) {}

    int domain_size() const override { return inner_->domain_size(); }
    AlgorithmKind kind() const override { return inner_->kind(); }

    ExactEval evaluate(const OracleInput& input) const override {
        const int n = inner_->domain_size();
        const auto relabelings = enumerate_permutations(n);
        EvalMixer mix;
        const Rat w = Rat(1) / static_cast<long long>(relabelings.size());
        for (const auto& s : relabelings) mix.add(w, inner_->evaluate(relabel(input, s)));
        return mix.finish();
    }

    RunSample sample(const OracleInput& input, RandomStream& rng) const override {
        const Permutation s = sample_uniform_permutation(inner_->domain_size(), rng);
        return inner_->sample(relabel(input, s), rng);
    }

private:
    // The inner solver's query i lands on s(i).
    static OracleInput relabel(const OracleInput& input, const Permutation& s) {
        OracleInput out;
        out.n = input.n;
        out.quantum_cost = input.quantum_cost;
        out.table.resize(static_cast<std::size_t>(input.n));
        out.classical_cost.resize(static_cast<std::size_t>(input.n));
        for (int i = 1; i <= input.n; ++i) {
            out.table[static_cast<std::size_t>(i - 1)] = input.value_at(s(i));
            out.classical_cost[static_cast<std::size_t>(i - 1)] = input.cost_at(s(i));
        }
        return out;
    }

    AlgPtr inner_;
};

std::vector<Permutation> parity_preserving_permutations(int n) {
    std::vector<int> odd, even;
    for (int i = 1; i <= n; ++i) (i % 2 == 0 ? even : odd).push_back(i);
    auto blocks = [](const std::vector<int>& slots) {
        std::vector<std::vector<int>> out;
        std::vector<int> images = slots;
        std::sort(images.begin(), images.end());
        do {
            out.push_back(images);
        } while (std::next_permutation(images.begin(), images.end()));
        return out;
    };
    std::vector<Permutation> out;
    for (const auto& om : blocks(odd)) {
        for (const auto& em : blocks(even)) {
            std::vector<int> map(static_cast<std::size_t>(n));
            std::size_t oi = 0, ei = 0;
            for (int i = 1; i <= n; ++i)
                map[static_cast<std::size_t>(i - 1)] = (i % 2 == 0) ? em[ei++] : om[oi++];
            out.push_back(Permutation(std::move(map)));
        }
    }
    return out;
}

std::vector<Permutation> permutations_fixing_one(int n) {
    std::vector<Permutation> out;
    for (auto& p : enumerate_permutations(n))
        if (p(1) == 1) out.push_back(std::move(p));
    return out;
}

class SymmetrizedPermutation final : public OracleAlgorithm {
public:
    explicit SymmetrizedPermutation(AlgPtr inner) : inner_(std::move(inner)) {}

    int domain_size() const override { return inner_->domain_size(); }
    AlgorithmKind kind() const override { return inner_->kind(); }

    ExactEval evaluate(const OracleInput& input) const override {
        const int n = inner_->domain_size();
        const auto outers = permutations_fixing_one(n);
        const auto inners = parity_preserving_permutations(n);
        EvalMixer mix;
        const Rat w = Rat(1) / static_cast<long long>(outers.size() * inners.size());
        for (const auto& outer : outers)
            for (const auto& inner : inners)
                mix.add(w, inner_->evaluate(relabel(input, outer, inner)));
        return mix.finish();
    }

    RunSample sample(const OracleInput& input, RandomStream& rng) const override {
        const auto pair = sample_self_reduction(inner_->domain_size(), rng);
        return inner_->sample(relabel(input, pair.outer, pair.inner), rng);
    }

private:
    // The inner solver's query i lands on inner(i) and the returned value is
    // mapped through outer; one real query either way.
    static OracleInput relabel(const OracleInput& input, const Permutation& outer,
                               const Permutation& inner) {
        OracleInput out;
        out.n = input.n;
        out.quantum_cost = input.quantum_cost;
        out.table.resize(static_cast<std::size_t>(input.n));
        out.classical_cost.resize(static_cast<std::size_t>(input.n));
        for (int i = 1; i <= input.n; ++i) {
            out.table[static_cast<std::size_t>(i - 1)] = outer(input.value_at(inner(i)));
            out.classical_cost[static_cast<std::size_t>(i - 1)] = input.cost_at(inner(i));
        }
        return out;
    }

    AlgPtr inner_;
};

// ---- rebalancing ----

class Rebalanced final : public OracleAlgorithm {
public:
    Rebalanced(AlgPtr inner, Rat p, int constant_bit)
        : inner_(std::move(inner)), p_(p), constant_bit_(constant_bit) {}

    int domain_size() const override { return inner_->domain_size(); }
    AlgorithmKind kind() const override { return inner_->kind(); }

    ExactEval evaluate(const OracleInput& input) const override {
        if (p_ == Rat(0)) return inner_->evaluate(input);
        EvalMixer mix;
        mix.add(p_, ExactEval{static_cast<double>(constant_bit_), Rat(constant_bit_), 0, 0.0});
        mix.add(Rat(1) - p_, inner_->evaluate(input));
        return mix.finish();
    }

    RunSample sample(const OracleInput& input, RandomStream& rng) const override {
        if (p_ != Rat(0)) {
            const int den = static_cast<int>(p_.denominator());
            if (rng.uniform_int(den) < p_.numerator()) return RunSample{constant_bit_, 0};
        }
        return inner_->sample(input, rng);
    }

private:
    AlgPtr inner_;
    Rat p_;
    int constant_bit_;
};

// ---- domain adapters ----

class PermFromSearch final : public OracleAlgorithm {
public:
    explicit PermFromSearch(AlgPtr search) : search_(std::move(search)) {}

    int domain_size() const override { return 2 * search_->domain_size(); }
    AlgorithmKind kind() const override { return search_->kind(); }

    ExactEval evaluate(const OracleInput& input) const override {
        return search_->evaluate(derived_search_input(input));
    }

    RunSample sample(const OracleInput& input, RandomStream& rng) const override {
        return search_->sample(derived_search_input(input), rng);
    }

private:
    OracleInput derived_search_input(const OracleInput& input) const {
        if (input.n != domain_size())
            throw precondition_error("perm_solver_from_search: domain size mismatch");
        const int m = input.n / 2;
        OracleInput f;
        f.n = m;
        f.table.resize(static_cast<std::size_t>(m));
        f.classical_cost.resize(static_cast<std::size_t>(m));
        for (int j = 1; j <= m; ++j) {
            f.table[static_cast<std::size_t>(j - 1)] = input.value_at(2 * j) == 1 ? 1 : 0;
            f.classical_cost[static_cast<std::size_t>(j - 1)] = input.cost_at(2 * j);
        }
        f.quantum_cost = 2 * input.quantum_cost;  // compute/erase pair
        return f;
    }

    AlgPtr search_;
};

class DomainRestricted final : public OracleAlgorithm {
public:
    explicit DomainRestricted(AlgPtr inner) : inner_(std::move(inner)) {
        if (inner_->domain_size() < 2)
            throw precondition_error("restrict_domain: inner domain must be >= 2");
    }

    int domain_size() const override { return inner_->domain_size() - 1; }
    AlgorithmKind kind() const override { return inner_->kind(); }

    ExactEval evaluate(const OracleInput& input) const override {
        return inner_->evaluate(extended_input(input));
    }

    RunSample sample(const OracleInput& input, RandomStream& rng) const override {
        return inner_->sample(extended_input(input), rng);
    }

private:
    OracleInput extended_input(const OracleInput& input) const {
        if (input.n != domain_size())
            throw precondition_error("restrict_domain: domain size mismatch");
        const int n = inner_->domain_size();
        OracleInput out;
        out.n = n;
        out.quantum_cost = input.quantum_cost;
        out.table.resize(static_cast<std::size_t>(n));
        out.classical_cost.resize(static_cast<std::size_t>(n));
        for (int i = 1; i < n; ++i) {
            out.table[static_cast<std::size_t>(i - 1)] = input.value_at(i);
            out.classical_cost[static_cast<std::size_t>(i - 1)] = input.cost_at(i);
        }
        // The extension point is known, so it is answered locally for free.
        out.table[static_cast<std::size_t>(n - 1)] = n;
        out.classical_cost[static_cast<std::size_t>(n - 1)] = 0;
        return out;
    }

    AlgPtr inner_;
};

}  // namespace

AlgPtr make_search_reduction(AlgPtr perm_solver, int n) {
    return std::make_shared<SearchReduction>(std::move(perm_solver), nullptr, n);
}

AlgPtr make_search_reduction(std::shared_ptr<const QuantumAlgorithm> perm_circuit, int n) {
    return std::make_shared<SearchReduction>(nullptr, std::move(perm_circuit), n);
}

AlgPtr symmetrize_search(AlgPtr search_solver) {
    return std::make_shared<SymmetrizedSearch>(std::move(search_solver));
}

Rat rebalance_probability(const ErrorPair& errs) {
    const Rat diff = errs.eps1 > errs.eps0 ? errs.eps1 - errs.eps0 : errs.eps0 - errs.eps1;
    return diff / (Rat(1) + diff);
}

Rat rebalanced_worst_case(const ErrorPair& errs) {
    const Rat diff = errs.eps1 > errs.eps0 ? errs.eps1 - errs.eps0 : errs.eps0 - errs.eps1;
    return std::max(errs.eps0, errs.eps1) / (Rat(1) + diff);
}

AlgPtr rebalance(AlgPtr symmetrized_solver, const ErrorPair& errs) {
    if (errs.eps0 + errs.eps1 >= Rat(1))
        throw precondition_error("rebalance: requires eps0 + eps1 < 1");
    const int constant_bit = errs.eps1 > errs.eps0 ? 1 : 0;
    return std::make_shared<Rebalanced>(std::move(symmetrized_solver),
                                        rebalance_probability(errs), constant_bit);
}

AlgPtr perm_solver_from_search(AlgPtr search_solver) {
    return std::make_shared<PermFromSearch>(std::move(search_solver));
}

AlgPtr symmetrize_permutation(AlgPtr perm_solver) {
    return std::make_shared<SymmetrizedPermutation>(std::move(perm_solver));
}

AlgPtr restrict_domain(AlgPtr perm_solver) {
    return std::make_shared<DomainRestricted>(std::move(perm_solver));
}

Rat uniform_error_odd_n(const ErrorPair& errs, int n) {
    if (n < 1 || n % 2 == 0)
        throw precondition_error("uniform_error_odd_n: n must be odd and >= 1");
    return (Rat(n + 1, n) * errs.eps0 + Rat(n - 1, n) * errs.eps1) / 2;
}

Rat mu_error_bound(const Rat& eps) { return (Rat(1) + 2 * eps) / 4; }

Rat worst_error_bound(const Rat& eps) {
    if (eps >= Rat(1, 2)) throw precondition_error("worst_error_bound: requires eps < 1/2");
    return Rat(1) / (Rat(3) - 2 * eps);
}

}  // namespace qlab
