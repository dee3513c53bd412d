#include "qlab/quantum.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace qlab {

int index_bits_for(int n) {
    if (n < 1) throw precondition_error("index_bits_for: n must be >= 1");
    return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(n - 1))));
}

int value_bits_for(int n) { return index_bits_for(n); }

Layout make_layout(int n, int answer_bits, int ancilla_bits) {
    Layout lay{n, index_bits_for(n), answer_bits, ancilla_bits};
    if (lay.total_bits() > kQubitCap)
        throw cap_error("layout exceeds the qubit cap of " + std::to_string(kQubitCap));
    return lay;
}

StateVector basis_state(const Layout& layout, int index, int answer, int ancilla) {
    StateVector s{layout, std::vector<Amp>(layout.dim(), Amp{0.0, 0.0})};
    s.amp[layout.pack(index, answer, ancilla)] = Amp{1.0, 0.0};
    return s;
}

double norm(const StateVector& s) {
    double acc = 0.0;
    for (const auto& a : s.amp) acc += std::norm(a);
    return std::sqrt(acc);
}

double index_probability(const StateVector& s, int index) {
    double acc = 0.0;
    const auto& lay = s.layout;
    for (std::size_t b = 0; b < s.amp.size(); ++b)
        if (lay.index_of(b) == index) acc += std::norm(s.amp[b]);
    return acc;
}

void apply_xor_table(StateVector& s, std::span<const int> table0) {
    const auto& lay = s.layout;
    if (static_cast<int>(table0.size()) != lay.n)
        throw precondition_error("apply_xor_table: table size disagrees with layout");
    std::vector<Amp> out(s.amp.size(), Amp{0.0, 0.0});
    for (std::size_t b = 0; b < s.amp.size(); ++b) {
        const int i = lay.index_of(b);
        std::size_t target = b;
        if (i < lay.n) {
            const int v = table0[static_cast<std::size_t>(i)];
            target = lay.pack(i, lay.answer_of(b) ^ v, lay.ancilla_of(b));
        }
        out[target] += s.amp[b];
    }
    s.amp.swap(out);
}

void apply_diffusion(StateVector& s) {
    const auto& lay = s.layout;
    const int rest_bits = lay.answer_bits + lay.ancilla_bits;
    const std::size_t rest_dim = std::size_t{1} << rest_bits;
    for (std::size_t rest = 0; rest < rest_dim; ++rest) {
        const std::size_t base = rest << lay.index_bits;
        Amp mean{0.0, 0.0};
        for (int i = 0; i < lay.n; ++i) mean += s.amp[base | static_cast<std::size_t>(i)];
        mean /= static_cast<double>(lay.n);
        for (int i = 0; i < lay.n; ++i) {
            auto& a = s.amp[base | static_cast<std::size_t>(i)];
            a = 2.0 * mean - a;
        }
    }
}

// ---- TableOracle ----

TableOracle::TableOracle(const OracleInput& input, OracleValueKind kind, int ancilla_bits)
    : layout_(make_layout(input.n,
                          kind == OracleValueKind::search_bits ? 1 : value_bits_for(input.n),
                          ancilla_bits)),
      function_values_(kind == OracleValueKind::function_values),
      cost_(input.quantum_cost) {
    table0_.reserve(static_cast<std::size_t>(input.n));
    for (int i = 1; i <= input.n; ++i) {
        const int v = input.value_at(i);
        if (function_values_) {
            if (v < 1 || v > input.n)
                throw precondition_error("TableOracle: function values must lie in {1..n}");
            table0_.push_back(v - 1);
        } else {
            if (v != 0 && v != 1)
                throw precondition_error("TableOracle: search table values must be 0/1");
            table0_.push_back(v);
        }
    }
}

void TableOracle::apply(StateVector& s) {
    if (s.layout.n != layout_.n)
        throw precondition_error("TableOracle: state layout disagrees with oracle table");
    apply_xor_table(s, table0_);
    tally_ += cost_;
}

int TableOracle::value_at(int i) const {
    const int raw = table0_[static_cast<std::size_t>(i - 1)];
    return function_values_ ? raw + 1 : raw;
}

// ---- HybridQueryOracle ----

HybridQueryOracle::HybridQueryOracle(Permutation p, const OracleInput& f_input)
    : perm_(std::move(p)),
      yes_class_(parity_class(perm_) == InstanceClass::yes_instance),
      layout_(make_layout(perm_.n(), value_bits_for(perm_.n()), 1)),
      cost_(f_input.quantum_cost) {
    if (perm_.n() % 2 != 0)
        throw precondition_error("HybridQueryOracle: permutation domain must be even");
    if (f_input.n != perm_.n() / 2)
        throw precondition_error("HybridQueryOracle: search domain must be half the permutation domain");
    for (int j = 1; j <= f_input.n; ++j) {
        const int v = f_input.value_at(j);
        if (v != 0 && v != 1)
            throw precondition_error("HybridQueryOracle: search table values must be 0/1");
        f_table_.push_back(v);
    }
    (void)search_instance_from_input(f_input);  // at most one marked element
}

void HybridQueryOracle::apply(StateVector& s) {
    const auto& lay = s.layout;
    if (lay.n != perm_.n())
        throw precondition_error("HybridQueryOracle: state layout disagrees with the oracle");
    if (lay.ancilla_bits < 1)
        throw precondition_error("HybridQueryOracle: layout is missing the ancilla bit");
    std::vector<Amp> out(s.amp.size(), Amp{0.0, 0.0});
    for (std::size_t b = 0; b < s.amp.size(); ++b) {
        const int i0 = lay.index_of(b);
        std::size_t target = b;
        if (i0 < lay.n) {
            const int i = i0 + 1;
            const int fj = f_table_[static_cast<std::size_t>((i + 1) / 2 - 1)];
            // First f query, into the ancilla.
            const int anc1 = lay.ancilla_of(b) ^ fj;
            // Write the hybrid value under control of the ancilla and the
            // position parity.
            const bool branch = yes_class_ ? (i % 2 == 1) : (i % 2 == 0);
            const int v = (branch && anc1 == 1) ? 1 : perm_(i);
            const int answer = lay.answer_of(b) ^ (v - 1);
            // Second f query erases the ancilla.
            const int anc2 = anc1 ^ fj;
            target = lay.pack(i0, answer, anc2);
        }
        out[target] += s.amp[b];
    }
    s.amp.swap(out);
    tally_ += 2 * cost_;
}

int HybridQueryOracle::value_at(int i) const {
    const int fj = f_table_[static_cast<std::size_t>((i + 1) / 2 - 1)];
    const bool branch = yes_class_ ? (i % 2 == 1) : (i % 2 == 0);
    return (branch && fj == 1) ? 1 : perm_(i);
}

// ---- InversionSearchOracle ----

InversionSearchOracle::InversionSearchOracle(const OracleInput& perm_input)
    : layout_(make_layout(perm_input.n, 1, value_bits_for(perm_input.n))),
      cost_(perm_input.quantum_cost) {
    if (perm_input.n % 2 != 0)
        throw precondition_error("InversionSearchOracle: domain must be even");
    for (int i = 1; i <= perm_input.n; ++i) p_table0_.push_back(perm_input.value_at(i) - 1);
}

void InversionSearchOracle::apply(StateVector& s) {
    const auto& lay = s.layout;
    if (lay.n != static_cast<int>(p_table0_.size()))
        throw precondition_error("InversionSearchOracle: state layout disagrees with the oracle");
    if (lay.ancilla_bits < value_bits_for(lay.n))
        throw precondition_error("InversionSearchOracle: ancilla block too narrow");
    std::vector<Amp> out(s.amp.size(), Amp{0.0, 0.0});
    for (std::size_t b = 0; b < s.amp.size(); ++b) {
        const int i0 = lay.index_of(b);
        std::size_t target = b;
        if (i0 < lay.n) {
            const int pv = p_table0_[static_cast<std::size_t>(i0)];
            // Query the permutation value into the ancilla block.
            const int anc1 = lay.ancilla_of(b) ^ pv;
            // Flip the answer when the value is 1 (stored 0-based as 0) and
            // the 1-based position is even.
            const bool hit = (anc1 == 0) && ((i0 + 1) % 2 == 0);
            const int answer = lay.answer_of(b) ^ (hit ? 1 : 0);
            // Erase.
            const int anc2 = anc1 ^ pv;
            target = lay.pack(i0, answer, anc2);
        }
        out[target] += s.amp[b];
    }
    s.amp.swap(out);
    tally_ += 2 * cost_;
}

int InversionSearchOracle::value_at(int i) const {
    return (p_table0_[static_cast<std::size_t>(i - 1)] == 0 && i % 2 == 0) ? 1 : 0;
}

// ---- Grover ----

int grover_iteration_count(int n) {
    if (n < 1) throw precondition_error("grover_iteration_count: n must be >= 1");
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n)));
    const double k = std::round(std::numbers::pi / (4.0 * theta) - 0.5);
    return std::max(0, static_cast<int>(k));
}

double grover_success_probability(int n, int k) {
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n)));
    const double s = std::sin(static_cast<double>(2 * k + 1) * theta);
    return s * s;
}

GroverSearch::GroverSearch(int n) : n_(n) {
    if (n < 1) throw precondition_error("GroverSearch: n must be >= 1");
}

QuantumOutcome GroverSearch::run_exact(QuantumOracle& oracle) const {
    const Layout& lay = oracle.layout();
    if (lay.n != n_) throw precondition_error("GroverSearch: oracle domain size mismatch");
    if (lay.answer_bits != 1)
        throw precondition_error("GroverSearch: expected a one-bit answer register");

    // Uniform superposition over the valid indices, answer qubit in |->.
    StateVector s{lay, std::vector<Amp>(lay.dim(), Amp{0.0, 0.0})};
    const double a = 1.0 / std::sqrt(2.0 * static_cast<double>(n_));
    for (int i = 0; i < n_; ++i) {
        s.amp[lay.pack(i, 0, 0)] = Amp{a, 0.0};
        s.amp[lay.pack(i, 1, 0)] = Amp{-a, 0.0};
    }

    const int k = grover_iteration_count(n_);
    for (int t = 0; t < k; ++t) {
        oracle.apply(s);
        apply_diffusion(s);
    }

    // Measure the index register and verify the candidate with one more
    // oracle use; only a confirmed marked element yields output 1.
    double p_one = 0.0;
    for (int i = 0; i < n_; ++i)
        if (oracle.value_at(i + 1) == 1) p_one += index_probability(s, i);
    oracle.tally_use();

    return QuantumOutcome{1.0 - p_one, p_one, oracle.queries()};
}

QuantumOutcome run_quantum(const QuantumAlgorithm& alg, QuantumOracle& oracle) {
    return alg.run_exact(oracle);
}

QuantumOutcome run_quantum_shots(const QuantumAlgorithm& alg, QuantumOracle& oracle, long shots,
                                 RandomStream& rng) {
    if (shots < 1) throw precondition_error("run_quantum_shots: shots must be >= 1");
    const QuantumOutcome exact = alg.run_exact(oracle);
    long ones = 0;
    for (long t = 0; t < shots; ++t)
        if (rng.uniform01() < exact.p_one) ++ones;
    const double p1 = static_cast<double>(ones) / static_cast<double>(shots);
    return QuantumOutcome{1.0 - p1, p1, exact.query_count};
}

// ---- adapters ----

namespace {

class QuantumTableAlgorithm final : public OracleAlgorithm {
public:
    QuantumTableAlgorithm(std::shared_ptr<const QuantumAlgorithm> alg, OracleValueKind kind)
        : alg_(std::move(alg)), value_kind_(kind) {}

    int domain_size() const override { return alg_->domain_size(); }
    AlgorithmKind kind() const override { return AlgorithmKind::quantum; }

    ExactEval evaluate(const OracleInput& input) const override {
        TableOracle oracle(input, value_kind_);
        const QuantumOutcome out = alg_->run_exact(oracle);
        return ExactEval{out.p_one, std::nullopt, out.query_count,
                         static_cast<double>(out.query_count)};
    }

    RunSample sample(const OracleInput& input, RandomStream& rng) const override {
        const ExactEval ev = evaluate(input);
        return RunSample{rng.uniform01() < ev.p_one ? 1 : 0, ev.max_queries};
    }

private:
    std::shared_ptr<const QuantumAlgorithm> alg_;
    OracleValueKind value_kind_;
};

class GroverInversionSolver final : public OracleAlgorithm {
public:
    explicit GroverInversionSolver(int n) : n_(n), search_(n) {
        if (n % 2 != 0)
            throw precondition_error("make_grover_inversion_solver: domain must be even");
    }

    int domain_size() const override { return n_; }
    AlgorithmKind kind() const override { return AlgorithmKind::quantum; }

    ExactEval evaluate(const OracleInput& input) const override {
        InversionSearchOracle oracle(input);
        const QuantumOutcome out = search_.run_exact(oracle);
        return ExactEval{out.p_one, std::nullopt, out.query_count,
                         static_cast<double>(out.query_count)};
    }

    RunSample sample(const OracleInput& input, RandomStream& rng) const override {
        const ExactEval ev = evaluate(input);
        return RunSample{rng.uniform01() < ev.p_one ? 1 : 0, ev.max_queries};
    }

private:
    int n_;
    GroverSearch search_;
};

}  // namespace

AlgPtr make_grover_algorithm(int n) {
    return std::make_shared<QuantumTableAlgorithm>(std::make_shared<GroverSearch>(n),
                                                   OracleValueKind::search_bits);
}

AlgPtr make_grover_inversion_solver(int n) {
    return std::make_shared<GroverInversionSolver>(n);
}

AlgPtr quantum_as_oracle_algorithm(std::shared_ptr<const QuantumAlgorithm> alg,
                                   OracleValueKind kind) {
    return std::make_shared<QuantumTableAlgorithm>(std::move(alg), kind);
}

}  // namespace qlab
