#include "qlab/classical.hpp"

#include <numeric>

namespace qlab {

OracleInput to_input(const Permutation& p) {
    return OracleInput{p.n(), p.values(), {}, 1};
}

OracleInput to_input(const SearchInstance& f) {
    std::vector<int> table(static_cast<std::size_t>(f.n()), 0);
    if (f.marked()) table[static_cast<std::size_t>(*f.marked() - 1)] = 1;
    return OracleInput{f.n(), std::move(table), {}, 1};
}

OracleInput to_input(const GeneralFunction& h) {
    return OracleInput{h.n(), h.values(), {}, 1};
}

SearchInstance search_instance_from_input(const OracleInput& in) {
    std::optional<int> marked;
    for (int i = 1; i <= in.n; ++i) {
        const int v = in.value_at(i);
        if (v == 0) continue;
        if (v != 1 || marked)
            throw precondition_error("search_instance_from_input: not a unique-search table");
        marked = i;
    }
    return SearchInstance(in.n, marked);
}

std::string format_transcript(const QueryTranscript& t) {
    std::string out;
    std::size_t qi = 0, ri = 0;
    for (char kind : t.event_order) {
        if (kind == 'q') {
            const auto& q = t.queries[qi++];
            out += "q " + std::to_string(q.index) + " -> " + std::to_string(q.answer) + "\n";
        } else {
            out += "r " + std::to_string(t.randomness[ri++]) + "\n";
        }
    }
    out += "out " + std::to_string(t.output) + "\n";
    return out;
}

namespace {

constexpr long kStepCap = 10000000;

QueryTranscript drive(const ClassicalAlgorithm& alg, CountedOracle& oracle,
                      RandomSource& randomness) {
    if (oracle.n() != alg.n)
        throw precondition_error("run_classical: oracle domain size mismatch");
    QueryTranscript t;
    auto run = alg.make_run();
    std::optional<int> feed;
    for (long steps = 0; steps < kStepCap; ++steps) {
        Action a = run->next(feed);
        if (auto* draw = std::get_if<DrawRandom>(&a)) {
            const int s = randomness.uniform_int(draw->alphabet_size);
            t.randomness.push_back(s);
            t.event_order.push_back('r');
            feed = s;
        } else if (auto* ask = std::get_if<AskOracle>(&a)) {
            const int v = oracle.query(ask->index);
            t.queries.push_back({ask->index, v});
            t.event_order.push_back('q');
            feed = v;
        } else {
            t.output = std::get<Emit>(a).bit;
            t.cost = oracle.cost();
            return t;
        }
    }
    throw error("run_classical: step cap exceeded (runaway algorithm)");
}

}  // namespace

QueryTranscript run_classical(const ClassicalAlgorithm& alg, CountedOracle& oracle,
                              RandomSource& randomness) {
    return drive(alg, oracle, randomness);
}

QueryTranscript run_classical(const ClassicalAlgorithm& alg, CountedOracle& oracle,
                              std::span<const int> symbols) {
    FixedSource src(symbols);
    return drive(alg, oracle, src);
}

namespace {

class ScanRun final : public Run {
public:
    ScanRun(int n, int budget) : n_(n), budget_(budget) {}

    Action next(std::optional<int> input) override {
        if (coin_pending_) return Emit{*input};
        if (issued_ > 0 && *input == 1) return Emit{issued_ % 2 == 0 ? 1 : 0};
        if (issued_ == budget_) {
            if (budget_ == n_) return Emit{0};  // full scan saw no 1
            coin_pending_ = true;
            return DrawRandom{2};
        }
        ++issued_;
        return AskOracle{issued_};
    }

private:
    int n_;
    int budget_;
    int issued_ = 0;
    bool coin_pending_ = false;
};

class ConstantRun final : public Run {
public:
    explicit ConstantRun(int bit) : bit_(bit) {}
    Action next(std::optional<int>) override { return Emit{bit_}; }

private:
    int bit_;
};

class CoinRun final : public Run {
public:
    Action next(std::optional<int> input) override {
        if (!asked_) {
            asked_ = true;
            return DrawRandom{2};
        }
        return Emit{*input};
    }

private:
    bool asked_ = false;
};

}  // namespace

ClassicalAlgorithm baseline_perm_solver(int n) {
    if (n < 1) throw precondition_error("baseline_perm_solver: n must be >= 1");
    return {n, [n] { return std::make_unique<ScanRun>(n, n); }, true};
}

ClassicalAlgorithm truncated_scan_solver(int n, int budget) {
    if (n < 1) throw precondition_error("truncated_scan_solver: n must be >= 1");
    if (budget < 0 || budget > n)
        throw precondition_error("truncated_scan_solver: budget must lie in [0, n]");
    return {n, [n, budget] { return std::make_unique<ScanRun>(n, budget); }, true};
}

ClassicalAlgorithm constant_algorithm(int n, int bit) {
    return {n, [bit] { return std::make_unique<ConstantRun>(bit); }, true};
}

ClassicalAlgorithm coin_flip_algorithm(int n) {
    return {n, [] { return std::make_unique<CoinRun>(); }, true};
}

}  // namespace qlab
