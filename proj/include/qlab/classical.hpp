#pragma once
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/oracles.hpp"
#include "qlab/random.hpp"

namespace qlab {

// The function table an algorithm queries, together with its cost model.
// `table[i-1]` is the value at the 1-based index i (a function value in
// {1..n}, or 0/1 for search oracles). Reductions that answer some positions
// themselves attach a per-index cost; a flat factor covers quantum callers
// whose every oracle use costs a fixed number of underlying queries.
struct OracleInput {
    int n = 0;
    std::vector<int> table;
    std::vector<int> classical_cost;  // empty means every index costs 1
    int quantum_cost = 1;

    int value_at(int i) const { return table[static_cast<std::size_t>(i - 1)]; }
    int cost_at(int i) const {
        return classical_cost.empty() ? 1 : classical_cost[static_cast<std::size_t>(i - 1)];
    }
};

OracleInput to_input(const Permutation& p);
OracleInput to_input(const SearchInstance& f);
OracleInput to_input(const GeneralFunction& h);
// Requires a {0,1} table with at most one 1.
SearchInstance search_instance_from_input(const OracleInput& in);

// Counts evaluation calls (and their cost) without altering answers.
class CountedOracle {
public:
    explicit CountedOracle(const OracleInput& input) : input_(&input) {}

    int n() const { return input_->n; }
    int query(int i) {
        if (i < 1 || i > input_->n) throw oracle_error("oracle query out of range");
        ++count_;
        cost_ += input_->cost_at(i);
        return input_->value_at(i);
    }
    long count() const { return count_; }  // number of evaluation calls
    long cost() const { return cost_; }    // cost-weighted tally

private:
    const OracleInput* input_;
    long count_ = 0;
    long cost_ = 0;
};

// ---- interactive decision procedures ----
//
// A classical algorithm is a resumable step machine: at each step it either
// asks for a uniform symbol from a finite alphabet, queries the oracle at an
// index, or emits its output bit. The engine owns the oracle and the
// randomness, so every query is counted and every run yields a transcript.

struct DrawRandom {
    int alphabet_size;
};
struct AskOracle {
    int index;
};
struct Emit {
    int bit;
};
using Action = std::variant<DrawRandom, AskOracle, Emit>;

class Run {
public:
    virtual ~Run() = default;
    // First call passes nullopt; later calls carry the symbol or the oracle
    // answer requested by the previous action.
    virtual Action next(std::optional<int> input) = 0;
};

struct ClassicalAlgorithm {
    int n = 0;  // oracle domain size
    std::function<std::unique_ptr<Run>()> make_run;
    // Promises the run tree over randomness symbols is finite, which enables
    // exact error computation by exhaustive enumeration.
    bool finite_randomness = true;
};

struct QueryTranscript {
    struct Query {
        int index;
        int answer;
    };
    std::vector<Query> queries;
    std::vector<int> randomness;
    std::vector<char> event_order;  // 'q' / 'r' in chronological order
    int output = 0;
    long cost = 0;
};

// Line-oriented debug form: "r <symbol>", "q <index> -> <answer>", "out <bit>".
std::string format_transcript(const QueryTranscript& t);

QueryTranscript run_classical(const ClassicalAlgorithm& alg, CountedOracle& oracle,
                              RandomSource& randomness);
// Explicit-symbol mode; throws randomness_error if the list runs out.
QueryTranscript run_classical(const ClassicalAlgorithm& alg, CountedOracle& oracle,
                              std::span<const int> symbols);

// ---- reference solvers / fixtures ----

// Scans positions 1..n until it sees the value 1 and answers by that
// position's parity. Zero error, worst case n queries.
ClassicalAlgorithm baseline_perm_solver(int n);

// Scans only the first `budget` positions, then guesses with a fair coin.
// On a uniform permutation its error is exactly (1 - budget/n)/2.
ClassicalAlgorithm truncated_scan_solver(int n, int budget);

ClassicalAlgorithm constant_algorithm(int n, int bit);
ClassicalAlgorithm coin_flip_algorithm(int n);

}  // namespace qlab
