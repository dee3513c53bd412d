#pragma once
#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "qlab/algorithm.hpp"
#include "qlab/classical.hpp"
#include "qlab/oracles.hpp"

namespace qlab {

using Amp = std::complex<double>;

// Largest total register width the simulator will allocate.
inline constexpr int kQubitCap = 22;

// Register map for a simulation: an index register wide enough for the n
// domain points (packed 0-based into the least significant bits), an answer
// register, and an optional ancilla block used by composed oracles. Basis
// states with an index value >= n are padding; oracles act as the identity
// there and no operation ever populates them.
struct Layout {
    int n = 0;
    int index_bits = 0;
    int answer_bits = 0;
    int ancilla_bits = 0;

    int total_bits() const { return index_bits + answer_bits + ancilla_bits; }
    std::size_t dim() const { return std::size_t{1} << total_bits(); }

    int index_of(std::size_t b) const { return static_cast<int>(b & ((1u << index_bits) - 1)); }
    int answer_of(std::size_t b) const {
        return static_cast<int>((b >> index_bits) & ((1u << answer_bits) - 1));
    }
    int ancilla_of(std::size_t b) const {
        return static_cast<int>(b >> (index_bits + answer_bits));
    }
    std::size_t pack(int index, int answer, int ancilla) const {
        return static_cast<std::size_t>(index) |
               (static_cast<std::size_t>(answer) << index_bits) |
               (static_cast<std::size_t>(ancilla) << (index_bits + answer_bits));
    }
};

int index_bits_for(int n);  // width of the index register (>= 1)
// Answer-register width for a function with values in {1..n} (stored 0-based).
int value_bits_for(int n);

Layout make_layout(int n, int answer_bits, int ancilla_bits = 0);  // enforces the qubit cap

struct StateVector {
    Layout layout;
    std::vector<Amp> amp;
};

StateVector basis_state(const Layout& layout, int index, int answer, int ancilla = 0);
double norm(const StateVector& s);
// Probability of observing the given index value, marginalized over the
// answer and ancilla registers.
double index_probability(const StateVector& s, int index);

// |i>|b>|c> -> |i>|b ^ table0[i]>|c> for i < n; identity on padding.
// table0 holds 0-based values (function value - 1, or the raw bit for
// search tables).
void apply_xor_table(StateVector& s, std::span<const int> table0);
// Inversion about the mean over the n valid index values, applied per
// configuration of the answer and ancilla registers; identity on padding.
void apply_diffusion(StateVector& s);

// ---- counted oracle unitaries ----

// An oracle presented as a unitary the circuit may apply, with a query
// tally. `value_at` is the simulator peeking at the underlying table (used
// for the classical verification step); `tally_use` charges one oracle use
// without applying the unitary.
class QuantumOracle {
public:
    virtual ~QuantumOracle() = default;
    virtual const Layout& layout() const = 0;
    virtual void apply(StateVector& s) = 0;
    virtual int value_at(int i) const = 0;  // 1-based index, un-tallied
    virtual void tally_use() = 0;
    virtual long queries() const = 0;
};

// How a table's entries are encoded into the answer register: search bits
// are XORed as-is into one qubit, function values from {1..n} are stored
// 0-based in a value_bits_for(n)-wide register.
enum class OracleValueKind { search_bits, function_values };

// Plain XOR oracle over an explicit table. Each use costs the input's flat
// quantum cost.
class TableOracle final : public QuantumOracle {
public:
    TableOracle(const OracleInput& input, OracleValueKind kind, int ancilla_bits = 0);

    const Layout& layout() const override { return layout_; }
    void apply(StateVector& s) override;
    int value_at(int i) const override;
    void tally_use() override { tally_ += cost_; }
    long queries() const override { return tally_; }

private:
    Layout layout_;
    std::vector<int> table0_;
    bool function_values_;
    long cost_;
    long tally_ = 0;
};

// Simulates one oracle call to the hybrid of (p, f) using two calls to the
// search oracle for f: the f value is computed into a one-bit ancilla, the
// hybrid value is written into the answer register under control of that
// ancilla and the position parity, and a second f call erases the ancilla.
// On the ancilla-|0> sector this acts exactly as the XOR oracle for
// build_hybrid(p, f); the ancilla is restored on every basis state. Each
// apply tallies two f queries.
class HybridQueryOracle final : public QuantumOracle {
public:
    HybridQueryOracle(Permutation p, const OracleInput& f_input);

    const Layout& layout() const override { return layout_; }
    void apply(StateVector& s) override;
    int value_at(int i) const override;  // the hybrid's value at i
    void tally_use() override { tally_ += 2 * cost_; }
    long queries() const override { return tally_; }

private:
    Permutation perm_;
    std::vector<int> f_table_;
    bool yes_class_;
    Layout layout_;
    long cost_;
    long tally_ = 0;
};

// Search oracle for "the value at i is 1 and i is even", computed from a
// permutation oracle with the same compute/erase pattern: the permutation
// value is queried into the ancilla block, the answer bit is flipped when
// the condition holds, and a second query erases the block. Two permutation
// queries per use.
class InversionSearchOracle final : public QuantumOracle {
public:
    explicit InversionSearchOracle(const OracleInput& perm_input);

    const Layout& layout() const override { return layout_; }
    void apply(StateVector& s) override;
    int value_at(int i) const override;  // the derived search bit at i
    void tally_use() override { tally_ += 2 * cost_; }
    long queries() const override { return tally_; }

private:
    std::vector<int> p_table0_;
    Layout layout_;
    long cost_;
    long tally_ = 0;
};

// ---- circuits ----

struct QuantumOutcome {
    double p_zero = 0.0;
    double p_one = 0.0;
    long query_count = 0;
};

// A decision circuit run by exact statevector simulation against a counted
// oracle whose layout it adopts.
class QuantumAlgorithm {
public:
    virtual ~QuantumAlgorithm() = default;
    virtual int domain_size() const = 0;
    virtual QuantumOutcome run_exact(QuantumOracle& oracle) const = 0;
};

// round(pi / (4 asin(1/sqrt(n))) - 1/2), floored at 0.
int grover_iteration_count(int n);
// sin^2((2k+1) asin(1/sqrt(n))): the success probability of k iterations on
// a single-marked instance.
double grover_success_probability(int n, int k);

// Standard search with a final verification query: the answer qubit rides in
// |->, so each oracle application acts as a phase flip on marked indices;
// after grover_iteration_count(n) iterations the index register is measured
// and the candidate checked with one more oracle use. Output 1 only on a
// verified marked element, so the unmarked instance never errs. Total uses:
// iterations + 1.
class GroverSearch final : public QuantumAlgorithm {
public:
    explicit GroverSearch(int n);
    int domain_size() const override { return n_; }
    QuantumOutcome run_exact(QuantumOracle& oracle) const override;

private:
    int n_;
};

QuantumOutcome run_quantum(const QuantumAlgorithm& alg, QuantumOracle& oracle);
// Samples `shots` measured outputs from the exact distribution.
QuantumOutcome run_quantum_shots(const QuantumAlgorithm& alg, QuantumOracle& oracle, long shots,
                                 RandomStream& rng);

// ---- OracleAlgorithm adapters ----

// Grover search over a {0,1} input table.
AlgPtr make_grover_algorithm(int n);
// Decides the inversion problem on an even domain by running GroverSearch
// over InversionSearchOracle; 2(k+1) permutation queries.
AlgPtr make_grover_inversion_solver(int n);
// Runs any quantum circuit against plain XOR table oracles.
AlgPtr quantum_as_oracle_algorithm(std::shared_ptr<const QuantumAlgorithm> alg,
                                   OracleValueKind kind);

}  // namespace qlab
