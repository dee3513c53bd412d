#pragma once
// Shared test fixtures: small algorithms with analytically known behavior
// and operator-level comparison helpers.

#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qlab/algorithm.hpp"
#include "qlab/classical.hpp"
#include "qlab/quantum.hpp"

namespace qlab_test {

// Scans the whole domain to learn the true answer, then deliberately errs
// with probability eps0 on "no" inputs and eps1 on "yes" inputs, both exact
// rationals. Gives fixtures with any prescribed per-class error profile.
class ScanNoiseRun final : public qlab::Run {
public:
    ScanNoiseRun(int n, qlab::Rat eps0, qlab::Rat eps1)
        : n_(n), eps0_(eps0), eps1_(eps1) {}

    qlab::Action next(std::optional<int> input) override {
        if (drew_) {
            const qlab::Rat& eps = found_ ? eps1_ : eps0_;
            const bool err = *input < eps.numerator();
            const int correct = found_ ? 1 : 0;
            return qlab::Emit{err ? 1 - correct : correct};
        }
        if (issued_ > 0 && *input == 1) found_ = true;
        if (issued_ == n_) {
            drew_ = true;
            const qlab::Rat& eps = found_ ? eps1_ : eps0_;
            return qlab::DrawRandom{static_cast<int>(eps.denominator())};
        }
        ++issued_;
        return qlab::AskOracle{issued_};
    }

private:
    int n_;
    qlab::Rat eps0_, eps1_;
    int issued_ = 0;
    bool found_ = false;
    bool drew_ = false;
};

inline qlab::ClassicalAlgorithm scan_then_noise(int n, qlab::Rat eps0, qlab::Rat eps1) {
    return {n, [=] { return std::make_unique<ScanNoiseRun>(n, eps0, eps1); }, true};
}

// Permutation-problem analogue: scans for the position of the value 1,
// answers by its parity, and errs with the prescribed class probability.
class ParityNoiseRun final : public qlab::Run {
public:
    ParityNoiseRun(int n, qlab::Rat eps0, qlab::Rat eps1) : n_(n), eps0_(eps0), eps1_(eps1) {}

    qlab::Action next(std::optional<int> input) override {
        if (drew_) {
            const qlab::Rat& eps = yes_ ? eps1_ : eps0_;
            const bool err = *input < eps.numerator();
            const int correct = yes_ ? 1 : 0;
            return qlab::Emit{err ? 1 - correct : correct};
        }
        if (issued_ > 0 && *input == 1) yes_ = issued_ % 2 == 0;
        if (issued_ == n_) {
            drew_ = true;
            const qlab::Rat& eps = yes_ ? eps1_ : eps0_;
            return qlab::DrawRandom{static_cast<int>(eps.denominator())};
        }
        ++issued_;
        return qlab::AskOracle{issued_};
    }

private:
    int n_;
    qlab::Rat eps0_, eps1_;
    int issued_ = 0;
    bool yes_ = false;
    bool drew_ = false;
};

inline qlab::ClassicalAlgorithm parity_then_noise(int n, qlab::Rat eps0, qlab::Rat eps1) {
    return {n, [=] { return std::make_unique<ParityNoiseRun>(n, eps0, eps1); }, true};
}

// Queries position 1 only and reports its bit.
class FirstProbeRun final : public qlab::Run {
public:
    qlab::Action next(std::optional<int> input) override {
        if (!asked_) {
            asked_ = true;
            return qlab::AskOracle{1};
        }
        return qlab::Emit{*input};
    }

private:
    bool asked_ = false;
};

inline qlab::ClassicalAlgorithm first_probe_search(int n) {
    return {n, [] { return std::make_unique<FirstProbeRun>(); }, true};
}

// Quantum circuit with no oracle uses; always outputs 0.
class IdleCircuit final : public qlab::QuantumAlgorithm {
public:
    explicit IdleCircuit(int n) : n_(n) {}
    int domain_size() const override { return n_; }
    qlab::QuantumOutcome run_exact(qlab::QuantumOracle& oracle) const override {
        return {1.0, 0.0, oracle.queries()};
    }

private:
    int n_;
};

// One oracle application on |1>|0>: accepts iff the value there is 1
// (encoded 0-based, so an untouched answer register).
class SingleIndexProbe final : public qlab::QuantumAlgorithm {
public:
    explicit SingleIndexProbe(int n) : n_(n) {}
    int domain_size() const override { return n_; }

    qlab::QuantumOutcome run_exact(qlab::QuantumOracle& oracle) const override {
        const qlab::Layout lay = oracle.layout();
        qlab::StateVector s = qlab::basis_state(lay, 0, 0, 0);
        oracle.apply(s);
        double p_one = 0.0;
        for (std::size_t b = 0; b < s.amp.size(); ++b)
            if (lay.answer_of(b) == 0) p_one += std::norm(s.amp[b]);
        return {1.0 - p_one, p_one, oracle.queries()};
    }

private:
    int n_;
};

// Maximum entry distance between the oracle's action on the ancilla-|0>
// sector and the plain XOR oracle for table0 acting on (index, answer) with
// the ancilla left in |0>.
inline double zero_ancilla_distance(qlab::QuantumOracle& oracle, std::span<const int> table0) {
    const qlab::Layout lay = oracle.layout();
    double worst = 0.0;
    for (std::size_t col = 0; col < lay.dim(); ++col) {
        if (lay.ancilla_of(col) != 0) continue;
        qlab::StateVector actual{lay, std::vector<qlab::Amp>(lay.dim())};
        actual.amp[col] = qlab::Amp{1.0, 0.0};
        oracle.apply(actual);
        qlab::StateVector expected{lay, std::vector<qlab::Amp>(lay.dim())};
        expected.amp[col] = qlab::Amp{1.0, 0.0};
        qlab::apply_xor_table(expected, table0);
        for (std::size_t row = 0; row < lay.dim(); ++row)
            worst = std::max(worst, std::abs(actual.amp[row] - expected.amp[row]));
    }
    return worst;
}

// Search-table encoding of a hybrid/permutation table for operator checks.
inline std::vector<int> zero_based(const std::vector<int>& values) {
    std::vector<int> out;
    out.reserve(values.size());
    for (int v : values) out.push_back(v - 1);
    return out;
}

}  // namespace qlab_test
