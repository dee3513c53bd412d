#pragma once
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/rational.hpp"

namespace qlab {

// Source of uniform symbols from finite alphabets. Everything that consumes
// randomness in this library draws through this interface, which keeps every
// randomized procedure (a) reproducible from a seed and (b) enumerable: the
// same code path can be driven by a real stream or by an exhaustive replay
// of all possible draw sequences.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    // Uniform value in [0, bound). bound >= 1.
    virtual int uniform_int(int bound) = 0;
};

// Seeded stream backed by mt19937_64. Bounded draws use rejection sampling
// so sample paths do not depend on the standard library's distribution
// implementations.
class RandomStream final : public RandomSource {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    int uniform_int(int bound) override {
        if (bound <= 0) throw precondition_error("uniform_int: bound must be positive");
        const std::uint64_t b = static_cast<std::uint64_t>(bound);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
        std::uint64_t r = eng_();
        while (r >= limit) r = eng_();
        return static_cast<int>(r % b);
    }

    double uniform01() {
        // 53 random bits, uniform in [0, 1).
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 eng_;
};

// Replays a fixed list of symbols; throws once the list runs out.
class FixedSource final : public RandomSource {
public:
    explicit FixedSource(std::span<const int> symbols) : symbols_(symbols) {}

    int uniform_int(int bound) override {
        if (pos_ >= symbols_.size()) throw randomness_error("explicit randomness exhausted");
        int s = symbols_[pos_++];
        if (s < 0 || s >= bound) throw randomness_error("explicit symbol out of range");
        return s;
    }

private:
    std::span<const int> symbols_;
    std::size_t pos_ = 0;
};

namespace detail {

// Replays a recorded draw path, then answers 0 for any further draw while
// recording its alphabet size. Drives the exhaustive enumeration below.
class ReplaySource final : public RandomSource {
public:
    explicit ReplaySource(std::vector<std::pair<int, int>>* path) : path_(path) {}

    int uniform_int(int bound) override {
        if (bound <= 0) throw precondition_error("uniform_int: bound must be positive");
        if (pos_ < path_->size()) {
            auto& [b, v] = (*path_)[pos_];
            if (b != bound)
                throw error("enumerate_draws: draw sequence is not a deterministic function of prior symbols");
            ++pos_;
            return v;
        }
        path_->emplace_back(bound, 0);
        ++pos_;
        return 0;
    }

private:
    std::vector<std::pair<int, int>>* path_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Runs `body` once for every possible sequence of draws it can make and
// returns each outcome with its exact probability. Requires the body's draw
// requests to depend only on the symbols received so far (true for every
// sampler and algorithm in this library). The weights sum to exactly 1.
template <class T>
std::vector<std::pair<Rat, T>> enumerate_draws(const std::function<T(RandomSource&)>& body,
                                               long leaf_cap = 20000000) {
    std::vector<std::pair<Rat, T>> out;
    std::vector<std::pair<int, int>> path;  // (alphabet size, chosen symbol)
    long leaves = 0;
    for (;;) {
        detail::ReplaySource src(&path);
        T result = body(src);
        Rat w(1);
        for (const auto& [b, v] : path) w /= b;
        out.emplace_back(w, std::move(result));
        if (++leaves > leaf_cap) throw cap_error("enumerate_draws: randomness space too large");
        // Advance the draw path like an odometer, depth first.
        while (!path.empty() && path.back().second + 1 == path.back().first) path.pop_back();
        if (path.empty()) break;
        ++path.back().second;
    }
    return out;
}

}  // namespace qlab
