#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/random.hpp"

namespace qlab {

// All domain points and function values are 1-based, matching the usual
// {1..n} convention for oracle problems. Internal storage is 0-based; the
// translation happens only inside these types.

// A bijection on {1..n}. The decision problem asks whether the preimage of 1
// sits at an even position.
class Permutation {
public:
    explicit Permutation(std::vector<int> map);

    int n() const { return static_cast<int>(map_.size()); }
    int operator()(int i) const { return map_[static_cast<std::size_t>(i - 1)]; }
    // Position j with p(j) == v.
    int preimage(int v) const;
    const std::vector<int>& values() const { return map_; }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> map_;
};

// f : {1..n} -> {0,1} with at most one marked element. The instance answer
// is "yes" exactly when a marked element exists.
class SearchInstance {
public:
    SearchInstance(int n, std::optional<int> marked);

    int n() const { return n_; }
    std::optional<int> marked() const { return marked_; }
    int operator()(int i) const;
    bool answer() const { return marked_.has_value(); }

    bool operator==(const SearchInstance&) const = default;

private:
    int n_;
    std::optional<int> marked_;
};

// An arbitrary total function {1..n} -> {1..n}, stored as an explicit table.
class GeneralFunction {
public:
    explicit GeneralFunction(std::vector<int> map);

    int n() const { return static_cast<int>(map_.size()); }
    int operator()(int i) const { return map_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<int>& values() const { return map_; }

    bool operator==(const GeneralFunction&) const = default;
    bool operator<(const GeneralFunction& o) const { return map_ < o.map_; }

private:
    std::vector<int> map_;
};

// Instance classes. no_instance / yes_instance tag bijections by their
// answer (preimage of 1 odd / even). collision tags the non-bijective
// functions with a unique two-point collision at value 1 whose colliding
// pair mixes parities.
enum class InstanceClass { no_instance, yes_instance, collision, unclassified };

// Input distributions for the search problem: the mixed distribution puts
// weight 1/2 on the unmarked instance and 1/2n on each marked one.
enum class SearchDist { mixed, no_only, yes_uniform };

std::string dist_label(SearchDist d);  // "mu" | "mu0" | "mu1"

// ---- classification ----

InstanceClass parity_class(const Permutation& p);
bool is_collision_instance(const GeneralFunction& h);
InstanceClass classify(const GeneralFunction& h);

// ---- samplers (uniform over the stated sets, exactly) ----

Permutation sample_uniform_permutation(int n, RandomSource& rnd);
// Uniform over the requested answer class: the position of value 1 is drawn
// uniformly among the slots of the right parity, the rest is a uniform fill.
Permutation sample_uniform_in_class(int n, InstanceClass cls, RandomSource& rnd);
SearchInstance sample_search_instance(int n, SearchDist dist, RandomSource& rnd);

// A relabeling pair for the self-reduction of the inversion problem:
// `outer` fixes 1 and is applied to oracle values, `inner` preserves parity
// and is applied to query positions.
struct SelfReductionPair {
    Permutation outer;
    Permutation inner;
};
SelfReductionPair sample_self_reduction(int n, RandomSource& rnd);

// outer(p(inner(i))); preserves the instance answer because `inner` keeps
// parities and `outer` keeps the value 1 in place.
Permutation compose_self_reduction(const Permutation& p, const Permutation& outer,
                                   const Permutation& inner);

// Extends p on {1..n-1} to {1..n} by fixing the new top point.
Permutation extend_permutation(const Permutation& p);

// ---- the hybrid construction ----

// Plants the search instance f (domain n/2) into the permutation p: at the
// positions of the parity opposite to p's answer slot, the value becomes 1
// wherever f marks the corresponding half-domain point. With an unmarked f
// the result is p itself; with a marked f it is a collision instance that
// differs from p in exactly one point.
GeneralFunction build_hybrid(const Permutation& p, const SearchInstance& f);

// All collision instances differing from p in exactly one point, i.e. the
// hybrids over the n/2 marked search instances.
std::vector<GeneralFunction> collision_neighbors(const Permutation& p);

// ---- enumeration helpers (exact verification at small n) ----

std::vector<Permutation> enumerate_permutations(int n);                       // n <= 8
std::vector<Permutation> class_members(int n, InstanceClass cls);             // n <= 8
std::vector<GeneralFunction> collision_set(int n);                            // n <= 6

// ---- one-line canonical text forms ----
// "perm n=4 map=2,1,3,4" / "search n=4 marked=2" / "search n=4 marked=-" /
// "fn n=4 map=1,1,3,4"

std::string to_line(const Permutation& p);
std::string to_line(const SearchInstance& f);
std::string to_line(const GeneralFunction& h);
Permutation parse_permutation_line(const std::string& line);
SearchInstance parse_search_line(const std::string& line);
GeneralFunction parse_function_line(const std::string& line);

}  // namespace qlab
