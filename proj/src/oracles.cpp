#include "qlab/oracles.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace qlab {

namespace {

void check_domain(int n, const char* who) {
    if (n < 1) throw precondition_error(std::string(who) + ": domain size must be >= 1");
}

bool is_even(int i) { return i % 2 == 0; }

}  // namespace

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
    check_domain(n(), "Permutation");
    std::vector<char> seen(map_.size(), 0);
    for (int v : map_) {
        if (v < 1 || v > n() || seen[static_cast<std::size_t>(v - 1)])
            throw precondition_error("Permutation: map is not a bijection on {1..n}");
        seen[static_cast<std::size_t>(v - 1)] = 1;
    }
}

int Permutation::preimage(int v) const {
    for (int i = 1; i <= n(); ++i)
        if ((*this)(i) == v) return i;
    throw precondition_error("Permutation::preimage: value out of range");
}

SearchInstance::SearchInstance(int n, std::optional<int> marked) : n_(n), marked_(marked) {
    check_domain(n, "SearchInstance");
    if (marked_ && (*marked_ < 1 || *marked_ > n_))
        throw precondition_error("SearchInstance: marked index out of range");
}

int SearchInstance::operator()(int i) const {
    if (i < 1 || i > n_) throw precondition_error("SearchInstance: index out of range");
    return (marked_ && *marked_ == i) ? 1 : 0;
}

GeneralFunction::GeneralFunction(std::vector<int> map) : map_(std::move(map)) {
    check_domain(n(), "GeneralFunction");
    for (int v : map_)
        if (v < 1 || v > n())
            throw precondition_error("GeneralFunction: value out of range {1..n}");
}

std::string dist_label(SearchDist d) {
    switch (d) {
        case SearchDist::mixed: return "mu";
        case SearchDist::no_only: return "mu0";
        case SearchDist::yes_uniform: return "mu1";
    }
    throw precondition_error("dist_label: unknown variant");
}

InstanceClass parity_class(const Permutation& p) {
    return is_even(p.preimage(1)) ? InstanceClass::yes_instance : InstanceClass::no_instance;
}

bool is_collision_instance(const GeneralFunction& h) {
    const int n = h.n();
    std::vector<std::vector<int>> preimages(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) preimages[static_cast<std::size_t>(h(i))].push_back(i);
    // Value 1 must be hit exactly twice by a mixed-parity pair; every other
    // value at most once.
    if (preimages[1].size() != 2) return false;
    for (int v = 2; v <= n; ++v)
        if (preimages[static_cast<std::size_t>(v)].size() > 1) return false;
    return is_even(preimages[1][0]) != is_even(preimages[1][1]);
}

InstanceClass classify(const GeneralFunction& h) {
    std::vector<char> seen(static_cast<std::size_t>(h.n()), 0);
    bool bijective = true;
    for (int i = 1; i <= h.n(); ++i) {
        auto& s = seen[static_cast<std::size_t>(h(i) - 1)];
        if (s) bijective = false;
        s = 1;
    }
    if (bijective) return parity_class(Permutation(h.values()));
    return is_collision_instance(h) ? InstanceClass::collision : InstanceClass::unclassified;
}

Permutation sample_uniform_permutation(int n, RandomSource& rnd) {
    check_domain(n, "sample_uniform_permutation");
    std::vector<int> map(static_cast<std::size_t>(n));
    std::iota(map.begin(), map.end(), 1);
    for (int i = n - 1; i >= 1; --i)
        std::swap(map[static_cast<std::size_t>(i)],
                  map[static_cast<std::size_t>(rnd.uniform_int(i + 1))]);
    return Permutation(std::move(map));
}

Permutation sample_uniform_in_class(int n, InstanceClass cls, RandomSource& rnd) {
    check_domain(n, "sample_uniform_in_class");
    if (cls != InstanceClass::no_instance && cls != InstanceClass::yes_instance)
        throw precondition_error("sample_uniform_in_class: class must be no_instance or yes_instance");
    std::vector<int> slots;
    for (int i = 1; i <= n; ++i)
        if (is_even(i) == (cls == InstanceClass::yes_instance)) slots.push_back(i);
    if (slots.empty())
        throw precondition_error("sample_uniform_in_class: class is empty for this n");
    const int one_pos = slots[static_cast<std::size_t>(rnd.uniform_int(static_cast<int>(slots.size())))];

    // Uniform fill of the remaining positions with the values {2..n}.
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 2);
    for (int i = n - 2; i >= 1; --i)
        std::swap(rest[static_cast<std::size_t>(i)],
                  rest[static_cast<std::size_t>(rnd.uniform_int(i + 1))]);

    std::vector<int> map(static_cast<std::size_t>(n));
    std::size_t next = 0;
    for (int i = 1; i <= n; ++i)
        map[static_cast<std::size_t>(i - 1)] = (i == one_pos) ? 1 : rest[next++];
    return Permutation(std::move(map));
}

SearchInstance sample_search_instance(int n, SearchDist dist, RandomSource& rnd) {
    check_domain(n, "sample_search_instance");
    switch (dist) {
        case SearchDist::no_only:
            return SearchInstance(n, std::nullopt);
        case SearchDist::yes_uniform:
            return SearchInstance(n, rnd.uniform_int(n) + 1);
        case SearchDist::mixed:
            if (rnd.uniform_int(2) == 0) return SearchInstance(n, std::nullopt);
            return SearchInstance(n, rnd.uniform_int(n) + 1);
    }
    throw precondition_error("sample_search_instance: unknown variant");
}

SelfReductionPair sample_self_reduction(int n, RandomSource& rnd) {
    check_domain(n, "sample_self_reduction");
    // outer: uniform among permutations fixing 1.
    std::vector<int> outer(static_cast<std::size_t>(n));
    std::iota(outer.begin(), outer.end(), 1);
    for (int i = n - 1; i >= 2; --i)
        std::swap(outer[static_cast<std::size_t>(i)],
                  outer[static_cast<std::size_t>(1 + rnd.uniform_int(i))]);
    // inner: independent uniform shuffles of the odd and even slots.
    std::vector<int> odd, even;
    for (int i = 1; i <= n; ++i) (is_even(i) ? even : odd).push_back(i);
    auto shuffle_block = [&rnd](std::vector<int>& b) {
        for (int i = static_cast<int>(b.size()) - 1; i >= 1; --i)
            std::swap(b[static_cast<std::size_t>(i)],
                      b[static_cast<std::size_t>(rnd.uniform_int(i + 1))]);
    };
    shuffle_block(odd);
    shuffle_block(even);
    std::vector<int> inner(static_cast<std::size_t>(n));
    std::size_t oi = 0, ei = 0;
    for (int i = 1; i <= n; ++i)
        inner[static_cast<std::size_t>(i - 1)] = is_even(i) ? even[ei++] : odd[oi++];
    return {Permutation(std::move(outer)), Permutation(std::move(inner))};
}

Permutation compose_self_reduction(const Permutation& p, const Permutation& outer,
                                   const Permutation& inner) {
    const int n = p.n();
    if (outer.n() != n || inner.n() != n)
        throw precondition_error("compose_self_reduction: size mismatch");
    if (outer(1) != 1)
        throw precondition_error("compose_self_reduction: outer map must fix 1");
    for (int i = 1; i <= n; ++i)
        if (is_even(inner(i)) != is_even(i))
            throw precondition_error("compose_self_reduction: inner map must preserve parity");
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) map[static_cast<std::size_t>(i - 1)] = outer(p(inner(i)));
    return Permutation(std::move(map));
}

Permutation extend_permutation(const Permutation& p) {
    std::vector<int> map = p.values();
    map.push_back(p.n() + 1);
    return Permutation(std::move(map));
}

GeneralFunction build_hybrid(const Permutation& p, const SearchInstance& f) {
    const int n = p.n();
    if (n % 2 != 0) throw precondition_error("build_hybrid: permutation domain must be even");
    if (f.n() != n / 2)
        throw precondition_error("build_hybrid: search domain must be half the permutation domain");
    const bool yes = parity_class(p) == InstanceClass::yes_instance;
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        int v = p(i);
        if (yes) {
            if (!is_even(i) && f((i + 1) / 2) == 1) v = 1;
        } else {
            if (is_even(i) && f(i / 2) == 1) v = 1;
        }
        map[static_cast<std::size_t>(i - 1)] = v;
    }
    return GeneralFunction(std::move(map));
}

std::vector<GeneralFunction> collision_neighbors(const Permutation& p) {
    if (p.n() % 2 != 0)
        throw precondition_error("collision_neighbors: domain must be even");
    std::vector<GeneralFunction> out;
    const int m = p.n() / 2;
    out.reserve(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j) out.push_back(build_hybrid(p, SearchInstance(m, j)));
    return out;
}

std::vector<Permutation> enumerate_permutations(int n) {
    check_domain(n, "enumerate_permutations");
    if (n > 8) throw cap_error("enumerate_permutations: n! enumeration capped at n = 8");
    std::vector<int> map(static_cast<std::size_t>(n));
    std::iota(map.begin(), map.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(map));
    } while (std::next_permutation(map.begin(), map.end()));
    return out;
}

std::vector<Permutation> class_members(int n, InstanceClass cls) {
    std::vector<Permutation> out;
    for (auto& p : enumerate_permutations(n))
        if (parity_class(p) == cls) out.push_back(std::move(p));
    return out;
}

std::vector<GeneralFunction> collision_set(int n) {
    check_domain(n, "collision_set");
    if (n > 6) throw cap_error("collision_set: n^n enumeration capped at n = 6");
    std::vector<GeneralFunction> out;
    std::vector<int> map(static_cast<std::size_t>(n), 1);
    for (;;) {
        GeneralFunction h(map);
        if (is_collision_instance(h)) out.push_back(std::move(h));
        int i = n - 1;
        while (i >= 0 && map[static_cast<std::size_t>(i)] == n) map[static_cast<std::size_t>(i--)] = 1;
        if (i < 0) break;
        ++map[static_cast<std::size_t>(i)];
    }
    return out;
}

namespace {

std::string join_values(const std::vector<int>& vals) {
    std::string s;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(vals[i]);
    }
    return s;
}

// Strict field parsing for the one-line instance forms.
struct LineParser {
    std::istringstream in;
    explicit LineParser(const std::string& line) : in(line) {}

    std::string token() {
        std::string t;
        if (!(in >> t)) throw precondition_error("instance line: missing field");
        return t;
    }

    int field_int(const std::string& key) {
        auto t = token();
        if (t.rfind(key + "=", 0) != 0)
            throw precondition_error("instance line: expected field " + key);
        return parse_int(t.substr(key.size() + 1));
    }

    static int parse_int(const std::string& s) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw precondition_error("instance line: bad integer '" + s + "'");
        return v;
    }

    std::vector<int> field_values(const std::string& key) {
        auto t = token();
        if (t.rfind(key + "=", 0) != 0)
            throw precondition_error("instance line: expected field " + key);
        std::vector<int> out;
        std::string body = t.substr(key.size() + 1);
        std::size_t start = 0;
        while (start <= body.size()) {
            auto comma = body.find(',', start);
            auto piece = body.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
            out.push_back(parse_int(piece));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }

    void done() {
        std::string extra;
        if (in >> extra) throw precondition_error("instance line: trailing field '" + extra + "'");
    }
};

}  // namespace

std::string to_line(const Permutation& p) {
    return "perm n=" + std::to_string(p.n()) + " map=" + join_values(p.values());
}

std::string to_line(const SearchInstance& f) {
    return "search n=" + std::to_string(f.n()) +
           " marked=" + (f.marked() ? std::to_string(*f.marked()) : std::string("-"));
}

std::string to_line(const GeneralFunction& h) {
    return "fn n=" + std::to_string(h.n()) + " map=" + join_values(h.values());
}

Permutation parse_permutation_line(const std::string& line) {
    LineParser lp(line);
    if (lp.token() != "perm") throw precondition_error("instance line: expected 'perm'");
    const int n = lp.field_int("n");
    auto vals = lp.field_values("map");
    lp.done();
    if (static_cast<int>(vals.size()) != n)
        throw precondition_error("instance line: map length disagrees with n");
    return Permutation(std::move(vals));
}

SearchInstance parse_search_line(const std::string& line) {
    LineParser lp(line);
    if (lp.token() != "search") throw precondition_error("instance line: expected 'search'");
    const int n = lp.field_int("n");
    auto t = lp.token();
    if (t.rfind("marked=", 0) != 0)
        throw precondition_error("instance line: expected field marked");
    lp.done();
    std::string body = t.substr(7);
    if (body == "-") return SearchInstance(n, std::nullopt);
    return SearchInstance(n, LineParser::parse_int(body));
}

GeneralFunction parse_function_line(const std::string& line) {
    LineParser lp(line);
    if (lp.token() != "fn") throw precondition_error("instance line: expected 'fn'");
    const int n = lp.field_int("n");
    auto vals = lp.field_values("map");
    lp.done();
    if (static_cast<int>(vals.size()) != n)
        throw precondition_error("instance line: map length disagrees with n");
    return GeneralFunction(std::move(vals));
}

}  // namespace qlab
