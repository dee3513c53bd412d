#include "qlab/measurement.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "qlab/classical.hpp"

namespace qlab {

namespace {

struct WeightedInstance {
    Rat weight;
    OracleInput input;
    bool truth;  // the instance's correct answer
};

ReportValue error_of(const ExactEval& ev, bool truth) {
    ReportValue rv;
    rv.value = truth ? 1.0 - ev.p_one : ev.p_one;
    if (ev.p_one_exact)
        rv.exact = truth ? Rat(1) - *ev.p_one_exact : *ev.p_one_exact;
    return rv;
}

// Averages per-instance errors with exact weights; exact iff all parts are.
struct ErrorAverager {
    Rat weight_sum{0};
    Rat exact_sum{0};
    double float_sum = 0.0;
    bool all_exact = true;

    void add(const Rat& w, const ReportValue& e) {
        weight_sum += w;
        float_sum += to_double(w) * e.value;
        if (e.exact && all_exact)
            exact_sum += w * (*e.exact);
        else
            all_exact = false;
    }

    ReportValue finish() const {
        if (weight_sum == Rat(0)) return {};
        ReportValue rv;
        if (all_exact) {
            rv.exact = exact_sum / weight_sum;
            rv.value = to_double(*rv.exact);
        } else {
            rv.value = float_sum / to_double(weight_sum);
        }
        return rv;
    }
};

ReportValue max_error(const std::vector<ReportValue>& errs) {
    ReportValue worst;
    bool first = true;
    for (const auto& e : errs) {
        if (first || e.value > worst.value ||
            (e.exact && worst.exact && *e.exact > *worst.exact)) {
            worst = e;
            first = false;
        }
    }
    return worst;
}

ErrorReport exact_report(const OracleAlgorithm& alg,
                         const std::vector<WeightedInstance>& all_instances,
                         const std::vector<Rat>& mu_weights) {
    ErrorReport rep;
    rep.mode = ReportMode::exact;
    ErrorAverager no_avg, yes_avg, mu_avg;
    std::vector<ReportValue> per_instance;
    double query_mean = 0.0;
    for (std::size_t k = 0; k < all_instances.size(); ++k) {
        const auto& wi = all_instances[k];
        const ExactEval ev = alg.evaluate(wi.input);
        const ReportValue err = error_of(ev, wi.truth);
        per_instance.push_back(err);
        (wi.truth ? yes_avg : no_avg).add(Rat(1), err);
        if (mu_weights[k] != Rat(0)) {
            mu_avg.add(mu_weights[k], err);
            rep.query_max = std::max(rep.query_max, ev.max_queries);
            query_mean += to_double(mu_weights[k]) * ev.mean_queries;
        }
    }
    rep.eps0 = no_avg.finish();
    rep.eps1 = yes_avg.finish();
    rep.eps_mu = mu_avg.finish();
    rep.worst_case = max_error(per_instance);
    rep.query_mean = query_mean;
    return rep;
}

}  // namespace

ErrorReport exact_error_search(const OracleAlgorithm& alg, int n, SearchDist dist) {
    if (n < 1) throw precondition_error("exact_error_search: n must be >= 1");
    if (n > 65536) throw cap_error("exact_error_search: instance enumeration capped at n = 65536");
    if (alg.domain_size() != n)
        throw precondition_error("exact_error_search: algorithm domain mismatch");

    std::vector<WeightedInstance> instances;
    std::vector<Rat> mu_weights;
    instances.push_back({Rat(1), to_input(SearchInstance(n, std::nullopt)), false});
    mu_weights.push_back(dist == SearchDist::mixed        ? Rat(1, 2)
                         : dist == SearchDist::no_only    ? Rat(1)
                                                          : Rat(0));
    for (int j = 1; j <= n; ++j) {
        instances.push_back({Rat(1), to_input(SearchInstance(n, j)), true});
        mu_weights.push_back(dist == SearchDist::mixed         ? Rat(1, 2 * n)
                             : dist == SearchDist::yes_uniform ? Rat(1, n)
                                                               : Rat(0));
    }
    return exact_report(alg, instances, mu_weights);
}

ErrorReport exact_error_perm(const OracleAlgorithm& alg, int n) {
    if (n < 1) throw precondition_error("exact_error_perm: n must be >= 1");
    if (n > 8) throw cap_error("exact_error_perm: n! enumeration capped at n = 8");
    if (alg.domain_size() != n)
        throw precondition_error("exact_error_perm: algorithm domain mismatch");

    const auto perms = enumerate_permutations(n);
    std::vector<WeightedInstance> instances;
    std::vector<Rat> mu_weights;
    const Rat w = Rat(1) / static_cast<long long>(perms.size());
    for (const auto& p : perms) {
        instances.push_back(
            {Rat(1), to_input(p), parity_class(p) == InstanceClass::yes_instance});
        mu_weights.push_back(w);
    }
    return exact_report(alg, instances, mu_weights);
}

double hoeffding_halfwidth(long trials, double alpha) {
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(trials)));
}

ErrorReport mc_error(const OracleAlgorithm& alg, int n, InputDist dist, long trials,
                     RandomStream& rng) {
    if (trials < 1) throw precondition_error("mc_error: trials must be >= 1");
    ErrorReport rep;
    rep.mode = ReportMode::mc;
    rep.trials = trials;
    long errors = 0, no_trials = 0, no_errors = 0, yes_trials = 0, yes_errors = 0;
    double query_sum = 0.0;
    for (long t = 0; t < trials; ++t) {
        OracleInput input;
        bool truth = false;
        switch (dist) {
            case InputDist::perm_uniform: {
                const Permutation p = sample_uniform_permutation(n, rng);
                truth = parity_class(p) == InstanceClass::yes_instance;
                input = to_input(p);
                break;
            }
            case InputDist::search_mixed:
            case InputDist::search_no_only:
            case InputDist::search_yes_uniform: {
                const SearchDist sd = dist == InputDist::search_mixed ? SearchDist::mixed
                                      : dist == InputDist::search_no_only
                                          ? SearchDist::no_only
                                          : SearchDist::yes_uniform;
                const SearchInstance f = sample_search_instance(n, sd, rng);
                truth = f.answer();
                input = to_input(f);
                break;
            }
        }
        const RunSample rs = alg.sample(input, rng);
        const bool wrong = (rs.output == 1) != truth;
        errors += wrong;
        (truth ? yes_trials : no_trials) += 1;
        (truth ? yes_errors : no_errors) += wrong;
        rep.query_max = std::max(rep.query_max, rs.queries);
        query_sum += static_cast<double>(rs.queries);
    }
    auto rate = [](long e, long t) {
        return ReportValue{t > 0 ? static_cast<double>(e) / static_cast<double>(t) : 0.0,
                           std::nullopt};
    };
    rep.eps0 = rate(no_errors, no_trials);
    rep.eps1 = rate(yes_errors, yes_trials);
    rep.eps_mu = rate(errors, trials);
    rep.query_mean = query_sum / static_cast<double>(trials);
    rep.ci_halfwidth = hoeffding_halfwidth(trials);
    return rep;
}

UniformityResult uniformity_test_counts(std::span<const long> counts, double alpha) {
    if (counts.empty()) throw precondition_error("uniformity_test: empty domain");
    long total = 0;
    for (long c : counts) total += c;
    if (total == 0) throw precondition_error("uniformity_test: empty sample set");
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (long c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    UniformityResult r;
    r.statistic = stat;
    r.dof = static_cast<long>(counts.size()) - 1;
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(r.dof));
    r.critical = boost::math::quantile(dist, 1.0 - alpha);
    r.pass = stat <= r.critical;
    return r;
}

UniformityResult uniformity_test(std::span<const int> samples, int domain_size, double alpha) {
    if (domain_size < 2) throw precondition_error("uniformity_test: domain must have >= 2 labels");
    if (samples.empty()) throw precondition_error("uniformity_test: empty sample set");
    std::vector<long> counts(static_cast<std::size_t>(domain_size), 0);
    for (int s : samples) {
        if (s < 0 || s >= domain_size)
            throw precondition_error("uniformity_test: sample label out of range");
        ++counts[static_cast<std::size_t>(s)];
    }
    return uniformity_test_counts(counts, alpha);
}

}  // namespace qlab
