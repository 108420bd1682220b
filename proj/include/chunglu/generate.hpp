#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <chunglu/distribution.hpp>
#include <chunglu/graph.hpp>
#include <chunglu/parallel.hpp>
#include <chunglu/rng.hpp>

namespace chunglu {

enum class Sampler { bernoulli, edge_skipping };

inline const char* sampler_name(Sampler s) {
    return s == Sampler::bernoulli ? "bernoulli" : "skip";
}

namespace detail {

inline double pair_probability(double wi, double wj, double sum) {
    return std::min(1.0, wi * wj / sum);
}

inline void check_node_limit(std::size_t n) {
    if (n >= (std::size_t{1} << 32))
        throw std::invalid_argument("sampler: more than 2^32 nodes not supported");
}

}  // namespace detail

// Reference sampler: every unordered pair (i, j), i != j, gets an
// independent coin with p_ij = min(1, w_i w_j / S). Quadratic work.
inline Graph generate_bernoulli(const WeightSequence& w, std::uint64_t seed) {
    detail::check_node_limit(w.size());
    Graph g;
    g.node_count = w.size();
    if (w.size() < 2) return g;
    Rng rng(seed);
    const double sum = w.sum;
    for (std::uint32_t i = 0; i + 1 < w.size(); ++i) {
        const double wi = w.weights[i];
        for (std::uint32_t j = i + 1; j < w.size(); ++j) {
            double p = detail::pair_probability(wi, w.weights[j], sum);
            if (rng.next_double() < p) g.edges.emplace_back(i, j);
        }
    }
    return g;
}

// Edge-skipping sampler. Same per-pair Bernoulli distribution as
// generate_bernoulli, but runs of non-edges are jumped in one geometric
// draw: within a row i the pair probabilities are non-increasing once the
// weights are sorted descending, so the probability at the current position
// is an upper bound p for the rest of the row. A candidate reached by a
// skip under p is accepted with q/p where q is its true probability, which
// restores exact Bernoulli(q) semantics. Expected work O(n + |E|).
inline Graph generate_edge_skipping(const WeightSequence& w, std::uint64_t seed) {
    detail::check_node_limit(w.size());
    Graph g;
    g.node_count = w.size();
    if (w.size() < 2) return g;

    const std::size_t n = w.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const bool sorted = std::is_sorted(w.weights.begin(), w.weights.end(), std::greater<>());
    if (!sorted)
        std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return w.weights[a] > w.weights[b];
        });

    std::vector<double> ws(n);
    for (std::size_t i = 0; i < n; ++i) ws[i] = w.weights[order[i]];

    Rng rng(seed);
    const double sum = w.sum;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double wi = ws[i];
        std::size_t j = i + 1;
        double p = detail::pair_probability(wi, ws[j], sum);
        while (j < n) {
            if (p < 1.0) {
                double skip = std::floor(std::log(rng.next_open()) / std::log1p(-p));
                if (skip >= static_cast<double>(n - j)) break;
                j += static_cast<std::size_t>(skip);
            }
            double q = detail::pair_probability(wi, ws[j], sum);
            if (rng.next_double() * p < q) {
                auto a = order[i], b = order[j];
                g.edges.emplace_back(std::min(a, b), std::max(a, b));
            }
            p = q;
            ++j;
        }
    }
    return g;
}

inline Graph generate(const WeightSequence& w, Sampler sampler, std::uint64_t seed) {
    return sampler == Sampler::bernoulli ? generate_bernoulli(w, seed)
                                         : generate_edge_skipping(w, seed);
}

// Mean realized degree distribution over independent seeded trials.
struct TrialStats {
    std::vector<double> mean_counts;  // classes 1..m
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double mean_isolated = 0.0;   // degree-0 nodes per trial
    double mean_oversized = 0.0;  // degree > m nodes per trial
};

// Trial t uses the stream derived from (seed, t), so results are
// independent of execution order and can be computed in parallel.
inline TrialStats average_over_trials(const DegreeDistribution& d, std::size_t trials,
                                      Sampler sampler, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("average_over_trials: trials must be >= 1");
    const WeightSequence w = expand_to_weights(d);
    const std::size_t m = d.max_degree();

    std::vector<DegreeCensus> per_trial(trials);
    parallel_for_index(trials, [&](std::size_t t) {
        Graph g = generate(w, sampler, mix_seed(seed, t));
        per_trial[t] = degree_census(g, m);
    });

    TrialStats stats;
    stats.mean_counts.assign(m, 0.0);
    stats.trials = trials;
    stats.seed = seed;
    for (const auto& census : per_trial) {
        for (std::size_t k = 0; k < m; ++k) stats.mean_counts[k] += census.distribution.counts[k];
        stats.mean_isolated += static_cast<double>(census.isolated);
        stats.mean_oversized += static_cast<double>(census.oversized);
    }
    const double scale = 1.0 / static_cast<double>(trials);
    for (auto& c : stats.mean_counts) c *= scale;
    stats.mean_isolated *= scale;
    stats.mean_oversized *= scale;
    return stats;
}

}  // namespace chunglu
