#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chunglu {

// Degree distribution over classes k = 1..m. counts[k-1] is the (possibly
// fractional) number of nodes in class k; zero entries are kept so the class
// count m stays explicit and matrix dimensions line up.
struct DegreeDistribution {
    std::vector<double> counts;

    DegreeDistribution() = default;
    explicit DegreeDistribution(std::vector<double> c) : counts(std::move(c)) { validate(); }

    std::size_t max_degree() const { return counts.size(); }

    double count_for(std::size_t degree) const {
        if (degree < 1 || degree > counts.size())
            throw std::out_of_range("degree class out of range: " + std::to_string(degree));
        return counts[degree - 1];
    }

    double total_nodes() const {
        return std::accumulate(counts.begin(), counts.end(), 0.0);
    }

    bool integral() const {
        for (double c : counts)
            if (c != std::round(c)) return false;
        return true;
    }

    void validate() const {
        for (double c : counts) {
            if (!std::isfinite(c)) throw std::invalid_argument("distribution count is not finite");
            if (c < 0.0) throw std::invalid_argument("distribution count is negative");
        }
    }
};

// Per-node expected degrees, sorted descending. sum caches the Chung-Lu
// normalizer S = sum of all weights.
struct WeightSequence {
    std::vector<double> weights;
    double sum = 0.0;

    WeightSequence() = default;

    static WeightSequence from_weights(std::vector<double> w) {
        WeightSequence seq;
        for (double x : w) {
            if (!(x > 0.0) || !std::isfinite(x))
                throw std::invalid_argument("weights must be positive and finite");
            seq.sum += x;
        }
        seq.weights = std::move(w);
        return seq;
    }

    std::size_t size() const { return weights.size(); }
    bool empty() const { return weights.empty(); }
};

// counts[k] = round(scale * k^-beta), k = 1..m, rounding half up.
inline DegreeDistribution power_law_distribution(double scale, double beta, std::size_t m) {
    if (m < 1) throw std::invalid_argument("power_law_distribution: m must be >= 1");
    if (!(scale >= 0.0)) throw std::invalid_argument("power_law_distribution: scale must be >= 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("power_law_distribution: beta must be >= 0");
    std::vector<double> counts(m);
    for (std::size_t k = 1; k <= m; ++k)
        counts[k - 1] = std::floor(scale * std::pow(static_cast<double>(k), -beta) + 0.5);
    return DegreeDistribution(std::move(counts));
}

// Expands class counts into one weight per node, descending by weight.
// Fractional counts are rejected: a fractional "number of nodes" has no
// realization, the caller has to round first.
inline WeightSequence expand_to_weights(const DegreeDistribution& d) {
    WeightSequence seq;
    std::size_t total = 0;
    for (std::size_t k = d.max_degree(); k >= 1; --k) {
        double c = d.counts[k - 1];
        if (c != std::round(c))
            throw std::invalid_argument(
                "expand_to_weights: class " + std::to_string(k) +
                " has fractional count " + std::to_string(c) + "; round the distribution first");
        total += static_cast<std::size_t>(c);
    }
    seq.weights.reserve(total);
    for (std::size_t k = d.max_degree(); k >= 1; --k) {
        auto copies = static_cast<std::size_t>(d.counts[k - 1]);
        for (std::size_t i = 0; i < copies; ++i) seq.weights.push_back(static_cast<double>(k));
        seq.sum += static_cast<double>(copies) * static_cast<double>(k);
    }
    return seq;
}

// ||target - observed||_1 / ||target||_1 over degree classes 1..m. Degree-0
// and degree->m nodes are outside both vectors by construction.
inline double proportional_l1_error(const DegreeDistribution& target,
                                    std::span<const double> observed) {
    if (observed.size() != target.max_degree())
        throw std::invalid_argument("proportional_l1_error: length mismatch");
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        diff += std::abs(target.counts[i] - observed[i]);
        norm += std::abs(target.counts[i]);
    }
    if (norm == 0.0)
        throw std::invalid_argument("proportional_l1_error: target has zero L1 norm");
    return diff / norm;
}

inline double proportional_l1_error(const DegreeDistribution& target,
                                    const DegreeDistribution& observed) {
    return proportional_l1_error(target, std::span<const double>(observed.counts));
}

}  // namespace chunglu
