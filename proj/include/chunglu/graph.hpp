#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <chunglu/distribution.hpp>

namespace chunglu {

// Simple undirected graph: no self-loops, no duplicate edges, pairs stored
// with i < j.
struct Graph {
    std::size_t node_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Realized degree counts for classes 1..m. Nodes of degree zero or degree
// greater than m do not fit any class; they are reported here instead of
// being silently dropped.
struct DegreeCensus {
    DegreeDistribution distribution;
    std::size_t isolated = 0;   // degree 0
    std::size_t oversized = 0;  // degree > m
};

inline DegreeCensus degree_census(const Graph& g, std::size_t m) {
    std::vector<std::uint32_t> degree(g.node_count, 0);
    for (auto [i, j] : g.edges) {
        ++degree[i];
        ++degree[j];
    }
    DegreeCensus census;
    census.distribution.counts.assign(m, 0.0);
    for (std::uint32_t d : degree) {
        if (d == 0)
            ++census.isolated;
        else if (d > m)
            ++census.oversized;
        else
            census.distribution.counts[d - 1] += 1.0;
    }
    return census;
}

inline DegreeDistribution degree_distribution_of(const Graph& g, std::size_t m) {
    return degree_census(g, m).distribution;
}

}  // namespace chunglu
