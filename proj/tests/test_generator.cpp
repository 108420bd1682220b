#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include <chunglu/generate.hpp>
#include <chunglu/transfer_matrix.hpp>

using namespace chunglu;

namespace {

double edge_frequency(const WeightSequence& w, Sampler s, std::uint32_t a, std::uint32_t b,
                      std::size_t seeds, std::uint64_t base_seed) {
    std::size_t hits = 0;
    for (std::size_t t = 0; t < seeds; ++t) {
        Graph g = generate(w, s, mix_seed(base_seed, t));
        for (auto e : g.edges)
            if (e.first == a && e.second == b) {
                ++hits;
                break;
            }
    }
    return static_cast<double>(hits) / static_cast<double>(seeds);
}

void check_simple(const Graph& g) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (auto [i, j] : g.edges) {
        REQUIRE(i < j);
        REQUIRE(j < g.node_count);
        REQUIRE(seen.insert({i, j}).second);
    }
}

}  // namespace

TEST_CASE("single node yields the empty graph", "[generator]") {
    auto w = WeightSequence::from_weights({1});
    for (Sampler s : {Sampler::bernoulli, Sampler::edge_skipping}) {
        Graph g = generate(w, s, 42);
        CHECK(g.node_count == 1);
        CHECK(g.edges.empty());
    }
}

TEST_CASE("two unit weights connect with probability 1/2", "[generator]") {
    auto w = WeightSequence::from_weights({1, 1});
    const std::size_t seeds = 10000;
    for (Sampler s : {Sampler::bernoulli, Sampler::edge_skipping}) {
        double freq = edge_frequency(w, s, 0, 1, seeds, 2024);
        CHECK_THAT(freq, Catch::Matchers::WithinAbs(0.5, 0.02));

        // chi-square goodness of fit against p = 1/2, alpha = 0.01, 1 dof
        double present = freq * seeds;
        double absent = seeds - present;
        double expected = 0.5 * seeds;
        double chi2 = (present - expected) * (present - expected) / expected +
                      (absent - expected) * (absent - expected) / expected;
        CHECK(chi2 < 6.635);
    }
}

TEST_CASE("expected edge count matches sum of pair probabilities", "[generator]") {
    // w = (2,1,1), S = 4: expected edges 2*(2/4) + 1/4 = 1.25
    auto w = WeightSequence::from_weights({2, 1, 1});
    const std::size_t seeds = 10000;
    double total = 0;
    for (std::size_t t = 0; t < seeds; ++t)
        total += static_cast<double>(generate_bernoulli(w, mix_seed(7, t)).edges.size());
    CHECK_THAT(total / seeds, Catch::Matchers::WithinAbs(1.25, 0.05));
}

TEST_CASE("clamped pairs are always connected", "[generator]") {
    // w = (m, m), S = 2m: p = m/2 clamps to 1 for m >= 2
    auto w = WeightSequence::from_weights({4, 4});
    for (Sampler s : {Sampler::bernoulli, Sampler::edge_skipping})
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            CHECK(generate(w, s, seed).edges.size() == 1);
}

TEST_CASE("realizations are simple graphs", "[generator]") {
    Rng rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + rng.next_below(30);
        std::vector<double> weights(n);
        for (auto& x : weights) x = 1.0 + rng.next_double() * 8.0;
        auto w = WeightSequence::from_weights(weights);
        for (Sampler s : {Sampler::bernoulli, Sampler::edge_skipping})
            check_simple(generate(w, s, rng.next_u64()));
    }
}

TEST_CASE("identical seed reproduces the identical graph", "[generator]") {
    auto d = power_law_distribution(200, 1.5, 12);
    auto w = expand_to_weights(d);
    for (Sampler s : {Sampler::bernoulli, Sampler::edge_skipping}) {
        Graph a = generate(w, s, 77);
        Graph b = generate(w, s, 77);
        CHECK(a.edges == b.edges);
        Graph c = generate(w, s, 78);
        CHECK(a.edges != c.edges);
    }
}

TEST_CASE("per-pair inclusion frequency is unbiased", "[generator]") {
    auto w = WeightSequence::from_weights({5, 3, 2, 1, 1});
    const std::size_t seeds = 20000;
    const std::size_t n = w.size();

    for (Sampler s : {Sampler::bernoulli, Sampler::edge_skipping}) {
        std::vector<double> hits(n * n, 0.0);
        for (std::size_t t = 0; t < seeds; ++t) {
            Graph g = generate(w, s, mix_seed(31337, t));
            for (auto [i, j] : g.edges) hits[i * n + j] += 1.0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double p = std::min(1.0, w.weights[i] * w.weights[j] / w.sum);
                double freq = hits[i * n + j] / seeds;
                double sigma = std::sqrt(p * (1 - p) / seeds);
                CHECK_THAT(freq, Catch::Matchers::WithinAbs(p, 3 * sigma + 1e-12));
            }
        }
    }
}

TEST_CASE("samplers induce the same per-pair probabilities", "[generator]") {
    // Unsorted weights on purpose: edge skipping must sort internally and
    // still report edges in original node ids.
    auto w = WeightSequence::from_weights({1, 4, 2, 3, 1, 2});
    const std::size_t seeds = 20000;
    const std::size_t n = w.size();

    std::vector<double> freq_b(n * n, 0.0), freq_s(n * n, 0.0);
    for (std::size_t t = 0; t < seeds; ++t) {
        for (auto [sampler, freq] :
             {std::pair{Sampler::bernoulli, &freq_b}, std::pair{Sampler::edge_skipping, &freq_s}}) {
            Graph g = generate(w, sampler, mix_seed(271828, t));
            for (auto [i, j] : g.edges) (*freq)[i * n + j] += 1.0;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double p = std::min(1.0, w.weights[i] * w.weights[j] / w.sum);
            double sigma = std::sqrt(2.0 * p * (1 - p) / seeds);
            double diff = (freq_b[i * n + j] - freq_s[i * n + j]) / seeds;
            CHECK_THAT(diff, Catch::Matchers::WithinAbs(0.0, 3 * sigma + 1e-12));
        }
    }
}

TEST_CASE("degree census counts classes and reports the rest", "[generator]") {
    Graph empty;
    empty.node_count = 4;
    CHECK(degree_distribution_of(empty, 3).counts == std::vector<double>{0, 0, 0});
    CHECK(degree_census(empty, 3).isolated == 4);

    Graph triangle;
    triangle.node_count = 3;
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    CHECK(degree_distribution_of(triangle, 3).counts == std::vector<double>{0, 3, 0});

    Graph path;
    path.node_count = 3;
    path.edges = {{0, 1}, {1, 2}};
    CHECK(degree_distribution_of(path, 2).counts == std::vector<double>{2, 1});

    Graph star;  // center 0 with 5 leaves, plus an isolated node 6
    star.node_count = 7;
    star.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}};
    auto census = degree_census(star, 3);
    CHECK(census.distribution.counts == std::vector<double>{5, 0, 0});
    CHECK(census.oversized == 1);
    CHECK(census.isolated == 1);
}

TEST_CASE("average over one trial equals that realization", "[generator]") {
    auto d = power_law_distribution(100, 1, 8);
    auto w = expand_to_weights(d);
    auto stats = average_over_trials(d, 1, Sampler::edge_skipping, 4242);
    auto direct = degree_census(generate_edge_skipping(w, mix_seed(4242, 0)), 8);
    CHECK(stats.mean_counts == direct.distribution.counts);
    CHECK(stats.trials == 1);

    CHECK_THROWS_AS(average_over_trials(d, 0, Sampler::bernoulli, 1), std::invalid_argument);
}

TEST_CASE("trial means stay within model-predicted bands", "[generator]") {
    // Mean realized counts should track P x within a few binomial sigmas.
    auto d = power_law_distribution(400, 1.0, 20);
    auto t = build_transfer_matrix(20);
    auto predicted = predict_output(t, d);

    const std::size_t trials = 10;
    auto stats = average_over_trials(d, trials, Sampler::edge_skipping, 90210);
    REQUIRE(stats.mean_counts.size() == 20);

    double node_total = d.total_nodes();
    double realized_total = 0;
    for (double c : stats.mean_counts) realized_total += c;
    CHECK(realized_total <= node_total);

    for (std::size_t k = 0; k < 20; ++k) {
        double sigma = std::sqrt(std::max(predicted[k], 1.0) / static_cast<double>(trials));
        CHECK_THAT(stats.mean_counts[k],
                   Catch::Matchers::WithinAbs(predicted[k], 4 * sigma + 2.0));
    }
}
