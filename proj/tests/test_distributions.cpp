#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include <chunglu/csv.hpp>
#include <chunglu/distribution.hpp>
#include <chunglu/rng.hpp>

using namespace chunglu;

TEST_CASE("power law evaluates scale * k^-beta with half-up rounding", "[distributions]") {
    CHECK(power_law_distribution(1000, 0, 3).counts == std::vector<double>{1000, 1000, 1000});
    CHECK(power_law_distribution(1000, 2, 3).counts == std::vector<double>{1000, 250, 111});
    CHECK(power_law_distribution(1000, 1, 2).counts == std::vector<double>{1000, 500});
    // 1000/16 = 62.5 rounds up
    CHECK(power_law_distribution(1000, 2, 4).counts[3] == 63.0);
}

TEST_CASE("power law degenerate and error cases", "[distributions]") {
    auto zero = power_law_distribution(0, 2, 5);
    CHECK(zero.total_nodes() == 0.0);
    CHECK(zero.max_degree() == 5);
    CHECK_THROWS_AS(power_law_distribution(10, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(power_law_distribution(-1, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(power_law_distribution(10, -0.5, 3), std::invalid_argument);
}

TEST_CASE("power law counts are monotone non-increasing in k", "[distributions]") {
    Rng rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        double scale = 1.0 + rng.next_double() * 1e5;
        double beta = rng.next_double() * 5.0;
        std::size_t m = 1 + rng.next_below(60);
        auto d = power_law_distribution(scale, beta, m);
        for (std::size_t k = 1; k < m; ++k) CHECK(d.counts[k] <= d.counts[k - 1]);
    }
}

TEST_CASE("expand_to_weights unfolds counts descending", "[distributions]") {
    auto w = expand_to_weights(DegreeDistribution({2, 1}));
    CHECK(w.weights == std::vector<double>{2, 1, 1});
    CHECK(w.sum == 4.0);

    auto w2 = expand_to_weights(DegreeDistribution({0, 0, 1}));
    CHECK(w2.weights == std::vector<double>{3});
    CHECK(w2.sum == 3.0);

    auto w3 = expand_to_weights(DegreeDistribution({0, 0}));
    CHECK(w3.weights.empty());
    CHECK(w3.sum == 0.0);

    CHECK_THROWS_WITH(expand_to_weights(DegreeDistribution({1.5})),
                      Catch::Matchers::ContainsSubstring("round"));
}

TEST_CASE("expanding then re-binning recovers the distribution", "[distributions]") {
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t m = 1 + rng.next_below(20);
        std::vector<double> counts(m);
        for (auto& c : counts) c = static_cast<double>(rng.next_below(50));
        DegreeDistribution d(counts);
        auto w = expand_to_weights(d);

        std::map<double, double> bins;
        for (double x : w.weights) bins[x] += 1.0;
        for (std::size_t k = 1; k <= m; ++k) {
            double expected = d.counts[k - 1];
            double got = bins.count(static_cast<double>(k)) ? bins[static_cast<double>(k)] : 0.0;
            CHECK(got == expected);
        }
        CHECK(w.weights.size() == static_cast<std::size_t>(d.total_nodes()));
    }
}

TEST_CASE("proportional L1 error examples", "[distributions]") {
    DegreeDistribution a({10, 10});
    CHECK(proportional_l1_error(a, a) == 0.0);

    DegreeDistribution b({10, 0});
    CHECK(proportional_l1_error(b, std::vector<double>{0, 10}) == 2.0);

    DegreeDistribution c({100, 50});
    CHECK_THAT(proportional_l1_error(c, std::vector<double>{80, 50}),
               Catch::Matchers::WithinAbs(20.0 / 150.0, 1e-15));

    CHECK_THROWS_AS(proportional_l1_error(a, std::vector<double>{1}), std::invalid_argument);
    CHECK_THROWS_AS(proportional_l1_error(DegreeDistribution({0, 0}), std::vector<double>{0, 0}),
                    std::invalid_argument);
}

TEST_CASE("proportional L1 error symmetry and scaling", "[distributions]") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = 1 + rng.next_below(12);
        std::vector<double> base(m), delta(m);
        for (auto& v : base) v = 1.0 + rng.next_double() * 100.0;
        for (auto& v : delta) v = (rng.next_double() - 0.5) * 10.0;

        DegreeDistribution target(base);
        std::vector<double> plus(m), minus(m);
        for (std::size_t i = 0; i < m; ++i) {
            plus[i] = base[i] + delta[i];
            minus[i] = base[i] - delta[i];
        }
        double ep = proportional_l1_error(target, plus);
        double em = proportional_l1_error(target, minus);
        CHECK_THAT(ep, Catch::Matchers::WithinRel(em, 1e-12));

        double scale = 0.25 + rng.next_double() * 8.0;
        std::vector<double> scaled_base(m), scaled_plus(m);
        for (std::size_t i = 0; i < m; ++i) {
            scaled_base[i] = scale * base[i];
            scaled_plus[i] = scale * plus[i];
        }
        double es = proportional_l1_error(DegreeDistribution(scaled_base), scaled_plus);
        CHECK_THAT(es, Catch::Matchers::WithinRel(ep, 1e-12));
    }
}

TEST_CASE("distribution CSV round trip", "[distributions]") {
    DegreeDistribution d({1000, 250.5, 0, 111});
    std::stringstream ss;
    write_distribution_csv(ss, d);
    auto back = read_distribution_csv(ss, "roundtrip");
    CHECK(back.counts == d.counts);
}

TEST_CASE("distribution CSV validation", "[distributions]") {
    auto read = [](const std::string& text) {
        std::stringstream ss(text);
        return read_distribution_csv(ss, "test");
    };
    CHECK_THROWS_WITH(read("count,degree\n1,2\n"), Catch::Matchers::ContainsSubstring("header"));
    CHECK_THROWS_WITH(read("degree,count\n2,10\n"), Catch::Matchers::ContainsSubstring("ascend"));
    CHECK_THROWS_WITH(read("degree,count\n1,10\n3,4\n"),
                      Catch::Matchers::ContainsSubstring("ascend"));
    CHECK_THROWS_AS(read("degree,count\n1,-4\n"), std::invalid_argument);
    CHECK_THROWS_WITH(read("degree,count\n"), Catch::Matchers::ContainsSubstring("no degree"));
    CHECK(read("degree,count\r\n1,5\r\n").counts == std::vector<double>{5});
}
