#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <chunglu/distribution.hpp>

namespace chunglu {

// Truncated Poisson transfer matrix P over degree classes 1..m:
//   P(i, k) = poiss(k, i) = k^i e^-k / i!
// with rows indexed by output degree i and columns by input class k, and its
// factorization P = A V B into A = diag(1/i!), the Vandermonde V(i, k) =
// k^(i-1) and B = diag(k e^-k). P predicts the expected realized degree
// distribution of a Chung-Lu generator: expected output = P x.
struct TransferMatrix {
    std::size_t m = 0;
    std::vector<double> p;       // row-major, p[(i-1)*m + (k-1)]
    std::vector<double> a_diag;  // 1/i!
    std::vector<double> v;       // row-major Vandermonde, k^(i-1)
    std::vector<double> b_diag;  // k e^-k

    double at(std::size_t i, std::size_t k) const { return p[(i - 1) * m + (k - 1)]; }
    double vandermonde_at(std::size_t i, std::size_t k) const { return v[(i - 1) * m + (k - 1)]; }
};

// Largest dimension for which every P entry stays a normal double:
// P(m, 1) = e^-1 / m! underflows just past 170.
inline constexpr std::size_t kMaxMachineDimension = 170;

inline TransferMatrix build_transfer_matrix(std::size_t m) {
    if (m < 1) throw std::invalid_argument("build_transfer_matrix: m must be >= 1");
    if (m > kMaxMachineDimension)
        throw std::invalid_argument(
            "build_transfer_matrix: m > 170 underflows IEEE doubles; use the "
            "extended-precision transfer matrix from exact_inverse.hpp instead");
    TransferMatrix t;
    t.m = m;
    t.p.resize(m * m);
    t.v.resize(m * m);
    t.a_diag.resize(m);
    t.b_diag.resize(m);

    t.a_diag[0] = 1.0;
    for (std::size_t i = 2; i <= m; ++i) t.a_diag[i - 1] = t.a_diag[i - 2] / static_cast<double>(i);
    for (std::size_t k = 1; k <= m; ++k)
        t.b_diag[k - 1] = static_cast<double>(k) * std::exp(-static_cast<double>(k));

    // Row recurrence poiss(k, i) = poiss(k, i-1) * k / i keeps every entry in
    // [0, 1] and avoids the k^i / i! overflow of the textbook formula.
    for (std::size_t k = 1; k <= m; ++k) {
        t.p[k - 1] = t.b_diag[k - 1];
        t.v[k - 1] = 1.0;
        for (std::size_t i = 2; i <= m; ++i) {
            t.p[(i - 1) * m + (k - 1)] =
                t.p[(i - 2) * m + (k - 1)] * static_cast<double>(k) / static_cast<double>(i);
            t.v[(i - 1) * m + (k - 1)] = t.v[(i - 2) * m + (k - 1)] * static_cast<double>(k);
        }
    }
    return t;
}

// Expected output degree distribution P x of a Chung-Lu run with input x.
inline std::vector<double> predict_output(const TransferMatrix& t, std::span<const double> x) {
    if (x.size() != t.m) throw std::invalid_argument("predict_output: dimension mismatch");
    std::vector<double> out(t.m, 0.0);
    for (std::size_t i = 0; i < t.m; ++i) {
        double acc = 0.0;
        const double* row = t.p.data() + i * t.m;
        for (std::size_t k = 0; k < t.m; ++k) acc += row[k] * x[k];
        out[i] = acc;
    }
    return out;
}

inline std::vector<double> predict_output(const TransferMatrix& t, const DegreeDistribution& x) {
    return predict_output(t, std::span<const double>(x.counts));
}

// Mean image under P of the uniform distribution over the positive
// hypercube [0, r]^m: (r/2) P 1.
inline std::vector<double> mean_action(const TransferMatrix& t, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("mean_action: r must be > 0");
    std::vector<double> out(t.m, 0.0);
    for (std::size_t i = 0; i < t.m; ++i) {
        double acc = 0.0;
        const double* row = t.p.data() + i * t.m;
        for (std::size_t k = 0; k < t.m; ++k) acc += row[k];
        out[i] = acc * r / 2.0;
    }
    return out;
}

inline double max_column_sum(const TransferMatrix& t) {
    double best = 0.0;
    for (std::size_t k = 0; k < t.m; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < t.m; ++i) acc += t.p[i * t.m + k];
        best = std::max(best, acc);
    }
    return best;
}

// Family-level connection means of the Chung-Lu model. For families sized by
// a distribution d, a node of expected degree i connects to family j with
// mean gamma(i, j) * |d_j|; summing over j recovers mu(i) = i exactly.
struct MeansSystem {
    static double gamma(std::size_t i, std::size_t j, const DegreeDistribution& d) {
        double s = 0.0;
        for (std::size_t k = 1; k <= d.max_degree(); ++k)
            s += static_cast<double>(k) * d.counts[k - 1];
        if (s == 0.0) throw std::invalid_argument("MeansSystem: empty distribution");
        return static_cast<double>(i) * static_cast<double>(j) / s;
    }

    static double mu(std::size_t i) { return static_cast<double>(i); }

    static double family_mean(std::size_t i, const DegreeDistribution& d) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= d.max_degree(); ++j)
            acc += gamma(i, j, d) * d.counts[j - 1];
        return acc;
    }
};

}  // namespace chunglu
