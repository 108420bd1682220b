#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include <chunglu/distribution.hpp>
#include <chunglu/exact_inverse.hpp>
#include <chunglu/rng.hpp>
#include <chunglu/transfer_matrix.hpp>

namespace chunglu {

// Per-class feasibility band N * min_k P(i,k) <= y_i <= N * max_k P(i,k) for
// targets reachable from some x >= 0 with ||x||_1 = N. The row maximum sits
// on the diagonal for every row of the integer-truncated matrix, but the
// true row max is what makes the bound literally hold, so that is what gets
// checked (diagonal_is_max records the comparison).
struct ClassBound {
    std::size_t degree = 0;
    double lower = 0.0;
    double upper = 0.0;
    double value = 0.0;
    bool ok = false;
    bool diagonal_is_max = true;
};

inline std::vector<ClassBound> class_bounds(const DegreeDistribution& y, double n_total) {
    if (!(n_total > 0.0)) throw std::invalid_argument("class_bounds: N must be > 0");
    const std::size_t m = y.max_degree();
    auto t = build_transfer_matrix(m);
    std::vector<ClassBound> bounds(m);
    for (std::size_t i = 1; i <= m; ++i) {
        double row_min = t.at(i, 1), row_max = t.at(i, 1);
        for (std::size_t k = 2; k <= m; ++k) {
            row_min = std::min(row_min, t.at(i, k));
            row_max = std::max(row_max, t.at(i, k));
        }
        ClassBound& b = bounds[i - 1];
        b.degree = i;
        b.lower = n_total * row_min;
        b.upper = n_total * row_max;
        b.value = y.counts[i - 1];
        double slack = 1e-12 * n_total * row_max;
        b.ok = (b.value >= b.lower - slack) && (b.value <= b.upper + slack);
        b.diagonal_is_max = (row_max == t.at(i, i));
    }
    return bounds;
}

// Admissible node-count interval [||y||_1, y_m / min_k P(m,k)]. For large m
// the row-m minimum e^-1/m! is effectively zero and the upper end carries no
// information, which the flag reports.
struct NRange {
    double lower = 0.0;
    double upper = 0.0;
    bool upper_informative = false;
};

inline NRange n_search_range(const DegreeDistribution& y) {
    const std::size_t m = y.max_degree();
    auto t = build_transfer_matrix(m);
    double row_min = t.at(m, 1);
    for (std::size_t k = 2; k <= m; ++k) row_min = std::min(row_min, t.at(m, k));

    NRange range;
    range.lower = y.total_nodes();
    double y_m = y.counts[m - 1];
    if (y_m <= 0.0) {
        range.upper = 0.0;
        range.upper_informative = false;
    } else if (row_min < 1e-30) {
        range.upper = y_m / row_min;
        range.upper_informative = false;
    } else {
        range.upper = y_m / row_min;
        range.upper_informative = true;
    }
    return range;
}

inline std::vector<BigFloat> compute_omega(std::size_t m, const PrecisionContext& ctx) {
    return ExactTransferInverse(m).omega(ctx);
}

// ||P^T omega - 1||_1, the defining residual of omega. Applies the transpose
// in stages: P^T = B V^T A, and (V^T u)_k is a polynomial evaluation at k.
inline BigFloat omega_residual(std::span<const BigFloat> omega, const PrecisionContext& ctx) {
    const std::size_t m = omega.size();
    ScopedPrecision guard(ctx);
    std::vector<BigFloat> u(m);
    BigInt fact = 1;
    for (std::size_t i = 1; i <= m; ++i) {
        fact *= static_cast<unsigned>(i);
        u[i - 1] = BigFloat(omega[i - 1]) / BigFloat(fact);
    }
    BigFloat residual(0);
    for (std::size_t k = 1; k <= m; ++k) {
        BigFloat horner(0);
        for (std::size_t i = m; i >= 1; --i) horner = horner * static_cast<long>(k) + u[i - 1];
        BigFloat pt_omega =
            horner * static_cast<long>(k) * exp(BigFloat(-static_cast<long>(k)));
        residual += abs(pt_omega - 1);
    }
    return residual;
}

// Inner product (y - (N/m) P 1, omega); zero is necessary for y to lie on
// the image hyperplane P H_N.
inline BigFloat hyperplane_residual(std::span<const BigFloat> y, const BigFloat& n_total,
                                    std::span<const BigFloat> omega, const PrecisionContext& ctx) {
    const std::size_t m = y.size();
    if (omega.size() != m) throw std::invalid_argument("hyperplane_residual: dimension mismatch");
    ScopedPrecision guard(ctx);
    std::vector<BigFloat> ones(m, BigFloat(1));
    auto p_ones = extended_forward(m, ones, ctx);
    BigFloat scale = BigFloat(n_total) / static_cast<long>(m);
    BigFloat acc(0);
    for (std::size_t i = 0; i < m; ++i)
        acc += (BigFloat(y[i]) - scale * p_ones[i]) * BigFloat(omega[i]);
    return acc;
}

inline BigFloat hyperplane_residual(const DegreeDistribution& y, double n_total,
                                    std::span<const BigFloat> omega, const PrecisionContext& ctx) {
    ScopedPrecision guard(ctx);
    std::vector<BigFloat> yf(y.counts.size());
    for (std::size_t i = 0; i < yf.size(); ++i) yf[i] = BigFloat(y.counts[i]);
    return hyperplane_residual(std::span<const BigFloat>(yf), BigFloat(n_total), omega, ctx);
}

// Monte Carlo image of the positive box {0..box_max}^m under P; the raw
// material for the pairwise projection heatmaps.
struct PositiveImageSample {
    std::size_t m = 0;
    std::size_t count = 0;
    unsigned box_max = 0;
    std::vector<double> outputs;      // row-major count x m
    std::vector<double> input_norms;  // ||x||_1 per sample
};

inline PositiveImageSample sample_positive_image(std::size_t m, std::size_t count,
                                                 unsigned box_max, std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("sample_positive_image: m must be >= 2");
    if (count < 1) throw std::invalid_argument("sample_positive_image: count must be >= 1");
    auto t = build_transfer_matrix(m);

    PositiveImageSample sample;
    sample.m = m;
    sample.count = count;
    sample.box_max = box_max;
    sample.outputs.assign(count * m, 0.0);
    sample.input_norms.assign(count, 0.0);

    // One derived stream per sample keeps the draw order irrelevant.
    std::vector<double> x(m);
    for (std::size_t s = 0; s < count; ++s) {
        Rng rng(seed, s);
        double norm = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            x[k] = static_cast<double>(rng.next_below(box_max + 1ull));
            norm += x[k];
        }
        auto y = predict_output(t, x);
        std::copy(y.begin(), y.end(), sample.outputs.begin() + s * m);
        sample.input_norms[s] = norm;
    }
    return sample;
}

// Binned pairwise projections: pair,xi,xj,weight rows for every coordinate
// pair, ready for heatmap rendering.
inline void write_projection_csv(std::ostream& out, const PositiveImageSample& sample,
                                 std::size_t bins = 64) {
    out << "pair,xi,xj,weight\n";
    const std::size_t m = sample.m;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            double max_a = 0, max_b = 0;
            for (std::size_t s = 0; s < sample.count; ++s) {
                max_a = std::max(max_a, sample.outputs[s * m + a]);
                max_b = std::max(max_b, sample.outputs[s * m + b]);
            }
            max_a = std::max(max_a, 1e-12);
            max_b = std::max(max_b, 1e-12);
            std::vector<std::size_t> hist(bins * bins, 0);
            for (std::size_t s = 0; s < sample.count; ++s) {
                auto ia = static_cast<std::size_t>(
                    std::min(static_cast<double>(bins - 1),
                             sample.outputs[s * m + a] / max_a * static_cast<double>(bins)));
                auto ib = static_cast<std::size_t>(
                    std::min(static_cast<double>(bins - 1),
                             sample.outputs[s * m + b] / max_b * static_cast<double>(bins)));
                ++hist[ia * bins + ib];
            }
            for (std::size_t ia = 0; ia < bins; ++ia) {
                for (std::size_t ib = 0; ib < bins; ++ib) {
                    if (hist[ia * bins + ib] == 0) continue;
                    double xi = (static_cast<double>(ia) + 0.5) * max_a / static_cast<double>(bins);
                    double xj = (static_cast<double>(ib) + 0.5) * max_b / static_cast<double>(bins);
                    out << 'X' << a + 1 << "-X" << b + 1 << ',' << xi << ',' << xj << ','
                        << hist[ia * bins + ib] << '\n';
                }
            }
        }
    }
}

// Full diagnostic record for one target distribution. The verdict that
// matters is direct_feasible (positivity of P^-1 y); bounds, hyperplane and
// N-range explain a rejection rather than gatekeep.
struct FeasibilityReport {
    std::size_t m = 0;
    unsigned digits = 0;
    bool direct_feasible = false;
    std::vector<std::size_t> negative_classes;
    double n_used = 0.0;
    bool n_from_shift = false;
    std::vector<ClassBound> bounds;
    bool bounds_ok = false;
    NRange n_range;
    double hyperplane_residual = 0.0;
    double omega_residual = 0.0;
    std::vector<double> omega;
};

inline FeasibilityReport check_feasibility(const DegreeDistribution& y,
                                           const PrecisionContext& ctx) {
    const std::size_t m = y.max_degree();
    if (m < 1) throw std::invalid_argument("check_feasibility: empty distribution");

    ExactTransferInverse inv(m);
    auto shift = inv.shift(y, ctx);
    auto omega = inv.omega(ctx);

    FeasibilityReport report;
    report.m = m;
    report.digits = ctx.digits;
    report.direct_feasible = shift.feasible;
    report.negative_classes = shift.negative_classes;
    report.n_range = n_search_range(y);

    {
        ScopedPrecision guard(ctx);
        report.omega_residual = omega_residual(omega, ctx).convert_to<double>();
        report.omega.reserve(m);
        for (const auto& w : omega) report.omega.push_back(w.convert_to<double>());

        if (shift.feasible) {
            BigFloat n(0);
            for (const auto& xi : shift.x_real) n += xi;
            report.n_used = n.convert_to<double>();
            report.n_from_shift = true;
        } else {
            // Scan a log grid over the admissible N interval for the point
            // nearest the image hyperplane.
            double lo = std::max(report.n_range.lower, 1e-6);
            double hi = report.n_range.upper_informative
                            ? std::max(report.n_range.upper, lo * (1 + 1e-9))
                            : std::max(10.0 * lo, lo + static_cast<double>(m));
            double best_n = lo;
            BigFloat best_abs;
            bool first = true;
            std::vector<BigFloat> yf(m);
            for (std::size_t i = 0; i < m; ++i) yf[i] = BigFloat(y.counts[i]);
            for (int g = 0; g < 100; ++g) {
                double n_try = lo * std::pow(hi / lo, static_cast<double>(g) / 99.0);
                BigFloat r = hyperplane_residual(std::span<const BigFloat>(yf), BigFloat(n_try),
                                                 std::span<const BigFloat>(omega), ctx);
                if (first || abs(r) < best_abs) {
                    best_abs = abs(r);
                    best_n = n_try;
                    first = false;
                }
            }
            report.n_used = best_n;
            report.n_from_shift = false;
        }

        report.hyperplane_residual =
            hyperplane_residual(y, report.n_used, std::span<const BigFloat>(omega), ctx)
                .convert_to<double>();
    }

    report.bounds = class_bounds(y, report.n_used);
    report.bounds_ok = std::all_of(report.bounds.begin(), report.bounds.end(),
                                   [](const ClassBound& b) { return b.ok; });
    return report;
}

inline FeasibilityReport check_feasibility(const DegreeDistribution& y) {
    return check_feasibility(y, PrecisionContext::for_dimension(y.max_degree()));
}

}  // namespace chunglu
