#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <chunglu/bigmath.hpp>
#include <chunglu/distribution.hpp>

namespace chunglu {

// Exact inverse of the Vandermonde factor V(i, k) = k^(i-1) on nodes 1..m,
// built from the closed form
//
//   V^-1(i, j) = (-1)^(i+j) * sum_{k = max(i,j)}^{m} C(k-1, i-1) c(k, j) / (k-1)!
//
// with c the unsigned Stirling number of the first kind. The sign and index
// conventions of the closed form drift between sources, so the constructor
// multiplies V * V^-1 back out in exact rational arithmetic and refuses to
// return anything that is not the identity.
struct VandermondeInverse {
    std::size_t m = 0;
    std::vector<BigRational> entries;  // row-major

    const BigRational& at(std::size_t i, std::size_t j) const {
        return entries[(i - 1) * m + (j - 1)];
    }
};

inline VandermondeInverse vandermonde_inverse(std::size_t m) {
    if (m < 1) throw std::invalid_argument("vandermonde_inverse: m must be >= 1");
    CombinatoricsTable tab(static_cast<unsigned>(m));

    VandermondeInverse inv;
    inv.m = m;
    inv.entries.resize(m * m);
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            BigRational acc = 0;
            for (std::size_t k = std::max(i, j); k <= m; ++k) {
                BigInt num = tab.binomial(static_cast<unsigned>(k - 1), static_cast<unsigned>(i - 1)) *
                             tab.stirling(static_cast<unsigned>(k), static_cast<unsigned>(j));
                acc += BigRational(num, tab.factorial(static_cast<unsigned>(k - 1)));
            }
            if ((i + j) % 2 != 0) acc = -acc;
            inv.entries[(i - 1) * m + (j - 1)] = std::move(acc);
        }
    }

    // V * V^-1 == I, exactly.
    std::vector<BigInt> power(m, 1);  // k^(i-1) for the current row i
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            BigRational acc = 0;
            for (std::size_t k = 1; k <= m; ++k) acc += BigRational(power[k - 1]) * inv.at(k, j);
            if (acc != BigRational(i == j ? 1 : 0))
                throw std::logic_error("vandermonde_inverse: closed form failed the exact "
                                       "identity check at m=" + std::to_string(m));
        }
        for (std::size_t k = 1; k <= m; ++k) power[k - 1] *= static_cast<unsigned>(k);
    }
    return inv;
}

// Elementwise nearest integer, halves away from zero.
inline std::vector<BigInt> round_int(std::span<const BigFloat> x) {
    std::vector<BigInt> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = BigInt(round(x[i]));
    return out;
}

// y = A (V (B x)) at extended precision; the forward map without needing
// the inverse factors.
inline std::vector<BigFloat> extended_forward(std::size_t m, std::span<const BigFloat> x,
                                              const PrecisionContext& ctx) {
    if (x.size() != m) throw std::invalid_argument("extended_forward: dimension mismatch");
    ScopedPrecision guard(ctx);
    std::vector<BigFloat> t(m);
    for (std::size_t k = 1; k <= m; ++k)
        t[k - 1] =
            BigFloat(x[k - 1]) * static_cast<long>(k) * exp(BigFloat(-static_cast<long>(k)));
    std::vector<BigFloat> y(m);
    std::vector<BigFloat> power(m, BigFloat(1));
    BigInt fact = 1;
    for (std::size_t i = 1; i <= m; ++i) {
        fact *= static_cast<unsigned>(i);
        BigFloat acc(0);
        for (std::size_t k = 0; k < m; ++k) acc += power[k] * t[k];
        y[i - 1] = acc / BigFloat(fact);
        for (std::size_t k = 0; k < m; ++k) power[k] *= static_cast<long>(k + 1);
    }
    return y;
}

// Shifted Chung-Lu input for a target output y: x_real = P^-1 y, its integer
// rounding, and what feeding the rounding back through P would produce.
struct ShiftResult {
    std::vector<BigFloat> x_real;
    std::vector<BigInt> x_rounded;
    bool feasible = false;                      // all x_real >= -10^-(digits/2)
    std::vector<std::size_t> negative_classes;  // 1-based classes with x_real < -tol
    std::vector<BigFloat> predicted_back;       // P * x_rounded
    BigFloat rounding_residual;                 // ||y - P * x_rounded||_1
    unsigned digits = 0;
};

// Staged application of P = A V B and P^-1 = B^-1 V^-1 A^-1. P^-1 is never
// materialized on the main path: the factor entries span m! * e^m orders of
// magnitude and a premultiplied P^-1 needs visibly more precision than
// applying the three factors in sequence.
class ExactTransferInverse {
public:
    explicit ExactTransferInverse(std::size_t m)
        : m_(m), vinv_(vandermonde_inverse(m)), factorials_(m + 1) {
        factorials_[0] = 1;
        for (std::size_t i = 1; i <= m; ++i) factorials_[i] = factorials_[i - 1] * i;
    }

    std::size_t dimension() const { return m_; }
    const VandermondeInverse& vandermonde() const { return vinv_; }

    // x = B^-1 (V^-1 (A^-1 y))
    std::vector<BigFloat> apply_inverse(std::span<const BigFloat> y,
                                        const PrecisionContext& ctx) const {
        require_size(y.size());
        ScopedPrecision guard(ctx);
        std::vector<BigFloat> u(m_);
        for (std::size_t i = 0; i < m_; ++i) u[i] = BigFloat(factorials_[i + 1]) * BigFloat(y[i]);
        std::vector<BigFloat> x(m_);
        for (std::size_t i = 1; i <= m_; ++i) {
            BigFloat acc(0);
            for (std::size_t j = 1; j <= m_; ++j) acc += BigFloat(vinv_.at(i, j)) * u[j - 1];
            x[i - 1] = acc * exp(BigFloat(static_cast<long>(i))) / static_cast<long>(i);
        }
        return x;
    }

    // y = A (V (B x))
    std::vector<BigFloat> apply_forward(std::span<const BigFloat> x,
                                        const PrecisionContext& ctx) const {
        require_size(x.size());
        return extended_forward(m_, x, ctx);
    }

    std::vector<BigFloat> apply_forward(std::span<const BigInt> x,
                                        const PrecisionContext& ctx) const {
        ScopedPrecision guard(ctx);
        std::vector<BigFloat> xf(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) xf[i] = BigFloat(x[i]);
        return apply_forward(std::span<const BigFloat>(xf), ctx);
    }

    std::vector<BigFloat> apply_forward(const DegreeDistribution& x,
                                        const PrecisionContext& ctx) const {
        ScopedPrecision guard(ctx);
        std::vector<BigFloat> xf(x.counts.size());
        for (std::size_t i = 0; i < xf.size(); ++i) xf[i] = BigFloat(x.counts[i]);
        return apply_forward(std::span<const BigFloat>(xf), ctx);
    }

    // omega = (P^-1)^T 1 = A^-1 (V^-T (B^-1 1)); the unique vector with
    // P^T omega = 1, normal to the image hyperplane P H_N.
    std::vector<BigFloat> omega(const PrecisionContext& ctx) const {
        ScopedPrecision guard(ctx);
        std::vector<BigFloat> t(m_);
        for (std::size_t j = 1; j <= m_; ++j)
            t[j - 1] = exp(BigFloat(static_cast<long>(j))) / static_cast<long>(j);
        std::vector<BigFloat> w(m_);
        for (std::size_t i = 1; i <= m_; ++i) {
            BigFloat acc(0);
            for (std::size_t j = 1; j <= m_; ++j) acc += BigFloat(vinv_.at(j, i)) * t[j - 1];
            w[i - 1] = acc * BigFloat(factorials_[i]);
        }
        return w;
    }

    // Debug-only comparison path: P^-1 as one explicit matrix.
    std::vector<BigFloat> materialized_inverse(const PrecisionContext& ctx) const {
        ScopedPrecision guard(ctx);
        std::vector<BigFloat> inv(m_ * m_);
        for (std::size_t i = 1; i <= m_; ++i) {
            BigFloat binv = exp(BigFloat(static_cast<long>(i))) / static_cast<long>(i);
            for (std::size_t j = 1; j <= m_; ++j)
                inv[(i - 1) * m_ + (j - 1)] =
                    binv * BigFloat(vinv_.at(i, j)) * BigFloat(factorials_[j]);
        }
        return inv;
    }

    ShiftResult shift(std::span<const BigFloat> y, const PrecisionContext& ctx) const {
        require_size(y.size());
        ShiftResult result;
        result.digits = ctx.digits;
        result.x_real = apply_inverse(y, ctx);
        result.x_rounded = round_int(result.x_real);

        ScopedPrecision guard(ctx);
        BigFloat tol = pow(BigFloat(10), -static_cast<long>(ctx.digits / 2));
        result.feasible = true;
        for (std::size_t i = 0; i < m_; ++i) {
            if (result.x_real[i] < -tol) {
                result.feasible = false;
                result.negative_classes.push_back(i + 1);
            }
        }
        result.predicted_back = apply_forward(std::span<const BigInt>(result.x_rounded), ctx);
        BigFloat residual(0);
        for (std::size_t i = 0; i < m_; ++i)
            residual += abs(BigFloat(y[i]) - result.predicted_back[i]);
        result.rounding_residual = residual;
        return result;
    }

    ShiftResult shift(const DegreeDistribution& y, const PrecisionContext& ctx) const {
        ScopedPrecision guard(ctx);
        std::vector<BigFloat> yf(y.counts.size());
        for (std::size_t i = 0; i < yf.size(); ++i) yf[i] = BigFloat(y.counts[i]);
        return shift(std::span<const BigFloat>(yf), ctx);
    }

private:
    void require_size(std::size_t n) const {
        if (n != m_) throw std::invalid_argument("ExactTransferInverse: dimension mismatch");
    }

    std::size_t m_;
    VandermondeInverse vinv_;
    std::vector<BigInt> factorials_;
};

inline ShiftResult shift_input(const DegreeDistribution& y, const PrecisionContext& ctx) {
    if (y.max_degree() < 1) throw std::invalid_argument("shift_input: empty distribution");
    return ExactTransferInverse(y.max_degree()).shift(y, ctx);
}

inline ShiftResult shift_input(const DegreeDistribution& y) {
    return shift_input(y, PrecisionContext::for_dimension(y.max_degree()));
}

// Extended-precision transfer matrix P(i, k) = k^i e^-k / i!, row-major.
// The machine-precision build in transfer_matrix.hpp is the forward-model
// default; this one serves inverse-adjacent checks (norm bounds, residuals)
// where double rounding is too coarse.
inline std::vector<BigFloat> extended_transfer_matrix(std::size_t m, const PrecisionContext& ctx) {
    if (m < 1) throw std::invalid_argument("extended_transfer_matrix: m must be >= 1");
    ScopedPrecision guard(ctx);
    std::vector<BigFloat> p(m * m);
    std::vector<BigFloat> column(m);
    for (std::size_t k = 1; k <= m; ++k)
        column[k - 1] = BigFloat(static_cast<long>(k)) * exp(BigFloat(-static_cast<long>(k)));
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t k = 1; k <= m; ++k) {
            if (i > 1) column[k - 1] *= BigFloat(static_cast<long>(k)) / static_cast<long>(i);
            p[(i - 1) * m + (k - 1)] = column[k - 1];
        }
    }
    return p;
}

}  // namespace chunglu
