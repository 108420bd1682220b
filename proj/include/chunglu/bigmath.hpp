#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace chunglu {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

// Arbitrary-precision real with runtime-selected precision. The working
// precision of new values is the thread-local default; every entry point
// that computes with BigFloat installs a ScopedPrecision first.
using BigFloat = boost::multiprecision::mpfr_float;

// Decimal digits used for all extended-precision arithmetic. The default
// grows with the dimension because the inverse factors scale like m! and
// e^m, which eats roughly m log10 m digits of headroom.
struct PrecisionContext {
    static constexpr unsigned kMinDigits = 50;

    unsigned digits;

    explicit PrecisionContext(unsigned d) : digits(d) {
        if (d < kMinDigits)
            throw std::invalid_argument("PrecisionContext: need at least " +
                                        std::to_string(kMinDigits) + " digits, got " +
                                        std::to_string(d));
    }

    static PrecisionContext for_dimension(std::size_t m) {
        double md = static_cast<double>(m < 1 ? 1 : m);
        auto grown = static_cast<unsigned>(std::ceil(md * std::log10(md))) + 50;
        return PrecisionContext(grown < 100 ? 100 : grown);
    }
};

class ScopedPrecision {
public:
    explicit ScopedPrecision(const PrecisionContext& ctx) : saved_(BigFloat::default_precision()) {
        BigFloat::default_precision(ctx.digits);
    }
    ~ScopedPrecision() { BigFloat::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
    unsigned saved_;
};

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// Exact binomial coefficient; 0 outside the triangle.
inline BigInt binomial(unsigned n, long long k) {
    if (k < 0 || static_cast<unsigned long long>(k) > n) return 0;
    auto kk = static_cast<unsigned>(k);
    if (kk > n - kk) kk = n - kk;
    BigInt r = 1;
    for (unsigned i = 1; i <= kk; ++i) {
        r *= n - kk + i;
        r /= i;  // exact: r is always an integer binomial prefix
    }
    return r;
}

// Unsigned Stirling number of the first kind (permutations of n with k
// cycles) via c(n,k) = c(n-1,k-1) + (n-1) c(n-1,k); 0 for k > n.
inline BigInt stirling_first_unsigned(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (n == 0) return 1;  // c(0,0)
    std::vector<BigInt> row(n + 1);
    row[0] = 1;  // row for n = 0
    for (unsigned r = 1; r <= n; ++r) {
        for (unsigned c = r; c >= 1; --c) row[c] = row[c - 1] + (r - 1) * row[c];
        row[0] = 0;
    }
    return row[k];
}

// Binomial, Stirling and factorial triangles up to max_n, built once and
// shared read-only across shifts.
class CombinatoricsTable {
public:
    explicit CombinatoricsTable(unsigned max_n) : max_n_(max_n) {
        binom_.resize(size(max_n + 1));
        stir_.resize(size(max_n + 1));
        fact_.resize(max_n + 1);
        fact_[0] = 1;
        for (unsigned n = 1; n <= max_n; ++n) fact_[n] = fact_[n - 1] * n;
        for (unsigned n = 0; n <= max_n; ++n) {
            at(binom_, n, 0) = 1;
            at(stir_, n, 0) = (n == 0) ? 1 : 0;
            for (unsigned k = 1; k <= n; ++k) {
                at(binom_, n, k) = get(binom_, n - 1, k - 1) + get(binom_, n - 1, k);
                at(stir_, n, k) = get(stir_, n - 1, k - 1) + (n - 1) * get(stir_, n - 1, k);
            }
        }
    }

    const BigInt& binomial(unsigned n, unsigned k) const {
        require(n, k);
        return k > n ? zero_ : at_c(binom_, n, k);
    }
    const BigInt& stirling(unsigned n, unsigned k) const {
        require(n, k);
        return k > n ? zero_ : at_c(stir_, n, k);
    }
    const BigInt& factorial(unsigned n) const {
        if (n > max_n_) throw std::out_of_range("CombinatoricsTable: n exceeds table size");
        return fact_[n];
    }
    unsigned max_n() const { return max_n_; }

private:
    static std::size_t size(unsigned rows) {
        return static_cast<std::size_t>(rows) * (rows + 1) / 2;
    }
    static std::size_t index(unsigned n, unsigned k) {
        return static_cast<std::size_t>(n) * (n + 1) / 2 + k;
    }
    static BigInt& at(std::vector<BigInt>& tri, unsigned n, unsigned k) { return tri[index(n, k)]; }
    static const BigInt& at_c(const std::vector<BigInt>& tri, unsigned n, unsigned k) {
        return tri[index(n, k)];
    }
    const BigInt& get(const std::vector<BigInt>& tri, unsigned n, unsigned k) const {
        return k > n ? zero_ : at_c(tri, n, k);
    }
    void require(unsigned n, unsigned) const {
        if (n > max_n_) throw std::out_of_range("CombinatoricsTable: n exceeds table size");
    }

    unsigned max_n_;
    std::vector<BigInt> binom_;
    std::vector<BigInt> stir_;
    std::vector<BigInt> fact_;
    BigInt zero_ = 0;
};

}  // namespace chunglu
