#pragma once

// Factorial-type primitives over exact rationals.

#include <truncbell/rational.hpp>

#include <stdexcept>
#include <utility>

namespace truncbell {

namespace detail {
inline void require_nonnegative(long n, const char* what) {
    if (n < 0) throw std::invalid_argument(std::string(what) + ": negative argument");
}
}  // namespace detail

inline Rational factorial(long n) {
    detail::require_nonnegative(n, "factorial");
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(out);
}

/// C(n, k) for n, k >= 0; zero when k > n.
inline Rational binomial(long n, long k) {
    detail::require_nonnegative(n, "binomial");
    detail::require_nonnegative(k, "binomial");
    if (k > n) return Rational(0);
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(out);
}

/// prod_{j=0}^{n-1} (x - j*step) for any ring element supporting
/// `x - Rational` and `x * x`. With step = 0 this is x^n, with step = 1 the
/// ordinary falling factorial.
template <class R>
R stepped_falling_factorial(const R& x, long n, const Rational& step) {
    detail::require_nonnegative(n, "falling factorial");
    R out(Rational(1));
    if (step.is_zero()) {
        for (long j = 0; j < n; ++j) out = out * x;
        return out;
    }
    Rational shift(0);
    for (long j = 0; j < n; ++j) {
        out = out * (x - shift);
        shift += step;
    }
    return out;
}

/// (x)_n = x(x-1)...(x-n+1), (x)_0 = 1.
inline Rational falling_factorial(const Rational& x, long n) {
    return stepped_falling_factorial(x, n, Rational(1));
}

/// (x)_{n,lambda} = x(x-lambda)...(x-(n-1)lambda), (x)_{0,lambda} = 1.
inline Rational deg_falling_factorial(const Rational& x, long n, const Lambda& lambda) {
    return stepped_falling_factorial(x, n, lambda.value());
}

/// B(a, b) = (a-1)!(b-1)!/(a+b-1)! for positive integer arguments.
inline Rational beta_exact(long a, long b) {
    if (a < 1 || b < 1) throw std::domain_error("beta_exact: arguments must be positive integers");
    return factorial(a - 1) * factorial(b - 1) / factorial(a + b - 1);
}

/// E[X^k] for X ~ Beta(alpha, beta), as C(k+alpha-1, k) / C(k+alpha+beta-1, k).
inline Rational beta_moment(long k, long alpha, long beta) {
    if (alpha < 1 || beta < 1) throw std::domain_error("beta_moment: parameters must be positive integers");
    return binomial(k + alpha - 1, k) / binomial(k + alpha + beta - 1, k);
}

}  // namespace truncbell
