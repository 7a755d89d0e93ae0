#pragma once

// The degenerate exponential e_lambda^x(t) = sum (x)_{n,lambda} t^n/n!, its
// compositional inverse log_lambda(1+t), and the operator
// e_lambda^{lambda-1}(t) d/dt, all as truncated series.

#include <truncbell/exactnum.hpp>
#include <truncbell/fps.hpp>

#include <type_traits>

namespace truncbell {

/// e_lambda^x(t) through t^order; equals exp(x t) at lambda = 0. `x` may be
/// a Rational or a Poly (e.g. Poly::x() for the generic polynomial series).
template <CoefficientRing R>
Fps<R> deg_exp(const R& x, const Lambda& lambda, int order) {
    Fps<R> out(order);
    R ff(Rational(1));  // (x)_{n,lambda}
    Rational inv_fact(1);
    Rational shift(0);
    for (int n = 0; n <= order; ++n) {
        if (n > 0) {
            inv_fact *= Rational(1, n);
            ff = lambda.is_zero() ? R(ff * x) : R(ff * (x - R(shift)));
            shift += lambda.value();
        }
        out.coeff(n) = ff * inv_fact;
    }
    return out;
}

/// e_lambda(t) - 1.
inline Fps<Rational> deg_exp_minus_one(const Lambda& lambda, int order) {
    Fps<Rational> e = deg_exp(Rational(1), lambda, order);
    e.coeff(0) = Rational(0);
    return e;
}

/// log_lambda(1+t) from the closed form ((1+t)^lambda - 1)/lambda, whose
/// t^n coefficient is (lambda-1)(lambda-2)...(lambda-n+1)/n!. At lambda = 0
/// this is log(1+t) = sum (-1)^{n-1} t^n / n.
inline Fps<Rational> deg_log(const Lambda& lambda, int order) {
    Fps<Rational> out(order);
    if (lambda.is_zero()) {
        for (int n = 1; n <= order; ++n) out.coeff(n) = Rational(n % 2 ? 1 : -1, n);
        return out;
    }
    for (int n = 1; n <= order; ++n)
        out.coeff(n) = falling_factorial(lambda.value() - Rational(1), n - 1) / factorial(n);
    return out;
}

/// log_lambda(1+t) as the compositional inverse of e_lambda(t) - 1.
inline Fps<Rational> deg_log_by_inversion(const Lambda& lambda, int order) {
    if (order == 0) return Fps<Rational>(0);
    return compositional_inverse(deg_exp_minus_one(lambda, order));
}

/// e_lambda^{lambda-1}(t) f'(t), known to order(f) - 1.
template <CoefficientRing R>
Fps<R> apply_Dlambda(const Fps<R>& f, const Lambda& lambda) {
    const Fps<R> df = f.derivative();
    const Fps<Rational> prefactor = deg_exp(lambda.value() - Rational(1), lambda, df.order());
    if constexpr (std::is_same_v<R, Rational>) {
        return prefactor * df;
    } else {
        return lift(prefactor) * df;
    }
}

}  // namespace truncbell
