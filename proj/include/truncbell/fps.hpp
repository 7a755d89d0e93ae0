#pragma once

// Truncated formal power series in t.
//
// Fps<R> stores the coefficients a_0..a_N of a series known modulo t^{N+1}.
// R is one of the two supported coefficient rings: Rational, or Poly (the
// series then carries an extra indeterminate x in its coefficients).
// Binary operations truncate to the smaller of the two operand orders.

#include <truncbell/exactnum.hpp>
#include <truncbell/poly.hpp>
#include <truncbell/rational.hpp>

#include <algorithm>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace truncbell {

template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static bool is_zero(const Rational& a) { return a.is_zero(); }
    static Rational unit_inverse(const Rational& a) {
        if (a.is_zero()) throw std::domain_error("fps: leading coefficient is not invertible");
        return a.inverse();
    }
    static std::string render(const Rational& a) { return a.to_string(); }
};

template <>
struct RingTraits<Poly> {
    static bool is_zero(const Poly& a) { return a.is_zero(); }
    /// Units of Q[x] are the nonzero constants.
    static Rational unit_inverse(const Poly& a) {
        if (a.is_zero() || !a.is_constant())
            throw std::domain_error("fps: leading coefficient is not invertible");
        return a.coeff(0).inverse();
    }
    static std::string render(const Poly& a) { return "(" + a.to_string() + ")"; }
};

template <class R>
concept CoefficientRing = requires(R a, R b, Rational c) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { a * c } -> std::convertible_to<R>;
    { RingTraits<R>::is_zero(a) } -> std::same_as<bool>;
};

template <CoefficientRing R>
class Fps {
public:
    using value_type = R;

    /// The zero series modulo t^{order+1}.
    explicit Fps(int order) : coeffs_(checked_size(order), R(Rational(0))) {}

    /// Pads with zeros or truncates `coeffs` to exactly order+1 entries.
    Fps(int order, std::vector<R> coeffs) : coeffs_(std::move(coeffs)) {
        coeffs_.resize(checked_size(order), R(Rational(0)));
    }

    static Fps constant(int order, const R& c) {
        Fps f(order);
        f.coeffs_[0] = c;
        return f;
    }
    static Fps one(int order) { return constant(order, R(Rational(1))); }
    /// The series t (zero when order == 0).
    static Fps t(int order) {
        Fps f(order);
        if (order >= 1) f.coeffs_[1] = R(Rational(1));
        return f;
    }

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    const R& coeff(int n) const {
        if (n < 0 || n > order()) throw std::out_of_range("fps: coefficient index outside truncation order");
        return coeffs_[static_cast<std::size_t>(n)];
    }
    R& coeff(int n) {
        if (n < 0 || n > order()) throw std::out_of_range("fps: coefficient index outside truncation order");
        return coeffs_[static_cast<std::size_t>(n)];
    }
    const std::vector<R>& coeffs() const noexcept { return coeffs_; }

    /// a_n in f = sum a_n t^n / n!.
    R egf_coeff(int n) const { return coeff(n) * factorial(n); }

    std::vector<R> egf_coeffs() const {
        std::vector<R> out;
        out.reserve(coeffs_.size());
        for (int n = 0; n <= order(); ++n) out.push_back(egf_coeff(n));
        return out;
    }

    /// Index of the first nonzero known coefficient; nullopt if all known
    /// coefficients vanish.
    std::optional<int> valuation() const {
        for (int n = 0; n <= order(); ++n)
            if (!RingTraits<R>::is_zero(coeffs_[static_cast<std::size_t>(n)])) return n;
        return std::nullopt;
    }

    Fps truncated(int new_order) const {
        if (new_order > order()) throw std::invalid_argument("fps: cannot extend truncation order");
        return Fps(new_order, std::vector<R>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
    }

    /// f'(t), known to order-1.
    Fps derivative() const {
        if (order() < 1) throw std::invalid_argument("fps: derivative needs order >= 1");
        Fps out(order() - 1);
        for (int n = 1; n <= order(); ++n) out.coeffs_[n - 1] = coeffs_[n] * Rational(n);
        return out;
    }

    /// f(t)/t^shift for a series whose first `shift` coefficients vanish.
    Fps shifted_down(int shift) const {
        if (shift < 0 || shift > order()) throw std::invalid_argument("fps: invalid shift");
        for (int n = 0; n < shift; ++n)
            if (!RingTraits<R>::is_zero(coeffs_[n])) throw std::domain_error("fps: valuation too small for shift");
        return Fps(order() - shift, std::vector<R>(coeffs_.begin() + shift, coeffs_.end()));
    }

    std::string to_string() const {
        std::string out;
        for (int n = 0; n <= order(); ++n) {
            if (RingTraits<R>::is_zero(coeffs_[n])) continue;
            if (!out.empty()) out += " + ";
            out += RingTraits<R>::render(coeffs_[n]);
            if (n == 1) out += " t";
            if (n > 1) out += " t^" + std::to_string(n);
        }
        if (out.empty()) out = "0";
        return out + " + O(t^" + std::to_string(order() + 1) + ")";
    }

    Fps& operator+=(const Fps& o) {
        truncate_to(o.order());
        for (int n = 0; n <= order(); ++n) coeffs_[n] = coeffs_[n] + o.coeffs_[n];
        return *this;
    }
    Fps& operator-=(const Fps& o) {
        truncate_to(o.order());
        for (int n = 0; n <= order(); ++n) coeffs_[n] = coeffs_[n] - o.coeffs_[n];
        return *this;
    }
    Fps& operator*=(const Rational& c) {
        for (auto& a : coeffs_) a = a * c;
        return *this;
    }

    friend Fps operator+(Fps a, const Fps& b) { return a += b; }
    friend Fps operator-(Fps a, const Fps& b) { return a -= b; }
    friend Fps operator-(Fps a) { return a *= Rational(-1); }
    friend Fps operator*(Fps a, const Rational& c) { return a *= c; }
    friend Fps operator*(const Rational& c, Fps a) { return a *= c; }

    /// Coefficient-wise multiplication by a ring element.
    Fps scaled(const R& c) const {
        Fps out = *this;
        for (auto& a : out.coeffs_) a = a * c;
        return out;
    }

    friend Fps operator*(const Fps& a, const Fps& b) {
        const int n_max = std::min(a.order(), b.order());
        Fps out(n_max);
        for (int i = 0; i <= n_max; ++i) {
            if (RingTraits<R>::is_zero(a.coeffs_[i])) continue;
            for (int j = 0; i + j <= n_max; ++j) {
                if (RingTraits<R>::is_zero(b.coeffs_[j])) continue;
                out.coeffs_[i + j] = out.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return out;
    }
    Fps& operator*=(const Fps& o) { return *this = *this * o; }

    friend bool operator==(const Fps& a, const Fps& b) { return a.coeffs_ == b.coeffs_; }

private:
    static std::size_t checked_size(int order) {
        if (order < 0) throw std::invalid_argument("fps: negative truncation order");
        return static_cast<std::size_t>(order) + 1;
    }
    void truncate_to(int o) {
        if (o < order()) coeffs_.resize(static_cast<std::size_t>(o) + 1);
    }

    std::vector<R> coeffs_;
};

/// Embeds a rational series into the polynomial coefficient ring.
inline Fps<Poly> lift(const Fps<Rational>& f) {
    std::vector<Poly> cs;
    cs.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) cs.emplace_back(c);
    return Fps<Poly>(f.order(), std::move(cs));
}

/// Substitutes x = at into every coefficient.
inline Fps<Rational> evaluate_at(const Fps<Poly>& f, const Rational& at) {
    std::vector<Rational> cs;
    for (const auto& c : f.coeffs()) cs.push_back(c.evaluate(at));
    return Fps<Rational>(f.order(), std::move(cs));
}

template <CoefficientRing R>
Fps<R> fps_pow(const Fps<R>& a, unsigned exponent) {
    Fps<R> base = a;
    Fps<R> out = Fps<R>::one(a.order());
    while (exponent) {
        if (exponent & 1U) out *= base;
        exponent >>= 1U;
        if (exponent) base *= base;
    }
    return out;
}

/// exp(f) for f with zero constant term, via n g_n = sum_{k=1}^n k f_k g_{n-k}.
template <CoefficientRing R>
Fps<R> fps_exp(const Fps<R>& f) {
    if (!RingTraits<R>::is_zero(f.coeff(0))) throw std::domain_error("fps_exp: nonzero constant term");
    const int order = f.order();
    Fps<R> g = Fps<R>::one(order);
    for (int n = 1; n <= order; ++n) {
        R acc(Rational(0));
        for (int k = 1; k <= n; ++k) {
            if (RingTraits<R>::is_zero(f.coeff(k))) continue;
            acc = acc + f.coeff(k) * g.coeff(n - k) * Rational(k);
        }
        g.coeff(n) = acc * Rational(1, n);
    }
    return g;
}

/// a / b where b has valuation v: both are divided by t^v first, so the
/// quotient is known to min(order(a), order(b)) - v. Requires the first v
/// coefficients of a to vanish and b's leading coefficient to be a unit.
template <CoefficientRing R>
Fps<R> fps_div(const Fps<R>& a, const Fps<R>& b) {
    const auto vb = b.valuation();
    if (!vb) throw std::domain_error("fps_div: division by a series with no known nonzero coefficient");
    const int order = std::min(a.order(), b.order());
    if (*vb > order) throw std::domain_error("fps_div: divisor valuation exceeds truncation order");
    for (int n = 0; n < *vb; ++n)
        if (!RingTraits<R>::is_zero(a.coeff(n)))
            throw std::domain_error("fps_div: numerator valuation is below divisor valuation");
    const Fps<R> num = a.truncated(order).shifted_down(*vb);
    const Fps<R> den = b.truncated(order).shifted_down(*vb);
    const Rational inv = RingTraits<R>::unit_inverse(den.coeff(0));
    Fps<R> q(num.order());
    for (int n = 0; n <= num.order(); ++n) {
        R acc = num.coeff(n);
        for (int k = 1; k <= n; ++k) {
            if (RingTraits<R>::is_zero(den.coeff(k))) continue;
            acc = acc - den.coeff(k) * q.coeff(n - k);
        }
        q.coeff(n) = acc * inv;
    }
    return q;
}

/// a(b(t)) for b with zero constant term (Horner).
template <CoefficientRing R>
Fps<R> fps_compose(const Fps<R>& a, const Fps<R>& b) {
    if (!RingTraits<R>::is_zero(b.coeff(0))) throw std::domain_error("fps_compose: inner series has nonzero constant term");
    const int order = std::min(a.order(), b.order());
    const Fps<R> inner = b.truncated(order);
    Fps<R> out = Fps<R>::constant(order, a.coeff(order));
    for (int i = order - 1; i >= 0; --i) out = out * inner + Fps<R>::constant(order, a.coeff(i));
    return out;
}

/// g with f(g(t)) = t, for f = f_1 t + f_2 t^2 + ... with f_1 invertible.
/// Solves [t^n] f(g) = 0 for g_n one coefficient at a time.
inline Fps<Rational> compositional_inverse(const Fps<Rational>& f) {
    const int order = f.order();
    if (order < 1) throw std::invalid_argument("compositional_inverse: order must be >= 1");
    if (!f.coeff(0).is_zero()) throw std::domain_error("compositional_inverse: nonzero constant term");
    const Rational inv = RingTraits<Rational>::unit_inverse(f.coeff(1));
    Fps<Rational> g(order);
    g.coeff(1) = inv;
    for (int n = 2; n <= order; ++n) {
        const Fps<Rational> composed = fps_compose(f, g.truncated(n));
        g.coeff(n) = -composed.coeff(n) * inv;
    }
    return g;
}

}  // namespace truncbell
