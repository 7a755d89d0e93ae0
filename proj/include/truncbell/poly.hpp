#pragma once

// Dense univariate polynomials in x over the rationals.
//
// Canonical form: no trailing zero coefficients; the zero polynomial is the
// empty coefficient list.

#include <truncbell/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace truncbell {

class Poly {
public:
    Poly() = default;
    Poly(const Rational& constant) {  // NOLINT: scalars embed implicitly
        if (!constant.is_zero()) coeffs_.push_back(constant);
    }
    Poly(long constant) : Poly(Rational(constant)) {}  // NOLINT
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// The indeterminate x.
    static Poly x() { return monomial(1, Rational(1)); }

    static Poly monomial(std::size_t power, const Rational& c) {
        if (c.is_zero()) return {};
        std::vector<Rational> cs(power + 1, Rational(0));
        cs[power] = c;
        return Poly(std::move(cs));
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

    Rational coeff(std::size_t power) const {
        return power < coeffs_.size() ? coeffs_[power] : Rational(0);
    }
    Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    Rational evaluate(const Rational& at) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    /// Ascending powers, every nonzero coefficient printed explicitly:
    /// "c0 + c1*x + c2*x^2". The zero polynomial prints as "0".
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += coeffs_[k].to_string();
            if (k == 1) out += "*x";
            if (k > 1) out += "*x^" + std::to_string(k);
        }
        return out;
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const Rational& c) {
        if (c.is_zero()) {
            coeffs_.clear();
            return *this;
        }
        for (auto& a : coeffs_) a *= c;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) { return a * Rational(-1); }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(std::move(out));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

/// Coefficients of `target` in a triangular basis (basis[k] has degree k and
/// a nonzero leading coefficient), found by repeatedly cancelling the
/// leading term. Result has size degree(target)+1.
inline std::vector<Rational> expand_in_basis(Poly target, const std::vector<Poly>& basis) {
    std::vector<Rational> out(static_cast<std::size_t>(std::max<long>(target.degree() + 1, 0)), Rational(0));
    while (!target.is_zero()) {
        auto d = static_cast<std::size_t>(target.degree());
        if (d >= basis.size() || basis[d].degree() != static_cast<long>(d))
            throw std::invalid_argument("expand_in_basis: basis is not triangular up to the target degree");
        Rational c = target.leading() / basis[d].leading();
        out[d] = c;
        target -= basis[d] * c;
    }
    return out;
}

}  // namespace truncbell
