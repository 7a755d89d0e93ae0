#pragma once

// Exact rational scalars backed by GMP.
//
// Rational is the scalar of every exact computation in the library: the
// degeneracy parameter, evaluation points and every series / table
// coefficient. Values are always kept in canonical form (den > 0,
// gcd(|num|, den) = 1), so equality is structural.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace truncbell {

/// Raised when a "num/den" string cannot be parsed; carries the offending
/// character offset.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT: integers convert implicitly
    Rational(long num, long den) : value_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        value_.canonicalize();
    }
    Rational(const mpz_class& num, const mpz_class& den) : value_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        value_.canonicalize();
    }
    explicit Rational(const mpz_class& integer) : value_(integer) {}
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

    /// Parses "num/den" or "num" with an optional leading sign. No whitespace,
    /// no float syntax.
    static Rational parse(std::string_view text) {
        std::size_t pos = 0;
        auto digits = [&](const char* what) {
            std::size_t start = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            if (pos == start) throw ParseError(std::string("expected digits for ") + what, pos);
            return std::string(text.substr(start, pos - start));
        };
        if (text.empty()) throw ParseError("empty rational", 0);
        bool negative = false;
        if (text[pos] == '-' || text[pos] == '+') {
            negative = text[pos] == '-';
            ++pos;
        }
        mpz_class num(digits("numerator"));
        mpz_class den(1);
        if (pos < text.size()) {
            if (text[pos] != '/') throw ParseError("unexpected character", pos);
            ++pos;
            std::size_t den_pos = pos;
            den = mpz_class(digits("denominator"));
            if (den == 0) throw ParseError("zero denominator", den_pos);
        }
        if (pos != text.size()) throw ParseError("trailing characters", pos);
        if (negative) num = -num;
        return Rational(num, den);
    }

    const mpq_class& gmp() const noexcept { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const noexcept { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const noexcept { return sgn(value_); }

    /// "num/den", with "/den" omitted when den == 1.
    std::string to_string() const {
        if (is_integer()) return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    /// Nearest double (round-half-even).
    double to_double() const {
        mpfr_t tmp;
        mpfr_init2(tmp, 53);
        mpfr_set_q(tmp, value_.get_mpq_t(), MPFR_RNDN);
        double out = mpfr_get_d(tmp, MPFR_RNDN);
        mpfr_clear(tmp);
        return out;
    }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(mpq_class(1) / value_);
    }

    Rational pow(unsigned exponent) const {
        Rational base = *this, out(1);
        while (exponent) {
            if (exponent & 1U) out *= base;
            base *= base;
            exponent >>= 1U;
        }
        return out;
    }

    Rational abs() const { return Rational(mpq_class(::abs(value_))); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class value_;
};

/// Degeneracy parameter. Any rational value is allowed; zero selects the
/// classical (undegenerate) case and is handled by explicit branches.
class Lambda {
public:
    Lambda() = default;
    explicit Lambda(Rational value) : value_(std::move(value)) {}
    Lambda(long num, long den) : value_(num, den) {}

    static Lambda parse(std::string_view text) { return Lambda(Rational::parse(text)); }

    const Rational& value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_.is_zero(); }
    std::string to_string() const { return value_.to_string(); }
    double to_double() const { return value_.to_double(); }

    friend bool operator==(const Lambda&, const Lambda&) = default;

private:
    Rational value_;
};

}  // namespace truncbell

template <>
struct std::hash<truncbell::Rational> {
    std::size_t operator()(const truncbell::Rational& r) const {
        return std::hash<std::string>{}(r.to_string());
    }
};
