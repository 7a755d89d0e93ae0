#pragma once

// Reference values computed without the library's constructions: set
// partitions by enumeration, explicit alternating sums, and products
// expanded directly.

#include <truncbell/rational.hpp>

#include <gmpxx.h>

#include <random>
#include <vector>

namespace oracle {

using truncbell::Rational;

/// Number of partitions of {1..n} into exactly k blocks, by enumerating
/// restricted growth strings a_1 = 0, a_i <= 1 + max(a_1..a_{i-1}).
inline long partitions_into_blocks(int n, int k) {
    if (n == 0) return k == 0 ? 1 : 0;
    std::vector<int> a(static_cast<std::size_t>(n), 0), prefix_max(static_cast<std::size_t>(n), 0);
    long count = 0;
    while (true) {
        if (prefix_max[n - 1] + 1 == k) ++count;
        int i = n - 1;
        while (i > 0 && a[i] > prefix_max[i - 1]) --i;
        if (i == 0) break;
        ++a[i];
        prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
        for (int j = i + 1; j < n; ++j) {
            a[j] = 0;
            prefix_max[j] = prefix_max[j - 1];
        }
    }
    return count;
}

/// Total number of set partitions of {1..n}.
inline long partitions(int n) {
    long total = 0;
    for (int k = 0; k <= n; ++k) total += partitions_into_blocks(n, k);
    return total;
}

inline Rational fact(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

inline Rational choose(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    return fact(n) / (fact(k) * fact(n - k));
}

/// x (x - l) ... (x - (n-1) l) by direct multiplication.
inline Rational gen_falling(const Rational& x, int n, const Rational& l) {
    Rational out(1);
    for (int j = 0; j < n; ++j) out *= x - Rational(j) * l;
    return out;
}

/// S_{2,l}(n,k) = (1/k!) sum_j (-1)^{k-j} C(k,j) (j)_{n,l}; at l = 0 this is
/// the classical alternating sum for S(n,k).
inline Rational s2_deg(int n, int k, const Rational& l) {
    Rational acc(0);
    for (int j = 0; j <= k; ++j) {
        const Rational term = choose(k, j) * gen_falling(Rational(j), n, l);
        acc += (k - j) % 2 ? -term : term;
    }
    return acc / fact(k);
}

/// Coefficients of x^k in x(x-1)...(x-n+1), by direct expansion.
inline std::vector<Rational> falling_coeffs(int n) {
    std::vector<Rational> c{Rational(1)};
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> next(c.size() + 1, Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= Rational(j) * c[i];
        }
        c = next;
    }
    return c;
}

/// Bel^{(p)}_{n,l}(x) at a rational x from the oracle Stirling numbers.
inline Rational trunc_bell(int n, int p, const Rational& l, const Rational& x) {
    Rational acc(0), xp(1);
    for (int k = 0; k <= n; ++k) {
        acc += s2_deg(n, k, l) * xp / choose(k + p, k);
        xp *= x;
    }
    return acc;
}

/// Small random rational num/den with |num| <= bound, 1 <= den <= bound.
inline Rational random_rational(std::mt19937_64& gen, int bound) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
    return Rational(num(gen), den(gen));
}

}  // namespace oracle
