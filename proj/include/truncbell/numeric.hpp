#pragma once

// Double-precision evaluators for the analytic representations: the
// Dobinski-type double series, trigonometric contour integrals on the unit
// circle, the lower incomplete gamma function and Beta(1,p) sampling.
//
// Exact inputs are converted to the nearest double only here.

#include <truncbell/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace truncbell::numeric {

using cplx = std::complex<double>;

/// (x)_{n,lambda} in double precision.
inline double deg_falling(double x, int n, double lambda) {
    double out = 1.0;
    for (int j = 0; j < n; ++j) out *= x - j * lambda;
    return out;
}

struct SeriesResult {
    double value = 0.0;
    /// Largest magnitude among the last included term of every row and the
    /// whole last row; a heuristic for the neglected tail, not a bound.
    double tail_estimate = 0.0;
};

/// sum_{k<=K} sum_{l<=L} (x+k)_{n,lambda}/k! * (-1)^l / (l! C(k+l+p, p)).
/// With x = 0 this is the Dobinski-type series for the truncated degenerate
/// Bell numbers, since C(k+l,l)/(k+l)! = 1/(k! l!).
inline SeriesResult dobinski_double_series(int n, int p, double lambda, double x, int cutoff_k, int cutoff_l) {
    if (cutoff_k < 1 || cutoff_l < 1) throw std::invalid_argument("series cutoffs must be >= 1");
    SeriesResult out;
    double inv_k_fact = 1.0;
    double last_row = 0.0;
    for (int k = 0; k <= cutoff_k; ++k) {
        if (k > 0) inv_k_fact /= k;
        const double lead = deg_falling(x + k, n, lambda) * inv_k_fact;
        double row = 0.0, last_term = 0.0;
        double inv_l_fact = 1.0;
        for (int l = 0; l <= cutoff_l; ++l) {
            if (l > 0) inv_l_fact /= l;
            // 1 / C(k+l+p, p) = prod_{j=1}^p j / (k+l+j)
            double inv_binom = 1.0;
            for (int j = 1; j <= p; ++j) inv_binom *= static_cast<double>(j) / (k + l + j);
            last_term = (l % 2 ? -1.0 : 1.0) * lead * inv_l_fact * inv_binom;
            row += last_term;
        }
        out.value += row;
        out.tail_estimate = std::max(out.tail_estimate, std::abs(last_term));
        last_row = row;
    }
    out.tail_estimate = std::max(out.tail_estimate, std::abs(last_row));
    return out;
}

/// z^k for integer k by repeated multiplication.
inline cplx ipow(cplx z, int k) {
    if (k < 0) return 1.0 / ipow(z, -k);
    cplx out(1.0, 0.0);
    for (int j = 0; j < k; ++j) out *= z;
    return out;
}

/// e_lambda(z) = (1 + lambda z)^{1/lambda} on the principal branch, e^z at 0.
inline cplx deg_exp_complex(cplx z, double lambda) {
    if (lambda == 0.0) return std::exp(z);
    return std::pow(1.0 + lambda * z, 1.0 / lambda);
}

/// Composite Simpson rule for a 2pi-periodic integrand over [0, 2pi].
template <class F>
double simpson_periodic(F&& f, int panels) {
    if (panels < 2 || panels % 2) throw std::invalid_argument("Simpson needs an even panel count >= 2");
    const double h = 2.0 * std::numbers::pi / panels;
    double acc = f(0.0) + f(2.0 * std::numbers::pi);
    for (int j = 1; j < panels; ++j) acc += (j % 2 ? 4.0 : 2.0) * f(j * h);
    return acc * h / 3.0;
}

/// Smallest |1 + lambda e^{i theta}| over the quadrature nodes; the branch
/// cut of (1 + lambda z)^{1/lambda} is approached when this gets small.
inline double branch_clearance(double lambda, int panels) {
    if (lambda == 0.0) return 1.0;
    double best = INFINITY;
    const double h = 2.0 * std::numbers::pi / panels;
    for (int j = 0; j <= panels; ++j) best = std::min(best, std::abs(1.0 + lambda * std::polar(1.0, j * h)));
    return best;
}

/// (n!/pi) Im int_0^{2pi} F(e^{i theta}) sin(n theta) d theta, which picks
/// out n! [z^n] F(z) for F analytic on the closed unit disk with real
/// Taylor coefficients.
template <class F>
double trig_coefficient(F&& func, int n, int panels) {
    if (n < 1) throw std::invalid_argument("trigonometric representation needs n >= 1");
    const double integral = simpson_periodic(
        [&](double theta) { return func(std::polar(1.0, theta)).imag() * std::sin(n * theta); }, panels);
    return std::tgamma(n + 1.0) / std::numbers::pi * integral;
}

/// (n!/pi) Im int (e_l(e^{it}) - 1)^k / k! sin(nt) dt.
inline double trig_stirling2_deg(int n, int k, double lambda, int panels) {
    const double inv_k_fact = 1.0 / std::tgamma(k + 1.0);
    return trig_coefficient(
        [&](cplx z) { return ipow(deg_exp_complex(z, lambda) - 1.0, k) * inv_k_fact; }, n, panels);
}

/// (n!/pi) Im int exp(e_l(e^{it}) - 1) sin(nt) dt.
inline double trig_bell_deg(int n, double lambda, int panels) {
    return trig_coefficient([&](cplx z) { return std::exp(deg_exp_complex(z, lambda) - 1.0); }, n, panels);
}

/// (n! p!/pi) Im int (e^w/w^p - sum_{l<p} w^{l-p}/l!) sin(nt) dt with
/// w = e_l(e^{it}) - 1.
inline double trig_trunc_bell_deg(int n, int p, double lambda, int panels) {
    const double p_fact = std::tgamma(p + 1.0);
    return trig_coefficient(
        [&](cplx z) {
            const cplx w = deg_exp_complex(z, lambda) - 1.0;
            cplx acc = std::exp(w) / ipow(w, p);
            double inv_l_fact = 1.0;
            for (int l = 0; l < p; ++l) {
                if (l > 0) inv_l_fact /= l;
                acc -= ipow(w, l - p) * inv_l_fact;
            }
            return acc * p_fact;
        },
        n, panels);
}

/// Lower incomplete gamma d(p, z) = int_0^z e^{-t} t^{p-1} dt for integer
/// p >= 1, via the finite closed form (p-1)! (1 - e^{-z} sum_{j<p} z^j/j!).
inline double lower_incomplete_gamma_int(int p, double z) {
    if (p < 1) throw std::invalid_argument("lower_incomplete_gamma_int: p must be >= 1");
    double partial = 0.0, term = 1.0;
    for (int j = 0; j < p; ++j) {
        if (j > 0) term *= z / j;
        partial += term;
    }
    return std::tgamma(static_cast<double>(p)) * (1.0 - std::exp(-z) * partial);
}

/// int_0^z e^{-t} t^{s-1} dt by composite Simpson, for cross-checking.
inline double lower_incomplete_gamma_quadrature(double s, double z, int panels) {
    if (panels < 2 || panels % 2) throw std::invalid_argument("Simpson needs an even panel count >= 2");
    auto f = [&](double t) { return t == 0.0 ? (s == 1.0 ? 1.0 : 0.0) : std::exp(-t) * std::pow(t, s - 1.0); };
    const double h = z / panels;
    double acc = f(0.0) + f(z);
    for (int j = 1; j < panels; ++j) acc += (j % 2 ? 4.0 : 2.0) * f(j * h);
    return acc * h / 3.0;
}

/// 64-bit FNV-1a, used to derive per-check PRNG streams.
inline std::uint64_t fnv1a(std::string_view text, std::uint64_t hash = 0xcbf29ce484222325ULL) {
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

/// mt19937_64 seeded from (seed, stream name) through std::seed_seq.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::string_view stream) {
    const std::uint64_t h = fnv1a(stream);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32U)};
    return std::mt19937_64(seq);
}

/// Uniform on (0, 1] from the top 53 bits.
inline double uniform_open_closed(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11U) + 1.0) * 0x1.0p-53;
}

/// X ~ Beta(1, p) by inversion: F(x) = 1 - (1-x)^p, so X = 1 - U^{1/p}.
inline double sample_beta_1_p(std::mt19937_64& gen, int p) {
    if (p < 1) throw std::invalid_argument("Beta(1,p) needs p >= 1");
    return 1.0 - std::pow(uniform_open_closed(gen), 1.0 / p);
}

}  // namespace truncbell::numeric
