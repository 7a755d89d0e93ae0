#pragma once

// Exact tables of the Stirling / Bernoulli / Bell-type families.
//
// Every family has a primary construction and (except BernoulliDeg) at
// least one independent one, so identity checks can compare values that
// were produced by different code paths:
//
//   family           primary                     alternative
//   S2               recurrence                  basis_solve (x^n in (x)_k)
//   S1               polynomial_expansion        egf_extraction (log(1+t)^k/k!)
//   S2deg            basis_solve                 egf_extraction ((e_l(t)-1)^k/k!)
//   S1deg            basis_solve                 egf_extraction (log_l(1+t)^k/k!)
//   S2degPoly        finite_sum                  egf_extraction
//   BernoulliDeg     egf_extraction              -
//   BellClassical    row_sum                     egf_extraction
//   BellDeg          row_sum                     egf_extraction
//   TruncBellDeg     finite_sum                  egf_extraction
//   TruncModBellDeg  finite_sum                  egf_extraction
//
// The S2 recurrence S2(n+1,k) = k S2(n,k) + S2(n,k-1) is the only recurrence
// used as a construction; no recurrence is assumed for the degenerate
// families, which are defined purely through change of basis.

#include <truncbell/degenerate_series.hpp>
#include <truncbell/exactnum.hpp>
#include <truncbell/fps.hpp>
#include <truncbell/poly.hpp>
#include <truncbell/rational.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace truncbell {

enum class Family {
    S1,
    S2,
    S1deg,
    S2deg,
    S2degPoly,
    BernoulliDeg,
    BellDeg,
    TruncBellDeg,
    TruncModBellDeg,
    BellClassical,
};

enum class Construction {
    recurrence,
    polynomial_expansion,
    basis_solve,
    finite_sum,
    row_sum,
    egf_extraction,
};

inline constexpr Family kAllFamilies[] = {
    Family::S1,           Family::S2,      Family::S1deg,        Family::S2deg,           Family::S2degPoly,
    Family::BernoulliDeg, Family::BellDeg, Family::TruncBellDeg, Family::TruncModBellDeg, Family::BellClassical,
};

inline std::string to_string(Family f) {
    switch (f) {
        case Family::S1: return "S1";
        case Family::S2: return "S2";
        case Family::S1deg: return "S1deg";
        case Family::S2deg: return "S2deg";
        case Family::S2degPoly: return "S2degPoly";
        case Family::BernoulliDeg: return "BernoulliDeg";
        case Family::BellDeg: return "BellDeg";
        case Family::TruncBellDeg: return "TruncBellDeg";
        case Family::TruncModBellDeg: return "TruncModBellDeg";
        case Family::BellClassical: return "BellClassical";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
    for (Family f : kAllFamilies)
        if (to_string(f) == name) return f;
    return std::nullopt;
}

inline std::string to_string(Construction c) {
    switch (c) {
        case Construction::recurrence: return "recurrence";
        case Construction::polynomial_expansion: return "polynomial_expansion";
        case Construction::basis_solve: return "basis_solve";
        case Construction::finite_sum: return "finite_sum";
        case Construction::row_sum: return "row_sum";
        case Construction::egf_extraction: return "egf_extraction";
    }
    return "?";
}

inline std::optional<Construction> parse_construction(std::string_view name) {
    for (auto c : {Construction::recurrence, Construction::polynomial_expansion, Construction::basis_solve,
                   Construction::finite_sum, Construction::row_sum, Construction::egf_extraction})
        if (to_string(c) == name) return c;
    return std::nullopt;
}

inline bool is_triangular(Family f) {
    switch (f) {
        case Family::S1:
        case Family::S2:
        case Family::S1deg:
        case Family::S2deg:
        case Family::S2degPoly: return true;
        default: return false;
    }
}

inline bool is_polynomial_valued(Family f) {
    switch (f) {
        case Family::S2degPoly:
        case Family::BernoulliDeg:
        case Family::BellDeg:
        case Family::TruncBellDeg:
        case Family::TruncModBellDeg: return true;
        default: return false;
    }
}

inline bool uses_lambda(Family f) {
    return !(f == Family::S1 || f == Family::S2 || f == Family::BellClassical);
}
inline bool uses_p(Family f) { return f == Family::TruncBellDeg || f == Family::TruncModBellDeg; }
inline bool uses_r(Family f) { return f == Family::BernoulliDeg; }

inline Construction primary_construction(Family f) {
    switch (f) {
        case Family::S2: return Construction::recurrence;
        case Family::S1: return Construction::polynomial_expansion;
        case Family::S1deg:
        case Family::S2deg: return Construction::basis_solve;
        case Family::S2degPoly:
        case Family::TruncBellDeg:
        case Family::TruncModBellDeg: return Construction::finite_sum;
        case Family::BellDeg:
        case Family::BellClassical: return Construction::row_sum;
        case Family::BernoulliDeg: return Construction::egf_extraction;
    }
    return Construction::egf_extraction;
}

inline std::vector<Construction> available_constructions(Family f) {
    switch (f) {
        case Family::S2: return {Construction::recurrence, Construction::basis_solve};
        case Family::BernoulliDeg: return {Construction::egf_extraction};
        default: return {primary_construction(f), Construction::egf_extraction};
    }
}

struct TableParams {
    Lambda lambda{};
    int p = 0;
    int r = 0;

    friend bool operator==(const TableParams&, const TableParams&) = default;
};

/// Parameters with the entries irrelevant to `f` reset, so equal tables
/// share one cache key.
inline TableParams normalized(Family f, TableParams params) {
    if (!uses_lambda(f)) params.lambda = Lambda{};
    if (!uses_p(f)) params.p = 0;
    if (!uses_r(f)) params.r = 0;
    return params;
}

/// Rows n = 0..n_max. Triangular families store entries k = 0..n in row n;
/// sequence families store a single entry per row. Scalar-valued families
/// hold constant polynomials.
struct SequenceTable {
    Family family{};
    TableParams params{};
    int n_max = 0;
    Construction construction{};
    std::vector<std::vector<Poly>> rows;

    bool triangular() const { return is_triangular(family); }
    bool polynomial_valued() const { return is_polynomial_valued(family); }

    /// Entry (n, k); zero for k > n in triangular tables.
    Poly entry(int n, int k = 0) const {
        if (n < 0 || n > n_max || k < 0) throw std::out_of_range("SequenceTable: index out of range");
        const auto& row = rows[static_cast<std::size_t>(n)];
        if (static_cast<std::size_t>(k) >= row.size()) return Poly{};
        return row[static_cast<std::size_t>(k)];
    }
    Rational value(int n, int k = 0) const { return entry(n, k).coeff(0); }

    friend bool operator==(const SequenceTable&, const SequenceTable&) = default;
};

namespace detail {

inline void require_index(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("sequence index must be nonnegative");
}

/// (x)_k, or (x)_{k,step} when step != 1, as polynomials for k = 0..n_max.
inline std::vector<Poly> falling_basis(int n_max, const Rational& step) {
    std::vector<Poly> basis;
    basis.reserve(static_cast<std::size_t>(n_max) + 1);
    Poly cur(1);
    Rational shift(0);
    for (int k = 0; k <= n_max; ++k) {
        basis.push_back(cur);
        cur = cur * (Poly::x() - Poly(shift));
        shift += step;
    }
    return basis;
}

inline SequenceTable empty_table(Family f, const TableParams& params, int n_max, Construction c) {
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    SequenceTable t{f, normalized(f, params), n_max, c, {}};
    t.rows.resize(static_cast<std::size_t>(n_max) + 1);
    return t;
}

inline std::vector<Poly> to_polys(const std::vector<Rational>& values) {
    return {values.begin(), values.end()};
}

/// Triangle whose column k is the EGF of fps_pow(base, k)/k!; `base` must
/// have zero constant term. Entry (n, k) = n! [t^n] base^k / k!.
inline std::vector<std::vector<Poly>> egf_power_triangle(const Fps<Rational>& base, int n_max) {
    std::vector<std::vector<Poly>> rows(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) rows[n].resize(static_cast<std::size_t>(n) + 1);
    Fps<Rational> power = Fps<Rational>::one(n_max);
    for (int k = 0; k <= n_max; ++k) {
        if (k > 0) power = power * base * Rational(1, k);
        for (int n = k; n <= n_max; ++n) rows[n][k] = Poly(power.egf_coeff(n));
    }
    return rows;
}

inline SequenceTable build_s2(int n_max, Construction c) {
    auto t = empty_table(Family::S2, {}, n_max, c);
    if (c == Construction::recurrence) {
        t.rows[0] = {Poly(1)};
        for (int n = 0; n < n_max; ++n) {
            std::vector<Poly> next(static_cast<std::size_t>(n) + 2);
            for (int k = 0; k <= n + 1; ++k) {
                Rational v(0);
                if (k <= n) v += Rational(k) * t.rows[n][k].coeff(0);
                if (k >= 1) v += t.rows[n][k - 1].coeff(0);
                next[k] = Poly(v);
            }
            t.rows[n + 1] = std::move(next);
        }
    } else if (c == Construction::basis_solve) {
        const auto basis = falling_basis(n_max, Rational(1));
        for (int n = 0; n <= n_max; ++n) {
            auto cs = expand_in_basis(Poly::monomial(static_cast<std::size_t>(n), Rational(1)), basis);
            t.rows[n] = to_polys(cs);
        }
    } else {
        throw std::invalid_argument("S2: unsupported construction " + to_string(c));
    }
    return t;
}

inline SequenceTable build_s1(int n_max, Construction c) {
    auto t = empty_table(Family::S1, {}, n_max, c);
    if (c == Construction::polynomial_expansion) {
        const auto basis = falling_basis(n_max, Rational(1));
        for (int n = 0; n <= n_max; ++n) {
            std::vector<Rational> cs(static_cast<std::size_t>(n) + 1, Rational(0));
            for (int k = 0; k <= n; ++k) cs[k] = basis[n].coeff(static_cast<std::size_t>(k));
            t.rows[n] = to_polys(cs);
        }
    } else if (c == Construction::egf_extraction) {
        t.rows = egf_power_triangle(deg_log(Lambda{}, n_max), n_max);
    } else {
        throw std::invalid_argument("S1: unsupported construction " + to_string(c));
    }
    return t;
}

/// Expands each of targets[n] in `basis`, producing the lower triangle.
inline std::vector<std::vector<Poly>> basis_triangle(const std::vector<Poly>& targets, const std::vector<Poly>& basis) {
    std::vector<std::vector<Poly>> rows;
    for (std::size_t n = 0; n < targets.size(); ++n) {
        auto cs = expand_in_basis(targets[n], basis);
        cs.resize(n + 1, Rational(0));
        rows.push_back(to_polys(cs));
    }
    return rows;
}

inline SequenceTable build_s2deg(const Lambda& lambda, int n_max, Construction c) {
    auto t = empty_table(Family::S2deg, {lambda}, n_max, c);
    if (c == Construction::basis_solve) {
        t.rows = basis_triangle(falling_basis(n_max, lambda.value()), falling_basis(n_max, Rational(1)));
    } else if (c == Construction::egf_extraction) {
        t.rows = egf_power_triangle(deg_exp_minus_one(lambda, n_max), n_max);
    } else {
        throw std::invalid_argument("S2deg: unsupported construction " + to_string(c));
    }
    return t;
}

inline SequenceTable build_s1deg(const Lambda& lambda, int n_max, Construction c) {
    auto t = empty_table(Family::S1deg, {lambda}, n_max, c);
    if (c == Construction::basis_solve) {
        t.rows = basis_triangle(falling_basis(n_max, Rational(1)), falling_basis(n_max, lambda.value()));
    } else if (c == Construction::egf_extraction) {
        t.rows = egf_power_triangle(deg_log(lambda, n_max), n_max);
    } else {
        throw std::invalid_argument("S1deg: unsupported construction " + to_string(c));
    }
    return t;
}

}  // namespace detail

inline SequenceTable build_table(Family family, const TableParams& params, int n_max, Construction c);

/// Process-wide memo of constructed tables keyed by (family, normalized
/// params, construction). A lookup returns a table with n_max at least the
/// requested one; entries are construction-determined so a larger table
/// agrees with a smaller one on their common rows. Safe for concurrent use.
class TableCache {
public:
    static TableCache& instance() {
        static TableCache cache;
        return cache;
    }

    std::shared_ptr<const SequenceTable> get(Family family, const TableParams& params, int n_max, Construction c) {
        const std::string k = key(family, params, c);
        int existing = -1;
        {
            std::shared_lock lock(mutex_);
            auto it = tables_.find(k);
            if (it != tables_.end()) {
                if (it->second->n_max >= n_max) return it->second;
                existing = it->second->n_max;
            }
        }
        const int build_n = std::max({n_max, existing < 0 ? kMinRows : 2 * existing});
        auto built = std::make_shared<const SequenceTable>(build_table(family, params, build_n, c));
        std::unique_lock lock(mutex_);
        auto& slot = tables_[k];
        if (!slot || slot->n_max < built->n_max) slot = built;
        return slot;
    }

    void clear() {
        std::unique_lock lock(mutex_);
        tables_.clear();
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return tables_.size();
    }

private:
    static constexpr int kMinRows = 16;

    static std::string key(Family family, const TableParams& params, Construction c) {
        const TableParams p = normalized(family, params);
        return to_string(family) + "|" + to_string(c) + "|" + p.lambda.to_string() + "|" + std::to_string(p.p) + "|" +
               std::to_string(p.r);
    }

    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<const SequenceTable>> tables_;
};

inline std::shared_ptr<const SequenceTable> cached_table(Family family, const TableParams& params, int n_max,
                                                         std::optional<Construction> c = std::nullopt) {
    return TableCache::instance().get(family, params, n_max, c.value_or(primary_construction(family)));
}

// ---- single values (primary constructions, memoized) -----------------------

/// Stirling numbers of the second kind; 0 for k > n.
inline Rational stirling2(int n, int k) {
    detail::require_index(n, k);
    if (k > n) return Rational(0);
    return cached_table(Family::S2, {}, n)->value(n, k);
}

/// Signed Stirling numbers of the first kind; 0 for k > n.
inline Rational stirling1(int n, int k) {
    detail::require_index(n, k);
    if (k > n) return Rational(0);
    return cached_table(Family::S1, {}, n)->value(n, k);
}

/// Coefficient of (x)_k in (x)_{n,lambda}.
inline Rational stirling2_deg(int n, int k, const Lambda& lambda) {
    detail::require_index(n, k);
    if (k > n) return Rational(0);
    return cached_table(Family::S2deg, {lambda}, n)->value(n, k);
}

/// Coefficient of (x)_{k,lambda} in (x)_n.
inline Rational stirling1_deg(int n, int k, const Lambda& lambda) {
    detail::require_index(n, k);
    if (k > n) return Rational(0);
    return cached_table(Family::S1deg, {lambda}, n)->value(n, k);
}

/// Degenerate Stirling polynomial of the second kind S_{2,lambda}(n,k|x).
inline Poly stirling2_deg_poly(int n, int k, const Lambda& lambda) {
    detail::require_index(n, k);
    if (k > n) return Poly{};
    return cached_table(Family::S2degPoly, {lambda}, n)->entry(n, k);
}

/// Degenerate Bernoulli polynomial of order r.
inline Poly deg_bernoulli(int n, int r, const Lambda& lambda) {
    detail::require_index(n, r);
    return cached_table(Family::BernoulliDeg, {lambda, 0, r}, n)->entry(n);
}

/// Carlitz's degenerate Bernoulli number: order 1 at x = 0.
inline Rational deg_bernoulli_num(int n, const Lambda& lambda) { return deg_bernoulli(n, 1, lambda).coeff(0); }

inline Rational bell_classical(int n) {
    detail::require_index(n, 0);
    return cached_table(Family::BellClassical, {}, n)->value(n);
}

/// Row polynomial sum_k S2(n,k) x^k.
inline Poly bell_poly_classical(int n) {
    detail::require_index(n, 0);
    const auto t = cached_table(Family::S2, {}, n);
    std::vector<Rational> cs;
    for (int k = 0; k <= n; ++k) cs.push_back(t->value(n, k));
    return Poly(std::move(cs));
}

inline Poly bell_deg(int n, const Lambda& lambda) {
    detail::require_index(n, 0);
    return cached_table(Family::BellDeg, {lambda}, n)->entry(n);
}

/// Truncated degenerate Bell polynomial sum_k S_{2,lambda}(n,k) x^k / C(k+p,k).
inline Poly trunc_bell_deg(int n, int p, const Lambda& lambda) {
    detail::require_index(n, p);
    return cached_table(Family::TruncBellDeg, {lambda, p}, n)->entry(n);
}

/// Truncated degenerate modified Bell polynomial sum_k S_{2,lambda}(n,k|x) / C(k+p,p).
inline Poly trunc_mod_bell_deg(int n, int p, const Lambda& lambda) {
    detail::require_index(n, p);
    return cached_table(Family::TruncModBellDeg, {lambda, p}, n)->entry(n);
}

// ---- table construction ---------------------------------------------------

namespace detail {

inline SequenceTable build_s2deg_poly(const Lambda& lambda, int n_max, Construction c) {
    auto t = empty_table(Family::S2degPoly, {lambda}, n_max, c);
    if (c == Construction::finite_sum) {
        // S_{2,l}(n,k|x) = sum_{i=k}^n C(n,i) (x)_{n-i,l} S_{2,l}(i,k)
        const auto s2 = cached_table(Family::S2deg, {lambda}, n_max);
        const auto deg_ff = falling_basis(n_max, lambda.value());
        for (int n = 0; n <= n_max; ++n) {
            t.rows[n].resize(static_cast<std::size_t>(n) + 1);
            for (int k = 0; k <= n; ++k) {
                Poly acc;
                for (int i = k; i <= n; ++i) acc += deg_ff[n - i] * (binomial(n, i) * s2->value(i, k));
                t.rows[n][k] = std::move(acc);
            }
        }
    } else if (c == Construction::egf_extraction) {
        // n! [t^n] (e_l(t)-1)^k/k! * e_l^x(t)
        const Fps<Rational> base = deg_exp_minus_one(lambda, n_max);
        const Fps<Poly> ex = deg_exp(Poly::x(), lambda, n_max);
        for (int n = 0; n <= n_max; ++n) t.rows[n].resize(static_cast<std::size_t>(n) + 1);
        Fps<Rational> power = Fps<Rational>::one(n_max);
        for (int k = 0; k <= n_max; ++k) {
            if (k > 0) power = power * base * Rational(1, k);
            const Fps<Poly> series = lift(power) * ex;
            for (int n = k; n <= n_max; ++n) t.rows[n][k] = series.egf_coeff(n);
        }
    } else {
        throw std::invalid_argument("S2degPoly: unsupported construction " + to_string(c));
    }
    return t;
}

inline SequenceTable build_bernoulli(const Lambda& lambda, int r, int n_max, Construction c) {
    if (c != Construction::egf_extraction) throw std::invalid_argument("BernoulliDeg: only egf_extraction is available");
    if (r < 0) throw std::invalid_argument("BernoulliDeg: order r must be nonnegative");
    auto t = empty_table(Family::BernoulliDeg, {lambda, 0, r}, n_max, c);
    // (t/(e_l(t)-1))^r e_l^x(t); the division by a valuation-1 series costs one order.
    const Fps<Rational> q = fps_div(Fps<Rational>::t(n_max + 1), deg_exp_minus_one(lambda, n_max + 1));
    const Fps<Poly> series = lift(fps_pow(q, static_cast<unsigned>(r))) * deg_exp(Poly::x(), lambda, n_max);
    for (int n = 0; n <= n_max; ++n) t.rows[n] = {series.egf_coeff(n)};
    return t;
}

inline SequenceTable build_bell_classical(int n_max, Construction c) {
    auto t = empty_table(Family::BellClassical, {}, n_max, c);
    if (c == Construction::row_sum) {
        const auto s2 = cached_table(Family::S2, {}, n_max);
        for (int n = 0; n <= n_max; ++n) {
            Rational acc(0);
            for (int k = 0; k <= n; ++k) acc += s2->value(n, k);
            t.rows[n] = {Poly(acc)};
        }
    } else if (c == Construction::egf_extraction) {
        const auto series = fps_exp(deg_exp_minus_one(Lambda{}, n_max));
        for (int n = 0; n <= n_max; ++n) t.rows[n] = {Poly(series.egf_coeff(n))};
    } else {
        throw std::invalid_argument("BellClassical: unsupported construction " + to_string(c));
    }
    return t;
}

inline SequenceTable build_bell_deg(const Lambda& lambda, int n_max, Construction c) {
    auto t = empty_table(Family::BellDeg, {lambda}, n_max, c);
    if (c == Construction::row_sum) {
        const auto s2 = cached_table(Family::S2deg, {lambda}, n_max);
        for (int n = 0; n <= n_max; ++n) {
            std::vector<Rational> cs;
            for (int k = 0; k <= n; ++k) cs.push_back(s2->value(n, k));
            t.rows[n] = {Poly(std::move(cs))};
        }
    } else if (c == Construction::egf_extraction) {
        // exp(x (e_l(t) - 1)) over Q[x]
        const Fps<Poly> inner = lift(deg_exp_minus_one(lambda, n_max)).scaled(Poly::x());
        const Fps<Poly> series = fps_exp(inner);
        for (int n = 0; n <= n_max; ++n) t.rows[n] = {series.egf_coeff(n)};
    } else {
        throw std::invalid_argument("BellDeg: unsupported construction " + to_string(c));
    }
    return t;
}

inline SequenceTable build_trunc_bell(const Lambda& lambda, int p, int n_max, Construction c) {
    if (p < 0) throw std::invalid_argument("TruncBellDeg: p must be nonnegative");
    auto t = empty_table(Family::TruncBellDeg, {lambda, p}, n_max, c);
    if (c == Construction::finite_sum) {
        const auto s2 = cached_table(Family::S2deg, {lambda}, n_max);
        for (int n = 0; n <= n_max; ++n) {
            std::vector<Rational> cs;
            for (int k = 0; k <= n; ++k) cs.push_back(s2->value(n, k) / binomial(k + p, k));
            t.rows[n] = {Poly(std::move(cs))};
        }
    } else if (c == Construction::egf_extraction) {
        // p! sum_k x^k (e_l(t)-1)^k / (k+p)!; terms with k > n_max vanish mod t^{n_max+1}.
        const Fps<Rational> base = deg_exp_minus_one(lambda, n_max);
        Fps<Poly> series(n_max);
        Fps<Rational> power = Fps<Rational>::one(n_max);
        const Rational p_fact = factorial(p);
        for (int k = 0; k <= n_max; ++k) {
            if (k > 0) power = power * base;
            const Rational weight = p_fact / factorial(k + p);
            series += lift(power).scaled(Poly::monomial(static_cast<std::size_t>(k), weight));
        }
        for (int n = 0; n <= n_max; ++n) t.rows[n] = {series.egf_coeff(n)};
    } else {
        throw std::invalid_argument("TruncBellDeg: unsupported construction " + to_string(c));
    }
    return t;
}

inline SequenceTable build_trunc_mod_bell(const Lambda& lambda, int p, int n_max, Construction c) {
    if (p < 0) throw std::invalid_argument("TruncModBellDeg: p must be nonnegative");
    auto t = empty_table(Family::TruncModBellDeg, {lambda, p}, n_max, c);
    if (c == Construction::finite_sum) {
        const auto s2x = cached_table(Family::S2degPoly, {lambda}, n_max);
        for (int n = 0; n <= n_max; ++n) {
            Poly acc;
            for (int k = 0; k <= n; ++k) acc += s2x->entry(n, k) * binomial(k + p, p).inverse();
            t.rows[n] = {std::move(acc)};
        }
    } else if (c == Construction::egf_extraction) {
        // p!/(e_l(t)-1)^p (exp(e_l(t)-1) - sum_{l<p} (e_l(t)-1)^l/l!) e_l^x(t),
        // built p orders deep so the division lands on n_max.
        const int work = n_max + p;
        const Fps<Rational> base = deg_exp_minus_one(lambda, work);
        Fps<Rational> numer = fps_exp(base);
        Fps<Rational> power = Fps<Rational>::one(work);
        for (int l = 0; l < p; ++l) {
            if (l > 0) power = power * base;
            numer -= power * factorial(l).inverse();
        }
        const Fps<Rational> denom = fps_pow(base, static_cast<unsigned>(p));
        const Fps<Rational> ratio = fps_div(numer, denom) * factorial(p);
        const Fps<Poly> series = lift(ratio) * deg_exp(Poly::x(), lambda, n_max);
        for (int n = 0; n <= n_max; ++n) t.rows[n] = {series.egf_coeff(n)};
    } else {
        throw std::invalid_argument("TruncModBellDeg: unsupported construction " + to_string(c));
    }
    return t;
}

}  // namespace detail

/// Builds a table without consulting the cache (dependencies on other
/// families still go through the cache).
inline SequenceTable build_table(Family family, const TableParams& params, int n_max, Construction c) {
    const TableParams p = normalized(family, params);
    switch (family) {
        case Family::S2: return detail::build_s2(n_max, c);
        case Family::S1: return detail::build_s1(n_max, c);
        case Family::S2deg: return detail::build_s2deg(p.lambda, n_max, c);
        case Family::S1deg: return detail::build_s1deg(p.lambda, n_max, c);
        case Family::S2degPoly: return detail::build_s2deg_poly(p.lambda, n_max, c);
        case Family::BernoulliDeg: return detail::build_bernoulli(p.lambda, p.r, n_max, c);
        case Family::BellClassical: return detail::build_bell_classical(n_max, c);
        case Family::BellDeg: return detail::build_bell_deg(p.lambda, n_max, c);
        case Family::TruncBellDeg: return detail::build_trunc_bell(p.lambda, p.p, n_max, c);
        case Family::TruncModBellDeg: return detail::build_trunc_mod_bell(p.lambda, p.p, n_max, c);
    }
    throw std::invalid_argument("unknown family");
}

/// Copy of `table` cut down to rows 0..n_max.
inline SequenceTable truncated_table(const SequenceTable& table, int n_max) {
    if (n_max > table.n_max) throw std::invalid_argument("truncated_table: n_max exceeds table size");
    SequenceTable out = table;
    out.n_max = n_max;
    out.rows.resize(static_cast<std::size_t>(n_max) + 1);
    return out;
}

}  // namespace truncbell
