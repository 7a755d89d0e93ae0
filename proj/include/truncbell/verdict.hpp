#pragma once

// Verdict records produced by identity checks, and their JSON form.

#include <truncbell/poly.hpp>
#include <truncbell/rational.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace truncbell {

enum class Mode { exact, numeric, monte_carlo };
enum class Status { pass, fail };

inline std::string to_string(Mode m) {
    switch (m) {
        case Mode::exact: return "exact";
        case Mode::numeric: return "numeric";
        case Mode::monte_carlo: return "monte_carlo";
    }
    return "?";
}
inline std::string to_string(Status s) { return s == Status::pass ? "pass" : "fail"; }

/// One mismatching coefficient (exact) or out-of-tolerance value (numeric).
/// k is the column / power index; -1 when not applicable.
struct Discrepancy {
    int n = 0;
    int k = -1;
    std::string lhs;
    std::string rhs;
    /// Which sub-identity of the check this entry belongs to; empty for the main one.
    std::string label;
};

/// Outcome of an alternative reading of an identity, probed alongside the
/// checked one (e.g. a literal reading of a misprinted index).
struct VariantResult {
    std::string name;
    Status status = Status::pass;
    int mismatches = 0;
};

struct Verdict {
    std::string id;
    Mode mode = Mode::exact;
    nlohmann::json params = nlohmann::json::object();
    Status status = Status::pass;
    double max_residual = 0.0;
    std::vector<Discrepancy> details;
    /// Constructions used for the two sides of the identity.
    std::string lhs_route;
    std::string rhs_route;
    /// Informational verdicts (typo adjudication, out-of-range probes) do
    /// not affect the suite exit status.
    bool informational = false;
    std::vector<VariantResult> variants;
    std::vector<std::string> notes;

    bool passed() const { return status == Status::pass; }
};

struct NumericConfig {
    double tol_rel = 1e-7;
    double tol_abs = 1e-9;
    int quad_nodes = 512;
    int series_cutoff_k = 80;
    int series_cutoff_l = 80;
    int mc_samples = 200000;
    std::uint64_t seed = 42;

    void validate() const {
        if (!(tol_rel > 0) || !(tol_abs > 0)) throw std::invalid_argument("tolerances must be positive");
        if (quad_nodes < 2 || quad_nodes % 2) throw std::invalid_argument("quad_nodes must be even and >= 2");
        if (series_cutoff_k < 1 || series_cutoff_l < 1) throw std::invalid_argument("series cutoffs must be >= 1");
        if (mc_samples < 2) throw std::invalid_argument("mc_samples must be >= 2");
    }
};

/// Test hook: adds `delta` to the right-hand side at (n, k) before the
/// comparison (to the constant term for polynomial values).
struct Perturbation {
    int n = 0;
    int k = -1;
    Rational delta{1};
};

struct CheckOptions {
    std::optional<Perturbation> perturb;
    /// Flips the overall sign of the operator form (negative control for T7).
    bool flip_sign = false;
};

/// Accumulates exact comparisons; a single unequal coefficient fails.
class ExactComparison {
public:
    explicit ExactComparison(const CheckOptions& options = {}) : options_(options) {}

    template <class V>
    bool compare(int n, int k, const V& lhs, V rhs, const std::string& label = {}) {
        if (options_.perturb && options_.perturb->n == n && options_.perturb->k == k) rhs = rhs + V(options_.perturb->delta);
        ++compared_;
        if (lhs == rhs) return true;
        ++mismatches_;
        details_.push_back({n, k, render(lhs), render(rhs), label});
        return false;
    }

    int mismatches() const { return mismatches_; }
    int compared() const { return compared_; }
    const std::vector<Discrepancy>& details() const { return details_; }

    /// Fills status / residual / details of an exact verdict.
    void finish(Verdict& v) const {
        v.mode = Mode::exact;
        v.status = mismatches_ == 0 ? Status::pass : Status::fail;
        v.max_residual = static_cast<double>(mismatches_);
        v.details = details_;
        v.params["compared"] = compared_;
    }

private:
    static std::string render(const Rational& r) { return r.to_string(); }
    static std::string render(const Poly& p) { return p.to_string(); }

    CheckOptions options_;
    int compared_ = 0;
    int mismatches_ = 0;
    std::vector<Discrepancy> details_;
};

/// Shortest round-trip text for a double, used in details.
inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline nlohmann::json to_json(const Verdict& v) {
    nlohmann::json j;
    j["id"] = v.id;
    j["mode"] = to_string(v.mode);
    j["params"] = v.params;
    j["status"] = to_string(v.status);
    j["max_residual"] = std::isfinite(v.max_residual) ? nlohmann::json(v.max_residual) : nlohmann::json(nullptr);
    j["details"] = nlohmann::json::array();
    for (const auto& d : v.details) {
        nlohmann::json e = {{"n", d.n}, {"k", d.k}, {"lhs", d.lhs}, {"rhs", d.rhs}};
        if (!d.label.empty()) e["label"] = d.label;
        j["details"].push_back(std::move(e));
    }
    j["routes"] = {{"lhs", v.lhs_route}, {"rhs", v.rhs_route}};
    j["informational"] = v.informational;
    if (!v.variants.empty()) {
        j["variants"] = nlohmann::json::array();
        for (const auto& var : v.variants)
            j["variants"].push_back({{"name", var.name}, {"status", to_string(var.status)}, {"mismatches", var.mismatches}});
    }
    if (!v.notes.empty()) j["notes"] = v.notes;
    return j;
}

}  // namespace truncbell
