#pragma once

// Runs the registered checks over a parameter grid and assembles the report.

#include <truncbell/checks.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace truncbell {

/// Every identity id the suite knows, in report order.
inline const std::vector<std::string>& identity_ids() {
    static const std::vector<std::string> ids = {"C-SIX", "C10", "L9",  "P3",  "P5a", "P5b", "S3",  "T1",
                                                 "T11",   "T12", "T13", "T14", "T15", "T16", "T2",  "T4",
                                                 "T6",    "T6k", "T7",  "T8"};
    return ids;
}

inline bool is_identity_id(const std::string& id) {
    const auto& ids = identity_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

struct Grid {
    std::vector<Lambda> lambdas;
    std::vector<int> ps;
    int n_max = 10;
    int order = 24;
    std::vector<Rational> xs;
    /// Only these ids run; empty means all.
    std::set<std::string> ids;

    static Grid default_grid() {
        Grid g;
        g.lambdas = {Lambda(0, 1), Lambda(1, 1), Lambda(1, 2), Lambda(-1, 3)};
        g.ps = {0, 1, 2, 3, 4};
        g.n_max = 10;
        g.order = 24;
        g.xs = {Rational(0), Rational(1), Rational(1, 2)};
        return g;
    }

    bool wants(const std::string& id) const { return ids.empty() || ids.count(id) > 0; }
};

/// One scheduled check; run() must be safe to call from any thread.
struct SuiteJob {
    std::function<std::vector<Verdict>()> run;
};

/// The jobs for `grid`. Checks that need p >= 1 skip p = 0; checks that do
/// not depend on p run once per lambda; contour-integral checks run only for
/// |lambda| < 1.
inline std::vector<SuiteJob> plan_suite(const Grid& grid, const NumericConfig& cfg) {
    std::vector<SuiteJob> jobs;
    if (grid.n_max < 0) throw std::invalid_argument("grid n_max must be nonnegative");
    const int n = grid.n_max;
    const int order = std::max(grid.order, n + 1);
    auto add = [&](const std::string& id, std::function<std::vector<Verdict>()> fn) {
        if (grid.wants(id)) jobs.push_back({std::move(fn)});
    };
    auto one = [](Verdict v) { return std::vector<Verdict>{std::move(v)}; };
    std::set<int> ps(grid.ps.begin(), grid.ps.end());
    for (const Lambda& l : grid.lambdas) {
        const bool contour = Rational(-1) < l.value() && l.value() < Rational(1);
        if (!ps.empty()) {
            add("T2", [=] { return one(check_T2(l, n, order)); });
            add("T13", [=] { return one(check_T13(l, n)); });
        }
        if (contour && !ps.empty()) {
            add("L9", [=] { return one(check_trig(l, n, n, TrigIdentity::L9, cfg)); });
            add("C10", [=] { return one(check_trig(l, n, 0, TrigIdentity::C10, cfg)); });
        }
        for (int p : ps) {
            const int op = std::max(order, n + p);
            add("T1", [=] { return one(check_T1(l, p, n, op)); });
            add("P3", [=] { return one(check_P3(l, p, n)); });
            add("T4", [=] { return one(check_T4(l, p, n, cfg)); });
            add("T6", [=] { return one(check_T6(l, p, n, op, T6Variant::statement)); });
            add("T6k", [=] { return one(check_T6(l, p, n, op, T6Variant::derivation)); });
            add("T12", [=] { return one(check_T12(l, p, n, op)); });
            add("T14", [=] { return one(check_T14(l, p, n, op)); });
            for (const Rational& x : grid.xs) add("T15", [=] { return one(check_T15(l, p, n, x, cfg)); });
            add("T16", [=] { return one(check_T16(l, p, n)); });
            if (p < 1) continue;
            add("P5a", [=] { return one(check_P5a(l, p, n)); });
            add("P5b", [=] { return one(check_P5b(l, p, n)); });
            add("T7", [=] { return one(check_T7(l, p, n + p - 1)); });
            add("T8", [=] { return one(check_T8(l, p, n, op)); });
            if (contour) add("T11", [=] { return one(check_trig(l, n, p, TrigIdentity::T11, cfg)); });
            add("S3", [=] { return check_S3(l, p, n, cfg); });
            add("C-SIX", [=] { return one(check_C_SIX(l, p, n, cfg)); });
        }
    }
    return jobs;
}

struct SuiteResult {
    std::vector<Verdict> verdicts;
    /// One record when T6 or T6k ran.
    std::vector<nlohmann::json> adjudications;

    /// Verdicts that count towards the exit status and failed.
    int counted_failures() const {
        int out = 0;
        for (const auto& v : verdicts) out += !v.informational && !v.passed();
        return out;
    }
    bool ok() const { return counted_failures() == 0; }
};

/// Sort key: id, then the serialized (key-sorted) params, then mode.
inline bool verdict_order(const Verdict& a, const Verdict& b) {
    if (a.id != b.id) return a.id < b.id;
    const std::string pa = a.params.dump(), pb = b.params.dump();
    if (pa != pb) return pa < pb;
    return to_string(a.mode) < to_string(b.mode);
}

/// Runs every planned job on up to `threads` workers (0: hardware
/// concurrency). Output order does not depend on scheduling.
inline SuiteResult run_suite(const Grid& grid, const NumericConfig& cfg, unsigned threads = 0) {
    cfg.validate();
    const auto jobs = plan_suite(grid, cfg);
    std::vector<std::vector<Verdict>> out(jobs.size());
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](unsigned w) {
        try {
            for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = jobs[i].run();
        } catch (...) {
            errors[w] = std::current_exception();
            next = jobs.size();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
    worker(0);
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    SuiteResult result;
    for (auto& vs : out)
        for (auto& v : vs) result.verdicts.push_back(std::move(v));
    std::stable_sort(result.verdicts.begin(), result.verdicts.end(), verdict_order);
    const bool has_t6 = std::any_of(result.verdicts.begin(), result.verdicts.end(),
                                    [](const Verdict& v) { return v.id == "T6" || v.id == "T6k"; });
    if (has_t6) result.adjudications.push_back(adjudicate_T6(result.verdicts));
    return result;
}

inline nlohmann::json suite_summary(const SuiteResult& r) {
    std::map<std::string, std::map<std::string, int>> by_id;
    int passed = 0, informational = 0;
    for (const auto& v : r.verdicts) {
        auto& e = by_id[v.id];
        ++e["total"];
        ++e[v.passed() ? "passed" : "failed"];
        e.try_emplace(v.passed() ? "failed" : "passed", 0);
        passed += v.passed();
        informational += v.informational;
    }
    nlohmann::json j;
    j["total"] = r.verdicts.size();
    j["passed"] = passed;
    j["failed"] = static_cast<int>(r.verdicts.size()) - passed;
    j["informational"] = informational;
    j["counted_failures"] = r.counted_failures();
    j["by_id"] = by_id;
    return j;
}

inline nlohmann::json suite_report(const SuiteResult& r) {
    nlohmann::json j;
    j["verdicts"] = nlohmann::json::array();
    for (const auto& v : r.verdicts) j["verdicts"].push_back(to_json(v));
    j["adjudications"] = r.adjudications;
    j["summary"] = suite_summary(r);
    return j;
}

}  // namespace truncbell
