// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 100).

#include <truncbell/truncbell.hpp>

#include "cli_runner.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace truncbell;

namespace {

const std::vector<Lambda> kLambdaGrid = {Lambda(0, 1), Lambda(1, 1), Lambda(1, 2), Lambda(-1, 3), Lambda(2, 1)};

struct Outcome {
    bool ok = true;
    std::string detail;
};

/// Collects failures of individual verdicts into an Outcome.
struct Gate {
    Outcome out;
    int checked = 0;

    void require(bool cond, const std::string& what) {
        ++checked;
        if (!cond && out.ok) {
            out.ok = false;
            out.detail = what;
        }
    }
    void require(const Verdict& v) {
        std::string where = v.id + " " + v.params.dump();
        if (!v.details.empty()) where += " first mismatch n=" + std::to_string(v.details[0].n);
        require(v.passed(), where);
    }
};

int failures = 0;

void criterion(int number, const std::string& title, double time_limit_s, const std::function<Outcome()>& body) {
    TableCache::instance().clear();
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && time_limit_s > 0 && secs > time_limit_s) {
        o.ok = false;
        o.detail = "time limit " + std::to_string(time_limit_s) + " s exceeded";
    }
    if (!o.ok) ++failures;
    std::ostringstream line;
    line.precision(3);
    line << (o.ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " [" << std::fixed << secs << " s";
    if (time_limit_s > 0) line << " / limit " << time_limit_s << " s";
    line << "]";
    if (!o.detail.empty()) line << " -- " << o.detail;
    std::cout << line.str() << std::endl;
}

}  // namespace

int main() {
    criterion(1, "truncated Bell finite sum equals generating-function coefficients (exact)", 10.0, [] {
        Gate g;
        for (const Lambda& l : kLambdaGrid)
            for (int p = 0; p <= 4; ++p) g.require(check_T1(l, p, 12, 12));
        g.out.detail = std::to_string(g.checked) + " verdicts";
        return g.out;
    });

    criterion(2, "degenerate Stirling matrices are mutually inverse, n <= 16 (exact)", 5.0, [] {
        Gate g;
        const int n_max = 16;
        for (const Lambda& l : kLambdaGrid) {
            const auto s1 = cached_table(Family::S1deg, {l}, n_max);
            const auto s2 = cached_table(Family::S2deg, {l}, n_max);
            for (int n = 0; n <= n_max; ++n)
                for (int m = 0; m <= n_max; ++m) {
                    Rational acc(0);
                    for (int k = 0; k <= n_max; ++k) acc += s1->entry(n, k).coeff(0) * s2->entry(k, m).coeff(0);
                    g.require(acc == Rational(n == m ? 1 : 0),
                              "lambda=" + l.to_string() + " (" + std::to_string(n) + "," + std::to_string(m) + ")");
                }
        }
        return g.out;
    });

    criterion(3, "lambda = 0 gives classical Stirling numbers and Bell numbers 1,1,2,5,15,52,203", 0, [] {
        Gate g;
        const Lambda zero(0, 1);
        for (int n = 0; n <= 12; ++n)
            for (int k = 0; k <= n; ++k) {
                g.require(stirling2_deg(n, k, zero) == stirling2(n, k), "S2");
                g.require(stirling1_deg(n, k, zero) == stirling1(n, k), "S1");
                if (n <= 9) g.require(stirling2(n, k) == Rational(oracle::partitions_into_blocks(n, k)), "S2 oracle");
            }
        const long expected[] = {1, 1, 2, 5, 15, 52, 203};
        for (int n = 0; n <= 6; ++n) {
            const Rational bel = bell_deg(n, zero).evaluate(Rational(1));
            g.require(bel == Rational(oracle::partitions(n)), "Bel_" + std::to_string(n) + " vs enumeration");
            g.require(bel == Rational(expected[n]), "Bel_" + std::to_string(n) + " vs listed value");
        }
        return g.out;
    });

    criterion(4, "beta-weighted integral and its binomial expansion equal the finite sum at x = 1 (exact)", 0, [] {
        Gate g;
        for (const Lambda& l : kLambdaGrid)
            for (int p = 1; p <= 4; ++p) {
                g.require(check_P3(l, p, 10));
                g.require(check_P5a(l, p, 10));
            }
        return g.out;
    });

    criterion(5, "double series with cutoffs (80,80) within relative 1e-9", 5.0, [] {
        Gate g;
        NumericConfig cfg;
        cfg.series_cutoff_k = cfg.series_cutoff_l = 80;
        cfg.tol_rel = 1e-9;
        double worst = 0;
        for (const Lambda& l : {Lambda(0, 1), Lambda(1, 3)})
            for (int p = 0; p <= 2; ++p) {
                const Verdict v = check_T4(l, p, 8, cfg);
                worst = std::max(worst, v.max_residual);
                g.require(v);
            }
        std::ostringstream os;
        os << "max scaled error " << worst;
        if (g.out.ok) g.out.detail = os.str();
        return g.out;
    });

    criterion(6, "incomplete-gamma and operator forms through order 14 (exact)", 0, [] {
        Gate g;
        for (const Lambda& l : {Lambda(1, 2), Lambda(-1, 3)})
            for (int p = 1; p <= 3; ++p) {
                g.require(check_P5b(l, p, 14));
                const Verdict t7 = check_T7(l, p, 14 + p - 1);
                g.require(t7.params["compared_through"] == 14, "T7 compared range");
                g.require(t7);
            }
        return g.out;
    });

    criterion(7, "contour integrals with 2048 panels within relative 1e-7", 30.0, [] {
        Gate g;
        NumericConfig cfg;
        cfg.quad_nodes = 2048;
        cfg.tol_rel = 1e-7;
        double worst = 0;
        for (const Lambda& l : {Lambda(0, 1), Lambda(1, 3)}) {
            std::vector<Verdict> vs = {check_trig(l, 8, 8, TrigIdentity::L9, cfg),
                                       check_trig(l, 8, 0, TrigIdentity::C10, cfg)};
            for (int p = 1; p <= 3; ++p) vs.push_back(check_trig(l, 8, p, TrigIdentity::T11, cfg));
            for (const auto& v : vs) {
                worst = std::max(worst, v.max_residual);
                g.require(v);
            }
        }
        std::ostringstream os;
        os << "max scaled error " << worst;
        if (g.out.ok) g.out.detail = os.str();
        return g.out;
    });

    criterion(8, "recurrences: truncated Bell (n >= 2, p <= 4) and modified family (n <= 8, p <= 3)", 0, [] {
        Gate g;
        for (const Lambda& l : kLambdaGrid) {
            for (int p = 0; p <= 4; ++p) g.require(check_T12(l, p, 10, 11));
            for (int p = 0; p <= 3; ++p) g.require(check_T16(l, p, 8));
        }
        return g.out;
    });

    criterion(9, "modified family: dual constructions (exact) and series at x in {0,1,1/2} (relative 1e-8)", 0, [] {
        Gate g;
        NumericConfig cfg;
        cfg.series_cutoff_k = cfg.series_cutoff_l = 80;
        cfg.tol_rel = 1e-8;
        for (const Lambda& l : kLambdaGrid)
            for (int p = 0; p <= 4; ++p) {
                g.require(check_T14(l, p, 10, 10));
                for (const Rational& x : {Rational(0), Rational(1), Rational(1, 2)}) g.require(check_T15(l, p, 8, x, cfg));
            }
        return g.out;
    });

    criterion(10, "Beta(1,p) moment identity: exact, and Monte Carlo within 4 standard errors", 0, [] {
        Gate g;
        NumericConfig cfg;
        cfg.mc_samples = 200000;
        cfg.seed = 42;
        double worst_z = 0;
        for (const Lambda& l : kLambdaGrid)
            for (int p = 1; p <= 3; ++p) {
                g.require(check_S3_exact(l, p, 6));
                const Verdict mc = check_S3_monte_carlo(l, p, 6, cfg);
                worst_z = std::max(worst_z, mc.params["max_abs_z"].get<double>());
                g.require(mc);
            }
        std::ostringstream os;
        os << "largest |z| " << worst_z;
        if (g.out.ok) g.out.detail = os.str();
        return g.out;
    });

    const auto dir = std::filesystem::temp_directory_path() / ("truncbell_accept_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string report_a = (dir / "a.json").string(), report_b = (dir / "b.json").string();
    int exit_a = -1, exit_b = -1;

    criterion(11, "both Bernoulli-order variants run; one adjudication record; exit code unaffected", 0, [&] {
        Gate g;
        exit_a = run_cli("suite --default-grid --seed 42 -o " + report_a).exit_code;
        const auto j = nlohmann::json::parse(slurp(report_a));
        g.require(j["adjudications"].size() == 1, "adjudication records: " + std::to_string(j["adjudications"].size()));
        g.require(j["summary"]["by_id"].contains("T6") && j["summary"]["by_id"].contains("T6k"), "both variants ran");
        const int counted = j["summary"]["counted_failures"].get<int>();
        g.require(exit_a == (counted == 0 ? 0 : 1), "exit code " + std::to_string(exit_a) + " with " +
                                                        std::to_string(counted) + " counted failures");
        g.require(counted == 0, "counted failures in default grid: " + std::to_string(counted));
        if (g.out.ok) g.out.detail = "resolution: " + j["adjudications"][0]["resolution"].get<std::string>();
        return g.out;
    });

    criterion(12, "six expressions for the truncated Bell numbers agree, n <= 8", 0, [] {
        Gate g;
        NumericConfig cfg;
        for (const Lambda& l : {Lambda(0, 1), Lambda(1, 3)})
            for (int p = 1; p <= 3; ++p) g.require(check_C_SIX(l, p, 8, cfg));
        return g.out;
    });

    criterion(13, "two suite runs with --default-grid --seed 42 are byte-identical", 0, [&] {
        Gate g;
        exit_b = run_cli("suite --default-grid --seed 42 -o " + report_b).exit_code;
        const auto a = slurp(report_a), b = slurp(report_b);
        g.require(!a.empty(), "first report missing");
        g.require(a == b, "reports differ");
        g.require(exit_a == exit_b, "exit codes differ");
        if (g.out.ok) g.out.detail = std::to_string(a.size()) + " bytes";
        return g.out;
    });

    std::filesystem::remove_all(dir);
    std::cout << (failures == 0 ? "ALL ACCEPTANCE CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED")
              << std::endl;
    return std::min(failures, 100);
}
