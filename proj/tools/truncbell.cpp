// Command-line front end: tables, single values and identity checks.
//
// Exit codes: 0 success (all counted checks pass), 1 a counted check
// failed, 2 invalid arguments, 3 output could not be written.

#include <truncbell/truncbell.hpp>

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace truncbell;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family;
    std::string construction;
    std::string lambda = "0";
    int p = 0;
    int r = 1;
    int n = 0;
    std::optional<int> k;
    std::optional<std::string> x;
    int n_max = 10;
    int order = 24;
    std::string format = "csv";
    std::string output;
    std::vector<std::string> ids;
    bool default_grid = false;
    std::vector<std::string> lambda_list;
    std::vector<int> p_list;
    std::vector<std::string> x_list;
    unsigned threads = 0;
    NumericConfig cfg;
};

Lambda parse_lambda(const std::string& text) {
    try {
        return Lambda::parse(text);
    } catch (const ParseError& e) {
        throw UsageError("invalid lambda \"" + text + "\": " + e.what());
    }
}

Rational parse_rational(const std::string& what, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const ParseError& e) {
        throw UsageError("invalid " + what + " \"" + text + "\": " + e.what());
    }
}

Family parse_family_or_throw(const std::string& name) {
    if (auto f = parse_family(name)) return *f;
    std::string known;
    for (Family f : kAllFamilies) known += (known.empty() ? "" : ", ") + to_string(f);
    throw UsageError("unknown family \"" + name + "\" (known: " + known + ")");
}

/// Resolves -o against TRUNCBELL_OUTPUT_DIR when the path is relative.
std::filesystem::path output_path(const std::string& output) {
    std::filesystem::path path(output);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("TRUNCBELL_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
    }
    return path;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    const auto path = output_path(output);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

int cmd_table(const Options& o) {
    const Family family = parse_family_or_throw(o.family);
    const Lambda lambda = parse_lambda(o.lambda);
    Construction c = primary_construction(family);
    if (!o.construction.empty()) {
        const auto parsed = parse_construction(o.construction);
        const auto avail = available_constructions(family);
        if (!parsed || std::find(avail.begin(), avail.end(), *parsed) == avail.end())
            throw UsageError("construction \"" + o.construction + "\" is not available for " + o.family);
        c = *parsed;
    }
    if (o.n_max < 0) throw UsageError("--n-max must be nonnegative");
    if (o.p < 0 || o.r < 0) throw UsageError("--p and --r must be nonnegative");
    const SequenceTable table = build_table(family, {lambda, o.p, o.r}, o.n_max, c);
    emit(o.format == "json" ? table_to_json(table).dump(2) + "\n" : table_to_csv(table), o.output);
    return 0;
}

int cmd_eval(const Options& o) {
    const Family family = parse_family_or_throw(o.family);
    const Lambda lambda = parse_lambda(o.lambda);
    if (o.n < 0 || o.p < 0 || o.r < 0) throw UsageError("--n, --p and --r must be nonnegative");
    if (is_triangular(family) && !o.k) throw UsageError("family " + o.family + " needs --k");
    if (!is_triangular(family) && o.k) throw UsageError("family " + o.family + " takes no --k");
    if (o.k && *o.k < 0) throw UsageError("--k must be nonnegative");
    const int k = o.k.value_or(0);
    Poly value;
    switch (family) {
        case Family::S1: value = stirling1(o.n, k); break;
        case Family::S2: value = stirling2(o.n, k); break;
        case Family::S1deg: value = stirling1_deg(o.n, k, lambda); break;
        case Family::S2deg: value = stirling2_deg(o.n, k, lambda); break;
        case Family::S2degPoly: value = stirling2_deg_poly(o.n, k, lambda); break;
        case Family::BernoulliDeg: value = deg_bernoulli(o.n, o.r, lambda); break;
        case Family::BellDeg: value = bell_deg(o.n, lambda); break;
        case Family::TruncBellDeg: value = trunc_bell_deg(o.n, o.p, lambda); break;
        case Family::TruncModBellDeg: value = trunc_mod_bell_deg(o.n, o.p, lambda); break;
        case Family::BellClassical: value = bell_classical(o.n); break;
    }
    if (o.x) {
        if (!is_polynomial_valued(family)) throw UsageError("family " + o.family + " is not polynomial-valued; drop --x");
        std::cout << value.evaluate(parse_rational("x", *o.x)).to_string() << "\n";
    } else if (is_polynomial_valued(family)) {
        std::cout << value.to_string() << "\n";
    } else {
        std::cout << value.coeff(0).to_string() << "\n";
    }
    return 0;
}

std::vector<Verdict> run_single(const std::string& id, const Options& o) {
    const Lambda l = parse_lambda(o.lambda);
    const int p = o.p, n = o.n_max, order = o.order;
    const auto& cfg = o.cfg;
    auto one = [](Verdict v) { return std::vector<Verdict>{std::move(v)}; };
    if (id == "T1") return one(check_T1(l, p, n, order));
    if (id == "T2") return one(check_T2(l, n, order));
    if (id == "P3") return one(check_P3(l, p, n));
    if (id == "P5a") return one(check_P5a(l, p, n));
    if (id == "P5b") return one(check_P5b(l, p, order));
    if (id == "T4") return one(check_T4(l, p, n, cfg));
    if (id == "T6") return one(check_T6(l, p, n, order, T6Variant::statement));
    if (id == "T6k") return one(check_T6(l, p, n, order, T6Variant::derivation));
    if (id == "T7") return one(check_T7(l, p, order));
    if (id == "T8") return one(check_T8(l, p, n, order));
    if (id == "L9") return one(check_trig(l, n, o.k.value_or(n), TrigIdentity::L9, cfg));
    if (id == "C10") return one(check_trig(l, n, 0, TrigIdentity::C10, cfg));
    if (id == "T11") return one(check_trig(l, n, p, TrigIdentity::T11, cfg));
    if (id == "T12") return one(check_T12(l, p, n, order));
    if (id == "T13") return one(check_T13(l, n));
    if (id == "T14") return one(check_T14(l, p, n, order));
    if (id == "T15") return one(check_T15(l, p, n, parse_rational("x", o.x.value_or("1")), cfg));
    if (id == "T16") return one(check_T16(l, p, n));
    if (id == "S3") return check_S3(l, p, n, cfg);
    if (id == "C-SIX") return one(check_C_SIX(l, p, n, cfg));
    throw UsageError("unknown identity id \"" + id + "\"");
}

int report(SuiteResult& result, const Options& o) {
    emit(suite_report(result).dump(2) + "\n", o.output);
    return result.ok() ? 0 : kExitFail;
}

int cmd_check(const Options& o) {
    o.cfg.validate();
    SuiteResult result;
    for (const auto& id : o.ids) {
        auto vs = run_single(id, o);
        result.verdicts.insert(result.verdicts.end(), vs.begin(), vs.end());
    }
    std::stable_sort(result.verdicts.begin(), result.verdicts.end(), verdict_order);
    for (const auto& v : result.verdicts) {
        if (v.id == "T6" || v.id == "T6k") {
            result.adjudications.push_back(adjudicate_T6(result.verdicts));
            break;
        }
    }
    return report(result, o);
}

int cmd_suite(const Options& o) {
    o.cfg.validate();
    Grid grid = o.default_grid ? Grid::default_grid() : Grid{};
    if (!o.lambda_list.empty()) {
        grid.lambdas.clear();
        for (const auto& s : o.lambda_list) grid.lambdas.push_back(parse_lambda(s));
    }
    if (!o.p_list.empty()) grid.ps = o.p_list;
    if (!o.x_list.empty()) {
        grid.xs.clear();
        for (const auto& s : o.x_list) grid.xs.push_back(parse_rational("x", s));
    }
    if (grid.xs.empty()) grid.xs = {Rational(1)};
    for (int p : grid.ps)
        if (p < 0) throw UsageError("grid p values must be nonnegative");
    grid.n_max = o.n_max;
    grid.order = o.order;
    for (const auto& id : o.ids) {
        if (!is_identity_id(id)) throw UsageError("unknown identity id \"" + id + "\"");
        grid.ids.insert(id);
    }
    SuiteResult result = run_suite(grid, o.cfg, o.threads);
    return report(result, o);
}

void add_numeric_flags(CLI::App* app, Options& o) {
    app->add_option("--tol-rel", o.cfg.tol_rel, "relative tolerance")->capture_default_str();
    app->add_option("--tol-abs", o.cfg.tol_abs, "absolute tolerance")->capture_default_str();
    app->add_option("--seed", o.cfg.seed, "Monte Carlo seed")->capture_default_str();
    app->add_option("--quad-nodes", o.cfg.quad_nodes, "Simpson panels for contour integrals")->capture_default_str();
    app->add_option("--cutoff-k", o.cfg.series_cutoff_k, "outer cutoff of the double series")->capture_default_str();
    app->add_option("--cutoff-l", o.cfg.series_cutoff_l, "inner cutoff of the double series")->capture_default_str();
    app->add_option("--mc-samples", o.cfg.mc_samples, "Monte Carlo sample count")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tables and identity checks for truncated degenerate Bell polynomials"};
    app.require_subcommand(1);
    Options o;

    auto* table = app.add_subcommand("table", "write a table of a sequence family");
    table->add_option("--family", o.family, "sequence family")->required();
    table->add_option("--construction", o.construction, "construction (default: the primary one)");
    table->add_option("--lambda", o.lambda, "degeneracy parameter num/den")->capture_default_str();
    table->add_option("--p", o.p, "truncation index")->capture_default_str();
    table->add_option("--r", o.r, "Bernoulli order")->capture_default_str();
    table->add_option("--n-max", o.n_max, "last row")->capture_default_str();
    table->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    table->add_option("-o,--output", o.output, "output file (default stdout)");

    auto* eval = app.add_subcommand("eval", "print one exact value");
    eval->add_option("--family", o.family, "sequence family")->required();
    eval->add_option("--lambda", o.lambda, "degeneracy parameter num/den")->capture_default_str();
    eval->add_option("--p", o.p, "truncation index")->capture_default_str();
    eval->add_option("--r", o.r, "Bernoulli order")->capture_default_str();
    eval->add_option("--n", o.n, "index n")->required();
    eval->add_option("--k", o.k, "index k (triangular families)");
    eval->add_option("--x", o.x, "evaluate the polynomial at this rational");

    auto* check = app.add_subcommand("check", "run identity checks and write verdict JSON");
    check->add_option("--id", o.ids, "identity id (repeatable)")->required();
    check->add_option("--lambda", o.lambda, "degeneracy parameter num/den")->capture_default_str();
    check->add_option("--p", o.p, "truncation index")->capture_default_str();
    check->add_option("--k", o.k, "largest k for L9 (default n-max)");
    check->add_option("--x", o.x, "evaluation point for T15 (default 1)");
    check->add_option("--n-max", o.n_max, "largest n checked")->capture_default_str();
    check->add_option("--order", o.order, "series truncation order")->capture_default_str();
    check->add_option("-o,--output", o.output, "output file (default stdout)");
    add_numeric_flags(check, o);

    auto* suite = app.add_subcommand("suite", "run the checks over a parameter grid");
    suite->add_flag("--default-grid", o.default_grid, "lambda in {0,1,1/2,-1/3}, p in 0..4, x in {0,1,1/2}");
    suite->add_option("--lambdas", o.lambda_list, "lambda values (replace the grid's)")->delimiter(',');
    suite->add_option("--ps", o.p_list, "p values (replace the grid's)")->delimiter(',');
    suite->add_option("--xs", o.x_list, "T15 evaluation points (replace the grid's)")->delimiter(',');
    suite->add_option("--id", o.ids, "only these identity ids (repeatable)");
    suite->add_option("--n-max", o.n_max, "largest n checked")->capture_default_str();
    suite->add_option("--order", o.order, "series truncation order")->capture_default_str();
    suite->add_option("--threads", o.threads, "worker threads (0: all cores)")->capture_default_str();
    suite->add_option("-o,--output", o.output, "output file (default stdout)");
    add_numeric_flags(suite, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*table) return cmd_table(o);
        if (*eval) return cmd_eval(o);
        if (*check) return cmd_check(o);
        if (*suite) return cmd_suite(o);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
