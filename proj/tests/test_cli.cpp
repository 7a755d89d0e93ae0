#include <truncbell/sequences.hpp>
#include <truncbell/table_io.hpp>

#include "cli_runner.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>

using namespace truncbell;

namespace {

std::string temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / ("truncbell_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST(Cli, EvalExamples) {
    auto r = run_cli("eval --family TruncBellDeg --lambda 1/2 --p 1 --n 2");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "1/4*x + 1/3*x^2\n");
    r = run_cli("eval --family TruncBellDeg --p 0 --lambda 0 --n 4 --x 1");
    EXPECT_EQ(r.out, "15\n");
    r = run_cli("eval --family BernoulliDeg --lambda 1/3 --r 1 --n 1 --x 0");
    EXPECT_EQ(r.out, "-1/3\n");
    r = run_cli("eval --family S2deg --lambda 1/2 --n 2 --k 1");
    EXPECT_EQ(r.out, "1/2\n");
}

TEST(Cli, TableExamples) {
    auto r = run_cli("table --family S2deg --lambda 1/2 --n-max 6 --format csv");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("\n2,0,1/2,1,"), std::string::npos);
    r = run_cli("table --family BellClassical --n-max 5");
    EXPECT_EQ(r.out, "n,value\n0,1\n1,1\n2,2\n3,5\n4,15\n5,52\n");
    const auto s2 = run_cli("table --family S2 --n-max 5").out;
    const auto s2deg0 = run_cli("table --family S2deg --lambda 0 --n-max 5").out;
    EXPECT_EQ(s2, s2deg0);
}

TEST(Cli, TableJsonRoundTrips) {
    const auto r = run_cli("table --family TruncModBellDeg --lambda -1/3 --p 2 --n-max 6 --format json");
    ASSERT_EQ(r.exit_code, 0);
    const auto parsed = table_from_json(nlohmann::json::parse(r.out));
    EXPECT_EQ(parsed, build_table(Family::TruncModBellDeg, {Lambda(-1, 3), 2}, 6, Construction::finite_sum));
    const auto alt = run_cli("table --family TruncModBellDeg --lambda -1/3 --p 2 --n-max 6 --format json "
                             "--construction egf_extraction");
    EXPECT_EQ(table_from_json(nlohmann::json::parse(alt.out)).rows, parsed.rows);
}

TEST(Cli, InvalidArgumentsExitTwo) {
    EXPECT_EQ(run_cli("eval --family Nope --n 2").exit_code, 2);
    EXPECT_EQ(run_cli("eval --family S2 --n 2").exit_code, 2);  // missing --k
    EXPECT_EQ(run_cli("eval --family S2 --n 2 --k 1 --bogus").exit_code, 2);
    EXPECT_EQ(run_cli("eval --family BellDeg --lambda 0.5 --n 2").exit_code, 2);
    EXPECT_EQ(run_cli("table --family S2 --n-max -1").exit_code, 2);
    EXPECT_EQ(run_cli("table --family S2 --format xml").exit_code, 2);
    EXPECT_EQ(run_cli("table --family BernoulliDeg --construction finite_sum").exit_code, 2);
    EXPECT_EQ(run_cli("check --id T99").exit_code, 2);
    EXPECT_EQ(run_cli("check --id L9 --lambda 1").exit_code, 2);
    EXPECT_EQ(run_cli("check --id T1 --tol-rel 0").exit_code, 2);
    EXPECT_EQ(run_cli("suite --id NOPE").exit_code, 2);
    EXPECT_EQ(run_cli("").exit_code, 2);
}

TEST(Cli, LambdaParseErrorsReportPosition) {
    const auto r = run_cli("eval --family BellDeg --lambda 1/2x --n 2 2>&1 #");
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.out.find("position 3"), std::string::npos) << r.out;
}

TEST(Cli, UnwritableOutputExitsThree) {
    EXPECT_EQ(run_cli("table --family S2 --n-max 3 -o /nonexistent_dir_xyz/t.csv").exit_code, 3);
    EXPECT_EQ(run_cli("check --id T1 -o /nonexistent_dir_xyz/v.json").exit_code, 3);
}

TEST(Cli, CheckExamples) {
    auto r = run_cli("check --id T1 --lambda 1/3 --p 2 --n-max 12");
    ASSERT_EQ(r.exit_code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdicts"][0]["status"], "pass");
    EXPECT_EQ(j["verdicts"][0]["mode"], "exact");
    r = run_cli("check --id T4 --lambda 1/3 --p 2 --n-max 8 --tol-rel 1e-9");
    ASSERT_EQ(r.exit_code, 0);
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdicts"][0]["mode"], "numeric");
    EXPECT_EQ(j["verdicts"][0]["status"], "pass");
}

TEST(Cli, FailingCheckExitsOne) {
    EXPECT_EQ(run_cli("check --id T4 --p 1 --n-max 6 --cutoff-k 3 --cutoff-l 3").exit_code, 1);
}

TEST(Cli, AdjudicationDoesNotAffectExitCode) {
    const auto r = run_cli("check --id T6 --id T6k --lambda 1/2 --p 2 --n-max 8");
    EXPECT_EQ(r.exit_code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["adjudications"].size(), 1U);
    EXPECT_EQ(j["adjudications"][0]["resolution"], "derivation");
}

TEST(Cli, OutputDirectoryOverride) {
    const std::string dir = temp_dir();
    const auto r = run_cli("table --family BellClassical --n-max 4 -o bell.csv", "TRUNCBELL_OUTPUT_DIR=" + dir);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(slurp(dir + "/bell.csv"), "n,value\n0,1\n1,1\n2,2\n3,5\n4,15\n");
    std::filesystem::remove_all(dir);
}

TEST(Cli, SuiteFilesAreByteIdentical) {
    const std::string dir = temp_dir();
    const std::string args = "suite --lambdas 0,1/2 --ps 1,2 --n-max 5 --seed 42 --mc-samples 2000 -o ";
    ASSERT_EQ(run_cli(args + dir + "/a.json").exit_code, 0);
    ASSERT_EQ(run_cli(args + dir + "/b.json --threads 1").exit_code, 0);
    const auto a = slurp(dir + "/a.json");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir + "/b.json"));
    const auto j = nlohmann::json::parse(a);
    EXPECT_EQ(j["summary"]["counted_failures"], 0);
    EXPECT_TRUE(j["summary"]["by_id"].contains("C-SIX"));
    std::filesystem::remove_all(dir);
}

TEST(Cli, HelpExitsZero) {
    EXPECT_EQ(run_cli("--help").exit_code, 0);
    EXPECT_EQ(run_cli("table --help").exit_code, 0);
}
