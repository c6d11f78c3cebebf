#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "saito/cli.hpp"

using namespace saito;
using cli::Command;

namespace {

std::string corpus(const std::string& name) { return std::string(SAITO_CORPUS_DIR) + "/" + name; }

Command command(std::string verb, std::vector<std::string> inputs) {
    Command c;
    c.verb = std::move(verb);
    c.inputs = std::move(inputs);
    return c;
}

std::string scratch_file(const std::string& name, const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path() / "saito-cli-tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST(Cli, InfoForFermatQuadric) {
    auto c = command("info", {corpus("fermat2.poly")});
    c.format = Format::Json;
    auto out = cli::run(c);
    ASSERT_EQ(out.exit_code, 0) << out.error;
    const auto text = emit(out.report, Format::Json);
    EXPECT_NE(text.find("\"det\": 2"), std::string::npos);
    auto j = nlohmann::json::parse(text);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["weights"], nlohmann::json::array({"1/2"}));
    EXPECT_EQ(j["cyclic_type"], nlohmann::json::array({2}));
    EXPECT_EQ(j["status"], "INFO");
}

TEST(Cli, ZetaDefaultsToTrivialSubgroup) {
    auto out = cli::run(command("zeta", {corpus("fermat2.poly")}));
    ASSERT_EQ(out.exit_code, 0);
    EXPECT_NE(emit(out.report, Format::Text).find("G=<0>  (1-t^2)^1*(1-t)^-1"), std::string::npos);

    auto all = command("zeta", {corpus("chain23.poly")});
    all.subgroup = "all";
    all.format = Format::Json;
    auto j = nlohmann::json::parse(emit(cli::run(all).report, Format::Json));
    EXPECT_EQ(j["zeta"].size(), 4u);
}

TEST(Cli, VerifyCorollaryOnChain) {
    auto c = command("verify", {corpus("chain23.poly")});
    c.theorem = "corollary";
    auto out = cli::run(c);
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_EQ(out.report.checks.size(), 4u);
    EXPECT_EQ(out.report.status(), "PASS");
}

TEST(Cli, ParseErrorExitsTwoWithPosition) {
    auto path = scratch_file("bad.poly", "vars: x y\nf: x^2*y + * y^3\n");
    auto out = cli::run(command("info", {path}));
    EXPECT_EQ(out.exit_code, 2);
    EXPECT_EQ(out.error, "error: ParseError: bad.poly: expected a monomial at position 21");
    EXPECT_TRUE(out.report.empty());
}

TEST(Cli, ValidationErrorsExitTwo) {
    EXPECT_EQ(cli::run(command("info", {scratch_file("sq.poly", "f: x^2 + y^3 + x*y\n")})).exit_code, 2);
    EXPECT_EQ(cli::run(command("info", {scratch_file("deg.poly", "f: x*y + x*y\n")})).exit_code, 2);
    EXPECT_EQ(cli::run(command("info", {"/nonexistent/file.poly"})).exit_code, 2);
    auto bad_sub = command("zeta", {corpus("fermat2.poly")});
    bad_sub.subgroup = "(1/3)";
    EXPECT_EQ(cli::run(bad_sub).exit_code, 2);
    auto bad_thm = command("verify", {corpus("fermat2.poly")});
    bad_thm.theorem = "thm9";
    EXPECT_EQ(cli::run(bad_thm).exit_code, 2);
}

TEST(Cli, SizeGuardFromOption) {
    auto c = command("info", {corpus("fermat237.poly")});
    c.max_order = 10;
    auto out = cli::run(c);
    EXPECT_EQ(out.exit_code, 2);
    EXPECT_NE(out.error.find("GroupTooLarge"), std::string::npos);
}

TEST(Cli, SizeGuardFromEnvironment) {
    ::setenv("SAITO_MAX_ORDER", "77", 1);
    EXPECT_EQ(cli::max_order_from_env(), 77u);
    ::setenv("SAITO_MAX_ORDER", "junk", 1);
    EXPECT_EQ(cli::max_order_from_env(), kDefaultMaxOrder);
    ::unsetenv("SAITO_MAX_ORDER");
    EXPECT_EQ(cli::max_order_from_env(), kDefaultMaxOrder);
}

TEST(Cli, SubgroupLineInFileIsUsed) {
    auto path = scratch_file("sub.poly", "vars: x y\nf: x^3 + y^3\nsubgroup: (1/3,0)\n");
    auto out = cli::run(command("zeta", {path}));
    ASSERT_EQ(out.exit_code, 0) << out.error;
    EXPECT_NE(emit(out.report, Format::Text).find("G=<(1/3,0)>"), std::string::npos);
}

TEST(Cli, DualPrintsTransposeSpec) {
    auto c = command("dual", {corpus("chain23.poly")});
    c.subgroup = "full";
    auto out = cli::run(c);
    ASSERT_EQ(out.exit_code, 0) << out.error;
    const auto text = emit(out.report, Format::Text);
    EXPECT_NE(text.find("f: x^2 + x*y^3"), std::string::npos);
    EXPECT_NE(text.find("subgroup: (0,0)"), std::string::npos);
}

TEST(Emit, EmptyReportIsEmptyJsonObject) {
    EXPECT_EQ(emit(Report{}, Format::Json), "{}\n");
}

TEST(Emit, FailingCheckSetsStatus) {
    Report r;
    r.checks.push_back(Check{"a", true, "1", "1"});
    r.checks.push_back(Check{"b", false, "1", "2"});
    auto j = nlohmann::json::parse(emit(r, Format::Json));
    EXPECT_EQ(j["status"], "FAIL");
    EXPECT_EQ(j["checks"][1]["status"], "FAIL");
    EXPECT_EQ(j["checks"][1]["rhs"], "2");
    EXPECT_NE(emit(r, Format::Text).find("[FAIL] b"), std::string::npos);
    EXPECT_NE(emit(r, Format::Text).find("status: FAIL"), std::string::npos);
}

TEST(Cli, DeterministicOutput) {
    for (auto f : {Format::Text, Format::Json}) {
        auto c = command("verify", {corpus("loop22.poly"), corpus("fermat23.poly")});
        c.format = f;
        EXPECT_EQ(emit(cli::run(c).report, f), emit(cli::run(c).report, f));
        auto z = command("fuzz", {});
        z.seed = 11;
        z.iterations = 20;
        EXPECT_EQ(emit(cli::run(z).report, f), emit(cli::run(z).report, f));
    }
}

TEST(Cli, BatchWritesOneFilePerInput) {
    const auto dir = std::filesystem::temp_directory_path() / "saito-cli-tests" / "batch";
    std::filesystem::remove_all(dir);
    auto c = command("batch", {SAITO_CORPUS_DIR});
    c.output_dir = dir.string();
    c.format = Format::Json;
    c.jobs = 4;
    auto out = cli::run(c);
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_EQ(out.report.checks.size(), 15u);
    EXPECT_TRUE(std::filesystem::exists(dir / "chain23.json"));
    EXPECT_EQ(out.report.checks.front().name, "chain223.poly");
}
