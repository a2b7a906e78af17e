#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" QMEDIAN_CLI "\" " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    for (std::size_t got; (got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), got);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qmedian_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        std::ofstream out(dir_ / "iota.txt");
        for (int v = 0; v < 32; ++v) out << v << "\n";
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, NoArgumentsIsUsageError) { EXPECT_EQ(run("").code, 1); }

TEST_F(Cli, HelpSucceeds) {
    const CliResult r = run("--help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("estimate"), std::string::npos);
}

TEST_F(Cli, GenWritesDataset) {
    const CliResult r = run("gen --n 5 --eps 0.125 --mu 0.5 --seed 1 --out " + path("d.txt"));
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("achieved_eps=0.125"), std::string::npos);
    const std::string body = slurp(path("d.txt"));
    EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 32);
}

TEST_F(Cli, GenRejectsBadArguments) {
    EXPECT_EQ(run("gen --n 0 --eps 0.1 --out " + path("x.txt")).code, 1);
    EXPECT_EQ(run("gen --n 5 --eps 2 --out " + path("x.txt")).code, 1);
    EXPECT_EQ(run("gen --n 5 --eps 0.1 --out /nonexistent_qm_dir/x.txt").code, 2);
}

TEST_F(Cli, EstimateExamples) {
    const CliResult up = run("estimate --data " + path("iota.txt") + " --mu 17 --mode exact");
    ASSERT_EQ(up.code, 0);
    const auto j = nlohmann::json::parse(up.out);
    EXPECT_NEAR(j["eps_hat"].get<double>(), 0.0625, 1e-6);
    EXPECT_EQ(j["sign"], 1);

    const CliResult zero = run("estimate --data " + path("iota.txt") + " --mu 16");
    ASSERT_EQ(zero.code, 0);
    const auto z = nlohmann::json::parse(zero.out);
    EXPECT_EQ(z["eps_hat"], 0.0);
    EXPECT_EQ(z["sign"], "unknown");
}

TEST_F(Cli, EstimateOutOfBracketIsVerdict) {
    const CliResult r = run("estimate --data " + path("iota.txt") + " --mu 29");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "eps_exceeds_eps0");
}

TEST_F(Cli, EstimateErrors) {
    EXPECT_EQ(run("estimate --data " + path("missing.txt") + " --mu 1").code, 2);
    {
        std::ofstream bad(path("bad.txt"));
        bad << "1\n2\nthree\n4\n";
    }
    EXPECT_EQ(run("estimate --data " + path("bad.txt") + " --mu 1").code, 2);
    {
        std::ofstream odd(path("odd.txt"));
        odd << "1\n2\n3\n";
    }
    EXPECT_EQ(run("estimate --data " + path("odd.txt") + " --mu 1").code, 2);
    EXPECT_EQ(run("estimate --data " + path("iota.txt") + " --mu 1 --eps0 0.5").code, 1);
    EXPECT_EQ(run("estimate --data " + path("iota.txt") + " --mu 1 --mode fuzzy").code, 1);
}

TEST_F(Cli, EstimateWritesFile) {
    const CliResult r = run("estimate --data " + path("iota.txt") + " --mu 17 --out " + path("e.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(nlohmann::json::parse(slurp(path("e.json")))["sign"], 1);
}

TEST_F(Cli, SeedFromEnvironment) {
    const std::string args = "estimate --data " + path("iota.txt") + " --mu 17 --mode sample";
    const auto env = nlohmann::json::parse(run(args, "QMEDIAN_SEED=5").out);
    EXPECT_EQ(env["seed"], 5);
    const auto both = nlohmann::json::parse(run(args + " --seed 9", "QMEDIAN_SEED=5").out);
    EXPECT_EQ(both["seed"], 9);
}

TEST_F(Cli, MedianExamples) {
    const CliResult r = run("median --data " + path("iota.txt") + " --min 0 --max 31 --resolution 1");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_GE(j["mu_hat"].get<double>(), 15.5);
    EXPECT_LE(j["mu_hat"].get<double>(), 16.5);
    const int rank = j["rank_below"];
    EXPECT_TRUE(rank == 16 || rank == 17);
    EXPECT_EQ(j["steps"], 5);

    {
        std::ofstream c(path("const.txt"));
        for (int i = 0; i < 16; ++i) c << "2.5\n";
    }
    const CliResult k = run("median --data " + path("const.txt") + " --min 0 --max 10 --resolution 0.01");
    ASSERT_EQ(k.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(k.out)["mu_hat"].get<double>(), 2.5, 0.01);

    EXPECT_EQ(run("median --data " + path("iota.txt") + " --min 5 --max 5").code, 1);
    EXPECT_EQ(run("median --data " + path("iota.txt") + " --min 6 --max 5").code, 1);
}

TEST_F(Cli, SweepExamples) {
    const CliResult r = run("sweep --eps 0.001 --beta-max 50");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "r,k_re,k_im,k_abs,approx_2sqrt2,p_below_analytic,p_below_exact,abs_err");
    std::string row0;
    std::getline(in, row0);
    EXPECT_EQ(row0.rfind("0,0.001,0,0.001,", 0), 0u) << row0;
    std::string last;
    for (std::string line; std::getline(in, line);) last = line;
    EXPECT_EQ(last.rfind("50,", 0), 0u);
    EXPECT_NE(last.find(",0.1414213562373095"), std::string::npos) << last;

    ASSERT_EQ(run("sweep --eps 0.125 --beta-max 40 --n 12 --csv " + path("s.csv")).code, 0);
    std::istringstream csv(slurp(path("s.csv")));
    std::getline(csv, header);
    double worst = 0.0;
    for (std::string line; std::getline(csv, line);) {
        worst = std::max(worst, std::stod(line.substr(line.rfind(',') + 1)));
    }
    EXPECT_LT(worst, 1e-10);
    EXPECT_EQ(run("sweep --eps 0.1 --beta-max 3 --csv /nonexistent_qm_dir/s.csv").code, 2);
}

TEST_F(Cli, CheckExitCodes) {
    const CliResult ok = run("check --n 4 --tol 1e-10");
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("closed_form_simulator"), std::string::npos);
    EXPECT_EQ(run("check --n 30").code, 1);
    EXPECT_EQ(run("check --n 4 --tol 0").code, 3);
}

TEST_F(Cli, BaselineExamples) {
    {
        std::ofstream below(path("below.txt"));
        for (int i = 0; i < 8; ++i) below << i << "\n";
    }
    const CliResult all = run("baseline --data " + path("below.txt") + " --mu 100 --samples 50 --seed 3");
    ASSERT_EQ(all.code, 0);
    EXPECT_EQ(nlohmann::json::parse(all.out)["eps_hat"], 1.0);

    const CliResult bal = run("baseline --data " + path("iota.txt") + " --mu 16 --samples 100 --seed 4");
    ASSERT_EQ(bal.code, 0);
    const auto j = nlohmann::json::parse(bal.out);
    EXPECT_LE(std::abs(j["eps_hat"].get<double>()), 2.0 * 5.0 / 10.0);
    EXPECT_EQ(j["m"], 100);
    EXPECT_EQ(run("baseline --data " + path("iota.txt") + " --mu 16 --samples 0").code, 1);
}

TEST_F(Cli, Deterministic) {
    const std::vector<std::string> commands = {"estimate --data " + path("iota.txt") + " --mu 20 --mode sample --seed 8",
          "median --data " + path("iota.txt") + " --mode sample --seed 2",
          "sweep --eps 0.03 --beta-max 20 --n 8 --seed 4", "check --n 5 --seed 6",
          "baseline --data " + path("iota.txt") + " --mu 10 --samples 1000 --seed 1"};
    for (const std::string& args : commands) {
        const CliResult a = run(args);
        const CliResult b = run(args);
        EXPECT_EQ(a.code, 0) << args;
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.out.empty()) << args;
    }
    ASSERT_EQ(run("gen --n 6 --eps -0.2 --seed 3 --out " + path("g1.txt")).code, 0);
    ASSERT_EQ(run("gen --n 6 --eps -0.2 --seed 3 --out " + path("g2.txt")).code, 0);
    EXPECT_EQ(slurp(path("g1.txt")), slurp(path("g2.txt")));
}
