#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("plateau_cli_" + std::to_string(::getpid()) + "_"
                                            + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome run(const std::string& args) const
    {
        const auto out = dir_ / "stdout.txt";
        const auto err = dir_ / "stderr.txt";
        const std::string cmd = std::string("'") + PLATEAU_LAB_PATH + "' " + args + " > '" + out.string() + "' 2> '"
                                + err.string() + "'";
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    }

    [[nodiscard]] fs::path path(const std::string& name) const { return dir_ / name; }

private:
    fs::path dir_;
};

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');)
        out.push_back(f);
    return out;
}

} // namespace

TEST_F(Cli, HelpMatchesGoldenFiles)
{
    EXPECT_EQ(run("--help").out, slurp(fs::path(GOLDEN_DIR) / "help.txt"));
    for (const char* sub : {"simulate", "sweep", "exact", "bounds", "drift-check", "compliance", "restarts", "wmodel",
                            "trajectory", "plot"}) {
        const auto res = run(std::string(sub) + " --help");
        EXPECT_EQ(res.code, 0) << sub;
        EXPECT_EQ(res.out, slurp(fs::path(GOLDEN_DIR) / ("help_" + std::string(sub) + ".txt"))) << sub;
    }
}

TEST_F(Cli, BoundsOutput)
{
    const auto res = run("bounds --n 4 --r 2");
    ASSERT_EQ(res.code, 0) << res.err;
    const auto ls = lines(res.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], "n,r,lambda,delta,plateau_bound_center,asym_bound");
    const auto f = fields(ls[1]);
    ASSERT_EQ(f.size(), 6u);
    EXPECT_EQ(f[2], "9");
    EXPECT_NEAR(std::stod(f[4]), 60.0, 1e-12 * 60);
}

TEST_F(Cli, ExactValues)
{
    auto res = run("exact --n 2 --r 1");
    ASSERT_EQ(res.code, 0) << res.err;
    EXPECT_EQ(res.out, "function,n,r,ell,init,expected\nmajority,2,1,1,uniform,2.5\n");
    res = run("exact --function plateau --n 4 --r 2 --all-levels");
    ASSERT_EQ(res.code, 0) << res.err;
    EXPECT_EQ(res.out, "ones,expected\n0,0\n1,7\n2,8\n3,7\n4,0\n");
}

TEST_F(Cli, DriftCheckAndAssertionExit)
{
    auto res = run("drift-check --n 4 --r 2");
    EXPECT_EQ(res.code, 0) << res.err;
    EXPECT_EQ(lines(res.out).size(), 3u);
    // Demanding positive slack fails on the tight level.
    res = run("drift-check --n 4 --r 2 --tolerance -1");
    EXPECT_EQ(res.code, 3);
    EXPECT_NE(res.err.find("assertion failed"), std::string::npos);
}

TEST_F(Cli, ComplianceTable)
{
    const auto res = run("compliance --n 4 --ell 1 n --mode elitist");
    ASSERT_EQ(res.code, 0) << res.err;
    const auto ls = lines(res.out);
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(ls[1], "4,1,elitist,true,,,,,");
    EXPECT_EQ(ls[2].rfind("4,4,elitist,false,0,1,", 0), 0u);
}

TEST_F(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run("bounds --n 5 --r 1").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("simulate --ell 0 --n 10").code, 2);
    EXPECT_EQ(run("simulate --n 10 --r 9").code, 2);
    EXPECT_EQ(run("plot").code, 2);
    EXPECT_EQ(run("compliance --mode sideways").code, 2);
    EXPECT_EQ(run("sweep --svg").code, 2);
    EXPECT_EQ(run("exact --n 4 5").code, 2);
}

TEST_F(Cli, IoErrorsExitOne)
{
    EXPECT_EQ(run("bounds --out /nonexistent-dir/b.csv").code, 1);
    EXPECT_EQ(run("plot --in " + path("missing.csv").string()).code, 1);
}

TEST_F(Cli, SweepIsDeterministicAcrossWorkers)
{
    const std::string args = "sweep --n 10 20 --ell 1 3 n/2 --r 2 --runs 50 --seed 9";
    const auto a = run(args + " --workers 1");
    const auto b = run(args + " --workers 4");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(lines(a.out).size(), 7u);
}

TEST_F(Cli, SweepSvgAndPlot)
{
    const auto csv = path("sweep.csv");
    auto res = run("sweep --n 10 20 --ell 1 n/2 --r 2 --runs 20 --svg --out " + csv.string());
    ASSERT_EQ(res.code, 0) << res.err;
    ASSERT_TRUE(fs::exists(csv));
    EXPECT_EQ(lines(slurp(csv)).front(), "n,r,ell,runs,mean,median,p25,p75,stderr,censored");
    boost::property_tree::ptree t;
    ASSERT_NO_THROW(boost::property_tree::read_xml(path("sweep.svg").string(), t));

    const auto svg = path("plot.svg");
    res = run("plot --in " + csv.string() + " --x n --group ell --log-y --title 'a & b' --out " + svg.string());
    ASSERT_EQ(res.code, 0) << res.err;
    boost::property_tree::ptree t2;
    ASSERT_NO_THROW(boost::property_tree::read_xml(svg.string(), t2));
    EXPECT_EQ(run("plot --in " + csv.string() + " --x q").code, 2);
}

TEST_F(Cli, TrajectoryReachesThreshold)
{
    const auto res = run("trajectory --n 40 --r 3 --seed 5");
    ASSERT_EQ(res.code, 0) << res.err;
    const auto ls = lines(res.out);
    ASSERT_GE(ls.size(), 2u);
    EXPECT_EQ(ls[0], "t,ones,fitness");
    EXPECT_GE(std::stoi(fields(ls.back())[1]), 23);
    EXPECT_EQ(fields(ls.back())[2], "1");
}

TEST_F(Cli, SimulateSummaryRow)
{
    const auto res = run("simulate --n 2 --r 1 --runs 20000 --seed 4");
    ASSERT_EQ(res.code, 0) << res.err;
    const auto ls = lines(res.out);
    ASSERT_EQ(ls.size(), 2u);
    const auto f = fields(ls[1]);
    ASSERT_EQ(f.size(), 10u);
    EXPECT_LE(std::fabs(std::stod(f[4]) - 2.5), 3 * std::stod(f[8]));
}

TEST_F(Cli, RestartsAndDilutionChecks)
{
    auto res = run("restarts --n 40 --r 3 --runs 2000 --seed 3");
    EXPECT_EQ(res.code, 0) << res.err;
    EXPECT_EQ(lines(res.out).size(), 2u);
    res = run("wmodel --blocks 5 --k 4 --runs 2000 --seed 3");
    EXPECT_EQ(res.code, 0) << res.err;
    EXPECT_EQ(fields(lines(res.out)[1]).size(), 10u);
}

TEST_F(Cli, ConfigFileWithCommandLineOverride)
{
    const auto ini = path("c.ini");
    std::ofstream(ini) << "[bounds]\nn=10\nr=2\n";
    auto res = run("--config " + ini.string() + " bounds");
    ASSERT_EQ(res.code, 0) << res.err;
    EXPECT_EQ(fields(lines(res.out)[1])[0], "10");
    EXPECT_EQ(fields(lines(res.out)[1])[1], "2");
    res = run("--config " + ini.string() + " bounds --n 12");
    ASSERT_EQ(res.code, 0) << res.err;
    EXPECT_EQ(fields(lines(res.out)[1])[0], "12");
    EXPECT_EQ(fields(lines(res.out)[1])[1], "2");
    EXPECT_EQ(run("--config " + path("none.ini").string() + " bounds").code, 2);
}
