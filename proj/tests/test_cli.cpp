#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "septimal/relations.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string &args)
{
    const std::string cmd = std::string(SEPTIMAL_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json report(const std::string &args, int expected_code = 0)
{
    const Run r = run(args + " --json");
    CHECK(r.code == expected_code);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema") == 1);
    return j;
}

std::string shipped_text()
{
    std::ifstream in(septimal::default_relations_path());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string write_temp(const std::string &name, const std::string &text)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST_CASE("series prints coefficients")
{
    CHECK(run("series a --terms 5").out.find("1, 3, 7, 16, 32\n") != std::string::npos);
    CHECK(run("series p -n 6").out.find("1, 1, 2, 3, 5, 7\n") != std::string::npos);

    const auto t = report("series t --terms 3");
    CHECK(t.at("command") == "series");
    CHECK(t.at("offset") == 0);
    CHECK(t.at("coefficients") == nlohmann::json::array({0, 1, 4}));

    const auto A = report("series A --terms 1");
    CHECK(A.at("offset") == -2);
    CHECK(A.at("coefficients").size() == 3);

    const auto m = report("series a --terms 30 --mod-exp 1");
    for (const auto &c : m.at("coefficients"))
        CHECK(c.get<long>() >= 0);
}

TEST_CASE("congruence command")
{
    const auto j = report("congruence --alpha 2 --nmax 100");
    CHECK(j.at("pass") == true);
    CHECK(j.at("lambda") == 2);
    CHECK(j.at("modexp") == 1);
    CHECK(j.at("nonzero_residues").empty());
    CHECK(j.at("checked") == 101);
    CHECK(run("congruence --classic --nmax 300").code == 0);
    CHECK(run("congruence --nmax 10").code == 2);
}

TEST_CASE("relations command")
{
    const auto one = report("relations --only UB,1,-1 --prec 100");
    CHECK(one.at("total") == 1);
    CHECK(one.at("relations")[0].at("key") == "UB,1,-1");
    CHECK(one.at("pass") == true);

    const auto all = report("relations --prec 60");
    CHECK(all.at("passed") == 42);
    CHECK(run("relations --only UB,1,99").code == 2);
}

TEST_CASE("corrupted relation file fails with the offending key")
{
    auto text = shipped_text();
    const auto pos = text.find("\"c\": 8,");
    REQUIRE(pos != std::string::npos);
    text[pos + 5] = '9';
    const auto path = write_temp("septimal_cli_corrupt.json", text);
    const auto j = report("relations --prec 60 --file " + path, 1);
    CHECK(j.at("pass") == false);
    CHECK(j.at("failures").size() == 1);

    const auto broken = write_temp("septimal_cli_broken.json", "{\n  \"relations\": [\n");
    CHECK(run("relations --file " + broken).code == 2);
    CHECK(run("relations --file /nonexistent/relations.json").code == 2);
}

TEST_CASE("environment override selects the relation file")
{
    auto text = shipped_text();
    const auto pos = text.find("\"c\": 8,");
    REQUIRE(pos != std::string::npos);
    text[pos + 5] = '9';
    const auto path = write_temp("septimal_cli_env.json", text);
    const Run r = run("relations --prec 40 --file " + path);
    const std::string env = "SEPTIMAL_RELATIONS=" + path + " ";
    const std::string cmd = env + SEPTIMAL_CLI_PATH + " relations --prec 40 > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(r.code == 1);
    CHECK(WEXITSTATUS(status) == 1);
}

TEST_CASE("modeq and lemma")
{
    const auto j = report("modeq --prec 120");
    CHECK(j.at("residual_zero") == true);
    CHECK(j.at("s_table_integral") == true);
    CHECK(j.at("s_table").size() == 7);
    const auto lemma = report("modeq --prec 30 --lemma --j=-3..3");
    CHECK(lemma.at("lemma").size() == 28);
    CHECK(lemma.at("pass") == true);
    CHECK(run("modeq --lemma --j 3..1").code == 2);
}

TEST_CASE("membership command")
{
    const auto j = report("membership --alpha 0");
    CHECK(j.at("pass") == true);
    CHECK(j.at("membership").at("min_slack") == 0);
    const auto l3 = report("membership --alpha 1 --prec 40");
    CHECK(l3.at("pass") == true);
    CHECK(l3.at("cross_check").at("pass") == true);
    CHECK(run("membership --alpha 2").code == 2);
}

TEST_CASE("exit codes for usage and precision errors")
{
    CHECK(run("").code == 2);
    CHECK(run("bogus").code == 2);
    CHECK(run("series t --mod-exp 0").code == 2);
    CHECK(run("series nonsense").code == 2);
    CHECK(run("membership --alpha 0 --prec 5").code == 3);
    CHECK(run("membership --alpha 0 --mod-exp 4").code == 3);
    CHECK(run("--help").code == 0);
}

TEST_CASE("reports are deterministic apart from wall time")
{
    for (const std::string args : {"relations --prec 50", "congruence --alpha 3 --nmax 40", "series M --terms 40"}) {
        auto a = report(args);
        auto b = report(args);
        CHECK(a.contains("wall_time_seconds"));
        a.erase("wall_time_seconds");
        b.erase("wall_time_seconds");
        CHECK(a.dump() == b.dump());
    }
}
