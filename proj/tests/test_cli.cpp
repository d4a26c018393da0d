#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(MPDIST_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("mpdist_cli_test_" + name)).string();
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("bset --kind grid --param d=4 --param m=2").code == 2);  // missing partition
    CHECK(run("bset --kind grid --param d=4 --param m=2 -p 1,3").code == 2);
    CHECK(run("bset --kind cube --param d=4 -p 2,2").code == 2);
    CHECK(run("bset --kind grid --param d=4 --param m=x -p 2,2").code == 2);
    CHECK(run("--format xml exponents -p 2,2").code == 2);
    CHECK(run("--include-diagonal --exclude-diagonal bset --kind grid --param d=4 --param m=2 -p 2,2").code == 2);
    CHECK(run("--pair-budget 10 bset --kind grid --param d=4 --param m=2 -p 2,2").code == 2);
    CHECK(run("energy --kind grid --param d=1 --param m=1").code == 2);
    CHECK(run("pigeonhole --kind grid --param d=4 --param m=2 -p 2,2 --block 3").code == 2);
    CHECK(run("bset --input /nonexistent/file -p 2,2").code == 2);
    CHECK(run("--help").code == 0);
    CHECK(run("exponents -p 2,2").code == 0);
}

TEST_CASE("bset output formats") {
    const auto r = run("bset --kind grid --param d=4 --param m=3 -p 2,2");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["count"] == 36);
    CHECK(j["includes_diagonal"] == true);
    CHECK(j["total_pairs"] == 81 * 81);

    const auto off = nlohmann::json::parse(run("--exclude-diagonal bset --kind grid --param d=4 --param m=3 -p 2,2").out);
    CHECK(off["count"] == 35);
    CHECK(off["includes_diagonal"] == false);

    const auto csv = run("--format csv bset --kind grid --param d=4 --param m=2 -p 2,2");
    CHECK(csv.out.rfind("t1,t2,nu\n0,0,16\n", 0) == 0);
    const auto table = run("--format table bset --kind sphere_pair --param R=25 -p 2,2");
    CHECK(table.out.find("|B|             1") != std::string::npos);
}

TEST_CASE("generate then count from file") {
    const std::string path = temp_path("points.txt");
    REQUIRE(run("--seed 4 generate --kind random_cube --param d=5 --param n=40 --param M=6 -o " + path).code == 0);
    const auto from_file = run("bset -i " + path + " -p 2,3");
    const auto direct = run("--seed 4 bset --kind random_cube --param d=5 --param n=40 --param M=6 -p 2,3");
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == direct.out);

    const std::string pair = temp_path("pair.txt");
    REQUIRE(run("generate --kind sphere_pair --param R=25 -p 2,3 -o " + pair).code == 0);
    CHECK(nlohmann::json::parse(run("bset -i " + pair + " -p 2,3").out)["count"] == 1);
    std::filesystem::remove(path);
    std::filesystem::remove(pair);
}

TEST_CASE("generate prints the point file in table format") {
    const auto r = run("--format table generate --kind grid --param d=2 --param m=2");
    CHECK(r.out == "dim=2 n=4\n0 0\n0 1\n1 0\n1 1\n");
}

TEST_CASE("worker count does not change output") {
    for (const std::string cmd : {"bset --kind random_cube --param d=4 --param n=300 --param M=12 -p 2,2 --top 20",
                                  "energy --kind jittered_grid --param d=3 --param m=5 --param J=2 -s 2.5",
                                  "scan --kind random_cube --param d=4 --param M=20 --ladder n=100,200,400 -p 2,2"}) {
        const auto a = run("--seed 9 --threads 1 " + cmd);
        const auto b = run("--seed 9 --threads 8 " + cmd);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out == run("--seed 9 --threads 1 " + cmd).out);
    }
}

TEST_CASE("scan from a config file") {
    const std::string cfg = temp_path("scan.json");
    {
        std::ofstream os(cfg);
        os << R"({"generator": {"kind": "grid", "params": {"d": 4, "m": 3}},
                  "ladder": {"param": "m", "values": [3, 4, 5, 6]},
                  "partition": [2, 2], "include_diagonal": true})";
    }
    const auto r = run("scan --config " + cfg);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["run"]["measurements"][0]["b_count"] == 36);
    CHECK(j["run"]["fast_path"] == true);
    CHECK(j["run"]["include_diagonal"] == true);
    CHECK(j["comparison"]["wording"] == "consistent at tested scale");
    const auto csv = run("--format csv scan --config " + cfg);
    CHECK(csv.out.rfind("param,n,b_count\n3,81,36\n", 0) == 0);
    {
        std::ofstream os(cfg);
        os << "{ not json";
    }
    CHECK(run("scan --config " + cfg).code == 2);
    std::filesystem::remove(cfg);
}

TEST_CASE("energy and pigeonhole JSON") {
    const auto e = nlohmann::json::parse(run("energy --kind grid --param d=2 --param m=2 -s 2").out);
    CHECK(e["energy"].get<double>() == doctest::Approx(1.25));
    CHECK(e["min_sep_sq_ratio"] == "1/2");
    CHECK(e["adaptable"] == true);
    const auto p = nlohmann::json::parse(
        run("pigeonhole --kind grid --param d=4 --param m=3 -p 2,2 --block 2 --alpha 1/2").out);
    CHECK(p["regular"]["n"] == 81);
    CHECK(p["rich"]["threshold"] == 9);
    CHECK(p["rich"]["rich_count"] == 9);
    const auto h = run("--format csv pigeonhole --kind grid --param d=4 --param m=3 -p 2,2");
    CHECK(h.out == "class_low,class_high,fiber_count,point_count\n8,16,9,81\n");
}

TEST_CASE("exponents command") {
    const auto j = nlohmann::json::parse(run("exponents -p 2,2,2").out);
    bool found = false;
    for (const auto& e : j["entries"])
        if (e["key"] == "tau") {
            found = true;
            CHECK(e["value"] == "123/460");
        }
    CHECK(found);
    CHECK(nlohmann::json::parse(run("exponents --all 8").out).size() == 7);
    CHECK(run("--format table exponents -p 2,3").out.find("3/10") != std::string::npos);
    CHECK(run("--format csv exponents -p 2,3").out.find("\"(2,3)\",trivial,3/10,0.300000,lower-bound") !=
          std::string::npos);
}

TEST_CASE("check command") {
    const auto r = run("check --sizes 8,16 --instances 2");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["all_passed"] == true);
    CHECK(run("check --sizes 8,16 --instances 2 --threads 5").out == r.out);
}
