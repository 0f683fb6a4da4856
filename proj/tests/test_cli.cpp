#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / ("pillow-cli-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

Run run(const std::string& args) {
    const std::string cmd = "PILLOW_CACHE_DIR='" + scratch_dir().string() + "' '" PILLOW_BINARY "' " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("render golden outputs") {
    Run lp = run("render local-poly 2 2 --format json");
    CHECK(lp.code == 0);
    CHECK(lp.out == "[{\"exponents\":[2,0],\"num\":\"2\",\"den\":\"1\"},{\"exponents\":[0,2],\"num\":\"2\",\"den\":\"1\"}]\n");

    Run v1 = run("render volume 1 --format text");
    CHECK(v1.code == 0);
    CHECK(v1.out == "pi^4 * 1/1\n");

    Run v2 = run("render volume 2 --format latex-table");
    CHECK(v2.code == 0);
    CHECK(v2.out.find("\\begin{tabular}") == 0);
    CHECK(v2.out.find("60\\zeta(6) = \\frac{4}{63}\\pi^{6}") != std::string::npos);
    CHECK(v2.out.find("Subtotal (1 cylinder) & & & & $\\frac{4}{27}\\pi^{6}$") != std::string::npos);
    CHECK(v2.out.find("Subtotal (2 cylinders) & & & & $\\frac{2}{9}\\pi^{6}$") != std::string::npos);
    CHECK(v2.out.find("Subtotal (3 cylinders) & & & & $\\frac{7}{54}\\pi^{6}$") != std::string::npos);
    CHECK(v2.out.find("Total & & & & $\\frac{1}{2}\\pi^{6}$") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("render nonsense 1").code == 2);
    CHECK(run("render local-poly 2").code == 2);
    CHECK(run("render local-poly 1 2").code == 2);
    CHECK(run("volume --K 1 --no-such-flag").code == 2);
    CHECK(run("local-poly --m 2").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("covers count --K 1 --method naive --max-degree 6").code == 2);
    CHECK(run("ribbon count --m 2 --n 2 --graph-id 9 --widths 1,1").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("local-poly json") {
    Run r = run("--no-meta local-poly --m 1 --n 3 --method auto");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["text"] == "w1^2");
    CHECK(j["faces"] == 1);
    CHECK(!j.contains("meta"));
    Run meta = run("local-poly --m 1 --n 3");
    CHECK(nlohmann::json::parse(meta.out).contains("meta"));
}

TEST_CASE("output is independent of the job count") {
    for (const std::string args : {"volume --K 3 --per-tree", "covers count --K 1 --max-degree 8",
                                   "ribbon fit --m 2 --n 2", "ribbon enumerate --m 2 --n 2"}) {
        Run one = run("--no-meta --jobs 1 " + args);
        Run many = run("--no-meta --jobs 4 " + args);
        INFO(args);
        CHECK(one.code == 0);
        CHECK(one.out == many.out);
        CHECK(one.out == run("--no-meta " + args).out);
    }
}

TEST_CASE("ribbon subcommands") {
    auto e = nlohmann::json::parse(run("--no-meta ribbon enumerate --m 2 --n 2").out);
    CHECK(e["count"] == 5);
    auto c = nlohmann::json::parse(run("--no-meta ribbon count --m 1 --n 3 --graph-id 0 --widths 4").out);
    CHECK(c["count"].is_string());
    auto f = nlohmann::json::parse(run("--no-meta ribbon fit --m 2 --n 2").out);
    CHECK(f["equal"] == true);
    CHECK(f["fit_text"] == f["closed_text"]);
}

TEST_CASE("covers subcommands") {
    auto fast = nlohmann::json::parse(run("--no-meta covers count --K 1 --max-degree 5").out);
    auto naive = nlohmann::json::parse(run("--no-meta covers count --K 1 --max-degree 5 --method naive").out);
    CHECK(fast["by_degree"] == naive["by_degree"]);
    CHECK(std::filesystem::exists(scratch_dir() / "characters.txt"));

    Run r = run("--no-meta covers ratio --K 1 --degrees 10,20");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["ratio"].get<double>() > 0);
}

TEST_CASE("volume subcommand") {
    auto j = nlohmann::json::parse(run("--no-meta volume --K 2 --per-tree").out);
    CHECK(j["volume"]["text"] == "pi^6 * 1/2");
    CHECK(j["matches_closed_formula"] == true);
    CHECK(j["contributions"].size() == 6);
    CHECK(run("volume --K 1 --format text").out == "pi^4 * 1/1\n");
}

TEST_CASE("verify") {
    Run ok = run("verify --K-max 2");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("pi^4 * 1/1") != std::string::npos);
    CHECK(ok.out.find("pi^6 * 1/2") != std::string::npos);
    CHECK(ok.out.find(", 0 failed") != std::string::npos);

    Run bad = run("verify --inject-fault --K-max 1 --mn-max 4 --cover-N-max 3");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("first failure: closed = recurrence (0,2)\n  lhs: 2\n  rhs: 1\n") != std::string::npos);

    CHECK(run("verify --mn-max 8").code == 0);
    std::filesystem::remove_all(scratch_dir());
}
