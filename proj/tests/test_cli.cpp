#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "tricolor/cli.hpp"
#include "tricolor/heights.hpp"

using namespace tricolor;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/tricolor_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("count emits the partition") {
    TempFile out("count.json");
    int code = cli::run({"count", "--d", "1", "--n", "6", "--out", out.path});
    CHECK(code == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j.at("schema") == "1");
    CHECK(j.at("total") == "22");
    REQUIRE(j.at("counts").size() == 3);
    // lexicographic slope order: -6, 0, 6
    CHECK(j.at("counts")[0].at("m")[0] == -6);
    CHECK(j.at("counts")[0].at("count") == "1");
    CHECK(j.at("counts")[1].at("count") == "20");
    CHECK(j.at("counts")[2].at("count") == "1");
}

TEST_CASE("count is deterministic byte for byte") {
    TempFile a("count_a.json"), b("count_b.json");
    CHECK(cli::run({"count", "--d", "2", "--n", "4", "--out", a.path}) == 0);
    CHECK(cli::run({"count", "--d", "2", "--n", "4", "--out", b.path}) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("classify reads a function file") {
    TempFile fn("fn.json"), out("classify.json");
    Coloring f{Dims::of(1, 6), {0, 1, 2, 0, 1, 2}};
    std::ofstream(fn.path) << to_json(f).dump();
    CHECK(cli::run({"classify", "--in", fn.path, "--out", out.path}) == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j.at("slope")[0] == 6);
}

TEST_CASE("verify suite exit codes") {
    TempFile out("verify.json");
    CHECK(cli::run({"verify", "bijection", "--d", "1", "--n", "6", "--out", out.path}) == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j.at("ok") == true);
    CHECK(j.at("failures").empty());
}

TEST_CASE("usage errors exit 2, infeasible exits 3") {
    CHECK(cli::run({"count", "--d", "1"}) == 2);         // missing --n
    CHECK(cli::run({"nonsense"}) == 2);                  // unknown subcommand
    CHECK(cli::run({"count", "--d", "3", "--n", "4"}) == 3);  // TooLarge
}

TEST_CASE("sample stream determinism and formats") {
    TempFile a("samples_a.jsonl"), b("samples_b.jsonl"), c("samples.csv");
    CHECK(cli::run({"sample", "--d", "1", "--n", "6", "--draws", "20", "--seed", "5", "--out", a.path}) == 0);
    CHECK(cli::run({"sample", "--d", "1", "--n", "6", "--draws", "20", "--seed", "5", "--out", b.path}) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(cli::run({"sample", "--d", "1", "--n", "6", "--draws", "20", "--seed", "5", "--format", "csv", "--out",
                    c.path}) == 0);
    std::string csv = slurp(c.path);
    CHECK(csv.rfind("chain,index,v0", 0) == 0);

    // glauber stream stays proper
    TempFile g("samples_g.jsonl");
    CHECK(cli::run({"sample", "--d", "2", "--n", "4", "--method", "glauber", "--draws", "10", "--burn-in", "20",
                    "--seed", "7", "--out", g.path}) == 0);
    std::istringstream is(slurp(g.path));
    std::string line;
    int count = 0;
    while (std::getline(is, line)) {
        Json rec = Json::parse(line);
        Coloring f{Dims::of(2, 4), rec.at("values").get<std::vector<uint8_t>>()};
        CHECK(validate(f).empty());
        ++count;
    }
    CHECK(count == 10);
}

TEST_CASE("psi and psi-inverse round trip through files") {
    TempFile in("qp.json"), mid("t.json"), back("back.json");
    QpHeight h{Dims::of(1, 6), Vec::axis(1, 0, 6), {0, 1, 2, 3, 4, 5}};
    std::ofstream(in.path) << to_json(h).dump();
    CHECK(cli::run({"psi", "--in", in.path, "--out", mid.path}) == 0);
    Json tj = Json::parse(slurp(mid.path));
    CHECK(tj.at("slope")[0] == 0);
    CHECK(cli::run({"psi-inverse", "--in", mid.path, "--m", "6", "--out", back.path}) == 0);
    QpHeight round = qp_from_json(Json::parse(slurp(back.path)));
    CHECK(round == h);
    // byte-identical original file content
    CHECK(Json::parse(slurp(back.path)) == to_json(h));
}

TEST_CASE("stats over a sample stream") {
    TempFile s("stats_in.jsonl"), out("stats.json");
    CHECK(cli::run({"sample", "--d", "2", "--n", "4", "--draws", "200", "--seed", "3", "--out", s.path}) == 0);
    CHECK(cli::run({"stats", "--in", s.path, "--d", "2", "--n", "4", "--x", "0,0", "--out", out.path}) == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j.at("samples") == 200);
    CHECK(j.at("slope_event_freq") == "0/1");  // only slope 0 exists at n=4
    CHECK(j.contains("a_x"));
    CHECK(j.contains("boundary_histogram"));
    CHECK(j.at("mean_rho").size() == 2);
}
