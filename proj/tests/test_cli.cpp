#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "helpers.hpp"

namespace {

struct CmdResult {
    int status = -1;
    std::string out;  // stdout and stderr merged
};

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + "\"" GCE_CLI_BIN "\" " + args + " 2>&1";
    CmdResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int raw = pclose(pipe);
    res.status = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    return res;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
    out.close();
    return path;
}

}  // namespace

TEST_CASE("cli basic transforms and predicates", "[cli]") {
    CHECK(run_cli("transpose 01/00").out == "00\n10\n");
    CHECK(run_cli("canon 11/10").out == "01\n11\n");
    CHECK(run_cli("irreducible 01/11").out == "true\n");
    CHECK(run_cli("irreducible 10/01").out == "false\n");
    CHECK(run_cli("cofinal 0111/1000/1000/1000").out == "1 2 3 4\n");
    CHECK(run_cli("cofinal 111/000/100 --vertex 2").out == "false\n");
    CHECK(run_cli("edge-matrix 11/10").out == "110\n001\n110\n");
    CHECK(run_cli("k0 1111/1011/1101/1110").out == "Z2+Z6, identity order 3\n");
}

TEST_CASE("cli exit codes", "[cli]") {
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("irreducible 01/11").status == 0);
    CHECK(run_cli("no-such-command").status == 2);   // parse error
    CHECK(run_cli("").status == 2);                  // a subcommand is required
    CHECK(run_cli("equiv 11/10").status == 2);       // two matrices expected
    const CmdResult bad = run_cli("irreducible 11/1");
    CHECK(bad.status == 1);                          // malformed matrix
    CHECK(contains(bad.out, "error"));
}

TEST_CASE("cli size limit override", "[cli]") {
    const CmdResult blocked = run_cli("irreducible 1111/1011/1101/1110", "GCE_MAX_N=3");
    CHECK(blocked.status == 1);
    CHECK(contains(blocked.out, "error"));
    CHECK(run_cli("irreducible 111/101/100", "GCE_MAX_N=3").status == 0);
    // An unparsable override falls back to the built-in limit.
    CHECK(run_cli("irreducible 1111/1011/1101/1110", "GCE_MAX_N=banana").status == 0);
}

TEST_CASE("cli file input with comments", "[cli]") {
    const auto path = temp_file("gce_cli_input.01m",
                                "# dense four-vertex example\n"
                                "1101\n0010\n"
                                "1110  # trailing comment\n"
                                "1101\n");
    const CmdResult res = run_cli("class --no-perms \"" + path.string() + "\"");
    REQUIRE(res.status == 0);
    CHECK(contains(res.out, "size: 60"));
    CHECK(contains(res.out, "exhausted: true"));
    std::filesystem::remove(path);
}

TEST_CASE("cli class dump", "[cli]") {
    const auto dump = std::filesystem::temp_directory_path() / "gce_cli_dump.txt";
    const CmdResult res = run_cli("class --no-perms 111/101/100 --dump \"" + dump.string() + "\"");
    REQUIRE(res.status == 0);
    CHECK(contains(res.out, "size: 3"));
    std::ifstream in(dump);
    REQUIRE(in.good());
    std::string line;
    int lines = 0;
    bool found_self = false;
    while (std::getline(in, line)) {
        ++lines;
        if (line == "111/101/100") found_self = true;
    }
    CHECK(lines == 3);
    CHECK(found_self);
    in.close();
    std::filesystem::remove(dump);
}

TEST_CASE("cli transfers and moves", "[cli]") {
    const CmdResult moves = run_cli("reverse-transfers 0111/1000/1000/1000");
    REQUIRE(moves.status == 0);
    CHECK(contains(moves.out, "p=3 K={} M={2}"));
    const CmdResult applied = run_cli("apply-transfer 0111/1000/1000/1000 --p 3 --M 2");
    CHECK(applied.out == "0111\n1000\n0100\n1000\n");

    const CmdResult eq = run_cli("equiv 111/101/100 011/111/010");
    REQUIRE(eq.status == 0);
    CHECK(contains(eq.out, "equivalent: true"));
    const CmdResult neq = run_cli("equiv --no-perms 111/101/100 011/111/010");
    CHECK(contains(neq.out, "equivalent: false"));
}

TEST_CASE("cli explosions agree with the library", "[cli]") {
    const gce::VertexSplit split{0, 0b100, 0b011};  // M1 = {2}, M2 = {0, 1}
    const std::string expected = gce::serialize_matrix(gce::vertex_explosion(gcetest::Bexp1, split));
    CHECK(run_cli("explode 111/000/100 --vertex 1 --m1 3 --m2 1,2").out == expected);
    // Omitting --m2 defaults to the remaining out-edges.
    CHECK(run_cli("explode 111/000/100 --vertex 1 --m1 3").out == expected);

    CHECK(run_cli("complete-explode 111/000/100 --vertex 1").out ==
          gce::serialize_matrix(gcetest::Bexp3));

    const CmdResult rec = run_cli("is-explosion 111/110/101 1101/0010/1110/1101");
    REQUIRE(rec.status == 0);
    CHECK(contains(rec.out, "explosion: true"));
    CHECK(run_cli("is-explosion 11/00 111/000/000").out == "explosion: false\n");
}

TEST_CASE("cli factorizations", "[cli]") {
    const CmdResult ver = run_cli("esse-verify 11/01 110/001/001 --R \"1 1 0/0 0 1\" --S \"1 0/0 1/0 1\"");
    REQUIRE(ver.status == 0);
    CHECK(contains(ver.out, "esse: true"));
    CHECK(contains(ver.out, "column_subdivision: true"));

    const CmdResult dec = run_cli("esse-decide 111/110/101 1101/0010/1110/1101");
    REQUIRE(dec.status == 0);
    CHECK(contains(dec.out, "esse-cs: true"));

    CHECK(run_cli("imprimitivity --R \"1 1 0/0 0 1\" --S \"1 0/0 1/0 1\"").out ==
          "00110\n00001\n10000\n01000\n01000\n");
}

TEST_CASE("cli json envelope", "[cli]") {
    const CmdResult res = run_cli("--json k0 1111/1011/1101/1110");
    REQUIRE(res.status == 0);
    const nlohmann::json doc = nlohmann::json::parse(res.out);
    CHECK(doc.at("command") == "k0");
    REQUIRE(doc.at("inputs").size() == 1);
    CHECK(doc.at("inputs")[0] == nlohmann::json::array({"1111", "1011", "1101", "1110"}));
    CHECK(doc.at("result").at("group") == "Z2+Z6");
    CHECK(doc.at("result").at("identity_order") == 3);
    CHECK(doc.at("stats").contains("elapsed_ms"));
    CHECK(doc.at("stats").contains("visited"));

    const CmdResult pairs = run_cli("--json k0-pairs 1111/1011/1101/1110 0111/1011/1101/1100");
    const nlohmann::json pdoc = nlohmann::json::parse(pairs.out);
    CHECK(pdoc.at("result").at("isomorphic") == "true");

    const CmdResult search = run_cli("--json search --n 2");
    const nlohmann::json sdoc = nlohmann::json::parse(search.out);
    CHECK(sdoc.at("result").at("filtered") == 3);
    CHECK(sdoc.at("result").at("classes").size() == 1);
    CHECK(sdoc.at("result").at("counterexamples").empty());
    CHECK(sdoc.at("result").at("complete") == true);
}

TEST_CASE("cli search text output", "[cli]") {
    const CmdResult res = run_cli("search --n 3");
    REQUIRE(res.status == 0);
    CHECK(contains(res.out, "canonical classes: 7"));
    CHECK(contains(res.out, "counterexample pairs: 0"));
    CHECK(contains(res.out, "complete: true"));
}
