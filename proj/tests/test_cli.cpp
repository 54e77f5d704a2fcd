#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(PERMWEYL_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string data(const std::string& name) { return std::string(PERMWEYL_TESTDATA) + "/" + name; }

}  // namespace

TEST_CASE("validate accepts the corpus graphs") {
    for (const char* g : {"bowtie.graph", "golden.graph", "o2.graph", "o3.graph", "o4.graph"}) {
        auto r = run("validate " + data(g));
        CHECK(r.status == 0);
        CHECK(r.out == "valid\n");
    }
}

TEST_CASE("usage errors exit 2") {
    auto r = run("paths");
    CHECK(r.status == 2);
    auto unknown = run("frobnicate " + data("bowtie.graph"));
    CHECK(unknown.status == 2);
}

TEST_CASE("data errors exit 1") {
    auto r = run("paths /nonexistent.graph --level 2");
    CHECK(r.status == 1);
    auto bad = run("check " + data("bowtie.graph") + " --level 2 --perm '(xx,yy)'");
    CHECK(bad.status == 1);
}

TEST_CASE("negative mathematical answers exit 0") {
    auto r = run("check " + data("golden.graph") +
                 " --level 3 --perm '(111,132,321)(113,323)' --json");
    CHECK(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["first"]["synchronizing"] == true);
    CHECK(j["first"]["delay"] == 3);
    CHECK(j["second"]["synchronizing"] == false);
    CHECK(j["automorphism"] == false);
    CHECK(j["second"]["witness"].contains("cycle1"));
}

TEST_CASE("paths and count-perms") {
    auto r = run("paths " + data("bowtie.graph") + " --level 2");
    CHECK(r.status == 0);
    CHECK(r.out.find("de\n") != std::string::npos);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 12);

    auto counts = run("count-perms " + data("bowtie.graph") + " --level 3");
    CHECK(counts.out == "373248\n");
    auto big = run("count-perms " + data("bowtie.graph") + " --level 4");
    CHECK(big.out == "1114512556032000000000\n");
}

TEST_CASE("enumerate count-only matches the published counts") {
    CHECK(run("enumerate " + data("bowtie.graph") + " --level 3 --outer --count-only").out ==
          "4\n");
    CHECK(run("enumerate " + data("bowtie.graph") + " --level 3 --count-only").out == "32\n");
    CHECK(run("enumerate " + data("o3.graph") + " --level 2 --outer --count-only").out == "96\n");
}

TEST_CASE("enumerate stream is byte-stable across worker counts") {
    auto one = run("enumerate " + data("bowtie.graph") + " --level 3 --jobs 1");
    auto four = run("enumerate " + data("bowtie.graph") + " --level 3 --jobs 4");
    CHECK(one.out == four.out);
    CHECK(one.out.find("(bcb,bde)(ecb,ede)") != std::string::npos);
}

TEST_CASE("long direct enumeration needs confirmation") {
    auto refused = run("enumerate " + data("bowtie.graph") + " --level 4 --count-only");
    CHECK(refused.status == 1);
}

TEST_CASE("quotient by symmetries") {
    auto r = run("enumerate " + data("o3.graph") +
                 " --level 2 --outer --count-only --quotient-symmetries "
                 "'(a,b);(a,c);(b,c);(a,b,c);(a,c,b)'");
    CHECK(r.out == "16\n");
}

TEST_CASE("permgraph emits dot and json") {
    auto dot = run("permgraph " + data("bowtie.graph") + " --level 2 --perm '(de,cb)' --dot");
    CHECK(dot.out.find("digraph") != std::string::npos);
    CHECK(dot.out.find("d/b") != std::string::npos);
    auto j = run("permgraph " + data("bowtie.graph") + " --level 2 --perm '(de,cb)' --json");
    CHECK(nlohmann::json::parse(j.out)["edges"].size() == 12);
    auto oj = run("permgraph " + data("bowtie.graph") +
                  " --level 2 --perm '(de,cb)' --ordered --json");
    CHECK(nlohmann::json::parse(oj.out)["level"] == 2);
}

TEST_CASE("image verb") {
    auto r = run("image " + data("bowtie.graph") + " --level 2 --perm '(de,cb)' --edge d");
    CHECK(r.out == "S_c S_b S_e* + S_d S_f S_f*\n");
    auto collapsed = run("image " + data("bowtie.graph") + " --level 2 --perm Id --edge d");
    CHECK(collapsed.out.find("=  S_d") != std::string::npos);
    auto sub = run("image " + data("bowtie.graph") +
                   " --level 2 --perm Id --subalgebra 'a+b+d|c+e+f' --json");
    CHECK(nlohmann::json::parse(sub.out)["preserved"] == true);
}

TEST_CASE("compose and order and equiv") {
    auto comp = run("compose " + data("bowtie.graph") +
                    " --outer-level 2 --outer '(de,cb)' --inner-level 2 --inner '(de,cb)'");
    CHECK(comp.out == "level 3: Id\n");
    auto ord = run("order " + data("bowtie.graph") + " --level 2 --perm '(de,cb)' --json");
    auto oj = nlohmann::json::parse(ord.out);
    CHECK(oj["kind"] == "finite");
    CHECK(oj["order"] == 2);
    auto eq = run("equiv " + data("bowtie.graph") +
                  " --level 3 --perm-a '(dfe,cab)' --perm-b '(bde,bcb)(ede,ecb)'");
    CHECK(eq.status == 0);
    CHECK(eq.out == "equivalent: false\n");
}

TEST_CASE("tables are byte-stable across runs and worker counts") {
    std::string bow = "table " + data("bowtie.graph") + " --bowtie --max-level 3";
    auto a = run(bow);
    auto b = run(bow + " --jobs 3");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("373248") != std::string::npos);

    std::string o3 = "table " + data("o3.graph") + " --o3";
    auto c = run(o3);
    auto d = run(o3 + " --jobs 2");
    CHECK(c.out == d.out);
    CHECK(c.out.find("Id") != std::string::npos);
}

TEST_CASE("enumerate json stream parses") {
    auto r = run("enumerate " + data("bowtie.graph") + " --level 2 --json");
    CHECK(r.status == 0);
    std::stringstream ss(r.out);
    std::string line;
    int n = 0;
    while (std::getline(ss, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j["level"] == 2);
        ++n;
    }
    CHECK(n == 2);
}
