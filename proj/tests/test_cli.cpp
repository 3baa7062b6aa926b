// Runs the built binary end to end.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" CROSSTILE_CLI "\" " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return std::string(CROSSTILE_TEST_DATA) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "crosstile_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("verify " + fixture("tiling_z15.json")).code, 0);
    EXPECT_EQ(run("verify " + fixture("tiling_overlap.json")).code, 1);
    EXPECT_EQ(run("verify " + fixture("truncated.json")).code, 2);
    EXPECT_EQ(run("verify --method fourier " + fixture("mult_half.json")).code, 2);
    EXPECT_EQ(run("verify --level 2 " + fixture("cross_trivial.json")).code, 2);
    EXPECT_EQ(run("search --n 200").code, 3);
    EXPECT_EQ(run("search --n 8", "CROSSTILE_BUDGET=5").code, 3);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("verify - < " + fixture("cross_trivial.json")).code, 0);
}

TEST(Cli, GenerateThenVerify) {
    const auto first = run("generate --example first --a 5 --b 3");
    ASSERT_EQ(first.code, 0);
    const auto p1 = scratch("first.json");
    write(p1, first.out);
    for (const char* m : {"direct", "equiv", "fourier", "embed"}) {
        const auto v = run(std::string("verify --method ") + m + " " + p1.string());
        EXPECT_EQ(v.code, 0) << m << "\n" << v.out;
    }
    const auto second = run("generate --example second");
    ASSERT_EQ(second.code, 0);
    const auto p2 = scratch("second.json");
    write(p2, second.out);
    const auto v2 = run("verify " + p2.string());
    EXPECT_EQ(v2.code, 0);
    EXPECT_NE(v2.out.find("NonTrivial"), std::string::npos) << v2.out;
    EXPECT_EQ(run("generate --example first --a 1 --b 1").code, 2);
}

TEST(Cli, RenderSizes) {
    const auto p = scratch("render_first.json");
    write(p, run("generate --example first --a 5 --b 3").out);
    const auto r = run("render " + p.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Group:\n###############\n###############\n"), std::string::npos) << r.out;
    const auto t = run("render " + fixture("tiling_z15.json"));
    ASSERT_EQ(t.code, 0);
    // factorization [3, 5] is coprime: CRT layout with 3 columns and 5 rows
    EXPECT_EQ(t.out, "A:\n#..\n.#.\n..#\n...\n...\n\nX:\n#..\n#..\n#..\n#..\n#..\n");
    const auto svg1 = run("render --format svg " + p.string());
    const auto svg2 = run("render --format svg " + p.string());
    EXPECT_EQ(svg1.code, 0);
    EXPECT_EQ(svg1.out, svg2.out);
    EXPECT_EQ(run("render --rows 7 " + p.string()).code, 2);
    const auto m = run("render " + fixture("mult_half.json"));
    EXPECT_EQ(m.code, 0);
    EXPECT_NE(m.out.find("e^1/2"), std::string::npos);
}

TEST(Cli, ReduceConstructRoundTrip) {
    const auto cells = run("reduce " + fixture("mult_half.json"));
    ASSERT_EQ(cells.code, 0);
    const auto pc = scratch("cells.json");
    write(pc, cells.out);
    EXPECT_EQ(run("verify " + pc.string()).code, 0);
    const auto mult = run("construct " + pc.string());
    ASSERT_EQ(mult.code, 0);
    const auto pm = scratch("mult.json");
    write(pm, mult.out);
    EXPECT_EQ(run("verify " + pm.string()).code, 0);
    EXPECT_EQ(run("construct " + fixture("cells_bad.json")).code, 1);
    EXPECT_EQ(run("decompose " + fixture("torus_two_class.json")).code, 0);
    EXPECT_EQ(run("decompose " + fixture("torus_broken.json")).code, 1);
}

TEST(Cli, SearchIsDeterministicAcrossJobs) {
    const auto one = run("search --n 6 --jobs 1");
    const auto many = run("search --n 6 --jobs 3");
    ASSERT_EQ(one.code, 0);
    EXPECT_EQ(one.out, many.out);
    EXPECT_FALSE(one.out.empty());
    const auto card = run("search --n 6 --card 1,1,3,3");
    EXPECT_EQ(card.code, 0);
}
