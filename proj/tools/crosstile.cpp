#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crosstile/commands.hpp"

namespace {

std::uint64_t budget_from_env() {
    const char* v = std::getenv("CROSSTILE_BUDGET");
    if (v == nullptr || *v == '\0') return crosstile::kDefaultSearchBudget;
    try {
        std::size_t used = 0;
        const auto b = std::stoull(v, &used);
        if (used == std::string(v).size()) return b;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring malformed CROSSTILE_BUDGET=" << v << "\n";
    return crosstile::kDefaultSearchBudget;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tools for tilings and cross tilings of Z_N and multiplicative tilings of R"};
    app.require_subcommand(1);

    std::string path;
    crosstile::VerifyOptions verify;
    std::optional<std::int64_t> level;
    auto* verify_cmd = app.add_subcommand("verify", "verify a tiling, cross, mult, cells or torus document");
    verify_cmd->add_option("path", path, "document path, - for stdin")->required();
    verify_cmd->add_option("--method", verify.method, "direct | equiv | fourier | embed")->capture_default_str();
    verify_cmd->add_option("--level", level, "tiling level (tiling documents only)");

    crosstile::SearchOptions search;
    std::vector<std::size_t> card;
    auto* search_cmd = app.add_subcommand("search", "enumerate cross tilings of Z_N up to translation");
    search_cmd->add_option("--n", search.n, "modulus N")->required();
    search_cmd->add_option("--card", card, "|A|,|B|,|X|,|Y|")->delimiter(',')->expected(4);
    search_cmd->add_flag("--nontrivial", search.nontrivial, "only non-trivial cross tilings");
    search_cmd->add_option("--limit", search.limit, "stop after k results, 0 for no limit")->capture_default_str();
    search_cmd->add_option("--jobs", search.jobs, "worker threads")->capture_default_str();

    crosstile::GenerateOptions gen;
    auto* gen_cmd = app.add_subcommand("generate", "emit one of the built-in examples");
    gen_cmd->add_option("--example", gen.example, "first | second")->required();
    gen_cmd->add_option("--a", gen.a, "odd a (first example)");
    gen_cmd->add_option("--b", gen.b, "odd b (first example)");

    crosstile::RenderOptions render;
    auto* render_cmd = app.add_subcommand("render", "draw a tiling or cross document");
    render_cmd->add_option("path", path, "document path, - for stdin")->required();
    render_cmd->add_option("--format", render.format, "ascii | svg")->capture_default_str();
    render_cmd->add_option("--rows", render.rows, "force a row-major layout with r rows");

    auto* decompose_cmd = app.add_subcommand("decompose", "split a torus document into rational classes");
    decompose_cmd->add_option("path", path, "document path, - for stdin")->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "mult document to per-coset cross tilings");
    reduce_cmd->add_option("path", path, "document path, - for stdin")->required();

    auto* construct_cmd = app.add_subcommand("construct", "per-coset cross tilings to a mult document");
    construct_cmd->add_option("path", path, "document path, - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : crosstile::kExitMalformed;
    }

    std::ostringstream out;
    int code = crosstile::kExitMalformed;
    if (*verify_cmd) {
        verify.level = level;
        code = crosstile::cmd_verify(path, verify, out, std::cerr);
    } else if (*search_cmd) {
        if (!card.empty()) search.cardinalities = std::array<std::size_t, 4>{card[0], card[1], card[2], card[3]};
        search.budget = budget_from_env();
        code = crosstile::cmd_search(search, out, std::cerr);
    } else if (*gen_cmd) {
        code = crosstile::cmd_generate(gen, out, std::cerr);
    } else if (*render_cmd) {
        code = crosstile::cmd_render(path, render, out, std::cerr);
    } else if (*decompose_cmd) {
        code = crosstile::cmd_decompose(path, out, std::cerr);
    } else if (*reduce_cmd) {
        code = crosstile::cmd_reduce(path, out, std::cerr);
    } else if (*construct_cmd) {
        code = crosstile::cmd_construct(path, out, std::cerr);
    }
    std::cout << out.str() << std::flush;
    return code;
}
