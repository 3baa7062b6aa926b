#pragma once

// Subcommands of the crosstile tool. Each writes its result to `out`,
// diagnostics to `err`, and returns the process exit code:
//   0  verified / success
//   1  not a tiling
//   2  malformed input, bad arguments, or a method the document kind does not support
//   3  search refused because it exceeds the budget

#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "crosstile/cross.hpp"
#include "crosstile/document.hpp"
#include "crosstile/realline.hpp"
#include "crosstile/render.hpp"
#include "crosstile/search.hpp"
#include "crosstile/tiling.hpp"
#include "crosstile/torus.hpp"

namespace crosstile {

inline constexpr int kExitVerified = 0;
inline constexpr int kExitNotTiling = 1;
inline constexpr int kExitMalformed = 2;
inline constexpr int kExitBudget = 3;

namespace command_detail {

/// Reads and parses a document; "-" is standard input.
inline std::optional<Document> load(const std::string& path, std::ostream& err) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            err << "error: cannot read " << path << "\n";
            return std::nullopt;
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return parse_document(text);
    } catch (const std::exception& e) {
        err << "error: " << path << ": " << e.what() << "\n";
        return std::nullopt;
    }
}

template <class Point>
void print_point(std::ostream& os, const Point& p) {
    if constexpr (std::is_same_v<Point, ProductPoint>) os << "(" << p.element << "," << p.layer << ")";
    else os << p;
}

template <class Point>
void print_report(std::ostream& os, const std::string& label, const TilingReport<Point>& r) {
    os << label << ": ";
    if (r.is_tiling) {
        os << "ok, level " << *r.level << "\n";
        return;
    }
    os << r.violation_count << " violation" << (r.violation_count == 1 ? "" : "s");
    for (const auto& v : r.violations) {
        os << "; ";
        print_point(os, v.where);
        os << " -> " << v.multiplicity;
    }
    if (r.violations.size() < r.violation_count) os << "; ...";
    os << "\n";
}

inline int verdict(bool ok, std::ostream& out) {
    out << "verdict: " << (ok ? "verified" : "not a tiling") << "\n";
    return ok ? kExitVerified : kExitNotTiling;
}

inline int incompatible(const std::string& method, const std::string& kind, std::ostream& err) {
    err << "error: method " << method << " does not apply to " << kind << " documents\n";
    return kExitMalformed;
}

}  // namespace command_detail

struct VerifyOptions {
    std::string method = "direct";  // direct | equiv | fourier | embed
    std::optional<std::int64_t> level;
};

inline int cmd_verify(const std::string& path, const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    using namespace command_detail;
    if (opt.method != "direct" && opt.method != "equiv" && opt.method != "fourier" && opt.method != "embed") {
        err << "error: unknown method " << opt.method << "\n";
        return kExitMalformed;
    }
    auto doc = load(path, err);
    if (!doc) return kExitMalformed;
    const std::string kind = doc->kind();
    if (opt.level && kind != "tiling") {
        err << "error: --level only applies to tiling documents\n";
        return kExitMalformed;
    }
    try {
        if (auto* t = std::get_if<TilingInstance>(&doc->payload)) {
            const std::int64_t level = opt.level.value_or(t->level);
            if (level < 1) {
                err << "error: level must be positive\n";
                return kExitMalformed;
            }
            out << "kind: tiling\nn: " << t->a.modulus() << "\nmethod: " << opt.method << "\n";
            if (opt.method == "direct") {
                const auto r = verify_tiling(t->a, t->x, level);
                print_report(out, "A + X", r);
                return verdict(r.is_tiling, out);
            }
            if (opt.method == "fourier") {
                if (level != 1) {
                    err << "error: the fourier method decides level-1 tilings only\n";
                    return kExitMalformed;
                }
                return verdict(fourier_tiling_check(t->a, t->x), out);
            }
            return incompatible(opt.method, kind, err);
        }
        if (auto* c = std::get_if<CrossTilingInstance>(&doc->payload)) {
            out << "kind: cross\nn: " << c->modulus() << "\nmethod: " << opt.method << "\n";
            out << "sizes: |A|=" << c->a().size() << " |B|=" << c->b().size() << " |X|=" << c->x().size()
                << " |Y|=" << c->y().size() << "\n";
            out << "cardinality condition: " << (cardinality_condition(*c) ? "holds" : "fails") << "\n";
            const auto tv = classify(*c);
            out << "triviality: " << to_string(tv.kind) << " (" << tv.witness << ")\n";
            bool ok = false;
            if (opt.method == "direct") {
                const auto r = verify_cross(*c);
                print_report(out, "A*X + B*Y", r.first);
                print_report(out, "A*Y + B*X", r.second);
                ok = r.verified();
            } else if (opt.method == "equiv") {
                const auto r = verify_cross_equiv(*c);
                print_report(out, "(A+B)*(X+Y)", r.first);
                print_report(out, "(A-B)*(X-Y)", r.second);
                ok = r.verified();
            } else if (opt.method == "fourier") {
                ok = fourier_cross_check(*c);
            } else {
                const auto e = embed_product(*c);
                print_report(out, "C + Z in Z_N x Z_2", e.report);
                ok = e.report.is_tiling;
            }
            return verdict(ok, out);
        }
        if (auto* m = std::get_if<MultTilingInstance>(&doc->payload)) {
            out << "kind: mult\nL: " << m->l() << "\nrefinement: " << m->refinement() << "\nmethod: " << opt.method << "\n";
            if (opt.method == "direct") {
                const auto r = verify_mult_tiling(*m);
                print_report(out, "a+*w+ + a-*w-", r.first);
                print_report(out, "a-*w+ + a+*w-", r.second);
                return verdict(r.verified(), out);
            }
            if (opt.method == "equiv") {
                const auto r = sum_diff_check(*m);
                print_report(out, "(w+ + w-)*(a+ + a-)", r.sum);
                print_report(out, "(w+ - w-)*(a+ - a-)", r.diff);
                return verdict(r.sum_ok() && r.diff_ok(), out);
            }
            return incompatible(opt.method, kind, err);
        }
        if (auto* r = std::get_if<CycleReduction>(&doc->payload)) {
            if (opt.method != "direct") return incompatible(opt.method, kind, err);
            out << "kind: cells\nL: " << r->l << "\ncells: " << r->cells.size() << "\nmethod: direct\n";
            bool ok = true;
            for (std::size_t i = 0; i < r->cells.size(); ++i) {
                const auto& cell = r->cells[i];
                const bool cell_ok = verify_cross(CrossTilingInstance(cell.b_plus, cell.b_minus, r->alpha_plus, r->alpha_minus), 0).verified();
                out << "cell " << i << " " << cell.cell.str() << ": " << (cell_ok ? "ok" : "fails") << "\n";
                ok = ok && cell_ok;
            }
            if (ok) {
                const auto inst = construct_from_cross(r->l, r->cells, r->alpha_plus, r->alpha_minus);
                ok = verify_mult_tiling(inst).verified();
            }
            return verdict(ok, out);
        }
        if (auto* t = std::get_if<TorusInstance>(&doc->payload)) {
            if (opt.method != "direct") return incompatible(opt.method, kind, err);
            out << "kind: torus\nmethod: direct\n";
            const auto d = decompose_torus_tiling(t->tile_on_unit(), t->tau);
            if (d.total_level) out << "level: " << *d.total_level << "\n";
            return verdict(d.total_level.has_value(), out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}

struct SearchOptions {
    std::size_t n = 0;
    std::optional<std::array<std::size_t, 4>> cardinalities;
    bool nontrivial = false;
    std::size_t limit = 0;
    std::size_t jobs = 1;
    std::uint64_t budget = kDefaultSearchBudget;
};

/// One cross document per line, in canonical order.
inline int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
    SearchConstraints c;
    c.cardinalities = opt.cardinalities;
    c.nontrivial_only = opt.nontrivial;
    c.limit = opt.limit;
    c.jobs = std::max<std::size_t>(1, opt.jobs);
    c.budget = opt.budget;
    try {
        const auto found = search_cross(opt.n, c);
        std::ostringstream buffer;
        for (const auto& inst : found) buffer << emit_document({inst, std::nullopt, {}}) << "\n";
        out << buffer.str();
        err << found.size() << " cross tiling" << (found.size() == 1 ? "" : "s") << " up to translation\n";
        return kExitVerified;
    } catch (const SearchBudgetExceeded& e) {
        err << "refusing: " << e.what() << " (set CROSSTILE_BUDGET to raise the budget)\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
}

struct GenerateOptions {
    std::string example;  // first | second
    std::int64_t a = 0;
    std::int64_t b = 0;
};

inline int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        CrossExample ex;
        Document doc;
        if (opt.example == "first") {
            ex = gen_example_first(opt.a, opt.b);
            if (ex.degenerate) {
                err << "error: a = " << opt.a << ", b = " << opt.b << " is degenerate: " << ex.note << "\n";
                return kExitMalformed;
            }
            doc.metadata = {{"title", "first family"}, {"a", std::to_string(opt.a)}, {"b", std::to_string(opt.b)}};
        } else if (opt.example == "second") {
            ex = gen_example_second();
            doc.metadata = {{"title", "second example in Z_15 x Z_8"}};
        } else {
            err << "error: unknown example " << opt.example << " (expected first or second)\n";
            return kExitMalformed;
        }
        doc.payload = ex.instance;
        doc.factorization = ex.factorization;
        out << emit_document(doc) << "\n";
        return kExitVerified;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
}

struct RenderOptions {
    std::string format = "ascii";  // ascii | svg
    std::optional<std::size_t> rows;
};

inline int cmd_render(const std::string& path, const RenderOptions& opt, std::ostream& out, std::ostream& err) {
    auto doc = command_detail::load(path, err);
    if (!doc) return kExitMalformed;
    try {
        if (const auto* m = std::get_if<MultTilingInstance>(&doc->payload)) {
            out << to_multiplicative(*m);
            return kExitVerified;
        }
        if (opt.format == "ascii") out << render_ascii(*doc, opt.rows);
        else if (opt.format == "svg") out << render_svg(*doc, opt.rows);
        else {
            err << "error: unknown format " << opt.format << "\n";
            return kExitMalformed;
        }
        return kExitVerified;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
}

/// Rational classes of a torus document and the level of each.
inline int cmd_decompose(const std::string& path, std::ostream& out, std::ostream& err) {
    auto doc = command_detail::load(path, err);
    if (!doc) return kExitMalformed;
    const auto* t = std::get_if<TorusInstance>(&doc->payload);
    if (!t) {
        err << "error: decompose needs a torus document, got " << doc->kind() << "\n";
        return kExitMalformed;
    }
    try {
        const auto d = decompose_torus_tiling(t->tile_on_unit(), t->tau);
        out << "classes: " << d.classes.size() << "\n";
        for (std::size_t i = 0; i < d.classes.size(); ++i) {
            const auto& cls = d.classes[i];
            out << "class " << i << ":";
            for (const auto& a : cls.members.atoms()) out << " " << a.at.str() << " (w=" << a.weight << ")";
            out << "\n";
            command_detail::print_report(out, "  level", cls.report);
        }
        if (d.total_level) out << "total level: " << *d.total_level << "\n";
        else out << "total level: none (some class is not constant)\n";
        return d.total_level ? kExitVerified : kExitNotTiling;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
}

/// mult document -> cells document (neighbouring equal cells merged).
inline int cmd_reduce(const std::string& path, std::ostream& out, std::ostream& err) {
    auto doc = command_detail::load(path, err);
    if (!doc) return kExitMalformed;
    const auto* m = std::get_if<MultTilingInstance>(&doc->payload);
    if (!m) {
        err << "error: reduce needs a mult document, got " << doc->kind() << "\n";
        return kExitMalformed;
    }
    try {
        auto r = reduce_to_cycles(*m);
        r.cells = coarsen(r.cells);
        bool ok = true;
        for (std::size_t i = 0; i < r.cells.size(); ++i) {
            const auto& c = r.cells[i];
            if (!verify_cross(CrossTilingInstance(c.b_plus, c.b_minus, r.alpha_plus, r.alpha_minus), 0).verified()) {
                err << "cell " << i << " " << c.cell.str() << " fails the per-coset cross tiling\n";
                ok = false;
            }
        }
        out << emit_document({r, std::nullopt, doc->metadata}) << "\n";
        return ok ? kExitVerified : kExitNotTiling;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
}

/// cells document -> mult document.
inline int cmd_construct(const std::string& path, std::ostream& out, std::ostream& err) {
    auto doc = command_detail::load(path, err);
    if (!doc) return kExitMalformed;
    const auto* r = std::get_if<CycleReduction>(&doc->payload);
    if (!r) {
        err << "error: construct needs a cells document, got " << doc->kind() << "\n";
        return kExitMalformed;
    }
    MultTilingInstance inst;
    try {
        inst = construct_from_cross(r->l, r->cells, r->alpha_plus, r->alpha_minus);
    } catch (const CellTilingError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNotTiling;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    out << emit_document({inst, std::nullopt, doc->metadata}) << "\n";
    return kExitVerified;
}

}  // namespace crosstile
