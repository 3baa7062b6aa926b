#pragma once

// Grid pictures of tiling and cross documents.
//
// Each set is drawn as its own grid (Group, A, B, X, Y for cross documents;
// A, X for tiling documents). With a factorization [m, k] the element x sits
// in column x mod m and row x mod k when gcd(m, k) = 1, and at column x mod m,
// row x / m otherwise. Without a hint everything is one row. Row 0 is the top row.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crosstile/document.hpp"

namespace crosstile {

struct GridLayout {
    std::size_t columns = 1;
    std::size_t rows = 1;
    bool crt = false;

    std::pair<std::size_t, std::size_t> place(std::int64_t x) const {
        const auto u = static_cast<std::size_t>(x);
        if (crt) return {u % columns, u % rows};
        return {u % columns, u / columns};
    }
};

struct NamedSet {
    std::string name;
    std::string color;
    CyclicSet set;
};

/// rows_override, when given, must divide N and forces a row-major layout.
inline GridLayout grid_layout(std::size_t n, const std::optional<std::array<std::size_t, 2>>& factorization,
                              std::optional<std::size_t> rows_override) {
    if (rows_override) {
        if (*rows_override == 0 || n % *rows_override != 0)
            throw std::invalid_argument("crosstile: --rows must divide N = " + std::to_string(n));
        return {n / *rows_override, *rows_override, false};
    }
    if (factorization) {
        const auto [m, k] = *factorization;
        if (m * k != n) throw std::invalid_argument("crosstile: factorization does not multiply to N");
        return {m, k, std::gcd(m, k) == 1};
    }
    return {n, 1, false};
}

/// The grids a document is drawn with; mult, cells and torus documents have none.
inline std::vector<NamedSet> render_sets(const Document& doc) {
    if (const auto* c = std::get_if<CrossTilingInstance>(&doc.payload))
        return {{"Group", "black", CyclicSet::full(c->modulus())},
                {"A", "red", c->a()},
                {"B", "blue", c->b()},
                {"X", "green", c->x()},
                {"Y", "cyan", c->y()}};
    if (const auto* t = std::get_if<TilingInstance>(&doc.payload)) return {{"A", "red", t->a}, {"X", "green", t->x}};
    throw std::invalid_argument("crosstile: only tiling and cross documents render as grids");
}

inline std::string render_ascii(const Document& doc, std::optional<std::size_t> rows_override = std::nullopt) {
    const auto sets = render_sets(doc);
    const auto layout = grid_layout(sets.front().set.modulus(), doc.factorization, rows_override);
    std::ostringstream os;
    for (std::size_t g = 0; g < sets.size(); ++g) {
        if (g) os << "\n";
        os << sets[g].name << ":\n";
        std::vector<std::string> grid(layout.rows, std::string(layout.columns, '.'));
        for (auto m : sets[g].set.members()) {
            const auto [col, row] = layout.place(m);
            grid[row][col] = '#';
        }
        for (const auto& line : grid) os << line << "\n";
    }
    return os.str();
}

/// SVG 1.1; integer coordinates only, so output is byte-stable.
inline std::string render_svg(const Document& doc, std::optional<std::size_t> rows_override = std::nullopt) {
    constexpr int cell = 20, margin = 10, title = 18, gap = 14;
    const auto sets = render_sets(doc);
    const auto layout = grid_layout(sets.front().set.modulus(), doc.factorization, rows_override);
    const int grid_w = static_cast<int>(layout.columns) * cell;
    const int grid_h = static_cast<int>(layout.rows) * cell;
    const int block = title + grid_h + gap;
    const int width = 2 * margin + grid_w;
    const int height = 2 * margin + static_cast<int>(sets.size()) * block - gap;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    for (std::size_t g = 0; g < sets.size(); ++g) {
        const int top = margin + static_cast<int>(g) * block;
        os << "<g id=\"" << sets[g].name << "\">\n";
        os << "<text x=\"" << margin << "\" y=\"" << top + 13 << "\" font-family=\"monospace\" font-size=\"13\">"
           << sets[g].name << "</text>\n";
        const int gy = top + title;
        for (std::size_t x = 0; x < sets[g].set.modulus(); ++x) {
            const auto [col, row] = layout.place(static_cast<std::int64_t>(x));
            const int cx = margin + static_cast<int>(col) * cell + cell / 2;
            const int cy = gy + static_cast<int>(row) * cell + cell / 2;
            if (sets[g].set.contains(static_cast<std::int64_t>(x)))
                os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"6\" fill=\"" << sets[g].color << "\"/>\n";
            else
                os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"2\" fill=\"lightgray\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace crosstile
