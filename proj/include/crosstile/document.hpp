#pragma once

// JSON instance documents, schema version 1.
//
//   tiling: {"v":1,"kind":"tiling","n":N,"sets":{"A":[..],"X":[..]},"level":1}
//   cross:  {"v":1,"kind":"cross","n":N,"sets":{"A":[..],"B":[..],"X":[..],"Y":[..]}}
//   mult:   {"v":1,"kind":"mult","L":L,"omega_plus":[["p/q","p/q"],..],"omega_minus":[..],
//            "a_plus":["p/q",..],"a_minus":[..]}
//   cells:  {"v":1,"kind":"cells","L":L,"alpha_plus":[..],"alpha_minus":[..],
//            "cells":[{"interval":["p/q","p/q"],"b_plus":[..],"b_minus":[..]},..]}
//   torus:  {"v":1,"kind":"torus","period":"p/q","tile":[{"interval":["p/q","p/q"],"value":v},..],
//            "atoms":[{"at":"1/3 + 1*th1","weight":w},..]}
//
// Every kind accepts "metadata" (an object of strings). tiling and cross also
// accept "factorization":[m,n] with m*n = N, used only for rendering.
// Torus points follow TorusPoint::parse; mult offsets and endpoints are exact
// rationals written "p" or "p/q".

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "crosstile/cross.hpp"
#include "crosstile/interval.hpp"
#include "crosstile/rational.hpp"
#include "crosstile/realline.hpp"
#include "crosstile/torus.hpp"
#include "crosstile/zn.hpp"

namespace crosstile {

/// Malformed or schema-violating document.
class DocumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct TilingInstance {
    CyclicSet a;
    CyclicSet x;
    std::int64_t level = 1;

    friend bool operator==(const TilingInstance&, const TilingInstance&) = default;
};

/// A weighted point set on R / period Z and a step tile on [0, period).
struct TorusInstance {
    Rational period = 1;
    std::vector<std::pair<Interval, std::int64_t>> tile;
    WeightedPeriodicPointSet tau;

    /// The tile rescaled to R / Z.
    StepFunction tile_on_unit() const {
        std::vector<std::pair<Interval, std::int64_t>> parts;
        for (const auto& [iv, v] : tile) parts.push_back({{iv.lo / period, iv.hi / period}, v});
        return StepFunction::from_intervals(parts);
    }

    friend bool operator==(const TorusInstance&, const TorusInstance&) = default;
};

using Payload = std::variant<TilingInstance, CrossTilingInstance, MultTilingInstance, CycleReduction, TorusInstance>;

struct Document {
    Payload payload;
    std::optional<std::array<std::size_t, 2>> factorization;
    std::map<std::string, std::string> metadata;

    std::string kind() const {
        static constexpr const char* names[] = {"tiling", "cross", "mult", "cells", "torus"};
        return names[payload.index()];
    }

    friend bool operator==(const Document&, const Document&) = default;
};

namespace document_detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw DocumentError("document " + where + ": " + what);
}

inline const json& field(const json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, "missing field \"" + key + "\"");
    return *it;
}

inline std::int64_t integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<std::int64_t>();
}

inline Rational rational(const json& j, const std::string& where) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (!j.is_string()) fail(where, "expected a rational string \"p/q\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
}

inline std::string rational_text(const Rational& r) { return r.str(); }

inline CyclicSet set(const json& j, std::size_t n, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of residues");
    CyclicSet s(n);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto at = where + "[" + std::to_string(i) + "]";
        const auto v = integer(j[i], at);
        if (v < 0 || v >= static_cast<std::int64_t>(n)) fail(at, "residue " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
        if (s.contains(v)) fail(at, "repeated residue " + std::to_string(v));
        s.insert(v);
    }
    return s;
}

inline json set_json(const CyclicSet& s) { return s.members(); }

inline Interval interval(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) fail(where, "expected [lo, hi]");
    Interval iv{rational(j[0], where + "[0]"), rational(j[1], where + "[1]")};
    if (iv.hi < iv.lo) fail(where, "reversed interval " + iv.str());
    return iv;
}

inline json interval_json(const Interval& iv) { return json::array({rational_text(iv.lo), rational_text(iv.hi)}); }

inline std::vector<Interval> intervals(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of intervals");
    std::vector<Interval> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(interval(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<Rational> rationals(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of rationals");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::size_t modulus(const json& doc) {
    const auto n = integer(field(doc, "n", "root"), "n");
    if (n < 1) fail("n", "modulus must be positive");
    if (n > (std::int64_t{1} << 24)) fail("n", "modulus too large");
    return static_cast<std::size_t>(n);
}

inline std::int64_t positive_l(const json& doc) {
    const auto l = integer(field(doc, "L", "root"), "L");
    if (l < 1 || l > (std::int64_t{1} << 24)) fail("L", "L must be a positive integer of moderate size");
    return l;
}

/// Wraps library validation errors with the location that caused them.
template <class F>
auto guarded(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const DocumentError&) {
        throw;
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
}

inline std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace document_detail

inline Document parse_document(std::string_view text) {
    using namespace document_detail;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw DocumentError("parse error at byte " + std::to_string(e.byte) + " (" + line_column(text, e.byte) + "): " + e.what());
    }
    if (!doc.is_object()) fail("root", "expected a JSON object");
    if (integer(field(doc, "v", "root"), "v") != 1) fail("v", "unsupported schema version");
    const auto& kind_j = field(doc, "kind", "root");
    if (!kind_j.is_string()) fail("kind", "expected a string");
    const auto kind = kind_j.get<std::string>();

    Document out;
    if (auto it = doc.find("metadata"); it != doc.end()) {
        if (!it->is_object()) fail("metadata", "expected an object of strings");
        for (const auto& [k, v] : it->items()) {
            if (!v.is_string()) fail("metadata." + k, "expected a string");
            out.metadata[k] = v.get<std::string>();
        }
    }

    if (kind == "tiling" || kind == "cross") {
        const auto n = modulus(doc);
        const auto& sets = field(doc, "sets", "root");
        if (!sets.is_object()) fail("sets", "expected an object");
        auto get = [&](const char* name) { return set(field(sets, name, "sets"), n, std::string("sets.") + name); };
        const std::size_t expected_keys = kind == "tiling" ? 2 : 4;
        if (sets.size() != expected_keys) fail("sets", "unexpected set names for kind " + kind);
        if (kind == "tiling") {
            TilingInstance t{get("A"), get("X"), 1};
            if (auto it = doc.find("level"); it != doc.end()) t.level = integer(*it, "level");
            if (t.level < 1) fail("level", "level must be positive");
            out.payload = std::move(t);
        } else {
            out.payload = CrossTilingInstance(get("A"), get("B"), get("X"), get("Y"));
        }
        if (auto it = doc.find("factorization"); it != doc.end()) {
            if (!it->is_array() || it->size() != 2) fail("factorization", "expected [m, n]");
            const auto m = integer((*it)[0], "factorization[0]"), k = integer((*it)[1], "factorization[1]");
            if (m < 1 || k < 1 || m * k != static_cast<std::int64_t>(n)) fail("factorization", "factors must multiply to n");
            out.factorization = std::array<std::size_t, 2>{static_cast<std::size_t>(m), static_cast<std::size_t>(k)};
        }
    } else if (kind == "mult") {
        const auto l = positive_l(doc);
        out.payload = guarded("mult instance", [&] {
            return MultTilingInstance(l, IntervalUnion(intervals(field(doc, "omega_plus", "root"), "omega_plus")),
                                      IntervalUnion(intervals(field(doc, "omega_minus", "root"), "omega_minus")),
                                      PeriodicTranslateSet(l, rationals(field(doc, "a_plus", "root"), "a_plus")),
                                      PeriodicTranslateSet(l, rationals(field(doc, "a_minus", "root"), "a_minus")));
        });
    } else if (kind == "cells") {
        const auto l = positive_l(doc);
        const auto n = static_cast<std::size_t>(l);
        CycleReduction r{l, set(field(doc, "alpha_plus", "root"), n, "alpha_plus"),
                         set(field(doc, "alpha_minus", "root"), n, "alpha_minus"), {}};
        const auto& cells = field(doc, "cells", "root");
        if (!cells.is_array() || cells.empty()) fail("cells", "expected a non-empty array");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto at = "cells[" + std::to_string(i) + "]";
            if (!cells[i].is_object()) fail(at, "expected an object");
            r.cells.push_back({interval(field(cells[i], "interval", at), at + ".interval"),
                               set(field(cells[i], "b_plus", at), n, at + ".b_plus"),
                               set(field(cells[i], "b_minus", at), n, at + ".b_minus")});
        }
        out.payload = std::move(r);
    } else if (kind == "torus") {
        TorusInstance t;
        if (auto it = doc.find("period"); it != doc.end()) t.period = rational(*it, "period");
        if (t.period.sign() <= 0) fail("period", "period must be positive");
        const auto& tile = field(doc, "tile", "root");
        if (!tile.is_array()) fail("tile", "expected an array");
        for (std::size_t i = 0; i < tile.size(); ++i) {
            const auto at = "tile[" + std::to_string(i) + "]";
            Interval iv = interval(field(tile[i], "interval", at), at + ".interval");
            if (iv.lo.sign() < 0 || t.period < iv.hi) fail(at, "interval must lie in [0, period)");
            t.tile.push_back({iv, integer(field(tile[i], "value", at), at + ".value")});
        }
        const auto& atoms = field(doc, "atoms", "root");
        if (!atoms.is_array()) fail("atoms", "expected an array");
        std::vector<WeightedAtom> list;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const auto at = "atoms[" + std::to_string(i) + "]";
            const auto& pos = field(atoms[i], "at", at);
            if (!pos.is_string()) fail(at + ".at", "expected a torus point string");
            TorusPoint p = guarded(at + ".at", [&] { return TorusPoint::parse(pos.get<std::string>(), t.period); });
            list.push_back({p, integer(field(atoms[i], "weight", at), at + ".weight")});
        }
        t.tau = guarded("atoms", [&] { return WeightedPeriodicPointSet(t.period, std::move(list)); });
        guarded("tile", [&] { return t.tile_on_unit(); });
        out.payload = std::move(t);
    } else {
        fail("kind", "unknown kind \"" + kind + "\"");
    }
    return out;
}

/// Compact JSON with sorted keys; parse_document(emit_document(d)) == d.
inline std::string emit_document(const Document& d) {
    using namespace document_detail;
    json j;
    j["v"] = 1;
    j["kind"] = d.kind();
    if (!d.metadata.empty()) j["metadata"] = d.metadata;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, TilingInstance>) {
                j["n"] = p.a.modulus();
                j["sets"] = {{"A", set_json(p.a)}, {"X", set_json(p.x)}};
                j["level"] = p.level;
            } else if constexpr (std::is_same_v<T, CrossTilingInstance>) {
                j["n"] = p.modulus();
                j["sets"] = {{"A", set_json(p.a())}, {"B", set_json(p.b())}, {"X", set_json(p.x())}, {"Y", set_json(p.y())}};
            } else if constexpr (std::is_same_v<T, MultTilingInstance>) {
                j["L"] = p.l();
                for (const auto& [key, u] : {std::pair{"omega_plus", &p.omega_plus()}, std::pair{"omega_minus", &p.omega_minus()}}) {
                    json a = json::array();
                    for (const auto& iv : u->intervals()) a.push_back(interval_json(iv));
                    j[key] = a;
                }
                for (const auto& [key, s] : {std::pair{"a_plus", &p.a_plus()}, std::pair{"a_minus", &p.a_minus()}}) {
                    json a = json::array();
                    for (const auto& o : s->offsets()) a.push_back(rational_text(o));
                    j[key] = a;
                }
            } else if constexpr (std::is_same_v<T, CycleReduction>) {
                j["L"] = p.l;
                j["alpha_plus"] = set_json(p.alpha_plus);
                j["alpha_minus"] = set_json(p.alpha_minus);
                json cells = json::array();
                for (const auto& c : p.cells)
                    cells.push_back({{"interval", interval_json(c.cell)}, {"b_plus", set_json(c.b_plus)}, {"b_minus", set_json(c.b_minus)}});
                j["cells"] = cells;
            } else {
                j["period"] = rational_text(p.period);
                json tile = json::array();
                for (const auto& [iv, v] : p.tile) tile.push_back({{"interval", interval_json(iv)}, {"value", v}});
                j["tile"] = tile;
                json atoms = json::array();
                for (const auto& a : p.tau.atoms()) atoms.push_back({{"at", a.at.str()}, {"weight", a.weight}});
                j["atoms"] = atoms;
            }
        },
        d.payload);
    if (d.factorization) j["factorization"] = *d.factorization;
    return j.dump();
}

}  // namespace crosstile
