// JSON interchange for instances and the data model.
//
// Numbers are accepted as JSON numbers, decimal strings, or "p/q" strings;
// everything that feeds the exact lane is converted to rationals without
// rounding (decimals through their literal digits, doubles through their
// shortest round-tripping decimal form).  load_instance validates the whole
// document and reports every problem found, not just the first.

#ifndef PICARD_SERDE_HPP
#define PICARD_SERDE_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "picard/derived.hpp"
#include "picard/solver.hpp"

namespace picard {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// numbers

inline std::optional<Rat> rat_from_json(const json& j) {
    try {
        if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
        if (j.is_number_float()) return Rat::from_double(j.get<double>());
        if (j.is_string()) return Rat::parse(j.get<std::string>());
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

inline json rat_to_json(const Rat& r) {
    if (r.is_integer()) return json(r.num());
    return json(r.str());
}

// ---------------------------------------------------------------------------
// piecewise functions

inline json to_json(const PiecewiseFn& f) {
    // The external schema keeps the value at the last breakpoint implicit (it
    // equals the tail law there), so a jump at the last breakpoint is encoded
    // by splitting one extra breakpoint off the tail.
    std::vector<PiecewiseFn::Piece> ps = f.pieces();
    const auto& last = ps.back();
    if (last.at != last.law(last.start)) {
        PiecewiseFn::Piece split{last.start + Rat(1), last.law(last.start + Rat(1)), last.law};
        ps.push_back(split);
    }
    json out;
    out["breakpoints"] = json::array();
    out["pieces"] = json::array();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        out["breakpoints"].push_back(rat_to_json(ps[i].start));
        if (i + 1 < ps.size()) {
            json piece;
            piece["at"] = rat_to_json(ps[i].at);
            piece["slope"] = rat_to_json(ps[i].law.slope);
            piece["intercept"] = rat_to_json(ps[i].law.intercept);
            out["pieces"].push_back(piece);
        }
    }
    out["tail"] = {{"slope", rat_to_json(ps.back().law.slope)},
                   {"intercept", rat_to_json(ps.back().law.intercept)}};
    return out;
}

inline PiecewiseFn piecewise_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("piecewise function must be an object");
    if (!j.contains("breakpoints") || !j["breakpoints"].is_array())
        throw std::invalid_argument("missing breakpoints array");
    if (!j.contains("tail") || !j["tail"].is_object())
        throw std::invalid_argument("missing tail law");
    std::vector<Rat> bps;
    for (const auto& b : j["breakpoints"]) {
        auto r = rat_from_json(b);
        if (!r) throw std::invalid_argument("unreadable breakpoint " + b.dump());
        bps.push_back(*r);
    }
    if (bps.empty()) throw std::invalid_argument("breakpoints must contain at least 0");
    const json& pieces = j.contains("pieces") ? j["pieces"] : json::array();
    if (!pieces.is_array() || pieces.size() + 1 != bps.size())
        throw std::invalid_argument("expected " + std::to_string(bps.size() - 1) + " pieces for " +
                                    std::to_string(bps.size()) + " breakpoints");
    auto law_of = [](const json& o) {
        auto s = o.contains("slope") ? rat_from_json(o["slope"]) : std::nullopt;
        auto b = o.contains("intercept") ? rat_from_json(o["intercept"]) : std::nullopt;
        if (!s || !b) throw std::invalid_argument("law needs slope and intercept: " + o.dump());
        return AffineLaw{*s, *b};
    };
    std::vector<PiecewiseFn::Piece> out;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        auto at = pieces[i].contains("at") ? rat_from_json(pieces[i]["at"]) : std::nullopt;
        if (!at) throw std::invalid_argument("piece " + std::to_string(i) + " needs an at value");
        out.push_back({bps[i], *at, law_of(pieces[i])});
    }
    AffineLaw tail = law_of(j["tail"]);
    out.push_back({bps.back(), tail(bps.back()), tail});
    return PiecewiseFn::make(std::move(out));
}

// ---------------------------------------------------------------------------
// spaces and maps

inline json to_json(const FiniteSpace& s) {
    json out;
    out["type"] = "finite";
    out["points"] = s.labels();
    json rows = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < s.size(); ++j) row.push_back(rat_to_json(s.d(i, j)));
        rows.push_back(row);
    }
    out["d"] = rows;
    return out;
}

inline json to_json(const DerivedSpace& d) {
    json out = to_json(d.space);
    json prov;
    prov["kind"] = to_string(d.kind);
    if (d.kind == DerivedKind::OrbitMax) prov["n"] = d.horizon;
    prov["f"] = d.f_image;
    if (d.g_image != d.f_image) prov["g"] = d.g_image;
    out["derived_from"] = prov;
    return out;
}

struct Instance {
    std::variant<FiniteSpace, AnalyticSpace> space{FiniteSpace::make({"p0"}, {{Rat(0)}})};
    std::optional<FiniteMap> finite_map;
    std::optional<AnalyticMap> analytic_map;
    std::map<std::string, PiecewiseFn> functions;
    json mode_block;  // optional object: {"kind": ..., mode parameters}
    json options;     // optional object: tol, max_iter, window, seed, ...

    bool finite() const { return std::holds_alternative<FiniteSpace>(space); }
    const FiniteSpace& finite_space() const { return std::get<FiniteSpace>(space); }
    const AnalyticSpace& analytic_space() const { return std::get<AnalyticSpace>(space); }
    bool has_map() const { return finite_map.has_value() || analytic_map.has_value(); }
};

struct LoadResult {
    std::optional<Instance> instance;
    std::vector<std::string> errors;

    bool ok() const { return errors.empty() && instance.has_value(); }
};

namespace serdedetail {

inline void load_space(const json& j, Instance& inst, std::vector<std::string>& errors,
                       const SamplerConfig& cfg) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        errors.push_back("space: missing \"type\"");
        return;
    }
    std::string type = j["type"];
    if (type == "finite") {
        std::vector<std::string> labels;
        if (j.contains("points") && j["points"].is_array()) {
            for (const auto& p : j["points"])
                labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
        } else {
            errors.push_back("finite space: missing \"points\" array");
        }
        std::vector<std::vector<Rat>> matrix;
        if (j.contains("d") && j["d"].is_array()) {
            for (const auto& row : j["d"]) {
                std::vector<Rat> r;
                if (row.is_array()) {
                    for (const auto& v : row) {
                        auto val = rat_from_json(v);
                        if (!val) {
                            errors.push_back("finite space: unreadable distance " + v.dump());
                            val = Rat(0);
                        }
                        r.push_back(*val);
                    }
                }
                matrix.push_back(std::move(r));
            }
        } else {
            errors.push_back("finite space: missing \"d\" matrix");
        }
        if (!labels.empty()) {
            try {
                inst.space = FiniteSpace::make(std::move(labels), std::move(matrix));
            } catch (const std::exception& e) {
                errors.push_back(std::string("finite space: ") + e.what());
            }
        }
    } else if (type == "analytic") {
        AnalyticSpace::Domain dom;
        if (!j.contains("domain") || !j["domain"].is_object()) {
            errors.push_back("analytic space: missing \"domain\"");
        } else {
            const json& d = j["domain"];
            std::string kind = d.value("kind", "");
            if (kind == "line") {
                dom.whole_line = true;
            } else if (kind == "interval") {
                if (!d.contains("a") || !d.contains("b")) {
                    errors.push_back("interval domain needs \"a\" and \"b\"");
                } else {
                    dom.lo = d["a"].is_number() ? d["a"].get<double>()
                                                : rat_from_json(d["a"]).value_or(Rat(0)).to_double();
                    dom.hi = d["b"].is_number() ? d["b"].get<double>()
                                                : rat_from_json(d["b"]).value_or(Rat(1)).to_double();
                }
            } else {
                errors.push_back("domain kind must be \"interval\" or \"line\", got \"" + kind + "\"");
            }
        }
        if (!j.contains("d") || !j["d"].is_string()) {
            errors.push_back("analytic space: \"d\" must be an expression string");
            return;
        }
        try {
            Expr dexpr = parse_expression(j["d"].get<std::string>(), {"x", "y"});
            inst.space = AnalyticSpace::make(dom, std::move(dexpr), j.value("complete", false), cfg);
        } catch (const std::exception& e) {
            errors.push_back(std::string("analytic space: d: ") + e.what());
        }
    } else {
        errors.push_back("space type must be \"finite\" or \"analytic\", got \"" + type + "\"");
    }
}

inline void load_map(const json& j, Instance& inst, std::vector<std::string>& errors,
                     const SamplerConfig& cfg) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        errors.push_back("map: missing \"type\"");
        return;
    }
    std::string type = j["type"];
    if (type == "finite") {
        if (!inst.finite()) {
            errors.push_back("finite map over an analytic space");
            return;
        }
        if (!j.contains("image") || !j["image"].is_array()) {
            errors.push_back("finite map: missing \"image\" array");
            return;
        }
        std::vector<std::size_t> img;
        for (const auto& v : j["image"]) {
            if (v.is_number_unsigned() || v.is_number_integer()) {
                img.push_back(v.get<std::size_t>());
            } else if (v.is_string()) {
                auto ix = inst.finite_space().index(v.get<std::string>());
                if (!ix) {
                    errors.push_back("finite map: unknown point label " + v.dump());
                    return;
                }
                img.push_back(*ix);
            } else {
                errors.push_back("finite map: unreadable image entry " + v.dump());
                return;
            }
        }
        try {
            inst.finite_map = FiniteMap::make(std::move(img), inst.finite_space().size());
        } catch (const std::exception& e) {
            errors.push_back(std::string("finite map: ") + e.what());
        }
    } else if (type == "analytic") {
        if (inst.finite()) {
            errors.push_back("analytic map over a finite space");
            return;
        }
        if (!j.contains("f") || !j["f"].is_string()) {
            errors.push_back("analytic map: \"f\" must be an expression string");
            return;
        }
        try {
            auto m = AnalyticMap::make(parse_expression(j["f"].get<std::string>(), {"x"}));
            m.validate_range(inst.analytic_space(), cfg);
            inst.analytic_map = std::move(m);
        } catch (const std::exception& e) {
            errors.push_back(std::string("analytic map: f: ") + e.what());
        }
    } else {
        errors.push_back("map type must be \"finite\" or \"analytic\", got \"" + type + "\"");
    }
}

} // namespace serdedetail

/// Parses and validates a full instance document; returns either a usable
/// Instance or the list of everything wrong with the input.
inline LoadResult load_instance(const json& doc, const SamplerConfig& cfg = {}) {
    LoadResult res;
    if (!doc.is_object()) {
        res.errors.push_back("instance must be a JSON object");
        return res;
    }
    Instance inst;
    // a bare space object (with a top-level "type") is accepted as an
    // instance that only carries a space
    const json& space_obj = doc.contains("type") ? doc : (doc.contains("space") ? doc["space"] : json());
    if (space_obj.is_null()) {
        res.errors.push_back("instance: missing \"space\"");
    } else {
        serdedetail::load_space(space_obj, inst, res.errors, cfg);
    }
    // the map can only be validated against a loaded space
    if (doc.contains("map") && res.errors.empty()) serdedetail::load_map(doc["map"], inst, res.errors, cfg);

    if (doc.contains("functions")) {
        if (!doc["functions"].is_object()) {
            res.errors.push_back("\"functions\" must be an object of named piecewise functions");
        } else {
            for (const auto& [name, fj] : doc["functions"].items()) {
                try {
                    inst.functions.emplace(name, piecewise_from_json(fj));
                } catch (const std::exception& e) {
                    res.errors.push_back("function " + name + ": " + e.what());
                }
            }
        }
    }

    if (doc.contains("mode")) {
        if (doc["mode"].is_object() || doc["mode"].is_string())
            inst.mode_block = doc["mode"];
        else
            res.errors.push_back("\"mode\" must be an object or a string");
    }
    if (doc.contains("options")) {
        if (doc["options"].is_object())
            inst.options = doc["options"];
        else
            res.errors.push_back("\"options\" must be an object");
    }

    if (res.errors.empty()) res.instance = std::move(inst);
    return res;
}

/// Builds a solver Mode from the instance's mode block (or an explicit kind
/// override), resolving function names against the instance's functions with
/// the conventional fallbacks phi / phi1..phi3 / psi / psi1..psi3.
inline std::variant<Mode, std::vector<std::string>> resolve_mode(const Instance& inst,
                                                                 std::string kind_override = "") {
    std::vector<std::string> errors;
    json block = inst.mode_block.is_object() ? inst.mode_block : json::object();
    if (inst.mode_block.is_string()) block = json{{"kind", inst.mode_block.get<std::string>()}};
    std::string kind = !kind_override.empty() ? kind_override : block.value("kind", "");
    if (kind.empty()) {
        errors.push_back("no mode given: pass --mode or add a \"mode\" block to the instance");
        return errors;
    }

    auto fn = [&](std::initializer_list<const char*> keys) -> std::optional<PiecewiseFn> {
        for (const char* k : keys) {
            std::string name;
            if (block.contains(k) && block[k].is_string())
                name = block[k].get<std::string>();
            else if (inst.functions.count(k))
                name = k;
            if (name.empty()) continue;
            auto it = inst.functions.find(name);
            if (it == inst.functions.end()) {
                errors.push_back("mode references undefined function \"" + name + "\"");
                return std::nullopt;
            }
            return it->second;
        }
        errors.push_back(std::string("mode \"") + kind + "\" needs a function named \"" +
                         *keys.begin() + "\" (or an explicit reference in the mode block)");
        return std::nullopt;
    };

    if (kind == "banach") {
        std::optional<Rat> alpha;
        if (block.contains("alpha")) alpha = rat_from_json(block["alpha"]);
        if (!alpha && inst.options.contains("alpha")) alpha = rat_from_json(inst.options["alpha"]);
        if (!alpha) {
            errors.push_back("banach mode needs \"alpha\"");
            return errors;
        }
        return Mode{ModeBanach{*alpha}};
    }
    if (kind == "nonlinear") {
        auto phi = fn({"phi"});
        if (!phi) return errors;
        return Mode{ModeNonlinear{*phi}};
    }
    if (kind == "extended") {
        auto p1 = fn({"phi1", "phi"});
        auto p2 = fn({"phi2", "phi"});
        auto p3 = fn({"phi3", "phi"});
        if (!p1 || !p2 || !p3) return errors;
        return Mode{ModeExtended{*p1, *p2, *p3}};
    }
    if (kind == "iterated") {
        auto phi = fn({"phi"});
        if (!phi) return errors;
        std::size_t n = block.value("n", inst.options.value("n", 0));
        return Mode{ModeIterated{*phi, n}};
    }
    if (kind == "quasi") {
        auto p1 = fn({"psi1", "psi", "phi"});
        auto p2 = fn({"psi2", "psi", "phi"});
        auto p3 = fn({"psi3", "psi", "phi"});
        if (!p1 || !p2 || !p3) return errors;
        return Mode{ModeQuasi{*p1, *p2, *p3}};
    }
    errors.push_back("unknown mode \"" + kind + "\"");
    return errors;
}

} // namespace picard

#endif
