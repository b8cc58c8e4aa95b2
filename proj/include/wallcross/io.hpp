#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wallcross/engine.hpp"
#include "wallcross/lambda.hpp"
#include "wallcross/laurent.hpp"
#include "wallcross/quiver.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/series.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

// Insertion-ordered documents keep output byte-stable across runs.
using Json = nlohmann::ordered_json;

namespace io_detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw std::invalid_argument("expected an object with field \"" + std::string(key) + "\"");
    auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument("missing field \"" + std::string(key) + "\"");
    return *it;
}

inline int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw std::invalid_argument("field \"" + std::string(key) + "\" must be an integer");
    return v.get<int>();
}

inline std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) throw std::invalid_argument("field \"" + std::string(key) + "\" must be a string");
    return v.get<std::string>();
}

inline const Json& array_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_array()) throw std::invalid_argument("field \"" + std::string(key) + "\" must be an array");
    return v;
}

inline Rational rational_field(const Json& j, const char* key) {
    return parse_rational(string_field(j, key));
}

// Term lists serialize highest exponent first.
inline Json term_array(const std::map<int, Rational>& terms) {
    Json out = Json::array();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        out.push_back(Json{{"pow", it->first}, {"coeff", format_rational(it->second)}});
    return out;
}

inline std::vector<std::int64_t> int64_vector(const Json& v, const char* what) {
    if (!v.is_array()) throw std::invalid_argument(std::string(what) + " must be an array of integers");
    std::vector<std::int64_t> out;
    for (const Json& x : v) {
        if (!x.is_number_integer()) throw std::invalid_argument(std::string(what) + " must contain only integers");
        out.push_back(x.get<std::int64_t>());
    }
    return out;
}

}  // namespace io_detail

/**
 * Coefficient-ring elements serialize as a Laurent numerator against a list
 * of (l^k - 1) denominator factors, with the numerator's leading power of l
 * split off so its term list starts at exponent zero:
 *
 *   {"num":[{"pow":int,"coeff":"p/q"},...],"den":[{"k":int,"mult":int},...],"lpow":int}
 *
 * The zero element has an empty numerator. Parsing re-normalizes, so any
 * equivalent presentation decodes to the same canonical element.
 */
inline Json lambda_to_json(const LambdaElement& x) {
    LambdaElement::SerialForm f = x.serial_form();
    int lpow = 0;
    LaurentPolynomial num = f.num;
    if (!num.is_zero()) {
        lpow = num.min_exp();
        num = num.shifted(-lpow);
    }
    Json den = Json::array();
    for (const auto& [k, mult] : f.den) den.push_back(Json{{"k", k}, {"mult", mult}});
    return Json{{"num", io_detail::term_array(num.terms())}, {"den", den}, {"lpow", lpow}};
}

inline LambdaElement lambda_from_json(const Json& j) {
    LaurentPolynomial num;
    for (const Json& t : io_detail::array_field(j, "num"))
        num.add_term(io_detail::int_field(t, "pow"), io_detail::rational_field(t, "coeff"));
    LambdaElement out = LambdaElement::from_laurent(num.shifted(io_detail::int_field(j, "lpow")));
    for (const Json& d : io_detail::array_field(j, "den")) {
        int k = io_detail::int_field(d, "k");
        int mult = io_detail::int_field(d, "mult");
        if (k < 1 || mult < 1)
            throw std::invalid_argument("denominator factors need positive \"k\" and \"mult\"");
        out *= LambdaElement::inv_qfactor(k, mult);
    }
    return out;
}

/**
 * Truncated z-series:
 *
 *   {"var":"z","floor":int,"terms":[{"pow":int,"coeff":"p/q"},...]}
 *
 * The floor is the retention policy verbatim, so round trips preserve it.
 */
inline Json series_to_json(const TruncatedSeries& s) {
    return Json{{"var", "z"}, {"floor", s.floor()}, {"terms", io_detail::term_array(s.terms())}};
}

inline TruncatedSeries series_from_json(const Json& j) {
    if (io_detail::string_field(j, "var") != "z")
        throw std::invalid_argument("series variable must be \"z\"");
    TruncatedSeries out = TruncatedSeries::zero(io_detail::int_field(j, "floor"));
    for (const Json& t : io_detail::array_field(j, "terms"))
        out.add_term(io_detail::int_field(t, "pow"), io_detail::rational_field(t, "coeff"));
    return out;
}

/**
 * Stability conditions:
 *
 *   {"kind":"trivial"}
 *   {"kind":"slope","c":[..],"r":[..]}
 *   {"kind":"curve_gieseker","genus":g}
 *   {"kind":"curve_purity","genus":g}
 */
inline Json stability_to_json(const WeakStability& s) {
    switch (s.kind()) {
        case StabilityKind::Trivial:
            return Json{{"kind", "trivial"}};
        case StabilityKind::Slope:
            return Json{{"kind", "slope"}, {"c", s.c_weights()}, {"r", s.r_weights()}};
        case StabilityKind::CurveGieseker:
            return Json{{"kind", "curve_gieseker"}, {"genus", s.genus()}};
        case StabilityKind::CurvePurity:
            return Json{{"kind", "curve_purity"}, {"genus", s.genus()}};
    }
    throw std::logic_error("unreachable stability kind");
}

inline WeakStability stability_from_json(const Json& j) {
    std::string kind = io_detail::string_field(j, "kind");
    if (kind == "trivial") return WeakStability::trivial();
    if (kind == "slope")
        return WeakStability::slope(io_detail::int64_vector(io_detail::field(j, "c"), "\"c\""),
                                    io_detail::int64_vector(io_detail::field(j, "r"), "\"r\""));
    if (kind == "curve_gieseker") return WeakStability::curve_gieseker(io_detail::int_field(j, "genus"));
    if (kind == "curve_purity") return WeakStability::curve_purity(io_detail::int_field(j, "genus"));
    throw std::invalid_argument("unknown stability kind \"" + kind + "\"");
}

inline std::string table_flavor_name(TableFlavor f) {
    switch (f) {
        case TableFlavor::ISS: return "ISS";
        case TableFlavor::J: return "J";
        case TableFlavor::JOmega: return "J_OMEGA";
    }
    throw std::logic_error("unreachable table flavor");
}

inline TableFlavor table_flavor_from_name(const std::string& name) {
    if (name == "ISS") return TableFlavor::ISS;
    if (name == "J") return TableFlavor::J;
    if (name == "J_OMEGA") return TableFlavor::JOmega;
    throw std::invalid_argument("unknown table flavor \"" + name + "\"");
}

/**
 * Invariant tables:
 *
 *   {"flavor":"ISS|J|J_OMEGA","entries":[{"class":[ints],"value":...},...]}
 *
 * Entries are emitted in lexicographic class order. Numerical-flavor values
 * are written as bare rational strings; parsing accepts either form for any
 * flavor, with constancy enforced where required.
 */
inline Json table_to_json(const InvariantTable& t) {
    Json entries = Json::array();
    for (const auto& [cls, value] : t.entries()) {
        Json v = (t.flavor() == TableFlavor::JOmega) ? Json(format_rational(value.to_rational()))
                                                     : lambda_to_json(value);
        entries.push_back(Json{{"class", cls}, {"value", std::move(v)}});
    }
    return Json{{"flavor", table_flavor_name(t.flavor())}, {"entries", entries}};
}

inline InvariantTable table_from_json(const Json& j) {
    InvariantTable out(table_flavor_from_name(io_detail::string_field(j, "flavor")));
    for (const Json& e : io_detail::array_field(j, "entries")) {
        KClass cls = io_detail::int64_vector(io_detail::field(e, "class"), "\"class\"");
        const Json& v = io_detail::field(e, "value");
        LambdaElement value;
        if (v.is_string())
            value = LambdaElement(parse_rational(v.get<std::string>()));
        else
            value = lambda_from_json(v);
        out.set(cls, std::move(value));
    }
    return out;
}

/**
 * Quiver presentations, with arrows referring to vertices by label:
 *
 *   {"vertices":["1","2"],"arrows":[{"from":"1","to":"2"},...]}
 */
inline Json quiver_to_json(const QuiverPresentation& q) {
    Json arrows = Json::array();
    for (const auto& [b, e] : q.arrows)
        arrows.push_back(Json{{"from", q.vertices[b]}, {"to", q.vertices[e]}});
    return Json{{"vertices", q.vertices}, {"arrows", arrows}};
}

inline QuiverPresentation quiver_from_json(const Json& j) {
    std::vector<std::string> vertices;
    std::map<std::string, int> index;
    for (const Json& v : io_detail::array_field(j, "vertices")) {
        if (!v.is_string()) throw std::invalid_argument("vertex labels must be strings");
        std::string label = v.get<std::string>();
        if (!index.emplace(label, static_cast<int>(vertices.size())).second)
            throw std::invalid_argument("duplicate vertex label \"" + label + "\"");
        vertices.push_back(std::move(label));
    }
    std::vector<std::pair<int, int>> arrows;
    for (const Json& a : io_detail::array_field(j, "arrows")) {
        auto endpoint = [&](const char* key) {
            std::string label = io_detail::string_field(a, key);
            auto it = index.find(label);
            if (it == index.end())
                throw std::invalid_argument("arrow references undeclared vertex \"" + label + "\"");
            return it->second;
        };
        int from = endpoint("from");
        int to = endpoint("to");
        arrows.emplace_back(from, to);
    }
    return QuiverPresentation(std::move(vertices), std::move(arrows));
}

}  // namespace wallcross
