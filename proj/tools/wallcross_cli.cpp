/**
 * Batch front end over the wallcross library: exact transformation
 * coefficients, quiver invariant tables with finite-field cross-checks,
 * curve series, and the randomized identity suites. Output is byte-stable
 * for a fixed invocation: rows are sorted, terms print in descending
 * exponent order, and randomized suites draw from a seed-pinned stream.
 *
 * Exit codes: 0 success, 1 malformed input, 2 identity violation or
 * oracle mismatch.
 */
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "wallcross/coefficients.hpp"
#include "wallcross/curve.hpp"
#include "wallcross/engine.hpp"
#include "wallcross/io.hpp"
#include "wallcross/quiver.hpp"
#include "wallcross/suites.hpp"

namespace {

using namespace wallcross;

// ---------------------------------------------------------------- parsing

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
    const std::string t = trimmed(text);
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(t, &pos);
        if (pos != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad " + what + " \"" + text + "\"");
    }
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<std::int64_t> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_int(part, what));
    return out;
}

// "1,0" or "[1,0]".
KClass parse_class(const std::string& text) {
    std::string t = trimmed(text);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') throw std::invalid_argument("unbalanced brackets in \"" + text + "\"");
        t = t.substr(1, t.size() - 2);
    }
    if (trimmed(t).empty()) throw std::invalid_argument("empty class in \"" + text + "\"");
    return parse_int_list(t, "class entry");
}

// "[1,0];[0,1]".
std::vector<KClass> parse_parts(const std::string& text) {
    std::vector<KClass> out;
    for (const auto& part : split(text, ';')) out.push_back(parse_class(part));
    if (out.empty()) throw std::invalid_argument("empty part list");
    std::size_t len = out.front().size();
    for (const auto& k : out)
        if (k.size() != len) throw std::invalid_argument("part length mismatch in \"" + text + "\"");
    return out;
}

// "trivial" or "slope c=1,0 r=1,1".
WeakStability parse_stability(const std::string& text) {
    std::istringstream in(trimmed(text));
    std::string head;
    in >> head;
    if (head == "trivial") {
        std::string rest;
        if (in >> rest) throw std::invalid_argument("unexpected token \"" + rest + "\" after trivial");
        return WeakStability::trivial();
    }
    if (head == "slope") {
        std::vector<std::int64_t> c, r;
        bool have_c = false, have_r = false;
        std::string tok;
        while (in >> tok) {
            if (tok.rfind("c=", 0) == 0) {
                c = parse_int_list(tok.substr(2), "slope weight");
                have_c = true;
            } else if (tok.rfind("r=", 0) == 0) {
                r = parse_int_list(tok.substr(2), "slope weight");
                have_r = true;
            } else {
                throw std::invalid_argument("unexpected token \"" + tok + "\" in slope stability");
            }
        }
        if (!have_c || !have_r)
            throw std::invalid_argument("slope stability needs c=... and r=...: \"" + text + "\"");
        return WeakStability::slope(std::move(c), std::move(r));
    }
    throw std::invalid_argument("unknown stability \"" + text + "\"");
}

// "1>2" or "1>2;1>3", vertices 1-based.
Digraph parse_tree(const std::string& text, int n) {
    Digraph g;
    g.n = n;
    for (const auto& part : split(text, ';')) {
        auto arrow = part.find('>');
        if (arrow == std::string::npos)
            throw std::invalid_argument("edge \"" + part + "\" is not of the form a>b");
        std::int64_t a = parse_int(part.substr(0, arrow), "tree vertex");
        std::int64_t b = parse_int(part.substr(arrow + 1), "tree vertex");
        if (a < 1 || a > n || b < 1 || b > n)
            throw std::invalid_argument("tree vertex out of range in \"" + part + "\"");
        g.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
    return g;
}

// ------------------------------------------------------------- formatting

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json class_json(const KClass& k) {
    Json a = Json::array();
    for (auto v : k) a.push_back(v);
    return a;
}

// ------------------------------------------------------------ subcommands

struct CoeffsOpts {
    std::string op, parts, from, to, tree, phi, format = "json";
};

int run_coeffs(const CoeffsOpts& o) {
    const std::vector<KClass> parts = parse_parts(o.parts);
    const int n = static_cast<int>(parts.size());
    const WeakStability from = parse_stability(o.from);
    const WeakStability to = parse_stability(o.to);

    Json out;
    out["op"] = o.op;
    Json jp = Json::array();
    for (const auto& k : parts) jp.push_back(class_json(k));
    out["parts"] = jp;
    out["from"] = stability_to_json(from);
    out["to"] = stability_to_json(to);

    std::string extra_col, extra_val;
    Rational value;
    if (o.op == "s" || o.op == "u") {
        if (!o.tree.empty() || !o.phi.empty())
            throw std::invalid_argument("--tree/--phi do not apply to op " + o.op);
        ADatum d{parts};
        value = o.op == "s" ? Rational(s_coeff(d, from, to)) : u_coeff(d, from, to);
    } else if (o.op == "t") {
        if (!o.tree.empty()) throw std::invalid_argument("--tree does not apply to op t");
        std::vector<int> phi;
        if (o.phi.empty()) {
            for (int i = 0; i < n; ++i) phi.push_back(i);
        } else {
            for (auto v : parse_int_list(o.phi, "fiber label")) {
                if (v < 1 || v > n) throw std::invalid_argument("fiber label out of range");
                phi.push_back(static_cast<int>(v - 1));
            }
        }
        if (static_cast<int>(phi.size()) != n)
            throw std::invalid_argument("--phi must assign one fiber per part");
        int k = *std::max_element(phi.begin(), phi.end()) + 1;
        std::set<int> seen(phi.begin(), phi.end());
        if (static_cast<int>(seen.size()) != k)
            throw std::invalid_argument("fiber labels must cover 1..k with no gaps");
        value = Rational(t_coeff(Poset::total_order(n), parts, k, phi, from, to));
        Json pj = Json::array();
        for (int f : phi) pj.push_back(f + 1);
        out["phi"] = pj;
        extra_col = "phi";
        extra_val = o.phi.empty() ? "" : o.phi;
    } else {
        if (o.tree.empty()) throw std::invalid_argument("op v needs --tree");
        Digraph g = parse_tree(o.tree, n);
        value = v_coeff(g, parts, from, to);
        Json tj = Json::array();
        for (auto [a, b] : g.edges) {
            Json e = Json::array();
            e.push_back(a + 1);
            e.push_back(b + 1);
            tj.push_back(e);
        }
        out["tree"] = tj;
        extra_col = "tree";
        extra_val = o.tree;
    }
    out["value"] = format_rational(value);

    if (o.format == "csv") {
        std::string header = "op,parts,from,to,";
        if (!extra_col.empty()) header += extra_col + ",";
        std::cout << header << "value\n";
        std::cout << o.op << "," << csv_quote(o.parts) << "," << csv_quote(o.from) << ","
                  << csv_quote(o.to) << ",";
        if (!extra_col.empty()) std::cout << csv_quote(extra_val) << ",";
        std::cout << format_rational(value) << "\n";
    } else {
        emit(out);
    }
    return 0;
}

struct QuiverOpts {
    std::string file, stability = "trivial", table = "iss", eval_at, format = "json";
    std::vector<std::string> classes;
    bool oracle = false;
    int oracle_guard = 4;
};

// Every nonzero class componentwise at most alpha.
std::vector<KClass> classes_below(const KClass& alpha) {
    std::vector<KClass> out;
    KClass cur(alpha.size(), 0);
    while (true) {
        std::size_t i = 0;
        while (i < alpha.size() && cur[i] == alpha[i]) cur[i++] = 0;
        if (i == alpha.size()) break;
        ++cur[i];
        out.push_back(cur);
    }
    return out;
}

int run_quiver(const QuiverOpts& o) {
    std::ifstream in(o.file);
    if (!in) throw std::invalid_argument("cannot open \"" + o.file + "\"");
    Json qj;
    try {
        qj = Json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument("bad quiver file: " + std::string(e.what()));
    }
    const QuiverPresentation q = quiver_from_json(qj);
    const WeakStability mu = parse_stability(o.stability);
    if (o.table != "iss" && o.table != "j")
        throw std::invalid_argument("unknown table \"" + o.table + "\"");
    if (o.oracle && o.table != "iss")
        throw std::invalid_argument("--oracle applies to the iss table only");

    std::set<KClass> classes;
    for (const auto& text : o.classes) {
        KClass k = parse_class(text);
        check_dim_vector(q, k);
        classes.insert(k);
    }

    std::optional<Rational> eval_q;
    if (!o.eval_at.empty()) eval_q = parse_rational(o.eval_at);
    int oracle_q = 2;
    if (o.oracle && eval_q) {
        if (denominator(*eval_q) != 1)
            throw std::invalid_argument("oracle evaluation point must be an integer");
        oracle_q = static_cast<int>(numerator(*eval_q).convert_to<std::int64_t>());
    }

    const EulerPairing chi = euler_form(q);
    Json out;
    out["quiver"] = quiver_to_json(q);
    out["stability"] = stability_to_json(mu);
    out["table"] = o.table;
    if (eval_q) out["eval_at"] = format_rational(*eval_q);
    if (o.oracle) out["oracle_field"] = oracle_q;

    bool mismatch = false;
    Json rows = Json::array();
    std::vector<std::vector<std::string>> csv_rows;
    for (const KClass& cls : classes) {
        LambdaElement value;
        std::optional<Rational> omega;
        if (o.table == "iss") {
            value = iss_semistable(q, cls, mu);
        } else {
            InvariantTable iss(TableFlavor::ISS);
            for (const KClass& b : classes_below(cls)) iss.set(b, iss_semistable(q, b, mu));
            value = j_from_iss(cls, mu, iss, chi);
            if (value.lambda0_member()) omega = value.project_omega();
        }
        Json row;
        row["class"] = class_json(cls);
        row["value"] = value.to_string();
        row["serial"] = lambda_to_json(value);
        std::vector<std::string> cr{kclass_to_string(cls), value.to_string()};
        if (omega) {
            row["omega"] = format_rational(*omega);
            cr.push_back(format_rational(*omega));
        } else if (o.table == "j") {
            cr.push_back("-");
        }
        if (eval_q) {
            Rational ev = value.eval_at(*eval_q);
            row["eval"] = format_rational(ev);
            cr.push_back(format_rational(ev));
        }
        if (o.oracle) {
            Rational count = ff_count_semistable(q, cls, mu, oracle_q, o.oracle_guard);
            bool match = count == value.eval_at(Rational(oracle_q));
            row["oracle"] = format_rational(count);
            row["verdict"] = match ? "MATCH" : "MISMATCH";
            cr.push_back(format_rational(count));
            cr.push_back(match ? "MATCH" : "MISMATCH");
            if (!match) mismatch = true;
        }
        rows.push_back(row);
        csv_rows.push_back(std::move(cr));
    }
    out["rows"] = rows;

    if (o.format == "csv") {
        std::string header = "class,value";
        if (o.table == "j") header += ",omega";
        if (eval_q) header += ",eval";
        if (o.oracle) header += ",oracle,verdict";
        std::cout << header << "\n";
        for (const auto& cr : csv_rows) {
            for (std::size_t i = 0; i < cr.size(); ++i)
                std::cout << (i ? "," : "") << csv_quote(cr[i]);
            std::cout << "\n";
        }
    } else {
        emit(out);
    }
    return mismatch ? 2 : 0;
}

struct CurveOpts {
    int genus = 0;
    std::int64_t rank = 1, degree = 0;
    std::string stability = "gieseker", format = "json";
    int floor = -10, guard = 8;
    bool poincare = false;
};

int run_curve(const CurveOpts& o) {
    if (o.rank < 1) throw std::invalid_argument("rank must be positive");
    if (o.genus < 0) throw std::invalid_argument("genus must be nonnegative");
    Json out;
    out["genus"] = o.genus;
    out["rank"] = o.rank;
    out["degree"] = o.degree;

    if (o.poincare) {
        LaurentPolynomial p = coprime_poincare(o.rank, o.degree, o.genus, o.guard);
        out["guard"] = o.guard;
        out["display"] = p.to_string("z");
        out["poincare"] = series_to_json(TruncatedSeries::from_z_poly(p));
        if (o.format == "csv") {
            std::cout << "genus,rank,degree,guard,pow,coeff\n";
            const auto& terms = p.terms();
            for (auto it = terms.rbegin(); it != terms.rend(); ++it)
                std::cout << o.genus << "," << o.rank << "," << o.degree << "," << o.guard << ","
                          << it->first << "," << format_rational(it->second) << "\n";
        } else {
            emit(out);
        }
        return 0;
    }

    WeakStability mu = WeakStability::trivial();
    TruncatedSeries series = TruncatedSeries::zero(o.floor);
    if (o.stability == "gieseker") {
        mu = WeakStability::curve_gieseker(o.genus);
        series = iss_gamma(o.rank, o.degree, o.genus, o.floor);
    } else if (o.stability == "purity") {
        mu = WeakStability::curve_purity(o.genus);
        series = iss_delta(o.rank, o.degree, o.genus, o.floor);
    } else {
        throw std::invalid_argument("unknown curve stability \"" + o.stability + "\"");
    }
    out["stability"] = stability_to_json(mu);
    out["floor"] = o.floor;
    out["display"] = series.to_string();
    out["series"] = series_to_json(series);
    if (o.format == "csv") {
        std::cout << "genus,rank,degree,stability,floor,pow,coeff\n";
        const auto& terms = series.terms();
        for (auto it = terms.rbegin(); it != terms.rend(); ++it)
            std::cout << o.genus << "," << o.rank << "," << o.degree << "," << o.stability << ","
                      << o.floor << "," << it->first << "," << format_rational(it->second) << "\n";
    } else {
        emit(out);
    }
    return 0;
}

struct CheckOpts {
    std::string suite = "all", format = "json";
    std::uint64_t seed = 1;
    int max_n = 6;
};

int run_check(const CheckOpts& o) {
    const std::vector<SuiteReport> reports = run_suites(o.suite, o.seed, o.max_n);
    long long cases = 0, failures = 0;
    for (const auto& r : reports) {
        cases += r.total_cases();
        failures += r.total_failures();
    }

    if (o.format == "csv") {
        std::cout << "suite,check,cases,failures,status\n";
        for (const auto& r : reports)
            for (const auto& c : r.checks)
                std::cout << r.suite << "," << csv_quote(c.name) << "," << c.cases << ","
                          << c.failures << "," << (c.passed() ? "PASS" : "FAIL") << "\n";
        std::cout << "total,," << cases << "," << failures << ","
                  << (failures == 0 ? "PASS" : "FAIL") << "\n";
    } else {
        Json out;
        out["suite"] = o.suite;
        out["seed"] = o.seed;
        out["max_n"] = o.max_n;
        Json js = Json::array();
        for (const auto& r : reports) {
            Json jr;
            jr["suite"] = r.suite;
            Json jc = Json::array();
            for (const auto& c : r.checks) {
                Json one;
                one["name"] = c.name;
                one["cases"] = c.cases;
                one["failures"] = c.failures;
                one["status"] = c.passed() ? "PASS" : "FAIL";
                jc.push_back(one);
            }
            jr["checks"] = jc;
            jr["cases"] = r.total_cases();
            jr["failures"] = r.total_failures();
            jr["status"] = r.passed() ? "PASS" : "FAIL";
            js.push_back(jr);
        }
        out["suites"] = js;
        out["cases"] = cases;
        out["failures"] = failures;
        out["status"] = failures == 0 ? "PASS" : "FAIL";
        emit(out);
    }
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact wall-crossing invariants"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "accepted for compatibility; outputs never depend on it")
        ->envname("WALLCROSS_JOBS");

    CoeffsOpts co;
    auto* coeffs = app.add_subcommand("coeffs", "print one transformation coefficient");
    coeffs->fallthrough();
    coeffs->add_option("op", co.op, "coefficient kind")
        ->required()
        ->check(CLI::IsMember({"s", "t", "u", "v"}));
    coeffs->add_option("--parts", co.parts, "class sequence, e.g. \"[1,0];[0,1]\"")->required();
    coeffs->add_option("--from", co.from, "source stability")->required();
    coeffs->add_option("--to", co.to, "target stability")->required();
    coeffs->add_option("--tree", co.tree, "oriented tree edges for op v, e.g. \"1>2\"");
    coeffs->add_option("--phi", co.phi, "fiber label per part for op t, e.g. \"1,1,2\"");
    coeffs->add_option("--format", co.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    QuiverOpts qo;
    auto* quiver = app.add_subcommand("quiver", "invariant table for a quiver");
    quiver->fallthrough();
    quiver->add_option("--file", qo.file, "quiver description (JSON)")->required();
    quiver->add_option("--class", qo.classes, "dimension vector, e.g. \"1,1\" (repeatable)")
        ->required();
    quiver->add_option("--stability", qo.stability, "trivial or slope c=... r=...");
    quiver->add_option("--table", qo.table, "iss or j")->check(CLI::IsMember({"iss", "j"}));
    quiver->add_option("--eval-at", qo.eval_at, "also evaluate each entry at this point");
    quiver->add_flag("--oracle", qo.oracle, "compare against the finite-field count");
    quiver->add_option("--oracle-guard", qo.oracle_guard, "total dimension cap for the count");
    quiver->add_option("--format", qo.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CurveOpts uo;
    auto* curve = app.add_subcommand("curve", "sheaf-counting series on a smooth curve");
    curve->fallthrough();
    curve->add_option("--genus", uo.genus, "curve genus")->required();
    curve->add_option("--rank", uo.rank, "sheaf rank")->required();
    curve->add_option("--degree", uo.degree, "sheaf degree")->required();
    curve->add_option("--stability", uo.stability, "gieseker or purity");
    curve->add_option("--floor", uo.floor, "lowest retained exponent");
    curve->add_flag("--poincare", uo.poincare, "coprime moduli polynomial instead of a series");
    curve->add_option("--guard", uo.guard, "termination guard for --poincare");
    curve->add_option("--format", uo.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CheckOpts ko;
    auto* check = app.add_subcommand("check", "run randomized identity suites");
    check->fallthrough();
    check->add_option("--suite", ko.suite, "coeffs, engine, quiver, curve, cy3 or all")
        ->check(CLI::IsMember({"coeffs", "engine", "quiver", "curve", "cy3", "all"}));
    check->add_option("--seed", ko.seed, "seed pinning every randomized draw");
    check->add_option("--max-n", ko.max_n, "cap on sequence lengths (clamped per family)")
        ->check(CLI::Range(1, 8));
    check->add_option("--format", ko.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
        if (coeffs->parsed()) return run_coeffs(co);
        if (quiver->parsed()) return run_quiver(qo);
        if (curve->parsed()) return run_curve(uo);
        return run_check(ko);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
