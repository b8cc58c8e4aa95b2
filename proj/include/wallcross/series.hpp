#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "wallcross/lambda.hpp"
#include "wallcross/laurent.hpp"
#include "wallcross/rational.hpp"

namespace wallcross {

/**
 * Laurent series in z with exponents bounded above, retained down to an
 * explicit floor (inclusive). A series stands for its value modulo the
 * filtration below the floor; every arithmetic result carries the weakest
 * (largest) floor of its inputs. Exact polynomials use the kExact sentinel
 * floor, which never weakens a partner's floor.
 */
class TruncatedSeries {
public:
    static constexpr int kExact = std::numeric_limits<int>::min() / 4;

    explicit TruncatedSeries(int floor = kExact) : _floor(floor) {}

    static TruncatedSeries from_z_poly(const LaurentPolynomial& p, int floor = kExact) {
        TruncatedSeries s(floor);
        for (const auto& [e, c] : p.terms()) s.add_term(e, c);
        return s;
    }
    static TruncatedSeries zero(int floor) { return TruncatedSeries(floor); }
    static TruncatedSeries one() { return from_z_poly(LaurentPolynomial::one()); }

    int floor() const { return _floor; }
    bool exact() const { return _floor == kExact; }
    bool is_zero() const { return _terms.empty(); }
    const std::map<int, Rational>& terms() const { return _terms; }

    Rational coeff(int e) const {
        auto it = _terms.find(e);
        return it == _terms.end() ? Rational(0) : it->second;
    }
    int top_exp() const {
        if (is_zero()) throw std::domain_error("top_exp of zero series");
        return _terms.rbegin()->first;
    }
    int low_exp() const {
        if (is_zero()) throw std::domain_error("low_exp of zero series");
        return _terms.begin()->first;
    }

    void add_term(int e, const Rational& c) {
        if (c == 0 || e < _floor) return;
        auto [it, inserted] = _terms.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) _terms.erase(it);
        }
    }

    // Raises the floor (drops terms below it). Never lowers.
    TruncatedSeries truncated(int floor) const {
        if (floor <= _floor) return *this;
        TruncatedSeries s(floor);
        for (const auto& [e, c] : _terms)
            if (e >= floor) s._terms.emplace(e, c);
        return s;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries s(std::max(a._floor, b._floor));
        for (const auto& [e, c] : a._terms) s.add_term(e, c);
        for (const auto& [e, c] : b._terms) s.add_term(e, c);
        return s;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a + (-b);
    }
    TruncatedSeries operator-() const {
        TruncatedSeries s(_floor);
        for (const auto& [e, c] : _terms) s._terms.emplace(e, -c);
        return s;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries s(std::max(a._floor, b._floor));
        for (const auto& [ea, ca] : a._terms)
            for (const auto& [eb, cb] : b._terms) s.add_term(ea + eb, ca * cb);
        return s;
    }
    TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
    TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this = *this - o; }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    TruncatedSeries scaled(const Rational& c) const {
        TruncatedSeries s(_floor);
        if (c == 0) return s;
        for (const auto& [e, v] : _terms) s._terms.emplace(e, v * c);
        return s;
    }
    TruncatedSeries shifted(int by) const {
        TruncatedSeries s(_floor == kExact ? kExact : _floor + by);
        for (const auto& [e, c] : _terms) s._terms.emplace(e + by, c);
        return s;
    }

    /**
     * Long division by the leading (highest-exponent) term, down to
     * result_floor. Faithful modulo the filtration when the divisor is exact
     * or has top exponent >= 0 (all in-tree divisors are exact polynomials
     * with positive top). Two exact operands need an explicit result_floor.
     */
    static TruncatedSeries div(const TruncatedSeries& a, const TruncatedSeries& b,
                               int result_floor) {
        if (b.is_zero()) throw std::domain_error("series division by zero");
        // The quotient can never be more faithful than the operands.
        result_floor = std::max({result_floor, a._floor == kExact ? result_floor : a._floor,
                                 b._floor == kExact ? result_floor : b._floor});
        TruncatedSeries q(result_floor);
        int tb = b.top_exp();
        Rational lead = b._terms.rbegin()->second;
        TruncatedSeries r = a;
        // Terms of r below result_floor + tb can never influence retained
        // quotient terms; keep r pruned there so the loop terminates.
        while (!r.is_zero()) {
            r = r.truncated_keep_floor(result_floor + tb);
            if (r.is_zero()) break;
            int e = r.top_exp() - tb;
            if (e < result_floor) break;
            Rational c = r._terms.rbegin()->second / lead;
            q._terms.emplace(e, c);
            for (const auto& [eb, cb] : b._terms) r.add_unfloored(eb + e, -cb * c);
        }
        return q;
    }

    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
        int f = std::max(a._floor, b._floor);
        if (f == kExact)
            throw std::domain_error("division of two exact series needs an explicit floor");
        return div(a, b, f);
    }

    bool operator==(const TruncatedSeries& o) const {
        return _floor == o._floor && _terms == o._terms;
    }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    // Agreement above the weaker of the two floors.
    static bool matches(const TruncatedSeries& a, const TruncatedSeries& b) {
        int f = std::max(a._floor, b._floor);
        return a.truncated(f)._terms == b.truncated(f)._terms;
    }

    std::string to_string() const {
        std::string s = from_terms_string();
        if (!exact()) s += (s.empty() ? "O(z^" : " + O(z^") + std::to_string(_floor - 1) + ")";
        return s.empty() ? "0" : s;
    }

private:
    std::string from_terms_string() const {
        LaurentPolynomial p;
        for (const auto& [e, c] : _terms) p.add_term(e, c);
        return p.is_zero() ? "" : p.to_string("z");
    }

    TruncatedSeries truncated_keep_floor(int cut) const {
        TruncatedSeries s(_floor);
        for (auto it = _terms.lower_bound(cut); it != _terms.end(); ++it)
            s._terms.emplace(it->first, it->second);
        return s;
    }
    void add_unfloored(int e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = _terms.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) _terms.erase(it);
        }
    }

    std::map<int, Rational> _terms;
    int _floor;
};

/**
 * Expands an element of the coefficient ring as a z-series (l = z^2) down to
 * the given floor: the numerator passes through with doubled exponents and
 * each denominator factor (l^k - 1) is divided out, which reproduces the
 * geometric expansion 1/(l^k - 1) = sum_{n >= 1} l^{-nk}.
 */
inline TruncatedSeries expand_series(const LambdaElement& x, int floor) {
    auto form = x.serial_form();
    LaurentPolynomial num_z;
    for (const auto& [e, c] : form.num.terms()) num_z.add_term(2 * e, c);
    TruncatedSeries s = TruncatedSeries::from_z_poly(num_z).truncated(floor);
    for (const auto& [k, mult] : form.den) {
        LaurentPolynomial f = LaurentPolynomial::monomial(2 * k) - LaurentPolynomial::one();
        TruncatedSeries den = TruncatedSeries::from_z_poly(f);
        for (int i = 0; i < mult; ++i) s = TruncatedSeries::div(s, den, floor);
    }
    return s;
}

}  // namespace wallcross
