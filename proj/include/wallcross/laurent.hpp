#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wallcross/rational.hpp"

namespace wallcross {

/**
 * Laurent polynomial in one variable with exact rational coefficients.
 * Canonical form: no stored zero coefficients; the zero polynomial has an
 * empty term map. Exponents may be negative.
 */
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;

    static LaurentPolynomial monomial(int pow, const Rational& coeff = Rational(1)) {
        LaurentPolynomial p;
        if (coeff != 0) p._terms.emplace(pow, coeff);
        return p;
    }
    static LaurentPolynomial constant(const Rational& c) { return monomial(0, c); }
    static LaurentPolynomial zero() { return LaurentPolynomial(); }
    static LaurentPolynomial one() { return constant(Rational(1)); }

    bool is_zero() const { return _terms.empty(); }
    bool is_constant() const {
        return _terms.empty() || (_terms.size() == 1 && _terms.begin()->first == 0);
    }

    const std::map<int, Rational>& terms() const { return _terms; }

    Rational coeff(int pow) const {
        auto it = _terms.find(pow);
        return it == _terms.end() ? Rational(0) : it->second;
    }

    // Lowest/highest exponent present; both require a nonzero polynomial.
    int min_exp() const {
        if (is_zero()) throw std::domain_error("min_exp of zero polynomial");
        return _terms.begin()->first;
    }
    int max_exp() const {
        if (is_zero()) throw std::domain_error("max_exp of zero polynomial");
        return _terms.rbegin()->first;
    }

    void add_term(int pow, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = _terms.emplace(pow, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) _terms.erase(it);
        }
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
        for (const auto& [p, c] : o._terms) add_term(p, c);
        return *this;
    }
    LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
        for (const auto& [p, c] : o._terms) add_term(p, -c);
        return *this;
    }
    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
        a += b;
        return a;
    }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
        a -= b;
        return a;
    }
    LaurentPolynomial operator-() const {
        LaurentPolynomial r;
        for (const auto& [p, c] : _terms) r._terms.emplace(p, -c);
        return r;
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        LaurentPolynomial r;
        for (const auto& [pa, ca] : a._terms)
            for (const auto& [pb, cb] : b._terms) r.add_term(pa + pb, ca * cb);
        return r;
    }
    LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

    LaurentPolynomial& scale(const Rational& c) {
        if (c == 0) {
            _terms.clear();
            return *this;
        }
        for (auto& [p, v] : _terms) v *= c;
        return *this;
    }
    friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c) { return a.scale(c); }
    friend LaurentPolynomial operator*(const Rational& c, LaurentPolynomial a) { return a.scale(c); }

    // Multiplication by a monomial: exponent shift.
    LaurentPolynomial shifted(int by) const {
        LaurentPolynomial r;
        for (const auto& [p, c] : _terms) r._terms.emplace(p + by, c);
        return r;
    }

    bool operator==(const LaurentPolynomial& o) const { return _terms == o._terms; }
    bool operator!=(const LaurentPolynomial& o) const { return !(*this == o); }

    // Evaluation at a rational point; negative exponents require x != 0.
    Rational eval(const Rational& x) const {
        Rational out = 0;
        for (const auto& [p, c] : _terms) out += c * rational_pow(x, p);
        return out;
    }

    /**
     * Exact division in the Laurent ring: returns *this / d when d divides
     * *this (monomials are units), otherwise nullopt. d must be nonzero.
     */
    std::optional<LaurentPolynomial> divided_exactly_by(const LaurentPolynomial& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        if (is_zero()) return LaurentPolynomial();
        // Strip units: a = x^va * A, d = x^vd * D with A(0), D(0) != 0.
        int va = min_exp(), vd = d.min_exp();
        std::vector<Rational> A = shifted(-va)._dense(), D = d.shifted(-vd)._dense();
        int degA = static_cast<int>(A.size()) - 1, degD = static_cast<int>(D.size()) - 1;
        if (degA < degD) return std::nullopt;
        std::vector<Rational> Q(degA - degD + 1, Rational(0));
        for (int k = degA - degD; k >= 0; --k) {
            Rational q = A[k + degD] / D[degD];
            Q[k] = q;
            if (q == 0) continue;
            for (int j = 0; j <= degD; ++j) A[k + j] -= q * D[j];
        }
        for (int j = 0; j < degD; ++j)
            if (A[j] != 0) return std::nullopt;
        LaurentPolynomial out;
        for (int k = 0; k < static_cast<int>(Q.size()); ++k) out.add_term(k + va - vd, Q[k]);
        return out;
    }

    bool divides(const LaurentPolynomial& a) const { return a.divided_exactly_by(*this).has_value(); }

    // Rendering with a caller-chosen variable symbol, descending exponents.
    std::string to_string(const std::string& var = "l") const {
        if (is_zero()) return "0";
        std::string out;
        for (auto it = _terms.rbegin(); it != _terms.rend(); ++it) {
            const auto& [p, c] = *it;
            Rational a = c;
            if (out.empty()) {
                if (a < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += a < 0 ? " - " : " + ";
                if (a < 0) a = -a;
            }
            bool unit_coeff = (a == 1) && p != 0;
            if (!unit_coeff) out += format_rational(a);
            if (p != 0) {
                if (!unit_coeff) out += "*";
                out += var;
                if (p != 1) out += "^" + std::to_string(p);
            }
        }
        return out;
    }

private:
    std::vector<Rational> _dense() const {
        // Pre: nonzero with min_exp() == 0.
        std::vector<Rational> v(static_cast<size_t>(max_exp()) + 1, Rational(0));
        for (const auto& [p, c] : _terms) v[static_cast<size_t>(p)] = c;
        return v;
    }

    std::map<int, Rational> _terms;
};

/**
 * d-th cyclotomic polynomial, computed by exact division
 * Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e and memoized.
 * Map node stability keeps returned references valid across later inserts.
 */
inline const LaurentPolynomial& cyclotomic(int d) {
    static std::mutex guard;
    static std::map<int, LaurentPolynomial> cache;
    if (d < 1) throw std::domain_error("cyclotomic index must be positive");
    {
        std::lock_guard<std::mutex> lock(guard);
        auto it = cache.find(d);
        if (it != cache.end()) return it->second;
    }
    LaurentPolynomial num = LaurentPolynomial::monomial(d) - LaurentPolynomial::one();
    for (int e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        auto q = num.divided_exactly_by(cyclotomic(e));
        num = std::move(*q);
    }
    std::lock_guard<std::mutex> lock(guard);
    return cache.emplace(d, std::move(num)).first->second;
}

inline int euler_totient(int d) {
    int phi = d;
    for (int p = 2; p * p <= d; ++p) {
        if (d % p != 0) continue;
        phi -= phi / p;
        while (d % p == 0) d /= p;
    }
    if (d > 1) phi -= phi / d;
    return phi;
}

}  // namespace wallcross
