#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "wallcross/laurent.hpp"
#include "wallcross/rational.hpp"

namespace wallcross {

/**
 * Element of the coefficient ring: a rational function of l whose denominator
 * is a product of factors (l^k - 1) and a power of l. Stored as a Laurent
 * numerator over a denominator kept as a multiset of cyclotomic polynomials
 * Phi_d (the (l^k - 1) factorization is recovered at the serialization
 * boundary). Canonical form: no Phi_d in the denominator divides the
 * numerator, so the stored fraction is fully reduced and equality is a plain
 * field-by-field comparison; membership in the subring that avoids
 * (l - 1)^{-1} reads off the d = 1 slot.
 */
class LambdaElement {
public:
    LambdaElement() = default;
    explicit LambdaElement(const Rational& c) : _num(LaurentPolynomial::constant(c)) {}
    explicit LambdaElement(int c) : LambdaElement(Rational(c)) {}

    static LambdaElement from_laurent(LaurentPolynomial p) {
        LambdaElement x;
        x._num = std::move(p);
        return x;
    }
    // l^e as an element (e may be negative: l is a unit).
    static LambdaElement ell_power(int e) {
        return from_laurent(LaurentPolynomial::monomial(e));
    }
    // 1 / (l^k - 1)^mult.
    static LambdaElement inv_qfactor(int k, int mult = 1) {
        if (k < 1 || mult < 0) throw std::domain_error("invalid denominator factor");
        LambdaElement x(1);
        for (int d = 1; d <= k; ++d)
            if (k % d == 0) x._den[d] += mult;
        return x;
    }
    // (l^k - 1) as an element.
    static LambdaElement qfactor(int k) {
        return from_laurent(LaurentPolynomial::monomial(k) - LaurentPolynomial::one());
    }

    bool is_zero() const { return _num.is_zero(); }
    const LaurentPolynomial& num() const { return _num; }
    // Denominator as cyclotomic multiplicities d -> e (product of Phi_d^e).
    const std::map<int, int>& den_cyclotomic() const { return _den; }

    LaurentPolynomial den_poly() const {
        LaurentPolynomial p = LaurentPolynomial::one();
        for (const auto& [d, e] : _den)
            for (int i = 0; i < e; ++i) p *= cyclotomic(d);
        return p;
    }

    friend LambdaElement operator+(const LambdaElement& a, const LambdaElement& b) {
        LambdaElement r;
        r._den = a._den;
        for (const auto& [d, e] : b._den) {
            int& m = r._den[d];
            m = std::max(m, e);
        }
        LaurentPolynomial na = a._num, nb = b._num;
        for (const auto& [d, e] : r._den) {
            int ea = _mult(a._den, d), eb = _mult(b._den, d);
            for (int i = ea; i < e; ++i) na *= cyclotomic(d);
            for (int i = eb; i < e; ++i) nb *= cyclotomic(d);
        }
        r._num = na + nb;
        r._normalize();
        return r;
    }
    friend LambdaElement operator-(const LambdaElement& a, const LambdaElement& b) { return a + (-b); }
    LambdaElement operator-() const {
        LambdaElement r = *this;
        r._num = -r._num;
        return r;
    }

    friend LambdaElement operator*(const LambdaElement& a, const LambdaElement& b) {
        LambdaElement r;
        r._num = a._num * b._num;
        r._den = a._den;
        for (const auto& [d, e] : b._den) r._den[d] += e;
        r._normalize();
        return r;
    }

    LambdaElement& operator+=(const LambdaElement& o) { return *this = *this + o; }
    LambdaElement& operator-=(const LambdaElement& o) { return *this = *this - o; }
    LambdaElement& operator*=(const LambdaElement& o) { return *this = *this * o; }

    LambdaElement scaled(const Rational& c) const {
        if (c == 0) return LambdaElement();
        LambdaElement r = *this;
        r._num.scale(c);
        return r;
    }

    /**
     * Multiplicative inverse. The numerator must factor as
     * l^v * c * prod Phi_d; a residual non-cyclotomic factor means the
     * inverse lies outside the coefficient ring and raises domain_error.
     */
    LambdaElement inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        auto [shift, constant, factors] = _factor_num();
        LambdaElement r;
        r._num = LaurentPolynomial::monomial(-shift, Rational(1) / constant);
        for (const auto& [d, e] : _den)
            for (int i = 0; i < e; ++i) r._num *= cyclotomic(d);
        r._den = std::move(factors);
        r._normalize();
        return r;
    }

    friend LambdaElement operator/(const LambdaElement& a, const LambdaElement& b) {
        return a * b.inverse();
    }

    LambdaElement pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        LambdaElement out(1);
        LambdaElement base = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1) out *= base;
            if (e > 1) base *= base;
        }
        return out;
    }

    // Canonical forms are unique, so equality is structural. equals_cross
    // checks the same thing by cross-multiplication; kept for validation.
    bool operator==(const LambdaElement& o) const { return _num == o._num && _den == o._den; }
    bool operator!=(const LambdaElement& o) const { return !(*this == o); }
    static bool equals_cross(const LambdaElement& a, const LambdaElement& b) {
        return a._num * b.den_poly() == b._num * a.den_poly();
    }

    // Specialization l -> q. Poles (roots of the reduced denominator, and
    // q = 0 against negative numerator exponents) raise domain_error.
    Rational eval_at(const Rational& q) const {
        if (is_zero()) return Rational(0);
        if (q == 0 && _num.min_exp() < 0) throw std::domain_error("pole at 0");
        Rational den = 1;
        for (const auto& [d, e] : _den) {
            Rational v = cyclotomic(d).eval(q);
            if (v == 0) throw std::domain_error("pole at " + format_rational(q));
            den *= rational_pow(v, e);
        }
        return _num.eval(q) / den;
    }

    // True iff (l - 1) is absent from the reduced denominator.
    bool lambda0_member() const { return _den.find(1) == _den.end(); }

    // Evaluation at l = 1; defined exactly on lambda0 members.
    Rational project_omega() const {
        if (!lambda0_member()) throw std::domain_error("not a lambda0 member: pole at 1");
        return eval_at(Rational(1));
    }

    // Constant elements convert to plain rationals.
    Rational to_rational() const {
        if (!_den.empty() || !_num.is_constant())
            throw std::domain_error("element is not a constant");
        return _num.coeff(0);
    }

    /**
     * Numerator and denominator in (l^k - 1) form: each Phi_d^e in the
     * denominator becomes (l^d - 1)^e, multiplying the numerator copy by the
     * complementary cyclotomics. Value is unchanged.
     */
    struct SerialForm {
        LaurentPolynomial num;
        std::map<int, int> den;  // k -> multiplicity of (l^k - 1)
    };
    SerialForm serial_form() const {
        SerialForm f{_num, {}};
        for (const auto& [d, e] : _den) {
            f.den[d] += e;
            for (int d2 = 1; d2 < d; ++d2) {
                if (d % d2 != 0) continue;
                for (int i = 0; i < e; ++i) f.num *= cyclotomic(d2);
            }
        }
        return f;
    }

    std::string to_string(const std::string& var = "l") const {
        std::string n = _num.to_string(var);
        if (_den.empty()) return n;
        std::string d;
        for (const auto& [dd, e] : _den) {
            std::string f = "(" + cyclotomic(dd).to_string(var) + ")";
            if (e != 1) f += "^" + std::to_string(e);
            d += f;
        }
        if (_num.terms().size() > 1 || n.front() == '-') n = "(" + n + ")";
        return n + "/" + d;
    }

private:
    static int _mult(const std::map<int, int>& m, int d) {
        auto it = m.find(d);
        return it == m.end() ? 0 : it->second;
    }

    // Splits _num as l^shift * constant * prod Phi_d^e (throws if impossible).
    std::tuple<int, Rational, std::map<int, int>> _factor_num() const {
        LaurentPolynomial p = _num;
        int shift = p.min_exp();
        p = p.shifted(-shift);
        std::map<int, int> factors;
        int deg = p.max_exp();
        for (int d = 1; d <= 2 * deg * deg + 2 && deg > 0; ++d) {
            if (euler_totient(d) > deg) continue;
            while (true) {
                auto q = p.divided_exactly_by(cyclotomic(d));
                if (!q) break;
                p = std::move(*q);
                ++factors[d];
                deg = p.max_exp();
            }
        }
        if (p.max_exp() != 0)
            throw std::domain_error("quotient lies outside the coefficient ring");
        return {shift, p.coeff(0), factors};
    }

    void _normalize() {
        if (_num.is_zero()) {
            _den.clear();
            return;
        }
        for (auto it = _den.begin(); it != _den.end();) {
            auto& [d, e] = *it;
            while (e > 0) {
                auto q = _num.divided_exactly_by(cyclotomic(d));
                if (!q) break;
                _num = std::move(*q);
                --e;
            }
            it = (e == 0) ? _den.erase(it) : std::next(it);
        }
    }

    LaurentPolynomial _num;   // Laurent numerator (absorbs powers of l)
    std::map<int, int> _den;  // d -> multiplicity of Phi_d; values positive
};

struct OmegaValue {
    Rational value;
    bool operator==(const OmegaValue& o) const { return value == o.value; }
};

}  // namespace wallcross
