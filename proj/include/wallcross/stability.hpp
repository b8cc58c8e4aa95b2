#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcross/rational.hpp"

namespace wallcross {

/**
 * Lattice classes. Coordinates are integers over a declared basis:
 * dimension vectors for quivers, (rank, degree) pairs for curves.
 */
using KClass = std::vector<std::int64_t>;

inline KClass kclass_add(const KClass& a, const KClass& b) {
    if (a.size() != b.size()) throw std::invalid_argument("class size mismatch");
    KClass out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline KClass kclass_zero(std::size_t n) { return KClass(n, 0); }

inline bool kclass_is_zero(const KClass& a) {
    for (auto v : a)
        if (v != 0) return false;
    return true;
}

inline std::string kclass_to_string(const KClass& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

/**
 * A point of the totally ordered value set of a weak stability condition.
 *
 * Ordered lexicographically by (dim0, slope): values of zero-dimensional
 * type compare strictly greater than one-dimensional ones, and within a
 * dimension the rational slope decides. The trivial stability maps every
 * class to the same value (0, 0).
 */
struct TauValue {
    int dim0 = 0;  // 1 when the class has zero-dimensional type
    Rational slope = 0;

    friend bool operator==(const TauValue& a, const TauValue& b) {
        return a.dim0 == b.dim0 && a.slope == b.slope;
    }
    friend bool operator!=(const TauValue& a, const TauValue& b) { return !(a == b); }
    friend bool operator<(const TauValue& a, const TauValue& b) {
        if (a.dim0 != b.dim0) return a.dim0 < b.dim0;
        return a.slope < b.slope;
    }
    friend bool operator>(const TauValue& a, const TauValue& b) { return b < a; }
    friend bool operator<=(const TauValue& a, const TauValue& b) { return !(b < a); }
    friend bool operator>=(const TauValue& a, const TauValue& b) { return !(a < b); }
};

enum class StabilityKind { Trivial, Slope, CurveGieseker, CurvePurity };

/**
 * A weak stability condition: a rule assigning each positive-cone class a
 * totally ordered value, satisfying the weak seesaw inequality. Four kinds:
 *
 *  - trivial: every class gets the same value;
 *  - slope(c, r): value c(alpha)/r(alpha) on the nonnegative quiver cone,
 *    with r strictly positive there;
 *  - curve_gieseker(g): on (n,d), reduced Hilbert slope d/n + 1 - g for
 *    n > 0, and the strictly larger zero-dimensional value for n = 0;
 *  - curve_purity(g): only the support dimension matters.
 */
class WeakStability {
public:
    static WeakStability trivial() { return WeakStability(StabilityKind::Trivial, {}, {}, 0); }

    static WeakStability slope(std::vector<std::int64_t> c, std::vector<std::int64_t> r) {
        if (c.size() != r.size()) throw std::invalid_argument("slope weight size mismatch");
        if (c.empty()) throw std::invalid_argument("slope stability needs at least one vertex");
        for (auto v : r)
            if (v <= 0) throw std::invalid_argument("slope denominator weights must be positive");
        return WeakStability(StabilityKind::Slope, std::move(c), std::move(r), 0);
    }

    static WeakStability curve_gieseker(int genus) {
        return WeakStability(StabilityKind::CurveGieseker, {}, {}, genus);
    }

    static WeakStability curve_purity(int genus) {
        return WeakStability(StabilityKind::CurvePurity, {}, {}, genus);
    }

    StabilityKind kind() const { return _kind; }
    const std::vector<std::int64_t>& c_weights() const { return _c; }
    const std::vector<std::int64_t>& r_weights() const { return _r; }
    int genus() const { return _genus; }

    bool curve_kind() const {
        return _kind == StabilityKind::CurveGieseker || _kind == StabilityKind::CurvePurity;
    }

    // Membership in the positive cone the stability is defined on.
    bool in_cone(const KClass& a) const {
        if (curve_kind()) {
            if (a.size() != 2) return false;
            return a[0] > 0 || (a[0] == 0 && a[1] > 0);
        }
        if (_kind == StabilityKind::Slope && a.size() != _c.size()) return false;
        if (a.empty()) return false;
        bool nonzero = false;
        for (auto v : a) {
            if (v < 0) return false;
            if (v > 0) nonzero = true;
        }
        return nonzero;
    }

    TauValue tau(const KClass& a) const {
        if (!in_cone(a)) throw std::domain_error("class outside positive cone: " + kclass_to_string(a));
        switch (_kind) {
            case StabilityKind::Trivial:
                return TauValue{0, 0};
            case StabilityKind::Slope: {
                Integer num = 0, den = 0;
                for (std::size_t i = 0; i < a.size(); ++i) {
                    num += Integer(_c[i]) * a[i];
                    den += Integer(_r[i]) * a[i];
                }
                return TauValue{0, Rational(num, den)};
            }
            case StabilityKind::CurveGieseker: {
                if (a[0] == 0) return TauValue{1, 0};
                return TauValue{0, Rational(a[1], a[0]) + Rational(1 - _genus)};
            }
            case StabilityKind::CurvePurity:
                return TauValue{a[0] == 0 ? 1 : 0, 0};
        }
        throw std::logic_error("unreachable stability kind");
    }

    // Weak seesaw: with beta = alpha + gamma, the three values are monotone
    // in one direction or the other.
    bool check_weak_seesaw(const KClass& alpha, const KClass& gamma) const {
        TauValue ta = tau(alpha), tg = tau(gamma), tb = tau(kclass_add(alpha, gamma));
        return (ta <= tb && tb <= tg) || (ta >= tb && tb >= tg);
    }

private:
    WeakStability(StabilityKind kind, std::vector<std::int64_t> c, std::vector<std::int64_t> r,
                  int genus)
        : _kind(kind), _c(std::move(c)), _r(std::move(r)), _genus(genus) {}

    StabilityKind _kind;
    std::vector<std::int64_t> _c, _r;
    int _genus;
};

/**
 * Ordered sequence data: a list [kappa(1), ..., kappa(n)] of positive-cone
 * classes carried by the standard total order on {1, ..., n}.
 */
struct ADatum {
    std::vector<KClass> parts;

    std::size_t size() const { return parts.size(); }

    KClass range_sum(std::size_t lo, std::size_t hi) const {  // [lo, hi)
        if (lo >= hi || hi > parts.size()) throw std::invalid_argument("bad range");
        KClass s = parts[lo];
        for (std::size_t i = lo + 1; i < hi; ++i) s = kclass_add(s, parts[i]);
        return s;
    }

    KClass total() const { return range_sum(0, parts.size()); }
};

struct AdataPredicates {
    bool semistable = false;
    bool reversing = false;
};

// Semistable: every proper prefix has value <= the complementary suffix.
// Reversing: the per-part values are strictly decreasing.
inline AdataPredicates adata_predicates(const ADatum& d, const WeakStability& stab) {
    const std::size_t n = d.size();
    if (n == 0) throw std::invalid_argument("empty sequence");
    AdataPredicates out{true, true};
    for (std::size_t i = 1; i < n; ++i) {
        if (!(stab.tau(d.range_sum(0, i)) <= stab.tau(d.range_sum(i, n)))) out.semistable = false;
        if (!(stab.tau(d.parts[i - 1]) > stab.tau(d.parts[i]))) out.reversing = false;
    }
    return out;
}

/**
 * Finite poset on elements {0, ..., n-1}, stored as a full relation matrix.
 * The constructor rejects relations that are not reflexive, antisymmetric,
 * and transitive.
 */
class Poset {
public:
    explicit Poset(std::vector<std::vector<bool>> le) : _le(std::move(le)) {
        const std::size_t n = _le.size();
        for (const auto& row : _le)
            if (row.size() != n) throw std::invalid_argument("relation matrix not square");
        for (std::size_t i = 0; i < n; ++i)
            if (!_le[i][i]) throw std::invalid_argument("relation not reflexive");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && _le[i][j] && _le[j][i])
                    throw std::invalid_argument("relation not antisymmetric");
                if (_le[i][j])
                    for (std::size_t k = 0; k < n; ++k)
                        if (_le[j][k] && !_le[i][k])
                            throw std::invalid_argument("relation not transitive");
            }
    }

    static Poset total_order(int n) {
        std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) le[i][j] = true;
        return Poset(std::move(le));
    }

    static Poset antichain(int n) {
        std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) le[i][i] = true;
        return Poset(std::move(le));
    }

    // Reflexive-transitive closure of the given strict pairs; throws if the
    // closure violates antisymmetry (i.e. the pairs contain a cycle).
    static Poset from_strict_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
        std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) le[i][i] = true;
        for (const auto& [a, b] : pairs) {
            if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("pair out of range");
            le[a][b] = true;
        }
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                if (le[i][k])
                    for (int j = 0; j < n; ++j)
                        if (le[k][j]) le[i][j] = true;
        return Poset(std::move(le));
    }

    int size() const { return static_cast<int>(_le.size()); }
    bool leq(int i, int j) const { return _le[i][j]; }

    bool is_total() const {
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (!_le[i][j] && !_le[j][i]) return false;
        return true;
    }

    friend bool operator==(const Poset& a, const Poset& b) { return a._le == b._le; }
    friend bool operator!=(const Poset& a, const Poset& b) { return !(a == b); }

private:
    std::vector<std::vector<bool>> _le;
};

/**
 * Tests whether (I, order, K, phi) is a dominant quadruple: every fiber of
 * phi is totally ordered, and for each pair of distinct fibers the relation
 * between their elements is all-or-nothing. Returns the induced order on K
 * when it is, absent otherwise.
 */
inline std::optional<Poset> is_dominant(const Poset& order, int k_count,
                                        const std::vector<int>& phi) {
    const int n = order.size();
    if (static_cast<int>(phi.size()) != n) throw std::invalid_argument("phi size mismatch");
    std::vector<std::vector<int>> fibers(k_count);
    for (int i = 0; i < n; ++i) {
        if (phi[i] < 0 || phi[i] >= k_count) throw std::invalid_argument("phi out of range");
        fibers[phi[i]].push_back(i);
    }
    for (const auto& f : fibers)
        if (f.empty()) throw std::invalid_argument("phi not surjective");

    for (const auto& f : fibers)
        for (int a : f)
            for (int b : f)
                if (!order.leq(a, b) && !order.leq(b, a)) return std::nullopt;

    std::vector<std::vector<bool>> le(k_count, std::vector<bool>(k_count, false));
    for (int k = 0; k < k_count; ++k) le[k][k] = true;
    for (int k = 0; k < k_count; ++k)
        for (int k2 = 0; k2 < k_count; ++k2) {
            if (k == k2) continue;
            bool first = order.leq(fibers[k][0], fibers[k2][0]);
            for (int a : fibers[k])
                for (int b : fibers[k2])
                    if (order.leq(a, b) != first) return std::nullopt;
            le[k][k2] = first;
        }
    return Poset(std::move(le));
}

/**
 * All ordered tuples of nonzero nonnegative classes summing to alpha, on the
 * lattice whose positive cone is the nonnegative orthant minus zero. Only
 * finitely many exist there; lattices with infinite cones need their own
 * bounded enumerators.
 */
inline std::vector<ADatum> enumerate_decompositions(const KClass& alpha,
                                                    std::optional<int> n_max = std::nullopt) {
    for (auto v : alpha)
        if (v < 0)
            throw std::domain_error("decomposition enumeration needs a nonnegative class");
    if (kclass_is_zero(alpha)) throw std::domain_error("zero class has no decompositions");

    std::vector<ADatum> out;
    std::vector<KClass> stack;

    // Enumerate candidate first parts in lexicographic order, recurse on the rest.
    auto parts_below = [](const KClass& rem) {
        std::vector<KClass> cands;
        KClass cur(rem.size(), 0);
        for (;;) {
            std::size_t pos = 0;
            while (pos < rem.size()) {
                if (cur[pos] < rem[pos]) {
                    ++cur[pos];
                    break;
                }
                cur[pos] = 0;
                ++pos;
            }
            if (pos == rem.size()) break;
            cands.push_back(cur);
        }
        return cands;  // every nonzero vector componentwise <= rem, except none when rem = 0
    };

    auto rec = [&](auto&& self, const KClass& rem) -> void {
        if (kclass_is_zero(rem)) {
            out.push_back(ADatum{stack});
            return;
        }
        if (n_max && static_cast<int>(stack.size()) >= *n_max) return;
        for (const auto& part : parts_below(rem)) {
            KClass next(rem.size());
            for (std::size_t i = 0; i < rem.size(); ++i) next[i] = rem[i] - part[i];
            stack.push_back(part);
            self(self, next);
            stack.pop_back();
        }
    };
    rec(rec, alpha);
    return out;
}

}  // namespace wallcross
