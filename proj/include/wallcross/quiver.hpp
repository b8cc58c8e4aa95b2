#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wallcross/engine.hpp"
#include "wallcross/lambda.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

/**
 * Finite quiver: labeled vertices and directed arrows between them. Parallel
 * arrows and loops are permitted.
 */
struct QuiverPresentation {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> arrows;  // (begin, end) as vertex indices

    QuiverPresentation(std::vector<std::string> v, std::vector<std::pair<int, int>> a)
        : vertices(std::move(v)), arrows(std::move(a)) {
        if (vertices.empty()) throw std::invalid_argument("quiver needs at least one vertex");
        for (const auto& [b, e] : arrows)
            if (b < 0 || e < 0 || b >= static_cast<int>(vertices.size()) ||
                e >= static_cast<int>(vertices.size()))
                throw std::invalid_argument("arrow endpoint is not a declared vertex");
    }

    std::size_t vertex_count() const { return vertices.size(); }
};

inline void check_dim_vector(const QuiverPresentation& q, const KClass& alpha) {
    if (alpha.size() != q.vertex_count())
        throw std::domain_error("dimension vector length mismatch: " + kclass_to_string(alpha));
    bool nonzero = false;
    for (auto v : alpha) {
        if (v < 0)
            throw std::domain_error("dimension vector has a negative entry: " +
                                    kclass_to_string(alpha));
        nonzero = nonzero || v > 0;
    }
    if (!nonzero) throw std::domain_error("dimension vector is zero");
}

inline EulerPairing euler_form(const QuiverPresentation& q) {
    const std::size_t n = q.vertex_count();
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t v = 0; v < n; ++v) m[v][v] = 1;
    for (const auto& [b, e] : q.arrows) m[b][e] -= 1;
    return EulerPairing(std::move(m));
}

/**
 * Stack volume of all representations of class alpha: the affine space of
 * arrow maps divided by the product of general linear groups.
 */
inline LambdaElement iss_trivial(const QuiverPresentation& q, const KClass& alpha) {
    check_dim_vector(q, alpha);
    std::int64_t e = 0;
    for (const auto& [b, en] : q.arrows) e += alpha[b] * alpha[en];
    for (auto v : alpha) e -= v * (v - 1) / 2;
    LambdaElement out = LambdaElement::ell_power(static_cast<int>(e));
    for (auto v : alpha)
        for (int k = 1; k <= v; ++k) out *= LambdaElement::inv_qfactor(k);
    return out;
}

/**
 * Semistable invariant of class alpha: the signed twisted sum over ordered
 * decompositions whose proper prefix sums all exceed the total's value.
 * Equivalent by construction to crossing the trivial-stability table, which
 * the tests exercise as an independent route.
 */
inline LambdaElement iss_semistable(const QuiverPresentation& q, const KClass& alpha,
                                    const WeakStability& mu) {
    if (mu.kind() != StabilityKind::Trivial && mu.kind() != StabilityKind::Slope)
        throw std::domain_error("stability kind unsupported on quiver lattices");
    check_dim_vector(q, alpha);
    EulerPairing chi = euler_form(q);
    const TauValue target = mu.tau(alpha);
    LambdaElement total;
    for (const ADatum& d : enumerate_decompositions(alpha)) {
        const int n = static_cast<int>(d.size());
        bool ok = true;
        for (int i = 1; i < n && ok; ++i) ok = mu.tau(d.range_sum(0, i)) > target;
        if (!ok) continue;
        LambdaElement term = sequence_twist(d, chi).scaled(Rational(n % 2 == 1 ? 1 : -1));
        for (const auto& p : d.parts) term *= iss_trivial(q, p);
        total += term;
    }
    return total;
}

/**
 * Arithmetic tables for the finite fields of order 2, 3, and 4. The order-4
 * field is realized on {0,1,2,3} with bitwise addition and x^2 = x + 1.
 */
class GaloisField {
public:
    explicit GaloisField(int q) : _q(q) {
        if (q != 2 && q != 3 && q != 4) throw std::invalid_argument("field order must be 2, 3, or 4");
        for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b) {
                if (q == 4) {
                    _add[a][b] = a ^ b;
                    int c0 = (a & 1) * (b & 1), c1 = (a & 1) * (b >> 1), c2 = (a >> 1) * (b & 1),
                        c3 = (a >> 1) * (b >> 1);
                    _mul[a][b] = ((c0 ^ c3) & 1) | (((c1 ^ c2 ^ c3) & 1) << 1);
                } else {
                    _add[a][b] = (a + b) % q;
                    _mul[a][b] = (a * b) % q;
                }
            }
        }
    }

    int order() const { return _q; }
    int add(int a, int b) const { return _add[a][b]; }
    int mul(int a, int b) const { return _mul[a][b]; }

    int neg(int a) const {
        for (int b = 0; b < _q; ++b)
            if (_add[a][b] == 0) return b;
        throw std::logic_error("unreachable");
    }

    int inv(int a) const {
        if (a == 0) throw std::domain_error("inverse of zero field element");
        for (int b = 1; b < _q; ++b)
            if (_mul[a][b] == 1) return b;
        throw std::logic_error("unreachable");
    }

private:
    int _q;
    std::array<std::array<int, 4>, 4> _add{}, _mul{};
};

using FfVector = std::vector<int>;
using FfBasis = std::vector<FfVector>;  // reduced row-echelon rows spanning a subspace

// Every subspace of F_q^n, each as its reduced row-echelon basis (the
// zero space is the empty basis).
inline std::vector<FfBasis> all_subspaces(const GaloisField& f, int n) {
    std::vector<FfBasis> out;
    for (int k = 0; k <= n; ++k) {
        std::vector<int> pivots(k);
        auto choose = [&](auto&& self, int idx, int from) -> void {
            if (idx == k) {
                // Free entries sit right of their row's pivot, off pivot columns.
                std::vector<std::pair<int, int>> free_pos;
                for (int i = 0; i < k; ++i)
                    for (int j = pivots[i] + 1; j < n; ++j)
                        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
                            free_pos.emplace_back(i, j);
                std::vector<int> fill(free_pos.size(), 0);
                for (;;) {
                    FfBasis basis(k, FfVector(n, 0));
                    for (int i = 0; i < k; ++i) basis[i][pivots[i]] = 1;
                    for (std::size_t t = 0; t < free_pos.size(); ++t)
                        basis[free_pos[t].first][free_pos[t].second] = fill[t];
                    out.push_back(std::move(basis));
                    std::size_t t = 0;
                    while (t < fill.size() && fill[t] + 1 == f.order()) fill[t++] = 0;
                    if (t == fill.size()) break;
                    ++fill[t];
                }
                return;
            }
            for (int p = from; p < n; ++p) {
                pivots[idx] = p;
                self(self, idx + 1, p + 1);
            }
        };
        choose(choose, 0, 0);
    }
    return out;
}

// Whether v lies in the row span of a reduced row-echelon basis.
inline bool in_span(const GaloisField& f, const FfBasis& basis, FfVector v) {
    for (const FfVector& row : basis) {
        int pivot = 0;
        while (row[pivot] == 0) ++pivot;
        int c = f.neg(v[pivot]);
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(c, row[j]));
    }
    for (int x : v)
        if (x != 0) return false;
    return true;
}

/**
 * Brute-force stacky count of semistable representations over F_q: the
 * number of arrow-map tuples with no invariant destabilizing subspace
 * tuple, divided by the product of the vertex groups' orders. Guarded by
 * total dimension since the enumeration is exhaustive.
 */
inline Rational ff_count_semistable(const QuiverPresentation& q, const KClass& alpha,
                                    const WeakStability& mu, int field_order,
                                    int dimension_guard = 4) {
    check_dim_vector(q, alpha);
    if (mu.kind() != StabilityKind::Trivial && mu.kind() != StabilityKind::Slope)
        throw std::domain_error("stability kind unsupported on quiver lattices");
    std::int64_t total_dim = 0;
    for (auto v : alpha) total_dim += v;
    if (total_dim > dimension_guard) throw std::domain_error("oracle guard exceeded");
    GaloisField f(field_order);

    const int nv = static_cast<int>(q.vertex_count());
    std::vector<std::vector<FfBasis>> spaces;
    for (int v = 0; v < nv; ++v) spaces.push_back(all_subspaces(f, static_cast<int>(alpha[v])));

    // Subspace tuples that would destabilize if invariant: proper, nonzero,
    // with the subobject's value exceeding the quotient's.
    std::vector<std::vector<const FfBasis*>> candidates;
    {
        std::vector<std::size_t> pick(nv, 0);
        for (;;) {
            KClass sub(nv, 0);
            for (int v = 0; v < nv; ++v)
                sub[v] = static_cast<std::int64_t>(spaces[v][pick[v]].size());
            bool zero = kclass_is_zero(sub), full = sub == alpha;
            if (!zero && !full) {
                KClass quot(nv);
                for (int v = 0; v < nv; ++v) quot[v] = alpha[v] - sub[v];
                if (mu.tau(sub) > mu.tau(quot)) {
                    std::vector<const FfBasis*> tuple;
                    for (int v = 0; v < nv; ++v) tuple.push_back(&spaces[v][pick[v]]);
                    candidates.push_back(std::move(tuple));
                }
            }
            int v = nv - 1;
            while (v >= 0 && pick[v] + 1 == spaces[v].size()) pick[v--] = 0;
            if (v < 0) break;
            ++pick[v];
        }
    }

    // Arrow matrices flattened into one entry vector.
    const int na = static_cast<int>(q.arrows.size());
    std::vector<int> offset(na, 0), rows(na), cols(na);
    int entries = 0;
    for (int a = 0; a < na; ++a) {
        offset[a] = entries;
        rows[a] = static_cast<int>(alpha[q.arrows[a].second]);
        cols[a] = static_cast<int>(alpha[q.arrows[a].first]);
        entries += rows[a] * cols[a];
    }

    Integer n_ss = 0;
    std::vector<int> rep(entries, 0);
    for (;;) {
        bool destabilized = false;
        for (const auto& tuple : candidates) {
            bool invariant = true;
            for (int a = 0; a < na && invariant; ++a) {
                const FfBasis& src = *tuple[q.arrows[a].first];
                const FfBasis& dst = *tuple[q.arrows[a].second];
                for (const FfVector& w : src) {
                    FfVector img(rows[a], 0);
                    for (int r = 0; r < rows[a]; ++r)
                        for (int c = 0; c < cols[a]; ++c)
                            img[r] = f.add(img[r], f.mul(rep[offset[a] + r * cols[a] + c], w[c]));
                    if (!in_span(f, dst, std::move(img))) {
                        invariant = false;
                        break;
                    }
                }
            }
            if (invariant) {
                destabilized = true;
                break;
            }
        }
        if (!destabilized) ++n_ss;

        int t = 0;
        while (t < entries && rep[t] + 1 == f.order()) rep[t++] = 0;
        if (t == entries) break;
        ++rep[t];
    }

    Integer group_order = 1;
    for (auto v : alpha) {
        Integer qn = 1;
        for (int i = 0; i < v; ++i) qn *= field_order;
        Integer qk = 1;
        for (int k = 0; k < v; ++k) {
            group_order *= qn - qk;
            qk *= field_order;
        }
    }
    return Rational(n_ss, group_order);
}

}  // namespace wallcross
