#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "wallcross/coefficients.hpp"
#include "wallcross/lambda.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

/**
 * Integer bilinear form on the class lattice, given by its Gram matrix over
 * the declared basis.
 */
class EulerPairing {
public:
    explicit EulerPairing(std::vector<std::vector<std::int64_t>> m) : _m(std::move(m)) {
        for (const auto& row : _m)
            if (row.size() != _m.size()) throw std::invalid_argument("pairing matrix not square");
    }

    std::size_t size() const { return _m.size(); }

    std::int64_t chi(const KClass& a, const KClass& b) const {
        if (a.size() != _m.size() || b.size() != _m.size())
            throw std::invalid_argument("class size mismatch with pairing");
        std::int64_t out = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out += a[i] * _m[i][j] * b[j];
        return out;
    }

    bool symmetric() const {
        for (std::size_t i = 0; i < _m.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (_m[i][j] != _m[j][i]) return false;
        return true;
    }

    const std::vector<std::vector<std::int64_t>>& matrix() const { return _m; }

private:
    std::vector<std::vector<std::int64_t>> _m;
};

/**
 * The antisymmetrization chi(a,b) - chi(b,a) of an Euler pairing, or any
 * directly supplied antisymmetric form.
 */
class AntisymmetrizedPairing {
public:
    explicit AntisymmetrizedPairing(std::vector<std::vector<std::int64_t>> m) : _m(std::move(m)) {
        for (std::size_t i = 0; i < _m.size(); ++i) {
            if (_m[i].size() != _m.size())
                throw std::invalid_argument("pairing matrix not square");
            for (std::size_t j = 0; j < _m.size(); ++j)
                if (_m[i][j] != -_m[j][i])
                    throw std::invalid_argument("pairing is not antisymmetric");
        }
    }

    static AntisymmetrizedPairing from_euler(const EulerPairing& chi) {
        const auto& m = chi.matrix();
        std::vector<std::vector<std::int64_t>> a(m.size(), std::vector<std::int64_t>(m.size()));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = m[i][j] - m[j][i];
        return AntisymmetrizedPairing(std::move(a));
    }

    std::int64_t pairing(const KClass& a, const KClass& b) const {
        if (a.size() != _m.size() || b.size() != _m.size())
            throw std::invalid_argument("class size mismatch with pairing");
        std::int64_t out = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out += a[i] * _m[i][j] * b[j];
        return out;
    }

private:
    std::vector<std::vector<std::int64_t>> _m;
};

enum class TableFlavor { ISS, J, JOmega };

/**
 * Finite map from lattice classes to coefficient-ring values. Access to an
 * absent class is an error, never an implicit zero: silent zeros would mask
 * an incomplete enumeration. J-flavored entries must avoid the l=1 pole;
 * omega-flavored entries must be rational constants.
 */
class InvariantTable {
public:
    explicit InvariantTable(TableFlavor flavor) : _flavor(flavor) {}

    TableFlavor flavor() const { return _flavor; }

    void set(const KClass& cls, LambdaElement value) {
        if (_flavor == TableFlavor::J && !value.lambda0_member())
            throw std::domain_error("J-flavored entry has a pole at 1 for class " +
                                    kclass_to_string(cls));
        if (_flavor == TableFlavor::JOmega) value.to_rational();  // must be a constant
        _entries[cls] = std::move(value);
    }

    const LambdaElement& at(const KClass& cls) const {
        auto it = _entries.find(cls);
        if (it == _entries.end())
            throw std::out_of_range("missing table entry for class " + kclass_to_string(cls));
        return it->second;
    }

    bool contains(const KClass& cls) const { return _entries.count(cls) != 0; }
    const std::map<KClass, LambdaElement>& entries() const { return _entries; }

private:
    TableFlavor _flavor;
    std::map<KClass, LambdaElement> _entries;
};

// Provides the ordered decompositions of a class; models with infinite
// positive cones must inject their own bounded enumerators.
using DecompositionEnumerator = std::function<std::vector<ADatum>(const KClass&)>;

inline DecompositionEnumerator cone_enumerator() {
    return [](const KClass& a) { return enumerate_decompositions(a); };
}

// l^{-sum over i<j of chi(kappa(j), kappa(i))}, the sequence twist shared by
// the conversion and crossing sums.
inline LambdaElement sequence_twist(const ADatum& d, const EulerPairing& chi) {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) e -= chi.chi(d.parts[j], d.parts[i]);
    return LambdaElement::ell_power(static_cast<int>(e));
}

/**
 * Converts a table of semistable invariants into the single-class
 * heart-level invariant: the twisted sum over decompositions with all parts
 * of the total's value, weighted (-1)^{n-1}(l-1)/n.
 */
inline LambdaElement j_from_iss(const KClass& alpha, const WeakStability& tau,
                                const InvariantTable& iss, const EulerPairing& chi,
                                const DecompositionEnumerator& enumerate = cone_enumerator()) {
    TauValue value = tau.tau(alpha);
    LambdaElement total;
    for (const ADatum& d : enumerate(alpha)) {
        bool constant = true;
        for (const auto& p : d.parts)
            if (tau.tau(p) != value) {
                constant = false;
                break;
            }
        if (!constant) continue;
        const int n = static_cast<int>(d.size());
        LambdaElement term =
            LambdaElement::qfactor(1).scaled(Rational((n % 2 == 1) ? 1 : -1, n));
        term *= sequence_twist(d, chi);
        for (const auto& p : d.parts) term *= iss.at(p);
        total += term;
    }
    return total;
}

/**
 * Inverse conversion: reconstructs the semistable invariant from the
 * single-class invariants, weight (l-1)^{-n}/n!.
 */
inline LambdaElement iss_from_j(const KClass& alpha, const WeakStability& tau,
                                const InvariantTable& j, const EulerPairing& chi,
                                const DecompositionEnumerator& enumerate = cone_enumerator()) {
    TauValue value = tau.tau(alpha);
    LambdaElement total;
    for (const ADatum& d : enumerate(alpha)) {
        bool constant = true;
        for (const auto& p : d.parts)
            if (tau.tau(p) != value) {
                constant = false;
                break;
            }
        if (!constant) continue;
        const int n = static_cast<int>(d.size());
        LambdaElement term = LambdaElement::inv_qfactor(1, n)
                                 .scaled(Rational(1) / Rational(factorial(n)));
        term *= sequence_twist(d, chi);
        for (const auto& p : d.parts) term *= j.at(p);
        total += term;
    }
    return total;
}

/**
 * Configuration invariant of a poset-indexed family: the product of table
 * values twisted by l^{-sum over related pairs i != j, i <= j}.
 */
inline LambdaElement iss_config(const Poset& order, const std::vector<KClass>& kappa,
                                const InvariantTable& iss, const EulerPairing& chi) {
    if (static_cast<int>(kappa.size()) != order.size())
        throw std::invalid_argument("kappa size mismatch");
    std::int64_t e = 0;
    for (int i = 0; i < order.size(); ++i)
        for (int j = 0; j < order.size(); ++j)
            if (i != j && order.leq(i, j)) e -= chi.chi(kappa[j], kappa[i]);
    LambdaElement out = LambdaElement::ell_power(static_cast<int>(e));
    for (const auto& p : kappa) out *= iss.at(p);
    return out;
}

/**
 * Wall-crossing of semistable invariants: the S-weighted twisted sum over
 * ordered decompositions, transforming the table at one stability into the
 * value at a single class for another.
 */
inline LambdaElement wallcross_iss(const KClass& alpha, const WeakStability& tau,
                                   const WeakStability& tau_next, const InvariantTable& iss,
                                   const EulerPairing& chi,
                                   const DecompositionEnumerator& enumerate = cone_enumerator()) {
    LambdaElement total;
    for (const ADatum& d : enumerate(alpha)) {
        int s = s_coeff(d, tau, tau_next);
        if (s == 0) continue;
        LambdaElement term = sequence_twist(d, chi).scaled(Rational(s));
        for (const auto& p : d.parts) term *= iss.at(p);
        total += term;
    }
    return total;
}

/**
 * Wall-crossing of single-class invariants: the U-weighted twisted sum with
 * the extra factor (l-1)^{1-n}.
 */
inline LambdaElement wallcross_j(const KClass& alpha, const WeakStability& tau,
                                 const WeakStability& tau_next, const InvariantTable& j,
                                 const EulerPairing& chi,
                                 const DecompositionEnumerator& enumerate = cone_enumerator()) {
    LambdaElement total;
    for (const ADatum& d : enumerate(alpha)) {
        Rational u = u_coeff(d, tau, tau_next);
        if (u == 0) continue;
        const int n = static_cast<int>(d.size());
        LambdaElement term = sequence_twist(d, chi).scaled(u);
        if (n > 1) term *= LambdaElement::inv_qfactor(1, n - 1);
        for (const auto& p : d.parts) term *= j.at(p);
        total += term;
    }
    return total;
}

enum class OmegaMode { Tree48, Increasing49 };

/**
 * Wall-crossing of numerical invariants through tree sums. In Tree48 mode
 * every labeled tree carries all its orientations and the tree-averaged
 * coefficient; in Increasing49 mode orientations are forced min-to-max and
 * the per-order coefficient is used with a 2^{1-n} weight. Both return the
 * same value.
 */
inline OmegaValue wallcross_j_omega(const KClass& alpha, const WeakStability& tau,
                                    const WeakStability& tau_next, const InvariantTable& j_omega,
                                    const AntisymmetrizedPairing& chi_bar,
                                    const DecompositionEnumerator& enumerate, OmegaMode mode) {
    if (j_omega.flavor() != TableFlavor::JOmega)
        throw std::invalid_argument("table is not omega-flavored");
    Rational total = 0;
    for (const ADatum& d : enumerate(alpha)) {
        const int n = static_cast<int>(d.size());
        Rational values = 1;
        for (const auto& p : d.parts) values *= j_omega.at(p).to_rational();
        if (values == 0) continue;

        if (mode == OmegaMode::Tree48) {
            for (const Digraph& g : enumerate_trees(n, TreeMode::Oriented)) {
                Rational v = v_coeff(g, d.parts, tau, tau_next);
                if (v == 0) continue;
                Rational edges = 1;
                for (const auto& [a, b] : g.edges)
                    edges *= Rational(chi_bar.pairing(d.parts[a], d.parts[b]));
                total += v * edges * values;
            }
        } else {
            Rational u = u_coeff(d, tau, tau_next);
            if (u == 0) continue;
            Rational orient_weight(1, Integer(1) << (n - 1));
            for (const Digraph& g : enumerate_trees(n, TreeMode::Increasing)) {
                Rational edges = 1;
                for (const auto& [a, b] : g.edges)
                    edges *= Rational(chi_bar.pairing(d.parts[a], d.parts[b]));
                total += orient_weight * u * edges * values;
            }
        }
    }
    return OmegaValue{total};
}

/**
 * Configuration-level wall-crossing: for target data (K, order, mu), sums
 * T times the twisted configuration invariant over every labeled triple
 * (order, kappa, phi) on {1..n} forming a dominant quadruple inducing the
 * target order, weighted 1/n!. Restricted to |K| <= 3.
 */
inline LambdaElement wallcross_iss_config(const Poset& k_order, const std::vector<KClass>& mu,
                                          const WeakStability& tau, const WeakStability& tau_next,
                                          const InvariantTable& iss, const EulerPairing& chi,
                                          const DecompositionEnumerator& enumerate =
                                              cone_enumerator()) {
    const int kk = k_order.size();
    if (kk > 3) throw std::domain_error("configuration crossing restricted to |K| <= 3");
    if (static_cast<int>(mu.size()) != kk) throw std::invalid_argument("mu size mismatch");

    // Per-target-class ordered decompositions; fiber sequences draw from these.
    std::vector<std::vector<ADatum>> fiber_options;
    for (const auto& m : mu) fiber_options.push_back(enumerate(m));

    LambdaElement total;
    std::vector<int> pick(kk, 0);
    for (;;) {
        // Sizes of the chosen fiber sequences.
        int n = 0;
        for (int k = 0; k < kk; ++k) n += static_cast<int>(fiber_options[k][pick[k]].size());

        // Enumerate every labeled realization: which labels form each fiber
        // (a surjection phi with the given fiber sizes), and the order each
        // fiber's labels take (a permutation per fiber). The chosen sequence
        // values are laid along that order; the cross-fiber relation is
        // dictated by the target order.
        std::vector<int> phi(n);
        LambdaElement level;
        auto assign = [&](auto&& self, int pos) -> void {
            if (pos == n) {
                std::vector<std::vector<int>> fibers(kk);
                for (int i = 0; i < n; ++i) fibers[phi[i]].push_back(i);
                for (int k = 0; k < kk; ++k)
                    if (static_cast<int>(fibers[k].size()) !=
                        static_cast<int>(fiber_options[k][pick[k]].size()))
                        return;

                // All per-fiber orders: permutations of each fiber's labels.
                std::vector<std::vector<int>> arrangement = fibers;
                auto orders = [&](auto&& more, int k) -> void {
                    if (k == kk) {
                        std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
                        std::vector<KClass> kappa(n);
                        for (int f = 0; f < kk; ++f) {
                            const auto& seq = fiber_options[f][pick[f]].parts;
                            for (std::size_t p = 0; p < arrangement[f].size(); ++p) {
                                kappa[arrangement[f][p]] = seq[p];
                                for (std::size_t q = p; q < arrangement[f].size(); ++q)
                                    le[arrangement[f][p]][arrangement[f][q]] = true;
                            }
                        }
                        for (int i = 0; i < n; ++i)
                            for (int j = 0; j < n; ++j)
                                if (phi[i] != phi[j] && k_order.leq(phi[i], phi[j]))
                                    le[i][j] = true;
                        Poset order(std::move(le));
                        int t = t_coeff(order, kappa, kk, phi, tau, tau_next);
                        if (t == 0) return;
                        level += iss_config(order, kappa, iss, chi).scaled(Rational(t));
                        return;
                    }
                    std::sort(arrangement[k].begin(), arrangement[k].end());
                    do {
                        more(more, k + 1);
                    } while (std::next_permutation(arrangement[k].begin(), arrangement[k].end()));
                };
                orders(orders, 0);
                return;
            }
            for (int v = 0; v < kk; ++v) {
                phi[pos] = v;
                self(self, pos + 1);
            }
        };
        assign(assign, 0);
        total += level.scaled(Rational(1) / Rational(factorial(n)));

        int k = kk - 1;
        while (k >= 0 && pick[k] + 1 == static_cast<int>(fiber_options[k].size())) pick[k--] = 0;
        if (k < 0) break;
        ++pick[k];
    }
    return total;
}

}  // namespace wallcross
