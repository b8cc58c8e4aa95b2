#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wallcross/laurent.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/series.hpp"

namespace wallcross {

/**
 * A point (n, d) of the positive cone of the numerical lattice of a smooth
 * projective curve: rank n >= 0 and degree d, with d > 0 when the rank
 * vanishes. The ambient genus travels with the class so pairings can check
 * compatibility.
 */
struct CurveClass {
    std::int64_t n;
    std::int64_t d;
    int genus;

    CurveClass(std::int64_t rank, std::int64_t degree, int g) : n(rank), d(degree), genus(g) {
        if (g < 0) throw std::invalid_argument("genus must be nonnegative");
        if (n < 0 || (n == 0 && d <= 0)) throw std::domain_error("class outside positive cone");
    }
};

// Euler pairing on the curve lattice: the rank/degree cross terms minus the
// genus correction (g - 1) n1 n2.
inline std::int64_t curve_chi(const CurveClass& x, const CurveClass& y) {
    if (x.genus != y.genus) throw std::invalid_argument("genus mismatch");
    return x.n * y.d - x.d * y.n - std::int64_t(x.genus - 1) * x.n * y.n;
}

/**
 * Counting invariants of sheaves on a smooth projective curve of genus g,
 * realized as Laurent series in z (l = z^2) truncated below a floor.
 *
 * iss_delta is the purity invariant: a closed product formula expanded as a
 * power series in z^{-1}, independent of the degree. iss_gamma is the slope
 * invariant, obtained by peeling proper Harder-Narasimhan strata off the
 * purity invariant rank by rank; iss_gamma_direct evaluates the same value
 * through the inverse inclusion-exclusion over filtrations and is kept as an
 * independent cross-check path. coprime_poincare extracts the moduli
 * Poincare polynomial when rank and degree are coprime.
 *
 * Results are memoized per instance behind a mutex, so one model may be
 * shared across threads.
 */
class CurveModel {
public:
    explicit CurveModel(int genus) : _genus(genus) {
        if (genus < 0) throw std::invalid_argument("genus must be nonnegative");
    }

    int genus() const { return _genus; }

    /**
     * Purity-stability invariant of rank n down to floor,
     *     prod_{a=1..n} (z^{2a-1} + 1)^{2g}
     *   / (prod_{a=1..n-1} (z^{2a} - 1)^2 * (z^{2n} - 1)),
     * expanded by long division from the top. The value does not depend on
     * the degree; the argument is accepted so call sites mirror iss_gamma.
     */
    TruncatedSeries iss_delta(std::int64_t n, std::int64_t d, int floor) const {
        (void)d;
        if (n < 1) throw std::domain_error("rank must be positive");
        std::pair<std::int64_t, int> key{n, floor};
        {
            std::lock_guard<std::mutex> lock(_mutex);
            auto it = _delta.find(key);
            if (it != _delta.end()) return it->second;
        }
        LaurentPolynomial num = LaurentPolynomial::one();
        for (std::int64_t a = 1; a <= n; ++a) {
            LaurentPolynomial f =
                LaurentPolynomial::monomial(int(2 * a - 1)) + LaurentPolynomial::one();
            for (int i = 0; i < 2 * _genus; ++i) num *= f;
        }
        TruncatedSeries s = TruncatedSeries::from_z_poly(num);
        for (std::int64_t a = 1; a <= n; ++a) {
            TruncatedSeries f = TruncatedSeries::from_z_poly(
                LaurentPolynomial::monomial(int(2 * a)) - LaurentPolynomial::one());
            for (int i = 0, reps = a < n ? 2 : 1; i < reps; ++i)
                s = TruncatedSeries::div(s, f, floor);
        }
        std::lock_guard<std::mutex> lock(_mutex);
        return _delta.emplace(key, std::move(s)).first->second;
    }

    /**
     * Slope-stability invariant of class (n, d) down to floor. The purity
     * invariant equals the sum, over splittings into parts of strictly
     * decreasing slope, of twisted products of slope invariants; isolating
     * the one-part term expresses iss_gamma(n, d) through strictly smaller
     * ranks. Strict slope decrease makes every pairwise cross term
     * n_i d_j - d_i n_j <= -1, so only finitely many degree tuples reach the
     * retained window and the enumeration below is complete above the floor.
     */
    TruncatedSeries iss_gamma(std::int64_t n, std::int64_t d, int floor) const {
        if (n < 1) throw std::domain_error("rank must be positive");
        std::tuple<std::int64_t, std::int64_t, int> key{n, d, floor};
        {
            std::lock_guard<std::mutex> lock(_mutex);
            auto it = _gamma.find(key);
            if (it != _gamma.end()) return it->second;
        }
        TruncatedSeries total = iss_delta(n, d, floor);
        for (const auto& ranks : compositions(n)) {
            int k = int(ranks.size());
            if (k < 2) continue;
            std::vector<std::int64_t> npre(std::size_t(k) + 1, 0);
            for (int i = 0; i < k; ++i) npre[std::size_t(i) + 1] = npre[std::size_t(i)] + ranks[std::size_t(i)];
            // z-degree headroom of one product term over its degree twist:
            // the genus part of the twist plus per-factor top bounds.
            std::int64_t pair_nn = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) pair_nn += ranks[std::size_t(i)] * ranks[std::size_t(j)];
            std::int64_t base = 2 * std::int64_t(_genus - 1) * pair_nn;
            for (int i = 0; i < k; ++i) base += top_bound(ranks[std::size_t(i)]);
            std::int64_t pairs = std::int64_t(k) * (k - 1) / 2;
            // Weakest value a single pairwise cross term may take in a
            // contributing tuple, all others being at most -1.
            std::int64_t mpair = floor_div(std::int64_t(floor) - base + 1, 2) + (pairs - 1);
            if (mpair > -1) continue;
            std::vector<std::int64_t> degs(std::size_t(k), 0);
            auto place = [&](auto&& self, int t, std::int64_t esum, std::int64_t cross) -> void {
                if (t == k - 1) {
                    std::int64_t dt = d - esum;
                    if (dt * ranks[std::size_t(t) - 1] >= degs[std::size_t(t) - 1] * ranks[std::size_t(t)]) return;
                    std::int64_t cfull = cross + npre[std::size_t(t)] * dt - esum * ranks[std::size_t(t)];
                    if (2 * cfull + base < floor) return;
                    degs[std::size_t(t)] = dt;
                    int shift = int(2 * cfull + 2 * std::int64_t(_genus - 1) * pair_nn);
                    int w = floor - shift - int(base - 2 * std::int64_t(_genus - 1) * pair_nn);
                    TruncatedSeries prod = iss_gamma(ranks[0], degs[0], w);
                    for (int i = 1; i < k && !prod.is_zero(); ++i)
                        prod *= iss_gamma(ranks[std::size_t(i)], degs[std::size_t(i)], w);
                    total -= prod.shifted(shift);
                    return;
                }
                // Largest degree keeping the slope strictly below the
                // previous part; pairs against later parts are each <= -1,
                // so the partial cross sum prunes the descent.
                std::int64_t hi = floor_div(degs[std::size_t(t) - 1] * ranks[std::size_t(t)] - 1,
                                            ranks[std::size_t(t) - 1]);
                std::int64_t rem = pairs - std::int64_t(t + 1) * t / 2;
                for (std::int64_t dt = hi;; --dt) {
                    std::int64_t cnew = cross + npre[std::size_t(t)] * dt - esum * ranks[std::size_t(t)];
                    if (2 * (cnew - rem) + base < floor) break;
                    degs[std::size_t(t)] = dt;
                    self(self, t + 1, esum + dt, cnew);
                }
            };
            // First part: slope strictly above the average, bounded above
            // through the admissible range of its pairwise cross terms.
            std::int64_t lo1 = floor_div(d * ranks[0], n) + 1;
            std::int64_t hi1 = floor_div(d * ranks[0] - (k - 1) * mpair, n);
            for (std::int64_t d0 = lo1; d0 <= hi1; ++d0) {
                degs[0] = d0;
                place(place, 1, d0, 0);
            }
        }
        TruncatedSeries out = total.truncated(floor);
        std::lock_guard<std::mutex> lock(_mutex);
        return _gamma.emplace(key, std::move(out)).first->second;
    }

    /**
     * Independent evaluation of iss_gamma by the direct inclusion-exclusion:
     * an alternating sum over splittings whose every proper prefix has slope
     * strictly above d/n, with purity factors. The prefix condition bounds
     * each prefix degree sum from below, and the requirement that a term
     * reach the retained window caps their positively weighted sum, so the
     * nested enumeration is finite and complete above the floor.
     */
    TruncatedSeries iss_gamma_direct(std::int64_t n, std::int64_t d, int floor) const {
        if (n < 1) throw std::domain_error("rank must be positive");
        TruncatedSeries total = TruncatedSeries::zero(floor);
        for (const auto& ranks : compositions(n)) {
            int k = int(ranks.size());
            if (k == 1) {
                total += iss_delta(n, d, floor);
                continue;
            }
            std::vector<std::int64_t> npre(std::size_t(k) + 1, 0);
            for (int i = 0; i < k; ++i) npre[std::size_t(i) + 1] = npre[std::size_t(i)] + ranks[std::size_t(i)];
            std::int64_t pair_nn = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) pair_nn += ranks[std::size_t(i)] * ranks[std::size_t(j)];
            std::int64_t base = 2 * std::int64_t(_genus - 1) * pair_nn;
            std::int64_t tops = 0;
            for (int i = 0; i < k; ++i) tops += top_bound(ranks[std::size_t(i)]);
            base += tops;
            // The cross sum is npre[k-1]*d minus a positive combination of
            // the prefix degree sums, so reaching the window caps that
            // combination from above while the prefix-slope condition caps
            // each prefix sum from below.
            std::int64_t budget2 = 2 * npre[std::size_t(k) - 1] * d + base - floor;
            std::vector<std::int64_t> lo(std::size_t(k), 0), wgt(std::size_t(k), 0);
            for (int t = 1; t < k; ++t) {
                lo[std::size_t(t)] = floor_div(d * npre[std::size_t(t)], n) + 1;
                wgt[std::size_t(t)] = ranks[std::size_t(t) - 1] + ranks[std::size_t(t)];
            }
            std::vector<std::int64_t> tail(std::size_t(k) + 1, 0);
            for (int t = k - 1; t >= 1; --t)
                tail[std::size_t(t)] = tail[std::size_t(t) + 1] + wgt[std::size_t(t)] * lo[std::size_t(t)];
            std::vector<std::int64_t> esum(std::size_t(k) + 1, 0);
            esum[std::size_t(k)] = d;
            auto fill = [&](auto&& self, int t, std::int64_t used) -> void {
                if (t == k) {
                    std::int64_t cross = npre[std::size_t(k) - 1] * d - used;
                    int shift = int(2 * cross + 2 * std::int64_t(_genus - 1) * pair_nn);
                    int w = floor - shift - int(tops);
                    TruncatedSeries prod = TruncatedSeries::one();
                    for (int i = 0; i < k && !prod.is_zero(); ++i)
                        prod *= iss_delta(ranks[std::size_t(i)],
                                          esum[std::size_t(i) + 1] - esum[std::size_t(i)], w);
                    TruncatedSeries term = prod.shifted(shift);
                    if (k % 2 == 1)
                        total += term;
                    else
                        total -= term;
                    return;
                }
                for (std::int64_t e = lo[std::size_t(t)];; ++e) {
                    std::int64_t used2 = used + wgt[std::size_t(t)] * e;
                    if (2 * (used2 + tail[std::size_t(t) + 1]) > budget2) break;
                    esum[std::size_t(t)] = e;
                    self(self, t + 1, used2);
                }
            };
            fill(fill, 1, 0);
        }
        return total;
    }

    /**
     * Poincare polynomial of the moduli space of slope-semistable bundles of
     * coprime rank and degree, recovered from the slope invariant by
     * stripping the unit and Jacobian factors: (z^2 - 1) * iss_gamma(n, d)
     * divided by (z + 1)^{2g}. The residue below z^0 must vanish; guard sets
     * how many consecutive vanishing coefficients below the constant term
     * certify termination before the tail is discarded. The result is
     * checked to be palindromic of degree 2(g-1)(n^2-1) with nonnegative
     * integer coefficients.
     */
    LaurentPolynomial coprime_poincare(std::int64_t n, std::int64_t d, int guard = 8) const {
        if (n < 1) throw std::domain_error("rank must be positive");
        if (guard < 1) throw std::invalid_argument("guard must be positive");
        if (std::gcd(n, d < 0 ? -d : d) != 1)
            throw std::domain_error("rank and degree are not coprime");
        int band = -(guard + 2);
        int fg = band - 2 * _genus - 2;
        TruncatedSeries num =
            iss_gamma(n, d, fg) *
            TruncatedSeries::from_z_poly(LaurentPolynomial::monomial(2) - LaurentPolynomial::one());
        LaurentPolynomial jac = LaurentPolynomial::one();
        LaurentPolynomial zp1 = LaurentPolynomial::monomial(1) + LaurentPolynomial::one();
        for (int i = 0; i < 2 * _genus; ++i) jac *= zp1;
        TruncatedSeries p = TruncatedSeries::div(num, TruncatedSeries::from_z_poly(jac), band);
        for (int e = -1; e >= p.floor(); --e)
            if (p.coeff(e) != 0)
                throw std::domain_error("guard-band violation at z^" + std::to_string(e));
        LaurentPolynomial out;
        for (const auto& [e, c] : p.terms())
            if (e >= 0) out.add_term(e, c);
        int dim2 = 2 * (_genus - 1) * int(n * n - 1);
        if (!out.is_zero()) {
            if (dim2 < 0 || out.max_exp() > dim2)
                throw std::logic_error("moduli polynomial degree out of range");
            for (int e = 0; e <= dim2; ++e) {
                Rational c = out.coeff(e);
                if (denominator(c) != 1 || c < 0)
                    throw std::logic_error("moduli polynomial coefficients must be nonnegative integers");
                if (c != out.coeff(dim2 - e))
                    throw std::logic_error("moduli polynomial fails palindromy");
            }
        }
        return out;
    }

private:
    // Valid upper bound on the top z-exponent of both invariants at rank m:
    // the purity series tops out at exactly 2(g-1)m^2, and by induction over
    // the recursion every correction term stays at or below that plus two.
    int top_bound(std::int64_t m) const {
        std::int64_t t = 2 * std::int64_t(_genus - 1) * m * m;
        return int(t > 0 ? t : 0) + 2;
    }

    // All ordered splittings of n into positive parts.
    static std::vector<std::vector<std::int64_t>> compositions(std::int64_t n) {
        std::vector<std::vector<std::int64_t>> out;
        std::vector<std::int64_t> cur;
        auto rec = [&](auto&& self, std::int64_t rest) -> void {
            if (rest == 0) {
                out.push_back(cur);
                return;
            }
            for (std::int64_t p = 1; p <= rest; ++p) {
                cur.push_back(p);
                self(self, rest - p);
                cur.pop_back();
            }
        };
        rec(rec, n);
        return out;
    }

    static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
        std::int64_t q = a / b, r = a % b;
        return r != 0 && (r < 0) != (b < 0) ? q - 1 : q;
    }

    int _genus;
    mutable std::mutex _mutex;
    mutable std::map<std::pair<std::int64_t, int>, TruncatedSeries> _delta;
    mutable std::map<std::tuple<std::int64_t, std::int64_t, int>, TruncatedSeries> _gamma;
};

inline TruncatedSeries iss_delta(std::int64_t n, std::int64_t d, int genus, int floor) {
    return CurveModel(genus).iss_delta(n, d, floor);
}
inline TruncatedSeries iss_gamma(std::int64_t n, std::int64_t d, int genus, int floor) {
    return CurveModel(genus).iss_gamma(n, d, floor);
}
inline LaurentPolynomial coprime_poincare(std::int64_t n, std::int64_t d, int genus,
                                          int guard = 8) {
    return CurveModel(genus).coprime_poincare(n, d, guard);
}

}  // namespace wallcross
