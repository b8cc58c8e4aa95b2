#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "wallcross/lambda.hpp"
#include "wallcross/laurent.hpp"
#include "wallcross/rational.hpp"
#include "wallcross/stability.hpp"

namespace wallcross::testing {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational rand_rational(Rng& rng, int max_abs_num = 6, int max_den = 4) {
    int n = rand_int(rng, -max_abs_num, max_abs_num);
    int d = rand_int(rng, 1, max_den);
    return Rational(n, d);
}

inline LaurentPolynomial rand_laurent(Rng& rng, int min_exp = -3, int max_exp = 4,
                                      int max_terms = 4) {
    LaurentPolynomial p;
    int terms = rand_int(rng, 0, max_terms);
    for (int i = 0; i < terms; ++i) p.add_term(rand_int(rng, min_exp, max_exp), rand_rational(rng));
    return p;
}

inline LambdaElement rand_lambda(Rng& rng) {
    LambdaElement x = LambdaElement::from_laurent(rand_laurent(rng));
    int factors = rand_int(rng, 0, 2);
    for (int i = 0; i < factors; ++i) x *= LambdaElement::inv_qfactor(rand_int(rng, 1, 3));
    return x;
}

inline LambdaElement rand_lambda_nonzero(Rng& rng) {
    for (;;) {
        LambdaElement x = rand_lambda(rng);
        if (!x.is_zero()) return x;
    }
}

// Nonzero element with no pole at 1: denominator factors drawn from the
// cyclotomics of index >= 2 only.
inline LambdaElement rand_lambda0(Rng& rng) {
    for (;;) {
        LambdaElement x = LambdaElement::from_laurent(rand_laurent(rng));
        int factors = rand_int(rng, 0, 2);
        for (int i = 0; i < factors; ++i)
            x = x / LambdaElement::from_laurent(cyclotomic(rand_int(rng, 2, 4)));
        if (!x.is_zero() && x.lambda0_member()) return x;
    }
}

// All posets on {0..n-1}, by filtering every strict-relation bitmask through
// the validating constructor. Practical for n <= 4.
inline std::vector<Poset> all_posets(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) slots.emplace_back(i, j);
    std::vector<Poset> out;
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
        std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i) le[i][i] = true;
        for (std::size_t b = 0; b < slots.size(); ++b)
            if (mask & (1u << b)) le[slots[b].first][slots[b].second] = true;
        try {
            out.emplace_back(Poset(std::move(le)));
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

inline void for_each_surjection(int n, int k,
                                const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> phi(n, 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            std::vector<bool> hit(k, false);
            for (int v : phi) hit[v] = true;
            for (bool h : hit)
                if (!h) return;
            fn(phi);
            return;
        }
        for (int v = 0; v < k; ++v) {
            phi[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
}

// A random slope stability on a k-vertex lattice; small weights make value
// collisions (equal tau values) common, which the identities must survive.
inline WeakStability rand_slope(Rng& rng, std::size_t k) {
    std::vector<std::int64_t> c(k), r(k);
    for (auto& v : c) v = rand_int(rng, -2, 2);
    for (auto& v : r) v = rand_int(rng, 1, 2);
    return WeakStability::slope(c, r);
}

inline KClass rand_kclass(Rng& rng, std::size_t k, int max_entry = 2) {
    KClass a(k, 0);
    while (kclass_is_zero(a))
        for (auto& v : a) v = rand_int(rng, 0, max_entry);
    return a;
}

// Invertible elements: units of the coefficient ring are exactly
// c * l^a * prod (l^k - 1)^{+-1}, since inverses must again have
// denominators from the (l^k - 1) family.
inline LambdaElement rand_lambda_invertible(Rng& rng) {
    Rational c = 0;
    while (c == 0) c = rand_rational(rng);
    LambdaElement x = LambdaElement(c) * LambdaElement::ell_power(rand_int(rng, -3, 3));
    int factors = rand_int(rng, 0, 2);
    for (int i = 0; i < factors; ++i) {
        int k = rand_int(rng, 1, 3);
        x *= rand_int(rng, 0, 1) ? LambdaElement::qfactor(k) : LambdaElement::inv_qfactor(k);
    }
    return x;
}

}  // namespace wallcross::testing
