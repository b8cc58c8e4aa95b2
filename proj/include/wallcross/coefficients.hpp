#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wallcross/rational.hpp"
#include "wallcross/stability.hpp"

namespace wallcross {

// Consecutive blocks [lo, hi) of {0..n-1}; a monotone surjection onto
// {1..m} is the same thing as a composition of n into m such blocks.
using Blocks = std::vector<std::pair<int, int>>;

// Visits every composition of {0..n-1} into consecutive blocks, in a fixed
// deterministic order (cut-mask ascending).
template <typename Fn>
void for_each_composition(int n, Fn&& fn) {
    if (n <= 0) throw std::invalid_argument("composition of empty set");
    const std::uint64_t masks = std::uint64_t(1) << (n - 1);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        Blocks blocks;
        int lo = 0;
        for (int i = 0; i + 1 < n; ++i) {
            if (mask & (std::uint64_t(1) << i)) {
                blocks.emplace_back(lo, i + 1);
                lo = i + 1;
            }
        }
        blocks.emplace_back(lo, n);
        fn(blocks);
    }
}

/**
 * The sign coefficient attached to an ordered sequence kappa(1..n) crossing
 * from stability tau to tau_next. Nonzero only when every adjacent position
 * satisfies one of two complementary conditions; the value is then
 * (-1)^{count of first-kind positions}.
 */
inline int s_coeff(const ADatum& d, const WeakStability& tau, const WeakStability& tau_next) {
    const std::size_t n = d.size();
    if (n == 0) throw std::invalid_argument("empty sequence");
    int r = 0;
    for (std::size_t i = 1; i < n; ++i) {
        TauValue prev = tau.tau(d.parts[i - 1]);
        TauValue next = tau.tau(d.parts[i]);
        TauValue pre = tau_next.tau(d.range_sum(0, i));
        TauValue suf = tau_next.tau(d.range_sum(i, n));
        if (prev <= next) {
            if (!(pre > suf)) return 0;
            ++r;
        } else {
            if (!(pre <= suf)) return 0;
        }
    }
    return (r % 2 == 0) ? 1 : -1;
}

/**
 * Alternative evaluation of s_coeff as a double sum over nested monotone
 * surjections: inner blocks strictly reversing for tau, outer contraction
 * semistable for tau_next, weight (-1)^{a-b}. Agrees with s_coeff on all
 * inputs; kept as an independent cross-check path.
 */
inline int s_coeff_alt(const ADatum& d, const WeakStability& tau, const WeakStability& tau_next) {
    const int n = static_cast<int>(d.size());
    if (n == 0) throw std::invalid_argument("empty sequence");
    long long total = 0;
    for_each_composition(n, [&](const Blocks& inner) {
        const int a = static_cast<int>(inner.size());
        for (const auto& [lo, hi] : inner) {
            ADatum block{{d.parts.begin() + lo, d.parts.begin() + hi}};
            if (!adata_predicates(block, tau).reversing) return;
        }
        std::vector<KClass> contracted(a);
        for (int j = 0; j < a; ++j) contracted[j] = d.range_sum(inner[j].first, inner[j].second);
        ADatum cd{contracted};
        for_each_composition(a, [&](const Blocks& outer) {
            const int b = static_cast<int>(outer.size());
            std::vector<KClass> nu(b);
            for (int k = 0; k < b; ++k) nu[k] = cd.range_sum(outer[k].first, outer[k].second);
            if (!adata_predicates(ADatum{nu}, tau_next).semistable) return;
            total += ((a - b) % 2 == 0) ? 1 : -1;
        });
    });
    return static_cast<int>(total);
}

/**
 * Product of s_coeff over the fibers of a dominant quadruple, each fiber
 * taken in its induced total order.
 */
inline int t_coeff(const Poset& order, const std::vector<KClass>& kappa, int k_count,
                   const std::vector<int>& phi, const WeakStability& tau,
                   const WeakStability& tau_next) {
    if (static_cast<int>(kappa.size()) != order.size())
        throw std::invalid_argument("kappa size mismatch");
    auto induced = is_dominant(order, k_count, phi);
    if (!induced) throw std::domain_error("quadruple is not dominant");
    int result = 1;
    for (int k = 0; k < k_count; ++k) {
        std::vector<int> fiber;
        for (int i = 0; i < order.size(); ++i)
            if (phi[i] == k) fiber.push_back(i);
        std::sort(fiber.begin(), fiber.end(), [&](int x, int y) { return x != y && order.leq(x, y); });
        ADatum fd;
        for (int i : fiber) fd.parts.push_back(kappa[i]);
        result *= s_coeff(fd, tau, tau_next);
        if (result == 0) return 0;
    }
    return result;
}

/**
 * The rational coefficient refining s_coeff: a double sum over nested
 * monotone surjections. The inner surjection groups positions into blocks of
 * constant tau-value equal to the block sum's value; the outer surjection
 * groups blocks so every group sum has the tau_next-value of the total
 * class. Each surviving pair contributes the product of s_coeff over outer
 * groups, weighted by (-1)^{l-1}/l and the inverse factorials of the inner
 * block sizes.
 */
inline Rational u_coeff(const ADatum& d, const WeakStability& tau, const WeakStability& tau_next) {
    const int n = static_cast<int>(d.size());
    if (n == 0) throw std::invalid_argument("empty sequence");
    const TauValue target = tau_next.tau(d.total());
    Rational total = 0;
    for_each_composition(n, [&](const Blocks& inner) {
        const int m = static_cast<int>(inner.size());
        std::vector<KClass> lam(m);
        for (int b = 0; b < m; ++b) lam[b] = d.range_sum(inner[b].first, inner[b].second);
        for (int b = 0; b < m; ++b) {
            TauValue block_value = tau.tau(lam[b]);
            for (int i = inner[b].first; i < inner[b].second; ++i)
                if (tau.tau(d.parts[i]) != block_value) return;
        }
        ADatum lam_d{lam};
        Rational inner_weight = 1;
        for (const auto& [lo, hi] : inner) inner_weight /= Rational(factorial(hi - lo));

        for_each_composition(m, [&](const Blocks& outer) {
            const int l = static_cast<int>(outer.size());
            for (const auto& [lo, hi] : outer)
                if (tau_next.tau(lam_d.range_sum(lo, hi)) != target) return;
            int s_product = 1;
            for (const auto& [lo, hi] : outer) {
                ADatum group{{lam.begin() + lo, lam.begin() + hi}};
                s_product *= s_coeff(group, tau, tau_next);
                if (s_product == 0) return;
            }
            Rational w(s_product * ((l % 2 == 1) ? 1 : -1), l);
            total += w * inner_weight;
        });
    });
    return total;
}

/**
 * Directed graph on vertices {0..n-1}. For tree sums the underlying
 * undirected graph must be connected with exactly n-1 edges.
 */
struct Digraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    bool is_tree() const {
        if (n < 1 || static_cast<int>(edges.size()) != n - 1) return false;
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& [a, b] : edges) {
            if (a < 0 || b < 0 || a >= n || b >= n || a == b) return false;
            int ra = find(a), rb = find(b);
            if (ra == rb) return false;
            parent[ra] = rb;
        }
        return true;
    }
};

/**
 * Tree-averaged coefficient: the sum of u_coeff over every total order on
 * the vertices that is compatible with the edge directions, divided by
 * 2^{n-1} n!.
 */
inline Rational v_coeff(const Digraph& g, const std::vector<KClass>& kappa,
                        const WeakStability& tau, const WeakStability& tau_next) {
    if (!g.is_tree()) throw std::domain_error("digraph is not a tree");
    if (static_cast<int>(kappa.size()) != g.n) throw std::invalid_argument("kappa size mismatch");
    const int n = g.n;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> pos(n);
    Rational sum = 0;
    do {
        for (int i = 0; i < n; ++i) pos[perm[i]] = i;
        bool compatible = true;
        for (const auto& [a, b] : g.edges)
            if (pos[a] > pos[b]) {
                compatible = false;
                break;
            }
        if (!compatible) continue;
        ADatum d;
        for (int i = 0; i < n; ++i) d.parts.push_back(kappa[perm[i]]);
        sum += u_coeff(d, tau, tau_next);
    } while (std::next_permutation(perm.begin(), perm.end()));
    Rational norm = Rational(1) / (Rational(Integer(1) << (n - 1)) * Rational(factorial(n)));
    return sum * norm;
}

enum class TreeMode { Oriented, Increasing };

// Decode a Pruefer sequence into the undirected edge list of its labeled tree.
inline std::vector<std::pair<int, int>> pruefer_decode(int n, const std::vector<int>& seq) {
    std::vector<int> degree(n, 1);
    for (int s : seq) ++degree[s];
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> used(n, false);
    for (int s : seq) {
        int leaf = -1;
        for (int i = 0; i < n; ++i)
            if (degree[i] == 1 && !used[i]) {
                leaf = i;
                break;
            }
        edges.emplace_back(leaf, s);
        used[leaf] = true;
        --degree[leaf];
        --degree[s];
    }
    std::vector<int> last;
    for (int i = 0; i < n; ++i)
        if (degree[i] == 1 && !used[i]) last.push_back(i);
    edges.emplace_back(last[0], last[1]);
    return edges;
}

/**
 * All labeled trees on n vertices: in Increasing mode each edge is oriented
 * from its smaller to its larger endpoint (n^{n-2} digraphs); in Oriented
 * mode every one of the 2^{n-1} orientations is emitted (n^{n-2} 2^{n-1}).
 */
inline std::vector<Digraph> enumerate_trees(int n, TreeMode mode) {
    if (n < 1) throw std::invalid_argument("tree on empty vertex set");
    if (n == 1) return {Digraph{1, {}}};

    std::vector<std::vector<std::pair<int, int>>> trees;
    std::vector<int> seq(n - 2, 0);
    for (;;) {
        auto edges = pruefer_decode(n, seq);
        for (auto& [a, b] : edges)
            if (a > b) std::swap(a, b);
        std::sort(edges.begin(), edges.end());
        trees.push_back(std::move(edges));
        int pos = n - 3;
        while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
        if (pos < 0) break;
        ++seq[pos];
    }

    std::vector<Digraph> out;
    for (const auto& edges : trees) {
        if (mode == TreeMode::Increasing) {
            out.push_back(Digraph{n, edges});
            continue;
        }
        const std::uint64_t masks = std::uint64_t(1) << (n - 1);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            Digraph g{n, edges};
            for (int e = 0; e < n - 1; ++e)
                if (mask & (std::uint64_t(1) << e)) std::swap(g.edges[e].first, g.edges[e].second);
            out.push_back(std::move(g));
        }
    }
    return out;
}

/**
 * A finite rational combination of words, each word a permutation of
 * {0..n-1}. Supports the left-normed bracketing test for membership in the
 * free Lie algebra.
 */
struct MultilinearWordSum {
    std::map<std::vector<int>, Rational> words;

    void add_word(const std::vector<int>& w, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = words.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) words.erase(it);
        }
    }

    friend bool operator==(const MultilinearWordSum& a, const MultilinearWordSum& b) {
        return a.words == b.words;
    }
};

// Left-normed bracketing of a single word, expanded as a word sum:
// theta(x1 x2 ... xn) = [[...[x1, x2], ...], xn] with [u, v] = uv - vu.
inline MultilinearWordSum left_bracketing(const std::vector<int>& word) {
    MultilinearWordSum acc;
    acc.add_word({word[0]}, 1);
    for (std::size_t k = 1; k < word.size(); ++k) {
        MultilinearWordSum next;
        for (const auto& [w, c] : acc.words) {
            std::vector<int> right = w;
            right.push_back(word[k]);
            next.add_word(right, c);
            std::vector<int> left;
            left.push_back(word[k]);
            left.insert(left.end(), w.begin(), w.end());
            next.add_word(left, -c);
        }
        acc = std::move(next);
    }
    return acc;
}

/**
 * Dynkin-Specht-Wever test: a multilinear degree-n word sum lies in the
 * free Lie algebra iff left-normed bracketing fixes it up to the factor n.
 */
inline bool lie_membership(const MultilinearWordSum& w) {
    if (w.words.empty()) return true;
    const std::size_t n = w.words.begin()->first.size();
    for (const auto& [word, c] : w.words) {
        if (word.size() != n) throw std::invalid_argument("word sum is not multilinear");
        std::vector<bool> seen(n, false);
        for (int s : word) {
            if (s < 0 || s >= static_cast<int>(n) || seen[s])
                throw std::invalid_argument("word is not a permutation");
            seen[s] = true;
        }
    }
    MultilinearWordSum theta;
    for (const auto& [word, c] : w.words) {
        MultilinearWordSum part = left_bracketing(word);
        for (const auto& [pw, pc] : part.words) theta.add_word(pw, pc * c);
    }
    MultilinearWordSum scaled;
    for (const auto& [word, c] : w.words) scaled.add_word(word, c * Rational(static_cast<int>(n)));
    return theta == scaled;
}

}  // namespace wallcross
