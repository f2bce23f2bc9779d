#pragma once

// Independent reference implementations. They use only the accessors of the
// library types (atoms, holds, converse, related, ...) and plain loops, never
// the library's own algorithms.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "atomkit/cylalg.hpp"
#include "atomkit/fincof.hpp"
#include "atomkit/graph.hpp"
#include "atomkit/partition.hpp"
#include "atomkit/relalg.hpp"
#include "atomkit/relational.hpp"

namespace oracle {

using atomkit::RaAtomStructure;

/// Diversity triples of the Maddux structure straight from the index rule (no monochromatic triangles).
inline std::set<std::array<std::size_t, 3>> maddux_diversity_triples(std::size_t k)
{
    std::set<std::array<std::size_t, 3>> out;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t l = 0; l < k; ++l)
                if (!(i == j && j == l))
                    out.insert({i, j, l});
    return out;
}

/// All six Peircean variants of (a,b,c) present.
inline bool cycle_closed(const RaAtomStructure& s)
{
    const std::size_t n = s.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                if (!s.holds(a, b, c))
                    continue;
                auto ca = s.converse(a), cb = s.converse(b), cc = s.converse(c);
                if (!s.holds(ca, c, b) || !s.holds(c, cb, a) || !s.holds(cc, a, cb) || !s.holds(b, cc, ca)
                    || !s.holds(cb, ca, cc))
                    return false;
            }
    return true;
}

/// Atom-level associativity by explicit existential search over 4-tuples.
inline bool associative(const RaAtomStructure& s)
{
    const std::size_t n = s.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    bool left = false, right = false;
                    for (std::size_t x = 0; x < n && !left; ++x)
                        left = s.holds(a, b, x) && s.holds(x, c, d);
                    for (std::size_t y = 0; y < n && !right; ++y)
                        right = s.holds(b, c, y) && s.holds(a, y, d);
                    if (left != right)
                        return false;
                }
    return true;
}

inline bool identity_law(const RaAtomStructure& s)
{
    const std::size_t n = s.size(), e = s.identity();
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
            if (s.holds(e, b, c) != (b == c) || s.holds(b, e, c) != (b == c))
                return false;
    return true;
}

/// {c : a in X, b in Y, (a,b,c)} on plain index sets.
inline std::set<std::size_t> compose(const RaAtomStructure& s, const std::set<std::size_t>& x,
                                     const std::set<std::size_t>& y)
{
    std::set<std::size_t> out;
    for (auto a : x)
        for (auto b : y)
            for (std::size_t c = 0; c < s.size(); ++c)
                if (s.holds(a, b, c))
                    out.insert(c);
    return out;
}

// ---- basic matrices ------------------------------------------------------------

/// Every assignment of all n*n entries, filtered by the three matrix conditions. Entries in row-major order.
inline std::vector<std::vector<std::size_t>> basic_matrices_bruteforce(const RaAtomStructure& s, std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    const std::size_t cells = n * n, m = s.size();
    std::vector<std::size_t> e(cells, 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            ok = e[i * n + i] == s.identity();
            for (std::size_t j = 0; j < n && ok; ++j) {
                ok = e[j * n + i] == s.converse(e[i * n + j]);
                for (std::size_t k = 0; k < n && ok; ++k)
                    ok = s.holds(e[i * n + j], e[j * n + k], e[i * n + k]);
            }
        }
        if (ok)
            out.push_back(e);
        std::size_t pos = cells;
        while (pos > 0 && ++e[pos - 1] == m)
            e[--pos] = 0;
        if (pos == 0)
            break;
    }
    return out;
}

// ---- blur conditions -------------------------------------------------------------

struct BlurFamily {
    std::vector<std::size_t> diversity;        // atom indices of I
    std::vector<std::vector<std::size_t>> sets; // atom indices, lexicographic by position in I
};

inline BlurFamily l_subsets(const RaAtomStructure& s, std::size_t l)
{
    BlurFamily f;
    for (std::size_t a = 0; a < s.size(); ++a)
        if (a != s.identity())
            f.diversity.push_back(a);
    const std::size_t k = f.diversity.size();
    std::vector<std::size_t> pick(l);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
        if (pos == l) {
            std::vector<std::size_t> set;
            for (auto p : pick)
                set.push_back(f.diversity[p]);
            f.sets.push_back(set);
            return;
        }
        for (std::size_t x = from; x < k; ++x) {
            pick[pos] = x;
            self(self, pos + 1, x + 1);
        }
    };
    rec(rec, 0, 0);
    return f;
}

struct J4Answer {
    bool holds = true;
    std::vector<std::size_t> v, w; // indices into the family, pair-major least
};

/**
 * Full enumeration of V_2..V_n, W_2..W_n in pair-major lexicographic order;
 * the inner test is "some T with every a <= b;c", a <= b;c being (b,c,a).
 */
inline J4Answer j4(const RaAtomStructure& s, const BlurFamily& f, std::size_t n)
{
    const std::size_t js = f.sets.size(), levels = n - 1;
    // fails[v][w] = set of T indices that break the (V,W) pair.
    std::vector<std::vector<bool>> fails(js * js, std::vector<bool>(js, false));
    for (std::size_t v = 0; v < js; ++v)
        for (std::size_t w = 0; w < js; ++w)
            for (std::size_t t = 0; t < js; ++t)
                for (auto a : f.sets[v])
                    for (auto b : f.sets[w])
                        for (auto c : f.sets[t])
                            if (!s.holds(b, c, a))
                                fails[v * js + w][t] = true;
    J4Answer ans;
    std::vector<std::size_t> idx(levels, 0);
    const std::size_t pairs = js * js;
    while (true) {
        bool some_t = false;
        for (std::size_t t = 0; t < js && !some_t; ++t) {
            bool ok = true;
            for (std::size_t i = 0; i < levels && ok; ++i)
                ok = !fails[idx[i]][t];
            some_t = ok;
        }
        if (!some_t) {
            ans.holds = false;
            for (auto p : idx) {
                ans.v.push_back(p / js);
                ans.w.push_back(p % js);
            }
            return ans;
        }
        std::size_t pos = levels;
        while (pos > 0 && ++idx[pos - 1] == pairs)
            idx[--pos] = 0;
        if (pos == 0)
            return ans;
    }
}

struct J5Answer {
    bool holds = true;
    std::vector<std::size_t> p, q; // positions in I
    std::size_t w = 0;
};

/// For all P_i, Q_i in I and W in J: W meets the intersection of the P_i;Q_i. Order (P_2,Q_2),(P_3,Q_3),...,W.
inline J5Answer j5(const RaAtomStructure& s, const BlurFamily& f, std::size_t n)
{
    const std::size_t k = f.diversity.size(), levels = n - 1;
    J5Answer ans;
    std::vector<std::size_t> idx(levels, 0);
    while (true) {
        std::set<std::size_t> meet;
        for (std::size_t c = 0; c < s.size(); ++c)
            meet.insert(c);
        for (auto pq : idx) {
            auto comp = compose(s, {f.diversity[pq / k]}, {f.diversity[pq % k]});
            std::set<std::size_t> next;
            for (auto c : meet)
                if (comp.count(c))
                    next.insert(c);
            meet = next;
        }
        for (std::size_t w = 0; w < f.sets.size(); ++w) {
            bool hit = false;
            for (auto a : f.sets[w])
                hit = hit || meet.count(a);
            if (!hit) {
                ans.holds = false;
                for (auto pq : idx) {
                    ans.p.push_back(pq / k);
                    ans.q.push_back(pq % k);
                }
                ans.w = w;
                return ans;
            }
        }
        std::size_t pos = levels;
        while (pos > 0 && ++idx[pos - 1] == k * k)
            idx[--pos] = 0;
        if (pos == 0)
            return ans;
    }
}

/// Some arrangement (p,q,r) of the three numbers has r - q = q - p.
inline bool evenly(std::int64_t i, std::int64_t j, std::int64_t k)
{
    std::array<std::int64_t, 3> v{i, j, k};
    std::array<int, 3> perm{0, 1, 2};
    do {
        if (v[perm[2]] - v[perm[1]] == v[perm[1]] - v[perm[0]])
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// ---- games ---------------------------------------------------------------------

/// Block-size criterion for EF on partition pairs with the same units.
inline bool ef_partition_closed_form(const atomkit::PartitionStructure& a, const atomkit::PartitionStructure& b,
                                     std::size_t mu)
{
    for (std::size_t u = 0; u < a.units().size(); ++u)
        if (std::min(a.sizes()[u], mu) != std::min(b.sizes()[u], mu))
            return false;
    return true;
}

/// Plain minimax over all atoms, no memo and no symmetry. Exists wins?
inline bool ef_minimax(const atomkit::RelationalStructure& a, const atomkit::RelationalStructure& b,
                       std::vector<std::pair<std::size_t, std::size_t>>& play, std::size_t rounds)
{
    auto partial_iso = [&] {
        const std::size_t t = play.size();
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = 0; j < t; ++j)
                if ((play[i].first == play[j].first) != (play[i].second == play[j].second))
                    return false;
        for (std::size_t r = 0; r < a.relations().size(); ++r) {
            const std::size_t ar = a.relations()[r].arity;
            std::size_t total = 1;
            for (std::size_t i = 0; i < ar; ++i)
                total *= t;
            for (std::size_t code = 0; code < total; ++code) {
                std::size_t x[3], y[3], rest = code;
                for (std::size_t i = 0; i < ar; ++i) {
                    x[i] = play[rest % t].first;
                    y[i] = play[rest % t].second;
                    rest /= t;
                }
                if (a.holds(r, x) != b.holds(r, y))
                    return false;
            }
        }
        return true;
    };
    if (!partial_iso())
        return false;
    if (rounds == 0)
        return true;
    for (int side = 0; side < 2; ++side) {
        const auto& from = side == 0 ? a : b;
        const auto& to = side == 0 ? b : a;
        for (std::size_t x = 0; x < from.size(); ++x) {
            bool answered = false;
            for (std::size_t y = 0; y < to.size() && !answered; ++y) {
                play.emplace_back(side == 0 ? x : y, side == 0 ? y : x);
                answered = ef_minimax(a, b, play, rounds - 1);
                play.pop_back();
            }
            if (!answered)
                return false;
        }
    }
    return true;
}

// ---- graphs ---------------------------------------------------------------------

/// Whether some assignment of k colours to all vertices is proper (plain k^n enumeration).
inline bool colourable(const atomkit::Graph& g, std::size_t k)
{
    const std::size_t n = g.vertex_count();
    if (n == 0)
        return true;
    if (k == 0)
        return false;
    std::vector<std::size_t> col(n, 0);
    while (true) {
        bool ok = true;
        for (auto [u, v] : g.edges())
            ok = ok && col[u] != col[v];
        if (ok)
            return true;
        std::size_t pos = n;
        while (pos > 0 && ++col[pos - 1] == k)
            col[--pos] = 0;
        if (pos == 0)
            return false;
    }
}

inline std::size_t chromatic(const atomkit::Graph& g)
{
    std::size_t k = 0;
    while (!colourable(g, k))
        ++k;
    return k;
}

// ---- finite/cofinite sets ----------------------------------------------------------

/// Plain membership set of a FinCofSet restricted to a window, from contains() only.
inline std::set<std::pair<std::size_t, std::uint64_t>> window_set(const atomkit::FinCofSet& x, std::uint64_t n)
{
    std::set<std::pair<std::size_t, std::uint64_t>> out;
    for (std::size_t b = 0; b < x.carrier().size(); ++b) {
        std::uint64_t lim = x.carrier()[b].infinite ? n : x.carrier()[b].size;
        for (std::uint64_t i = 0; i < lim; ++i)
            if (x.contains(b, i))
                out.insert({b, i});
    }
    return out;
}

} // namespace oracle
