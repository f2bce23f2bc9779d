#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "atomkit/atom_set.hpp"
#include "atomkit/error.hpp"
#include "atomkit/relalg.hpp"
#include "atomkit/report.hpp"
#include "atomkit/rng.hpp"

namespace atomkit {

/// True iff some arrangement (p, q, r) of the three arguments has r - q = q - p.
inline bool evenly_distributed(std::uint64_t i, std::uint64_t j, std::uint64_t k)
{
    std::array<std::uint64_t, 3> v{i, j, k};
    std::sort(v.begin(), v.end());
    return v[1] - v[0] == v[2] - v[1];
}

using TernaryPredicate = std::function<bool(std::uint64_t, std::uint64_t, std::uint64_t)>;

/**
 * A blur family J over the non-identity atoms I of a structure, together with
 * the ternary index relation E. Members of J are bit masks over positions in
 * `diversity` (bit p stands for atom diversity[p]).
 */
struct BlurSpec {
    std::vector<std::size_t> diversity;
    std::size_t l = 0;
    std::vector<std::uint64_t> members;
    std::string relation_name = "evenly_distributed";
    TernaryPredicate relation = evenly_distributed;

    std::size_t size() const { return members.size(); }
};

namespace detail {

inline std::vector<std::size_t> blur_universe(const RaAtomStructure& s)
{
    auto div = s.diversity_atoms();
    if (div.size() > 64)
        throw ParameterError("blur checks support at most 64 non-identity atoms, got "
                             + std::to_string(div.size()));
    return div;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace detail

/// J_l: every l-element subset of the non-identity atoms, in lexicographic order.
inline BlurSpec blur_index(const RaAtomStructure& s, std::size_t l,
                           std::uint64_t cap = 10'000'000)
{
    BlurSpec b;
    b.diversity = detail::blur_universe(s);
    const std::size_t k = b.diversity.size();
    if (l == 0 || l > k)
        throw ParameterError("blur size l=" + std::to_string(l) + " must lie in 1.."
                             + std::to_string(k));
    if (detail::binomial(k, l) > cap)
        throw CapError("blur family C(" + std::to_string(k) + "," + std::to_string(l)
                       + ") exceeds cap");
    b.l = l;
    std::vector<std::size_t> pick(l);
    for (std::size_t i = 0; i < l; ++i)
        pick[i] = i;
    while (true) {
        std::uint64_t mask = 0;
        for (auto p : pick)
            mask |= std::uint64_t{1} << p;
        b.members.push_back(mask);
        std::size_t i = l;
        while (i > 0 && pick[i - 1] == k - l + i - 1)
            --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t j = i; j < l; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return b;
}

/// Builds a blur spec from explicit member lists; every member needs exactly l atoms of I.
inline BlurSpec make_blur(const RaAtomStructure& s, std::size_t l,
                          const std::vector<std::vector<std::string>>& family)
{
    BlurSpec b;
    b.diversity = detail::blur_universe(s);
    b.l = l;
    for (const auto& names : family) {
        std::uint64_t mask = 0;
        for (const auto& nm : names) {
            auto idx = s.index_of(nm);
            auto it = std::find(b.diversity.begin(), b.diversity.end(), idx);
            if (it == b.diversity.end())
                throw DomainError("blur member uses identity atom '" + nm + "'");
            mask |= std::uint64_t{1} << (it - b.diversity.begin());
        }
        if (std::size_t(std::popcount(mask)) != l)
            throw ParameterError("blur member does not have exactly " + std::to_string(l)
                                 + " distinct atoms");
        b.members.push_back(mask);
    }
    return b;
}

inline std::vector<std::string> blur_member_names(const RaAtomStructure& s, const BlurSpec& b,
                                                  std::uint64_t mask)
{
    std::vector<std::string> out;
    for (std::size_t p = 0; p < b.diversity.size(); ++p)
        if (mask >> p & 1)
            out.push_back(s.name(b.diversity[p]));
    return out;
}

/// How a quantifier condition is evaluated.
struct CheckMode {
    enum class Kind { exhaustive, naive, sampled };
    Kind kind = Kind::exhaustive;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t cap = 1'000'000'000;

    static CheckMode exhaustive() { return {}; }
    static CheckMode naive() { return {Kind::naive}; }
    static CheckMode sampled(std::uint64_t samples, std::uint64_t seed)
    {
        return {Kind::sampled, samples, seed};
    }
};

/// Violating instance of the J4 condition: V_i, W_i for i = 2..n as indices into J.
struct J4Witness {
    std::vector<std::size_t> v, w;
    friend bool operator==(const J4Witness&, const J4Witness&) = default;
};

/// Violating instance of the J5 condition: P_i, Q_i as positions in I, W as index into J.
struct J5Witness {
    std::vector<std::size_t> p, q;
    std::size_t w = 0;
    friend bool operator==(const J5Witness&, const J5Witness&) = default;
};

template <typename Witness>
struct QuantifierResult {
    bool holds = true;
    std::optional<Witness> witness;
    /// Outer universal instances examined (tuples for exhaustive modes, draws when sampled).
    std::uint64_t instances = 0;
    std::uint64_t violations = 0;
};

using J4Result = QuantifierResult<J4Witness>;
using J5Result = QuantifierResult<J5Witness>;

namespace detail {

inline void check_blur_dimension(std::size_t n)
{
    if (n <= 2)
        throw ParameterError("blur conditions are stated for n > 2, got n=" + std::to_string(n));
}

inline void check_blur_over(const RaAtomStructure& s, const BlurSpec& b)
{
    if (b.diversity != s.diversity_atoms())
        throw DomainError("blur spec was built for a different structure");
}

/// bad[b][a]: positions c of I for which a <= b;c fails.
inline std::vector<std::uint64_t> j4_bad_table(const RaAtomStructure& s, const BlurSpec& b)
{
    const std::size_t k = b.diversity.size();
    std::vector<std::uint64_t> t(k * k, 0);
    for (std::size_t bi = 0; bi < k; ++bi)
        for (std::size_t ai = 0; ai < k; ++ai)
            for (std::size_t ci = 0; ci < k; ++ci)
                if (!s.holds(b.diversity[bi], b.diversity[ci], b.diversity[ai]))
                    t[bi * k + ai] |= std::uint64_t{1} << ci;
    return t;
}

inline std::uint64_t j4_bad(const std::vector<std::uint64_t>& table, std::size_t k,
                            std::uint64_t v, std::uint64_t w)
{
    std::uint64_t out = 0;
    for (std::uint64_t vv = v; vv; vv &= vv - 1) {
        auto a = std::size_t(std::countr_zero(vv));
        for (std::uint64_t ww = w; ww; ww &= ww - 1)
            out |= table[std::size_t(std::countr_zero(ww)) * k + a];
    }
    return out;
}

/// Composition P;Q restricted to I, as a mask over positions.
inline std::vector<std::uint64_t> j5_comp_table(const RaAtomStructure& s, const BlurSpec& b)
{
    const std::size_t k = b.diversity.size();
    std::vector<std::uint64_t> t(k * k, 0);
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
            for (std::size_t c = 0; c < k; ++c)
                if (s.holds(b.diversity[p], b.diversity[q], b.diversity[c]))
                    t[p * k + q] |= std::uint64_t{1} << c;
    return t;
}

/**
 * Lexicographically least tuple of `levels` pair indices whose combined mask
 * satisfies `fails`, or nothing. Candidate completions are explored over the
 * set of distinct pair masks, so the cost is governed by the number of
 * distinct masks rather than by the number of tuples.
 */
template <typename Combine, typename Fails>
std::optional<std::vector<std::size_t>> least_failing_tuple(const std::vector<std::uint64_t>& masks,
                                                            std::size_t levels, std::uint64_t unit,
                                                            Combine combine, Fails fails)
{
    std::set<std::uint64_t> distinct(masks.begin(), masks.end());
    std::vector<std::set<std::uint64_t>> reach(levels + 1);
    reach[0] = {unit};
    for (std::size_t r = 1; r <= levels; ++r)
        for (auto x : reach[r - 1])
            for (auto d : distinct)
                reach[r].insert(combine(x, d));

    std::unordered_map<std::uint64_t, bool> fail_memo;
    auto fails_m = [&](std::uint64_t u) {
        auto it = fail_memo.find(u);
        if (it != fail_memo.end())
            return it->second;
        bool f = fails(u);
        fail_memo.emplace(u, f);
        return f;
    };
    std::vector<std::unordered_map<std::uint64_t, bool>> comp_memo(levels + 1);
    auto completable = [&](std::uint64_t u, std::size_t rem) {
        auto it = comp_memo[rem].find(u);
        if (it != comp_memo[rem].end())
            return it->second;
        bool ok = false;
        for (auto x : reach[rem])
            if (fails_m(combine(u, x))) {
                ok = true;
                break;
            }
        comp_memo[rem].emplace(u, ok);
        return ok;
    };

    if (!completable(unit, levels))
        return std::nullopt;
    std::vector<std::size_t> tuple;
    std::uint64_t u = unit;
    for (std::size_t t = 0; t < levels; ++t) {
        for (std::size_t p = 0; p < masks.size(); ++p) {
            std::uint64_t next = combine(u, masks[p]);
            if (completable(next, levels - t - 1)) {
                tuple.push_back(p);
                u = next;
                break;
            }
        }
    }
    return tuple;
}

inline double power(double base, std::size_t e) { return std::pow(base, double(e)); }

} // namespace detail

/**
 * J4 for dimension n: for all V_2..V_n, W_2..W_n in J there is T in J such
 * that a <= b;c for every i, every a in V_i, b in W_i and c in T. The atom
 * fact a <= b;c is the triple (b, c, a).
 *
 * Exhaustive and naive modes return the least violating tuple in pair-major
 * order (V_2, W_2), (V_3, W_3), ... with J indices compared lexicographically.
 * Sampled mode returns the first violating draw.
 */
inline J4Result check_J4(const RaAtomStructure& s, const BlurSpec& b, std::size_t n,
                         const CheckMode& mode = CheckMode::exhaustive())
{
    detail::check_blur_dimension(n);
    detail::check_blur_over(s, b);
    J4Result res;
    const std::size_t levels = n - 1;
    const std::size_t js = b.size();
    if (js == 0)
        return res;
    const std::size_t k = b.diversity.size();
    auto table = detail::j4_bad_table(s, b);
    auto exists_t = [&](std::uint64_t bad) {
        for (auto t : b.members)
            if ((t & bad) == 0)
                return true;
        return false;
    };
    auto to_witness = [&](const std::vector<std::size_t>& pairs) {
        J4Witness w;
        for (auto p : pairs) {
            w.v.push_back(p / js);
            w.w.push_back(p % js);
        }
        return w;
    };

    switch (mode.kind) {
    case CheckMode::Kind::exhaustive: {
        if (double(js) * double(js) > double(mode.cap) / 20.0)
            throw CapError("exhaustive J4 over " + std::to_string(js)
                           + " blur sets is above the cap; use sampling");
        std::vector<std::uint64_t> masks(js * js);
        for (std::size_t v = 0; v < js; ++v)
            for (std::size_t w = 0; w < js; ++w)
                masks[v * js + w] = detail::j4_bad(table, k, b.members[v], b.members[w]);
        auto found = detail::least_failing_tuple(
            masks, levels, 0, [](std::uint64_t x, std::uint64_t y) { return x | y; },
            [&](std::uint64_t u) { return !exists_t(u); });
        res.instances = std::uint64_t(detail::power(double(js * js), levels));
        if (found) {
            res.holds = false;
            res.violations = 1;
            res.witness = to_witness(*found);
        }
        return res;
    }
    case CheckMode::Kind::naive: {
        const std::uint64_t pairs = js * js;
        if (detail::power(double(pairs), levels) * double(js) > double(mode.cap) * 100.0)
            throw CapError("naive J4 enumeration is above the cap");
        std::vector<std::size_t> idx(levels, 0);
        while (true) {
            ++res.instances;
            bool some_t = false;
            for (auto t : b.members) {
                bool all = true;
                for (std::size_t i = 0; i < levels && all; ++i) {
                    auto vm = b.members[idx[i] / js];
                    auto wm = b.members[idx[i] % js];
                    for (std::size_t a = 0; a < k && all; ++a) {
                        if (!(vm >> a & 1))
                            continue;
                        for (std::size_t bb = 0; bb < k && all; ++bb) {
                            if (!(wm >> bb & 1))
                                continue;
                            for (std::size_t c = 0; c < k && all; ++c)
                                if ((t >> c & 1)
                                    && !s.holds(b.diversity[bb], b.diversity[c], b.diversity[a]))
                                    all = false;
                        }
                    }
                }
                if (all) {
                    some_t = true;
                    break;
                }
            }
            if (!some_t) {
                res.holds = false;
                res.violations = 1;
                res.witness = to_witness(idx);
                return res;
            }
            std::size_t pos = levels;
            while (pos > 0 && ++idx[pos - 1] == pairs)
                idx[--pos] = 0;
            if (pos == 0)
                return res;
        }
    }
    case CheckMode::Kind::sampled: {
        Rng g(mode.seed);
        for (std::uint64_t draw = 0; draw < mode.samples; ++draw) {
            std::vector<std::size_t> pick;
            std::uint64_t bad = 0;
            for (std::size_t i = 0; i < levels; ++i) {
                auto v = std::size_t(uniform_below(g, js));
                auto w = std::size_t(uniform_below(g, js));
                pick.push_back(v * js + w);
                bad |= detail::j4_bad(table, k, b.members[v], b.members[w]);
            }
            ++res.instances;
            if (!exists_t(bad)) {
                ++res.violations;
                if (!res.witness)
                    res.witness = to_witness(pick);
                res.holds = false;
            }
        }
        return res;
    }
    }
    return res;
}

/**
 * J5 for dimension n: for all P_2..P_n, Q_2..Q_n in I and all W in J, W meets
 * P_2;Q_2 ∩ ... ∩ P_n;Q_n. Witness order is pair-major over (P_i, Q_i), then W.
 */
inline J5Result check_J5(const RaAtomStructure& s, const BlurSpec& b, std::size_t n,
                         const CheckMode& mode = CheckMode::exhaustive())
{
    detail::check_blur_dimension(n);
    detail::check_blur_over(s, b);
    J5Result res;
    const std::size_t levels = n - 1;
    const std::size_t js = b.size();
    if (js == 0)
        return res;
    const std::size_t k = b.diversity.size();
    const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    auto table = detail::j5_comp_table(s, b);
    auto least_w_missing = [&](std::uint64_t x) -> std::optional<std::size_t> {
        for (std::size_t w = 0; w < js; ++w)
            if ((b.members[w] & x) == 0)
                return w;
        return std::nullopt;
    };
    auto to_witness = [&](const std::vector<std::size_t>& pairs, std::size_t w) {
        J5Witness wit;
        for (auto p : pairs) {
            wit.p.push_back(p / k);
            wit.q.push_back(p % k);
        }
        wit.w = w;
        return wit;
    };

    switch (mode.kind) {
    case CheckMode::Kind::exhaustive: {
        auto found = detail::least_failing_tuple(
            table, levels, all, [](std::uint64_t x, std::uint64_t y) { return x & y; },
            [&](std::uint64_t x) { return least_w_missing(x).has_value(); });
        res.instances = std::uint64_t(detail::power(double(k * k), levels)) * js;
        if (found) {
            std::uint64_t x = all;
            for (auto p : *found)
                x &= table[p];
            res.holds = false;
            res.violations = 1;
            res.witness = to_witness(*found, *least_w_missing(x));
        }
        return res;
    }
    case CheckMode::Kind::naive: {
        const std::uint64_t pairs = k * k;
        if (detail::power(double(pairs), levels) * double(js) > double(mode.cap) * 100.0)
            throw CapError("naive J5 enumeration is above the cap");
        std::vector<std::size_t> idx(levels, 0);
        while (true) {
            for (std::size_t w = 0; w < js; ++w) {
                ++res.instances;
                bool meets = false;
                for (std::size_t c = 0; c < k && !meets; ++c) {
                    if (!(b.members[w] >> c & 1))
                        continue;
                    bool in_all = true;
                    for (std::size_t i = 0; i < levels && in_all; ++i)
                        in_all = s.holds(b.diversity[idx[i] / k], b.diversity[idx[i] % k],
                                         b.diversity[c]);
                    meets = in_all;
                }
                if (!meets) {
                    res.holds = false;
                    res.violations = 1;
                    res.witness = to_witness(idx, w);
                    return res;
                }
            }
            std::size_t pos = levels;
            while (pos > 0 && ++idx[pos - 1] == pairs)
                idx[--pos] = 0;
            if (pos == 0)
                return res;
        }
    }
    case CheckMode::Kind::sampled: {
        Rng g(mode.seed);
        for (std::uint64_t draw = 0; draw < mode.samples; ++draw) {
            std::vector<std::size_t> pick;
            std::uint64_t x = all;
            for (std::size_t i = 0; i < levels; ++i) {
                auto p = std::size_t(uniform_below(g, k));
                auto q = std::size_t(uniform_below(g, k));
                pick.push_back(p * k + q);
                x &= table[p * k + q];
            }
            auto w = std::size_t(uniform_below(g, js));
            ++res.instances;
            if ((b.members[w] & x) == 0) {
                ++res.violations;
                if (!res.witness)
                    res.witness = to_witness(pick, w);
                res.holds = false;
            }
        }
        return res;
    }
    }
    return res;
}

inline std::string describe(const RaAtomStructure& s, const BlurSpec& b, const J4Witness& w)
{
    auto set_text = [&](std::uint64_t m) {
        std::string out = "{";
        auto names = blur_member_names(s, b, m);
        for (std::size_t i = 0; i < names.size(); ++i)
            out += (i ? "," : "") + names[i];
        return out + "}";
    };
    std::string out;
    for (std::size_t i = 0; i < w.v.size(); ++i) {
        if (i)
            out += " ";
        out += "V" + std::to_string(i + 2) + "=" + set_text(b.members[w.v[i]]) + " W"
               + std::to_string(i + 2) + "=" + set_text(b.members[w.w[i]]);
    }
    return out;
}

inline std::string describe(const RaAtomStructure& s, const BlurSpec& b, const J5Witness& w)
{
    std::string out;
    for (std::size_t i = 0; i < w.p.size(); ++i)
        out += "P" + std::to_string(i + 2) + "=" + s.name(b.diversity[w.p[i]]) + " Q"
               + std::to_string(i + 2) + "=" + s.name(b.diversity[w.q[i]]) + " ";
    out += "W={";
    auto names = blur_member_names(s, b, b.members[w.w]);
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? "," : "") + names[i];
    return out + "}";
}

struct BlurReport {
    J4Result j4;
    J5Result j5;
    ConsistencyReport report;
};

/**
 * Combines J4, J5 and a symmetry check of the index relation E over the
 * window [0, relation_window)^3. The report passes when all three do.
 */
inline BlurReport is_n_blur(const RaAtomStructure& s, const BlurSpec& b, std::size_t n,
                            const CheckMode& mode = CheckMode::exhaustive(),
                            std::uint64_t relation_window = 16)
{
    BlurReport out;
    out.j4 = check_J4(s, b, n, mode);
    CheckMode j5_mode = mode;
    j5_mode.seed = mode.seed ^ 0x9e3779b97f4a7c15ULL;
    out.j5 = check_J5(s, b, n, j5_mode);
    if (!out.j4.holds)
        out.report.add({"J4", {}, describe(s, b, *out.j4.witness), std::size_t(out.j4.violations)});
    if (!out.j5.holds)
        out.report.add({"J5", {}, describe(s, b, *out.j5.witness), std::size_t(out.j5.violations)});
    for (std::uint64_t i = 0; i < relation_window; ++i)
        for (std::uint64_t j = 0; j < relation_window; ++j)
            for (std::uint64_t k = 0; k < relation_window; ++k) {
                bool v = b.relation(i, j, k);
                if (v != b.relation(j, i, k) || v != b.relation(i, k, j))
                    out.report.note("E-symmetric",
                                    {std::to_string(i), std::to_string(j), std::to_string(k)},
                                    b.relation_name);
            }
    return out;
}

/// Copy number `index` of non-identity atom `base`, coloured by blur member `blur`.
struct BlownAtom {
    std::uint64_t index = 0;
    std::size_t base = 0; ///< atom index in the original structure
    std::size_t blur = 0; ///< index into J
    friend auto operator<=>(const BlownAtom&, const BlownAtom&) = default;
};

/**
 * Truncated blow-up carrier {0..N-1} x I x J with its two partitions: the
 * fibre of each non-identity atom and the colour class of each blur member.
 */
struct BlownUp {
    std::vector<BlownAtom> carrier;
    std::vector<std::size_t> fiber_atoms;         ///< I, in order
    std::vector<std::vector<std::size_t>> fibers; ///< one cell per member of I
    std::vector<std::vector<std::size_t>> colours; ///< one cell per member of J

    AtomSet fiber_set(std::size_t cell) const
    {
        AtomSet s(carrier.size());
        for (auto x : fibers.at(cell))
            s.insert(x);
        return s;
    }
};

inline BlownUp blow_up(const RaAtomStructure& s, const BlurSpec& b, std::uint64_t truncation,
                       std::uint64_t cap = 10'000'000)
{
    detail::check_blur_over(s, b);
    if (truncation == 0)
        throw ParameterError("blow_up: truncation must be at least 1");
    const std::size_t k = b.diversity.size();
    if (double(truncation) * double(k) * double(b.size()) > double(cap))
        throw CapError("blow-up carrier exceeds cap");
    BlownUp out;
    out.fiber_atoms = b.diversity;
    out.fibers.assign(k, {});
    out.colours.assign(b.size(), {});
    for (std::uint64_t i = 0; i < truncation; ++i)
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t w = 0; w < b.size(); ++w) {
                out.fibers[a].push_back(out.carrier.size());
                out.colours[w].push_back(out.carrier.size());
                out.carrier.push_back({i, b.diversity[a], w});
            }
    return out;
}

/// Fibre rule: a triple of blown atoms is consistent iff their bases form a triple.
inline bool lifted_consistent(const RaAtomStructure& s, const BlownUp& u, std::size_t x,
                              std::size_t y, std::size_t z)
{
    return s.holds(u.carrier[x].base, u.carrier[y].base, u.carrier[z].base);
}

inline AtomSet lifted_compose(const RaAtomStructure& s, const BlownUp& u, const AtomSet& x,
                              const AtomSet& y)
{
    if (x.universe() != u.carrier.size() || y.universe() != u.carrier.size())
        throw DomainError("sets are not over the blown-up carrier");
    AtomSet out(u.carrier.size());
    x.for_each([&](std::size_t p) {
        y.for_each([&](std::size_t q) {
            for (std::size_t r = 0; r < u.carrier.size(); ++r)
                if (!out.contains(r) && lifted_consistent(s, u, p, q, r))
                    out.insert(r);
        });
    });
    return out;
}

} // namespace atomkit
