#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "atomkit/cylalg.hpp"
#include "atomkit/ef_game.hpp"
#include "atomkit/error.hpp"

namespace atomkit {

/// Labels of all n-tuples over nodes 0..m-1, indexed lexicographically (first coordinate most significant).
using NetLabels = std::vector<std::uint32_t>;

/**
 * ForAll's cylindrifier demand: tuple x over current nodes, index i, target
 * atom b with b T_i N(x), and the node w that receives the witness
 * (the next fresh node, or a node outside x to overwrite once all pebbles are placed).
 */
struct NetDemand {
    std::vector<std::uint32_t> tuple;
    std::uint32_t index = 0;
    std::uint32_t target = 0;
    std::uint32_t node = 0;
    friend auto operator<=>(const NetDemand&, const NetDemand&) = default;
};

/// Key of a position: rounds left, node count, canonical labels.
using NetKey = std::vector<std::uint32_t>;

struct NetCertificate {
    /// Exists: initial network for every opening atom, then a reply to every demand.
    std::map<std::uint32_t, NetLabels> openings;
    std::map<NetKey, std::map<NetDemand, NetLabels>> replies;
    /// ForAll: opening atom and a demand at every position reached.
    std::optional<std::uint32_t> forall_opening;
    std::map<NetKey, NetDemand> demands;
    std::string interpretation;
};

using NetOutcome = GameOutcome<NetCertificate>;

inline std::size_t net_pow(std::size_t m, std::size_t n)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < n; ++i)
        r *= m;
    return r;
}

inline std::vector<std::uint32_t> net_decode(std::size_t code, std::size_t m, std::size_t n)
{
    std::vector<std::uint32_t> t(n);
    for (std::size_t j = n; j-- > 0;) {
        t[j] = std::uint32_t(code % m);
        code /= m;
    }
    return t;
}

inline std::size_t net_encode(const std::vector<std::uint32_t>& t, std::size_t m)
{
    std::size_t c = 0;
    for (auto x : t)
        c = c * m + x;
    return c;
}

/**
 * Network consistency: repeated nodes at positions i, j force a label in D_ij,
 * and tuples that agree outside position i carry T_i-related labels.
 */
inline bool network_consistent(const CaAtomStructure& s, std::size_t m, const NetLabels& labels)
{
    const std::size_t n = s.dimension();
    if (labels.size() != net_pow(m, n))
        return false;
    for (std::size_t code = 0; code < labels.size(); ++code) {
        if (labels[code] >= s.size())
            return false;
        auto t = net_decode(code, m, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && t[i] == t[j] && !s.diagonal_set(i, j).contains(labels[code]))
                    return false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint32_t v = 0; v < m; ++v) {
                auto u = t;
                u[i] = v;
                if (!s.related(i, labels[code], labels[net_encode(u, m)]))
                    return false;
            }
    }
    return true;
}

/**
 * Bounded F^k-style game on a cylindric atom structure with k pebbles. ForAll
 * opens with an atom a and Exists labels a network on nodes 0..n-1 with
 * N(0,..,n-1) = a. Each later round is a cylindrifier demand; Exists answers by
 * labelling every tuple that mentions the witness node.
 */
class NetworkGame {
  public:
    NetworkGame(const CaAtomStructure& s, std::size_t pebbles) : s_(s), n_(s.dimension()), k_(pebbles)
    {
        if (k_ < n_)
            throw ParameterError("network game needs at least n = " + std::to_string(n_) + " pebbles, got "
                                 + std::to_string(k_));
    }

    std::size_t dimension() const { return n_; }
    std::size_t pebbles() const { return k_; }
    std::uint64_t positions_evaluated() const { return memo_.size(); }

    /// Every consistent labelling of nodes 0..n-1 with N(0,..,n-1) = atom, lexicographically ordered.
    std::vector<NetLabels> openings(std::uint32_t atom) const
    {
        NetLabels lab(net_pow(n_, n_), 0);
        std::vector<bool> fixed(lab.size(), false);
        std::vector<std::uint32_t> ident(n_);
        std::iota(ident.begin(), ident.end(), 0);
        std::size_t c = net_encode(ident, n_);
        lab[c] = atom;
        fixed[c] = true;
        return complete(n_, lab, fixed);
    }

    /// ForAll's demands on a position, lexicographically ordered.
    std::vector<NetDemand> demands(std::size_t m, const NetLabels& labels) const
    {
        std::vector<NetDemand> out;
        for (std::size_t code = 0; code < labels.size(); ++code) {
            auto t = net_decode(code, m, n_);
            for (std::uint32_t i = 0; i < n_; ++i)
                for (auto b : s_.related(i, labels[code])) {
                    if (m < k_) {
                        out.push_back({t, i, std::uint32_t(b), std::uint32_t(m)});
                        continue;
                    }
                    for (std::uint32_t w = 0; w < m; ++w)
                        if (std::find(t.begin(), t.end(), w) == t.end())
                            out.push_back({t, i, std::uint32_t(b), w});
                }
        }
        return out;
    }

    /// Node count after the demand is answered.
    std::size_t next_size(std::size_t m, const NetDemand& d) const { return d.node == m ? m + 1 : m; }

    /// Every consistent reply: tuples avoiding the witness node keep their labels, N(x[i->w]) = b.
    std::vector<NetLabels> replies(std::size_t m, const NetLabels& labels, const NetDemand& d) const
    {
        const std::size_t m2 = next_size(m, d);
        NetLabels lab(net_pow(m2, n_), 0);
        std::vector<bool> fixed(lab.size(), false);
        for (std::size_t code = 0; code < lab.size(); ++code) {
            auto t = net_decode(code, m2, n_);
            if (std::find(t.begin(), t.end(), d.node) != t.end())
                continue;
            lab[code] = labels[net_encode(t, m)];
            fixed[code] = true;
        }
        auto u = d.tuple;
        u[d.index] = d.node;
        std::size_t c = net_encode(u, m2);
        lab[c] = d.target;
        fixed[c] = true;
        return complete(m2, lab, fixed);
    }

    /// Least labelling over all renamings of the nodes.
    NetLabels canonical(std::size_t m, const NetLabels& labels) const
    {
        std::vector<std::uint32_t> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        NetLabels best;
        NetLabels img(labels.size());
        do {
            for (std::size_t code = 0; code < labels.size(); ++code) {
                auto t = net_decode(code, m, n_);
                for (auto& x : t)
                    x = perm[x];
                img[net_encode(t, m)] = labels[code];
            }
            if (best.empty() || img < best)
                best = img;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    NetKey key(std::size_t m, const NetLabels& canon, std::size_t rounds) const
    {
        NetKey k{std::uint32_t(rounds), std::uint32_t(m)};
        k.insert(k.end(), canon.begin(), canon.end());
        return k;
    }

    /// Exists survives `rounds` more demands from this canonical position.
    bool exists_survives(std::size_t m, const NetLabels& canon, std::size_t rounds)
    {
        if (rounds == 0)
            return true;
        NetKey k = key(m, canon, rounds);
        if (auto it = memo_.find(k); it != memo_.end())
            return it->second;
        bool win = true;
        for (const auto& d : demands(m, canon))
            if (!winning_reply(m, canon, d, rounds)) {
                win = false;
                break;
            }
        memo_.emplace(std::move(k), win);
        return win;
    }

    /// Least reply to `d` after which Exists survives the remaining rounds.
    std::optional<NetLabels> winning_reply(std::size_t m, const NetLabels& canon, const NetDemand& d,
                                           std::size_t rounds)
    {
        const std::size_t m2 = next_size(m, d);
        for (auto& r : replies(m, canon, d))
            if (exists_survives(m2, canonical(m2, r), rounds - 1))
                return r;
        return std::nullopt;
    }

    std::optional<NetLabels> winning_opening(std::uint32_t atom, std::size_t rounds)
    {
        for (auto& o : openings(atom))
            if (exists_survives(n_, canonical(n_, o), rounds))
                return o;
        return std::nullopt;
    }

  private:
    /// Backtracking over the unfixed tuples; candidates come from a labelled neighbour's T-class.
    std::vector<NetLabels> complete(std::size_t m, NetLabels lab, std::vector<bool> fixed) const
    {
        std::vector<std::size_t> todo;
        for (std::size_t c = 0; c < lab.size(); ++c)
            if (!fixed[c])
                todo.push_back(c);
        std::vector<NetLabels> out;
        std::vector<bool> known = fixed;
        auto ok_at = [&](std::size_t code) {
            auto t = net_decode(code, m, n_);
            std::uint32_t a = lab[code];
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j)
                    if (i != j && t[i] == t[j] && !s_.diagonal_set(i, j).contains(a))
                        return false;
            for (std::size_t i = 0; i < n_; ++i)
                for (std::uint32_t v = 0; v < m; ++v) {
                    auto u = t;
                    u[i] = v;
                    std::size_t c2 = net_encode(u, m);
                    if (known[c2] && !s_.related(i, a, lab[c2]))
                        return false;
                }
            return true;
        };
        for (std::size_t c = 0; c < lab.size(); ++c)
            if (fixed[c] && !ok_at(c))
                return out;
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == todo.size()) {
                out.push_back(lab);
                return;
            }
            std::size_t code = todo[pos];
            auto t = net_decode(code, m, n_);
            const std::vector<std::size_t>* cand = nullptr;
            for (std::size_t i = 0; i < n_ && !cand; ++i)
                for (std::uint32_t v = 0; v < m && !cand; ++v) {
                    auto u = t;
                    u[i] = v;
                    std::size_t c2 = net_encode(u, m);
                    if (c2 != code && known[c2])
                        cand = &s_.related(i, lab[c2]);
                }
            auto try_atom = [&](std::uint32_t a) {
                lab[code] = a;
                known[code] = true;
                if (ok_at(code))
                    self(self, pos + 1);
                known[code] = false;
            };
            if (cand) {
                for (auto a : *cand)
                    try_atom(std::uint32_t(a));
            } else {
                for (std::uint32_t a = 0; a < s_.size(); ++a)
                    try_atom(a);
            }
        };
        rec(rec, 0);
        return out;
    }

    const CaAtomStructure& s_;
    std::size_t n_, k_;
    std::map<NetKey, bool> memo_;
};

namespace detail {

inline void extract_net_certificate(NetworkGame& g, std::size_t m, const NetLabels& canon, std::size_t rounds,
                                    Player winner, NetCertificate& cert, std::map<NetKey, bool>& seen)
{
    if (rounds == 0)
        return;
    NetKey k = g.key(m, canon, rounds);
    if (!seen.emplace(k, true).second)
        return;
    if (winner == Player::Exists) {
        auto& rep = cert.replies[k];
        for (const auto& d : g.demands(m, canon)) {
            auto r = *g.winning_reply(m, canon, d, rounds);
            rep[d] = r;
            std::size_t m2 = g.next_size(m, d);
            extract_net_certificate(g, m2, g.canonical(m2, r), rounds - 1, winner, cert, seen);
        }
    } else {
        for (const auto& d : g.demands(m, canon))
            if (!g.winning_reply(m, canon, d, rounds)) {
                cert.demands[k] = d;
                std::size_t m2 = g.next_size(m, d);
                for (auto& r : g.replies(m, canon, d))
                    extract_net_certificate(g, m2, g.canonical(m2, r), rounds - 1, winner, cert, seen);
                return;
            }
    }
}

} // namespace detail

/**
 * Decides the bounded network game with `pebbles` nodes and `rounds` demands
 * after the opening. A ForAll win refutes the structure as a candidate for
 * neat embedding in pebbles - n extra dimensions at this depth; an Exists win
 * proves nothing beyond survival.
 */
inline NetOutcome network_game_decide(const CaAtomStructure& s, std::size_t pebbles, std::size_t rounds)
{
    if (rounds == 0)
        throw ParameterError("network game needs a positive round bound");
    NetworkGame g(s, pebbles);
    NetOutcome out;
    out.rounds = rounds;
    std::optional<std::uint32_t> refuting;
    for (std::uint32_t a = 0; a < s.size() && !refuting; ++a)
        if (!g.winning_opening(a, rounds))
            refuting = a;
    out.winner = refuting ? Player::ForAll : Player::Exists;
    std::map<NetKey, bool> seen;
    const std::size_t n = s.dimension();
    if (refuting) {
        out.certificate.forall_opening = *refuting;
        for (auto& o : g.openings(*refuting))
            detail::extract_net_certificate(g, n, g.canonical(n, o), rounds, out.winner, out.certificate, seen);
        out.certificate.interpretation = "refutes-(" + std::to_string(n) + "+" + std::to_string(pebbles - n)
                                         + ")-embedding-candidate";
    } else {
        for (std::uint32_t a = 0; a < s.size(); ++a) {
            auto o = *g.winning_opening(a, rounds);
            out.certificate.openings[a] = o;
            detail::extract_net_certificate(g, n, g.canonical(n, o), rounds, out.winner, out.certificate, seen);
        }
    }
    out.positions = g.positions_evaluated();
    return out;
}

/**
 * Replays a certificate. Exists's stored replies are checked with
 * network_consistent and the demand's constraints; against a ForAll
 * certificate every consistent reply is tried.
 */
inline bool replay_net_certificate(const CaAtomStructure& s, std::size_t pebbles, const NetOutcome& outcome)
{
    NetworkGame g(s, pebbles);
    const std::size_t n = s.dimension();
    const auto& cert = outcome.certificate;
    std::map<NetKey, bool> done;
    auto valid_reply = [&](std::size_t m, const NetLabels& before, const NetDemand& d, const NetLabels& after) {
        std::size_t m2 = g.next_size(m, d);
        if (!network_consistent(s, m2, after))
            return false;
        auto u = d.tuple;
        u[d.index] = d.node;
        if (after[net_encode(u, m2)] != d.target)
            return false;
        for (std::size_t code = 0; code < after.size(); ++code) {
            auto t = net_decode(code, m2, n);
            if (std::find(t.begin(), t.end(), d.node) == t.end() && after[code] != before[net_encode(t, m)])
                return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t m, const NetLabels& labels, std::size_t rounds) -> bool {
        if (rounds == 0)
            return outcome.winner == Player::Exists;
        NetLabels canon = g.canonical(m, labels);
        NetKey k = g.key(m, canon, rounds);
        if (done.count(k))
            return true;
        bool good = true;
        if (outcome.winner == Player::Exists) {
            auto it = cert.replies.find(k);
            if (it == cert.replies.end())
                return false;
            for (const auto& d : g.demands(m, canon)) {
                auto r = it->second.find(d);
                if (r == it->second.end() || !valid_reply(m, canon, d, r->second)
                    || !self(self, g.next_size(m, d), r->second, rounds - 1)) {
                    good = false;
                    break;
                }
            }
        } else {
            auto it = cert.demands.find(k);
            if (it == cert.demands.end())
                return false;
            const auto& d = it->second;
            auto legal = g.demands(m, canon);
            if (std::find(legal.begin(), legal.end(), d) == legal.end())
                return false;
            for (auto& r : g.replies(m, canon, d)) {
                if (!valid_reply(m, canon, d, r))
                    return false;
                if (!self(self, g.next_size(m, d), r, rounds - 1)) {
                    good = false;
                    break;
                }
            }
        }
        if (good)
            done.emplace(k, true);
        return good;
    };
    std::vector<std::uint32_t> ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    const std::size_t top = net_encode(ident, n);
    if (outcome.winner == Player::Exists) {
        for (std::uint32_t a = 0; a < s.size(); ++a) {
            auto it = cert.openings.find(a);
            if (it == cert.openings.end() || it->second.size() != net_pow(n, n) || it->second[top] != a
                || !network_consistent(s, n, it->second) || !rec(rec, n, it->second, outcome.rounds))
                return false;
        }
        return true;
    }
    if (!cert.forall_opening)
        return false;
    for (auto& o : g.openings(*cert.forall_opening))
        if (!network_consistent(s, n, o) || !rec(rec, n, o, outcome.rounds))
            return false;
    return true;
}

struct Classification {
    enum class Verdict { refuted, consistent };
    Verdict verdict = Verdict::consistent;
    std::size_t depth = 0;
    std::size_t extra = 0;
    NetOutcome outcome;

    /// "k-complete refuted at depth R" or "consistent-with-k-complete at depth R".
    std::string text() const
    {
        return (verdict == Verdict::refuted ? "k-complete refuted at depth " : "consistent-with-k-complete at depth ")
               + std::to_string(depth);
    }
};

/**
 * One-sided bounded certificate from the network game with n + k pebbles.
 * Never a membership proof.
 */
inline Classification classify(const CaAtomStructure& s, std::size_t extra, std::size_t rounds)
{
    Classification c;
    c.extra = extra;
    c.depth = rounds;
    c.outcome = network_game_decide(s, s.dimension() + extra, rounds);
    c.verdict = c.outcome.winner == Player::ForAll ? Classification::Verdict::refuted
                                                   : Classification::Verdict::consistent;
    return c;
}

} // namespace atomkit
