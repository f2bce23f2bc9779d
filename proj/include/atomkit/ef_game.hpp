#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atomkit/error.hpp"
#include "atomkit/partition.hpp"
#include "atomkit/relational.hpp"

namespace atomkit {

enum class Player { ForAll, Exists };

inline std::string to_string(Player p) { return p == Player::Exists ? "Exists" : "ForAll"; }

/**
 * Result of a bounded game search: the winner of the `rounds`-round game and
 * the winner's strategy as a certificate that can be replayed independently.
 */
template <typename Certificate>
struct GameOutcome {
    Player winner = Player::Exists;
    std::size_t rounds = 0;
    bool exhaustive = true;
    std::uint64_t positions = 0;
    Certificate certificate;
};

enum class Side { A, B };

struct EfMove {
    Side side = Side::A;
    std::size_t atom = 0;
    friend auto operator<=>(const EfMove&, const EfMove&) = default;
};

/// The play so far: pairs (a_i, b_i) in the order they were chosen.
using EfPlay = std::vector<std::pair<std::size_t, std::size_t>>;

/**
 * Partition of atoms into classes whose members can be exchanged by a
 * transposition that is an automorphism. Any permutation inside a class is
 * then an automorphism, so positions only matter up to class.
 */
inline std::vector<std::uint32_t> twin_classes(const RelationalStructure& s)
{
    const std::size_t n = s.size();
    std::vector<std::uint32_t> cls(n, 0);
    std::vector<std::size_t> reps;
    auto swap_is_automorphism = [&](std::size_t x, std::size_t y) {
        auto sigma = [&](std::size_t v) { return v == x ? y : v == y ? x : v; };
        for (std::size_t r = 0; r < s.relations().size(); ++r) {
            const std::size_t ar = s.relations()[r].arity;
            std::size_t t[3], u[3];
            std::size_t free_count = 1;
            for (std::size_t i = 1; i < ar; ++i)
                free_count *= n;
            for (std::size_t pos = 0; pos < ar; ++pos)
                for (std::size_t val : {x, y})
                    for (std::size_t f = 0; f < free_count; ++f) {
                        std::size_t rest = f;
                        for (std::size_t i = 0; i < ar; ++i) {
                            if (i == pos) {
                                t[i] = val;
                            } else {
                                t[i] = rest % n;
                                rest /= n;
                            }
                            u[i] = sigma(t[i]);
                        }
                        if (s.holds(r, t) != s.holds(r, u))
                            return false;
                    }
        }
        return true;
    };
    for (std::size_t x = 0; x < n; ++x) {
        bool placed = false;
        for (std::size_t c = 0; c < reps.size() && !placed; ++c)
            if (swap_is_automorphism(reps[c], x)) {
                cls[x] = std::uint32_t(c);
                placed = true;
            }
        if (!placed) {
            cls[x] = std::uint32_t(reps.size());
            reps.push_back(x);
        }
    }
    return cls;
}

/// A move described independently of which concrete twin was used.
struct EfCanonMove {
    Side side = Side::A;
    bool partner = false; ///< reply only: the atom already paired with ForAll's atom
    bool played = false;
    std::uint32_t first = 0;  ///< class of the atom (fresh), or class in A of its pair (played)
    std::uint32_t second = 0; ///< class in B of its pair (played only)
    friend auto operator<=>(const EfCanonMove&, const EfCanonMove&) = default;
};

using EfKey = std::vector<std::uint32_t>;

struct EfCertificate {
    /// Exists: for every position reached, each ForAll move and the reply.
    std::map<EfKey, std::map<EfCanonMove, EfCanonMove>> replies;
    /// ForAll: the move chosen at each position reached.
    std::map<EfKey, EfCanonMove> moves;
};

using EfOutcome = GameOutcome<EfCertificate>;

struct EfOptions {
    /// Identify positions and moves up to twin classes. Off: every atom is its own class.
    bool symmetry_reduction = true;
};

/**
 * EF_mu game on two finite relational structures of the same signature.
 * ForAll picks an atom in either structure, Exists answers in the other; Exists
 * wins a play when a_i -> b_i is an isomorphism between the induced
 * substructures (equality and every relation preserved in both directions).
 */
class EfGame {
  public:
    EfGame(RelationalStructure a, RelationalStructure b, EfOptions opts = {})
        : a_(std::move(a)), b_(std::move(b)), opts_(opts)
    {
        if (a_.signature() != b_.signature())
            throw DomainError("EF game needs structures of the same signature");
        if (opts_.symmetry_reduction) {
            cls_a_ = twin_classes(a_);
            cls_b_ = twin_classes(b_);
        } else {
            for (std::size_t i = 0; i < a_.size(); ++i)
                cls_a_.push_back(std::uint32_t(i));
            for (std::size_t i = 0; i < b_.size(); ++i)
                cls_b_.push_back(std::uint32_t(i));
        }
    }

    const RelationalStructure& a() const { return a_; }
    const RelationalStructure& b() const { return b_; }
    const RelationalStructure& structure(Side s) const { return s == Side::A ? a_ : b_; }
    std::uint64_t positions_evaluated() const { return memo_.size(); }

    /// Whether adding (a, b) keeps the play a partial isomorphism.
    bool extends(const EfPlay& play, std::size_t a, std::size_t b) const
    {
        for (auto [x, y] : play) {
            if ((x == a) != (y == b))
                return false;
            if (x == a)
                return true; // repeated pair: nothing new to check
        }
        const std::size_t t = play.size();
        std::vector<std::size_t> va, vb;
        for (auto [x, y] : play) {
            va.push_back(x);
            vb.push_back(y);
        }
        va.push_back(a);
        vb.push_back(b);
        for (std::size_t r = 0; r < a_.relations().size(); ++r) {
            const std::size_t ar = a_.relations()[r].arity;
            std::size_t total = 1;
            for (std::size_t i = 0; i < ar; ++i)
                total *= t + 1;
            std::size_t pa[3], pb[3];
            for (std::size_t code = 0; code < total; ++code) {
                std::size_t rest = code;
                bool uses_new = false;
                for (std::size_t i = 0; i < ar; ++i) {
                    std::size_t p = rest % (t + 1);
                    rest /= t + 1;
                    uses_new |= p == t;
                    pa[i] = va[p];
                    pb[i] = vb[p];
                }
                if (uses_new && a_.holds(r, pa) != b_.holds(r, pb))
                    return false;
            }
        }
        return true;
    }

    /// Candidate atoms on one side: every played atom, plus the least unplayed atom of each class.
    std::vector<std::size_t> candidates(const EfPlay& play, Side side) const
    {
        const auto& cls = side == Side::A ? cls_a_ : cls_b_;
        std::set<std::size_t> played;
        for (auto [x, y] : play)
            played.insert(side == Side::A ? x : y);
        std::set<std::uint32_t> seen;
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < cls.size(); ++v) {
            if (played.count(v))
                out.push_back(v);
            else if (seen.insert(cls[v]).second)
                out.push_back(v);
        }
        return out;
    }

    std::vector<EfMove> forall_moves(const EfPlay& play) const
    {
        std::vector<EfMove> out;
        for (auto v : candidates(play, Side::A))
            out.push_back({Side::A, v});
        for (auto v : candidates(play, Side::B))
            out.push_back({Side::B, v});
        return out;
    }

    static EfPlay extend(EfPlay play, EfMove m, std::size_t answer)
    {
        if (m.side == Side::A)
            play.emplace_back(m.atom, answer);
        else
            play.emplace_back(answer, m.atom);
        return play;
    }

    /// Exists survives `rounds` more rounds from this (partial-isomorphism) play.
    bool exists_wins(const EfPlay& play, std::size_t rounds)
    {
        if (rounds == 0)
            return true;
        EfKey k = key(play, rounds);
        if (auto it = memo_.find(k); it != memo_.end())
            return it->second;
        bool win = true;
        for (auto m : forall_moves(play))
            if (!exists_answer(play, m, rounds)) {
                win = false;
                break;
            }
        memo_.emplace(std::move(k), win);
        return win;
    }

    /// Least answer to `m` after which Exists still wins, if any.
    std::optional<std::size_t> exists_answer(const EfPlay& play, EfMove m, std::size_t rounds)
    {
        Side other = m.side == Side::A ? Side::B : Side::A;
        for (auto v : candidates(play, other)) {
            bool ok = m.side == Side::A ? extends(play, m.atom, v) : extends(play, v, m.atom);
            if (ok && exists_wins(extend(play, m, v), rounds - 1))
                return v;
        }
        return std::nullopt;
    }

    /// Least ForAll move that Exists cannot answer, if any.
    std::optional<EfMove> forall_winning_move(const EfPlay& play, std::size_t rounds)
    {
        for (auto m : forall_moves(play))
            if (!exists_answer(play, m, rounds))
                return m;
        return std::nullopt;
    }

    /// Legal (partial-isomorphism preserving) answers to `m`, among candidates.
    std::vector<std::size_t> legal_answers(const EfPlay& play, EfMove m) const
    {
        std::vector<std::size_t> out;
        Side other = m.side == Side::A ? Side::B : Side::A;
        for (auto v : candidates(play, other))
            if (m.side == Side::A ? extends(play, m.atom, v) : extends(play, v, m.atom))
                out.push_back(v);
        return out;
    }

    EfKey key(const EfPlay& play, std::size_t rounds) const
    {
        std::set<std::pair<std::size_t, std::size_t>> distinct(play.begin(), play.end());
        EfKey k;
        k.push_back(std::uint32_t(rounds));
        std::vector<std::pair<std::uint32_t, std::uint32_t>> cp;
        for (auto [x, y] : distinct)
            cp.emplace_back(cls_a_[x], cls_b_[y]);
        std::sort(cp.begin(), cp.end());
        for (auto [x, y] : cp) {
            k.push_back(x);
            k.push_back(y);
        }
        return k;
    }

    EfCanonMove encode(const EfPlay& play, Side side, std::size_t atom) const
    {
        for (auto [x, y] : play)
            if ((side == Side::A ? x : y) == atom)
                return {side, false, true, cls_a_[x], cls_b_[y]};
        return {side, false, false, (side == Side::A ? cls_a_ : cls_b_)[atom], 0};
    }

    /// Concrete atom for a canonical move: least played atom with that pair class, or least fresh atom of the class.
    std::optional<std::size_t> decode(const EfPlay& play, const EfCanonMove& m) const
    {
        const auto& cls = m.side == Side::A ? cls_a_ : cls_b_;
        std::set<std::size_t> played;
        std::optional<std::size_t> best;
        for (auto [x, y] : play) {
            std::size_t mine = m.side == Side::A ? x : y;
            played.insert(mine);
            if (m.played && cls_a_[x] == m.first && cls_b_[y] == m.second)
                best = best ? std::min(*best, mine) : mine;
        }
        if (m.played)
            return best;
        for (std::size_t v = 0; v < cls.size(); ++v)
            if (!played.count(v) && cls[v] == m.first)
                return v;
        return std::nullopt;
    }

    EfCanonMove encode_reply(const EfPlay& play, EfMove m, std::size_t answer) const
    {
        Side other = m.side == Side::A ? Side::B : Side::A;
        for (auto [x, y] : play) {
            auto [mine, theirs] = m.side == Side::A ? std::pair{x, y} : std::pair{y, x};
            if (mine == m.atom && theirs == answer)
                return {other, true, false, 0, 0};
        }
        return encode(play, other, answer);
    }

    std::optional<std::size_t> decode_reply(const EfPlay& play, EfMove m, const EfCanonMove& r) const
    {
        if (!r.partner)
            return decode(play, r);
        for (auto [x, y] : play)
            if ((m.side == Side::A ? x : y) == m.atom)
                return m.side == Side::A ? y : x;
        return std::nullopt;
    }

  private:
    RelationalStructure a_, b_;
    EfOptions opts_;
    std::vector<std::uint32_t> cls_a_, cls_b_;
    std::map<EfKey, bool> memo_;
};

namespace detail {

inline void extract_ef_certificate(EfGame& g, const EfPlay& play, std::size_t rounds, Player winner,
                                   EfCertificate& cert, std::set<EfKey>& seen)
{
    if (rounds == 0)
        return;
    EfKey k = g.key(play, rounds);
    if (!seen.insert(k).second)
        return;
    if (winner == Player::Exists) {
        auto& replies = cert.replies[k];
        for (auto m : g.forall_moves(play)) {
            auto ans = g.exists_answer(play, m, rounds);
            replies[g.encode(play, m.side, m.atom)] = g.encode_reply(play, m, *ans);
            extract_ef_certificate(g, EfGame::extend(play, m, *ans), rounds - 1, winner, cert, seen);
        }
    } else {
        auto m = *g.forall_winning_move(play, rounds);
        cert.moves[k] = g.encode(play, m.side, m.atom);
        for (auto v : g.legal_answers(play, m))
            extract_ef_certificate(g, EfGame::extend(play, m, v), rounds - 1, winner, cert, seen);
    }
}

} // namespace detail

/// Decides EF_mu by memoized game-tree search and extracts the winner's least strategy.
inline EfOutcome ef_decide(const RelationalStructure& a, const RelationalStructure& b, std::size_t mu,
                           EfOptions opts = {})
{
    if (mu == 0)
        throw ParameterError("ef_decide: mu must be positive");
    EfGame g(a, b, opts);
    EfOutcome out;
    out.rounds = mu;
    out.winner = g.exists_wins({}, mu) ? Player::Exists : Player::ForAll;
    std::set<EfKey> seen;
    detail::extract_ef_certificate(g, {}, mu, out.winner, out.certificate, seen);
    out.positions = g.positions_evaluated();
    return out;
}

template <typename X, typename Y>
EfOutcome ef_decide(const X& a, const Y& b, std::size_t mu, EfOptions opts = {})
{
    return ef_decide(relational_view(a), relational_view(b), mu, opts);
}

/**
 * Replays a certificate: the winner follows it, the loser tries every
 * candidate move. True when every resulting play ends as the certificate claims.
 */
inline bool replay_ef_certificate(const RelationalStructure& a, const RelationalStructure& b,
                                  const EfOutcome& outcome, EfOptions opts = {})
{
    EfGame g(a, b, opts);
    std::set<EfKey> ok;
    auto rec = [&](auto&& self, const EfPlay& play, std::size_t rounds) -> bool {
        if (rounds == 0)
            return outcome.winner == Player::Exists;
        EfKey k = g.key(play, rounds);
        if (ok.count(k))
            return true;
        bool good = true;
        if (outcome.winner == Player::Exists) {
            auto it = outcome.certificate.replies.find(k);
            if (it == outcome.certificate.replies.end())
                return false;
            for (auto m : g.forall_moves(play)) {
                auto r = it->second.find(g.encode(play, m.side, m.atom));
                if (r == it->second.end())
                    return false;
                auto ans = g.decode_reply(play, m, r->second);
                if (!ans)
                    return false;
                bool legal = m.side == Side::A ? g.extends(play, m.atom, *ans) : g.extends(play, *ans, m.atom);
                if (!legal || !self(self, EfGame::extend(play, m, *ans), rounds - 1)) {
                    good = false;
                    break;
                }
            }
        } else {
            auto it = outcome.certificate.moves.find(k);
            if (it == outcome.certificate.moves.end())
                return false;
            auto atom = g.decode(play, it->second);
            if (!atom)
                return false;
            EfMove m{it->second.side, *atom};
            for (auto v : g.legal_answers(play, m))
                if (!self(self, EfGame::extend(play, m, v), rounds - 1)) {
                    good = false;
                    break;
                }
        }
        if (good)
            ok.insert(k);
        return good;
    };
    return rec(rec, {}, outcome.rounds);
}

/**
 * Explicit Exists strategy on a partition pair: copy the atom on blocks outside
 * `large`, answer with the least-index fresh atom of the same block on large
 * blocks, and repeat the partner of an atom that was already played.
 */
class PartitionStrategy {
  public:
    PartitionStrategy(PartitionStructure a, PartitionStructure b) : a_(std::move(a)), b_(std::move(b))
    {
        if (a_.units() != b_.units())
            throw DomainError("partition strategy needs the same units on both sides");
        for (std::size_t u = 0; u < a_.units().size(); ++u)
            if (!a_.is_large(u) && a_.sizes()[u] != b_.sizes()[u])
                throw DomainError("unit '" + a_.units()[u] + "' is not large but sizes differ");
    }

    /// Reply to `m`, or nothing when the strategy has to resign.
    std::optional<std::size_t> answer(const EfPlay& play, EfMove m) const
    {
        const auto& from = m.side == Side::A ? a_ : b_;
        const auto& to = m.side == Side::A ? b_ : a_;
        std::set<std::size_t> used;
        for (auto [x, y] : play) {
            std::size_t mine = m.side == Side::A ? x : y;
            std::size_t theirs = m.side == Side::A ? y : x;
            if (mine == m.atom)
                return theirs;
            used.insert(theirs);
        }
        std::size_t u = from.unit_of(m.atom);
        if (!from.is_large(u))
            return to.atom(u, from.index_in_unit(m.atom));
        for (std::size_t i = 0; i < to.sizes()[u]; ++i)
            if (!used.count(to.atom(u, i)))
                return to.atom(u, i);
        return std::nullopt;
    }

    const PartitionStructure& a() const { return a_; }
    const PartitionStructure& b() const { return b_; }

  private:
    PartitionStructure a_, b_;
};

inline PartitionStrategy ef_partition_strategy(const PartitionStructure& a, const PartitionStructure& b)
{
    return PartitionStrategy(a, b);
}

struct StrategyRun {
    bool survives = true;
    std::size_t failed_round = 0; ///< 1-based round of the first resignation or illegal reply
    bool resigned = false;
    std::vector<EfMove> forall_line;
};

/**
 * Plays the strategy against every ForAll sequence of length mu. With
 * `reduced`, ForAll only uses candidate moves (played atoms and one fresh
 * atom per block) and positions are memoized up to block symmetry.
 */
inline StrategyRun replay_partition_strategy(const PartitionStrategy& strat, std::size_t mu,
                                             bool reduced = false)
{
    EfGame g(relational_view(strat.a()), relational_view(strat.b()), EfOptions{reduced});
    StrategyRun run;
    std::set<EfKey> ok;
    std::vector<EfMove> line;
    auto all_moves = [&](const EfPlay& play) {
        if (reduced)
            return g.forall_moves(play);
        std::vector<EfMove> out;
        for (std::size_t v = 0; v < strat.a().atom_count(); ++v)
            out.push_back({Side::A, v});
        for (std::size_t v = 0; v < strat.b().atom_count(); ++v)
            out.push_back({Side::B, v});
        return out;
    };
    auto rec = [&](auto&& self, const EfPlay& play, std::size_t round) -> bool {
        if (round > mu)
            return true;
        EfKey k = g.key(play, mu - round + 1);
        if (reduced && ok.count(k))
            return true;
        for (auto m : all_moves(play)) {
            line.push_back(m);
            auto ans = strat.answer(play, m);
            bool legal = ans && (m.side == Side::A ? g.extends(play, m.atom, *ans) : g.extends(play, *ans, m.atom));
            if (!legal) {
                run.survives = false;
                run.failed_round = round;
                run.resigned = !ans;
                run.forall_line = line;
                return false;
            }
            if (!self(self, EfGame::extend(play, m, *ans), round + 1))
                return false;
            line.pop_back();
        }
        if (reduced)
            ok.insert(k);
        return true;
    };
    rec(rec, {}, 1);
    return run;
}

} // namespace atomkit
