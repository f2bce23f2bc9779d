#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "atomkit/atom_set.hpp"
#include "atomkit/error.hpp"
#include "atomkit/report.hpp"

namespace atomkit {

/// Ordered atom triple. `(a, b, c)` records the atom-level fact c <= a;b.
struct Triple {
    std::size_t a = 0, b = 0, c = 0;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

/**
 * Finite relation-algebra atom structure with a single identity atom.
 *
 * The triple set is stored sorted, together with a dense consistency tensor
 * and the per-pair composition sets used by the complex-algebra operations.
 * Values are immutable once built.
 */
class RaAtomStructure {
  public:
    RaAtomStructure() = default;

    /**
     * Builds a structure from diversity data. The supplied triples are closed
     * under the Peircean transforms and the identity triples are added, so the
     * result always satisfies cycle closure and the identity law.
     */
    static RaAtomStructure build(std::vector<std::string> atoms, std::size_t identity,
                                 std::vector<std::size_t> converse,
                                 const std::vector<Triple>& diversity_triples)
    {
        validate_shape(atoms, identity, converse);
        std::set<Triple> closed;
        for (const auto& t : diversity_triples) {
            check_triple_range(t, atoms.size());
            std::vector<Triple> todo{t};
            while (!todo.empty()) {
                Triple x = todo.back();
                todo.pop_back();
                if (!closed.insert(x).second)
                    continue;
                todo.push_back({converse[x.a], x.c, x.b});
                todo.push_back({x.c, converse[x.b], x.a});
            }
        }
        for (std::size_t x = 0; x < atoms.size(); ++x) {
            closed.insert({identity, x, x});
            closed.insert({x, identity, x});
            closed.insert({x, converse[x], identity});
        }
        return RaAtomStructure(std::move(atoms), identity, std::move(converse),
                               std::vector<Triple>(closed.begin(), closed.end()));
    }

    /// Stores the triples exactly as given. Used to load and check arbitrary data.
    static RaAtomStructure from_raw(std::vector<std::string> atoms, std::size_t identity,
                                    std::vector<std::size_t> converse, std::vector<Triple> triples)
    {
        validate_shape(atoms, identity, converse);
        for (const auto& t : triples)
            check_triple_range(t, atoms.size());
        std::sort(triples.begin(), triples.end());
        triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
        return RaAtomStructure(std::move(atoms), identity, std::move(converse), std::move(triples));
    }

    std::size_t size() const { return atoms_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::string& name(std::size_t i) const { return atoms_.at(i); }
    std::size_t identity() const { return identity_; }
    AtomSet identity_set() const { return AtomSet(size(), {identity_}); }
    std::size_t converse(std::size_t a) const { return converse_.at(a); }
    const std::vector<std::size_t>& converse_map() const { return converse_; }
    const std::vector<Triple>& triples() const { return triples_; }

    bool holds(std::size_t a, std::size_t b, std::size_t c) const
    {
        return tensor_[(a * size() + b) * size() + c] != 0;
    }

    /// Atoms c with c <= a;b.
    const AtomSet& composition(std::size_t a, std::size_t b) const { return comp_[a * size() + b]; }

    /// Non-identity atom indices in list order.
    std::vector<std::size_t> diversity_atoms() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (i != identity_)
                out.push_back(i);
        return out;
    }

    /// Stored triples that mention no identity atom.
    std::vector<Triple> diversity_triples() const
    {
        std::vector<Triple> out;
        for (const auto& t : triples_)
            if (t.a != identity_ && t.b != identity_ && t.c != identity_)
                out.push_back(t);
        return out;
    }

    std::size_t index_of(const std::string& atom) const
    {
        auto it = index_.find(atom);
        if (it == index_.end())
            throw DomainError("unknown atom '" + atom + "'");
        return it->second;
    }

    AtomSet make_set(const std::vector<std::string>& names) const
    {
        AtomSet s(size());
        for (const auto& n : names)
            s.insert(index_of(n));
        return s;
    }

    std::vector<std::string> names_of(const AtomSet& s) const
    {
        std::vector<std::string> out;
        s.for_each([&](std::size_t i) { out.push_back(atoms_[i]); });
        return out;
    }

    friend bool operator==(const RaAtomStructure& x, const RaAtomStructure& y)
    {
        return x.atoms_ == y.atoms_ && x.identity_ == y.identity_ && x.converse_ == y.converse_
               && x.triples_ == y.triples_;
    }

  private:
    RaAtomStructure(std::vector<std::string> atoms, std::size_t identity,
                    std::vector<std::size_t> converse, std::vector<Triple> triples)
        : atoms_(std::move(atoms)), identity_(identity), converse_(std::move(converse)),
          triples_(std::move(triples))
    {
        const std::size_t n = atoms_.size();
        for (std::size_t i = 0; i < n; ++i)
            index_.emplace(atoms_[i], i);
        tensor_.assign(n * n * n, 0);
        comp_.assign(n * n, AtomSet(n));
        for (const auto& t : triples_) {
            tensor_[(t.a * n + t.b) * n + t.c] = 1;
            comp_[t.a * n + t.b].insert(t.c);
        }
    }

    static void validate_shape(const std::vector<std::string>& atoms, std::size_t identity,
                               const std::vector<std::size_t>& converse)
    {
        if (atoms.empty())
            throw ParameterError("atom structure needs at least one atom");
        std::set<std::string> seen;
        for (const auto& a : atoms)
            if (!seen.insert(a).second)
                throw DomainError("duplicate atom name '" + a + "'");
        if (identity >= atoms.size())
            throw DomainError("identity atom index out of range");
        if (converse.size() != atoms.size())
            throw DomainError("converse map must cover every atom");
        for (auto c : converse)
            if (c >= atoms.size())
                throw DomainError("converse maps to an unknown atom");
    }

    static void check_triple_range(const Triple& t, std::size_t n)
    {
        if (t.a >= n || t.b >= n || t.c >= n)
            throw DomainError("triple references an unknown atom");
    }

    std::vector<std::string> atoms_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> converse_;
    std::vector<Triple> triples_;
    std::map<std::string, std::size_t> index_;
    std::vector<unsigned char> tensor_;
    std::vector<AtomSet> comp_;
};

/// Canonical name of the i-th non-identity atom.
inline std::string diversity_atom_name(std::size_t i) { return "a" + std::to_string(i); }

/**
 * The symmetric structure with k non-identity atoms in which a triangle of
 * diversity atoms is consistent unless it is monochromatic.
 */
inline RaAtomStructure build_maddux(std::size_t k)
{
    if (k == 0)
        throw ParameterError("build_maddux: k must be at least 1");
    std::vector<std::string> atoms{"Id"};
    for (std::size_t i = 0; i < k; ++i)
        atoms.push_back(diversity_atom_name(i));
    std::vector<std::size_t> converse(k + 1);
    for (std::size_t i = 0; i <= k; ++i)
        converse[i] = i;
    std::vector<Triple> triples;
    triples.reserve(k * k * k);
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= k; ++j)
            for (std::size_t l = 1; l <= k; ++l)
                if (!(i == j && j == l))
                    triples.push_back({i, j, l});
    return RaAtomStructure::build(std::move(atoms), 0, std::move(converse), triples);
}

/**
 * Checks converse involution, cycle closure, the identity law and atom-level
 * associativity. Each failing law is reported once, with its lexicographically
 * least witness and the number of failing instances.
 */
inline ConsistencyReport check_ra_axioms(const RaAtomStructure& s)
{
    ConsistencyReport r;
    const std::size_t n = s.size();
    const std::size_t e = s.identity();
    auto nm = [&](std::size_t i) { return s.name(i); };

    if (s.converse(e) != e)
        r.note("converse-fixes-identity", {nm(e)}, "converse(" + nm(e) + ") = " + nm(s.converse(e)));
    for (std::size_t a = 0; a < n; ++a)
        if (s.converse(s.converse(a)) != a)
            r.note("converse-involution", {nm(a)}, "converse(converse(" + nm(a) + ")) != " + nm(a));

    for (const auto& t : s.triples()) {
        if (!s.holds(s.converse(t.a), t.c, t.b))
            r.note("cycle", {nm(t.a), nm(t.b), nm(t.c)},
                   "missing (" + nm(s.converse(t.a)) + "," + nm(t.c) + "," + nm(t.b) + ")");
        if (!s.holds(t.c, s.converse(t.b), t.a))
            r.note("cycle", {nm(t.a), nm(t.b), nm(t.c)},
                   "missing (" + nm(t.c) + "," + nm(s.converse(t.b)) + "," + nm(t.a) + ")");
    }

    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
            if (s.holds(e, b, c) != (b == c))
                r.note("identity-left", {nm(e), nm(b), nm(c)});
            if (s.holds(b, e, c) != (b == c))
                r.note("identity-right", {nm(b), nm(e), nm(c)});
        }

    // (a;b);c versus a;(b;c), atomwise.
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                AtomSet left(n), right(n);
                s.composition(a, b).for_each([&](std::size_t x) { left |= s.composition(x, c); });
                s.composition(b, c).for_each([&](std::size_t y) { right |= s.composition(a, y); });
                if (left == right)
                    continue;
                for (std::size_t d = 0; d < n; ++d)
                    if (left.contains(d) != right.contains(d))
                        r.note("associativity", {nm(a), nm(b), nm(c), nm(d)},
                               left.contains(d) ? "in (a;b);c only" : "in a;(b;c) only");
            }
    return r;
}

inline void require_over(const RaAtomStructure& s, const AtomSet& x)
{
    if (x.universe() != s.size())
        throw DomainError("atom set is not over this structure (" + std::to_string(x.universe())
                          + " vs " + std::to_string(s.size()) + " atoms)");
}

/// Complex-algebra composition: {c : c <= a;b for some a in x, b in y}.
inline AtomSet compose_sets(const RaAtomStructure& s, const AtomSet& x, const AtomSet& y)
{
    require_over(s, x);
    require_over(s, y);
    AtomSet out(s.size());
    x.for_each([&](std::size_t a) { y.for_each([&](std::size_t b) { out |= s.composition(a, b); }); });
    return out;
}

inline AtomSet converse_set(const RaAtomStructure& s, const AtomSet& x)
{
    require_over(s, x);
    AtomSet out(s.size());
    x.for_each([&](std::size_t a) { out.insert(s.converse(a)); });
    return out;
}

} // namespace atomkit
