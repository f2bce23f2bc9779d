#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atomkit/atom_set.hpp"
#include "atomkit/error.hpp"
#include "atomkit/report.hpp"

namespace atomkit {

/**
 * Finite cylindric atom structure of dimension n.
 *
 * `T_i` is held as sorted adjacency lists (related(i, x) lists every y with
 * x T_i y), the diagonal sets as atom sets indexed by (i, j).
 */
class CaAtomStructure {
  public:
    using Adjacency = std::vector<std::vector<std::size_t>>;

    CaAtomStructure() = default;

    CaAtomStructure(std::size_t dimension, std::vector<std::string> atoms,
                    std::vector<Adjacency> relations, std::vector<AtomSet> diagonals)
        : dim_(dimension), atoms_(std::move(atoms)), rel_(std::move(relations)),
          diag_(std::move(diagonals))
    {
        if (dim_ == 0)
            throw ParameterError("cylindric atom structure needs dimension >= 1");
        if (rel_.size() != dim_)
            throw DomainError("expected one relation per index");
        if (diag_.size() != dim_ * dim_)
            throw DomainError("expected n*n diagonal sets");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (!seen.insert(atoms_[i]).second)
                throw DomainError("duplicate atom name '" + atoms_[i] + "'");
            index_.emplace(atoms_[i], i);
        }
        for (auto& adj : rel_) {
            if (adj.size() != atoms_.size())
                throw DomainError("relation rows must cover every atom");
            for (auto& row : adj) {
                std::sort(row.begin(), row.end());
                row.erase(std::unique(row.begin(), row.end()), row.end());
                if (!row.empty() && row.back() >= atoms_.size())
                    throw DomainError("relation references an unknown atom");
            }
        }
        for (const auto& d : diag_)
            if (d.universe() != atoms_.size())
                throw DomainError("diagonal set is not over the atom list");
    }

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return atoms_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::string& name(std::size_t i) const { return atoms_.at(i); }

    const std::vector<std::size_t>& related(std::size_t i, std::size_t x) const
    {
        check_index(i);
        return rel_[i][x];
    }

    bool related(std::size_t i, std::size_t x, std::size_t y) const
    {
        const auto& row = related(i, x);
        return std::binary_search(row.begin(), row.end(), y);
    }

    const AtomSet& diagonal_set(std::size_t i, std::size_t j) const
    {
        check_index(i);
        check_index(j);
        return diag_[i * dim_ + j];
    }

    const std::vector<Adjacency>& relations() const { return rel_; }

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

    void check_index(std::size_t i) const
    {
        if (i >= dim_)
            throw IndexError("index " + std::to_string(i) + " out of range for dimension "
                             + std::to_string(dim_));
    }

    friend bool operator==(const CaAtomStructure& x, const CaAtomStructure& y)
    {
        return x.dim_ == y.dim_ && x.atoms_ == y.atoms_ && x.rel_ == y.rel_ && x.diag_ == y.diag_;
    }

  private:
    std::size_t dim_ = 0;
    std::vector<std::string> atoms_;
    std::vector<Adjacency> rel_;
    std::vector<AtomSet> diag_;
    std::map<std::string, std::size_t> index_;
};

/**
 * Checks that every T_i is an equivalence relation, that T_i and T_j commute
 * as relations, and that D_ii is the whole atom set.
 */
inline ConsistencyReport check_ca_atomstructure(const CaAtomStructure& s)
{
    ConsistencyReport r;
    const std::size_t n = s.dimension();
    const std::size_t m = s.size();
    auto nm = [&](std::size_t x) { return s.name(x); };

    for (std::size_t i = 0; i < n; ++i) {
        const std::string t = "T" + std::to_string(i);
        for (std::size_t x = 0; x < m; ++x) {
            if (!s.related(i, x, x))
                r.note(t + "-reflexive", {nm(x)});
            for (auto y : s.related(i, x)) {
                if (!s.related(i, y, x))
                    r.note(t + "-symmetric", {nm(x), nm(y)});
                for (auto z : s.related(i, y))
                    if (!s.related(i, x, z))
                        r.note(t + "-transitive", {nm(x), nm(y), nm(z)});
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::string law = "T" + std::to_string(i) + "T" + std::to_string(j) + "-commute";
            for (std::size_t x = 0; x < m; ++x) {
                AtomSet ij(m), ji(m);
                for (auto y : s.related(i, x))
                    for (auto z : s.related(j, y))
                        ij.insert(z);
                for (auto y : s.related(j, x))
                    for (auto z : s.related(i, y))
                        ji.insert(z);
                if (ij == ji)
                    continue;
                for (std::size_t z = 0; z < m; ++z)
                    if (ij.contains(z) != ji.contains(z))
                        r.note(law, {nm(x), nm(z)});
            }
        }

    for (std::size_t i = 0; i < n; ++i) {
        const auto& d = s.diagonal_set(i, i);
        for (std::size_t x = 0; x < m; ++x)
            if (!d.contains(x))
                r.note("D" + std::to_string(i) + std::to_string(i) + "-full", {nm(x)});
    }
    return r;
}

/// c_i X: every atom T_i-related to a member of X.
inline AtomSet cylindrify(const CaAtomStructure& s, std::size_t i, const AtomSet& x)
{
    s.check_index(i);
    if (x.universe() != s.size())
        throw DomainError("atom set is not over this structure");
    AtomSet out(s.size());
    x.for_each([&](std::size_t a) {
        for (auto b : s.related(i, a))
            out.insert(b);
    });
    return out;
}

inline AtomSet diagonal(const CaAtomStructure& s, std::size_t i, std::size_t j)
{
    return s.diagonal_set(i, j);
}

} // namespace atomkit
