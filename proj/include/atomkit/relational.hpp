#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "atomkit/cylalg.hpp"
#include "atomkit/error.hpp"
#include "atomkit/partition.hpp"
#include "atomkit/relalg.hpp"

namespace atomkit {

/// One relation of arity 1..3 stored as a dense truth table.
struct RelationTable {
    std::string name;
    std::size_t arity = 1;
    std::vector<unsigned char> table;
};

/**
 * Atom-level relational structure: the common reduct on which EF games are
 * played. Built from partition, cylindric or relation-algebra atom structures.
 */
class RelationalStructure {
  public:
    RelationalStructure(std::vector<std::string> atoms, std::vector<RelationTable> relations)
        : atoms_(std::move(atoms)), rel_(std::move(relations))
    {
        for (const auto& r : rel_) {
            if (r.arity < 1 || r.arity > 3)
                throw DomainError("relation '" + r.name + "' has unsupported arity");
            std::size_t expect = 1;
            for (std::size_t i = 0; i < r.arity; ++i)
                expect *= atoms_.size();
            if (r.table.size() != expect)
                throw DomainError("relation '" + r.name + "' has a malformed table");
        }
    }

    std::size_t size() const { return atoms_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::vector<RelationTable>& relations() const { return rel_; }

    std::vector<std::pair<std::string, std::size_t>> signature() const
    {
        std::vector<std::pair<std::string, std::size_t>> sig;
        for (const auto& r : rel_)
            sig.emplace_back(r.name, r.arity);
        return sig;
    }

    bool holds(std::size_t rel, const std::size_t* args) const
    {
        const auto& r = rel_[rel];
        std::size_t idx = 0;
        for (std::size_t i = 0; i < r.arity; ++i)
            idx = idx * size() + args[i];
        return r.table[idx] != 0;
    }

    std::size_t index_of(const std::string& atom) const
    {
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            if (atoms_[i] == atom)
                return i;
        throw DomainError("unknown atom '" + atom + "'");
    }

  private:
    std::vector<std::string> atoms_;
    std::vector<RelationTable> rel_;
};

/// One unary predicate "in:u" per unit.
inline RelationalStructure relational_view(const PartitionStructure& p)
{
    std::vector<std::string> atoms;
    for (std::size_t a = 0; a < p.atom_count(); ++a)
        atoms.push_back(p.atom_name(a));
    std::vector<RelationTable> rels;
    for (std::size_t u = 0; u < p.units().size(); ++u) {
        RelationTable t{"in:" + p.units()[u], 1, std::vector<unsigned char>(atoms.size(), 0)};
        for (std::size_t i = 0; i < p.sizes()[u]; ++i)
            t.table[p.atom(u, i)] = 1;
        rels.push_back(std::move(t));
    }
    return RelationalStructure(std::move(atoms), std::move(rels));
}

/// Binary T_i for each index and unary D_ij for each index pair.
inline RelationalStructure relational_view(const CaAtomStructure& s)
{
    const std::size_t m = s.size();
    std::vector<RelationTable> rels;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        RelationTable t{"T" + std::to_string(i), 2, std::vector<unsigned char>(m * m, 0)};
        for (std::size_t x = 0; x < m; ++x)
            for (auto y : s.related(i, x))
                t.table[x * m + y] = 1;
        rels.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < s.dimension(); ++i)
        for (std::size_t j = 0; j < s.dimension(); ++j) {
            RelationTable t{"D" + std::to_string(i) + "," + std::to_string(j), 1,
                            std::vector<unsigned char>(m, 0)};
            s.diagonal_set(i, j).for_each([&](std::size_t x) { t.table[x] = 1; });
            rels.push_back(std::move(t));
        }
    return RelationalStructure(s.atoms(), std::move(rels));
}

/// Unary identity, binary converse graph and the ternary triple relation.
inline RelationalStructure relational_view(const RaAtomStructure& s)
{
    const std::size_t m = s.size();
    RelationTable id{"Id", 1, std::vector<unsigned char>(m, 0)};
    id.table[s.identity()] = 1;
    RelationTable conv{"conv", 2, std::vector<unsigned char>(m * m, 0)};
    for (std::size_t x = 0; x < m; ++x)
        conv.table[x * m + s.converse(x)] = 1;
    RelationTable tri{"R", 3, std::vector<unsigned char>(m * m * m, 0)};
    for (const auto& t : s.triples())
        tri.table[(t.a * m + t.b) * m + t.c] = 1;
    return RelationalStructure(s.atoms(), {std::move(id), std::move(conv), std::move(tri)});
}

} // namespace atomkit
