#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atomkit/error.hpp"

namespace atomkit {

/**
 * Finite surrogate for a unit partitioned into blocks 1_u. Atoms are addressed
 * as unit:index; `large` marks the blocks whose size may differ between the
 * two members of a pair.
 */
class PartitionStructure {
  public:
    PartitionStructure() = default;

    PartitionStructure(std::vector<std::string> units, std::vector<std::size_t> sizes,
                       std::set<std::string> large)
        : units_(std::move(units)), sizes_(std::move(sizes)), large_(std::move(large))
    {
        if (units_.size() != sizes_.size())
            throw ParameterError("one block size per unit required");
        std::set<std::string> seen;
        for (std::size_t u = 0; u < units_.size(); ++u) {
            if (!seen.insert(units_[u]).second)
                throw ParameterError("duplicate unit '" + units_[u] + "'");
            if (sizes_[u] == 0)
                throw ParameterError("block '" + units_[u] + "' must have at least one atom");
        }
        for (const auto& l : large_)
            if (!seen.count(l))
                throw ParameterError("large unit '" + l + "' is not a unit");
        offsets_.push_back(0);
        for (auto s : sizes_)
            offsets_.push_back(offsets_.back() + s);
    }

    const std::vector<std::string>& units() const { return units_; }
    const std::vector<std::size_t>& sizes() const { return sizes_; }
    const std::set<std::string>& large() const { return large_; }
    bool is_large(std::size_t unit) const { return large_.count(units_.at(unit)) != 0; }

    std::size_t atom_count() const { return offsets_.back(); }
    std::size_t atom(std::size_t unit, std::size_t index) const { return offsets_.at(unit) + index; }

    std::size_t unit_of(std::size_t atom) const
    {
        std::size_t u = 0;
        while (offsets_[u + 1] <= atom)
            ++u;
        return u;
    }

    std::size_t index_in_unit(std::size_t atom) const { return atom - offsets_[unit_of(atom)]; }

    std::string atom_name(std::size_t atom) const
    {
        return units_[unit_of(atom)] + ":" + std::to_string(index_in_unit(atom));
    }

    std::size_t unit_index(const std::string& unit) const
    {
        for (std::size_t u = 0; u < units_.size(); ++u)
            if (units_[u] == unit)
                return u;
        throw DomainError("unknown unit '" + unit + "'");
    }

    std::size_t atom_index(const std::string& name) const
    {
        auto colon = name.rfind(':');
        if (colon == std::string::npos)
            throw DomainError("atom '" + name + "' is not of the form unit:index");
        std::size_t u = unit_index(name.substr(0, colon));
        std::size_t idx = 0;
        try {
            idx = std::stoul(name.substr(colon + 1));
        } catch (const std::exception&) {
            throw DomainError("atom '" + name + "' has a malformed index");
        }
        if (idx >= sizes_[u])
            throw DomainError("atom '" + name + "' is outside its block");
        return atom(u, idx);
    }

    friend bool operator==(const PartitionStructure& a, const PartitionStructure& b)
    {
        return a.units_ == b.units_ && a.sizes_ == b.sizes_ && a.large_ == b.large_;
    }

  private:
    std::vector<std::string> units_;
    std::vector<std::size_t> sizes_;
    std::set<std::string> large_;
    std::vector<std::size_t> offsets_;
};

using UnitSizes = std::vector<std::pair<std::string, std::size_t>>;

/**
 * Two partition structures that agree outside `large` and where the first has
 * at least as many atoms as the second in every large block. Unit order
 * follows `sizes_a`.
 */
inline std::pair<PartitionStructure, PartitionStructure>
build_partition_pair(const UnitSizes& sizes_a, const UnitSizes& sizes_b, const std::set<std::string>& large)
{
    if (sizes_a.size() != sizes_b.size())
        throw ParameterError("partition pair needs the same units on both sides");
    std::vector<std::string> units;
    std::vector<std::size_t> sa, sb;
    for (const auto& [u, s] : sizes_a) {
        auto it = std::find_if(sizes_b.begin(), sizes_b.end(), [&](const auto& p) { return p.first == u; });
        if (it == sizes_b.end())
            throw ParameterError("unit '" + u + "' missing from the second structure");
        bool is_large = large.count(u) != 0;
        if (!is_large && it->second != s)
            throw ParameterError("unit '" + u + "' is not large but sizes differ (" + std::to_string(s)
                                 + " vs " + std::to_string(it->second) + ")");
        if (is_large && s < it->second)
            throw ParameterError("large unit '" + u + "' is smaller in the first structure");
        units.push_back(u);
        sa.push_back(s);
        sb.push_back(it->second);
    }
    return {PartitionStructure(units, sa, large), PartitionStructure(units, sb, large)};
}

} // namespace atomkit
