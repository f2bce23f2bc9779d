#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "atomkit/error.hpp"

namespace atomkit {

/// A named block of the carrier. Infinite blocks are countable: block:0, block:1, ...
struct CarrierBlock {
    std::string name;
    bool infinite = false;
    std::uint64_t size = 0; ///< atom count of a finite block; unused when infinite

    friend bool operator==(const CarrierBlock&, const CarrierBlock&) = default;
};

using FinCofCarrier = std::vector<CarrierBlock>;

/// One block's share of a set. In a finite block only mode `finite` occurs.
struct BlockPart {
    enum class Mode { finite, cofinite };
    Mode mode = Mode::finite;
    /// Members when finite, exceptions (non-members) when cofinite.
    std::set<std::uint64_t> listed;

    friend bool operator==(const BlockPart&, const BlockPart&) = default;
};

struct FcAtom {
    std::size_t block = 0;
    std::uint64_t index = 0;
    friend auto operator<=>(const FcAtom&, const FcAtom&) = default;
};

/**
 * Element of the term representation over a carrier with countably infinite
 * blocks: each infinite block contributes a finite or a cofinite subset, each
 * finite block an explicit subset.
 */
class FinCofSet {
  public:
    FinCofSet() = default;

    FinCofSet(FinCofCarrier carrier, std::vector<BlockPart> parts)
        : carrier_(std::move(carrier)), parts_(std::move(parts))
    {
        if (parts_.size() != carrier_.size())
            throw DomainError("fincof set needs one part per carrier block");
        std::set<std::string> names;
        for (std::size_t b = 0; b < carrier_.size(); ++b) {
            const auto& blk = carrier_[b];
            if (!names.insert(blk.name).second)
                throw DomainError("duplicate carrier block '" + blk.name + "'");
            if (!blk.infinite) {
                if (parts_[b].mode != BlockPart::Mode::finite)
                    throw DomainError("finite block '" + blk.name + "' cannot be cofinite");
                if (!parts_[b].listed.empty() && *parts_[b].listed.rbegin() >= blk.size)
                    throw DomainError("member outside finite block '" + blk.name + "'");
            }
        }
    }

    static FinCofSet bottom(const FinCofCarrier& c)
    {
        return FinCofSet(c, std::vector<BlockPart>(c.size()));
    }

    static FinCofSet top(const FinCofCarrier& c) { return bottom(c).complement(); }

    const FinCofCarrier& carrier() const { return carrier_; }
    const std::vector<BlockPart>& parts() const { return parts_; }

    bool contains(std::size_t block, std::uint64_t index) const
    {
        const auto& p = parts_.at(block);
        if (!carrier_[block].infinite && index >= carrier_[block].size)
            return false;
        bool listed = p.listed.count(index) != 0;
        return p.mode == BlockPart::Mode::finite ? listed : !listed;
    }

    FinCofSet complement() const
    {
        FinCofSet out = *this;
        for (std::size_t b = 0; b < parts_.size(); ++b) {
            auto& p = out.parts_[b];
            if (carrier_[b].infinite) {
                p.mode = p.mode == BlockPart::Mode::finite ? BlockPart::Mode::cofinite
                                                           : BlockPart::Mode::finite;
            } else {
                std::set<std::uint64_t> rest;
                for (std::uint64_t i = 0; i < carrier_[b].size; ++i)
                    if (!parts_[b].listed.count(i))
                        rest.insert(i);
                p.listed = std::move(rest);
            }
        }
        return out;
    }

    /// Largest index mentioned by any infinite block's listed set.
    std::optional<std::uint64_t> max_listed_index() const
    {
        std::optional<std::uint64_t> best;
        for (std::size_t b = 0; b < parts_.size(); ++b)
            if (carrier_[b].infinite && !parts_[b].listed.empty())
                best = std::max(best.value_or(0), *parts_[b].listed.rbegin());
        return best;
    }

    friend bool operator==(const FinCofSet&, const FinCofSet&) = default;

  private:
    FinCofCarrier carrier_;
    std::vector<BlockPart> parts_;
};

namespace detail {

inline void same_carrier(const FinCofSet& x, const FinCofSet& y)
{
    if (x.carrier() != y.carrier())
        throw DomainError("fincof operands have different carriers");
}

inline std::set<std::uint64_t> set_union(const std::set<std::uint64_t>& a,
                                         const std::set<std::uint64_t>& b)
{
    std::set<std::uint64_t> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline std::set<std::uint64_t> set_inter(const std::set<std::uint64_t>& a,
                                         const std::set<std::uint64_t>& b)
{
    std::set<std::uint64_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline std::set<std::uint64_t> set_minus(const std::set<std::uint64_t>& a,
                                         const std::set<std::uint64_t>& b)
{
    std::set<std::uint64_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

} // namespace detail

inline FinCofSet fc_union(const FinCofSet& x, const FinCofSet& y)
{
    using M = BlockPart::Mode;
    detail::same_carrier(x, y);
    std::vector<BlockPart> parts(x.parts().size());
    for (std::size_t b = 0; b < parts.size(); ++b) {
        const auto& p = x.parts()[b];
        const auto& q = y.parts()[b];
        if (p.mode == M::finite && q.mode == M::finite)
            parts[b] = {M::finite, detail::set_union(p.listed, q.listed)};
        else if (p.mode == M::cofinite && q.mode == M::cofinite)
            parts[b] = {M::cofinite, detail::set_inter(p.listed, q.listed)};
        else if (p.mode == M::cofinite)
            parts[b] = {M::cofinite, detail::set_minus(p.listed, q.listed)};
        else
            parts[b] = {M::cofinite, detail::set_minus(q.listed, p.listed)};
    }
    return FinCofSet(x.carrier(), std::move(parts));
}

inline FinCofSet fc_intersect(const FinCofSet& x, const FinCofSet& y)
{
    using M = BlockPart::Mode;
    detail::same_carrier(x, y);
    std::vector<BlockPart> parts(x.parts().size());
    for (std::size_t b = 0; b < parts.size(); ++b) {
        const auto& p = x.parts()[b];
        const auto& q = y.parts()[b];
        if (p.mode == M::finite && q.mode == M::finite)
            parts[b] = {M::finite, detail::set_inter(p.listed, q.listed)};
        else if (p.mode == M::cofinite && q.mode == M::cofinite)
            parts[b] = {M::cofinite, detail::set_union(p.listed, q.listed)};
        else if (p.mode == M::finite)
            parts[b] = {M::finite, detail::set_minus(p.listed, q.listed)};
        else
            parts[b] = {M::finite, detail::set_minus(q.listed, p.listed)};
    }
    return FinCofSet(x.carrier(), std::move(parts));
}

inline FinCofSet fc_complement(const FinCofSet& x) { return x.complement(); }

/**
 * Explicit members within a window: finite blocks in full, infinite blocks
 * restricted to indices below `window`. The window must exceed every listed
 * index, otherwise the result would not determine the set.
 */
inline std::vector<FcAtom> fc_materialize(const FinCofSet& x, std::uint64_t window)
{
    if (window == 0)
        throw ParameterError("fc_materialize: window must be positive");
    if (auto mx = x.max_listed_index(); mx && window <= *mx)
        throw ParameterError("fc_materialize: window " + std::to_string(window)
                             + " does not cover listed index " + std::to_string(*mx));
    std::vector<FcAtom> out;
    for (std::size_t b = 0; b < x.carrier().size(); ++b) {
        const auto& blk = x.carrier()[b];
        std::uint64_t limit = blk.infinite ? window : blk.size;
        for (std::uint64_t i = 0; i < limit; ++i)
            if (x.contains(b, i))
                out.push_back({b, i});
    }
    return out;
}

inline std::string fc_atom_name(const FinCofCarrier& c, const FcAtom& a)
{
    return c.at(a.block).name + ":" + std::to_string(a.index);
}

/// Subset of the naturals given by a finite prefix followed by a repeating pattern.
struct EventuallyPeriodic {
    std::vector<bool> prefix;
    std::vector<bool> cycle;

    bool contains(std::uint64_t i) const
    {
        if (i < prefix.size())
            return prefix[i];
        return cycle[(i - prefix.size()) % cycle.size()];
    }
};

struct TermMembership {
    enum class Status { finite, cofinite, not_representable };
    Status status = Status::not_representable;
    std::optional<BlockPart> part;
};

/**
 * Decides whether an eventually periodic subset of an infinite block is an
 * element of the finite/cofinite term representation. A pattern that is
 * neither all-in nor all-out (such as the even indices) is a legitimate
 * subset of the block that the representation cannot express.
 */
inline TermMembership fc_membership(const FinCofCarrier& carrier, const std::string& block,
                                    const EventuallyPeriodic& subset)
{
    auto it = std::find_if(carrier.begin(), carrier.end(),
                           [&](const CarrierBlock& b) { return b.name == block; });
    if (it == carrier.end())
        throw DomainError("unknown block '" + block + "'");
    if (!it->infinite)
        throw DomainError("block '" + block + "' is finite; every subset is representable");
    if (subset.cycle.empty())
        throw ParameterError("periodic pattern must be non-empty");
    bool all_in = std::all_of(subset.cycle.begin(), subset.cycle.end(), [](bool v) { return v; });
    bool all_out = std::none_of(subset.cycle.begin(), subset.cycle.end(), [](bool v) { return v; });
    TermMembership m;
    if (!all_in && !all_out)
        return m;
    BlockPart part;
    part.mode = all_in ? BlockPart::Mode::cofinite : BlockPart::Mode::finite;
    for (std::uint64_t i = 0; i < subset.prefix.size(); ++i)
        if (subset.prefix[i] != all_in)
            part.listed.insert(i);
    m.status = all_in ? TermMembership::Status::cofinite : TermMembership::Status::finite;
    m.part = std::move(part);
    return m;
}

} // namespace atomkit
