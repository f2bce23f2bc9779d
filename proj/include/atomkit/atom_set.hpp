#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "atomkit/error.hpp"

namespace atomkit {

/// A subset of a fixed finite universe {0, ..., universe-1} of atom indices.
class AtomSet {
  public:
    AtomSet() = default;
    explicit AtomSet(std::size_t universe) : bits_(universe) {}
    AtomSet(std::size_t universe, std::initializer_list<std::size_t> members)
        : bits_(universe)
    {
        for (auto m : members)
            insert(m);
    }

    static AtomSet full(std::size_t universe)
    {
        AtomSet s(universe);
        s.bits_.set();
        return s;
    }

    std::size_t universe() const { return bits_.size(); }
    std::size_t count() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }

    bool contains(std::size_t i) const { return i < bits_.size() && bits_.test(i); }

    void insert(std::size_t i)
    {
        if (i >= bits_.size())
            throw DomainError("atom index " + std::to_string(i) + " outside universe of size "
                              + std::to_string(bits_.size()));
        bits_.set(i);
    }

    void erase(std::size_t i)
    {
        if (i < bits_.size())
            bits_.reset(i);
    }

    bool is_subset_of(const AtomSet& o) const
    {
        same_universe(o);
        return bits_.is_subset_of(o.bits_);
    }

    bool intersects(const AtomSet& o) const
    {
        same_universe(o);
        return bits_.intersects(o.bits_);
    }

    AtomSet& operator|=(const AtomSet& o)
    {
        same_universe(o);
        bits_ |= o.bits_;
        return *this;
    }

    AtomSet& operator&=(const AtomSet& o)
    {
        same_universe(o);
        bits_ &= o.bits_;
        return *this;
    }

    AtomSet& operator-=(const AtomSet& o)
    {
        same_universe(o);
        bits_ -= o.bits_;
        return *this;
    }

    friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
    friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
    friend AtomSet operator-(AtomSet a, const AtomSet& b) { return a -= b; }

    AtomSet complement() const
    {
        AtomSet s = *this;
        s.bits_.flip();
        return s;
    }

    friend bool operator==(const AtomSet& a, const AtomSet& b) { return a.bits_ == b.bits_; }

    /// Members in increasing order.
    std::vector<std::size_t> members() const
    {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i))
            out.push_back(i);
        return out;
    }

    template <typename F>
    void for_each(F&& f) const
    {
        for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i))
            f(i);
    }

  private:
    using Bits = boost::dynamic_bitset<>;

    void same_universe(const AtomSet& o) const
    {
        if (o.universe() != universe())
            throw DomainError("atom sets over different universes (" + std::to_string(universe())
                              + " vs " + std::to_string(o.universe()) + ")");
    }

    Bits bits_;
};

} // namespace atomkit
