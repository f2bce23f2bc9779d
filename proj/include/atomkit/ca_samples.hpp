#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "atomkit/cylalg.hpp"
#include "atomkit/error.hpp"

namespace atomkit {

/**
 * Atoms are all n-tuples over {0..base-1}; x T_i y iff x and y agree off
 * coordinate i; D_ij holds the tuples with equal i-th and j-th entries.
 * Every cylindrifier demand on it has a witness.
 */
inline CaAtomStructure full_tuple_structure(std::size_t n, std::size_t base)
{
    if (n == 0 || base == 0)
        throw ParameterError("full tuple structure needs n >= 1 and base >= 1");
    std::size_t count = 1;
    for (std::size_t i = 0; i < n; ++i)
        count *= base;
    auto coords = [&](std::size_t x) {
        std::vector<std::size_t> c(n);
        for (std::size_t j = n; j-- > 0;) {
            c[j] = x % base;
            x /= base;
        }
        return c;
    };
    std::vector<std::string> names;
    for (std::size_t x = 0; x < count; ++x) {
        std::string s = "(";
        auto c = coords(x);
        for (std::size_t j = 0; j < n; ++j)
            s += (j ? "," : "") + std::to_string(c[j]);
        names.push_back(s + ")");
    }
    std::vector<CaAtomStructure::Adjacency> rel(n, CaAtomStructure::Adjacency(count));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t x = 0; x < count; ++x)
            for (std::size_t y = 0; y < count; ++y) {
                auto cx = coords(x), cy = coords(y);
                cx[i] = cy[i] = 0;
                if (cx == cy)
                    rel[i][x].push_back(y);
            }
    std::vector<AtomSet> diag;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            AtomSet d(count);
            for (std::size_t x = 0; x < count; ++x)
                if (auto c = coords(x); c[i] == c[j])
                    d.insert(x);
            diag.push_back(d);
        }
    return CaAtomStructure(n, std::move(names), std::move(rel), std::move(diag));
}

/**
 * Dimension 2, atoms d, c, x with D_01 = {d}, T_0 classes {d,c} and {x},
 * T_1 the full relation. No network can carry x, and since T_1 reaches x from
 * any label ForAll refutes every opening with one demand.
 */
inline CaAtomStructure dead_end_structure()
{
    CaAtomStructure::Adjacency t0{{0, 1}, {0, 1}, {2}};
    CaAtomStructure::Adjacency t1{{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
    AtomSet all = AtomSet::full(3);
    AtomSet d(3, {0});
    return CaAtomStructure(2, {"d", "c", "x"}, {t0, t1}, {all, d, d, all});
}

} // namespace atomkit
