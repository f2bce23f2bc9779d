#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "atomkit/cylalg.hpp"
#include "atomkit/error.hpp"
#include "atomkit/relalg.hpp"

namespace atomkit {

/// ATOMKIT_CAP when set to a positive integer, otherwise `fallback`.
inline std::uint64_t env_cap(std::uint64_t fallback)
{
    if (const char* env = std::getenv("ATOMKIT_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
    }
    return fallback;
}

/// Default bound on candidate upper-triangle assignments.
inline std::uint64_t default_enumeration_cap() { return env_cap(50'000'000); }

/// n x n matrix of atoms of a fixed relation-algebra atom structure.
class BasicMatrix {
  public:
    explicit BasicMatrix(std::size_t n, std::size_t fill = 0) : n_(n), e_(n * n, fill) {}

    std::size_t dimension() const { return n_; }
    std::size_t operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    std::size_t& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }

    /// Upper-triangle entries in row-major order.
    std::vector<std::size_t> upper() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                out.push_back((*this)(i, j));
        return out;
    }

    friend auto operator<=>(const BasicMatrix&, const BasicMatrix&) = default;

  private:
    std::size_t n_;
    std::vector<std::size_t> e_;
};

inline bool is_basic_matrix(const RaAtomStructure& s, const BasicMatrix& m)
{
    const std::size_t n = m.dimension();
    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i) != s.identity())
            return false;
        for (std::size_t j = 0; j < n; ++j) {
            if (m(j, i) != s.converse(m(i, j)))
                return false;
            for (std::size_t k = 0; k < n; ++k)
                if (!s.holds(m(i, j), m(j, k), m(i, k)))
                    return false;
        }
    }
    return true;
}

inline std::string matrix_name(const RaAtomStructure& s, const BasicMatrix& m)
{
    std::string out = "[";
    bool first = true;
    for (auto a : m.upper()) {
        if (!first)
            out += ",";
        out += s.name(a);
        first = false;
    }
    return out + "]";
}

namespace detail {

inline void check_matrix_cap(const RaAtomStructure& s, std::size_t n, std::uint64_t cap)
{
    double cells = double(n) * double(n - 1) / 2.0;
    double candidates = std::pow(double(s.size()), cells);
    if (candidates > double(cap))
        throw CapError("basic-matrix enumeration over " + std::to_string(s.size()) + " atoms at n="
                       + std::to_string(n) + " has up to " + std::to_string(candidates)
                       + " candidates, above cap " + std::to_string(cap)
                       + " (set ATOMKIT_CAP to raise it)");
}

} // namespace detail

/**
 * All n x n basic matrices: identity diagonal, converse symmetry and every
 * triangle (m_ij, m_jk, m_ik) consistent. Output is ordered lexicographically
 * by the upper triangle.
 */
inline std::vector<BasicMatrix> enumerate_basic_matrices(const RaAtomStructure& s, std::size_t n,
                                                         std::uint64_t cap = default_enumeration_cap())
{
    if (n < 2)
        throw ParameterError("basic matrices need dimension n >= 2");
    detail::check_matrix_cap(s, n, cap);

    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            cells.emplace_back(i, j);

    BasicMatrix m(n, s.identity());
    std::vector<char> known(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        known[i * n + i] = 1;

    auto coherent_at = [&](std::size_t a, std::size_t b) {
        // every fully known triangle through the pair {a, b}
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t r = 0; r < n; ++r) {
                    bool touches = (p == a || q == a || r == a) && (p == b || q == b || r == b);
                    if (!touches)
                        continue;
                    if (!known[p * n + q] || !known[q * n + r] || !known[p * n + r])
                        continue;
                    if (!s.holds(m(p, q), m(q, r), m(p, r)))
                        return false;
                }
        return true;
    };

    std::vector<BasicMatrix> out;
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == cells.size()) {
            out.push_back(m);
            return;
        }
        auto [i, j] = cells[idx];
        for (std::size_t a = 0; a < s.size(); ++a) {
            m(i, j) = a;
            m(j, i) = s.converse(a);
            known[i * n + j] = known[j * n + i] = 1;
            if (coherent_at(i, j))
                self(self, idx + 1);
            known[i * n + j] = known[j * n + i] = 0;
        }
        m(i, j) = m(j, i) = s.identity();
    };
    rec(rec, 0);
    return out;
}

/**
 * Cylindric atom structure whose atoms are the basic matrices: m T_i m' iff
 * the matrices agree on every entry not involving i, and D_ij collects the
 * matrices whose (i, j) entry is the identity.
 */
inline CaAtomStructure ca_from_basic_matrices(const RaAtomStructure& s, std::size_t n,
                                              std::uint64_t cap = default_enumeration_cap())
{
    auto mats = enumerate_basic_matrices(s, n, cap);
    const std::size_t count = mats.size();
    std::vector<std::string> names;
    names.reserve(count);
    for (const auto& m : mats)
        names.push_back(matrix_name(s, m));

    std::vector<CaAtomStructure::Adjacency> rel(n, CaAtomStructure::Adjacency(count));
    for (std::size_t i = 0; i < n; ++i) {
        std::map<std::vector<std::size_t>, std::vector<std::size_t>> classes;
        for (std::size_t x = 0; x < count; ++x) {
            std::vector<std::size_t> key;
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (j != i && k != i)
                        key.push_back(mats[x](j, k));
            classes[key].push_back(x);
        }
        for (const auto& [key, members] : classes)
            for (auto x : members)
                rel[i][x] = members;
    }

    std::vector<AtomSet> diag(n * n, AtomSet(count));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t x = 0; x < count; ++x)
                if (mats[x](i, j) == s.identity())
                    diag[i * n + j].insert(x);

    return CaAtomStructure(n, std::move(names), std::move(rel), std::move(diag));
}

} // namespace atomkit
