#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "atomkit/error.hpp"

namespace atomkit {

using Rational = boost::multiprecision::cpp_rational;

/**
 * Finitely supported sequence s : alpha -> Q. Only non-zero coordinates are
 * stored, so two atoms compare equal exactly when they agree everywhere.
 */
class VecAtom {
  public:
    explicit VecAtom(std::size_t alpha = 2) : alpha_(alpha)
    {
        if (alpha_ < 2)
            throw ParameterError("dimension bound alpha must be at least 2");
    }

    VecAtom(std::size_t alpha, const std::map<std::size_t, Rational>& entries) : VecAtom(alpha)
    {
        for (const auto& [i, v] : entries)
            set(i, v);
    }

    /// Dense prefix constructor: coordinates 0..values.size()-1.
    VecAtom(std::size_t alpha, const std::vector<Rational>& values) : VecAtom(alpha)
    {
        for (std::size_t i = 0; i < values.size(); ++i)
            set(i, values[i]);
    }

    std::size_t alpha() const { return alpha_; }
    const std::map<std::size_t, Rational>& support() const { return entries_; }

    Rational operator[](std::size_t i) const
    {
        auto it = entries_.find(i);
        return it == entries_.end() ? Rational(0) : it->second;
    }

    void set(std::size_t i, const Rational& v)
    {
        check(i);
        if (v == 0)
            entries_.erase(i);
        else
            entries_[i] = v;
    }

    void check(std::size_t i) const
    {
        if (i >= alpha_)
            throw IndexError("coordinate " + std::to_string(i) + " outside dimension "
                             + std::to_string(alpha_));
    }

    friend bool operator==(const VecAtom&, const VecAtom&) = default;

  private:
    std::size_t alpha_;
    std::map<std::size_t, Rational> entries_;
};

namespace detail {
inline void same_alpha(const VecAtom& s, const VecAtom& t)
{
    if (s.alpha() != t.alpha())
        throw DomainError("vector atoms have different dimension bounds");
}
} // namespace detail

/// s and t agree at every coordinate other than i.
inline bool equiv_i(const VecAtom& s, const VecAtom& t, std::size_t i)
{
    detail::same_alpha(s, t);
    s.check(i);
    for (const auto& [j, v] : s.support())
        if (j != i && t[j] != v)
            return false;
    for (const auto& [j, v] : t.support())
        if (j != i && s[j] != v)
            return false;
    return true;
}

/// s composed with the transposition [i, j].
inline VecAtom swap_ij(const VecAtom& s, std::size_t i, std::size_t j)
{
    s.check(i);
    s.check(j);
    VecAtom out = s;
    Rational si = s[i], sj = s[j];
    out.set(i, sj);
    out.set(j, si);
    return out;
}

/// s_0 + 1 equals the (finite) sum of the remaining coordinates.
inline bool in_y(const VecAtom& s)
{
    Rational rest = 0;
    for (const auto& [i, v] : s.support())
        if (i > 0)
            rest += v;
    return s[0] + 1 == rest;
}

inline std::string rational_text(const Rational& r)
{
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& text)
{
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos)
            return Rational(boost::multiprecision::cpp_int(text));
        boost::multiprecision::cpp_int num(text.substr(0, slash)), den(text.substr(slash + 1));
        if (den == 0)
            throw ParameterError("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const ParameterError&) {
        throw;
    } catch (const std::exception&) {
        throw ParameterError("malformed rational '" + text + "'");
    }
}

} // namespace atomkit
