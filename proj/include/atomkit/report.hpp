#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace atomkit {

struct Violation {
    std::string law;
    std::vector<std::string> atoms;
    std::string detail;
    /// Total number of instances of this law that failed; `atoms` is the least one.
    std::size_t occurrences = 1;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of a structural check. Passes exactly when no violation was recorded.
class ConsistencyReport {
  public:
    bool pass() const { return violations_.empty(); }
    const std::vector<Violation>& violations() const { return violations_; }

    void add(Violation v) { violations_.push_back(std::move(v)); }

    /// Records the first witness for `law`, or bumps its occurrence count.
    void note(const std::string& law, std::vector<std::string> atoms, std::string detail = {})
    {
        for (auto& v : violations_) {
            if (v.law == law) {
                ++v.occurrences;
                return;
            }
        }
        violations_.push_back({law, std::move(atoms), std::move(detail), 1});
    }

    bool has(const std::string& law) const
    {
        for (const auto& v : violations_)
            if (v.law == law)
                return true;
        return false;
    }

    const Violation* find(const std::string& law) const
    {
        for (const auto& v : violations_)
            if (v.law == law)
                return &v;
        return nullptr;
    }

    void merge(const ConsistencyReport& other, const std::string& prefix = {})
    {
        for (auto v : other.violations_) {
            v.law = prefix + v.law;
            violations_.push_back(std::move(v));
        }
    }

  private:
    std::vector<Violation> violations_;
};

} // namespace atomkit
