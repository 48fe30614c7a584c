#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace tmdual {

/// Slot address inside a biderivation state: (column, tau-degree).
struct Slot {
    std::size_t col;
    int deg;
    bool operator==(const Slot& o) const { return col == o.col && deg == o.deg; }
    bool operator<(const Slot& o) const {
        return col != o.col ? col < o.col : deg < o.deg;
    }
};

/// For each column, the set of tau-degrees allowed in canonical form.
/// Degrees outside the set are offending and must be eliminated.
class CanonicalShape {
  public:
    explicit CanonicalShape(std::size_t width) : allowed_(width) {}

    std::size_t width() const { return allowed_.size(); }

    void allow(std::size_t col, int deg) { allowed_[col].insert(deg); }

    bool contains(std::size_t col, int deg) const {
        return allowed_[col].count(deg) != 0;
    }

    const std::set<int>& column(std::size_t col) const { return allowed_[col]; }

    /// Slots in column-major order (column ascending, degree ascending).
    std::vector<Slot> slots() const {
        std::vector<Slot> out;
        for (std::size_t j = 0; j < allowed_.size(); ++j)
            for (int d : allowed_[j]) out.push_back({j, d});
        return out;
    }

    std::size_t slot_count() const {
        std::size_t n = 0;
        for (const auto& s : allowed_) n += s.size();
        return n;
    }

  private:
    std::vector<std::set<int>> allowed_;
};

}  // namespace tmdual
