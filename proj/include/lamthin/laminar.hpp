#pragma once

// Laminar families: nested collections of vertex sets, each optionally
// carrying a nonnegative integer crossing bound.

#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace lamthin {

struct LaminarSet {
    int id = 0;
    VertexSet members;
    std::optional<long> bound;  // absent = no constraint on delta(S)
};

class LaminarFamily {
public:
    LaminarFamily() = default;
    explicit LaminarFamily(std::vector<LaminarSet> sets) : sets_(std::move(sets)) {}

    const std::vector<LaminarSet>& sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }
    bool empty() const { return sets_.empty(); }

    const LaminarSet& set_by_id(int id) const {
        for (const LaminarSet& s : sets_)
            if (s.id == id) return s;
        throw input_error("unknown laminar set id " + std::to_string(id));
    }

    bool contains_members(const VertexSet& v) const {
        for (const LaminarSet& s : sets_)
            if (s.members == v) return true;
        return false;
    }

    void add(LaminarSet s) { sets_.push_back(std::move(s)); }

    int fresh_id() const {
        int m = 0;
        for (const LaminarSet& s : sets_) m = std::max(m, s.id + 1);
        return m;
    }

private:
    std::vector<LaminarSet> sets_;
};

inline bool sets_cross(const VertexSet& a, const VertexSet& b) {
    VertexSet inter = set_intersection_sorted(a, b);
    if (inter.empty()) return false;
    return inter != a && inter != b;
}

/// Returns the first crossing pair of set ids, or nullopt when the family is
/// laminar. Duplicate vertex sets are also reported (they violate the
/// no-duplicates invariant).
inline std::optional<std::pair<int, int>> validate_laminar(const LaminarFamily& fam) {
    const auto& sets = fam.sets();
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            if (sets[i].members == sets[j].members) return std::make_pair(sets[i].id, sets[j].id);
            if (sets_cross(sets[i].members, sets[j].members))
                return std::make_pair(sets[i].id, sets[j].id);
        }
    return std::nullopt;
}

/// Members of fam strictly contained in s that are maximal with that property.
inline std::vector<const LaminarSet*> maximal_strictly_inside(const LaminarFamily& fam,
                                                              const VertexSet& s) {
    std::vector<const LaminarSet*> inside;
    for (const LaminarSet& t : fam.sets())
        if (t.members != s && is_subset_sorted(t.members, s)) inside.push_back(&t);
    std::vector<const LaminarSet*> out;
    for (const LaminarSet* a : inside) {
        bool dominated = false;
        for (const LaminarSet* b : inside)
            if (a != b && is_subset_sorted(a->members, b->members) && a->members != b->members)
                dominated = true;
        if (!dominated) out.push_back(a);
    }
    return out;
}

/// Members contained in s (inclusive) that are maximal with that property.
/// Assumes the family has no duplicate vertex sets.
inline std::vector<const LaminarSet*> maximal_inside(const LaminarFamily& fam,
                                                     const VertexSet& s) {
    std::vector<const LaminarSet*> inside;
    for (const LaminarSet& t : fam.sets())
        if (is_subset_sorted(t.members, s)) inside.push_back(&t);
    std::vector<const LaminarSet*> out;
    for (const LaminarSet* a : inside) {
        bool dominated = false;
        for (const LaminarSet* b : inside)
            if (a != b && a->members != b->members && is_subset_sorted(a->members, b->members))
                dominated = true;
        if (!dominated) out.push_back(a);
    }
    return out;
}

}  // namespace lamthin
