#pragma once

// Edge-indexed exact-rational vectors. Missing entries read as zero.

#include <map>

#include "graph.hpp"
#include "rational.hpp"

namespace lamthin {

class FracPoint {
public:
    FracPoint() = default;

    const Rat& at(int id) const {
        auto it = vals_.find(id);
        return it == vals_.end() ? zero_ : it->second;
    }

    void set(int id, Rat v) {
        if (v == 0)
            vals_.erase(id);
        else
            vals_[id] = std::move(v);
    }

    Rat sum(const IdSet& ids) const {
        Rat s = 0;
        for (int id : ids) s += at(id);
        return s;
    }

    Rat total() const {
        Rat s = 0;
        for (const auto& [_, v] : vals_) s += v;
        return s;
    }

    bool nonnegative() const {
        for (const auto& [_, v] : vals_)
            if (v < 0) return false;
        return true;
    }

    FracPoint restricted(const IdSet& ids) const {
        FracPoint out;
        for (int id : ids) {
            const Rat& v = at(id);
            if (v != 0) out.vals_[id] = v;
        }
        return out;
    }

    FracPoint scaled(const Rat& factor) const {
        FracPoint out;
        for (const auto& [id, v] : vals_) out.set(id, v * factor);
        return out;
    }

    /// True when this <= other on every coordinate (over the union of supports).
    bool dominated_by(const FracPoint& other) const {
        for (const auto& [id, v] : vals_)
            if (v > other.at(id)) return false;
        for (const auto& [id, v] : other.vals_)
            if (v < 0 && at(id) > v) return false;
        return true;
    }

    const std::map<int, Rat>& entries() const { return vals_; }

    bool operator==(const FracPoint& other) const { return vals_ == other.vals_; }

private:
    std::map<int, Rat> vals_;
    static inline const Rat zero_ = Rat(0);
};

}  // namespace lamthin
