#pragma once

#include "oflp/rational.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace oflp {

/// Closed interval [lo, hi], lo <= hi. [x, x] is a single point.
struct Interval {
    Rational lo, hi;
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Open interval (lo, hi); empty when lo >= hi.
struct OpenInterval {
    Rational lo, hi;
};

/// Finite union of disjoint, non-adjacent closed intervals, kept sorted.
/// Feasible regions are built as complements of open forbidden balls, so
/// degenerate point intervals (ball boundaries) arise naturally.
class IntervalSet {
public:
    IntervalSet() = default;

    /// Complement of the union of open intervals within the closed domain.
    /// Two opens that merely touch at a point leave that point in the result.
    static IntervalSet complement_of_open(std::vector<OpenInterval> balls, Interval domain) {
        std::erase_if(balls, [](const OpenInterval& b) { return b.lo >= b.hi; });
        std::sort(balls.begin(), balls.end(), [](const OpenInterval& a, const OpenInterval& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
        });
        // Merge strictly overlapping opens; (a,b) and (b,c) stay separate.
        std::vector<OpenInterval> merged;
        for (auto& b : balls) {
            if (!merged.empty() && b.lo < merged.back().hi)
                merged.back().hi = std::max(merged.back().hi, b.hi);
            else
                merged.push_back(std::move(b));
        }
        IntervalSet out;
        Rational cursor = domain.lo;
        for (const auto& b : merged) {
            if (cursor > domain.hi) break;
            if (b.hi <= domain.lo) continue; // open, so it misses domain.lo
            if (b.lo >= domain.hi) break;    // open, so it misses domain.hi; rest are further right
            if (b.lo >= cursor) out.intervals_.push_back({cursor, std::min(b.lo, domain.hi)});
            cursor = std::max(cursor, b.hi);
        }
        if (cursor <= domain.hi) out.intervals_.push_back({cursor, domain.hi});
        return out;
    }

    /// Intersection of closed balls [c-r, c+r] with the domain; nullopt if empty.
    static std::optional<Interval>
    intersect_closed_balls(const std::vector<Interval>& balls, Interval domain) {
        Rational lo = domain.lo, hi = domain.hi;
        for (const auto& b : balls) {
            lo = std::max(lo, b.lo);
            hi = std::min(hi, b.hi);
        }
        if (lo > hi) return std::nullopt;
        return Interval{lo, hi};
    }

    bool empty() const { return intervals_.empty(); }
    const std::vector<Interval>& intervals() const { return intervals_; }

    bool contains(const Rational& y) const {
        for (const auto& iv : intervals_) {
            if (y < iv.lo) return false;
            if (y <= iv.hi) return true;
        }
        return false;
    }

    /// pre: !empty()
    const Rational& leftmost() const { return intervals_.front().lo; }

    /// All interval endpoints in ascending order (lo == hi emitted once).
    std::vector<Rational> endpoints() const {
        std::vector<Rational> out;
        out.reserve(2 * intervals_.size());
        for (const auto& iv : intervals_) {
            out.push_back(iv.lo);
            if (iv.hi != iv.lo) out.push_back(iv.hi);
        }
        return out;
    }

    Rational total_length() const {
        Rational s = 0;
        for (const auto& iv : intervals_) s += iv.hi - iv.lo;
        return s;
    }

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> intervals_;
};

} // namespace oflp
