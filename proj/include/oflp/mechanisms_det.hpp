#pragma once

#include "oflp/core.hpp"
#include "oflp/fairness.hpp"
#include "oflp/interval_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace oflp {

/// Raised when a fairness constraint admits no facility location (alpha < 2,
/// or degenerate hybrid instances under H-IFS).
struct InfeasibleError : std::runtime_error {
    InfeasibleError() : std::runtime_error("empty feasible region") {}
};

/// Unconstrained utilitarian optimum: an endpoint, 0 on ties.
inline Loc opt_uw(const Profile& p) {
    // UW(0) = sum(x), UW(1) = n - sum(x).
    return 2 * p.sum() >= Rational(static_cast<long>(p.n())) ? Loc(0) : Loc(1);
}

namespace detail {

/// Candidate maximizers of min-distance: the endpoints and the midpoints of
/// consecutive distinct agent locations (min-distance peaks nowhere else).
inline std::vector<Rational> ew_candidates(const Profile& p) {
    std::vector<Rational> cands{Rational(0), Rational(1)};
    const auto& xs = p.locations();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i] != xs[i + 1]) cands.push_back((xs[i] + xs[i + 1]) / 2);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

/// Leftmost argmax of `value` over ascending candidates.
template <class ValueFn>
Loc leftmost_argmax(const std::vector<Rational>& ascending, ValueFn&& value) {
    Loc best_loc(ascending.front());
    Rational best = value(best_loc);
    for (std::size_t i = 1; i < ascending.size(); ++i) {
        Loc y(ascending[i]);
        Rational v = value(y);
        if (v > best) {
            best = std::move(v);
            best_loc = y;
        }
    }
    return best_loc;
}

} // namespace detail

/// Unconstrained egalitarian optimum, leftmost on ties.
inline Loc opt_ew(const Profile& p) {
    return detail::leftmost_argmax(detail::ew_candidates(p),
                                   [&](const Loc& y) { return egalitarian_welfare(p, y); });
}

/// Utilitarian optimum subject to a fairness axiom: iterates the endpoints of
/// the feasible intervals (welfare is convex, so endpoints suffice) and
/// breaks ties in favour of the leftmost location.
inline Loc opt_uw_fair(const Profile& p, const Axiom& a) {
    IntervalSet region = feasible_region(p, a);
    if (region.empty()) throw InfeasibleError{};
    return detail::leftmost_argmax(region.endpoints(),
                                   [&](const Loc& y) { return utilitarian_welfare(p, y); });
}

/// Egalitarian optimum subject to a fairness axiom: candidates are the region
/// endpoints plus any unconstrained min-distance peak inside the region.
inline Loc opt_ew_fair(const Profile& p, const Axiom& a) {
    IntervalSet region = feasible_region(p, a);
    if (region.empty()) throw InfeasibleError{};
    std::vector<Rational> cands = region.endpoints();
    for (const auto& c : detail::ew_candidates(p))
        if (region.contains(c)) cands.push_back(c);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return detail::leftmost_argmax(cands,
                                   [&](const Loc& y) { return egalitarian_welfare(p, y); });
}

/// A proportionally fair location for alpha = 2, by merging overlapping group
/// balls until disjoint and taking the leftmost point outside all of them.
/// Nested balls keep the outer center; plain overlaps re-center at the
/// midpoint of the union's span. Radii add in both cases, so the total ball
/// length stays at 1 and a gap always survives.
inline Loc solve_2pf(const Profile& p) {
    struct Ball {
        Rational center, radius;
        Rational lo() const { return center - radius; }
        Rational hi() const { return center + radius; }
    };
    const Rational n(static_cast<long>(p.n()));
    std::vector<Ball> balls;
    for (const auto& g : group(p).groups)
        balls.push_back({g.center, Rational(static_cast<long>(g.size)) / (2 * n)});

    auto by_lo = [](const Ball& a, const Ball& b) {
        return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
    };
    std::sort(balls.begin(), balls.end(), by_lo);
    // If any two balls intersect, some ball intersects its successor in
    // lo-order; merge the leftmost such pair first.
    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t i = 0; i + 1 < balls.size(); ++i) {
            Ball &a = balls[i], &b = balls[i + 1];
            if (b.lo() >= a.hi()) continue; // open balls, touching is disjoint
            Ball fused;
            fused.radius = a.radius + b.radius;
            if (a.lo() <= b.lo() && b.hi() <= a.hi())
                fused.center = a.center; // b nested in a
            else if (b.lo() <= a.lo() && a.hi() <= b.hi())
                fused.center = b.center; // a nested in b
            else
                fused.center = (std::min(a.lo(), b.lo()) + std::max(a.hi(), b.hi())) / 2;
            balls[i] = fused;
            balls.erase(balls.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            std::sort(balls.begin(), balls.end(), by_lo);
            merged = true;
            break;
        }
    }
    std::vector<OpenInterval> opens;
    for (const auto& b : balls) opens.push_back({b.lo(), b.hi()});
    IntervalSet gaps =
        IntervalSet::complement_of_open(std::move(opens), {Rational(0), Rational(1)});
    if (gaps.empty()) throw std::logic_error("disjoint balls of total length 1 left no gap");
    return Loc(gaps.leftmost());
}

/// Leftmost point satisfying the hybrid constraints.
inline Loc solve_hybrid(const HybridProfile& h, HybridAxiom a) {
    IntervalSet region = hybrid_feasible_region(h, a);
    if (region.empty()) throw InfeasibleError{};
    return Loc(region.leftmost());
}

} // namespace oflp
