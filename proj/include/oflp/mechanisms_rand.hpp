#pragma once

#include "oflp/core.hpp"
#include "oflp/fairness.hpp"

#include <algorithm>
#include <vector>

namespace oflp {

/// Endpoint lottery weighted by the left/right agent counts: facility at 0
/// with probability (2*n1*n2 + n2^2) / (n1^2 + n2^2 + 4*n1*n2), where n1
/// counts agents in [0, 1/2] and n2 the rest. Group strategyproof in
/// expectation and unanimously fair at alpha = 2.
inline Lottery mechanism2(const Profile& p) {
    long n1 = 0, n2 = 0;
    for (const auto& x : p.locations()) (x <= Rational(1, 2) ? n1 : n2) += 1;
    Rational den(n1 * n1 + n2 * n2 + 4 * n1 * n2);
    Rational at_zero = Rational(2 * n1 * n2 + n2 * n2) / den;
    return Lottery({{Loc(0), at_zero}, {Loc(1), 1 - at_zero}});
}

/// Egalitarian-optimal strategyproof lottery: the far endpoint when all
/// agents share a half, otherwise a fair coin over the endpoints.
inline Lottery randomized_ew(const Profile& p) {
    const Rational half(1, 2);
    bool all_left = true, all_right = true;
    for (const auto& x : p.locations()) {
        if (x > half) all_left = false;
        if (x <= half) all_right = false;
    }
    if (all_left) return Lottery::point_mass(Loc(1));
    if (all_right) return Lottery::point_mass(Loc(0));
    return Lottery::endpoints(half);
}

/// Utilitarian-optimal endpoint lottery under individual fairness (alpha = 2)
/// in expectation. Puts all mass on the better endpoint unless the nearest
/// agent would be too close, in which case the opposite endpoint receives
/// exactly the weight that lifts that agent to the 1/(2n) bound.
inline Lottery randomized_2ifs(const Profile& p) {
    const Rational n(static_cast<long>(p.n()));
    const Rational sum = p.sum();
    if (2 * sum == n) return Lottery::endpoints(Rational(1, 2));
    if (2 * sum > n) {
        const Rational& x1 = p[0];
        if (x1 >= 1 / (2 * n)) return Lottery::point_mass(Loc(0));
        Rational at_one = (1 - 2 * n * x1) / (2 * n * (1 - 2 * x1));
        return Lottery::endpoints(at_one);
    }
    const Rational& xn = p[p.n() - 1];
    if (xn <= 1 - 1 / (2 * n)) return Lottery::point_mass(Loc(1));
    Rational at_one = (1 - 2 * n * xn) / (2 * n * (1 - 2 * xn));
    return Lottery::endpoints(at_one);
}

/// Utilitarian-optimal endpoint lottery under unanimous fairness (alpha = 2)
/// in expectation. Each colocated group of size s at c strictly left of 1/2
/// needs weight at least (s - 2nc) / (2n(1 - 2c)) on location 1; the binding
/// group decides. The mirrored branch bounds the weight from above instead.
inline Lottery randomized_2ufs(const Profile& p) {
    const Rational n(static_cast<long>(p.n()));
    const Rational half(1, 2);
    const GroupedProfile g = group(p);
    Rational weighted_sum = 0;
    for (const auto& grp : g.groups)
        weighted_sum += Rational(static_cast<long>(grp.size)) * grp.center;
    if (2 * weighted_sum == n) return Lottery::endpoints(half);

    auto weight_bound = [&](const GroupedProfile::Group& grp) -> Rational {
        return (Rational(static_cast<long>(grp.size)) - 2 * n * grp.center) /
               (2 * n * (1 - 2 * grp.center));
    };
    if (2 * weighted_sum > n) {
        // Optimal endpoint is 0; groups left of 1/2 push mass onto 1.
        Rational at_one = 0;
        for (const auto& grp : g.groups)
            if (grp.center < half) at_one = std::max(at_one, weight_bound(grp));
        return Lottery::endpoints(at_one);
    }
    // Optimal endpoint is 1; groups right of 1/2 cap the mass on 1.
    Rational at_one = 1;
    for (const auto& grp : g.groups)
        if (grp.center > half) at_one = std::min(at_one, weight_bound(grp));
    return Lottery::endpoints(at_one);
}

/// Pushes every interior atom (c, q) to the endpoints as q*c at 1 and
/// q*(1-c) at 0. Every agent's expected distance weakly increases, so
/// fairness in expectation survives the transformation.
inline Lottery collapse_support(const Lottery& l) {
    Rational at_zero = 0, at_one = 0;
    for (const auto& a : l.atoms()) {
        at_one += a.probability * a.location.value();
        at_zero += a.probability * (1 - a.location.value());
    }
    return Lottery({{Loc(0), at_zero}, {Loc(1), at_one}});
}

} // namespace oflp
