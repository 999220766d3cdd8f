#pragma once

#include "oflp/core.hpp"
#include "oflp/interval_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oflp {

enum class FairnessKind { Ifs, Ufs, Pf };

/// A share-based fairness constraint with approximation parameter alpha > 0.
/// alpha = 2 is the smallest value for which a feasible point always exists.
struct Axiom {
    FairnessKind kind = FairnessKind::Ifs;
    Rational alpha = Rational(2);

    static Axiom ifs(Rational a = Rational(2)) { return make(FairnessKind::Ifs, std::move(a)); }
    static Axiom ufs(Rational a = Rational(2)) { return make(FairnessKind::Ufs, std::move(a)); }
    static Axiom pf(Rational a = Rational(2)) { return make(FairnessKind::Pf, std::move(a)); }

private:
    static Axiom make(FairnessKind k, Rational a) {
        if (a <= 0) throw std::domain_error("alpha must be positive");
        return Axiom{k, std::move(a)};
    }
};

namespace detail {

/// Contiguous agent windows are enough to decide proportional fairness: any
/// agent set is dominated by the window spanning its extremes (same range,
/// weakly larger size). Calls f(first, last, radius) for every window whose
/// protected radius size/(alpha*n) - range is positive.
template <class F>
void for_each_pf_window(const Profile& p, const Rational& alpha, F&& f) {
    const auto& xs = p.locations();
    const Rational unit = Rational(1) / (alpha * Rational(static_cast<long>(p.n())));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i; j < xs.size(); ++j) {
            Rational radius = Rational(static_cast<long>(j - i + 1)) * unit - (xs[j] - xs[i]);
            if (radius > 0) f(i, j, radius);
        }
    }
}

} // namespace detail

/// Does facility location y satisfy the axiom on profile p? All comparisons
/// are exact and the bounds are met with ">=".
inline bool check(const Profile& p, const Loc& y, const Axiom& a) {
    const Rational n(static_cast<long>(p.n()));
    switch (a.kind) {
    case FairnessKind::Ifs: {
        const Rational bound = Rational(1) / (a.alpha * n);
        for (const auto& x : p.locations())
            if (abs(y.value() - x) < bound) return false;
        return true;
    }
    case FairnessKind::Ufs: {
        for (const auto& g : group(p).groups)
            if (abs(y.value() - g.center) < Rational(static_cast<long>(g.size)) / (a.alpha * n))
                return false;
        return true;
    }
    case FairnessKind::Pf: {
        bool ok = true;
        detail::for_each_pf_window(p, a.alpha,
                                   [&](std::size_t i, std::size_t j, const Rational& radius) {
                                       if (!ok) return;
                                       for (std::size_t k = i; k <= j; ++k)
                                           if (abs(y.value() - p[k]) < radius) {
                                               ok = false;
                                               return;
                                           }
                                   });
        return ok;
    }
    }
    return false;
}

/// Exact feasible set { y in [0,1] : check(p, y, a) }: the complement of the
/// open forbidden balls around agents (IFS), colocated groups (UFS), or
/// window members (PF). May be empty for alpha < 2.
inline IntervalSet feasible_region(const Profile& p, const Axiom& a) {
    const Rational n(static_cast<long>(p.n()));
    std::vector<OpenInterval> balls;
    switch (a.kind) {
    case FairnessKind::Ifs: {
        const Rational r = Rational(1) / (a.alpha * n);
        for (const auto& x : p.locations()) balls.push_back({x - r, x + r});
        break;
    }
    case FairnessKind::Ufs: {
        for (const auto& g : group(p).groups) {
            Rational r = Rational(static_cast<long>(g.size)) / (a.alpha * n);
            balls.push_back({g.center - r, g.center + r});
        }
        break;
    }
    case FairnessKind::Pf: {
        detail::for_each_pf_window(p, a.alpha,
                                   [&](std::size_t i, std::size_t j, const Rational& radius) {
                                       for (std::size_t k = i; k <= j; ++k)
                                           balls.push_back({p[k] - radius, p[k] + radius});
                                   });
        break;
    }
    }
    return IntervalSet::complement_of_open(std::move(balls), {Rational(0), Rational(1)});
}

/// Fairness of a lottery, with bounds on expected distances. Only IFS and UFS
/// have an in-expectation form here.
inline bool check_expectation(const Profile& p, const Lottery& l, const Axiom& a) {
    const Rational n(static_cast<long>(p.n()));
    switch (a.kind) {
    case FairnessKind::Ifs: {
        const Rational bound = Rational(1) / (a.alpha * n);
        for (const auto& x : p.locations())
            if (expected_utility(l, Loc(x)) < bound) return false;
        return true;
    }
    case FairnessKind::Ufs: {
        for (const auto& g : group(p).groups)
            if (expected_utility(l, Loc(g.center)) <
                Rational(static_cast<long>(g.size)) / (a.alpha * n))
                return false;
        return true;
    }
    case FairnessKind::Pf:
        throw std::invalid_argument("proportional fairness has no in-expectation checker");
    }
    return false;
}

// --- hybrid model: classic agents want the facility near, obnoxious far ---

enum class HybridAxiom { Hifs, Hufs };

/// Two agent populations on [0,1]; n counts both. Either side may be empty,
/// but not both.
class HybridProfile {
public:
    HybridProfile(std::vector<Rational> classic, std::vector<Rational> obnoxious)
        : classic_(std::move(classic)), obnoxious_(std::move(obnoxious)) {
        if (classic_.empty() && obnoxious_.empty())
            throw std::invalid_argument("hybrid profile needs at least one agent");
        for (const auto* side : {&classic_, &obnoxious_})
            for (const auto& x : *side)
                if (x < 0 || x > 1) throw std::domain_error("agent location outside [0,1]");
        std::sort(classic_.begin(), classic_.end());
        std::sort(obnoxious_.begin(), obnoxious_.end());
    }

    const std::vector<Rational>& classic() const { return classic_; }
    const std::vector<Rational>& obnoxious() const { return obnoxious_; }
    std::size_t n() const { return classic_.size() + obnoxious_.size(); }

private:
    std::vector<Rational> classic_;
    std::vector<Rational> obnoxious_;
};

namespace detail {

/// (center, weight) pairs: per colocated group for the UFS variant, per agent
/// (weight 1) for the IFS variant.
inline std::vector<std::pair<Rational, std::size_t>>
hybrid_groups(const std::vector<Rational>& sorted, HybridAxiom a) {
    std::vector<std::pair<Rational, std::size_t>> out;
    for (const auto& x : sorted) {
        if (a == HybridAxiom::Hufs && !out.empty() && out.back().first == x)
            ++out.back().second;
        else
            out.emplace_back(x, 1);
    }
    return out;
}

} // namespace detail

/// Classic groups demand d(y, x) <= 1 - w/n (closed), obnoxious groups demand
/// d(y, x) >= w/(2n) (their open balls are removed). The H-UFS region is
/// always non-empty.
inline IntervalSet hybrid_feasible_region(const HybridProfile& h, HybridAxiom a) {
    const Rational n(static_cast<long>(h.n()));
    std::vector<Interval> closed;
    for (const auto& [c, w] : detail::hybrid_groups(h.classic(), a)) {
        Rational r = 1 - Rational(static_cast<long>(w)) / n;
        closed.push_back({c - r, c + r});
    }
    auto domain =
        IntervalSet::intersect_closed_balls(closed, {Rational(0), Rational(1)});
    if (!domain) return IntervalSet{};
    std::vector<OpenInterval> balls;
    for (const auto& [c, w] : detail::hybrid_groups(h.obnoxious(), a)) {
        Rational r = Rational(static_cast<long>(w)) / (2 * n);
        balls.push_back({c - r, c + r});
    }
    return IntervalSet::complement_of_open(std::move(balls), *domain);
}

inline bool check_hybrid(const HybridProfile& h, const Loc& y, HybridAxiom a) {
    const Rational n(static_cast<long>(h.n()));
    for (const auto& [c, w] : detail::hybrid_groups(h.classic(), a))
        if (abs(y.value() - c) > 1 - Rational(static_cast<long>(w)) / n) return false;
    for (const auto& [c, w] : detail::hybrid_groups(h.obnoxious(), a))
        if (abs(y.value() - c) < Rational(static_cast<long>(w)) / (2 * n)) return false;
    return true;
}

} // namespace oflp
