#pragma once

#include "oflp/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oflp {

/// A position on the unit interval. Construction enforces 0 <= value <= 1.
class Loc {
public:
    Loc() = default;
    explicit Loc(Rational v) : value_(std::move(v)) {
        if (value_ < 0 || value_ > 1) throw std::domain_error("location outside [0,1]");
    }
    explicit Loc(int v) : Loc(Rational(v)) {}

    const Rational& value() const { return value_; }
    friend bool operator==(const Loc& a, const Loc& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Loc& a, const Loc& b) { return a.value_ != b.value_; }
    friend bool operator<(const Loc& a, const Loc& b) { return a.value_ < b.value_; }

private:
    Rational value_{};
};

/// Distance utility: an agent at x values facility y at |y - x|.
inline Rational utility(const Loc& y, const Loc& x) {
    return abs(y.value() - x.value());
}

enum class Objective { UtilitarianWelfare, EgalitarianWelfare };

/// Groups of colocated agents: (center, size) with strictly increasing centers.
struct GroupedProfile {
    struct Group {
        Rational center;
        std::size_t size = 0;
    };
    std::vector<Group> groups;
    std::size_t total = 0;
};

/// Sorted profile of agent locations, n >= 1. Input order is not preserved;
/// callers that care about agent identity keep their own index maps.
class Profile {
public:
    explicit Profile(std::vector<Rational> locations) : locs_(std::move(locations)) {
        if (locs_.empty()) throw std::invalid_argument("profile needs at least one agent");
        for (const auto& x : locs_)
            if (x < 0 || x > 1) throw std::domain_error("agent location outside [0,1]");
        std::sort(locs_.begin(), locs_.end());
    }

    std::size_t n() const { return locs_.size(); }
    const std::vector<Rational>& locations() const { return locs_; }
    const Rational& operator[](std::size_t i) const { return locs_[i]; }

    Rational sum() const {
        Rational s = 0;
        for (const auto& x : locs_) s += x;
        return s;
    }

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    std::vector<Rational> locs_;
};

/// Run-length encodes colocated agents; lossless (sizes sum to n).
inline GroupedProfile group(const Profile& p) {
    GroupedProfile g;
    g.total = p.n();
    for (const auto& x : p.locations()) {
        if (!g.groups.empty() && g.groups.back().center == x)
            ++g.groups.back().size;
        else
            g.groups.push_back({x, 1});
    }
    return g;
}

inline Rational utilitarian_welfare(const Profile& p, const Loc& y) {
    Rational s = 0;
    for (const auto& x : p.locations()) s += abs(y.value() - x);
    return s;
}

inline Rational egalitarian_welfare(const Profile& p, const Loc& y) {
    Rational best = abs(y.value() - p[0]);
    for (std::size_t i = 1; i < p.n(); ++i) {
        Rational d = abs(y.value() - p[i]);
        if (d < best) best = std::move(d);
    }
    return best;
}

/// Finitely supported distribution over facility locations. Canonicalized on
/// construction: atoms sorted by location, duplicates merged, zero-probability
/// atoms dropped; probabilities must be >= 0 and sum to exactly 1.
class Lottery {
public:
    struct Atom {
        Loc location;
        Rational probability;
    };

    explicit Lottery(std::vector<Atom> atoms) {
        Rational total = 0;
        for (auto& a : atoms) {
            if (a.probability < 0) throw std::domain_error("negative probability");
            total += a.probability;
        }
        if (total != 1) throw std::domain_error("probabilities must sum to 1");
        std::sort(atoms.begin(), atoms.end(),
                  [](const Atom& a, const Atom& b) { return a.location < b.location; });
        for (auto& a : atoms) {
            if (a.probability == 0) continue;
            if (!atoms_.empty() && atoms_.back().location == a.location)
                atoms_.back().probability += a.probability;
            else
                atoms_.push_back(std::move(a));
        }
    }

    static Lottery point_mass(Loc at) { return Lottery({{at, Rational(1)}}); }

    /// Two-point lottery on the endpoints: weight `at_one` on 1, rest on 0.
    static Lottery endpoints(const Rational& at_one) {
        return Lottery({{Loc(0), 1 - at_one}, {Loc(1), at_one}});
    }

    const std::vector<Atom>& atoms() const { return atoms_; }

    /// P(facility == at), 0 if `at` is not in the support.
    Rational probability_at(const Loc& at) const {
        for (const auto& a : atoms_)
            if (a.location == at) return a.probability;
        return 0;
    }

    bool endpoint_supported() const {
        for (const auto& a : atoms_)
            if (a.location.value() != 0 && a.location.value() != 1) return false;
        return true;
    }

    friend bool operator==(const Lottery& a, const Lottery& b) {
        if (a.atoms_.size() != b.atoms_.size()) return false;
        for (std::size_t i = 0; i < a.atoms_.size(); ++i)
            if (a.atoms_[i].location != b.atoms_[i].location ||
                a.atoms_[i].probability != b.atoms_[i].probability)
                return false;
        return true;
    }

private:
    std::vector<Atom> atoms_;
};

/// Expected distance between an agent at x and the lottery's facility.
inline Rational expected_utility(const Lottery& l, const Loc& x) {
    Rational s = 0;
    for (const auto& a : l.atoms()) s += a.probability * abs(a.location.value() - x.value());
    return s;
}

inline Rational expected_utilitarian_welfare(const Lottery& l, const Profile& p) {
    Rational s = 0;
    for (const auto& a : l.atoms()) s += a.probability * utilitarian_welfare(p, a.location);
    return s;
}

/// Egalitarian welfare in expectation: the worst agent's expected distance.
inline Rational expected_egalitarian_welfare(const Lottery& l, const Profile& p) {
    Rational best = expected_utility(l, Loc(p[0]));
    for (std::size_t i = 1; i < p.n(); ++i)
        best = std::min(best, expected_utility(l, Loc(p[i])));
    return best;
}

} // namespace oflp
