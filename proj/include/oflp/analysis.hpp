#pragma once

#include "oflp/core.hpp"
#include "oflp/fairness.hpp"
#include "oflp/mechanisms_det.hpp"
#include "oflp/mechanisms_rand.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace oflp {

/// One instance-level welfare comparison: unconstrained optimum vs the best
/// value achievable under a fairness constraint (or a mechanism's expected
/// value). ratio = optimal/constrained, or 0 with `degenerate` set when the
/// constrained value is 0.
struct RatioRecord {
    Profile instance;
    std::string family; // "random" or the adversarial family tag
    Objective objective = Objective::UtilitarianWelfare;
    Rational optimal_value;
    Rational constrained_value;
    Rational ratio;
    bool degenerate = false;
    std::optional<Rational> eps; // family parameter when applicable
};

inline RatioRecord pof(const Profile& p, const Axiom& a, Objective obj) {
    RatioRecord rec{p, "random", obj, 0, 0, 0, false, std::nullopt};
    if (obj == Objective::UtilitarianWelfare) {
        rec.optimal_value = utilitarian_welfare(p, opt_uw(p));
        rec.constrained_value = utilitarian_welfare(p, opt_uw_fair(p, a));
    } else {
        rec.optimal_value = egalitarian_welfare(p, opt_ew(p));
        rec.constrained_value = egalitarian_welfare(p, opt_ew_fair(p, a));
    }
    if (rec.constrained_value == 0)
        rec.degenerate = true;
    else
        rec.ratio = rec.optimal_value / rec.constrained_value;
    return rec;
}

enum class RandMech { Mechanism2, Rand2Ifs, Rand2Ufs, RandEw };

inline Lottery run_mechanism(RandMech m, const Profile& p) {
    switch (m) {
    case RandMech::Mechanism2: return mechanism2(p);
    case RandMech::Rand2Ifs: return randomized_2ifs(p);
    case RandMech::Rand2Ufs: return randomized_2ufs(p);
    case RandMech::RandEw: return randomized_ew(p);
    }
    throw std::logic_error("unreachable");
}

/// Best egalitarian welfare any endpoint lottery can reach. With facility at
/// 1 w.p. q, agent i expects x_i + q(1 - 2x_i); all these lines cross at
/// q = 1/2, so the maximin over q is max(x_1, 1/2, 1 - x_n). Interior support
/// never helps (collapsing to the endpoints only raises expectations).
inline Rational optimal_lottery_ew(const Profile& p) {
    Rational right = 1 - p[p.n() - 1];
    return std::max({p[0], Rational(1, 2), right});
}

/// Optimal welfare over the mechanism's expected welfare, exact.
inline RatioRecord approx_ratio(const Profile& p, RandMech m) {
    RatioRecord rec{p, "random", Objective::UtilitarianWelfare, 0, 0, 0, false, std::nullopt};
    Lottery l = run_mechanism(m, p);
    if (m == RandMech::RandEw) {
        rec.objective = Objective::EgalitarianWelfare;
        rec.optimal_value = optimal_lottery_ew(p);
        rec.constrained_value = expected_egalitarian_welfare(l, p);
    } else {
        rec.optimal_value = utilitarian_welfare(p, opt_uw(p));
        rec.constrained_value = expected_utilitarian_welfare(l, p);
    }
    if (rec.constrained_value == 0)
        rec.degenerate = true;
    else
        rec.ratio = rec.optimal_value / rec.constrained_value;
    return rec;
}

/// Worst-case instances transcribed from the tightness arguments.
///   pof_uw     even n: (2i-1)/(2n) -+ staircase offsets, forcing the fair
///              facility to the middle while an endpoint gets welfare n/2.
///   pof_ew_ufs one agent at 1/(2n)-eps, n-1 agents at (n+1)/(2n)+eps.
///   ratio_2ifs one agent at 0, n-1 agents at 1.
///   ratio_2ufs ceil((1 - 1/sqrt(2)) n) agents at 0, the rest at 1.
///   poa_lower  all n agents at 1/(2n) - eps/2.
inline Profile adversarial_instance(const std::string& family, long n, const Rational& eps) {
    if (n < 2) throw std::invalid_argument("family instances need n >= 2");
    std::vector<Rational> xs;
    if (family == "pof_uw") {
        if (n % 2 != 0) throw std::invalid_argument("pof_uw family needs even n");
        if (eps <= 0 || Rational(n / 2) * eps >= Rational(1, 2 * n))
            throw std::invalid_argument("pof_uw family needs 0 < eps < 1/(n^2)");
        for (long i = 1; i <= n / 2; ++i)
            xs.push_back(Rational(2 * i - 1, 2 * n) - Rational(i) * eps);
        for (long i = n / 2 + 1; i <= n; ++i)
            xs.push_back(Rational(2 * i - 1, 2 * n) + Rational(n + 1 - i) * eps);
    } else if (family == "pof_ew_ufs") {
        if (eps <= 0 || eps >= Rational(1, 2 * n))
            throw std::invalid_argument("pof_ew_ufs family needs 0 < eps < 1/(2n)");
        xs.push_back(Rational(1, 2 * n) - eps);
        for (long i = 1; i < n; ++i) xs.push_back(Rational(n + 1, 2 * n) + eps);
    } else if (family == "ratio_2ifs") {
        xs.push_back(Rational(0));
        for (long i = 1; i < n; ++i) xs.push_back(Rational(1));
    } else if (family == "ratio_2ufs") {
        // ceil(n (1 - 1/sqrt(2))) = n - floor(n / sqrt(2)), via integer sqrt.
        BigInt half_square = BigInt(n) * n / 2;
        BigInt zeros = n - boost::multiprecision::sqrt(half_square);
        for (BigInt i = 0; i < zeros; ++i) xs.push_back(Rational(0));
        for (BigInt i = zeros; i < n; ++i) xs.push_back(Rational(1));
    } else if (family == "poa_lower") {
        if (eps <= 0 || eps >= Rational(1, n))
            throw std::invalid_argument("poa_lower family needs 0 < eps < 1/n");
        xs.assign(static_cast<std::size_t>(n), Rational(1, 2 * n) - eps / 2);
    } else {
        throw std::invalid_argument("unknown adversarial family '" + family + "'");
    }
    return Profile(std::move(xs));
}

/// Deterministic instance source: std::mt19937_64 with explicit modulo
/// reduction, so sequences are identical across platforms. Locations are
/// i.i.d. rationals with denominator 10^4; duplicates are welcome (groups
/// drive the unanimous axioms).
class SeededGen {
public:
    explicit SeededGen(std::uint64_t seed) : rng_(seed) {}

    long next_long(long lo, long hi) { // inclusive bounds
        return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational next_location(long denom = 10000) { return Rational(next_long(0, denom), denom); }

    std::vector<Rational> next_locations(long n, long denom = 10000) {
        std::vector<Rational> xs;
        xs.reserve(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) xs.push_back(next_location(denom));
        return xs;
    }

    Profile next_profile(long n_min, long n_max) {
        return Profile(next_locations(next_long(n_min, n_max)));
    }

private:
    std::mt19937_64 rng_;
};

enum class SweepMode {
    PofUwIfs2,
    PofUwUfs2,
    PofEwIfs2,
    PofEwUfs2,
    Ratio2Ifs,
    Ratio2Ufs,
    RatioMech2,
    RatioRandEw,
};

inline SweepMode parse_sweep_mode(std::string s) {
    std::replace(s.begin(), s.end(), '-', '_');
    if (s == "pof_uw_ifs2") return SweepMode::PofUwIfs2;
    if (s == "pof_uw_ufs2") return SweepMode::PofUwUfs2;
    if (s == "pof_ew_ifs2") return SweepMode::PofEwIfs2;
    if (s == "pof_ew_ufs2") return SweepMode::PofEwUfs2;
    if (s == "ratio_2ifs") return SweepMode::Ratio2Ifs;
    if (s == "ratio_2ufs") return SweepMode::Ratio2Ufs;
    if (s == "ratio_mech2") return SweepMode::RatioMech2;
    if (s == "ratio_rand_ew") return SweepMode::RatioRandEw;
    throw std::invalid_argument("unknown sweep mode '" + s + "'");
}

inline std::string sweep_mode_name(SweepMode m) {
    switch (m) {
    case SweepMode::PofUwIfs2: return "pof_uw_ifs2";
    case SweepMode::PofUwUfs2: return "pof_uw_ufs2";
    case SweepMode::PofEwIfs2: return "pof_ew_ifs2";
    case SweepMode::PofEwUfs2: return "pof_ew_ufs2";
    case SweepMode::Ratio2Ifs: return "ratio_2ifs";
    case SweepMode::Ratio2Ufs: return "ratio_2ufs";
    case SweepMode::RatioMech2: return "ratio_mech2";
    case SweepMode::RatioRandEw: return "ratio_rand_ew";
    }
    return "?";
}

struct SweepConfig {
    SweepMode mode = SweepMode::PofUwIfs2;
    long n_min = 2;
    long n_max = 10;
    long grid = 1000;     // x1 grid for ratio_2ifs
    std::uint64_t seed = 0;
    long samples = 10000; // random instances
    Rational eps = Rational(1, 10000);
    int jobs = 1;
};

/// The worst-case ceiling a sweep's ratios approach. For pof_ew_ufs2 the bound
/// is n-1, reported for the largest n in range; for ratio_2ufs it is
/// irrational and this returns a 50-digit upper enclosure.
inline Rational sweep_bound(SweepMode m, long n_max) {
    switch (m) {
    case SweepMode::PofUwIfs2:
    case SweepMode::PofUwUfs2: return Rational(2);
    case SweepMode::PofEwIfs2: return Rational(1);
    case SweepMode::PofEwUfs2: return Rational(n_max - 1);
    case SweepMode::Ratio2Ifs: return Rational(12, 11);
    case SweepMode::Ratio2Ufs: {
        auto [lo, hi] = sqrt_enclosure(Rational(2), 50);
        return Rational(2, 7) * (1 + 2 * hi);
    }
    case SweepMode::RatioMech2: return Rational(3, 2);
    case SweepMode::RatioRandEw: return Rational(1);
    }
    return Rational(0);
}

namespace detail {

template <class Fn>
void parallel_over(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace detail

/// Evaluates the mode's ratio on seeded random instances plus the matching
/// adversarial family/structured grid, in parallel when asked; the result is
/// deterministic for a given config regardless of thread count. Records come
/// back sorted by ratio descending, ties by instance.
inline std::vector<RatioRecord> sweep(const SweepConfig& cfg) {
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw std::invalid_argument("bad n range");

    struct Task {
        Profile instance;
        std::string family;
        std::optional<Rational> eps;
    };
    std::vector<Task> tasks;
    SeededGen gen(cfg.seed);
    for (long s = 0; s < cfg.samples; ++s)
        tasks.push_back({gen.next_profile(cfg.n_min, cfg.n_max), "random", std::nullopt});

    auto add_family = [&](const std::string& family, long n) {
        try {
            tasks.push_back({adversarial_instance(family, n, cfg.eps), family, cfg.eps});
        } catch (const std::invalid_argument&) {
            // family undefined at this (n, eps); skip
        }
    };
    switch (cfg.mode) {
    case SweepMode::PofUwIfs2:
    case SweepMode::PofUwUfs2:
        for (long n = cfg.n_min; n <= cfg.n_max; ++n) add_family("pof_uw", n);
        break;
    case SweepMode::PofEwUfs2:
        for (long n = cfg.n_min; n <= cfg.n_max; ++n) add_family("pof_ew_ufs", n);
        break;
    case SweepMode::PofEwIfs2: break; // the ratio is identically 1
    case SweepMode::Ratio2Ifs:
        for (long n = std::max<long>(2, cfg.n_min); n <= cfg.n_max; ++n)
            for (long g = 0; g <= cfg.grid; ++g) {
                std::vector<Rational> xs{Rational(g, cfg.grid)};
                for (long i = 1; i < n; ++i) xs.push_back(Rational(1));
                tasks.push_back({Profile(std::move(xs)), "ratio_2ifs", std::nullopt});
            }
        break;
    case SweepMode::Ratio2Ufs:
        for (long n = std::max<long>(2, cfg.n_min); n <= cfg.n_max; ++n)
            for (long s = 1; s < n; ++s) {
                std::vector<Rational> xs(static_cast<std::size_t>(s), Rational(0));
                xs.resize(static_cast<std::size_t>(n), Rational(1));
                tasks.push_back({Profile(std::move(xs)), "ratio_2ufs", std::nullopt});
            }
        break;
    case SweepMode::RatioMech2:
    case SweepMode::RatioRandEw: break; // random instances only
    }

    std::vector<RatioRecord> records(tasks.size(), RatioRecord{Profile({Rational(0)}), "", Objective::UtilitarianWelfare, 0, 0, 0, false, std::nullopt});
    detail::parallel_over(tasks.size(), cfg.jobs, [&](std::size_t i) {
        const Task& t = tasks[i];
        RatioRecord rec = [&] {
            switch (cfg.mode) {
            case SweepMode::PofUwIfs2: return pof(t.instance, Axiom::ifs(), Objective::UtilitarianWelfare);
            case SweepMode::PofUwUfs2: return pof(t.instance, Axiom::ufs(), Objective::UtilitarianWelfare);
            case SweepMode::PofEwIfs2: return pof(t.instance, Axiom::ifs(), Objective::EgalitarianWelfare);
            case SweepMode::PofEwUfs2: return pof(t.instance, Axiom::ufs(), Objective::EgalitarianWelfare);
            case SweepMode::Ratio2Ifs: return approx_ratio(t.instance, RandMech::Rand2Ifs);
            case SweepMode::Ratio2Ufs: return approx_ratio(t.instance, RandMech::Rand2Ufs);
            case SweepMode::RatioMech2: return approx_ratio(t.instance, RandMech::Mechanism2);
            case SweepMode::RatioRandEw: return approx_ratio(t.instance, RandMech::RandEw);
            }
            throw std::logic_error("unreachable");
        }();
        rec.family = t.family;
        rec.eps = t.eps;
        records[i] = std::move(rec);
    });

    std::sort(records.begin(), records.end(), [](const RatioRecord& a, const RatioRecord& b) {
        if (a.ratio != b.ratio) return a.ratio > b.ratio;
        return a.instance.locations() < b.instance.locations();
    });
    return records;
}

} // namespace oflp
