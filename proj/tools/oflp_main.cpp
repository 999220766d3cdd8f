// oflp: exact mechanisms, fairness checks, and bound experiments for
// obnoxious facility location on the unit interval.

#include "oflp/analysis.hpp"
#include "oflp/core.hpp"
#include "oflp/fairness.hpp"
#include "oflp/io.hpp"
#include "oflp/mechanisms_det.hpp"
#include "oflp/mechanisms_rand.hpp"
#include "oflp/strategic.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace oflp;

Axiom axiom_from_flags(const std::string& kind, const std::string& alpha_str) {
    Rational alpha = parse_rational(alpha_str);
    if (kind == "ifs") return Axiom::ifs(alpha);
    if (kind == "ufs") return Axiom::ufs(alpha);
    if (kind == "pf") return Axiom::pf(alpha);
    throw std::invalid_argument("axiom must be ifs, ufs or pf");
}

HybridAxiom hybrid_axiom_from_flag(const std::string& kind) {
    if (kind == "hifs") return HybridAxiom::Hifs;
    if (kind == "hufs") return HybridAxiom::Hufs;
    throw std::invalid_argument("hybrid axiom must be hifs or hufs");
}

std::string interval_set_str(const IntervalSet& s, bool decimal) {
    if (s.empty()) return "empty";
    std::string out = "{";
    bool first = true;
    for (const auto& iv : s.intervals()) {
        if (!first) out += ", ";
        first = false;
        if (decimal)
            out += "[" + to_decimal(iv.lo) + ", " + to_decimal(iv.hi) + "]";
        else
            out += "[" + to_fraction(iv.lo) + ", " + to_fraction(iv.hi) + "]";
    }
    return out + "}";
}

std::string lottery_str(const Lottery& l) {
    std::string out = "lottery";
    for (const auto& a : l.atoms())
        out += " " + to_fraction(a.location.value()) + ":" + to_fraction(a.probability);
    return out;
}

void print_deterministic_result(const Profile& p, const Loc& y) {
    std::cout << "y = " << show(y.value()) << "\n";
    std::cout << "UW = " << show(utilitarian_welfare(p, y)) << "\n";
    std::cout << "EW = " << show(egalitarian_welfare(p, y)) << "\n";
}

void print_lottery_result(const Profile& p, const Lottery& l, const Axiom& natural) {
    std::cout << lottery_str(l) << "\n";
    std::cout << "E[UW] = " << show(expected_utilitarian_welfare(l, p)) << "\n";
    std::cout << "E[EW] = " << show(expected_egalitarian_welfare(l, p)) << "\n";
    std::cout << "fair-in-expectation(" << (natural.kind == FairnessKind::Ifs ? "ifs" : "ufs")
              << ", alpha=2): " << (check_expectation(p, l, natural) ? "PASS" : "FAIL") << "\n";
}

int run_solve(const std::string& mech, const std::string& input, const std::string& axiom_kind,
              const std::string& alpha_str, long samples, std::uint64_t seed) {
    if (mech == "solve-hybrid") {
        HybridProfile h = io::read_hybrid(input);
        HybridAxiom a = hybrid_axiom_from_flag(axiom_kind == "ifs" ? "hufs" : axiom_kind);
        Loc y = solve_hybrid(h, a);
        std::cout << "y = " << show(y.value()) << "\n";
        std::cout << "check: " << (check_hybrid(h, y, a) ? "PASS" : "FAIL") << "\n";
        return 0;
    }
    Profile p = io::read_profile(input);
    if (mech == "opt-uw") {
        print_deterministic_result(p, opt_uw(p));
    } else if (mech == "opt-ew") {
        print_deterministic_result(p, opt_ew(p));
    } else if (mech == "opt-uw-fair" || mech == "opt-ew-fair") {
        Axiom a = axiom_from_flags(axiom_kind, alpha_str);
        Loc y = mech == "opt-uw-fair" ? opt_uw_fair(p, a) : opt_ew_fair(p, a);
        print_deterministic_result(p, y);
        std::cout << "check(" << axiom_kind << ", alpha=" << to_fraction(a.alpha)
                  << "): " << (check(p, y, a) ? "PASS" : "FAIL") << "\n";
    } else if (mech == "solve-2pf") {
        Loc y = solve_2pf(p);
        print_deterministic_result(p, y);
        std::cout << "check(pf, alpha=2): " << (check(p, y, Axiom::pf()) ? "PASS" : "FAIL")
                  << "\n";
    } else if (mech == "mechanism2" || mech == "rand-ew" || mech == "rand-2ifs" ||
               mech == "rand-2ufs") {
        Lottery l = mech == "mechanism2"  ? mechanism2(p)
                    : mech == "rand-ew"   ? randomized_ew(p)
                    : mech == "rand-2ifs" ? randomized_2ifs(p)
                                          : randomized_2ufs(p);
        print_lottery_result(p, l, mech == "rand-2ifs" ? Axiom::ifs() : Axiom::ufs());
        if (samples > 0) {
            std::mt19937_64 rng(seed);
            std::vector<long> hits(l.atoms().size(), 0);
            for (long s = 0; s < samples; ++s) {
                // inverse-CDF draw with a rational uniform on a 2^62 grid
                Rational u(rng() >> 2, std::uint64_t(1) << 62);
                Rational acc = 0;
                for (std::size_t k = 0; k < l.atoms().size(); ++k) {
                    acc += l.atoms()[k].probability;
                    if (u < acc || k + 1 == l.atoms().size()) {
                        ++hits[k];
                        break;
                    }
                }
            }
            std::cout << "sampled " << samples << " draws (seed " << seed << "):";
            for (std::size_t k = 0; k < hits.size(); ++k)
                std::cout << " " << to_fraction(l.atoms()[k].location.value()) << "x" << hits[k];
            std::cout << "\n";
        }
    } else {
        throw std::invalid_argument("unknown mechanism '" + mech + "'");
    }
    return 0;
}

int run_check(const std::string& input, const std::string& y_str, const std::string& lottery_path,
              const std::string& axiom_kind, const std::string& alpha_str) {
    io::json j = io::load_json_file(input);
    if (io::is_hybrid_file(j)) {
        HybridProfile h = io::read_hybrid(input);
        HybridAxiom a = hybrid_axiom_from_flag(axiom_kind);
        Loc y = Loc(parse_rational(y_str));
        bool ok = check_hybrid(h, y, a);
        const Rational n(static_cast<long>(h.n()));
        std::cout << (ok ? "PASS" : "FAIL") << ", margins:";
        for (const auto& [c, w] :
             detail::hybrid_groups(h.classic(), a)) {
            Rational slack = (1 - Rational(static_cast<long>(w)) / n) - abs(y.value() - c);
            std::cout << " classic@" << to_decimal(c) << " " << (slack < 0 ? "" : "+")
                      << to_decimal(slack);
        }
        for (const auto& [c, w] :
             detail::hybrid_groups(h.obnoxious(), a)) {
            Rational m = abs(y.value() - c) - Rational(static_cast<long>(w)) / (2 * n);
            std::cout << " obnoxious@" << to_decimal(c) << " " << (m < 0 ? "" : "+")
                      << to_decimal(m);
        }
        std::cout << "\n";
        return ok ? 0 : 2;
    }

    Profile p = Profile(io::locations_from_json(j, "locations"));
    Axiom a = axiom_from_flags(axiom_kind, alpha_str);
    const Rational n(static_cast<long>(p.n()));

    if (!lottery_path.empty()) {
        Lottery l = io::read_lottery(lottery_path);
        bool ok = check_expectation(p, l, a);
        std::cout << (ok ? "PASS" : "FAIL") << ", margins:";
        for (const auto& g : group(p).groups) {
            Rational bound = (a.kind == FairnessKind::Ifs ? Rational(1)
                                                          : Rational(static_cast<long>(g.size))) /
                             (a.alpha * n);
            Rational m = expected_utility(l, Loc(g.center)) - bound;
            std::cout << " group@" << to_decimal(g.center) << " " << (m < 0 ? "" : "+")
                      << to_decimal(m);
        }
        std::cout << "\n";
        return ok ? 0 : 2;
    }

    Loc y = Loc(parse_rational(y_str));
    bool ok = check(p, y, a);
    std::cout << (ok ? "PASS" : "FAIL");
    if (a.kind == FairnessKind::Pf) {
        // report the tightest window
        bool found = false;
        Rational worst_margin, w_lo, w_hi, w_dist, w_bound;
        detail::for_each_pf_window(p, a.alpha, [&](std::size_t i, std::size_t k,
                                                   const Rational& radius) {
            Rational dist = abs(y.value() - p[i]);
            for (std::size_t t = i; t <= k; ++t) {
                Rational d = abs(y.value() - p[t]);
                if (d < dist) dist = std::move(d);
            }
            Rational margin = dist - radius;
            if (!found || margin < worst_margin) {
                found = true;
                worst_margin = margin;
                w_lo = p[i];
                w_hi = p[k];
                w_dist = dist;
                w_bound = radius;
            }
        });
        if (!found)
            std::cout << ", no binding window\n";
        else
            std::cout << ", window [" << to_decimal(w_lo) << "," << to_decimal(w_hi)
                      << "]: " << to_decimal(w_dist) << (worst_margin < 0 ? " < " : " >= ")
                      << to_decimal(w_bound) << "\n";
        return ok ? 0 : 2;
    }
    std::cout << ", margins:";
    if (a.kind == FairnessKind::Ifs) {
        for (const auto& g : group(p).groups) {
            Rational m = abs(y.value() - g.center) - Rational(1) / (a.alpha * n);
            std::cout << " agent@" << to_decimal(g.center) << " " << (m < 0 ? "" : "+")
                      << to_decimal(m);
        }
    } else {
        for (const auto& g : group(p).groups) {
            Rational m = abs(y.value() - g.center) -
                         Rational(static_cast<long>(g.size)) / (a.alpha * n);
            std::cout << " group@" << to_decimal(g.center) << " " << (m < 0 ? "" : "+")
                      << to_decimal(m);
        }
    }
    std::cout << "\n";
    return ok ? 0 : 2;
}

int run_region(const std::string& input, const std::string& axiom_kind,
               const std::string& alpha_str) {
    io::json j = io::load_json_file(input);
    IntervalSet region;
    if (io::is_hybrid_file(j))
        region = hybrid_feasible_region(io::read_hybrid(input), hybrid_axiom_from_flag(axiom_kind));
    else
        region = feasible_region(Profile(io::locations_from_json(j, "locations")),
                                 axiom_from_flags(axiom_kind, alpha_str));
    std::cout << "region = " << interval_set_str(region, false) << "\n";
    std::cout << "decimal ~ " << interval_set_str(region, true) << "\n";
    return 0;
}

MechId mech_id_from_flag(const std::string& s) {
    if (s == "2ifs") return MechId::OptUwIfs2;
    if (s == "2ufs") return MechId::OptUwUfs2;
    throw std::invalid_argument("mechanism must be 2ifs or 2ufs");
}

void print_equilibrium_report(const EquilibriumReport& rep) {
    std::cout << "reports:";
    for (const auto& r : rep.reports) std::cout << " " << to_fraction(r);
    std::cout << "\n";
    std::cout << "gains:";
    for (const auto& g : rep.per_agent_gain) std::cout << " " << to_fraction(g);
    std::cout << "\n";
    Rational max_gain = 0;
    for (const auto& g : rep.per_agent_gain) max_gain = std::max(max_gain, g);
    std::cout << "max_gain = " << show(max_gain) << "\n";
    std::cout << "candidates = " << rep.candidate_count << "\n";
    std::cout << "verified: " << (rep.is_equilibrium ? "true" : "false") << "\n";
}

int run_experiment(const std::string& mode_str, long n_min, long n_max, long samples, long grid,
                   std::uint64_t seed, const std::string& eps_str, int jobs,
                   const std::string& csv_path, const std::string& summary_path, bool exact) {
    SweepConfig cfg;
    cfg.mode = parse_sweep_mode(mode_str);
    cfg.n_min = n_min;
    cfg.n_max = n_max;
    cfg.samples = samples;
    cfg.grid = grid;
    cfg.seed = seed;
    cfg.eps = parse_rational(eps_str);
    cfg.jobs = jobs;
    std::vector<RatioRecord> records = sweep(cfg);

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw ParseError("cannot write '" + csv_path + "'");
        out << "family,n,eps,instance,optimal,constrained,ratio\n";
        for (const auto& r : records) {
            out << r.family << "," << r.instance.n() << ","
                << (r.eps ? to_decimal(*r.eps) : "") << ",";
            bool first = true;
            for (const auto& x : r.instance.locations()) {
                if (!first) out << ";";
                first = false;
                out << to_decimal(x);
            }
            auto val = [&](const Rational& v) { return exact ? to_fraction(v) : to_decimal(v); };
            out << "," << val(r.optimal_value) << "," << val(r.constrained_value) << ",";
            if (r.degenerate)
                out << "degenerate";
            else
                out << val(r.ratio);
            out << "\n";
        }
    }

    const RatioRecord* max_rec = nullptr;
    for (const auto& r : records)
        if (!r.degenerate && (!max_rec || r.ratio > max_rec->ratio)) max_rec = &r;
    Rational bound = sweep_bound(cfg.mode, cfg.n_max);

    io::json summary;
    summary["mode"] = sweep_mode_name(cfg.mode);
    summary["seed"] = seed;
    summary["records"] = records.size();
    summary["max_ratio"] = max_rec ? to_decimal(max_rec->ratio) : "none";
    summary["max_ratio_exact"] = max_rec ? to_fraction(max_rec->ratio) : "none";
    summary["max_family"] = max_rec ? max_rec->family : "none";
    summary["bound"] = to_decimal(bound);
    if (!summary_path.empty()) {
        std::ofstream out(summary_path);
        if (!out) throw ParseError("cannot write '" + summary_path + "'");
        out << summary.dump(2) << "\n";
    }
    std::cout << "mode = " << sweep_mode_name(cfg.mode) << "\n";
    std::cout << "records = " << records.size() << "\n";
    if (max_rec)
        std::cout << "max_ratio = " << show(max_rec->ratio) << " (family " << max_rec->family
                  << ", n=" << max_rec->instance.n() << ")\n";
    std::cout << "bound = " << to_decimal(bound) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact proportional-fairness toolkit for obnoxious facility location on [0,1]"};
    app.require_subcommand(1);

    int default_jobs = 1;
    if (const char* env = std::getenv("OFLP_JOBS")) default_jobs = std::max(1, std::atoi(env));

    // solve
    auto* solve = app.add_subcommand("solve", "run a mechanism on an instance file");
    std::string s_mech, s_input, s_axiom = "ifs", s_alpha = "2";
    long s_samples = 0;
    std::uint64_t s_seed = 0;
    solve->add_option("--mech", s_mech,
                      "opt-uw | opt-ew | opt-uw-fair | opt-ew-fair | solve-2pf | solve-hybrid | "
                      "mechanism2 | rand-ew | rand-2ifs | rand-2ufs")
        ->required();
    solve->add_option("-i,--input", s_input, "instance JSON file")->required();
    solve->add_option("--axiom", s_axiom, "ifs | ufs | pf | hifs | hufs (default ifs)");
    solve->add_option("--alpha", s_alpha, "fairness parameter (default 2)");
    solve->add_option("--sample", s_samples, "draw this many facility samples from a lottery");
    solve->add_option("--seed", s_seed, "seed for --sample");

    // check
    auto* chk = app.add_subcommand("check", "check a location or lottery against an axiom");
    std::string c_input, c_y, c_lottery, c_axiom = "ifs", c_alpha = "2";
    chk->add_option("-i,--input", c_input, "instance JSON file")->required();
    chk->add_option("-y,--location", c_y, "facility location");
    chk->add_option("--lottery", c_lottery, "lottery JSON file (expectation check)");
    chk->add_option("--axiom", c_axiom, "ifs | ufs | pf | hifs | hufs");
    chk->add_option("--alpha", c_alpha, "fairness parameter (default 2)");

    // region
    auto* reg = app.add_subcommand("region", "print the feasible region");
    std::string r_input, r_axiom = "ifs", r_alpha = "2";
    reg->add_option("-i,--input", r_input, "instance JSON file")->required();
    reg->add_option("--axiom", r_axiom, "ifs | ufs | pf | hifs | hufs");
    reg->add_option("--alpha", r_alpha, "fairness parameter (default 2)");

    // equilibrium
    auto* eq = app.add_subcommand("equilibrium", "epsilon-Nash construction and verification");
    eq->require_subcommand(1);
    std::string e_mech = "2ifs", e_eps = "1/100", e_truth, e_reports, e_delta = "1e-6";
    long e_grid = 2001, e_n = 2;
    auto* eqc = eq->add_subcommand("construct", "build a verified equilibrium for a truth profile");
    eqc->add_option("--mech", e_mech, "2ifs | 2ufs");
    eqc->add_option("--eps", e_eps, "tolerance (default 1/100)");
    eqc->add_option("-i,--input", e_truth, "truth profile JSON")->required();
    eqc->add_option("--grid", e_grid, "verifier grid points (default 2001)");
    eqc->add_option("--delta", e_delta, "verifier breakpoint offset (default 1e-6)");
    auto* eqv = eq->add_subcommand("verify", "verify a reported profile");
    eqv->add_option("--mech", e_mech, "2ifs | 2ufs");
    eqv->add_option("--eps", e_eps, "tolerance");
    eqv->add_option("-i,--input", e_truth, "truth profile JSON")->required();
    eqv->add_option("-r,--reports", e_reports, "reports JSON")->required();
    eqv->add_option("--grid", e_grid, "verifier grid points");
    eqv->add_option("--delta", e_delta, "verifier breakpoint offset");
    auto* eqp = eq->add_subcommand("poa-family", "worst-case family and its exact ratio");
    eqp->add_option("--mech", e_mech, "2ifs | 2ufs");
    eqp->add_option("--n", e_n, "number of agents")->required();
    eqp->add_option("--eps", e_eps, "tolerance, must be < 1/n");

    // experiment
    auto* exp = app.add_subcommand("experiment", "ratio sweeps with CSV and JSON reports");
    std::string x_mode, x_eps = "1e-4", x_csv, x_summary;
    long x_nmin = 2, x_nmax = 10, x_samples = 10000, x_grid = 1000;
    std::uint64_t x_seed = 0;
    int x_jobs = default_jobs;
    bool x_exact = false;
    exp->add_option("--mode", x_mode,
                    "pof-uw-ifs2 | pof-uw-ufs2 | pof-ew-ifs2 | pof-ew-ufs2 | ratio-2ifs | "
                    "ratio-2ufs | ratio-mech2 | ratio-rand-ew")
        ->required();
    exp->add_option("--n-min", x_nmin, "smallest n (default 2)");
    exp->add_option("--n-max,--n", x_nmax, "largest n (default 10)");
    exp->add_option("--samples", x_samples, "random instances (default 10000)");
    exp->add_option("--grid", x_grid, "x1 grid for ratio-2ifs (default 1000)");
    exp->add_option("--seed", x_seed, "RNG seed (default 0)");
    exp->add_option("--eps", x_eps, "family epsilon (default 1e-4)");
    exp->add_option("--jobs", x_jobs, "worker threads (default $OFLP_JOBS or 1)");
    exp->add_option("--csv", x_csv, "CSV output path");
    exp->add_option("--summary", x_summary, "JSON summary output path");
    exp->add_flag("--exact", x_exact, "fraction strings in CSV value columns");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return run_solve(s_mech, s_input, s_axiom, s_alpha, s_samples, s_seed);
        if (*chk) {
            if (c_y.empty() && c_lottery.empty())
                throw std::invalid_argument("check needs -y or --lottery");
            return run_check(c_input, c_y, c_lottery, c_axiom, c_alpha);
        }
        if (*reg) return run_region(r_input, r_axiom, r_alpha);
        if (*eq) {
            BestResponseConfig cfg{e_grid, parse_rational(e_delta)};
            if (*eqc) {
                MechId m = mech_id_from_flag(e_mech);
                auto truth = oflp::io::read_locations(e_truth);
                auto reports = construct_equilibrium(m, truth, parse_rational(e_eps));
                print_equilibrium_report(
                    verify_equilibrium(m, truth, reports, parse_rational(e_eps), cfg));
                return 0;
            }
            if (*eqv) {
                MechId m = mech_id_from_flag(e_mech);
                print_equilibrium_report(verify_equilibrium(m, oflp::io::read_locations(e_truth),
                                                            oflp::io::read_locations(e_reports),
                                                            parse_rational(e_eps), cfg));
                return 0;
            }
            if (*eqp) {
                MechId m = mech_id_from_flag(e_mech);
                PoaFamily fam = poa_family(e_n, parse_rational(e_eps));
                std::cout << "truth:";
                for (const auto& t : fam.truth) std::cout << " " << to_fraction(t);
                std::cout << "\nreports:";
                for (const auto& r : fam.reports) std::cout << " " << to_fraction(r);
                std::cout << "\nratio = " << show(fam.ratio) << "\n";
                PoaResult pr = poa_ratio(m, fam.truth, fam.reports);
                std::cout << "computed_ratio = " << (pr.unbounded ? "unbounded" : show(pr.ratio))
                          << "\n";
                return 0;
            }
        }
        if (*exp)
            return run_experiment(x_mode, x_nmin, x_nmax, x_samples, x_grid, x_seed, x_eps, x_jobs,
                                  x_csv, x_summary, x_exact);
    } catch (const oflp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const oflp::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
