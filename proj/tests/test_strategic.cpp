#include "oflp/analysis.hpp"
#include "oflp/strategic.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace oflp;

namespace {
Rational R(const char* s) { return parse_rational(s); }

std::vector<Rational> V(std::initializer_list<const char*> xs) {
    std::vector<Rational> v;
    for (const char* s : xs) v.push_back(R(s));
    return v;
}
} // namespace

TEST_CASE("facility map for reported profiles") {
    CHECK(apply_mechanism(MechId::OptUwIfs2, V({"1", "1"})) == Loc(0));
    CHECK(apply_mechanism(MechId::OptUwUfs2, V({"1", "1"})) == Loc(0));
    // one report nudged below its share boundary drags the facility with it
    CHECK(apply_mechanism(MechId::OptUwIfs2, V({"0.2", "1"})) == Loc(R("0.45")));
}

TEST_CASE("response engines agree with the public optimizer") {
    SeededGen gen(51);
    for (int t = 0; t < 800; ++t) {
        long n = gen.next_long(1, 8);
        std::vector<Rational> reports = gen.next_locations(n, 200); // coarse grid: collisions likely
        for (bool unanimous : {false, true}) {
            MechId m = unanimous ? MechId::OptUwUfs2 : MechId::OptUwIfs2;
            Loc expected = apply_mechanism(m, reports);

            std::vector<Rational> others(reports.begin(), reports.end() - 1);
            std::sort(others.begin(), others.end());
            detail::ResponseEngine<Rational> rational_engine(
                others, unanimous, Rational(1, 2 * n), Rational(1));
            CHECK(rational_engine.facility_for(reports.back()) == expected.value());

            BigInt den = 2 * n;
            for (const auto& r : reports) den = detail::lcm_big(den, denominator(r));
            std::vector<std::int64_t> others_s;
            for (const auto& r : others)
                others_s.push_back(detail::scale_to(r, den).convert_to<std::int64_t>());
            const std::int64_t d = den.convert_to<std::int64_t>();
            detail::ResponseEngine<std::int64_t> scaled_engine(others_s, unanimous,
                                                               d / (2 * n), d);
            std::int64_t y =
                scaled_engine.facility_for(detail::scale_to(reports.back(), den).convert_to<std::int64_t>());
            CHECK(Rational(y, d) == expected.value());
        }
    }
}

TEST_CASE("best response examples") {
    // sup gain 0.1 is unattained; the candidate at 1/4 - delta realizes
    // 0.1 - delta of it
    BestResponse br = best_response(MechId::OptUwIfs2, R("0.2"), V({"1", "1"}), 0);
    CHECK(br.gain == R("0.1") - R("1e-6"));
    CHECK(br.gain < R("0.1"));
    CHECK(br.gain >= R("0.1") - R("2e-6"));

    CHECK(best_response(MechId::OptUwIfs2, R("0.3"), V({"1", "1"}), 0).gain == 0);
    CHECK(best_response(MechId::OptUwIfs2, R("0.5"), V({"0.5"}), 0).gain == 0);
    CHECK_THROWS_AS(best_response(MechId::OptUwIfs2, R("0.5"), V({"0.5"}), 3),
                    std::out_of_range);
}

TEST_CASE("found gain never shrinks when the grid is refined") {
    SeededGen gen(52);
    for (int t = 0; t < 120; ++t) {
        long n = gen.next_long(2, 6);
        std::vector<Rational> truth = gen.next_locations(n);
        std::vector<Rational> reports = gen.next_locations(n);
        std::size_t i = static_cast<std::size_t>(gen.next_long(0, n - 1));
        MechId m = gen.next_long(0, 1) == 0 ? MechId::OptUwIfs2 : MechId::OptUwUfs2;
        Rational coarse = best_response(m, truth[i], reports, i, {101, Rational(1, 1000000)}).gain;
        Rational fine = best_response(m, truth[i], reports, i, {201, Rational(1, 1000000)}).gain;
        CHECK(coarse <= fine);
    }
}

TEST_CASE("equilibrium verification examples") {
    CHECK(verify_equilibrium(MechId::OptUwIfs2, V({"0.2", "0.2"}), V({"1", "1"}), R("0.1"))
              .is_equilibrium);
    CHECK(verify_equilibrium(MechId::OptUwIfs2, V({"0.3", "0.6"}), V({"1", "1"}), Rational(0))
              .is_equilibrium);

    std::vector<Rational> near_quarters{R("0.25") - R("1e-3"), R("0.75") + R("1e-3")};
    CHECK_FALSE(verify_equilibrium(MechId::OptUwIfs2, near_quarters, near_quarters, R("1e-6"))
                    .is_equilibrium);

    CHECK_THROWS_AS(verify_equilibrium(MechId::OptUwIfs2, V({"0.5"}), V({"0.5", "1"}), Rational(0)),
                    std::invalid_argument);
}

TEST_CASE("equilibrium construction examples") {
    CHECK(construct_equilibrium(MechId::OptUwIfs2, V({"0.3", "0.6"}), R("0.01")) ==
          V({"1", "1"}));
    CHECK(construct_equilibrium(MechId::OptUwIfs2, V({"0.2", "0.2"}), R("0.01")) ==
          V({"0", "0"}));

    // staircase below, endpoint reports above; step = min(eps, 1/(4n^2))/2
    std::vector<Rational> r =
        construct_equilibrium(MechId::OptUwIfs2, V({"0.1", "0.1", "0.9", "0.9"}), R("0.01"));
    Rational step = Rational(1, 2800);
    CHECK(r == std::vector<Rational>{Rational(1, 8) - step, Rational(3, 8) - 2 * step,
                                     Rational(1), Rational(1)});

    CHECK_THROWS_AS(construct_equilibrium(MechId::OptUwIfs2, V({"0.5"}), Rational(0)),
                    std::invalid_argument);
}

TEST_CASE("construction is agent-indexed, not sorted") {
    std::vector<Rational> r =
        construct_equilibrium(MechId::OptUwIfs2, V({"0.6", "0.3"}), R("0.01"));
    CHECK(r == V({"1", "1"}));
    std::vector<Rational> swapped =
        construct_equilibrium(MechId::OptUwIfs2, V({"0.9", "0.1", "0.9", "0.1"}), R("0.01"));
    Rational step = Rational(1, 2800);
    CHECK(swapped == std::vector<Rational>{Rational(1), Rational(1, 8) - step, Rational(1),
                                           Rational(3, 8) - 2 * step});
}

TEST_CASE("constructed equilibria verify across sizes and mechanisms") {
    SeededGen gen(53);
    BestResponseConfig cfg{301, Rational(1, 1000000)};
    for (long n = 1; n <= 8; ++n) {
        for (int t = 0; t < 12; ++t) {
            std::vector<Rational> truth = gen.next_locations(n);
            for (MechId m : {MechId::OptUwIfs2, MechId::OptUwUfs2}) {
                std::vector<Rational> reports = construct_equilibrium(m, truth, R("0.01"));
                EquilibriumReport rep = verify_equilibrium(m, truth, reports, R("0.01"), cfg);
                INFO("n=" << n << " t=" << t);
                CHECK(rep.is_equilibrium);
            }
        }
    }
}

TEST_CASE("price of anarchy ratio examples") {
    PoaResult r = poa_ratio(MechId::OptUwIfs2, V({"0.2", "0.2"}), V({"1", "1"}));
    CHECK_FALSE(r.unbounded);
    CHECK(r.ratio == 4);

    PoaResult same = poa_ratio(MechId::OptUwIfs2, V({"0.3", "0.6"}), V({"0.3", "0.6"}));
    CHECK(same.ratio == 1);

    CHECK(poa_ratio(MechId::OptUwIfs2, V({"0", "0"}), V({"1", "1"})).unbounded);
}

TEST_CASE("worst-case family and its exact ratio") {
    PoaFamily fam = poa_family(2, R("0.1"));
    CHECK(fam.truth == std::vector<Rational>(2, R("0.2")));
    CHECK(fam.reports == std::vector<Rational>(2, Rational(1)));
    CHECK(fam.ratio == 4);
    CHECK(poa_ratio(MechId::OptUwIfs2, fam.truth, fam.reports).ratio == fam.ratio);
    CHECK(poa_ratio(MechId::OptUwUfs2, fam.truth, fam.reports).ratio == fam.ratio);

    CHECK(poa_family(3, R("0.01")).ratio == Rational(503, 97));
    CHECK_THROWS_AS(poa_family(2, R("0.5")), std::invalid_argument);
    CHECK_THROWS_AS(poa_family(1, R("0.1")), std::invalid_argument);
}

TEST_CASE("family reports verify as an equilibrium at their epsilon") {
    for (long n : {2L, 3L, 5L}) {
        PoaFamily fam = poa_family(n, Rational(1, 2 * n));
        for (MechId m : {MechId::OptUwIfs2, MechId::OptUwUfs2})
            CHECK(verify_equilibrium(m, fam.truth, fam.reports, Rational(1, 2 * n),
                                     {501, Rational(1, 1000000)})
                      .is_equilibrium);
    }
}
