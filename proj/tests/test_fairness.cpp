#include "oflp/analysis.hpp"
#include "oflp/fairness.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace oflp;

namespace {
Rational R(const char* s) { return parse_rational(s); }
Profile P(std::vector<Rational> v) { return Profile(std::move(v)); }

Profile two_groups(const char* a, std::size_t ka, const char* b, std::size_t kb) {
    std::vector<Rational> v(ka, R(a));
    v.insert(v.end(), kb, R(b));
    return Profile(std::move(v));
}
const Profile kTwoFive = two_groups("0.1", 2, "0.8", 5);
const Profile kSevenThree = two_groups("0.35", 7, "0.55", 3);

Axiom random_axiom(SeededGen& gen) {
    switch (gen.next_long(0, 2)) {
    case 0: return Axiom::ifs();
    case 1: return Axiom::ufs();
    default: return Axiom::pf();
    }
}
} // namespace

TEST_CASE("axiom constructors validate alpha") {
    CHECK_THROWS_AS(Axiom::ifs(Rational(0)), std::domain_error);
    CHECK_THROWS_AS(Axiom::pf(Rational(-1)), std::domain_error);
    CHECK(Axiom::ufs().alpha == 2);
}

TEST_CASE("checker examples") {
    CHECK(check(kTwoFive, Loc(R("0.3")), Axiom::ufs()));
    CHECK(check(kSevenThree, Loc(R("0.71")), Axiom::ufs()));
    CHECK_FALSE(check(kSevenThree, Loc(R("0.71")), Axiom::pf()));
    CHECK(check(P({R("0.25"), R("0.75")}), Loc(R("0.5")), Axiom::ifs()));
}

TEST_CASE("share bounds are met with exact equality") {
    // boundary of a forbidden ball is feasible: distance exactly 1/(2n)
    Profile p({R("0.5")});
    CHECK(check(p, Loc(0), Axiom::ifs()));     // distance 1/2 = 1/(2*1)
    CHECK_FALSE(check(p, Loc(R("0.25")), Axiom::ifs()));
    Profile q({R("0"), R("0.5")});
    CHECK(check(q, Loc(R("0.25")), Axiom::ifs())); // distance exactly 1/4
}

TEST_CASE("feasible region examples") {
    IntervalSet r = feasible_region(kTwoFive, Axiom::ufs());
    REQUIRE(r.intervals().size() == 1);
    CHECK(r.intervals()[0] == Interval{Rational(17, 70), Rational(31, 70)});

    CHECK(feasible_region(P({R("0.25"), R("0.75")}), Axiom::ifs(R("1.9"))).empty());

    IntervalSet s = feasible_region(P({R("0.5")}), Axiom::ufs());
    REQUIRE(s.intervals().size() == 2);
    CHECK(s.intervals()[0] == Interval{Rational(0), Rational(0)});
    CHECK(s.intervals()[1] == Interval{Rational(1), Rational(1)});
}

TEST_CASE("region and checker agree on random triples") {
    SeededGen gen(21);
    for (int t = 0; t < 4000; ++t) {
        Profile p = gen.next_profile(1, 10);
        Axiom a = random_axiom(gen);
        IntervalSet region = feasible_region(p, a);
        Rational y = gen.next_location();
        CHECK(region.contains(y) == check(p, Loc(y), a));
        // endpoints sit exactly on ball boundaries and must be feasible
        for (const auto& e : region.endpoints()) CHECK(check(p, Loc(e), a));
    }
}

TEST_CASE("feasible regions are non-empty at alpha = 2") {
    SeededGen gen(22);
    for (int t = 0; t < 10000; ++t) {
        Profile p = gen.next_profile(1, 20);
        CHECK_FALSE(feasible_region(p, Axiom::ifs()).empty());
        CHECK_FALSE(feasible_region(p, Axiom::ufs()).empty());
    }
    SeededGen gen2(23);
    for (int t = 0; t < 2000; ++t)
        CHECK_FALSE(feasible_region(gen2.next_profile(1, 12), Axiom::pf()).empty());
}

TEST_CASE("proportional fairness implies unanimous implies individual") {
    SeededGen gen(24);
    for (int t = 0; t < 4000; ++t) {
        Profile p = gen.next_profile(1, 10);
        Rational alpha(gen.next_long(1, 40), 10);
        Loc y(gen.next_location());
        if (check(p, y, Axiom::pf(alpha))) CHECK(check(p, y, Axiom::ufs(alpha)));
        if (check(p, y, Axiom::ufs(alpha))) CHECK(check(p, y, Axiom::ifs(alpha)));
    }
}

TEST_CASE("unanimous fairness does not imply proportional fairness") {
    CHECK(check(kSevenThree, Loc(R("0.71")), Axiom::ufs()));
    CHECK_FALSE(check(kSevenThree, Loc(R("0.71")), Axiom::pf()));
}

TEST_CASE("forbidden length never exceeds the interval") {
    SeededGen gen(25);
    for (int t = 0; t < 2000; ++t) {
        Profile p = gen.next_profile(1, 20);
        Rational feasible_len = feasible_region(p, Axiom::ufs()).total_length();
        CHECK(feasible_len >= 0);
        CHECK(1 - feasible_len <= 1);
    }
}

TEST_CASE("expectation checker examples") {
    CHECK(check_expectation(P({R("0.3"), R("0.7")}), Lottery::endpoints(Rational(1, 2)),
                            Axiom::ufs()));
    Lottery skew({{Loc(0), Rational(5, 6)}, {Loc(1), Rational(1, 6)}});
    CHECK(check_expectation(P({R("0"), R("1"), R("1")}), skew, Axiom::ifs()));
    CHECK_FALSE(check_expectation(P({R("0"), R("0")}), Lottery::point_mass(Loc(0)), Axiom::ifs()));
    CHECK_THROWS_AS(check_expectation(P({R("0.5")}), Lottery::point_mass(Loc(0)), Axiom::pf()),
                    std::invalid_argument);
}

TEST_CASE("hybrid feasible region examples") {
    HybridProfile both2(std::vector<Rational>(2, Rational(0)), std::vector<Rational>(2, Rational(0)));
    IntervalSet r = hybrid_feasible_region(both2, HybridAxiom::Hufs);
    REQUIRE(r.intervals().size() == 1);
    CHECK(r.intervals()[0] == Interval{Rational(1, 4), Rational(1, 2)});

    HybridProfile mid({R("0.5")}, {R("0.5")});
    IntervalSet s = hybrid_feasible_region(mid, HybridAxiom::Hufs);
    REQUIRE(s.intervals().size() == 2);
    CHECK(s.intervals()[0] == Interval{Rational(0), Rational(1, 4)});
    CHECK(s.intervals()[1] == Interval{Rational(3, 4), Rational(1)});

    HybridProfile lone({}, {R("0.5")});
    IntervalSet t = hybrid_feasible_region(lone, HybridAxiom::Hufs);
    REQUIRE(t.intervals().size() == 2);
    CHECK(t.intervals()[0] == Interval{Rational(0), Rational(0)});
    CHECK(t.intervals()[1] == Interval{Rational(1), Rational(1)});
}

TEST_CASE("hybrid checker examples") {
    HybridProfile mid({R("0.5")}, {R("0.5")});
    CHECK(check_hybrid(mid, Loc(0), HybridAxiom::Hufs));
    CHECK_FALSE(check_hybrid(mid, Loc(R("0.4")), HybridAxiom::Hufs));

    HybridProfile classic_only({R("0.2")}, {});
    CHECK(check_hybrid(classic_only, Loc(R("0.2")), HybridAxiom::Hufs));
    CHECK_FALSE(check_hybrid(classic_only, Loc(R("0.3")), HybridAxiom::Hufs));
}

TEST_CASE("hybrid region matches hybrid checker and exists under H-UFS") {
    SeededGen gen(26);
    for (int t = 0; t < 10000; ++t) {
        long nc = gen.next_long(0, 6), no = gen.next_long(nc == 0 ? 1 : 0, 6);
        HybridProfile h(gen.next_locations(nc), gen.next_locations(no));
        IntervalSet region = hybrid_feasible_region(h, HybridAxiom::Hufs);
        CHECK_FALSE(region.empty());
        Rational y = gen.next_location();
        CHECK(region.contains(y) == check_hybrid(h, Loc(y), HybridAxiom::Hufs));
    }
    SeededGen gen2(27);
    for (int t = 0; t < 2000; ++t) {
        long nc = gen2.next_long(0, 5), no = gen2.next_long(nc == 0 ? 1 : 0, 5);
        HybridProfile h(gen2.next_locations(nc), gen2.next_locations(no));
        IntervalSet region = hybrid_feasible_region(h, HybridAxiom::Hifs);
        Rational y = gen2.next_location();
        CHECK(region.contains(y) == check_hybrid(h, Loc(y), HybridAxiom::Hifs));
    }
}
