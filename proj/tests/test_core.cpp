#include "oflp/analysis.hpp"
#include "oflp/core.hpp"
#include "oflp/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace oflp;

namespace {
Rational R(const char* s) { return parse_rational(s); }
Profile P(std::initializer_list<const char*> xs) {
    std::vector<Rational> v;
    for (const char* s : xs) v.push_back(R(s));
    return Profile(std::move(v));
}
const Profile kTwoFive = P({"0.1", "0.1", "0.8", "0.8", "0.8", "0.8", "0.8"});
} // namespace

TEST_CASE("rational parsing is exact") {
    CHECK(R("0.1") == Rational(1, 10));
    CHECK(R("1/2") == Rational(1, 2));
    CHECK(R("1e-4") == Rational(1, 10000));
    CHECK(R(".5") == Rational(1, 2));
    CHECK(R("-3") == Rational(-3));
    CHECK(R("1.5e2") == Rational(150));
    CHECK(R("+2/4") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("decimal rendering truncates at 12 significant digits") {
    CHECK(to_decimal(Rational(17, 70)) == "0.242857142857");
    CHECK(to_decimal(Rational(43, 14)) == "3.07142857142");
    CHECK(to_decimal(Rational(1, 2)) == "0.5");
    CHECK(to_decimal(Rational(0)) == "0");
    CHECK(to_decimal(Rational(2)) == "2");
    CHECK(to_decimal(Rational(-1, 3)) == "-0.333333333333");
    CHECK(to_fraction(Rational(45, 69)) == "15/23");
}

TEST_CASE("rational round-trips through its own renderings") {
    SeededGen gen(11);
    for (int t = 0; t < 200; ++t) {
        Rational r(gen.next_long(0, 100000), gen.next_long(1, 100000));
        CHECK(parse_rational(to_fraction(r)) == r);
    }
}

TEST_CASE("locations live on the unit interval") {
    CHECK_THROWS_AS(Loc(R("1.0001")), std::domain_error);
    CHECK_THROWS_AS(Loc(R("-0.1")), std::domain_error);
    CHECK(Loc(R("1")).value() == 1);
}

TEST_CASE("utility is the exact distance") {
    CHECK(utility(Loc(R("0.3")), Loc(R("0.1"))) == R("0.2"));
    CHECK(utility(Loc(R("0.45")), Loc(R("0.8"))) == R("0.35"));
    CHECK(utility(Loc(R("0.5")), Loc(R("0.5"))) == 0);
}

TEST_CASE("utility is symmetric and nonnegative") {
    SeededGen gen(1);
    for (int t = 0; t < 500; ++t) {
        Loc a(gen.next_location()), b(gen.next_location());
        Rational u = utility(a, b);
        CHECK(u == utility(b, a));
        CHECK(u >= 0);
        CHECK(u <= 1);
    }
}

TEST_CASE("profiles sort their locations and reject bad input") {
    Profile p({R("0.8"), R("0.1")});
    CHECK(p[0] == R("0.1"));
    CHECK(p[1] == R("0.8"));
    CHECK_THROWS_AS(Profile(std::vector<Rational>{}), std::invalid_argument);
    CHECK_THROWS_AS(Profile({R("2")}), std::domain_error);
}

TEST_CASE("utilitarian welfare sums distances") {
    CHECK(utilitarian_welfare(kTwoFive, Loc(0)) == R("4.2"));
    CHECK(utilitarian_welfare(P({"0.5"}), Loc(1)) == R("0.5"));
    CHECK(utilitarian_welfare(P({"0", "1", "1"}), Loc(0)) == 2);
}

TEST_CASE("egalitarian welfare takes the worst agent") {
    CHECK(egalitarian_welfare(kTwoFive, Loc(R("0.45"))) == R("0.35"));
    CHECK(egalitarian_welfare(P({"0", "1"}), Loc(R("0.5"))) == R("0.5"));
    CHECK(egalitarian_welfare(P({"0.2", "0.2"}), Loc(0)) == R("0.2"));
}

TEST_CASE("utilitarian welfare is convex in the facility") {
    SeededGen gen(2);
    for (int t = 0; t < 300; ++t) {
        Profile p = gen.next_profile(1, 8);
        Rational y1 = gen.next_location(), y2 = gen.next_location();
        if (y2 < y1) std::swap(y1, y2);
        Rational lambda(gen.next_long(0, 100), 100);
        Loc mid(lambda * y1 + (1 - lambda) * y2);
        CHECK(utilitarian_welfare(p, mid) <=
              lambda * utilitarian_welfare(p, Loc(y1)) +
                  (1 - lambda) * utilitarian_welfare(p, Loc(y2)));
    }
}

TEST_CASE("utilitarian welfare peaks at an interval endpoint") {
    SeededGen gen(3);
    for (int t = 0; t < 100; ++t) {
        Profile p = gen.next_profile(1, 8);
        Rational cap = std::max(utilitarian_welfare(p, Loc(0)), utilitarian_welfare(p, Loc(1)));
        for (long g = 0; g <= 50; ++g)
            CHECK(utilitarian_welfare(p, Loc(Rational(g, 50))) <= cap);
    }
}

TEST_CASE("expected utility of a lottery") {
    Lottery half = Lottery::endpoints(Rational(1, 2));
    CHECK(expected_utility(half, Loc(R("0.3"))) == Rational(1, 2));
    CHECK(expected_utility(Lottery::point_mass(Loc(0)), Loc(R("0.25"))) == R("0.25"));
    Lottery skew({{Loc(0), Rational(5, 6)}, {Loc(1), Rational(1, 6)}});
    CHECK(expected_utility(skew, Loc(0)) == Rational(1, 6));
}

TEST_CASE("lottery canonicalization") {
    Lottery l({{Loc(R("0.5")), Rational(1, 2)},
               {Loc(R("0.5")), Rational(1, 4)},
               {Loc(1), Rational(1, 4)},
               {Loc(0), Rational(0)}});
    REQUIRE(l.atoms().size() == 2);
    CHECK(l.atoms()[0].location == Loc(R("0.5")));
    CHECK(l.atoms()[0].probability == Rational(3, 4));
    CHECK(l.probability_at(Loc(0)) == 0);
    CHECK_THROWS_AS(Lottery({{Loc(0), Rational(1, 2)}}), std::domain_error);
    CHECK_THROWS_AS(Lottery({{Loc(0), Rational(3, 2)}, {Loc(1), Rational(-1, 2)}}),
                    std::domain_error);
}

TEST_CASE("grouping is a lossless run-length encoding") {
    GroupedProfile g = group(kTwoFive);
    REQUIRE(g.groups.size() == 2);
    CHECK(g.groups[0].center == R("0.1"));
    CHECK(g.groups[0].size == 2);
    CHECK(g.groups[1].center == R("0.8"));
    CHECK(g.groups[1].size == 5);
    CHECK(g.total == 7);

    CHECK(group(P({"0.5"})).groups.size() == 1);
    CHECK(group(P({"0", "0", "0"})).groups[0].size == 3);

    SeededGen gen(4);
    for (int t = 0; t < 200; ++t) {
        Profile p = gen.next_profile(1, 12);
        GroupedProfile gg = group(p);
        std::vector<Rational> rebuilt;
        std::size_t total = 0;
        for (const auto& grp : gg.groups) {
            total += grp.size;
            for (std::size_t i = 0; i < grp.size; ++i) rebuilt.push_back(grp.center);
        }
        CHECK(total == p.n());
        CHECK(rebuilt == p.locations());
    }
}

TEST_CASE("sqrt enclosure brackets the true root") {
    auto [lo, hi] = sqrt_enclosure(Rational(2), 50);
    CHECK(lo * lo <= 2);
    CHECK(hi * hi > 2);
    CHECK(hi - lo <= Rational(2, BigInt(boost::multiprecision::pow(BigInt(10), 50))));
}
