#include "doctest.h"

#include "errors.hpp"
#include "system.hpp"
#include "test_helpers.hpp"

using namespace naifs;
using namespace naifs::testing;

namespace {

GeneratorFamily fam_of(long long a) { return {affine_mod1(a)}; }

} // namespace

TEST_CASE("family_at resolves the eventually periodic schedule") {
    SUBCASE("constant schedule") {
        NaifsSystem sys(circle_space(), {}, {fam_of(5)});
        CHECK(sys.family_at(7)[0].a == 5);
    }
    SUBCASE("preamble lookup and period arithmetic") {
        // preamble [A], period [B, C]; unrolled: A B C B C B C ...
        NaifsSystem sys(circle_space(), {fam_of(2)}, {fam_of(3), fam_of(4)});
        CHECK(sys.family_at(1)[0].a == 2); // A
        CHECK(sys.family_at(2)[0].a == 3); // B
        CHECK(sys.family_at(3)[0].a == 4); // C
        CHECK(sys.family_at(4)[0].a == 3); // B again
        CHECK(sys.family_at(5)[0].a == 4);

        // periodicity beyond the preamble, exhaustively up to preamble + 3 periods
        for (std::size_t j = 2; j + 2 <= 1 + 3 * 2; ++j)
            CHECK(sys.family_at(j)[0].a == sys.family_at(j + 2)[0].a);
    }
}

TEST_CASE("apply_map evaluates generators") {
    NaifsSystem sys = circle_system({2});
    CHECK(sys.apply_map(1, 0, pt(sys, 0.3)).x[0] == doctest::Approx(0.6));
    CHECK(sys.apply_map(1, 0, pt(sys, 0.7)).x[0] == doctest::Approx(0.4)); // mod-1 wrap
    CHECK_THROWS_AS((void)sys.apply_map(1, 3, pt(sys, 0.5)), RuntimeModuleError);
}

TEST_CASE("shift drops the first symbol and pads") {
    NaifsSystem sys = two_shift(6);
    Point p = spt(sys, "011010");
    Point q = sys.apply_map(1, 0, p);
    CHECK(q.sym == "110100");
}

TEST_CASE("orbit follows the schedule") {
    SUBCASE("empty word is the identity") {
        NaifsSystem sys = circle_system({2});
        Word w{1, {}};
        auto orb = sys.orbit(pt(sys, 0.37), w);
        REQUIRE(orb.size() == 1);
        CHECK(orb[0].x[0] == doctest::Approx(0.37));
    }
    SUBCASE("doubling twice") {
        NaifsSystem sys = circle_system({2});
        Word w{1, {0, 0}};
        auto orb = sys.orbit(pt(sys, 0.1), w);
        REQUIRE(orb.size() == 3);
        CHECK(orb[1].x[0] == doctest::Approx(0.2));
        CHECK(orb[2].x[0] == doctest::Approx(0.4));
    }
    SUBCASE("alternating schedule from start 1") {
        NaifsSystem sys = alternating_circle_system(2, 3);
        Word w{1, {0, 0}};
        auto orb = sys.orbit(pt(sys, 0.1), w);
        REQUIRE(orb.size() == 3);
        CHECK(orb[1].x[0] == doctest::Approx(0.2));  // E_2 first
        CHECK(orb[2].x[0] == doctest::Approx(0.6));  // then E_3
    }
}

TEST_CASE("orbit points stay in the state space") {
    NaifsSystem sys = alternating_circle_system(2, 3);
    for (int k = 0; k < 100; ++k) {
        Point x = sys.random_point(3, 9, k);
        Word w{1 + static_cast<std::size_t>(k % 3), std::vector<std::size_t>(6, 0)};
        for (const Point& p : sys.orbit(x, w)) CHECK(sys.space().contains(p));
    }
}

TEST_CASE("declared lipschitz below the analytic constant is rejected") {
    MapSpec bad = affine_mod1(3);
    bad.lipschitz = 1.5; // analytic constant is 3
    CHECK_THROWS_AS(NaifsSystem(circle_space(), {}, {{bad}}), ValidationError);
}

TEST_CASE("system validation accepts the bundled generators") {
    CHECK_NOTHROW(circle_system({2, 3}).validate());
    CHECK_NOTHROW(two_shift(12).validate());
    CHECK_NOTHROW(doubling_on_interval().validate());
}

TEST_CASE("torus contractions stay inside the box") {
    StateSpace s;
    s.kind = SpaceKind::Torus;
    s.dim = 2;
    MapSpec m;
    m.kind = MapKind::AffineContraction;
    m.name = "c1";
    m.matrix = {{0.4, 0.1}, {0.0, 0.3}};
    m.offset = {0.2, 0.3};
    MapSpec m2 = m;
    m2.name = "c2";
    m2.offset = {0.05, 0.1};
    NaifsSystem sys(s, {}, {{m, m2}});
    CHECK_NOTHROW(sys.validate());
    CHECK(sys.max_lipschitz() == doctest::Approx(0.5)); // max row sum

    Point x = s.point_from_coords({0.5, 0.5});
    Point y = sys.apply_map(1, 0, x);
    CHECK(y.x[0] == doctest::Approx(0.4 * 0.5 + 0.1 * 0.5 + 0.2));
    CHECK(y.x[1] == doctest::Approx(0.3 * 0.5 + 0.3));

    SUBCASE("expansive matrices are rejected") {
        MapSpec bad = m;
        bad.matrix = {{1.2, 0.0}, {0.0, 0.5}};
        CHECK_THROWS_AS(NaifsSystem(s, {}, {{bad}}), ValidationError);
    }
    SUBCASE("maps escaping the box are rejected") {
        MapSpec bad = m;
        bad.offset = {0.9, 0.9}; // 0.4+0.1+0.9 > 1
        CHECK_THROWS_AS(NaifsSystem(s, {}, {{bad}}), ValidationError);
    }
}
