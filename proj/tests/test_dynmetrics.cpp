#include "doctest.h"

#include <cmath>

#include "dynmetrics.hpp"
#include "rng.hpp"
#include "test_helpers.hpp"

using namespace naifs;
using namespace naifs::testing;

TEST_CASE("d_n basics on the doubling circle") {
    NaifsSystem sys = circle_system({2});
    DynMetrics dm(sys);
    Point x = pt(sys, 0.1), y = pt(sys, 0.12);

    CHECK(dm.d_n(x, y, 0).value == doctest::Approx(0.02)); // n = 0 is the base distance
    CHECK(dm.d_n(x, y, 2).value == doctest::Approx(0.08)); // max(0.02, 0.04, 0.08)
    CHECK(dm.d_n(x, y, 2).mode == EvalMode::Exact);
}

TEST_CASE("d_n maximizes over the word tree") {
    NaifsSystem sys = circle_system({2, 3});
    DynMetrics dm(sys);
    Point x = pt(sys, 0.1), y = pt(sys, 0.11);
    // one-letter words: E_2 gives 0.02, E_3 gives 0.03
    CHECK(dm.d_n(x, y, 1).value == doctest::Approx(0.03));
}

TEST_CASE("d_n is monotone in n") {
    NaifsSystem sys = circle_system({2, 3});
    DynMetrics dm(sys);
    for (int k = 0; k < 40; ++k) {
        Point x = sys.random_point(21, 4, 2 * k);
        Point y = sys.random_point(21, 4, 2 * k + 1);
        double prev = 0.0;
        for (int n = 0; n <= 6; ++n) {
            const double v = dm.d_n(x, y, n).value;
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("d_n_star maximizes over start classes") {
    NaifsSystem sys = alternating_circle_system(2, 3);
    DynMetrics dm(sys);
    Point x = pt(sys, 0.1), y = pt(sys, 0.11);
    // start 1 leads with E_2 (0.02), start 2 leads with E_3 (0.03)
    CHECK(dm.d_n_star(x, y, 1).value == doctest::Approx(0.03));
    CHECK(dm.d_n_star(x, y, 0).value == doctest::Approx(0.01));
    CHECK(dm.d_n_star(x, y, 1).value >= dm.d_n(x, y, 1).value);
}

TEST_CASE("d_n_star equals d_n on constant schedules") {
    NaifsSystem sys = circle_system({2, 3});
    DynMetrics dm(sys);
    for (int k = 0; k < 30; ++k) {
        Point x = sys.random_point(31, 5, 2 * k);
        Point y = sys.random_point(31, 5, 2 * k + 1);
        for (int n : {0, 2, 4})
            CHECK(dm.d_n_star(x, y, n).value == doctest::Approx(dm.d_n(x, y, n).value));
    }
}

TEST_CASE("exact search matches naive enumeration") {
    const NaifsSystem systems[] = {circle_system({2, 3}), alternating_circle_system(2, 3),
                                   two_shift(18)};
    for (const NaifsSystem& sys : systems) {
        DynMetrics dm(sys);
        for (int k = 0; k < 25; ++k) {
            Point x = sys.random_point(77, 6, 2 * k);
            Point y = sys.random_point(77, 6, 2 * k + 1);
            for (int n : {1, 3, 5, 8}) {
                CHECK(dm.d_n(x, y, n).value ==
                      doctest::Approx(naive_d_n(sys, 1, x, y, n)).epsilon(1e-12));
                CHECK(dm.d_n_star(x, y, n).value ==
                      doctest::Approx(naive_d_n_star(sys, x, y, n)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("d_n reduces to the free semigroup metric on constant schedules") {
    // semigroup words of length <= n are exactly the word-tree prefixes
    NaifsSystem sys = circle_system({2, 3});
    DynMetrics dm(sys);
    for (int k = 0; k < 15; ++k) {
        Point x = sys.random_point(99, 7, 2 * k);
        Point y = sys.random_point(99, 7, 2 * k + 1);
        for (int n : {1, 2, 4, 6}) {
            double semigroup = 0.0;
            // enumerate all compositions of exactly t maps for every t <= n
            for (int t = 0; t <= n; ++t) {
                std::vector<std::size_t> word;
                enumerate_words(sys, 1, t, word, [&](const std::vector<std::size_t>& w) {
                    Point a = x, b = y;
                    for (int j = 0; j < t; ++j) {
                        a = sys.apply_map(1, w[j], a);
                        b = sys.apply_map(1, w[j], b);
                    }
                    semigroup = std::max(semigroup, sys.space().distance(a, b));
                });
            }
            CHECK(dm.d_n(x, y, n).value == doctest::Approx(semigroup).epsilon(1e-12));
        }
    }
}

TEST_CASE("bowen ball membership") {
    NaifsSystem sys = circle_system({2});
    DynMetrics dm(sys);
    Point c = pt(sys, 0.1);
    CHECK(dm.bowen_ball_contains(c, c, 3, 0.01).inside);
    CHECK(!dm.bowen_ball_contains(c, pt(sys, 0.12), 2, 0.05).inside); // d_2 = 0.08
    CHECK(dm.bowen_ball_contains(c, pt(sys, 0.12), 2, 0.1).inside);   // 0.08 < 0.1
}

TEST_CASE("birkhoff_max basics") {
    SUBCASE("constant potential sums to n*c") {
        NaifsSystem sys = circle_system({2, 3});
        DynMetrics dm(sys);
        Potential phi = Potential::constant(0.75);
        CHECK(dm.birkhoff_max(phi, pt(sys, 0.3), 4).value == doctest::Approx(3.0));
    }
    SUBCASE("identity potential along the doubling orbit") {
        NaifsSystem sys = doubling_on_interval();
        DynMetrics dm(sys);
        Potential phi = Potential::affine({1.0}, 0.0);
        CHECK(dm.birkhoff_max(phi, pt(sys, 0.1), 2).value == doctest::Approx(0.3)); // 0.1 + 0.2
    }
    SUBCASE("maximum over words matches enumeration") {
        NaifsSystem sys = NaifsSystem(interval_space(), {},
                                      {{doubling_interval(),
                                        [] {
                                            MapSpec m;
                                            m.kind = MapKind::PiecewiseLinear;
                                            m.name = "tent";
                                            m.breakpoints = {0.0, 0.5, 1.0};
                                            m.slopes = {2.0, -2.0};
                                            m.offsets = {0.0, 2.0};
                                            return m;
                                        }()}});
        DynMetrics dm(sys);
        Potential phi = Potential::affine({1.0}, 0.0);
        for (int k = 0; k < 20; ++k) {
            Point x = sys.random_point(13, 8, k);
            for (int n : {1, 2, 4, 6})
                CHECK(dm.birkhoff_max(phi, x, n).value ==
                      doctest::Approx(naive_birkhoff_max(sys, phi, x, n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("birkhoff_ball_sup is pool-relative") {
    NaifsSystem sys = doubling_on_interval();
    DynMetrics dm(sys);
    Potential phi = Potential::affine({1.0}, 0.0);
    Point x = pt(sys, 0.1);

    SUBCASE("singleton pool degenerates to the center sum") {
        CHECK(dm.birkhoff_ball_sup(phi, x, 2, 0.05, {x}).value == doctest::Approx(0.3));
    }
    SUBCASE("nearby pool point with a larger sum wins") {
        // d_1(0.1, 0.12) = 0.04 < 0.05, S_1 phi(0.12) = 0.12
        std::vector<Point> pool{x, pt(sys, 0.12)};
        CHECK(dm.birkhoff_ball_sup(phi, x, 1, 0.05, pool).value == doctest::Approx(0.12));
        // at delta = 0.03 the neighbour falls outside the ball
        CHECK(dm.birkhoff_ball_sup(phi, x, 1, 0.03, pool).value == doctest::Approx(0.1));
    }
    SUBCASE("constant potential ignores the pool") {
        Potential c = Potential::constant(0.5);
        std::vector<Point> pool{x, pt(sys, 0.11), pt(sys, 0.13)};
        CHECK(dm.birkhoff_ball_sup(c, x, 3, 0.2, pool).value == doctest::Approx(1.5));
    }
}

TEST_CASE("birkhoff ball sup sandwich") {
    NaifsSystem sys = doubling_on_interval();
    DynMetrics dm(sys);
    Potential phi = Potential::affine({1.0}, 0.0);
    std::vector<Point> pool;
    for (int i = 0; i < 64; ++i) pool.push_back(pt(sys, i / 64.0));

    for (int k = 0; k < 16; ++k) {
        const Point& x = pool[static_cast<std::size_t>(counter_rng(5, 1, k) % pool.size())];
        for (double delta : {0.3, 0.1, 0.03}) {
            double prev = std::numeric_limits<double>::infinity();
            for (int n : {1, 2, 4}) {
                const double lo = dm.birkhoff_max(phi, x, n).value;
                const double hi = dm.birkhoff_ball_sup(phi, x, n, delta, pool).value;
                CHECK(hi >= lo - 1e-12);
                CHECK(hi <= lo + n * phi.modulus(sys.space(), delta) + 1e-12);
                (void)prev;
            }
        }
        // nonincreasing as delta shrinks, fixed pool and n
        double prev = std::numeric_limits<double>::infinity();
        for (double delta : {0.3, 0.1, 0.03, 0.01}) {
            const double v = dm.birkhoff_ball_sup(phi, x, 3, delta, pool).value;
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("beam fallback flags lower bounds") {
    NaifsSystem sys = circle_system({2, 3});
    TreeBudget tiny;
    tiny.node_budget = 8;
    tiny.beam_width = 4;
    DynMetrics dm(sys, tiny);
    DynMetrics exact(sys);
    Point x = pt(sys, 0.001), y = pt(sys, 0.0012);
    MetricValue v = dm.d_n(x, y, 10);
    CHECK(v.mode == EvalMode::LowerBound);
    CHECK(v.value <= exact.d_n(x, y, 10).value + 1e-12);
}

TEST_CASE("contractive torus system has nonincreasing orbit distances") {
    StateSpace s;
    s.kind = SpaceKind::Torus;
    s.dim = 2;
    MapSpec m;
    m.kind = MapKind::AffineContraction;
    m.name = "c";
    m.matrix = {{0.5, 0.0}, {0.1, 0.4}};
    m.offset = {0.2, 0.2};
    NaifsSystem sys(s, {}, {{m}});
    DynMetrics dm(sys);
    Point x = s.point_from_coords({0.1, 0.8});
    Point y = s.point_from_coords({0.6, 0.2});
    // the sup metric contracts, so d_n equals the base distance for all n
    const double base = s.distance(x, y);
    for (int n : {0, 1, 4, 8}) CHECK(dm.d_n(x, y, n).value == doctest::Approx(base));
}
