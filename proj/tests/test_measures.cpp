#include "doctest.h"

#include <cmath>

#include "errors.hpp"
#include "measures.hpp"
#include "sampling.hpp"
#include "test_helpers.hpp"

using namespace naifs;
using namespace naifs::testing;

TEST_CASE("ball_measure on atomic measures") {
    NaifsSystem sys = circle_system({2});
    DynMetrics dm(sys);
    Point x = pt(sys, 0.3);
    BorelMeasure mu = BorelMeasure::dirac(x);
    CHECK(ball_measure(dm, mu, x, 4, 0.1).value == doctest::Approx(1.0));
    CHECK(ball_measure(dm, mu, pt(sys, 0.9), 2, 0.05).value == doctest::Approx(0.0));

    // two atoms: mass accumulates as the ball grows
    BorelMeasure two;
    two.kind = MeasureKind::Atomic;
    two.atoms = {x, pt(sys, 0.32)};
    two.weights = {0.25, 0.75};
    CHECK(ball_measure(dm, two, x, 0, 0.01).value == doctest::Approx(0.25));
    CHECK(ball_measure(dm, two, x, 0, 0.05).value == doctest::Approx(1.0));
    // monotone in r, antitone in n
    CHECK(ball_measure(dm, two, x, 1, 0.05).value <= ball_measure(dm, two, x, 0, 0.05).value);
}

TEST_CASE("ball_measure on bernoulli measures is the exact cylinder mass") {
    NaifsSystem sys = two_shift(20);
    DynMetrics dm(sys);

    SUBCASE("fair coin, n=3, r=1/2 gives 2^-5") {
        BorelMeasure mu = BorelMeasure::bernoulli({0.5, 0.5});
        CHECK(ball_measure(dm, mu, spt(sys, "01011"), 3, 0.5).value ==
              doctest::Approx(std::ldexp(1.0, -5)));
    }
    SUBCASE("biased coin, x = 000..., n=1, r=1/2 gives (1/4)^3") {
        BorelMeasure mu = BorelMeasure::bernoulli({0.25, 0.75});
        CHECK(ball_measure(dm, mu, spt(sys, "000"), 1, 0.5).value == doctest::Approx(1.0 / 64));
    }
    SUBCASE("non-dyadic radius is rejected") {
        BorelMeasure mu = BorelMeasure::bernoulli({0.5, 0.5});
        CHECK_THROWS_AS((void)ball_measure(dm, mu, spt(sys, "0"), 2, 0.3), RuntimeModuleError);
    }
    SUBCASE("brute force over strings confirms the cylinder mass") {
        BorelMeasure mu = BorelMeasure::bernoulli({0.3, 0.7});
        for (int n : {1, 3}) {
            for (int m : {1, 2}) {
                const double r = std::ldexp(1.0, -m);
                Point x = spt(sys, "0110100101");
                // sum the product masses of all (n+m+1)-strings whose padded
                // representative lies inside the ball
                const int K = n + m + 1;
                double total = 0.0;
                for (std::size_t idx = 0; idx < (1u << K); ++idx) {
                    std::string w(K, '0');
                    double mass = 1.0;
                    for (int j = 0; j < K; ++j) {
                        const int s = (idx >> j) & 1u;
                        w[static_cast<std::size_t>(j)] = symbol_char(s);
                        mass *= mu.probs[static_cast<std::size_t>(s)];
                    }
                    if (dm.bowen_ball_contains(x, sys.space().point_from_symbols(w), n, r).inside)
                        total += mass;
                }
                CHECK(ball_measure(dm, mu, x, n, r).value == doctest::Approx(total).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("local lower pressure") {
    SUBCASE("dirac at a fixed point has zero local pressure") {
        NaifsSystem sys = circle_system({2});
        DynMetrics dm(sys);
        Point fixed = pt(sys, 0.0);
        BorelMeasure mu = BorelMeasure::dirac(fixed);
        auto v = local_lower_pressure(dm, mu, Potential::constant(0.0), fixed, {0.25, 0.125}, 4, 10);
        CHECK(v.value == doctest::Approx(0.0));
    }
    SUBCASE("fair coin on the 2-shift gives log 2 up to the (n+m+1)/n factor") {
        NaifsSystem sys = two_shift(300);
        DynMetrics dm(sys);
        BorelMeasure mu = BorelMeasure::bernoulli({0.5, 0.5});
        Point x = mu.draw(sys, 7);
        auto v = local_lower_pressure(dm, mu, Potential::constant(0.0), x, {0.25, 0.125}, 128, 256);
        CHECK(std::fabs(v.value - std::log(2.0)) < 0.02);
        CHECK(v.stabilized);
        // per-r liminf proxies grow as r shrinks (ball masses shrink)
        for (std::size_t ri = 1; ri < v.liminf_per_r.size(); ++ri)
            CHECK(v.liminf_per_r[ri] >= v.liminf_per_r[ri - 1] - 1e-12);
    }
    SUBCASE("constant potential shifts the local pressure by c") {
        NaifsSystem sys = two_shift(300);
        DynMetrics dm(sys);
        BorelMeasure mu = BorelMeasure::bernoulli({0.5, 0.5});
        Point x = mu.draw(sys, 3);
        auto v0 = local_lower_pressure(dm, mu, Potential::constant(0.0), x, {0.25}, 64, 128);
        auto vc = local_lower_pressure(dm, mu, Potential::constant(0.7), x, {0.25}, 64, 128);
        CHECK(vc.value == doctest::Approx(v0.value + 0.7));
    }
}

TEST_CASE("measure_pressure") {
    SUBCASE("dirac at the fixed point integrates to zero") {
        NaifsSystem sys = circle_system({2});
        DynMetrics dm(sys);
        BorelMeasure mu = BorelMeasure::dirac(pt(sys, 0.0));
        auto r = measure_pressure(dm, mu, Potential::constant(0.0), {0.25, 0.125}, 4, 10,
                                  IntegrationKind::ExactAtomic);
        CHECK(r.value == doctest::Approx(0.0));
    }
    SUBCASE("fair coin monte-carlo lands near log 2") {
        NaifsSystem sys = two_shift(300);
        DynMetrics dm(sys);
        BorelMeasure mu = BorelMeasure::bernoulli({0.5, 0.5});
        auto r = measure_pressure(dm, mu, Potential::constant(0.0), {0.25, 0.125}, 128, 256,
                                  IntegrationKind::MonteCarlo, 64, 11);
        CHECK(std::fabs(r.value - std::log(2.0)) < 0.03);
    }
    SUBCASE("biased coin matches its entropy (exact cylinder expectation oracle)") {
        NaifsSystem sys = two_shift(300);
        DynMetrics dm(sys);
        BorelMeasure mu = BorelMeasure::bernoulli({0.25, 0.75});
        const int n_lo = 128, n_hi = 256;
        const std::vector<double> r_grid{0.25, 0.125};
        auto r = measure_pressure(dm, mu, Potential::constant(0.0), r_grid, n_lo, n_hi,
                                  IntegrationKind::MonteCarlo, 96, 17);
        // oracle: E[-log mu(B_n(x, 2^-m))]/n = (n+m+1) H(p) / n, evaluated at
        // the window mean; the min-over-tail proxy sits slightly below it
        const double H = 0.25 * std::log(4.0) + 0.75 * std::log(4.0 / 3.0);
        CHECK(std::fabs(r.value - H) < 0.05);
    }
    SUBCASE("monte-carlo is deterministic given the seed") {
        NaifsSystem sys = two_shift(64);
        DynMetrics dm(sys);
        BorelMeasure mu = BorelMeasure::bernoulli({0.4, 0.6});
        auto a = measure_pressure(dm, mu, Potential::constant(0.0), {0.5}, 16, 32,
                                  IntegrationKind::MonteCarlo, 32, 5);
        auto b = measure_pressure(dm, mu, Potential::constant(0.0), {0.5}, 16, 32,
                                  IntegrationKind::MonteCarlo, 32, 5);
        CHECK(a.value == b.value); // bit-identical
        auto c = measure_pressure(dm, mu, Potential::constant(0.0), {0.5}, 16, 32,
                                  IntegrationKind::MonteCarlo, 32, 6);
        CHECK(a.value != c.value);
    }
}

TEST_CASE("potential shift property: P_mu(phi + c) = P_mu(phi) + c") {
    NaifsSystem sys = two_shift(200);
    DynMetrics dm(sys);
    BorelMeasure mu = BorelMeasure::bernoulli({0.35, 0.65});
    Potential base = Potential::first_symbol({0.0, 1.0});
    Potential shifted = Potential::first_symbol({0.5, 1.5});
    auto a = measure_pressure(dm, mu, base, {0.25}, 64, 128, IntegrationKind::MonteCarlo, 48, 9);
    auto b = measure_pressure(dm, mu, shifted, {0.25}, 64, 128, IntegrationKind::MonteCarlo, 48, 9);
    CHECK(b.value == doctest::Approx(a.value + 0.5).epsilon(1e-9));
}

TEST_CASE("frostman inequality check on the fair 2-shift") {
    NaifsSystem sys = two_shift(24);
    DynMetrics dm(sys);
    BorelMeasure mu = BorelMeasure::bernoulli({0.5, 0.5});
    Potential zero = Potential::constant(0.0);
    SampleSet grid = symbolic_cylinder_sample(sys, 8);

    // c = W(alpha=0.6, eps=1/2, N=4) on the full shift: min_n 2^{n+2} e^{-0.6 n}
    double c = std::numeric_limits<double>::infinity();
    for (int n = 4; n <= 10; ++n) c = std::min(c, std::ldexp(1.0, n + 2) * std::exp(-0.6 * n));

    SUBCASE("alpha below log 2: no violations") {
        auto rep = frostman_inequality_check(dm, mu, grid, zero, 0.6, 0.5, 4, 10, c);
        CHECK(rep.violations == 0);
        CHECK(rep.checked == grid.points.size() * 7);
    }
    SUBCASE("alpha above log 2: violations appear at large n") {
        double c8 = std::numeric_limits<double>::infinity();
        for (int n = 4; n <= 10; ++n) c8 = std::min(c8, std::ldexp(1.0, n + 2) * std::exp(-0.8 * n));
        auto rep = frostman_inequality_check(dm, mu, grid, zero, 0.8, 0.5, 4, 14, c8);
        CHECK(rep.violations > 0);
        CHECK(rep.worst_n >= 10);
    }
    SUBCASE("tiny c makes the bound vacuous") {
        auto rep = frostman_inequality_check(dm, mu, grid, zero, 0.9, 0.5, 4, 10, 1e-9);
        CHECK(rep.violations == 0);
    }
}

TEST_CASE("variational gap") {
    SUBCASE("dirac at a fixed point against the singleton target") {
        NaifsSystem sys = circle_system({2});
        DynMetrics dm(sys);
        SampleSet pool = grid_sample_1d(sys, 128);
        std::vector<std::size_t> target{0}; // x = 0, the fixed point
        BorelMeasure mu = BorelMeasure::dirac(pt(sys, 0.0));

        PressureGrids g;
        g.delta_grid = {0.25, 0.125};
        g.N_grid = {2, 3, 4, 5};
        g.window = 2;
        MeasureGrids mg;
        mg.r_grid = {0.25, 0.125};
        mg.n_lo = 4;
        mg.n_hi = 10;
        auto rep = variational_gap(dm, {mu}, Potential::constant(0.0), pool, target, g, mg, 0.1);
        CHECK(std::fabs(rep.sup_measure_pressure) < 0.05);
        CHECK(std::fabs(rep.pressure) < 0.05);
        CHECK(std::fabs(rep.gap) < 0.1);
        CHECK(rep.contract_ok);
    }
    SUBCASE("bernoulli family on a cylinder target violates the mass precondition") {
        NaifsSystem sys = two_shift(32);
        DynMetrics dm(sys);
        SampleSet pool = symbolic_cylinder_sample(sys, 8);
        auto cyl = cylinder_target(pool, "0");
        PressureGrids g;
        g.delta_grid = {0.5};
        g.N_grid = {2, 3};
        g.window = 1;
        MeasureGrids mg;
        mg.r_grid = {0.5};
        mg.n_lo = 4;
        mg.n_hi = 10;
        CHECK_THROWS_AS((void)variational_gap(dm, {BorelMeasure::bernoulli({0.5, 0.5})},
                                              Potential::constant(0.0), pool, cyl, g, mg, 0.1),
                        ValidationError);
    }
}

TEST_CASE("theorem1 direction probes on the fair 2-shift") {
    NaifsSystem sys = two_shift(300);
    DynMetrics dm(sys);
    BorelMeasure mu = BorelMeasure::bernoulli({0.5, 0.5});
    MeasureGrids mg;
    mg.r_grid = {0.25, 0.125};
    mg.n_lo = 128;
    mg.n_hi = 256;
    mg.mc_count = 48;
    mg.mc_seed = 3;

    const double p_est = std::log(2.0); // cover estimate on this instance
    auto rep = theorem1_bounds_check(dm, mu, Potential::constant(0.0), mg,
                                     {0.5, 1.0}, 0.05, p_est);
    CHECK(rep.violations == 0);
    // s = 0.5 < log 2: locals all >= s, so the lower direction fires
    CHECK(rep.rows[0].premise_ge);
    CHECK(rep.rows[0].implication_ge_ok);
    // s = 1.0 > log 2: locals all <= s, so the upper direction fires
    CHECK(rep.rows[1].premise_le);
    CHECK(rep.rows[1].implication_le_ok);
}

TEST_CASE("measure validation catches malformed inputs") {
    NaifsSystem sys = two_shift(16);
    std::vector<std::string> errors;
    BorelMeasure bad = BorelMeasure::bernoulli({0.5, 0.6});
    bad.validate(sys, errors);
    CHECK(!errors.empty());

    errors.clear();
    BorelMeasure atom;
    atom.kind = MeasureKind::Atomic;
    atom.atoms = {sys.space().point_from_symbols("01")};
    atom.weights = {0.5};
    atom.validate(sys, errors);
    CHECK(!errors.empty());
}

TEST_CASE("theorem1 probes hold with equality for a dirac fixed point") {
    NaifsSystem sys = circle_system({2});
    DynMetrics dm(sys);
    BorelMeasure mu = BorelMeasure::dirac(pt(sys, 0.0));
    MeasureGrids mg;
    mg.r_grid = {0.25, 0.125};
    mg.n_lo = 4;
    mg.n_hi = 10;
    // the fixed point has local pressure exactly 0 and cover pressure 0
    auto rep = theorem1_bounds_check(dm, mu, Potential::constant(0.0), mg, {0.0}, 0.05, 0.0);
    CHECK(rep.violations == 0);
    CHECK(rep.rows[0].premise_le);
    CHECK(rep.rows[0].premise_ge);
    CHECK(rep.local_min == doctest::Approx(0.0));
}
