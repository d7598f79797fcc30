#include "doctest.h"

#include "potential.hpp"
#include "test_helpers.hpp"

using namespace naifs;
using namespace naifs::testing;

TEST_CASE("constant potential has zero modulus") {
    NaifsSystem sys = circle_system({2});
    Potential phi = Potential::constant(3.25);
    CHECK(phi.eval(sys.space(), pt(sys, 0.4)) == doctest::Approx(3.25));
    CHECK(phi.modulus(sys.space(), 0.3) == 0.0);
    std::vector<std::string> errors;
    validate_potential(sys, phi, errors);
    CHECK(errors.empty());
}

TEST_CASE("affine potential on the interval") {
    NaifsSystem sys = doubling_on_interval();
    Potential phi = Potential::affine({2.0}, 0.5);
    CHECK(phi.eval(sys.space(), pt(sys, 0.25)) == doctest::Approx(1.0));
    CHECK(phi.sup(sys.space()) == doctest::Approx(2.5));
    CHECK(phi.inf(sys.space()) == doctest::Approx(0.5));
    CHECK(phi.modulus(sys.space(), 0.1) == doctest::Approx(0.2));
    std::vector<std::string> errors;
    validate_potential(sys, phi, errors);
    CHECK(errors.empty());
}

TEST_CASE("affine potential is rejected on the circle") {
    NaifsSystem sys = circle_system({2});
    Potential phi = Potential::affine({1.0}, 0.0);
    std::vector<std::string> errors;
    validate_potential(sys, phi, errors);
    CHECK(!errors.empty());
}

TEST_CASE("first-symbol potential is locally constant") {
    NaifsSystem sys = two_shift(10);
    Potential phi = Potential::first_symbol({0.0, 1.0});
    CHECK(phi.eval(sys.space(), spt(sys, "10")) == doctest::Approx(1.0));
    CHECK(phi.eval(sys.space(), spt(sys, "01")) == doctest::Approx(0.0));
    CHECK(phi.modulus(sys.space(), 0.5) == 0.0);
    CHECK(phi.modulus(sys.space(), 1.5) == doctest::Approx(1.0));
    std::vector<std::string> errors;
    validate_potential(sys, phi, errors);
    CHECK(errors.empty());
}

TEST_CASE("grid potential interpolates and bounds its modulus") {
    NaifsSystem sys = circle_system({2});
    Potential phi;
    phi.kind = PotentialKind::Grid;
    phi.grid_shape = {5};
    phi.grid_values = {0.0, 1.0, 0.5, 1.0, 0.0}; // periodic endpoints
    CHECK(phi.eval(sys.space(), pt(sys, 0.125)) == doctest::Approx(0.5));
    CHECK(phi.sup(sys.space()) == doctest::Approx(1.0));
    std::vector<std::string> errors;
    validate_potential(sys, phi, errors);
    CHECK(errors.empty());

    // sampled pairs never exceed the modulus
    for (int k = 0; k < 100; ++k) {
        Point a = sys.random_point(5, 3, 2 * k);
        Point b = sys.random_point(5, 3, 2 * k + 1);
        const double d = sys.space().distance(a, b);
        CHECK(std::fabs(phi.eval(sys.space(), a) - phi.eval(sys.space(), b)) <=
              phi.modulus(sys.space(), d * (1 + 1e-9)) + 1e-12);
    }
}

TEST_CASE("grid potential on the circle must match at the seam") {
    NaifsSystem sys = circle_system({2});
    Potential phi;
    phi.kind = PotentialKind::Grid;
    phi.grid_shape = {3};
    phi.grid_values = {0.0, 0.5, 1.0};
    std::vector<std::string> errors;
    validate_potential(sys, phi, errors);
    CHECK(!errors.empty());
}
