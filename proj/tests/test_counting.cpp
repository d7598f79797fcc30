#include "doctest.h"

#include <cmath>

#include "counting.hpp"
#include "errors.hpp"
#include "test_helpers.hpp"

using namespace naifs;
using namespace naifs::testing;

namespace {

// one representative per cylinder of the given depth, padded with '0'
SampleSet cylinder_sample(const NaifsSystem& sys, int depth) {
    SampleSet s;
    const int k = sys.space().alphabet;
    std::size_t total = 1;
    for (int i = 0; i < depth; ++i) total *= static_cast<std::size_t>(k);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::string w(depth, '0');
        std::size_t v = idx;
        for (int i = depth - 1; i >= 0; --i) {
            w[i] = symbol_char(static_cast<int>(v % k));
            v /= k;
        }
        s.points.push_back(sys.space().point_from_symbols(w));
    }
    return s;
}

SampleSet grid_sample(const NaifsSystem& sys, int count) {
    SampleSet s;
    s.density = 1.0 / count;
    for (int i = 0; i < count; ++i) s.points.push_back(pt(sys, i / static_cast<double>(count)));
    return s;
}

} // namespace

TEST_CASE("greedy_separated basics") {
    NaifsSystem sys = two_shift(12);
    DynMetrics dm(sys);

    SUBCASE("singleton sample") {
        SampleSet s;
        s.points.push_back(spt(sys, "0101"));
        auto g = greedy_separated(dm, s, 3, 0.25, MetricFlavor::Dn);
        CHECK(g.indices.size() == 1);
    }
    SUBCASE("eps at the diameter keeps one point") {
        SampleSet s = cylinder_sample(sys, 4);
        auto g = greedy_separated(dm, s, 2, 1.0, MetricFlavor::Dn);
        CHECK(g.indices.size() == 1);
    }
    SUBCASE("full 2-shift separated count is 2^(n+1) at eps = 1/2") {
        SampleSet s = cylinder_sample(sys, 5); // length n+2 cylinders
        auto g = greedy_separated(dm, s, 3, 0.5, MetricFlavor::Dn);
        CHECK(g.indices.size() == 16);
        // independently verify pairwise separation with the naive metric
        for (std::size_t a = 0; a < g.indices.size(); ++a)
            for (std::size_t b = a + 1; b < g.indices.size(); ++b)
                CHECK(naive_d_n(sys, 1, s.points[g.indices[a]], s.points[g.indices[b]], 3) > 0.5);
    }
}

TEST_CASE("greedy_separated on the circle agrees with a naive sweep") {
    NaifsSystem sys = circle_system({2, 3});
    DynMetrics dm(sys);
    SampleSet s = grid_sample(sys, 500);
    for (int n : {1, 2, 3}) {
        const double eps = 0.25;
        auto g = greedy_separated(dm, s, n, eps, MetricFlavor::Dn);
        // same scan order, naive metric
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            bool ok = true;
            for (std::size_t k : kept)
                if (naive_d_n(sys, 1, s.points[i], s.points[k], n) <= eps) {
                    ok = false;
                    break;
                }
            if (ok) kept.push_back(i);
        }
        CHECK(g.indices == kept);
    }
}

TEST_CASE("greedy_separated cardinality is order-robust away from ties") {
    NaifsSystem sys = circle_system({2});
    DynMetrics dm(sys);
    SampleSet s;
    for (int i = 0; i < 37; ++i) s.points.push_back(pt(sys, std::fmod(0.1 + i * 0.261803, 1.0)));
    auto base = greedy_separated(dm, s, 2, 0.07, MetricFlavor::Dn);

    SampleSet permuted;
    for (std::size_t i = 0; i < s.points.size(); ++i)
        permuted.points.push_back(s.points[(i * 17 + 5) % s.points.size()]);
    auto perm = greedy_separated(dm, permuted, 2, 0.07, MetricFlavor::Dn);
    CHECK(base.indices.size() == perm.indices.size());
}

TEST_CASE("greedy_spanning basics") {
    NaifsSystem sys = two_shift(12);
    DynMetrics dm(sys);

    SUBCASE("eps at the diameter needs one ball") {
        SampleSet s = cylinder_sample(sys, 4);
        auto g = greedy_spanning(dm, s, 2, 1.0, MetricFlavor::Dn);
        CHECK(g.indices.size() == 1);
    }
    SUBCASE("full 2-shift spanning count equals the separated count") {
        SampleSet s = cylinder_sample(sys, 5);
        auto span = greedy_spanning(dm, s, 3, 0.5, MetricFlavor::Dn);
        CHECK(span.indices.size() == 16);
        // every sample point is within eps of a chosen center
        for (const Point& p : s.points) {
            bool covered = false;
            for (std::size_t c : span.indices)
                if (naive_d_n(sys, 1, s.points[c], p, 3) <= 0.5) {
                    covered = true;
                    break;
                }
            CHECK(covered);
        }
    }
}

TEST_CASE("separated/spanning duality within a sample") {
    NaifsSystem symbolic = two_shift(12);
    NaifsSystem circle = circle_system({2, 3});
    DynMetrics dms(symbolic), dmc(circle);
    SampleSet ssym = cylinder_sample(symbolic, 6);
    SampleSet scir = grid_sample(circle, 400);

    struct Cfg {
        const DynMetrics* dm;
        const SampleSet* s;
    } cfgs[] = {{&dms, &ssym}, {&dmc, &scir}};
    for (const auto& cfg : cfgs) {
        for (int n : {1, 2, 3}) {
            for (double eps : {0.5, 0.25}) {
                const auto sep = greedy_separated(*cfg.dm, *cfg.s, n, eps, MetricFlavor::Dn);
                const auto spn = greedy_spanning(*cfg.dm, *cfg.s, n, eps, MetricFlavor::Dn);
                const auto spn_half = greedy_spanning(*cfg.dm, *cfg.s, n, eps / 2, MetricFlavor::Dn);
                CHECK(spn.indices.size() <= sep.indices.size());
                CHECK(sep.indices.size() <= spn_half.indices.size());
            }
        }
    }
}

TEST_CASE("vitali subfamily") {
    NaifsSystem sys = doubling_on_interval();
    DynMetrics dm(sys);

    SUBCASE("single ball is kept") {
        CoverFamily f;
        f.items.push_back({pt(sys, 0.3), 0, 0.05, 1.0});
        auto v = vitali_subfamily(dm, f, 3);
        CHECK(v.family.items.size() == 1);
    }
    SUBCASE("two distant balls are both kept") {
        CoverFamily f;
        f.items.push_back({pt(sys, 0.1), 0, 0.02, 1.0});
        f.items.push_back({pt(sys, 0.7), 0, 0.02, 1.0});
        CHECK(vitali_subfamily(dm, f, 3).family.items.size() == 2);
    }
    SUBCASE("overlapping centers collapse and the enlargement covers") {
        CoverFamily f;
        for (double c : {0.10, 0.11, 0.30}) f.items.push_back({pt(sys, c), 0, 0.02, 1.0});
        auto v = vitali_subfamily(dm, f, 3);
        REQUIRE(v.family.items.size() == 2);
        CHECK(v.family.items[0].center.x[0] == doctest::Approx(0.10));
        CHECK(v.family.items[1].center.x[0] == doctest::Approx(0.30));
        // pairwise disjoint: center distance > 2r
        CHECK(dm.d_n(v.family.items[0].center, v.family.items[1].center, 0).value > 0.04);
        // witness containment: points of each input ball lie in a 3x enlargement
        for (const CoverItem& ball : f.items) {
            for (double off : {-0.015, 0.0, 0.015}) {
                Point z = pt(sys, ball.center.x[0] + off);
                bool inside_enlarged = false;
                for (const CoverItem& sel : v.family.items)
                    if (dm.d_n(sel.center, z, 0).value < 3 * 0.02) inside_enlarged = true;
                CHECK(inside_enlarged);
            }
        }
    }
}

TEST_CASE("sup_entropy of the full 2-shift is log 2") {
    NaifsSystem sys = two_shift(16);
    DynMetrics dm(sys);
    SampleSet s = cylinder_sample(sys, 9);
    std::vector<int> n_range{2, 3, 4, 5, 6};
    std::vector<double> eps{0.5, 0.25, 0.125};
    auto est = sup_entropy(dm, s, n_range, eps);
    CHECK(est.mode == EvalMode::Exact);
    CHECK(std::fabs(est.value - std::log(2.0)) < 0.05);
    // exact counts: s(n, 2^-m) = 2^(n+m)
    for (std::size_t e = 0; e < eps.size(); ++e)
        for (std::size_t ni = 0; ni < n_range.size(); ++ni) {
            const double expected = (n_range[ni] + static_cast<int>(e) + 1) * std::log(2.0);
            CHECK(est.log_counts[e][ni] == doctest::Approx(expected).epsilon(1e-9));
        }
    // log-counts monotone: nondecreasing in n, nonincreasing in eps
    for (std::size_t e = 0; e < eps.size(); ++e)
        for (std::size_t ni = 1; ni < n_range.size(); ++ni)
            CHECK(est.log_counts[e][ni] >= est.log_counts[e][ni - 1] - 1e-12);
    for (std::size_t e = 1; e < eps.size(); ++e)
        for (std::size_t ni = 0; ni < n_range.size(); ++ni)
            CHECK(est.log_counts[e][ni] >= est.log_counts[e - 1][ni] - 1e-12);
}

TEST_CASE("sup_entropy matches a Bi's-style semigroup oracle on constant schedules") {
    // constant schedule \{E_2\}: the d_n-based estimate and the semigroup
    // enumeration metric coincide, so counts and slopes agree exactly
    NaifsSystem sys = circle_system({2});
    DynMetrics dm(sys);
    SampleSet s = grid_sample(sys, 2000);
    std::vector<int> n_range{1, 2, 3, 4, 5};
    std::vector<double> eps{0.25, 0.125};
    auto est = sup_entropy(dm, s, n_range, eps, MetricFlavor::DnStar);
    CHECK(std::fabs(est.value - std::log(2.0)) < 0.05);

    // oracle: greedy with the naive semigroup metric on the same sample
    for (int n : {2, 4}) {
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            bool ok = true;
            for (std::size_t k : kept)
                if (naive_d_n(sys, 1, s.points[i], s.points[k], n) <= 0.25) {
                    ok = false;
                    break;
                }
            if (ok) kept.push_back(i);
        }
        auto g = greedy_separated(dm, s, n, 0.25, MetricFlavor::DnStar);
        CHECK(g.indices.size() == kept.size());
    }
}

TEST_CASE("sup_entropy rejects degenerate windows") {
    NaifsSystem sys = two_shift(12);
    DynMetrics dm(sys);
    SampleSet s = cylinder_sample(sys, 4);
    CHECK_THROWS_AS((void)sup_entropy(dm, s, {1, 2}, {0.5}), RuntimeModuleError);
}

TEST_CASE("greedy_spanning singleton sample") {
    NaifsSystem sys = two_shift(12);
    DynMetrics dm(sys);
    SampleSet s;
    s.points.push_back(spt(sys, "0101"));
    auto g = greedy_spanning(dm, s, 3, 0.25, MetricFlavor::Dn);
    REQUIRE(g.indices.size() == 1);
    CHECK(g.indices[0] == 0);
}
