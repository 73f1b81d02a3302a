#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "toricap/capacities.hpp"
#include "toricap/rounding.hpp"

using namespace toricap;

namespace {

Rational R(long long p, long long q = 1) { return make_rational(p, q); }
MomentDomain2D tri(long long a, long long b) { return make_polygon_domain({{0, b}, {a, 0}}); }
MomentDomain2D unit_square() { return make_polygon_domain({{0, 1}, {1, 1}, {1, 0}}); }
MomentDomain2D pentagon() { return make_polygon_domain({{0, 3}, {1, R(5, 2)}, {2, R(3, 2)}, {R(5, 2), 0}}); }

}  // namespace

TEST(RoundDomain, BallTriangleIsCloseAndValid) {
    auto s = round_domain(tri(1, 1), {1e-3, 0.1});
    EXPECT_TRUE(verify_rounding(s).ok());
    EXPECT_LT(s.hausdorff_bound(), 5e-3);
    EXPECT_NEAR(s.b_prime(), 1.0, s.hausdorff_bound());
    EXPECT_NEAR(s.a_prime(), 1.0, s.hausdorff_bound());
    EXPECT_NEAR(s.value(s.a_prime()), 0.0, 1e-12);
}

TEST(RoundDomain, SquarePassesAllInvariantChecks) {
    auto s = round_domain(unit_square(), {1e-2, 0.1});
    auto check = verify_rounding(s);
    EXPECT_TRUE(check.decreasing);
    EXPECT_TRUE(check.concave);
    EXPECT_TRUE(check.endpoint_slopes);
    EXPECT_TRUE(check.contains_polygon);
    EXPECT_TRUE(check.within_hausdorff);
}

TEST(RoundDomain, InvariantsAcrossFixturesAndScales) {
    for (const auto& d : {tri(1, 1), tri(1, 2), tri(3, 1), unit_square(), pentagon()})
        for (double tau : {1e-2, 1e-3, 1e-4}) {
            auto s = round_domain(d, {tau, 0.1});
            EXPECT_TRUE(verify_rounding(s).ok()) << "tau " << tau;
            EXPECT_LE(s.derivative(0), 0.0);
            EXPECT_GE(s.derivative(0), -0.1);
            EXPECT_LT(s.derivative(s.a_prime()), -10.0);
        }
}

TEST(RoundDomain, SlopesApproachThePolygonAwayFromCorners) {
    auto d = pentagon();
    double previous_error = 1e9;
    for (double tau : {1e-2, 1e-3, 1e-4}) {
        auto s = round_domain(d, {tau, 0.1});
        double error = std::abs(s.derivative(0.5) + 0.5) + std::abs(s.derivative(1.5) + 1.0) + std::abs(s.derivative(2.25) + 3.0);
        EXPECT_LT(error, previous_error);
        previous_error = error;
    }
    EXPECT_LT(previous_error, 1e-3);
}

TEST(RoundDomain, RandomPolygonsStayValid) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        auto d = make_polygon_domain(oracle::random_polygon(rng, 4));
        auto s = round_domain(d, {1e-3 * std::min(to_double(d.width()), to_double(d.height())), 0.1});
        EXPECT_TRUE(verify_rounding(s).ok()) << i;
    }
}

TEST(RoundDomain, SlopeConditionUnreachableForCoarseTau) {
    try {
        round_domain(tri(1, 1), {0.2, 0.1});
        FAIL() << "expected SlopeConditionUnreachable";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SlopeConditionUnreachable);
    }
    EXPECT_THROW(round_domain(tri(1, 1), {-1, 0.1}), Error);
}

TEST(GaussPoint, SymmetricPointOfTheRoundedBall) {
    auto s = round_domain(tri(1, 1), {1e-3, 0.1});
    auto p = gauss_point(s, LatticeDirection(1, 1));
    ASSERT_TRUE(p);
    EXPECT_NEAR(p->x, 0.5, 1e-6);
    EXPECT_NEAR(p->y, 0.5, 2 * s.hausdorff_bound());
    EXPECT_NEAR(s.derivative(p->x), -1.0, 1e-9);
    EXPECT_FALSE(gauss_point(s, LatticeDirection(1, 0)));
    EXPECT_FALSE(gauss_point(s, LatticeDirection(0, 3)));
}

TEST(GaussPoint, RoundedE12Direction21) {
    auto s = round_domain(tri(1, 2), {1e-3, 0.1});
    auto p = gauss_point(s, LatticeDirection(2, 1));
    ASSERT_TRUE(p);
    EXPECT_NEAR(s.derivative(p->x), -2.0, 1e-8);
    double action = 2 * p->x + p->y;
    EXPECT_NEAR(action, 2.0, 2 * s.hausdorff_bound() * std::sqrt(5.0));
}

TEST(GaussPoint, OutsideTheGaussImage) {
    auto s = round_domain(tri(1, 1), {1e-3, 0.1});
    EXPECT_FALSE(gauss_point(s, LatticeDirection(1, 50)));  // slope -1/50 is shallower than g'(0)
    EXPECT_FALSE(gauss_point(s, LatticeDirection(50, 1)));  // steeper than g'(a')
}

TEST(ReebRates, SymmetricPointRotatesBothFactorsEqually) {
    auto s = round_domain(tri(1, 1), {1e-4, 0.1});
    auto p = gauss_point(s, LatticeDirection(1, 1));
    auto rates = reeb_angular_velocity(s, p->x);
    EXPECT_NEAR(rates.rate1, rates.rate2, 1e-6);
    EXPECT_NEAR(rates.rate1, 2 * std::numbers::pi, 2 * std::numbers::pi * 2 * s.hausdorff_bound());
}

TEST(ReebRates, RatioIsTheNormalSlope) {
    auto s = round_domain(pentagon(), {1e-3, 0.1});
    for (double x : {0.3, 1.2, 2.1}) {
        auto rates = reeb_angular_velocity(s, x);
        EXPECT_NEAR(rates.rate1 / rates.rate2, -s.derivative(x), 1e-12);
        // <(rate1, rate2), w> = 2 pi for every boundary point
        EXPECT_NEAR(rates.rate1 * x + rates.rate2 * s.value(x), 2 * std::numbers::pi, 1e-9);
    }
}

TEST(ReebRates, AxisPointsAreRejected) {
    auto s = round_domain(tri(1, 1), {1e-3, 0.1});
    for (double x : {0.0, s.a_prime()}) {
        try {
            reeb_angular_velocity(s, x);
            FAIL() << "axis point accepted";
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::AxisPoint);
        }
    }
}

TEST(OrbitFamilies, RoundedBallNearActionOne) {
    auto s = round_domain(tri(1, 1), {1e-3, 0.1});
    auto fams = orbit_families(s, 1.05);
    ASSERT_EQ(fams.size(), 3u);
    std::vector<LatticeDirection> dirs;
    for (const auto& f : fams) {
        dirs.push_back(f.direction);
        EXPECT_NEAR(f.action, 1.0, 0.01);
    }
    EXPECT_NE(std::find(dirs.begin(), dirs.end(), LatticeDirection(1, 1)), dirs.end());
    EXPECT_NE(std::find(dirs.begin(), dirs.end(), LatticeDirection(1, 0)), dirs.end());
    EXPECT_NE(std::find(dirs.begin(), dirs.end(), LatticeDirection(0, 1)), dirs.end());
}

TEST(OrbitFamilies, RoundedE12BelowOneAndAHalf) {
    auto s = round_domain(tri(1, 2), {1e-3, 0.1});
    auto fams = orbit_families(s, 1.5);
    ASSERT_EQ(fams.size(), 1u);
    EXPECT_EQ(fams[0].direction, LatticeDirection(1, 0));
    EXPECT_NEAR(fams[0].action, 1.0, 0.01);
    EXPECT_TRUE(orbit_families(s, 0.9).empty());
}

TEST(OrbitFamilies, SortedMultipliedAndConsistent) {
    auto s = round_domain(pentagon(), {1e-3, 0.1});
    auto fams = orbit_families(s, 12.0);
    ASSERT_FALSE(fams.empty());
    for (std::size_t i = 0; i + 1 < fams.size(); ++i) {
        EXPECT_LE(fams[i].action, fams[i + 1].action);
        if (fams[i].action == fams[i + 1].action) {
            EXPECT_LT(fams[i].direction, fams[i + 1].direction);
        }
    }
    for (const auto& f : fams) {
        EXPECT_GT(f.action, 0);
        EXPECT_LE(f.action, 12.0);
        EXPECT_EQ(f.multiplicity, f.direction.gcd());
        EXPECT_EQ(f.underlying_simple, f.direction.primitive());
        double support = smooth_support(s, double(f.direction.l()), double(f.direction.m()));
        EXPECT_NEAR(f.action, support, 1e-9 * (1 + f.action));
        if (f.multiplicity > 1) {
            auto simple = orbit_family(s, f.underlying_simple);
            ASSERT_TRUE(simple);
            EXPECT_NEAR(f.action, f.multiplicity * simple->action, 1e-9 * (1 + f.action));
        }
    }
    // Every direction with action below the cutoff is present.
    for (long long l = 0; l <= 12; ++l)
        for (long long m = 0; m <= 12; ++m) {
            if (l == 0 && m == 0) continue;
            auto f = orbit_family(s, LatticeDirection(l, m));
            if (!f || f->action > 12.0) continue;
            bool listed = std::any_of(fams.begin(), fams.end(), [&](const ReebOrbitFamily& g) { return g.direction == f->direction; });
            EXPECT_TRUE(listed) << l << "," << m;
        }
}

TEST(SplitFamily, CzTable) {
    auto s = round_domain(tri(1, 1), {1e-3, 0.1});
    struct Row {
        LatticeDirection d;
        long long e, h;
    };
    for (const auto& row : {Row{{1, 0}, 3, 2}, Row{{1, 1}, 5, 4}, Row{{2, 3}, 11, 10}}) {
        auto f = orbit_family(s, row.d);
        ASSERT_TRUE(f);
        auto split = split_family(*f);
        EXPECT_EQ(split.elliptic_cz, row.e);
        EXPECT_EQ(split.hyperbolic_cz, row.h);
        EXPECT_EQ(split.elliptic_cz % 2, 1);
        EXPECT_EQ(split.elliptic_action, f->action);
        EXPECT_EQ(split.hyperbolic_action, f->action);
    }
}

TEST(CapacityViaSpectrum, MatchesMinMaxWithinHausdorff) {
    auto s11 = round_domain(tri(1, 1), {1e-3, 0.1});
    EXPECT_NEAR(capacity_via_spectrum(s11, 2), 1.0, 5 * s11.hausdorff_bound() * 2);
    auto s12 = round_domain(tri(1, 2), {1e-3, 0.1});
    EXPECT_NEAR(capacity_via_spectrum(s12, 3), 2.0, 5 * s12.hausdorff_bound() * 3);
    EXPECT_NEAR(capacity_via_spectrum(s12, 1), 1.0, 5 * s12.hausdorff_bound());
    auto sp = round_domain(pentagon(), {1e-3, 0.1});
    for (long long k = 1; k <= 8; ++k) {
        double exact = to_double(gh_capacity_toric4(pentagon(), k).value);
        EXPECT_NEAR(capacity_via_spectrum(sp, k), exact, sp.hausdorff_bound() * std::sqrt(double(k * k))) << k;
    }
}

TEST(CapacityViaSpectrum, MissingDirectionIsReported) {
    auto s = round_domain(tri(1, 1), {1e-3, 0.1});
    try {
        capacity_via_spectrum(s, 30);
        FAIL() << "expected DirectionOutsideGaussImage";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DirectionOutsideGaussImage);
    }
}

TEST(SmoothSupport, WithinHausdorffOfPolygonSupport) {
    for (const auto& d : {tri(1, 1), unit_square(), pentagon()}) {
        auto s = round_domain(d, {1e-3, 0.1});
        for (double vx : {0.0, 0.5, 1.0, 3.0})
            for (double vy : {0.0, 0.25, 1.0, 2.0}) {
                if (vx == 0 && vy == 0) continue;
                double exact = to_double(support(d, parse_rational(std::to_string(vx)), parse_rational(std::to_string(vy))));
                EXPECT_NEAR(smooth_support(s, vx, vy), exact, s.hausdorff_bound() * std::hypot(vx, vy) + 1e-12);
                EXPECT_GE(smooth_support(s, vx, vy), exact - 1e-12);
            }
    }
}

TEST(FlatTorus, UnitLattice) {
    auto g1 = flat_torus_geodesic_spectrum(2, {1, 1}, 1.0);
    ASSERT_EQ(g1.size(), 4u);
    for (const auto& g : g1) {
        EXPECT_DOUBLE_EQ(g.length, 1.0);
        EXPECT_EQ(g.morse_index, 0);
    }
    auto g2 = flat_torus_geodesic_spectrum(2, {1, 1}, 1.5);
    ASSERT_EQ(g2.size(), 8u);
    EXPECT_NEAR(g2.back().length, std::sqrt(2.0), 1e-15);
    EXPECT_TRUE(flat_torus_geodesic_spectrum(3, {1, 2, 3}, 0.9).empty());
    EXPECT_THROW(flat_torus_geodesic_spectrum(2, {1}, 1.0), Error);
}

TEST(FlatTorus, CountsMatchLatticeEnumeration) {
    auto gs = flat_torus_geodesic_spectrum(3, {1.0, 1.5, 2.0}, 3.2);
    std::size_t count = 0;
    for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j)
            for (int k = -4; k <= 4; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                if (std::hypot(i * 1.0, j * 1.5, k * 2.0) <= 3.2) ++count;
            }
    EXPECT_EQ(gs.size(), count);
    for (std::size_t i = 0; i + 1 < gs.size(); ++i) EXPECT_LE(gs[i].length, gs[i + 1].length);
}
