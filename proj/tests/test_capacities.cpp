#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "oracles.hpp"
#include "toricap/capacities.hpp"

using namespace toricap;

namespace {

Rational R(long long p, long long q = 1) { return make_rational(p, q); }
MomentDomain2D tri(const Rational& a, const Rational& b) { return make_polygon_domain({{0, b}, {a, 0}}); }

}  // namespace

TEST(GhToric, Examples) {
    auto c = gh_capacity_toric4(tri(1, 2), 3);
    EXPECT_EQ(c.value, 2);
    ASSERT_TRUE(c.minimizer);
    EXPECT_EQ(*c.minimizer, LatticeDirection(2, 1));
    EXPECT_EQ(gh_capacity_toric4(tri(1, 1), 7).value, 4);

    auto sq = make_polygon_domain({{0, 1}, {1, 1}, {1, 0}});
    EXPECT_EQ(gh_capacity_toric4(sq, 1).value, 1);
    EXPECT_EQ(gh_capacity_toric4(tri(3, 5), 1).value, 3);
    EXPECT_THROW(gh_capacity_toric4(sq, 0), Error);
}

TEST(GhToric, TiesGoToTheSmallestL) {
    auto c = gh_capacity_toric4(tri(1, 1), 2);
    EXPECT_EQ(c.value, 1);
    EXPECT_EQ(*c.minimizer, LatticeDirection(1, 1));
    auto c1 = gh_capacity_toric4(tri(1, 1), 1);
    EXPECT_EQ(*c1.minimizer, LatticeDirection(0, 1));
}

TEST(GhToric, BallIsCeilHalf) {
    for (long long k = 1; k <= 200; ++k) EXPECT_EQ(gh_capacity_toric4(tri(1, 1), k).value, oracle::ceil_half(k)) << k;
}

TEST(GhSpectrum, Examples) {
    EllipsoidSpec e12({R(1), R(2)});
    std::vector<long long> expected{1, 2, 2, 3, 4};
    for (long long k = 1; k <= 5; ++k) EXPECT_EQ(gh_spectrum_ellipsoid(e12, k).value, expected[k - 1]);
    EllipsoidSpec ball({R(1), R(1)});
    for (long long k = 1; k <= 50; ++k) EXPECT_EQ(gh_spectrum_ellipsoid(ball, k).value, oracle::ceil_half(k));
    EXPECT_EQ(gh_spectrum_ellipsoid(e12, 3).value, gh_capacity_toric4(e12.simplex(), 3).value);
}

TEST(GhSpectrum, ReportsTheMultiple) {
    auto c = gh_spectrum_ellipsoid(EllipsoidSpec({R(2), R(3)}), 5);
    EXPECT_EQ(c.value, 6);
    ASSERT_TRUE(c.multiple);
    // 2,3,4,6(a),6(b): the fifth term is the b-multiple after the tie.
    EXPECT_EQ(c.multiple->axis, AxisMultiple::Axis::B);
    EXPECT_EQ(c.multiple->multiple, 2);
}

TEST(GhSpectrum, AgreesWithSortedMultiplesOracle) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        Rational a = oracle::random_rational(rng, 50, 50), b = oracle::random_rational(rng, 50, 50);
        EllipsoidSpec e({a, b});
        for (long long k = 1; k <= 30; ++k)
            EXPECT_EQ(gh_spectrum_ellipsoid(e, k).value, oracle::sorted_multiples(e.axes()[0], e.axes()[1], k));
    }
}

TEST(GhSpectrum, LargeIndexIsFast) {
    EllipsoidSpec e({R(3, 7), R(5, 11)});
    auto start = std::chrono::steady_clock::now();
    auto c = gh_spectrum_ellipsoid(e, 1'000'000);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(ms, 500.0);
    // number of spectrum terms <= t is floor(t/a) + floor(t/b); it must reach k at C_k
    Integer count = floor_div(c.value / e.axes()[0]) + floor_div(c.value / e.axes()[1]);
    EXPECT_GE(count, 1'000'000);
}

TEST(GhSpectrum, RejectsHigherDimensions) {
    EXPECT_THROW(gh_spectrum_ellipsoid(EllipsoidSpec({R(1), R(1), R(1)}), 1), Error);
}

TEST(FindK, Examples) {
    auto k12 = find_k_equal_diagonal(EllipsoidSpec({R(1), R(2)}));
    EXPECT_EQ(k12.k, 3);
    EXPECT_EQ(k12.capacity, 2);
    EXPECT_EQ(k12.capacity, 3 * diagonal(EllipsoidSpec({R(1), R(2)})));
    auto k11 = find_k_equal_diagonal(EllipsoidSpec({R(1), R(1)}));
    EXPECT_EQ(k11.k, 2);
    EXPECT_EQ(k11.capacity, 1);
    auto k23 = find_k_equal_diagonal(EllipsoidSpec({R(2), R(3)}));
    EXPECT_EQ(k23.k, 5);
    EXPECT_EQ(k23.capacity, 6);
}

TEST(FindK, SmallestKEqualsPPlusQ) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        EllipsoidSpec e({oracle::random_rational(rng, 20, 9), oracle::random_rational(rng, 20, 9)});
        auto r = find_k_equal_diagonal(e);
        EXPECT_EQ(r.k, r.p_plus_q);
        const Rational d = diagonal(e);
        for (long long k = 1; k < r.k; ++k) EXPECT_NE(oracle::sorted_multiples(e.axes()[0], e.axes()[1], k), d * k);
        EXPECT_EQ(oracle::sorted_multiples(e.axes()[0], e.axes()[1], r.k), d * r.k);
    }
}

TEST(LagrangianCapacity, ExactShapes) {
    EXPECT_EQ(lagrangian_capacity(shape::Ball{R(1), 3}), (LagrangianCapacity{R(1, 3), false}));
    EXPECT_EQ(lagrangian_capacity(shape::Ball{R(2), 4}).value, R(1, 2));
    EXPECT_EQ(lagrangian_capacity(shape::ProjectiveSpace{2}), (LagrangianCapacity{R(1, 3), false}));
    EXPECT_EQ(lagrangian_capacity(shape::Ellipsoid4{R(3), R(6)}).value, 2);
    EXPECT_EQ(lagrangian_capacity(shape::Cylinder{2, 3}).value, R(1, 2));
    EXPECT_EQ(lagrangian_capacity(shape::Polydisk{{R(1), R(5, 2)}}).value, 1);
}

TEST(LagrangianCapacity, GenericToricIsALowerBound) {
    auto sq = make_polygon_domain({{0, 1}, {1, 1}, {1, 0}});
    auto c = lagrangian_capacity(shape::GenericToric{sq});
    EXPECT_TRUE(c.lower_bound);
    EXPECT_EQ(c.value, 1);
}

TEST(LagrangianCapacity, UnsupportedShapes) {
    auto code = [](const LagrangianShape& s) {
        try {
            lagrangian_capacity(s);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ParseError;
    };
    EXPECT_EQ(code(shape::Polydisk{{R(1, 2)}}), ErrorCode::UnsupportedShape);
    EXPECT_EQ(code(shape::Cylinder{0, 2}), ErrorCode::UnsupportedShape);
    EXPECT_EQ(code(shape::Ball{R(1), 0}), ErrorCode::UnsupportedShape);
}

TEST(Counts, GwTangency) {
    EXPECT_EQ(gw_tangency_count(1), 1);
    EXPECT_EQ(gw_tangency_count(3), 2);
    EXPECT_EQ(gw_tangency_count(6), 120);
    for (long long n = 1; n <= 15; ++n) EXPECT_EQ(gw_tangency_count(n), oracle::factorial_gamma(n - 1));
}

TEST(Counts, TorusDescendant) {
    EXPECT_EQ(torus_descendant(4, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), 2);
    EXPECT_EQ(torus_descendant(3, {{1, 0}, {0, 1}, {0, 0}}), 0);
    EXPECT_EQ(torus_descendant(2, {{1, 1}, {-1, -1}}), 1);
    try {
        torus_descendant(3, {{1}, {-1}});
        FAIL() << "length mismatch accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
    EXPECT_THROW(torus_descendant(2, {{1, 0}, {-1}}), Error);
}
