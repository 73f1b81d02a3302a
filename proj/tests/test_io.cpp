#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "toricap/io.hpp"

using namespace toricap;
using toricap::io::json;

namespace {
Rational R(long long p, long long q = 1) { return make_rational(p, q); }
}  // namespace

TEST(IoRational, AcceptsStringsAndIntegers) {
    EXPECT_EQ(io::rational_from_json(json("3/4")), R(3, 4));
    EXPECT_EQ(io::rational_from_json(json(5)), R(5));
    EXPECT_EQ(io::rational_to_json(R(-7, 3)), json("-7/3"));
    EXPECT_THROW(io::rational_from_json(json(0.5)), Error);
}

TEST(IoDomain, PolygonRoundTrip) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto d = make_polygon_domain(oracle::random_polygon(rng));
        auto j = io::domain_to_json(d);
        auto back = std::get<MomentDomain2D>(io::domain_from_json(json::parse(j.dump())));
        EXPECT_EQ(back.vertices(), d.vertices());
    }
}

TEST(IoDomain, EllipsoidRoundTrip) {
    EllipsoidSpec e({R(5, 2), R(1)});
    auto back = std::get<EllipsoidSpec>(io::domain_from_json(io::domain_to_json(e)));
    EXPECT_EQ(back.axes(), e.axes());
}

TEST(IoDomain, MalformedInputIsAParseError) {
    for (const char* text : {R"({"type":"disk"})", R"({"vertices":[]})", R"({"type":"polygon","vertices":[[0]]})",
                             R"({"type":"polygon","vertices":[["0","x"],["1","0"]]})"}) {
        try {
            io::domain_from_json(json::parse(text));
            ADD_FAILURE() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ParseError) << text;
        }
    }
    try {
        io::domain_from_json(json::parse(R"({"type":"polygon","vertices":[["0","1"],["1","2"],["2","0"]]})"));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_NE(e.code(), ErrorCode::ParseError);
    }
}

TEST(IoCapacity, RoundTripBothMinimizerKinds) {
    auto tri = make_polygon_domain({{0, 2}, {1, 0}});
    auto c = gh_capacity_toric4(tri, 3);
    auto back = io::capacity_from_json(io::capacity_to_json(c));
    EXPECT_EQ(back.k, c.k);
    EXPECT_EQ(back.value, c.value);
    EXPECT_EQ(back.minimizer, c.minimizer);

    auto s = gh_spectrum_ellipsoid(EllipsoidSpec({R(2), R(3)}), 5);
    auto back2 = io::capacity_from_json(io::capacity_to_json(s));
    ASSERT_TRUE(back2.multiple);
    EXPECT_EQ(back2.multiple->axis, s.multiple->axis);
    EXPECT_EQ(back2.multiple->multiple, s.multiple->multiple);
    EXPECT_EQ(back2.value, R(6));
}

TEST(IoBuilding, RoundTripPreservesEverything) {
    for (long long n = 2; n <= 5; ++n) {
        auto b = canonical_ball_building(n, R(1, 2 * n));
        b.check_parity = n % 2 == 0;
        auto text = io::building_to_json(b).dump(2);
        auto back = io::building_from_json(json::parse(text));
        EXPECT_EQ(back, b);
    }
}

TEST(IoBuilding, ReportRoundTrip) {
    auto b = canonical_ball_building(3, R(1, 10));
    b.nodes[1].energy = R(1, 2);
    auto report = building_validate(b);
    EXPECT_EQ(io::report_from_json(io::report_to_json(report)), report);
}

TEST(IoCsv, PolylineAndSpectrumHeaders) {
    std::ostringstream poly;
    io::write_polyline_csv(poly, boundary_polyline(make_polygon_domain({{0, 1}, {1, 1}, {1, 0}})));
    EXPECT_EQ(poly.str().rfind("x,y\n", 0), 0u);
    EXPECT_NE(poly.str().find("1,1\n"), std::string::npos);

    auto s = round_domain(make_polygon_domain({{0, 1}, {1, 0}}), {1e-3, 0.1});
    std::ostringstream spec;
    io::write_spectrum_csv(spec, orbit_families(s, 1.05));
    std::string text = spec.str();
    EXPECT_EQ(text.rfind("l,m,gcd,action,elliptic_cz,hyperbolic_cz\n", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
    EXPECT_NE(text.find("1,1,1,"), std::string::npos);
}

TEST(IoCsv, FormatDouble) {
    EXPECT_EQ(io::format_double(0.5), "0.5");
    EXPECT_EQ(io::format_double(1.0 / 3.0), "0.333333333333");
}
