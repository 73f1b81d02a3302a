#pragma once

// Moment images of four-dimensional toric domains: concave polygons under a
// non-increasing graph, plus n-dimensional ellipsoids given by their axes.
// Everything here is exact rational arithmetic.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "toricap/error.hpp"
#include "toricap/rational.hpp"

namespace toricap {

struct Point2 {
    Rational x;
    Rational y;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// A non-negative lattice direction (l, m) != (0, 0).
class LatticeDirection {
public:
    LatticeDirection(long long l, long long m) : l_(l), m_(m) {
        if (l < 0 || m < 0) throw Error(ErrorCode::PreconditionViolated, "lattice direction must be non-negative");
        if (l == 0 && m == 0) throw Error(ErrorCode::ZeroDirection, "(0,0) is not a direction");
    }

    long long l() const noexcept { return l_; }
    long long m() const noexcept { return m_; }
    long long gcd() const noexcept { return std::gcd(l_, m_); }
    bool coprime() const noexcept { return gcd() == 1; }
    long long total() const noexcept { return l_ + m_; }
    LatticeDirection primitive() const { return {l_ / gcd(), m_ / gcd()}; }

    friend bool operator==(const LatticeDirection&, const LatticeDirection&) = default;
    friend auto operator<=>(const LatticeDirection&, const LatticeDirection&) = default;

private:
    long long l_;
    long long m_;
};

/// Omega = {0 <= x <= a, 0 <= y <= f(x)} for a concave, non-increasing,
/// piecewise linear f with f(0) = b and f(a) = 0. The vertex list runs from
/// (0, b) to (a, 0). A vertical final edge is allowed (f drops to 0 at x = a).
class MomentDomain2D {
public:
    static MomentDomain2D from_vertices(std::vector<Point2> vertices) {
        if (vertices.size() < 2) throw Error(ErrorCode::BadEndpoints, "need at least two vertices");
        const Point2& first = vertices.front();
        const Point2& last = vertices.back();
        if (first.x != 0 || first.y <= 0)
            throw Error(ErrorCode::BadEndpoints, "first vertex must be (0,b) with b>0");
        if (last.y != 0 || last.x <= 0)
            throw Error(ErrorCode::BadEndpoints, "last vertex must be (a,0) with a>0");

        std::optional<Rational> previous_slope;
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
            Rational dx = vertices[i + 1].x - vertices[i].x;
            Rational dy = vertices[i + 1].y - vertices[i].y;
            if (dx < 0) throw Error(ErrorCode::NotMonotone, "x-coordinates decrease at vertex " + std::to_string(i + 1));
            if (dy > 0) throw Error(ErrorCode::NotMonotone, "boundary increases at vertex " + std::to_string(i + 1));
            if (dx == 0 && dy == 0) throw Error(ErrorCode::NotMonotone, "repeated vertex " + std::to_string(i + 1));
            if (dx == 0) {
                if (i + 2 != vertices.size())
                    throw Error(ErrorCode::NonConcave, "vertical edge is only allowed as the last edge");
                continue;
            }
            Rational slope = dy / dx;
            if (previous_slope && slope >= *previous_slope)
                throw Error(ErrorCode::NonConcave, "edge slopes must strictly decrease (vertex " + std::to_string(i) + ")");
            previous_slope = slope;
        }
        return MomentDomain2D(std::move(vertices));
    }

    const std::vector<Point2>& vertices() const noexcept { return vertices_; }
    const Rational& width() const noexcept { return vertices_.back().x; }    // a
    const Rational& height() const noexcept { return vertices_.front().y; }  // b
    std::size_t edge_count() const noexcept { return vertices_.size() - 1; }

    bool has_vertical_last_edge() const {
        const auto n = vertices_.size();
        return vertices_[n - 2].x == vertices_[n - 1].x;
    }

    /// Non-vertical edges as (point, slope); f is their pointwise minimum on [0, a].
    struct EdgeLine {
        Point2 anchor;
        Rational slope;

        Rational at(const Rational& x) const { return anchor.y + slope * (x - anchor.x); }
    };

    std::vector<EdgeLine> edge_lines() const {
        std::vector<EdgeLine> lines;
        for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
            Rational dx = vertices_[i + 1].x - vertices_[i].x;
            if (dx == 0) continue;
            lines.push_back({vertices_[i], (vertices_[i + 1].y - vertices_[i].y) / dx});
        }
        return lines;
    }

    bool contains(const Point2& p) const {
        if (p.x < 0 || p.y < 0 || p.x > width()) return false;
        for (const auto& line : edge_lines())
            if (p.y > line.at(p.x)) return false;
        return true;
    }

    MomentDomain2D scaled(const Rational& c) const {
        if (c <= 0) throw Error(ErrorCode::PreconditionViolated, "scale factor must be positive");
        std::vector<Point2> out;
        out.reserve(vertices_.size());
        for (const auto& v : vertices_) out.push_back({v.x * c, v.y * c});
        return MomentDomain2D(std::move(out));
    }

    friend bool operator==(const MomentDomain2D&, const MomentDomain2D&) = default;

private:
    explicit MomentDomain2D(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {}

    std::vector<Point2> vertices_;
};

inline MomentDomain2D make_polygon_domain(std::vector<Point2> vertices) {
    return MomentDomain2D::from_vertices(std::move(vertices));
}

/// E(a_1, ..., a_n), axes kept sorted non-decreasing.
class EllipsoidSpec {
public:
    explicit EllipsoidSpec(std::vector<Rational> axes) : axes_(std::move(axes)) {
        if (axes_.empty()) throw Error(ErrorCode::PreconditionViolated, "ellipsoid needs at least one axis");
        for (const auto& a : axes_)
            if (a <= 0) throw Error(ErrorCode::PreconditionViolated, "ellipsoid axes must be positive");
        std::sort(axes_.begin(), axes_.end());
    }

    static EllipsoidSpec ball(const Rational& capacity, std::size_t n) {
        return EllipsoidSpec(std::vector<Rational>(n, capacity));
    }

    const std::vector<Rational>& axes() const noexcept { return axes_; }
    std::size_t dimension() const noexcept { return axes_.size(); }

    /// The moment triangle with x-extent a_1 and y-extent a_2.
    MomentDomain2D simplex() const {
        require_four_dimensional();
        return MomentDomain2D::from_vertices({{0, axes_[1]}, {axes_[0], 0}});
    }

    void require_four_dimensional() const {
        if (axes_.size() != 2) throw Error(ErrorCode::PreconditionViolated, "operation needs a four-dimensional ellipsoid (two axes)");
    }

    friend bool operator==(const EllipsoidSpec&, const EllipsoidSpec&) = default;

private:
    std::vector<Rational> axes_;
};

/// Oriented moment triangle {x/x_extent + y/y_extent <= 1}. Unlike
/// EllipsoidSpec the extents are not reordered.
struct SimplexExtents {
    Rational x_extent;
    Rational y_extent;

    static SimplexExtents of(const EllipsoidSpec& e) {
        e.require_four_dimensional();
        return {e.axes()[0], e.axes()[1]};
    }

    Rational load(const Point2& p) const { return p.x / x_extent + p.y / y_extent; }
};

// ---------------------------------------------------------------------------
// diagonal

/// sup{t > 0 : (t, t) in Omega}. Each edge line gives the crossing of y = x
/// with that line; the diagonal is the smallest crossing, capped by a.
inline Rational diagonal(const MomentDomain2D& domain) {
    Rational best = domain.width();
    for (const auto& line : domain.edge_lines()) {
        // t = y0 + s (t - x0)  =>  t = (y0 - s x0) / (1 - s); s <= 0 so 1 - s >= 1.
        Rational t = (line.anchor.y - line.slope * line.anchor.x) / (1 - line.slope);
        best = std::min(best, t);
    }
    return best;
}

inline Rational diagonal(const EllipsoidSpec& e) {
    Rational inverse_sum = 0;
    for (const auto& a : e.axes()) inverse_sum += 1 / a;
    return 1 / inverse_sum;
}

/// Diagonal of the non-disjoint union of cylinders {x : x_i <= r for some i}.
/// Every diagonal point (t,...,t) with t <= r is in the set, none beyond.
inline Rational diagonal_union_of_cylinders(const Rational& r) {
    if (r <= 0) throw Error(ErrorCode::PreconditionViolated, "cylinder radius must be positive");
    return r;
}

// ---------------------------------------------------------------------------
// support function

inline Rational support(const MomentDomain2D& domain, const Rational& vx, const Rational& vy) {
    if (vx < 0 || vy < 0) throw Error(ErrorCode::PreconditionViolated, "support direction must be non-negative");
    if (vx == 0 && vy == 0) throw Error(ErrorCode::ZeroDirection, "support direction is zero");
    Rational best = 0;  // origin
    for (const auto& p : domain.vertices()) best = std::max(best, Rational(vx * p.x + vy * p.y));
    return best;
}

inline Rational support(const MomentDomain2D& domain, const LatticeDirection& d) {
    return support(domain, Rational(d.l()), Rational(d.m()));
}

// ---------------------------------------------------------------------------
// ellipsoid inclusion and equal-diagonal enclosures

/// Vertex test; the triangle is a half-plane intersected with the quadrant,
/// so checking the vertices of the convex polygon is sufficient.
inline bool included_in_simplex(const MomentDomain2D& domain, const SimplexExtents& tri) {
    return std::all_of(domain.vertices().begin(), domain.vertices().end(),
                       [&](const Point2& p) { return tri.load(p) <= 1; });
}

inline bool included_in_ellipsoid(const MomentDomain2D& domain, const EllipsoidSpec& e) {
    return included_in_simplex(domain, SimplexExtents::of(e));
}

struct EnclosingEllipsoid {
    SimplexExtents extents;
    Rational max_load;  // max over vertices of x/a + y/b, <= 1
    Point2 witness;     // a vertex attaining max_load
};

struct EnclosureOptions {
    int samples = 32;           // grid points on (d, a_max]
    Rational a_max_factor = 10;  // a_max = factor * d
};

struct EnclosureResult {
    Rational diagonal;
    // Feasible x-extents form an interval; nullopt bounds mean open ends
    // at d (from the symmetric branch) or at infinity.
    bool feasible = false;
    std::optional<Rational> x_extent_min;  // closed lower end when present
    std::optional<Rational> x_extent_max;  // closed upper end when present
    std::vector<EnclosingEllipsoid> ellipsoids;
};

namespace detail {

inline EnclosingEllipsoid describe_enclosure(const MomentDomain2D& domain, const SimplexExtents& tri) {
    EnclosingEllipsoid out{tri, 0, domain.vertices().front()};
    for (const auto& p : domain.vertices()) {
        Rational load = tri.load(p);
        if (load > out.max_load) {
            out.max_load = load;
            out.witness = p;
        }
    }
    return out;
}

// factor^(j/steps) rounded to six decimals, so grid points keep short denominators.
inline Rational geometric_step(const Rational& factor, int j, int steps) {
    double r = std::pow(to_double(factor), static_cast<double>(j) / steps);
    return Rational(Integer(static_cast<long long>(std::llround(r * 1'000'000))), Integer(1'000'000));
}

}  // namespace detail

/// All E(a, b) (x-extent a, y-extent b) with diagonal(E) == diagonal(Omega)
/// that contain Omega. With u = 1/a the equal-diagonal family is
/// b = 1/(1/d - u), u in (0, 1/d), and each vertex (x, y) gives the linear
/// constraint (x - y) u <= 1 - y/d, so the feasible set is an exact interval.
/// The returned list holds its closed endpoints and grid samples inside it.
inline EnclosureResult equal_diagonal_enclosing_ellipsoids(const MomentDomain2D& domain,
                                                           const EnclosureOptions& options = {}) {
    EnclosureResult result;
    const Rational d = diagonal(domain);
    result.diagonal = d;
    const Rational u_cap = 1 / d;

    // u in (0, u_cap) open, intersected with closed half-lines.
    std::optional<Rational> u_lo;
    std::optional<Rational> u_hi;
    bool infeasible = false;
    for (const auto& p : domain.vertices()) {
        Rational coeff = p.x - p.y;
        Rational rhs = 1 - p.y / d;
        if (coeff == 0) {
            if (rhs < 0) infeasible = true;
        } else if (coeff > 0) {
            Rational bound = rhs / coeff;
            if (!u_hi || bound < *u_hi) u_hi = bound;
        } else {
            Rational bound = rhs / coeff;
            if (!u_lo || bound > *u_lo) u_lo = bound;
        }
    }
    auto in_open_range = [&](const Rational& u) { return u > 0 && u < u_cap; };
    auto admissible = [&](const Rational& u) {
        return in_open_range(u) && (!u_lo || u >= *u_lo) && (!u_hi || u <= *u_hi);
    };
    if (infeasible) return result;
    if (u_lo && u_hi && *u_lo > *u_hi) return result;
    if (u_lo && *u_lo >= u_cap) return result;
    if (u_hi && *u_hi <= 0) return result;
    result.feasible = true;

    auto extents_for = [&](const Rational& u) { return SimplexExtents{1 / u, 1 / (u_cap - u)}; };

    std::vector<Rational> us;
    if (u_lo && admissible(*u_lo)) {
        us.push_back(*u_lo);
        result.x_extent_max = 1 / *u_lo;
    }
    if (u_hi && admissible(*u_hi)) {
        us.push_back(*u_hi);
        result.x_extent_min = 1 / *u_hi;
    }

    // Geometric grid a_j = d * factor^(j/samples) on (d, a_max], and its mirror (a and b swapped).
    for (int j = 1; j <= options.samples; ++j) {
        Rational a = d * detail::geometric_step(options.a_max_factor, j, options.samples);
        if (a <= d) continue;
        Rational u = 1 / a;
        if (admissible(u)) us.push_back(u);
        Rational mirrored = u_cap - u;
        if (admissible(mirrored)) us.push_back(mirrored);
    }
    std::sort(us.begin(), us.end(), std::greater<>());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    for (const auto& u : us) result.ellipsoids.push_back(detail::describe_enclosure(domain, extents_for(u)));
    return result;
}

enum class IntersectionKind { Isolated, Segment, NotOnBoundary };

inline const char* to_string(IntersectionKind k) {
    switch (k) {
    case IntersectionKind::Isolated: return "Isolated";
    case IntersectionKind::Segment: return "Segment";
    case IntersectionKind::NotOnBoundary: return "NotOnBoundary";
    }
    return "?";
}

/// Classifies the diagonal point (d, d) within boundary(Omega) intersected
/// with the hypotenuse {x/a + y/b = 1} of an enclosing equal-diagonal ellipsoid.
inline IntersectionKind diagonal_intersection_isolated(const MomentDomain2D& domain, const SimplexExtents& tri) {
    const Rational d = diagonal(domain);
    if (!included_in_simplex(domain, tri))
        throw Error(ErrorCode::PreconditionViolated, "domain is not contained in the ellipsoid");
    if (1 / tri.x_extent + 1 / tri.y_extent != 1 / d)
        throw Error(ErrorCode::PreconditionViolated, "domain and ellipsoid diagonals differ");

    const Point2 corner{d, d};
    const auto& vs = domain.vertices();
    bool on_boundary = false;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        const Point2& p = vs[i];
        const Point2& q = vs[i + 1];
        // (d,d) on segment pq?
        Rational cross = (q.x - p.x) * (corner.y - p.y) - (q.y - p.y) * (corner.x - p.x);
        if (cross != 0) continue;
        if (corner.x < std::min(p.x, q.x) || corner.x > std::max(p.x, q.x)) continue;
        if (corner.y < std::min(p.y, q.y) || corner.y > std::max(p.y, q.y)) continue;
        on_boundary = true;
        if (tri.load(p) == 1 && tri.load(q) == 1) return IntersectionKind::Segment;
    }
    return on_boundary ? IntersectionKind::Isolated : IntersectionKind::NotOnBoundary;
}

inline IntersectionKind diagonal_intersection_isolated(const MomentDomain2D& domain, const EllipsoidSpec& e) {
    return diagonal_intersection_isolated(domain, SimplexExtents::of(e));
}

/// Closed boundary polyline: origin, the graph vertices, back to the origin.
inline std::vector<Point2> boundary_polyline(const MomentDomain2D& domain) {
    std::vector<Point2> out;
    out.push_back({0, 0});
    out.insert(out.end(), domain.vertices().begin(), domain.vertices().end());
    out.push_back({0, 0});
    return out;
}

}  // namespace toricap
