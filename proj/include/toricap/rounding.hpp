#pragma once

// Smooth rounding of a moment polygon and the Reeb orbit spectrum of the
// rounded boundary: Gauss points, Morse-Bott families with actions and
// multiplicities, their elliptic/hyperbolic split, and flat-torus geodesics.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricap/error.hpp"
#include "toricap/moment_domain.hpp"

namespace toricap {

struct RoundingParams {
    double tau = 1e-3;  // smoothing scale
    double v = 0.1;     // endpoint slope bound
};

/// The rounded boundary
///   g(x) = softmin_tau(lines)(x) + lift - eta ((x - a/2)/a)^2
/// where softmin_tau = -tau log sum exp(-l_i/tau) runs over the polygon's edge
/// lines and two endpoint caps. g is smooth, strictly concave and strictly
/// decreasing on [0, a'], with g(a') = 0.
class SmoothDomain2D {
public:
    struct Line {
        double x0;
        double y0;
        double slope;

        double at(double x) const { return y0 + slope * (x - x0); }
    };

    double value(double x) const { return eval(x).value; }
    double derivative(double x) const { return eval(x).slope; }
    double second_derivative(double x) const { return eval(x).curvature; }

    double tau() const noexcept { return tau_; }
    double v() const noexcept { return v_; }
    double eta() const noexcept { return eta_; }
    double lift() const noexcept { return lift_; }
    double a() const noexcept { return a_; }              // polygon width
    double b() const noexcept { return b_; }              // polygon height
    double a_prime() const noexcept { return a_prime_; }  // root of g
    double b_prime() const noexcept { return b_prime_; }  // g(0)
    double left_shift() const noexcept { return delta_left_; }
    double right_shift() const noexcept { return delta_right_; }
    /// Upper bound on the Hausdorff distance between the polygon and the rounding.
    double hausdorff_bound() const noexcept { return hausdorff_; }
    const std::vector<Line>& lines() const noexcept { return lines_; }
    const MomentDomain2D& source() const noexcept { return source_; }

private:
    friend SmoothDomain2D round_domain(const MomentDomain2D&, const RoundingParams&);

    struct Jet {
        double value;
        double slope;
        double curvature;
    };

    // Log-sum-exp evaluation of g, g', g'' with weights w_i ~ exp(-(l_i - min)/tau).
    Jet eval(double x) const {
        double lo = lines_.front().at(x);
        for (const auto& line : lines_) lo = std::min(lo, line.at(x));
        double sum = 0, s1 = 0, s2 = 0;
        for (const auto& line : lines_) {
            double w = std::exp(-(line.at(x) - lo) / tau_);
            sum += w;
            s1 += w * line.slope;
            s2 += w * line.slope * line.slope;
        }
        double mean = s1 / sum;
        double variance = std::max(0.0, s2 / sum - mean * mean);
        double r = (x - a_ / 2) / a_;
        return {lo - tau_ * std::log(sum) + lift_ - eta_ * r * r, mean - 2 * eta_ * r / a_,
                -variance / tau_ - 2 * eta_ / (a_ * a_)};
    }

    explicit SmoothDomain2D(MomentDomain2D source) : source_(std::move(source)) {}

    MomentDomain2D source_;
    std::vector<Line> lines_;
    double tau_ = 0, v_ = 0, eta_ = 0, lift_ = 0;
    double a_ = 0, b_ = 0, a_prime_ = 0, b_prime_ = 0;
    double delta_left_ = 0, delta_right_ = 0;
    double hausdorff_ = 0;
};

namespace detail {

// Root of a strictly decreasing function on [lo, hi] with f(lo) >= 0 > f(hi).
template <class F>
double bisect_decreasing(F&& f, double lo, double hi, double tol) {
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) >= 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Builds the rounding. The caps are pushed down in steps of tau/2 until
/// -v <= g'(0) < 0 and g'(a') < -1/v hold; the lift keeps the polygon inside.
inline SmoothDomain2D round_domain(const MomentDomain2D& domain, const RoundingParams& params = {}) {
    const double tau = params.tau;
    const double v = params.v;
    if (!(tau > 0) || !(v > 0) || !std::isfinite(tau) || !std::isfinite(v))
        throw Error(ErrorCode::PreconditionViolated, "tau and v must be positive");

    SmoothDomain2D out(domain);
    out.tau_ = tau;
    out.v_ = v;
    out.a_ = to_double(domain.width());
    out.b_ = to_double(domain.height());
    out.eta_ = tau / 10;
    const double a = out.a_;
    const double b = out.b_;

    std::vector<Point2> vertices = domain.vertices();
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : vertices) pts.emplace_back(to_double(p.x), to_double(p.y));

    std::vector<SmoothDomain2D::Line> edges;
    for (const auto& e : domain.edge_lines())
        edges.push_back({to_double(e.anchor.x), to_double(e.anchor.y), to_double(e.slope)});

    const bool vertical_end = domain.has_vertical_last_edge();
    const double y_corner = vertical_end ? pts[pts.size() - 2].second : 0.0;  // f(a-)
    const double s_first = edges.front().slope;
    const double s_last = edges.back().slope;

    double sigma_left;
    if (s_first < -v / 2) {
        sigma_left = -v / 2;
    } else {
        sigma_left = s_first - std::min(tau / a, (v - std::abs(s_first)) / 2);
    }
    const double sigma_right = vertical_end ? -std::max(2 / v, y_corner / tau) : std::min(s_last, -2 / v);

    const double max_shift = std::min(a, b) / 4;
    double delta_left = 0, delta_right = 0;
    for (;;) {
        out.lines_ = edges;
        out.lines_.push_back({0.0, b - delta_left, sigma_left});
        out.lines_.push_back({a, y_corner - delta_right, sigma_right});
        out.delta_left_ = delta_left;
        out.delta_right_ = delta_right;

        // Largest vertical gap between f and the plain minimum of the lines.
        double dip = 0;
        for (const auto& [x, y] : pts) {
            double lo = out.lines_.front().at(x);
            for (const auto& line : out.lines_) lo = std::min(lo, line.at(x));
            dip = std::max(dip, y - lo);
        }
        out.lift_ = tau * std::log(static_cast<double>(out.lines_.size())) + dip + out.eta_;

        out.b_prime_ = out.value(0);
        double hi = a + std::max(tau, 1e-12 * a);
        while (out.value(hi) >= 0) hi = a + 2 * (hi - a);
        out.a_prime_ = detail::bisect_decreasing([&](double x) { return out.value(x); }, a, hi, 1e-15 * (1 + a));

        const double left_slope = out.derivative(0);
        const double right_slope = out.derivative(out.a_prime_);
        const bool left_ok = left_slope >= -v && left_slope < 0;
        const bool right_ok = right_slope < -1 / v;
        if (left_ok && right_ok) break;
        if (!left_ok) delta_left += tau / 2;
        if (!right_ok) delta_right += tau / 2;
        if (delta_left > max_shift || delta_right > max_shift)
            throw Error(ErrorCode::SlopeConditionUnreachable,
                        "endpoint slope conditions need a cap shift beyond min(a,b)/4; decrease tau or increase v");
    }

    // Points of the rounding over [0, a] are within lift of the graph; over
    // (a, a'] they are within hypot(a' - a, lift) of the corner column.
    out.hausdorff_ = std::hypot(out.a_prime_ - a, out.lift_);
    return out;
}

struct InvariantCheck {
    bool decreasing = true;
    bool concave = true;
    bool endpoint_slopes = true;
    bool contains_polygon = true;
    bool within_hausdorff = true;

    bool ok() const { return decreasing && concave && endpoint_slopes && contains_polygon && within_hausdorff; }
};

/// Grid verification of the rounding's defining properties.
inline InvariantCheck verify_rounding(const SmoothDomain2D& s, int samples = 2000) {
    InvariantCheck check;
    const double ap = s.a_prime();
    double previous_slope = s.derivative(0);
    double previous_value = s.value(0);
    for (int i = 1; i <= samples; ++i) {
        double x = ap * i / samples;
        double g = s.value(x);
        double gp = s.derivative(x);
        if (!(gp < 0) || !(g < previous_value)) check.decreasing = false;
        if (!(gp < previous_slope)) check.concave = false;
        previous_slope = gp;
        previous_value = g;
    }
    double g0 = s.derivative(0);
    if (!(g0 >= -s.v() && g0 < 0 && s.derivative(ap) < -1 / s.v())) check.endpoint_slopes = false;

    // f is piecewise linear, g concave: g - f on each edge is concave, so
    // sampling edges densely plus the vertices bounds it well.
    const auto& vs = s.source().vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        double x0 = to_double(vs[i].x), y0 = to_double(vs[i].y);
        double x1 = to_double(vs[i + 1].x), y1 = to_double(vs[i + 1].y);
        if (x0 == x1) continue;
        for (int j = 0; j <= 64; ++j) {
            double t = j / 64.0;
            double x = x0 + t * (x1 - x0);
            double f = y0 + t * (y1 - y0);
            double g = s.value(x);
            if (g < f - 1e-12) check.contains_polygon = false;
            if (g - f > s.hausdorff_bound() + 1e-12) check.within_hausdorff = false;
        }
    }
    if (ap < s.a() || ap - s.a() > s.hausdorff_bound()) check.within_hausdorff = false;
    return check;
}

/// Graph samples from (0, b') to (a', 0), closed through the origin.
inline std::vector<std::pair<double, double>> rounded_polyline(const SmoothDomain2D& s, int samples = 512) {
    if (samples < 2) throw Error(ErrorCode::PreconditionViolated, "need at least two samples");
    std::vector<std::pair<double, double>> out;
    out.emplace_back(0.0, 0.0);
    for (int i = 0; i < samples; ++i) {
        double x = s.a_prime() * i / (samples - 1);
        out.emplace_back(x, i + 1 == samples ? 0.0 : std::max(0.0, s.value(x)));
    }
    out.emplace_back(0.0, 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Gauss map and Reeb dynamics

struct BoundaryPoint {
    double x;
    double y;
};

/// Boundary point with outward normal proportional to (l, m), i.e. g'(x) = -l/m.
/// Axis directions and slopes outside (g'(a'), g'(0)) have none.
inline std::optional<BoundaryPoint> gauss_point(const SmoothDomain2D& s, const LatticeDirection& d) {
    if (d.l() == 0 || d.m() == 0) return std::nullopt;
    const double target = -static_cast<double>(d.l()) / static_cast<double>(d.m());
    if (!(target < s.derivative(0) && target > s.derivative(s.a_prime()))) return std::nullopt;
    double x = detail::bisect_decreasing([&](double t) { return s.derivative(t) - target; }, 0.0, s.a_prime(), 1e-12);
    return BoundaryPoint{x, s.value(x)};
}

/// max over the rounded domain of vx x + vy y, by golden section on the
/// strictly concave objective vx x + vy g(x).
inline double smooth_support(const SmoothDomain2D& s, double vx, double vy) {
    if (vx < 0 || vy < 0) throw Error(ErrorCode::PreconditionViolated, "support direction must be non-negative");
    if (vx == 0 && vy == 0) throw Error(ErrorCode::ZeroDirection, "support direction is zero");
    if (vy == 0) return vx * s.a_prime();
    if (vx == 0) return vy * s.b_prime();
    auto objective = [&](double x) { return vx * x + vy * s.value(x); };
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double lo = 0, hi = s.a_prime();
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    for (int i = 0; i < 200 && hi - lo > 1e-13 * (1 + s.a_prime()); ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = objective(x1);
        }
    }
    return std::max({objective(0.5 * (lo + hi)), objective(0.0), vx * s.a_prime()});
}

struct ReebRates {
    double rate1;
    double rate2;
};

/// Angular velocities of the Reeb flow at (x, g(x)): 2 pi G_i / <G, w> with
/// G the unit outward normal.
inline ReebRates reeb_angular_velocity(const SmoothDomain2D& s, double x) {
    if (!(x > 0) || !(x < s.a_prime())) throw Error(ErrorCode::AxisPoint, "boundary point lies on an axis");
    const double y = s.value(x);
    if (!(y > 0)) throw Error(ErrorCode::AxisPoint, "boundary point lies on an axis");
    const double gp = s.derivative(x);
    const double norm = std::sqrt(1 + gp * gp);
    const double g1 = -gp / norm, g2 = 1 / norm;
    const double pairing = g1 * x + g2 * y;
    const double two_pi = 2 * std::numbers::pi;
    return {two_pi * g1 / pairing, two_pi * g2 / pairing};
}

struct ReebOrbitFamily {
    LatticeDirection direction;
    BoundaryPoint point;
    double action;
    long long multiplicity;
    LatticeDirection underlying_simple;
    bool axis;  // (l, 0) or (0, m): the family sits over an axis point
};

struct OrbitSplit {
    long long elliptic_cz;
    long long hyperbolic_cz;
    double elliptic_action;
    double hyperbolic_action;
};

/// The family for (l, m), or nullopt when the direction misses the Gauss image.
inline std::optional<ReebOrbitFamily> orbit_family(const SmoothDomain2D& s, const LatticeDirection& d) {
    if (d.m() == 0) {
        return ReebOrbitFamily{d, {s.a_prime(), 0.0}, d.l() * s.a_prime(), d.gcd(), d.primitive(), true};
    }
    if (d.l() == 0) {
        return ReebOrbitFamily{d, {0.0, s.b_prime()}, d.m() * s.b_prime(), d.gcd(), d.primitive(), true};
    }
    auto p = gauss_point(s, d);
    if (!p) return std::nullopt;
    double action = d.l() * p->x + d.m() * p->y;
    return ReebOrbitFamily{d, *p, action, d.gcd(), d.primitive(), false};
}

/// All families with action <= K, sorted by action then (l, m).
/// Since the rounding contains the polygon, action(l, m) >= max(l a, m b,
/// (l + m) d), which bounds the enumeration.
inline std::vector<ReebOrbitFamily> orbit_families(const SmoothDomain2D& s, double cutoff) {
    if (!(cutoff > 0)) throw Error(ErrorCode::PreconditionViolated, "cutoff must be positive");
    const double d = to_double(diagonal(s.source()));
    const long long l_max = static_cast<long long>(std::floor(cutoff / s.a()));
    const long long m_max = static_cast<long long>(std::floor(cutoff / s.b()));
    const long long total_max = static_cast<long long>(std::floor(cutoff / d));

    std::vector<ReebOrbitFamily> out;
    for (long long l = 0; l <= l_max; ++l) {
        for (long long m = 0; m <= m_max && l + m <= total_max; ++m) {
            if (l == 0 && m == 0) continue;
            auto family = orbit_family(s, LatticeDirection(l, m));
            if (family && family->action <= cutoff) out.push_back(*family);
        }
    }
    std::sort(out.begin(), out.end(), [](const ReebOrbitFamily& x, const ReebOrbitFamily& y) {
        if (x.action != y.action) return x.action < y.action;
        return x.direction < y.direction;
    });
    return out;
}

inline OrbitSplit split_family(const ReebOrbitFamily& f) {
    const long long total = f.direction.total();
    return {2 * total + 1, 2 * total, f.action, f.action};
}

/// Minimal action of an elliptic orbit with CZ 2k + 1, i.e. min over l + m = k.
inline double capacity_via_spectrum(const SmoothDomain2D& s, long long k) {
    if (k < 1) throw Error(ErrorCode::PreconditionViolated, "k must be >= 1");
    double best = std::numeric_limits<double>::infinity();
    for (long long l = 0; l <= k; ++l) {
        LatticeDirection d(l, k - l);
        auto family = orbit_family(s, d);
        if (!family)
            throw Error(ErrorCode::DirectionOutsideGaussImage,
                        "direction (" + std::to_string(l) + "," + std::to_string(k - l) +
                            ") has no Reeb family; increase v");
        best = std::min(best, family->action);
    }
    return best;
}

// ---------------------------------------------------------------------------
// flat torus geodesics

struct GeodesicClass {
    std::vector<long long> homology;
    double length;
    int morse_index = 0;  // flat metric: every closed geodesic is a minimum
};

/// Closed geodesics of the flat torus R^n / (L_1 Z x ... x L_n Z) with length
/// <= cutoff, one per nonzero class, sorted by length then class.
inline std::vector<GeodesicClass> flat_torus_geodesic_spectrum(std::size_t n, const std::vector<double>& lengths,
                                                               double cutoff) {
    if (lengths.size() != n) throw Error(ErrorCode::LengthMismatch, "need one lattice length per dimension");
    for (double len : lengths)
        if (!(len > 0)) throw Error(ErrorCode::PreconditionViolated, "lattice lengths must be positive");
    std::vector<GeodesicClass> out;
    if (n == 0 || !(cutoff > 0)) return out;

    const double slack = 1e-12 * cutoff;
    std::vector<long long> bound(n);
    for (std::size_t i = 0; i < n; ++i) bound[i] = static_cast<long long>(std::floor((cutoff + slack) / lengths[i]));

    std::vector<long long> current(n);
    auto recurse = [&](auto&& self, std::size_t i, double squared) -> void {
        if (squared > (cutoff + slack) * (cutoff + slack)) return;
        if (i == n) {
            if (std::any_of(current.begin(), current.end(), [](long long c) { return c != 0; }))
                out.push_back({current, std::sqrt(squared), 0});
            return;
        }
        for (long long c = -bound[i]; c <= bound[i]; ++c) {
            current[i] = c;
            double step = c * lengths[i];
            self(self, i + 1, squared + step * step);
        }
    };
    recurse(recurse, 0, 0.0);
    std::sort(out.begin(), out.end(), [](const GeodesicClass& x, const GeodesicClass& y) {
        if (x.length != y.length) return x.length < y.length;
        return x.homology < y.homology;
    });
    return out;
}

}  // namespace toricap
