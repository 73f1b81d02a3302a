#pragma once

// Gutt-Hutchings capacities of four-dimensional convex toric domains (two
// independent evaluation paths), Lagrangian capacities of the shapes where
// they are known exactly, and the closed-form curve counts.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toricap/error.hpp"
#include "toricap/moment_domain.hpp"
#include "toricap/rational.hpp"

namespace toricap {

/// The i-th multiple of the a-axis or the j-th multiple of the b-axis.
struct AxisMultiple {
    enum class Axis { A, B };
    Axis axis;
    long long multiple;

    friend bool operator==(const AxisMultiple&, const AxisMultiple&) = default;
};

struct CapacityReport {
    long long k = 0;
    Rational value;
    std::optional<LatticeDirection> minimizer;  // toric min-max path
    std::optional<AxisMultiple> multiple;       // ellipsoid spectrum path
};

inline void require_positive_k(long long k) {
    if (k < 1) throw Error(ErrorCode::PreconditionViolated, "k must be >= 1");
}

/// c_k = min over l+m = k of support(Omega, (l, m)); ties go to the smallest l.
inline CapacityReport gh_capacity_toric4(const MomentDomain2D& domain, long long k) {
    require_positive_k(k);
    CapacityReport report{k, 0, std::nullopt, std::nullopt};
    for (long long l = 0; l <= k; ++l) {
        LatticeDirection dir(l, k - l);
        Rational value = support(domain, dir);
        if (!report.minimizer || value < report.value) {
            report.value = value;
            report.minimizer = dir;
        }
    }
    return report;
}

namespace detail {

// k-th element of the merge of {i*A} and {j*B}, i, j >= 1, a-terms first on ties.
template <class Int>
AxisMultiple merge_multiples(const Int& A, const Int& B, long long k) {
    long long i = 1, j = 1;
    AxisMultiple last{AxisMultiple::Axis::A, 0};
    for (long long step = 0; step < k; ++step) {
        if (Int(i) * A <= Int(j) * B) {
            last = {AxisMultiple::Axis::A, i++};
        } else {
            last = {AxisMultiple::Axis::B, j++};
        }
    }
    return last;
}

}  // namespace detail

/// k-th term (1-indexed) of the sorted multiset {i a} u {j b}. Both axes are
/// put over a common denominator and the merge runs on integers.
inline CapacityReport gh_spectrum_ellipsoid(const EllipsoidSpec& e, long long k) {
    e.require_four_dimensional();
    require_positive_k(k);
    const Rational& a = e.axes()[0];
    const Rational& b = e.axes()[1];
    Integer den = boost::multiprecision::lcm(boost::multiprecision::denominator(a), boost::multiprecision::denominator(b));
    Integer A = boost::multiprecision::numerator(a) * (den / boost::multiprecision::denominator(a));
    Integer B = boost::multiprecision::numerator(b) * (den / boost::multiprecision::denominator(b));

    AxisMultiple term;
    constexpr long long small = 1LL << 30;
    if (A < small && B < small && k < small) {
        term = detail::merge_multiples<std::int64_t>(A.convert_to<std::int64_t>(), B.convert_to<std::int64_t>(), k);
    } else {
        term = detail::merge_multiples<Integer>(A, B, k);
    }
    Rational value = (term.axis == AxisMultiple::Axis::A ? a : b) * term.multiple;
    return {k, value, std::nullopt, term};
}

struct EqualDiagonalIndex {
    long long k;            // smallest k with C_k = k * diagonal
    long long p_plus_q;     // b/a = p/q in lowest terms
    Rational capacity;      // C_k
};

/// Smallest k with gh_spectrum_ellipsoid(e, k) == k * diagonal(e). The
/// identity holds at k = p + q; it cannot hold earlier because the number of
/// spectrum terms <= t is floor(t/a) + floor(t/b) <= t/d, so C_k >= k d with
/// equality only at a common multiple of a and b. The search still verifies
/// every k up to p + q.
inline EqualDiagonalIndex find_k_equal_diagonal(const EllipsoidSpec& e) {
    e.require_four_dimensional();
    const Rational ratio = e.axes()[1] / e.axes()[0];
    const Integer p = boost::multiprecision::numerator(ratio);
    const Integer q = boost::multiprecision::denominator(ratio);
    const Integer pq = p + q;
    if (pq > Integer(std::numeric_limits<long long>::max() / 4))
        throw Error(ErrorCode::PreconditionViolated, "axis ratio has too large a height");
    const long long target = pq.convert_to<long long>();
    const Rational d = diagonal(e);

    // Walk the merge once, checking the identity at each step.
    const Rational& a = e.axes()[0];
    const Rational& b = e.axes()[1];
    long long i = 1, j = 1;
    for (long long k = 1; k <= target; ++k) {
        Rational next_a = a * i;
        Rational next_b = b * j;
        Rational value;
        if (next_a <= next_b) {
            value = next_a;
            ++i;
        } else {
            value = next_b;
            ++j;
        }
        if (value == d * k) return {k, target, value};
    }
    throw Error(ErrorCode::IrrationalRatio, "identity C_k = k * diagonal not reached by k = p + q");
}

// ---------------------------------------------------------------------------
// Lagrangian capacity

namespace shape {
struct Ball {
    Rational radius;  // capacity r of B^{2n}(r)
    int n;
};
struct ProjectiveSpace {
    int n;  // CP^n, line area 1
};
struct Ellipsoid4 {
    Rational a;
    Rational b;
};
/// B^{2k}(1) x C^m.
struct Cylinder {
    int k;
    int m;
};
/// B^2(1) x B^2(r_1) x ... x B^2(r_m).
struct Polydisk {
    std::vector<Rational> radii;
};
struct GenericToric {
    MomentDomain2D domain;
};
}  // namespace shape

using LagrangianShape = std::variant<shape::Ball, shape::ProjectiveSpace, shape::Ellipsoid4, shape::Cylinder,
                                     shape::Polydisk, shape::GenericToric>;

struct LagrangianCapacity {
    Rational value;
    bool lower_bound = false;  // true: only c_L >= value is known

    friend bool operator==(const LagrangianCapacity&, const LagrangianCapacity&) = default;
};

inline LagrangianCapacity lagrangian_capacity(const LagrangianShape& s) {
    struct Visitor {
        LagrangianCapacity operator()(const shape::Ball& b) const {
            if (b.n < 1 || b.radius <= 0) throw Error(ErrorCode::UnsupportedShape, "ball needs n >= 1 and r > 0");
            return {b.radius / b.n, false};
        }
        LagrangianCapacity operator()(const shape::ProjectiveSpace& p) const {
            if (p.n < 1) throw Error(ErrorCode::UnsupportedShape, "projective space needs n >= 1");
            return {make_rational(1, p.n + 1), false};
        }
        LagrangianCapacity operator()(const shape::Ellipsoid4& e) const {
            if (e.a <= 0 || e.b <= 0) throw Error(ErrorCode::UnsupportedShape, "ellipsoid axes must be positive");
            return {diagonal(EllipsoidSpec({e.a, e.b})), false};
        }
        LagrangianCapacity operator()(const shape::Cylinder& c) const {
            if (c.k < 1 || c.m < 0) throw Error(ErrorCode::UnsupportedShape, "cylinder needs k >= 1 and m >= 0");
            return {make_rational(1, c.k), false};
        }
        LagrangianCapacity operator()(const shape::Polydisk& p) const {
            for (const auto& r : p.radii)
                if (r < 1) throw Error(ErrorCode::UnsupportedShape, "polydisk factors after the first must have r >= 1");
            return {1, false};
        }
        LagrangianCapacity operator()(const shape::GenericToric& g) const { return {diagonal(g.domain), true}; }
    };
    return std::visit(Visitor{}, s);
}

// ---------------------------------------------------------------------------
// counts

/// Count of degree-one spheres in CP^n with a full-order local tangency constraint.
inline Integer gw_tangency_count(long long n) {
    if (n < 1) throw Error(ErrorCode::PreconditionViolated, "n must be >= 1");
    return factorial(n - 1);
}

/// Descendant count for the torus: (k-2)! when the k classes sum to zero, else 0.
inline Integer torus_descendant(long long k, const std::vector<std::vector<long long>>& classes) {
    if (k < 2) throw Error(ErrorCode::PreconditionViolated, "k must be >= 2");
    if (static_cast<long long>(classes.size()) != k)
        throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(k) + " classes, got " + std::to_string(classes.size()));
    const std::size_t n = classes.front().size();
    std::vector<long long> sum(n, 0);
    for (const auto& c : classes) {
        if (c.size() != n) throw Error(ErrorCode::LengthMismatch, "classes have different dimensions");
        for (std::size_t i = 0; i < n; ++i) sum[i] += c[i];
    }
    for (long long s : sum)
        if (s != 0) return 0;
    return factorial(k - 2);
}

}  // namespace toricap
