#pragma once

// Exact bookkeeping for punctured holomorphic spheres and buildings: Fredholm
// indices, CZ/Morse conversion, the forced-structure searches and the
// building validator. No floating point anywhere in this header.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toricap/error.hpp"
#include "toricap/rational.hpp"

namespace toricap {

enum class PunctureSign { Positive, Negative };

inline const char* to_string(PunctureSign s) { return s == PunctureSign::Positive ? "positive" : "negative"; }

struct AsymptoticEnd {
    long long cz;
    Rational action;
    PunctureSign sign;
};

struct PuncturedSphereData {
    long long n;  // half-dimension of the ambient manifold
    std::vector<AsymptoticEnd> punctures;
    long long tangency_order = 0;  // k - 1
    bool maslov_sum_zero = true;
};

/// CZ of the orbit over a geodesic with the given Morse index, in the
/// trivialization that makes the Maslov term vanish.
inline long long cz_from_morse(long long morse, bool adjust_to_zero_maslov = true) {
    if (morse < 0) throw Error(ErrorCode::PreconditionViolated, "Morse index must be >= 0");
    if (!adjust_to_zero_maslov)
        throw Error(ErrorCode::NotSupported, "CZ is only fixed in the trivialization with zero Maslov term");
    return morse;
}

/// ind = (n-3)(2-l) + sum CZ - 2n + 2 - 2(k-1) for a sphere with l positive ends.
inline long long punctured_sphere_index(const PuncturedSphereData& data) {
    if (data.punctures.empty()) throw Error(ErrorCode::PreconditionViolated, "need at least one puncture");
    if (data.tangency_order < 0) throw Error(ErrorCode::PreconditionViolated, "tangency order must be >= 0");
    long long cz_sum = 0;
    for (const auto& p : data.punctures) {
        if (p.sign != PunctureSign::Positive)
            throw Error(ErrorCode::NegativePunctureUnsupported, "index formula covers positive punctures only");
        cz_sum += p.cz;
    }
    const long long l = static_cast<long long>(data.punctures.size());
    return (data.n - 3) * (2 - l) + cz_sum - 2 * data.n + 2 - 2 * data.tangency_order;
}

/// Convenience: l positive ends with the given CZ values and zero actions.
inline PuncturedSphereData positive_sphere(long long n, const std::vector<long long>& cz, long long tangency_order) {
    PuncturedSphereData data{n, {}, tangency_order, true};
    for (long long c : cz) data.punctures.push_back({c, 0, PunctureSign::Positive});
    return data;
}

/// Smallest l for which some CZ assignment in [0, morse_bound] gives a
/// non-negative index. The index is increasing in every CZ entry, so the
/// best assignment for each l is the constant one.
inline long long min_positive_punctures(long long n, long long tangency_order, long long morse_bound) {
    if (n < 2) throw Error(ErrorCode::PreconditionViolated, "n must be >= 2");
    if (morse_bound < 0 || tangency_order < 0) throw Error(ErrorCode::PreconditionViolated, "bounds must be >= 0");
    auto best_index = [&](long long l) {
        return punctured_sphere_index(positive_sphere(n, std::vector<long long>(l, morse_bound), tangency_order));
    };
    const long long growth = morse_bound - (n - 3);  // index change per extra puncture
    for (long long l = 1;; ++l) {
        if (best_index(l) >= 0) return l;
        if (growth <= 0)
            throw Error(ErrorCode::PreconditionViolated, "index never becomes non-negative for this Morse bound");
    }
}

/// Every tuple of `count` integers in [0, bound] with sum >= min_sum.
inline std::vector<std::vector<long long>> bounded_tuples_with_sum(std::size_t count, long long bound,
                                                                   long long min_sum) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> current(count);
    auto recurse = [&](auto&& self, std::size_t i, long long sum) -> void {
        const long long remaining = static_cast<long long>(count - i);
        if (sum + remaining * bound < min_sum) return;
        if (i == count) {
            out.push_back(current);
            return;
        }
        for (long long c = bound; c >= 0; --c) {
            current[i] = c;
            self(self, i + 1, sum + c);
        }
    };
    recurse(recurse, 0, 0);
    return out;
}

/// Morse indices of the n+1 ends of the bottom curve: the only (n+1)-tuple in
/// [0, n-1] with sum >= n^2 - 1. Found by exhaustive search.
inline std::vector<long long> forced_morse_indices(long long n) {
    if (n < 2) throw Error(ErrorCode::PreconditionViolated, "n must be >= 2");
    auto solutions = bounded_tuples_with_sum(static_cast<std::size_t>(n + 1), n - 1, n * n - 1);
    if (solutions.size() != 1)
        throw Error(ErrorCode::PreconditionViolated, "Morse index tuple is not forced");
    return solutions.front();
}

// ---------------------------------------------------------------------------
// energy partition

struct EnergyPartitionReport {
    bool valid = true;
    std::vector<std::string> violations;
};

/// Checks areas (u_1, ..., u_n, u_inf) against the forced partition
/// (1/n, ..., 1/n, epsilon).
inline EnergyPartitionReport energy_partition_check(long long n, const Rational& epsilon,
                                                    const std::vector<Rational>& areas) {
    if (n < 1) throw Error(ErrorCode::PreconditionViolated, "n must be >= 1");
    if (epsilon <= 0) throw Error(ErrorCode::PreconditionViolated, "epsilon must be positive");
    if (epsilon >= make_rational(1, n)) throw Error(ErrorCode::EpsilonTooLarge, "epsilon must be < 1/n");
    if (static_cast<long long>(areas.size()) != n + 1)
        throw Error(ErrorCode::LengthMismatch, "expected n+1 areas");

    EnergyPartitionReport report;
    auto flag = [&](std::string what) {
        report.valid = false;
        report.violations.push_back(std::move(what));
    };
    const Rational unit = make_rational(1, n);
    Rational total = 0;
    for (std::size_t i = 0; i < areas.size(); ++i) {
        const Rational& area = areas[i];
        total += area;
        const std::string name = i + 1 == areas.size() ? "u_inf" : "u_" + std::to_string(i + 1);
        if (area <= 0) flag(name + " has non-positive area " + to_string(area));
        if (i + 1 < areas.size()) {
            Rational multiple = area / unit;
            if (boost::multiprecision::denominator(multiple) != 1 || multiple < 1)
                flag(name + " area " + to_string(area) + " is not a positive multiple of 1/n");
            else if (area != unit)
                flag(name + " area " + to_string(area) + " differs from 1/n");
        } else if (area != epsilon) {
            flag("u_inf area " + to_string(area) + " differs from epsilon");
        }
    }
    if (total != 1 + epsilon) flag("total area " + to_string(total) + " differs from 1+epsilon");
    return report;
}

/// Every partition allowed by the constraints alone: areas j_i/n with j_i >= 1
/// for the first n disks, a positive remainder for u_inf, total 1 + epsilon.
inline std::vector<std::vector<Rational>> energy_partition_solutions(long long n, const Rational& epsilon) {
    if (n < 1) throw Error(ErrorCode::PreconditionViolated, "n must be >= 1");
    if (epsilon <= 0) throw Error(ErrorCode::PreconditionViolated, "epsilon must be positive");
    const Rational budget = 1 + epsilon;
    // sum j_i < n (1 + epsilon)
    const Integer cap = ceil_div(budget * n) - 1;
    const long long max_sum = cap.convert_to<long long>();

    std::vector<std::vector<Rational>> out;
    std::vector<long long> js(static_cast<std::size_t>(n));
    auto recurse = [&](auto&& self, long long i, long long sum) -> void {
        if (sum + (n - i) > max_sum) return;
        if (i == n) {
            Rational rest = budget - make_rational(sum, n);
            if (rest <= 0) return;
            std::vector<Rational> areas;
            for (long long j : js) areas.push_back(make_rational(j, n));
            areas.push_back(rest);
            out.push_back(std::move(areas));
            return;
        }
        for (long long j = 1; sum + j + (n - i - 1) <= max_sum; ++j) {
            js[static_cast<std::size_t>(i)] = j;
            self(self, i + 1, sum + j);
        }
    };
    recurse(recurse, 0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// buildings

enum class NodeKind { Cotangent, Symplectization, Top };

inline const char* to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Cotangent: return "cotangent";
    case NodeKind::Symplectization: return "symplectization";
    case NodeKind::Top: return "top";
    }
    return "?";
}

struct PunctureRef {
    long long node;
    std::size_t puncture;

    friend bool operator==(const PunctureRef&, const PunctureRef&) = default;
};

struct BuildingPuncture {
    long long cz;
    Rational action;
    PunctureSign sign;
    std::optional<PunctureRef> paired_with;  // empty for an external end

    friend bool operator==(const BuildingPuncture&, const BuildingPuncture&) = default;
};

struct BuildingNode {
    long long id;
    int level;  // 0 is the bottom; positive ends at level N meet negative ends at N+1
    NodeKind kind;
    long long index;
    Rational energy;
    long long divisor_hits = 0;
    std::vector<BuildingPuncture> punctures;

    friend bool operator==(const BuildingNode&, const BuildingNode&) = default;
};

struct Building {
    std::vector<BuildingNode> nodes;
    long long index_total = 0;
    Rational energy_budget = 0;
    bool energy_exact = false;  // top-level energies must sum to the budget
    bool check_parity = false;  // require odd CZ on every end

    friend bool operator==(const Building&, const Building&) = default;
};

enum class CheckStatus { Pass, Fail, Skip };

inline const char* to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
    }
    return "?";
}

struct CheckResult {
    std::string check;
    CheckStatus status;
    std::string detail;

    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

using ValidationReport = std::vector<CheckResult>;

inline bool all_passed(const ValidationReport& report) {
    return std::none_of(report.begin(), report.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

inline bool is_trivial_cylinder(const BuildingNode& node) {
    if (node.kind != NodeKind::Symplectization || node.index != 0 || node.energy != 0) return false;
    if (node.punctures.size() != 2) return false;
    const auto& p = node.punctures[0];
    const auto& q = node.punctures[1];
    return p.sign != q.sign && p.cz == q.cz && p.action == q.action;
}

inline ValidationReport building_validate(const Building& b) {
    ValidationReport report;
    auto record = [&](const char* name, const std::vector<std::string>& problems) {
        if (problems.empty()) {
            report.push_back({name, CheckStatus::Pass, ""});
        } else {
            std::string detail;
            for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
            report.push_back({name, CheckStatus::Fail, detail});
        }
    };
    auto node_name = [](long long id) { return "node " + std::to_string(id); };

    std::map<long long, std::size_t> by_id;
    std::vector<std::string> structure;
    for (std::size_t i = 0; i < b.nodes.size(); ++i)
        if (!by_id.emplace(b.nodes[i].id, i).second) structure.push_back("duplicate id " + std::to_string(b.nodes[i].id));

    // (ii) pairing
    std::vector<std::string> pairing;
    for (const auto& node : b.nodes) {
        for (std::size_t pi = 0; pi < node.punctures.size(); ++pi) {
            const auto& p = node.punctures[pi];
            if (!p.paired_with) continue;
            const std::string here = node_name(node.id) + " puncture " + std::to_string(pi);
            auto it = by_id.find(p.paired_with->node);
            if (it == by_id.end()) {
                pairing.push_back(here + " pairs with missing node " + std::to_string(p.paired_with->node));
                continue;
            }
            const auto& other = b.nodes[it->second];
            if (p.paired_with->puncture >= other.punctures.size()) {
                pairing.push_back(here + " pairs with a missing puncture");
                continue;
            }
            const auto& q = other.punctures[p.paired_with->puncture];
            if (!q.paired_with || *q.paired_with != PunctureRef{node.id, pi})
                pairing.push_back(here + " is not paired back");
            if (p.cz != q.cz) pairing.push_back(here + " CZ differs from its partner");
            if (p.action != q.action) pairing.push_back(here + " action differs from its partner");
            if (p.sign == q.sign) pairing.push_back(here + " is paired with an end of the same sign");
            const auto& lower = p.sign == PunctureSign::Positive ? node : other;
            const auto& upper = p.sign == PunctureSign::Positive ? other : node;
            if (p.sign != q.sign && upper.level != lower.level + 1)
                pairing.push_back(here + " pairs across non-adjacent levels");
        }
    }

    // (i) genus zero: the pairing graph is a tree
    std::vector<std::string> tree = structure;
    {
        std::vector<std::size_t> parent(b.nodes.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::size_t components = b.nodes.size();
        for (std::size_t i = 0; i < b.nodes.size(); ++i) {
            const auto& node = b.nodes[i];
            for (std::size_t pi = 0; pi < node.punctures.size(); ++pi) {
                const auto& p = node.punctures[pi];
                if (!p.paired_with || p.sign != PunctureSign::Positive) continue;
                auto it = by_id.find(p.paired_with->node);
                if (it == by_id.end()) continue;
                std::size_t x = find(i), y = find(it->second);
                if (x == y) {
                    tree.push_back("cycle through " + node_name(node.id));
                } else {
                    parent[x] = y;
                    --components;
                }
            }
        }
        if (b.nodes.empty()) tree.push_back("building has no nodes");
        else if (components != 1) tree.push_back(std::to_string(components) + " connected components");
    }
    record("tree", tree);
    record("pairing", pairing);

    // (iii) index total
    {
        long long sum = 0;
        for (const auto& node : b.nodes) sum += node.index;
        std::vector<std::string> problems;
        if (sum != b.index_total)
            problems.push_back("indices sum to " + std::to_string(sum) + ", declared " + std::to_string(b.index_total));
        record("index_total", problems);
    }

    // (iv) energy positivity
    {
        std::vector<std::string> problems;
        for (const auto& node : b.nodes) {
            if (node.energy < 0) problems.push_back(node_name(node.id) + " has negative energy");
            else if (node.energy == 0 && !is_trivial_cylinder(node))
                problems.push_back(node_name(node.id) + " is non-trivial with zero energy");
        }
        record("energy_positive", problems);
    }

    // (v) energy budget over the top level
    {
        Rational top = 0;
        for (const auto& node : b.nodes)
            if (node.kind == NodeKind::Top) top += node.energy;
        std::vector<std::string> problems;
        if (b.energy_exact && top != b.energy_budget)
            problems.push_back("top-level energy " + to_string(top) + " differs from class energy " + to_string(b.energy_budget));
        if (!b.energy_exact && top > b.energy_budget)
            problems.push_back("top-level energy " + to_string(top) + " exceeds budget " + to_string(b.energy_budget));
        record("energy_budget", problems);
    }

    // (v') exact levels: energy equals positive minus negative actions
    {
        std::vector<std::string> problems;
        for (const auto& node : b.nodes) {
            if (node.kind == NodeKind::Top) continue;
            Rational balance = 0;
            for (const auto& p : node.punctures) balance += p.sign == PunctureSign::Positive ? p.action : Rational(-p.action);
            if (balance != node.energy)
                problems.push_back(node_name(node.id) + " energy " + to_string(node.energy) + " but action balance " + to_string(balance));
        }
        record("action_balance", problems);
    }

    // (vi) at most one divisor intersection, all on the top level
    {
        long long hits = 0;
        std::vector<std::string> problems;
        for (const auto& node : b.nodes) {
            if (node.divisor_hits < 0) problems.push_back(node_name(node.id) + " has negative divisor hits");
            if (node.kind == NodeKind::Top) hits += node.divisor_hits;
            else if (node.divisor_hits != 0) problems.push_back(node_name(node.id) + " hits the divisor below the top level");
        }
        if (hits > 1) problems.push_back(std::to_string(hits) + " divisor hits on the top level");
        record("divisor_hits", problems);
    }

    // (vii) stability and (viii) contiguous levels
    {
        std::map<int, std::vector<const BuildingNode*>> levels;
        for (const auto& node : b.nodes) levels[node.level].push_back(&node);
        std::vector<std::string> stability;
        for (const auto& [level, nodes] : levels) {
            bool symplectization = std::all_of(nodes.begin(), nodes.end(),
                                               [](const BuildingNode* n) { return n->kind == NodeKind::Symplectization; });
            bool trivial = std::all_of(nodes.begin(), nodes.end(), [](const BuildingNode* n) { return is_trivial_cylinder(*n); });
            if (symplectization && trivial) stability.push_back("level " + std::to_string(level) + " has only trivial cylinders");
        }
        record("stability", stability);

        std::vector<std::string> gaps;
        if (!levels.empty()) {
            for (int level = levels.begin()->first; level <= levels.rbegin()->first; ++level)
                if (!levels.count(level)) gaps.push_back("level " + std::to_string(level) + " is empty");
        }
        record("levels_contiguous", gaps);
    }

    if (b.check_parity) {
        std::vector<std::string> problems;
        for (const auto& node : b.nodes)
            for (std::size_t pi = 0; pi < node.punctures.size(); ++pi)
                if (node.punctures[pi].cz % 2 == 0)
                    problems.push_back(node_name(node.id) + " puncture " + std::to_string(pi) + " is hyperbolic (even CZ)");
        record("parity", problems);
    } else {
        report.push_back({"parity", CheckStatus::Skip, "parity flag not set"});
    }
    return report;
}

/// The two-level building from stretching the neck around a Lagrangian torus
/// in the ball: a bottom sphere in the cotangent bundle with n+1 positive ends
/// of Morse index n-1, capped by planes u_1..u_n of area 1/n and u_inf of area
/// epsilon; u_inf carries the divisor intersection.
inline Building canonical_ball_building(long long n, const Rational& epsilon) {
    if (n < 2) throw Error(ErrorCode::PreconditionViolated, "n must be >= 2");
    if (epsilon <= 0) throw Error(ErrorCode::PreconditionViolated, "epsilon must be positive");
    if (epsilon >= make_rational(1, n)) throw Error(ErrorCode::EpsilonTooLarge, "epsilon must be < 1/n");

    const long long cz = cz_from_morse(n - 1);
    const Rational alpha = epsilon / 4;  // short geodesic action, below every area
    Building b;
    BuildingNode bottom{0, 0, NodeKind::Cotangent, 0, alpha * (n + 1), 0, {}};
    for (long long i = 0; i <= n; ++i) {
        const long long id = i + 1;
        bottom.punctures.push_back({cz, alpha, PunctureSign::Positive, PunctureRef{id, 0}});
        BuildingNode plane{id, 1, NodeKind::Top, 0, i < n ? make_rational(1, n) : epsilon, i < n ? 0 : 1, {}};
        plane.punctures.push_back({cz, alpha, PunctureSign::Negative, PunctureRef{0, static_cast<std::size_t>(i)}});
        b.nodes.push_back(std::move(plane));
    }
    b.nodes.insert(b.nodes.begin(), std::move(bottom));
    b.index_total = 0;
    b.energy_budget = 1 + epsilon;
    b.energy_exact = true;
    return b;
}

}  // namespace toricap
