// toricap: command-line front end for the capacity, spectrum and ledger tools.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toricap/io.hpp"
#include "toricap/toricap.hpp"

namespace {

using namespace toricap;
using io::json;

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kInputError = 2;

struct Globals {
    unsigned seed = 0;
    double tol = 1e-9;
    std::string out;
    std::string format = "table";
};

struct DomainOptions {
    std::string polygon;
    std::string ellipsoid;
    std::string inline_json;
};

std::string read_source(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_rational(part));
    if (out.empty()) throw Error(ErrorCode::ParseError, "empty list");
    return out;
}

std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> out;
    for (const auto& part : split(s, ',')) {
        Rational r = parse_rational(part);
        if (boost::multiprecision::denominator(r) != 1) throw Error(ErrorCode::ParseError, "expected integers in '" + s + "'");
        out.push_back(boost::multiprecision::numerator(r).convert_to<long long>());
    }
    return out;
}

void add_domain_options(CLI::App* sub, DomainOptions& opts) {
    auto* group = sub->add_option_group("domain");
    group->add_option("--polygon", opts.polygon, "domain JSON file ('-' for stdin)");
    group->add_option("--ellipsoid", opts.ellipsoid, "comma-separated axes, e.g. 1,2");
    group->add_option("--domain", opts.inline_json, "inline domain JSON");
    group->require_option(1);
}

io::DomainInput load_domain(const DomainOptions& opts) {
    if (!opts.ellipsoid.empty()) return EllipsoidSpec(parse_rational_list(opts.ellipsoid));
    const std::string text = opts.polygon.empty() ? opts.inline_json : read_source(opts.polygon);
    return io::domain_from_json(parse_json_text(text));
}

MomentDomain2D as_polygon(const io::DomainInput& d) {
    if (const auto* p = std::get_if<MomentDomain2D>(&d)) return *p;
    return std::get<EllipsoidSpec>(d).simplex();
}

std::string render_table(const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(headers.size());
    for (std::size_t i = 0; i < headers.size(); ++i) width[i] = headers[i].size();
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << cells[i];
            if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size() + 2, ' ');
        }
        out << '\n';
    };
    line(headers);
    for (const auto& row : rows) line(row);
    return out.str();
}

std::string render_csv(const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            bool quote = cells[i].find(',') != std::string::npos;
            out << (quote ? "\"" + cells[i] + "\"" : cells[i]) << (i + 1 < cells.size() ? "," : "\n");
        }
    };
    line(headers);
    for (const auto& row : rows) line(row);
    return out.str();
}

/// Output in the requested format on stdout; --out always receives JSON.
struct Emitter {
    const Globals& globals;

    void emit(const json& doc, const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows,
              const std::string& plain = "") const {
        if (globals.format == "json") {
            std::cout << doc.dump(2) << '\n';
        } else if (globals.format == "csv") {
            std::cout << render_csv(headers, rows);
        } else if (!plain.empty()) {
            std::cout << plain << '\n';
        } else {
            std::cout << render_table(headers, rows);
        }
        if (!globals.out.empty()) {
            std::ofstream f(globals.out);
            if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + globals.out + "'");
            f << doc.dump(2) << '\n';
        }
    }
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    f << text;
}

std::pair<long long, long long> parse_k_range(const std::string& s) {
    auto dots = s.find("..");
    auto to_ll = [&](const std::string& t) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad k-range '" + s + "'");
        }
    };
    long long lo = dots == std::string::npos ? to_ll(s) : to_ll(s.substr(0, dots));
    long long hi = dots == std::string::npos ? lo : to_ll(s.substr(dots + 2));
    if (lo < 1 || hi < lo) throw Error(ErrorCode::ParseError, "k-range must be nonempty with k >= 1");
    return {lo, hi};
}

std::string minimizer_text(const CapacityReport& r) {
    if (r.minimizer) return "(" + std::to_string(r.minimizer->l()) + "," + std::to_string(r.minimizer->m()) + ")";
    if (r.multiple) return std::to_string(r.multiple->multiple) + (r.multiple->axis == AxisMultiple::Axis::A ? "*a" : "*b");
    return "";
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_diag(const Globals& g, const DomainOptions& d) {
    auto domain = load_domain(d);
    Rational value = std::visit([](const auto& x) { return diagonal(x); }, domain);
    json doc = {{"diagonal", to_string(value)}};
    Emitter{g}.emit(doc, {"diagonal"}, {{to_string(value)}}, to_string(value));
    return kOk;
}

int cmd_support(const Globals& g, const DomainOptions& d, const std::string& direction) {
    auto polygon = as_polygon(load_domain(d));
    auto v = parse_rational_list(direction);
    if (v.size() != 2) throw Error(ErrorCode::ParseError, "direction needs two components");
    Rational value = support(polygon, v[0], v[1]);
    json doc = {{"direction", {to_string(v[0]), to_string(v[1])}}, {"support", to_string(value)}};
    Emitter{g}.emit(doc, {"support"}, {{to_string(value)}}, to_string(value));
    return kOk;
}

int cmd_gh(const Globals& g, const DomainOptions& d, const std::string& k_range, const std::string& via) {
    auto domain = load_domain(d);
    auto [lo, hi] = parse_k_range(k_range);
    const auto* ellipsoid = std::get_if<EllipsoidSpec>(&domain);
    if ((via == "spectrum" || via == "both") && !ellipsoid)
        throw Error(ErrorCode::PreconditionViolated, "--via " + via + " needs an ellipsoid input");
    const bool use_spectrum = via == "spectrum";
    const bool both = via == "both";

    json rows_json = json::array();
    std::vector<std::vector<std::string>> rows;
    bool agree = true;
    for (long long k = lo; k <= hi; ++k) {
        CapacityReport primary = use_spectrum ? gh_spectrum_ellipsoid(*ellipsoid, k) : gh_capacity_toric4(as_polygon(domain), k);
        json row = io::capacity_to_json(primary);
        std::vector<std::string> cells{std::to_string(k), to_string(primary.value), minimizer_text(primary)};
        if (both) {
            CapacityReport other = gh_spectrum_ellipsoid(*ellipsoid, k);
            row["spectrum_value"] = to_string(other.value);
            row["agree"] = other.value == primary.value;
            agree = agree && other.value == primary.value;
            cells.push_back(to_string(other.value));
            cells.push_back(other.value == primary.value ? "yes" : "NO");
        }
        rows_json.push_back(row);
        rows.push_back(cells);
    }
    std::vector<std::string> headers{"k", "value", "minimizer"};
    if (both) {
        headers.push_back("spectrum_value");
        headers.push_back("agree");
    }
    json doc = {{"via", via}, {"capacities", rows_json}};
    if (both) doc["agree"] = agree;
    Emitter{g}.emit(doc, headers, rows);
    if (!agree) std::cerr << "error: min-max and spectrum paths disagree\n";
    return agree ? kOk : kValidationFailure;
}

int cmd_spectrum(const Globals& g, const DomainOptions& d, double cutoff, RoundingParams params, const std::string& polyline,
                 int samples, int check) {
    auto smooth = round_domain(as_polygon(load_domain(d)), params);
    auto families = orbit_families(smooth, cutoff);

    std::vector<std::vector<std::string>> rows;
    for (const auto& f : families) {
        auto split = split_family(f);
        rows.push_back({std::to_string(f.direction.l()), std::to_string(f.direction.m()), std::to_string(f.multiplicity),
                        io::format_double(f.action), std::to_string(split.elliptic_cz), std::to_string(split.hyperbolic_cz)});
    }
    json doc = {{"cutoff", io::format_double(cutoff)},
                {"tau", io::format_double(params.tau)},
                {"v", io::format_double(params.v)},
                {"hausdorff_bound", io::format_double(smooth.hausdorff_bound())},
                {"families", io::spectrum_to_json(families)}};

    bool ok = true;
    if (check > 0) {
        // Sampled Gauss-point/support consistency over random coprime directions.
        std::mt19937_64 rng(g.seed);
        std::uniform_int_distribution<long long> dist(1, 20);
        int failures = 0, tested = 0;
        for (int attempt = 0; tested < check && attempt < 100 * check; ++attempt) {
            LatticeDirection dir(dist(rng), dist(rng));
            if (!dir.coprime()) continue;
            auto family = orbit_family(smooth, dir);
            if (!family) continue;
            ++tested;
            double s = smooth_support(smooth, static_cast<double>(dir.l()), static_cast<double>(dir.m()));
            if (std::abs(family->action - s) > g.tol * (1 + family->action)) ++failures;
        }
        doc["check"] = {{"seed", g.seed}, {"tested", tested}, {"failures", failures}};
        ok = failures == 0;
    }
    if (!polyline.empty()) {
        std::ostringstream csv;
        io::write_polyline_csv(csv, rounded_polyline(smooth, samples));
        write_text_file(polyline, csv.str());
    }
    Emitter{g}.emit(doc, {"l", "m", "gcd", "action", "elliptic_cz", "hyperbolic_cz"}, rows);
    return ok ? kOk : kValidationFailure;
}

int cmd_round(const Globals& g, const DomainOptions& d, RoundingParams params, const std::string& polyline, int samples) {
    auto polygon = as_polygon(load_domain(d));
    auto smooth = round_domain(polygon, params);
    auto check = verify_rounding(smooth);
    json doc = {{"tau", io::format_double(params.tau)},
                {"v", io::format_double(params.v)},
                {"hausdorff_bound", io::format_double(smooth.hausdorff_bound())},
                {"a_prime", io::format_double(smooth.a_prime())},
                {"b_prime", io::format_double(smooth.b_prime())},
                {"slope_at_0", io::format_double(smooth.derivative(0))},
                {"slope_at_a_prime", io::format_double(smooth.derivative(smooth.a_prime()))},
                {"checks",
                 {{"decreasing", check.decreasing},
                  {"concave", check.concave},
                  {"endpoint_slopes", check.endpoint_slopes},
                  {"contains_polygon", check.contains_polygon},
                  {"within_hausdorff", check.within_hausdorff}}}};
    std::ostringstream csv;
    io::write_polyline_csv(csv, rounded_polyline(smooth, samples));
    if (!polyline.empty()) write_text_file(polyline, csv.str());

    std::vector<std::vector<std::string>> rows;
    for (const auto& key : {"hausdorff_bound", "a_prime", "b_prime", "slope_at_0", "slope_at_a_prime"})
        rows.push_back({key, doc[key].get<std::string>()});
    for (const auto& [key, value] : doc["checks"].items()) rows.push_back({key, value.get<bool>() ? "ok" : "FAIL"});
    if (g.format == "csv") {
        std::cout << csv.str();
        if (!g.out.empty()) write_text_file(g.out, doc.dump(2) + "\n");
    } else {
        Emitter{g}.emit(doc, {"quantity", "value"}, rows);
    }
    return check.ok() ? kOk : kValidationFailure;
}

int cmd_enclose(const Globals& g, const DomainOptions& d, int samples, const std::string& a_max_factor) {
    auto polygon = as_polygon(load_domain(d));
    EnclosureOptions options{samples, parse_rational(a_max_factor)};
    auto result = equal_diagonal_enclosing_ellipsoids(polygon, options);

    json list = json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : result.ellipsoids) {
        list.push_back({{"a", to_string(e.extents.x_extent)},
                        {"b", to_string(e.extents.y_extent)},
                        {"max_load", to_string(e.max_load)},
                        {"witness", {to_string(e.witness.x), to_string(e.witness.y)}}});
        rows.push_back({to_string(e.extents.x_extent), to_string(e.extents.y_extent), to_string(e.max_load),
                        "(" + to_string(e.witness.x) + "," + to_string(e.witness.y) + ")"});
    }
    json doc = {{"diagonal", to_string(result.diagonal)}, {"feasible", result.feasible}, {"ellipsoids", list}};
    doc["a_min"] = result.x_extent_min ? json(to_string(*result.x_extent_min)) : json(nullptr);
    doc["a_max"] = result.x_extent_max ? json(to_string(*result.x_extent_max)) : json(nullptr);
    std::string plain;
    if (result.ellipsoids.empty())
        plain = "none found: no E(a,b) with diagonal " + to_string(result.diagonal) + " contains the domain";
    Emitter{g}.emit(doc, {"a", "b", "max_load", "witness"}, rows, plain);
    return kOk;
}

struct LagcapOptions {
    std::string shape;
    std::string r = "1";
    int n = 0;
    std::string a, b;
    int k = 0, m = 0;
    std::string radii;
};

int cmd_lagcap(const Globals& g, const LagcapOptions& o, const DomainOptions& d) {
    LagrangianShape s = [&]() -> LagrangianShape {
        if (o.shape == "ball") return shape::Ball{parse_rational(o.r), o.n};
        if (o.shape == "projective") return shape::ProjectiveSpace{o.n};
        if (o.shape == "ellipsoid") return shape::Ellipsoid4{parse_rational(o.a), parse_rational(o.b)};
        if (o.shape == "cylinder") return shape::Cylinder{o.k, o.m};
        if (o.shape == "polydisk") return shape::Polydisk{o.radii.empty() ? std::vector<Rational>{} : parse_rational_list(o.radii)};
        if (o.shape == "toric") return shape::GenericToric{as_polygon(load_domain(d))};
        throw Error(ErrorCode::UnsupportedShape, "unknown shape '" + o.shape + "'");
    }();
    auto c = lagrangian_capacity(s);
    json doc = {{"shape", o.shape}, {"value", to_string(c.value)}, {"lower_bound", c.lower_bound}};
    std::string plain = (c.lower_bound ? ">= " : "") + to_string(c.value);
    Emitter{g}.emit(doc, {"value", "lower_bound"}, {{to_string(c.value), c.lower_bound ? "yes" : "no"}}, plain);
    return kOk;
}

int cmd_counts(const Globals& g, long long n, const std::string& classes_text) {
    Integer gw = gw_tangency_count(n);
    std::vector<std::vector<long long>> classes;
    if (classes_text.empty()) {
        // n+1 classes in Z^1 summing to zero: the descendant count is (n-1)!.
        classes.assign(static_cast<std::size_t>(n + 1), {0});
    } else {
        for (const auto& part : split(classes_text, ';')) classes.push_back(parse_int_list(part));
    }
    const long long k = static_cast<long long>(classes.size());
    Integer desc = torus_descendant(k, classes);
    json doc = {{"n", n}, {"gw", gw.str()}, {"descendant_k", k}, {"descendant", desc.str()}};
    Emitter{g}.emit(doc, {"n", "gw", "descendant_k", "descendant"}, {{std::to_string(n), gw.str(), std::to_string(k), desc.str()}});
    return kOk;
}

struct LedgerOptions {
    std::string building;
    long long canonical = 0;
    std::string epsilon = "1/10";
    std::string save_building;
    bool min_punctures = false;
    bool forced_morse = false;
    bool energy = false;
    bool index = false;
    bool counts = false;
    long long n = 0;
    long long k = 0;
    long long morse_bound = -1;
    std::string areas;
    std::string cz;
};

int emit_validation(const Globals& g, const Building& b, const std::string& save_path) {
    auto report = building_validate(b);
    if (!save_path.empty()) write_text_file(save_path, io::building_to_json(b).dump(2) + "\n");
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : report) rows.push_back({c.check, to_string(c.status), c.detail});
    Emitter{g}.emit(io::report_to_json(report), {"check", "status", "detail"}, rows);
    return all_passed(report) ? kOk : kValidationFailure;
}

int cmd_ledger(const Globals& g, const LedgerOptions& o) {
    const int modes = !o.building.empty() + (o.canonical > 0) + o.min_punctures + o.forced_morse + o.energy + o.index + o.counts;
    if (modes != 1) throw Error(ErrorCode::ParseError, "choose exactly one ledger mode");
    auto need_n = [&]() {
        if (o.n < 1) throw Error(ErrorCode::ParseError, "--n is required");
        return o.n;
    };

    if (!o.building.empty()) return emit_validation(g, io::building_from_json(parse_json_text(read_source(o.building))), o.save_building);
    if (o.canonical > 0) return emit_validation(g, canonical_ball_building(o.canonical, parse_rational(o.epsilon)), o.save_building);
    if (o.counts) return cmd_counts(g, need_n(), "");

    if (o.min_punctures) {
        long long n = need_n();
        long long k = o.k > 0 ? o.k : n;
        long long bound = o.morse_bound >= 0 ? o.morse_bound : n - 1;
        long long l = min_positive_punctures(n, k - 1, bound);
        json doc = {{"n", n}, {"k", k}, {"morse_bound", bound}, {"min_positive_punctures", l}};
        Emitter{g}.emit(doc, {"n", "k", "morse_bound", "min_positive_punctures"},
                        {{std::to_string(n), std::to_string(k), std::to_string(bound), std::to_string(l)}}, std::to_string(l));
        return kOk;
    }
    if (o.forced_morse) {
        auto tuple = forced_morse_indices(need_n());
        json doc = {{"n", o.n}, {"morse_indices", tuple}};
        std::string text;
        for (auto t : tuple) text += (text.empty() ? "" : ",") + std::to_string(t);
        Emitter{g}.emit(doc, {"morse_indices"}, {{text}}, text);
        return kOk;
    }
    if (o.index) {
        auto cz = parse_int_list(o.cz);
        long long k = o.k > 0 ? o.k : 1;
        long long ind = punctured_sphere_index(positive_sphere(need_n(), cz, k - 1));
        json doc = {{"n", o.n}, {"cz", cz}, {"k", k}, {"index", ind}};
        Emitter{g}.emit(doc, {"index"}, {{std::to_string(ind)}}, std::to_string(ind));
        return kOk;
    }
    // energy
    long long n = need_n();
    Rational eps = parse_rational(o.epsilon);
    if (!o.areas.empty()) {
        auto report = energy_partition_check(n, eps, parse_rational_list(o.areas));
        json doc = {{"valid", report.valid}, {"violations", report.violations}};
        std::vector<std::vector<std::string>> rows;
        for (const auto& v : report.violations) rows.push_back({v});
        Emitter{g}.emit(doc, {"violation"}, rows, report.valid ? "Valid" : "");
        return report.valid ? kOk : kValidationFailure;
    }
    auto solutions = energy_partition_solutions(n, eps);
    json list = json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : solutions) {
        json row = json::array();
        std::string text;
        for (const auto& a : s) {
            row.push_back(to_string(a));
            text += (text.empty() ? "" : ",") + to_string(a);
        }
        list.push_back(row);
        rows.push_back({text});
    }
    json doc = {{"n", n}, {"epsilon", to_string(eps)}, {"solutions", list}, {"unique", solutions.size() == 1}};
    Emitter{g}.emit(doc, {"partition"}, rows);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toricap: capacities, Reeb spectra and building ledgers for toric domains"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals globals;
    app.add_option("--seed", globals.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--tol", globals.tol, "float tolerance for sampled checks")->capture_default_str();
    app.add_option("--out", globals.out, "also write the JSON report to this file");
    app.add_option("--format", globals.format, "stdout format")->check(CLI::IsMember({"table", "json", "csv"}))->capture_default_str();

    std::function<int()> run;

    DomainOptions diag_domain;
    auto* diag = app.add_subcommand("diag", "diagonal of a domain");
    add_domain_options(diag, diag_domain);
    diag->callback([&] { run = [&] { return cmd_diag(globals, diag_domain); }; });

    DomainOptions support_domain;
    std::string direction;
    auto* sup = app.add_subcommand("support", "support function in a direction");
    add_domain_options(sup, support_domain);
    sup->add_option("--direction", direction, "l,m (rationals allowed)")->required();
    sup->callback([&] { run = [&] { return cmd_support(globals, support_domain, direction); }; });

    DomainOptions gh_domain;
    std::string k_range = "1..5";
    std::string via = "minmax";
    auto* gh = app.add_subcommand("gh", "Gutt-Hutchings capacities");
    add_domain_options(gh, gh_domain);
    gh->add_option("--k", k_range, "k or lo..hi")->capture_default_str();
    gh->add_option("--via", via, "evaluation path")->check(CLI::IsMember({"minmax", "spectrum", "both"}))->capture_default_str();
    gh->callback([&] { run = [&] { return cmd_gh(globals, gh_domain, k_range, via); }; });

    DomainOptions spectrum_domain;
    double cutoff = 0;
    RoundingParams spectrum_params;
    std::string spectrum_polyline;
    int spectrum_samples = 512;
    int check = 0;
    auto* spectrum = app.add_subcommand("spectrum", "Reeb orbit families of the rounded boundary");
    add_domain_options(spectrum, spectrum_domain);
    spectrum->add_option("--K", cutoff, "action cutoff")->required();
    spectrum->add_option("--tau", spectrum_params.tau, "smoothing scale")->capture_default_str();
    spectrum->add_option("--v", spectrum_params.v, "endpoint slope bound")->capture_default_str();
    spectrum->add_option("--polyline", spectrum_polyline, "write the rounded boundary as CSV");
    spectrum->add_option("--samples", spectrum_samples, "polyline sample count")->capture_default_str();
    spectrum->add_option("--check", check, "sample this many random directions and compare action with support");
    spectrum->callback([&] {
        run = [&] { return cmd_spectrum(globals, spectrum_domain, cutoff, spectrum_params, spectrum_polyline, spectrum_samples, check); };
    });

    DomainOptions round_domain_opts;
    RoundingParams round_params;
    std::string round_polyline;
    int round_samples = 512;
    auto* round = app.add_subcommand("round", "smooth rounding and its invariant checks");
    add_domain_options(round, round_domain_opts);
    round->add_option("--tau", round_params.tau, "smoothing scale")->capture_default_str();
    round->add_option("--v", round_params.v, "endpoint slope bound")->capture_default_str();
    round->add_option("--polyline", round_polyline, "write the rounded boundary as CSV");
    round->add_option("--samples", round_samples, "polyline sample count")->capture_default_str();
    round->callback([&] { run = [&] { return cmd_round(globals, round_domain_opts, round_params, round_polyline, round_samples); }; });

    DomainOptions enclose_domain;
    int enclose_samples = 32;
    std::string a_max_factor = "10";
    auto* enclose = app.add_subcommand("enclose", "enclosing ellipsoids with the same diagonal");
    add_domain_options(enclose, enclose_domain);
    enclose->add_option("--samples", enclose_samples, "grid points on (d, a_max]")->capture_default_str();
    enclose->add_option("--amax", a_max_factor, "a_max as a multiple of the diagonal")->capture_default_str();
    enclose->callback([&] { run = [&] { return cmd_enclose(globals, enclose_domain, enclose_samples, a_max_factor); }; });

    LagcapOptions lag;
    DomainOptions lag_domain;
    auto* lagcap = app.add_subcommand("lagcap", "Lagrangian capacity");
    lagcap->add_option("--shape", lag.shape, "ball|projective|ellipsoid|cylinder|polydisk|toric")->required();
    lagcap->add_option("--r", lag.r, "ball capacity");
    lagcap->add_option("--n", lag.n, "dimension parameter");
    lagcap->add_option("--a", lag.a, "ellipsoid axis");
    lagcap->add_option("--b", lag.b, "ellipsoid axis");
    lagcap->add_option("--k", lag.k, "cylinder ball factor dimension");
    lagcap->add_option("--m", lag.m, "cylinder plane factors");
    lagcap->add_option("--radii", lag.radii, "polydisk radii after the unit factor");
    lagcap->add_option("--polygon", lag_domain.polygon, "domain JSON for --shape toric");
    lagcap->callback([&] { run = [&] { return cmd_lagcap(globals, lag, lag_domain); }; });

    LedgerOptions led;
    auto* ledger = app.add_subcommand("ledger", "index, energy and building bookkeeping");
    ledger->add_option("--building", led.building, "validate a building JSON file");
    ledger->add_option("--canonical-ball-building", led.canonical, "validate the canonical ball building for this n");
    ledger->add_option("--epsilon", led.epsilon, "epsilon")->capture_default_str();
    ledger->add_option("--save-building", led.save_building, "write the validated building JSON");
    ledger->add_flag("--min-punctures", led.min_punctures, "minimal number of positive punctures");
    ledger->add_flag("--forced-morse", led.forced_morse, "forced Morse indices of the bottom curve");
    ledger->add_flag("--energy", led.energy, "energy partition check (--areas) or solver");
    ledger->add_flag("--index", led.index, "punctured sphere index (--cz, --k)");
    ledger->add_flag("--counts", led.counts, "closed-form curve counts");
    ledger->add_option("--n", led.n, "half-dimension");
    ledger->add_option("--k", led.k, "tangency order plus one");
    ledger->add_option("--morse-bound", led.morse_bound, "largest Morse index (default n-1)");
    ledger->add_option("--areas", led.areas, "comma-separated areas u_1..u_n,u_inf");
    ledger->add_option("--cz", led.cz, "comma-separated CZ indices");
    ledger->callback([&] { run = [&] { return cmd_ledger(globals, led); }; });

    long long counts_n = 0;
    std::string classes;
    auto* counts = app.add_subcommand("counts", "tangency and descendant counts");
    counts->add_option("--n", counts_n, "n for (n-1)!")->required();
    counts->add_option("--classes", classes, "descendant classes, e.g. '1,0;-1,0;0,0'");
    counts->callback([&] { run = [&] { return cmd_counts(globals, counts_n, classes); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        return run();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
}
