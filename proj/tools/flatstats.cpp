// flatstats: intersection statistics of affine flats in F_2^n.
//
// Exit codes: 0 ok, 1 usage or input error, 2 verification violation,
// 3 resource cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "flatstats/bounds.hpp"
#include "flatstats/constructions.hpp"
#include "flatstats/errors.hpp"
#include "flatstats/report.hpp"
#include "flatstats/search.hpp"
#include "flatstats/stats.hpp"

using namespace flatstats;
using report::Json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kViolation = 2, kResource = 3 };

struct Common {
    unsigned threads = 0;
    std::string out;
    int precision = 12;
    bool timing = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--threads", c.threads, "Worker threads (0 = available parallelism); results do not depend on it");
    cmd->add_option("--out", c.out, "Write the JSON report here instead of stdout");
    cmd->add_option("--precision", c.precision, "Significant digits in decimal renderings")->check(CLI::Range(1, 60));
    cmd->add_flag("--timing", c.timing, "Record wall time in provenance (breaks byte-identical output)");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot open '" + path + "' for writing");
    f << text;
}

void emit(const Common& c, Json doc, std::chrono::steady_clock::time_point start) {
    if (c.timing) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        std::ostringstream s;
        s.precision(6);
        s << std::fixed << dt.count();
        doc["provenance"]["wall_time_seconds"] = s.str();
    }
    write_text(c.out, report::dump(doc));
}

// "hyperplane parity=0" or "preimage d=3 k=1 j=1"; n falls back to --n.
nlohmann::json shorthand_spec(const std::string& text, std::optional<int> n) {
    std::istringstream in(text);
    std::string kind;
    in >> kind;
    if (kind.empty()) throw std::invalid_argument("empty construction spec");
    nlohmann::json j;
    j["kind"] = kind;
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("construction token '" + tok + "' is not key=value");
        const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
        const bool numeric = !value.empty() && value.find_first_not_of("-0123456789") == std::string::npos;
        if (numeric && key != "seed") j[key] = std::stoi(value);
        else j[key] = value;
    }
    if (!j.contains("n")) {
        if (!n) throw std::invalid_argument("construction spec needs n (in the spec or via --n)");
        j["n"] = *n;
    }
    return j;
}

ConstructionSpec parse_construction(const std::string& text, std::optional<int> n) {
    const auto first = text.find_first_not_of(" \t");
    nlohmann::json j = first != std::string::npos && text[first] == '{' ? nlohmann::json::parse(text)
                                                                        : shorthand_spec(text, n);
    if (!j.contains("n") && n) j["n"] = *n;
    const ConstructionSpec spec = construction_from_json(j);
    if (n && spec.n != *n) {
        throw std::invalid_argument("construction has n=" + std::to_string(spec.n) + " but --n is " + std::to_string(*n));
    }
    return spec;
}

struct SetInput {
    std::string mask;
    std::string points;
    std::string construct;

    void add(CLI::App* cmd) {
        auto* m = cmd->add_option("--mask", mask, "Hex mask, bit i = point i (0x03 is {0,1})");
        auto* p = cmd->add_option("--points", points, "Comma-separated points written x_n...x_1, e.g. 000,001");
        auto* c = cmd->add_option("--construct", construct, "Construction spec: JSON or shorthand like 'hyperplane parity=0'");
        m->excludes(p)->excludes(c);
        p->excludes(c);
    }

    PointSet build(int n, Json& params) const {
        if (!mask.empty()) {
            params["mask"] = mask;
            return PointSet::from_hex(n, mask);
        }
        if (!points.empty()) {
            params["points"] = points;
            return PointSet::from_binary_list(n, points);
        }
        if (!construct.empty()) {
            const ConstructionSpec spec = parse_construction(construct, n);
            params["construct"] = to_json(spec);
            return spec.build();
        }
        throw std::invalid_argument("give the set with --mask, --points or --construct");
    }
};

int run_profile(const Common& c, int n, int d, const SetInput& in, const std::string& family, const std::string& csv) {
    const auto start = std::chrono::steady_clock::now();
    check_dimension(n, "profile");
    if (d < 0 || d > n) throw std::invalid_argument("profile: need 0 <= d <= n");
    Json params;
    params["n"] = n;
    params["d"] = d;
    params["family"] = family;
    const PointSet a = in.build(n, params);
    StatsOptions opts;
    opts.threads = c.threads;
    const IntersectionProfile p = family == "subcubes" ? cube_profile(a, d, opts) : flat_profile(a, d, opts);
    Json results;
    results["set"] = report::point_set(a);
    results["profile"] = report::profile(p, c.precision);
    emit(c, report::envelope("profile", params, results, {"definition:intersection_profile"}), start);
    if (!csv.empty()) write_text(csv, report::profile_csv(p, c.precision));
    return kOk;
}

int run_bounds(const Common& c, int d, long long s, std::optional<int> n, int terms) {
    const auto start = std::chrono::steady_clock::now();
    if (d < 1) throw std::invalid_argument("bounds: need d >= 1");
    if (d <= 62 && (s < 1 || s >= (1LL << d))) throw std::invalid_argument("bounds: need 1 <= s <= 2^d - 1");
    const BoundReport b = summary(d, s, n, terms);
    Json params;
    params["d"] = d;
    params["s"] = s;
    params["n"] = n ? Json(*n) : Json(nullptr);
    params["bootstrap_terms"] = terms;
    std::vector<std::string> tags;
    for (const auto& e : b.lower) tags.push_back("lower:" + e.name);
    for (const auto& e : b.upper) tags.push_back("upper:" + e.name);
    emit(c, report::envelope("bounds", params, report::bounds(b, c.precision), tags), start);
    return kOk;
}

std::set<std::string> split_claims(const std::string& list) {
    std::set<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.insert(item);
    }
    return out;
}

int run_verify(const Common& c, int n, int d, const std::string& claims, std::uint64_t seed, bool corrupt) {
    const auto start = std::chrono::steady_clock::now();
    VerifyOptions opts;
    opts.threads = c.threads;
    opts.claims = split_claims(claims);
    opts.seed = seed;
    opts.corrupt = corrupt;
    const VerificationReport rep = verify_all(n, d, opts);
    Json params;
    params["n"] = n;
    params["d"] = d;
    params["claims"] = claims.empty() ? Json("all") : Json(claims);
    params["seed"] = std::to_string(seed);
    params["self_test_corrupt"] = corrupt;
    std::vector<std::string> tags;
    for (const auto& cl : rep.claims) tags.push_back("claim:" + cl.id);
    emit(c, report::envelope("verify", params, report::verification(rep), tags), start);
    if (rep.any_violated()) {
        for (const auto& cl : rep.claims) {
            if (cl.status == ClaimStatus::violated) {
                std::cerr << "violated: " << cl.id << ": " << cl.details << " (witness " << cl.witness.value_or("none")
                          << ")\n";
            }
        }
        return kViolation;
    }
    return kOk;
}

struct SearchArgs {
    std::string mode = "exhaustive";
    int n = 0, d = 0, s = 0;
    std::uint64_t iterations = 100000;
    unsigned restarts = 1;
    std::uint64_t seed = 0;
    std::string initial;
    double temperature = 0.0;
    double cooling = 0.999;
    bool allow_long = false;
    std::string checkpoint;
    std::uint64_t checkpoint_every = std::uint64_t{1} << 24;
    std::size_t max_witnesses = 1024;
};

int run_search_cmd(const Common& c, const SearchArgs& a) {
    const auto start = std::chrono::steady_clock::now();
    SearchConfig cfg;
    cfg.n = a.n;
    cfg.d = a.d;
    cfg.s = a.s;
    cfg.mode = a.mode == "anneal" ? SearchMode::anneal : SearchMode::exhaustive;
    cfg.iterations = a.iterations;
    cfg.restarts = a.restarts;
    cfg.seed = a.seed;
    cfg.initial_temperature = a.temperature;
    cfg.cooling = a.cooling;
    cfg.threads = c.threads;
    if (!a.initial.empty()) cfg.initial = parse_construction(a.initial, a.n);
    ExhaustiveOptions ex;
    ex.allow_long = a.allow_long;
    ex.checkpoint_path = a.checkpoint;
    ex.checkpoint_every = a.checkpoint_every;
    ex.max_witnesses = a.max_witnesses;
    const SearchResult r = run_search(cfg, ex);

    // Round trip: the witness must reproduce the reported value exactly.
    if (!r.witnesses.empty() && a.n <= 12) {
        StatsOptions so;
        so.threads = c.threads;
        if (lambda_star(r.witnesses.front(), a.d, a.s, so) != r.value) {
            throw std::logic_error("search witness does not reproduce the reported value");
        }
    }
    Json params;
    params["mode"] = a.mode;
    params["n"] = a.n;
    params["d"] = a.d;
    params["s"] = a.s;
    emit(c, report::envelope("search", params, report::search(r, c.precision), {"definition:max_over_sets"}), start);
    if (r.bound_violation) {
        std::cerr << "bound violation: " << *r.bound_violation << "\n";
        return kViolation;
    }
    return kOk;
}

int run_construct(const Common& c, const std::string& text, std::optional<int> n) {
    const auto start = std::chrono::steady_clock::now();
    const ConstructionSpec spec = parse_construction(text, n);
    const PointSet a = spec.build();
    Json results;
    results["construction"] = to_json(spec);
    results["set"] = report::point_set(a);
    std::vector<std::string> tags{"construction:" + to_string(spec.kind)};
    int code = kOk;
    StatsOptions so;
    so.threads = c.threads;
    if (spec.kind == ConstructionSpec::Kind::symmetric_poly && spec.d >= 1 && spec.d <= spec.n) {
        const IntersectionProfile p = cube_profile(a, spec.d, so);
        Integer even = 0;
        for (std::size_t s = 0; s < p.counts.size(); s += 2) even += p.counts[s];
        Json check;
        check["subcubes"] = p.total.str();
        check["even_intersections"] = even.str();
        check["all_odd"] = even == 0;
        results["cube_check"] = check;
        if (even != 0) code = kViolation;
    } else if (spec.kind == ConstructionSpec::Kind::preimage) {
        const int s = spec.j << spec.k;
        const Rational value = lambda_star(a, spec.d, s, so);
        const Rational expect = c_n_dk(spec.n, spec.d, spec.k);
        Json check;
        check["s"] = s;
        check["lambda_star"] = report::rational(value, c.precision);
        check["c_n_dk"] = report::rational(expect, c.precision);
        check["equal"] = value == expect;
        results["construction_check"] = check;
        if (spec.k >= 1 && value != expect) code = kViolation;
    }
    Json params;
    params["construct"] = text;
    params["n"] = n ? Json(*n) : Json(nullptr);
    emit(c, report::envelope("construct", params, results, tags), start);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intersection statistics of affine d-flats in F_2^n against point sets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", report::kToolVersion);

    Common common;

    int n = 0, d = 0;
    long long s = 0;
    std::optional<int> n_opt;

    auto* profile = app.add_subcommand("profile", "Exact intersection profile of a set against all d-flats or d-subcubes");
    add_common(profile, common);
    SetInput set_input;
    std::string family = "flats", csv;
    profile->add_option("--n", n, "Ambient dimension")->required();
    profile->add_option("--d", d, "Flat dimension")->required();
    set_input.add(profile);
    profile->add_option("--family", family, "flats or subcubes")->check(CLI::IsMember({"flats", "subcubes"}));
    profile->add_option("--csv", csv, "Also write the profile as CSV");

    auto* bounds = app.add_subcommand("bounds", "Every applicable bound on the limit density, plus finite-n bounds");
    add_common(bounds, common);
    int terms = 64;
    bounds->add_option("--d", d, "Flat dimension")->required();
    bounds->add_option("--s", s, "Intersection size, 1 <= s < 2^d")->required();
    bounds->add_option("--n", n_opt, "Ambient dimension for finite-n bounds");
    bounds->add_option("--terms", terms, "Bootstrap series terms M")->check(CLI::Range(1, 4096));

    auto* verify = app.add_subcommand("verify", "Run the verification battery");
    add_common(verify, common);
    std::string claims;
    std::uint64_t seed = 1;
    bool corrupt = false;
    verify->add_option("--n", n, "Ambient dimension")->required();
    verify->add_option("--d", d, "Flat dimension")->required();
    verify->add_option("--claims", claims, "Comma-separated claim ids (default: all)");
    verify->add_option("--seed", seed, "Seed for randomized checks");
    verify->add_flag("--self-test-corrupt", corrupt, "Corrupt one profile; the run must report a violation");

    auto* search = app.add_subcommand("search", "Maximize the density at s over sets");
    add_common(search, common);
    SearchArgs sa;
    search->add_option("--mode", sa.mode, "exhaustive or anneal")->check(CLI::IsMember({"exhaustive", "anneal"}));
    search->add_option("--n", sa.n, "Ambient dimension")->required();
    search->add_option("--d", sa.d, "Flat dimension")->required();
    search->add_option("--s", sa.s, "Intersection size")->required();
    search->add_option("--iterations", sa.iterations, "Anneal steps per restart");
    search->add_option("--restarts", sa.restarts, "Anneal restarts");
    search->add_option("--seed", sa.seed, "Anneal seed");
    search->add_option("--initial", sa.initial, "Construction spec for the first restart");
    search->add_option("--temperature", sa.temperature, "Initial temperature (0 = automatic)");
    search->add_option("--cooling", sa.cooling, "Geometric cooling factor per step");
    search->add_flag("--allow-long", sa.allow_long, "Permit the 2^31-set exhaustive scan at n = 5");
    search->add_option("--checkpoint", sa.checkpoint, "Checkpoint file for resumable exhaustive scans");
    search->add_option("--checkpoint-every", sa.checkpoint_every, "Sets scanned between checkpoints");
    search->add_option("--max-witnesses", sa.max_witnesses, "Witnesses kept in the report");

    auto* construct = app.add_subcommand("construct", "Build a construction and check its defining property");
    add_common(construct, common);
    std::string kind, spec_text;
    int k = 0, j = 1, parity = 0;
    construct->add_option("--spec", spec_text, "Construction spec as JSON or shorthand");
    construct->add_option("--kind", kind, "preimage, hyperplane or sympoly")
        ->check(CLI::IsMember({"preimage", "hyperplane", "sympoly"}));
    construct->add_option("--n", n_opt, "Ambient dimension");
    construct->add_option("--d", d, "Flat dimension");
    construct->add_option("--k", k, "2-adic valuation of s (preimage)");
    construct->add_option("--j", j, "Odd part of s (preimage)");
    construct->add_option("--parity", parity, "Hyperplane parity");

    auto* table = app.add_subcommand("table", "CSV grid of best bounds over 1 <= s < 2^d");
    std::string table_out;
    table->add_option("--d", d, "Flat dimension")->required()->check(CLI::Range(1, 16));
    table->add_option("--out", table_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (profile->parsed()) return run_profile(common, n, d, set_input, family, csv);
        if (bounds->parsed()) return run_bounds(common, d, s, n_opt, terms);
        if (verify->parsed()) return run_verify(common, n, d, claims, seed, corrupt);
        if (search->parsed()) return run_search_cmd(common, sa);
        if (construct->parsed()) {
            std::string text = spec_text;
            if (text.empty()) {
                if (kind.empty()) throw std::invalid_argument("construct: give --spec or --kind");
                text = kind;
                if (kind == "preimage") text += " d=" + std::to_string(d) + " k=" + std::to_string(k) + " j=" + std::to_string(j);
                if (kind == "sympoly") text += " d=" + std::to_string(d);
                if (kind == "hyperplane") text += " parity=" + std::to_string(parity);
            }
            return run_construct(common, text, n_opt);
        }
        if (table->parsed()) {
            write_text(table_out, report::bounds_table_csv(d));
            return kOk;
        }
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
