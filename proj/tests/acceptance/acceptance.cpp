// Prints one PASS/FAIL line per acceptance criterion; exit status is the
// number of failures (capped at 1). Optional argv[1]: path to the CLI binary,
// used for the byte-identity check of criterion 10.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "flatstats/blocking.hpp"
#include "flatstats/bounds.hpp"
#include "flatstats/constructions.hpp"
#include "flatstats/report.hpp"
#include "flatstats/search.hpp"
#include "flatstats/stats.hpp"
#include "flatstats/transform.hpp"
#include "support/oracles.hpp"

using namespace flatstats;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

Rational pow2r(int e) { return Rational(Integer(1), pow2(static_cast<unsigned>(e))); }

Outcome half_level() {
    Outcome o;
    const SearchResult r4 = exhaustive_max(4, 2, 2);
    o.require(r4.value == Rational(4, 5), "exhaustive_max(4,2,2) = " + to_fraction_string(r4.value));
    const Rational formula = 1 - Rational(oracle::q_binomial(3, 2), oracle::q_binomial(4, 2));
    o.require(upper_half_level(4, 2) == formula && formula == r4.value, "upper_half_level(4,2) mismatch");
    bool hyper = false;
    for (const auto& w : r4.witnesses) hyper = hyper || w == hyperplane_set(4, 0) || w == hyperplane_set(4, 1);
    o.require(hyper, "no hyperplane witness");
    const SearchResult r3 = exhaustive_max(3, 2, 2);
    o.require(r3.value == Rational(6, 7) && upper_half_level(3, 2) == Rational(6, 7), "n=3 value " + to_fraction_string(r3.value));
    o.detail = o.ok ? "max(4,2,2)=4/5 with hyperplane witness, max(3,2,2)=6/7" : o.detail;
    return o;
}

// One pass over all A in F_2^4 for criteria 2 and 3.
struct FullScan {
    Rational max_odd = 0;
    std::map<std::pair<int, int>, Rational> max_even;  // (d, s) -> max lambda*
};

const FullScan& full_scan() {
    static const FullScan scan = [] {
        FullScan f;
        for (std::uint64_t m = 0; m < (1u << 16); ++m) {
            const PointSet a = PointSet::from_word(4, m);
            for (int d : {2, 3}) {
                const IntersectionProfile p = flat_profile(a, d);
                if (d == 2) f.max_odd = std::max(f.max_odd, p.odd_fraction());
                for (int s = 2; s < (1 << d); s += 2) {
                    auto& best = f.max_even[{d, s}];
                    best = std::max(best, p.fraction(s));
                }
            }
        }
        return f;
    }();
    return scan;
}

Outcome odd_cap() {
    Outcome o;
    const Rational cap = odd_upper(4, 2);
    o.require(cap == Rational(4, 7) && cap == Rational(1, 2) + Rational(1, 2 * 7), "odd_upper(4,2) != 4/7");
    o.require(full_scan().max_odd <= cap, "max odd fraction " + to_fraction_string(full_scan().max_odd));
    if (o.ok) o.detail = "max odd fraction over 65536 sets = " + to_fraction_string(full_scan().max_odd) + " <= 4/7";
    return o;
}

Outcome even_pointwise() {
    Outcome o;
    for (const auto& [key, best] : full_scan().max_even) {
        const auto [d, s] = key;
        const int k = nu2(s);
        const Rational bound = 1 - Rational(pow2(static_cast<unsigned>(d - k)) - 1, pow2(static_cast<unsigned>(d + 1)) - 1);
        o.require(bound == upper_flat_even(d, k), "upper_flat_even formula mismatch");
        o.require(best <= bound, "d=" + std::to_string(d) + " s=" + std::to_string(s) + " max " + to_fraction_string(best));
    }
    if (o.ok) o.detail = "all 65536 sets, d in {2,3}, every even s";
    return o;
}

// Fraction of U in Gr(n,d) with dim(U cap ker B) = k, B = projection onto the first d-k coordinates.
Rational census(int n, int d, int k) {
    const auto subs = oracle::subspaces(n, d);
    std::uint64_t hits = 0;
    for (const auto& u : subs) {
        std::size_t in_kernel = 0;
        for (Word p : u) in_kernel += (p & low_mask(d - k)) == 0 ? 1 : 0;
        hits += in_kernel == (std::size_t{1} << k) ? 1 : 0;
    }
    return Rational(hits, subs.size());
}

Outcome construction_equality() {
    Outcome o;
    int cases = 0;
    for (int d = 2; d <= 3; ++d) {
        for (int k = 1; k < d; ++k) {
            for (int j : {1, 3}) {
                if (j >= (1 << (d - k))) continue;
                for (int n = d; n <= 6; ++n) {
                    ConstructionSpec spec;
                    spec.kind = ConstructionSpec::Kind::preimage;
                    spec.n = n;
                    spec.d = d;
                    spec.k = k;
                    spec.j = j;
                    const Rational got = lambda_star(spec.build(), d, j << k);
                    o.require(got == c_n_dk(n, d, k), "n=" + std::to_string(n) + " d=" + std::to_string(d) + " k=" +
                                                          std::to_string(k) + " j=" + std::to_string(j));
                    ++cases;
                }
            }
        }
    }
    for (int n = 1; n <= 5; ++n) {
        for (int d = 0; d <= n; ++d) {
            for (int k = 0; k <= d; ++k) o.require(c_n_dk(n, d, k) == census(n, d, k), "census n=" + std::to_string(n));
        }
    }
    if (o.ok) o.detail = std::to_string(cases) + " construction cases, rank census n <= 5";
    return o;
}

Outcome cube_odd() {
    Outcome o;
    for (int n = 1; n <= 8; ++n) {
        for (int d = 1; d <= std::min(n, 4); ++d) {
            const PointSet a = symmetric_polynomial_set(n, d);
            const IntersectionProfile p = cube_profile(a, d);
            for (std::size_t s = 0; s < p.counts.size(); s += 2) {
                o.require(p.counts[s] == 0, "even count at n=" + std::to_string(n) + " d=" + std::to_string(d));
            }
            if (n <= 6) {
                const auto c = oracle::profile(a, oracle::subcubes(n, d), d);
                o.require(c == p.counts, "cube oracle mismatch n=" + std::to_string(n));
            }
        }
    }
    if (o.ok) o.detail = "n <= 8, d <= 4, no even counts";
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    for (int n = 1; n <= 6; ++n) {
        for (int d = 1; d <= n; ++d) {
            for (int t = 0; t < 200; ++t) {
                const PointSet a = oracle::random_set(n, rng, 0.1 + 0.8 * static_cast<double>(t % 9) / 8);
                o.require(flat_profile(a, d).counts == flat_profile_bruteforce(a, d).counts,
                          "profile mismatch n=" + std::to_string(n) + " d=" + std::to_string(d));
            }
        }
    }
    std::uniform_int_distribution<long long> value(-1000000, 1000000);
    for (int t = 0; t < 500; ++t) {
        const int n = t % 11;
        ValueTable f(n);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = value(rng);
        const ValueTable fh = wht(f), back = wht(fh);
        Integer lhs = 0, rhs = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            o.require(back[i] == f[i] * pow2(static_cast<unsigned>(n)), "inversion n=" + std::to_string(n));
            lhs += fh[i] * fh[i];
            rhs += f[i] * f[i];
        }
        o.require(lhs == pow2(static_cast<unsigned>(n)) * rhs, "Parseval n=" + std::to_string(n));
    }
    if (o.ok) o.detail = "200 sets per (n,d), n <= 6; 500 tables, n <= 10";
    return o;
}

Outcome bounds_engine() {
    Outcome o;
    const Rational small = bootstrap_upper(3, 1, 64).certified_upper;
    o.require(small < upper_flat_even(3, 1) + pow2r(60), "bootstrap(3,1,64) = " + to_decimal(small, 20));
    const Rational target = 1 - Rational(2, 3) * (1 - pow2r(15)) * pow2r(5);
    const Rational big = bootstrap_upper(20, 5, 64).certified_upper;
    Rational gap = big - target;
    if (gap < 0) gap = -gap;
    o.require(gap <= pow2r(9) + pow2r(20), "bootstrap(20,5) off by " + to_decimal(gap, 12));
    for (int d = 1; d <= 10; ++d) {
        for (long long s = 1; s < (1LL << d); ++s) {
            const BoundReport b = summary(d, s);
            o.require(b.best_lower <= b.best_upper, "summary d=" + std::to_string(d) + " s=" + std::to_string(s));
        }
    }
    if (o.ok) o.detail = "bootstrap(20,5) gap " + to_decimal(gap, 8) + ", summary consistent for d <= 10";
    return o;
}

Outcome finite_geometry() {
    Outcome o;
    o.require(minimum_blocking_set_size(2, 1) == 3, "PG(2,2) minimum != 3");
    std::mt19937_64 rng(77);
    int samples = 0;
    while (samples < 500) {
        const int dim = 2 + static_cast<int>(rng() % 5);
        PointSet s = oracle::random_set(dim, rng);
        if (s.size() % 2) s.flip(static_cast<Word>(rng() % s.universe()));
        if (s.empty()) continue;
        const auto bad = bad_directions(s, s.size() / 2);
        std::vector<BitVector> support;
        for (const auto& v : spectrum_support(ValueTable::indicator(dim, s.points()))) {
            if (!v.is_zero()) support.push_back(v);
        }
        o.require(bad == support, "bad directions != spectrum support at dim " + std::to_string(dim));
        o.require(bad == bad_directions_by_counting(s, s.size() / 2), "counting mismatch");
        ++samples;
    }
    int vanishing = 0;
    for (int t = 0; t < 1000; ++t) {
        const int dim = 2 + static_cast<int>(rng() % 4);
        const int tdim = 1 + static_cast<int>(rng() % static_cast<unsigned>(dim - 1));
        std::vector<Word> gens;
        for (int i = 0; i < tdim; ++i) gens.push_back(static_cast<Word>(rng()) & low_mask(dim));
        const LinearSubspace l = LinearSubspace::span(dim, gens);
        PointSet s(dim);
        if (t % 2) {
            // union of whole cosets of L^perp gives a vanishing spectrum on L \ {0}
            const LinearSubspace perp = orthogonal_complement(l);
            for (Word rep = 0; rep < (Word{1} << dim); ++rep) {
                if (canonical_rep(perp, rep) == rep && (rng() & 1)) {
                    for (Word p : perp.elements()) s.insert(rep ^ p);
                }
            }
        } else {
            s = oracle::random_set(dim, rng);
        }
        const DivisibilityReport rep = check_divisibility(s, l);
        o.require(rep.holds, "divisibility fails at dim " + std::to_string(dim));
        vanishing += rep.spectrum_vanishes ? 1 : 0;
    }
    if (o.ok) o.detail = "min blocking 3, 500 spectrum samples, 1000 divisibility samples (" + std::to_string(vanishing) + " vanishing)";
    return o;
}

Outcome monotonicity() {
    Outcome o;
    std::string values;
    for (int s = 0; s <= 4; ++s) {
        const Rational a = exhaustive_max(3, 2, s).value, b = exhaustive_max(4, 2, s).value;
        o.require(b <= a, "s=" + std::to_string(s));
        values += " s=" + std::to_string(s) + ":" + to_fraction_string(a) + "->" + to_fraction_string(b);
    }
    if (o.ok) o.detail = values.substr(1);
    return o;
}

std::string run_command(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return out;
}

Outcome determinism(const char* cli) {
    Outcome o;
    VerifyOptions a, b;
    a.threads = 1;
    b.threads = 8;
    const std::string one = report::dump(report::verification(verify_all(4, 2, a)));
    const std::string eight = report::dump(report::verification(verify_all(4, 2, b)));
    o.require(one == eight, "library reports differ");
    if (cli) {
        const std::string base = std::string("\"") + cli + "\" verify --n 4 --d 2 --threads ";
        const std::string c1 = run_command(base + "1"), c8 = run_command(base + "8");
        o.require(!c1.empty() && c1 == c8, "CLI reports differ");
        if (o.ok) o.detail = "library and CLI output byte-identical (" + std::to_string(c1.size()) + " bytes)";
    } else if (o.ok) {
        o.detail = "library output byte-identical (CLI not given)";
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    static const char* cli_path = cli;
    const Criterion criteria[] = {
        {"exact half-level maximum", half_level},
        {"odd-intersection cap", odd_cap},
        {"even-s averaging bound, pointwise", even_pointwise},
        {"construction equality and rank census", construction_equality},
        {"symmetric polynomial set is cube-odd", cube_odd},
        {"oracle equivalence, Parseval, inversion", oracle_equivalence},
        {"bounds engine", bounds_engine},
        {"finite geometry suite", finite_geometry},
        {"monotonicity n=3 -> n=4", monotonicity},
        {"determinism across thread counts", [] { return determinism(cli_path); }},
    };
    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.precision(2);
        line << std::fixed << (o.ok ? "PASS" : "FAIL") << " criterion " << index << ": " << c.name << " - " << o.detail
             << " [" << secs << "s]";
        std::cout << line.str() << std::endl;
        failures += o.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
