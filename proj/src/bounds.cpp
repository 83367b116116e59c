#include "flatstats/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "flatstats/gf2.hpp"

namespace flatstats {

namespace {

Rational pow2r(int e) {
    return e >= 0 ? Rational(pow2(static_cast<unsigned>(e))) : Rational(Integer(1), pow2(static_cast<unsigned>(-e)));
}

Rational rational_pow(const Rational& base, long long e) {
    Rational r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

std::string nd(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

int nu2(long long s) {
    require(s >= 1, "nu2: s must be >= 1, got " + std::to_string(s));
    int k = 0;
    while ((s & 1) == 0) {
        s >>= 1;
        ++k;
    }
    return k;
}

Rational c_d(int d) {
    require(d >= 1, "c_d: d must be >= 1");
    const Integer top = pow2(static_cast<unsigned>(d)) - 1;
    Rational r = 1;
    for (int i = 1; i <= d - 1; ++i) r *= 1 - Rational(pow2(static_cast<unsigned>(i)) - 1, top);
    return r;
}

Rational c_dk(int d, int k) {
    require(d >= 0 && k >= 0 && k <= d, "c_dk: need 0 <= k <= d, got " + nd(d, k));
    Rational r = 1;
    for (int i = 0; i <= d - k - 1; ++i) r *= 1 - pow2r(i - d);
    return r;
}

Rational c_n_dk(int n, int d, int k) {
    require(k >= 0 && k <= d && d <= n, "c_n_dk: need 0 <= k <= d <= n");
    const Integer lifts = pow2(static_cast<unsigned>((d - k) * (n - d)));
    return Rational(lifts * q_binomial(n - d + k, k), q_binomial(n, d));
}

Rational upper_flat_even(int d, int k) {
    require(k >= 0 && k < d, "upper_flat_even: need 0 <= k < d, got " + nd(d, k));
    return 1 - Rational(pow2(static_cast<unsigned>(d - k)) - 1, pow2(static_cast<unsigned>(d + 1)) - 1);
}

BootstrapValue bootstrap_upper(int d, int k, int terms) {
    require(k >= 0 && k < d, "bootstrap_upper: need 0 <= k < d, got " + nd(d, k));
    require(terms >= 1, "bootstrap_upper: need at least one term");
    const Integer gap = pow2(static_cast<unsigned>(d - k)) - 1;
    Rational sum = 0, product = 1;
    for (int m = 0; m < terms; ++m) {
        sum += product;
        const Rational c = Rational(1, 2) - Rational(gap, pow2(static_cast<unsigned>(d + m + 1)) - 1);
        product *= c;
    }
    BootstrapValue out;
    out.partial = sum / 2;
    out.certified_upper = out.partial + pow2r(-terms);
    return out;
}

Rational upper_half_level(int n, int d) {
    require(d > 1 && d <= n, "upper_half_level: need 1 < d <= n, got n=" + std::to_string(n) + " d=" + std::to_string(d));
    if (d == n) return 1;  // no d-subspace inside F_2^(n-1)
    return 1 - Rational(q_binomial(n - 1, d), q_binomial(n, d));
}

Rational odd_upper(int n, int d) {
    require(d >= 1 && d < n, "odd_upper: need 1 <= d < n, got n=" + std::to_string(n) + " d=" + std::to_string(d));
    return Rational(1, 2) + Rational(Integer(1), 2 * (pow2(static_cast<unsigned>(n - d + 1)) - 1));
}

OnePointRatios one_point_ratios(int d, long long s) {
    require(d >= 1 && d < 62, "one_point_ratios: need 1 <= d < 62");
    const long long top = 1LL << d;
    OnePointRatios r;
    if (s >= 2 && s <= top) r.down = rational_pow(Rational(s, s - 1), s - 1);
    if (s >= 0 && s <= top - 2) r.up = rational_pow(Rational(top - s, top - s - 1), top - s - 1);
    require(r.down || r.up, "one_point_ratios: s=" + std::to_string(s) + " outside both ranges for d=" + std::to_string(d));
    return r;
}

Rational e_upper() { return Rational(2718281829LL, 1000000000LL); }

Rational corollary_lower(int d, long long s_neighbor) {
    require(d > 1 && d < 62, "corollary_lower: need 1 < d < 62");
    const long long top = 1LL << d;
    int best_k = 0;
    for (long long s : {s_neighbor - 1, s_neighbor + 1}) {
        if (s > 1 && s < top && s % 2 == 0) best_k = std::max(best_k, nu2(s));
    }
    require(best_k >= 1, "corollary_lower: " + std::to_string(s_neighbor) +
                             " has no even neighbour strictly between 1 and 2^d");
    return (1 - pow2r(-best_k)) / e_upper();
}

Integer bose_burton_min(int n_proj, int k) {
    require(k >= 0 && k <= n_proj, "bose_burton_min: need 0 <= k <= n_proj");
    return pow2(static_cast<unsigned>(n_proj - k + 1)) - 1;
}

BoundReport summary(int d, long long s, std::optional<int> n, int bootstrap_terms) {
    require(d >= 1 && d <= 30, "summary: need 1 <= d <= 30");
    const long long top = 1LL << d;
    require(s >= 0 && s <= top, "summary: need 0 <= s <= 2^d, got s=" + std::to_string(s));
    if (n) require(*n >= d && *n <= 62, "summary: need d <= n <= 62");

    BoundReport r;
    r.d = d;
    r.s = s;
    r.n = n;
    r.bootstrap_terms = bootstrap_terms;
    r.k = s == 0 ? 0 : nu2(s);
    r.j = s == 0 ? 0 : (s >> r.k);
    r.constants.emplace_back("c_d", c_d(d));

    auto lower = [&](std::string name, std::string source, std::string scope, Rational v) {
        r.lower.push_back({std::move(name), std::move(source), std::move(scope), std::move(v)});
    };
    auto upper = [&](std::string name, std::string source, std::string scope, Rational v) {
        r.upper.push_back({std::move(name), std::move(source), std::move(scope), std::move(v)});
    };

    upper("trivial", "fraction", "limit", Rational(1));
    const bool interior = s > 0 && s < top;
    if (!interior) {
        lower("trivial_set", s == 0 ? "empty set meets every flat in 0 points" : "full space meets every flat fully",
              "limit", Rational(1));
        r.exact = true;
    } else {
        const int k = r.k;
        const bool odd = (s % 2) != 0;
        lower("c(d,k)", "preimage construction B^-1(S), limit of c_n(d,k)", "limit", c_dk(d, k));
        if (k >= 1) lower("1-2^-k", "preimage construction, union bound on c(d,k)", "limit", 1 - pow2r(-k));
        if (odd && d > 1) {
            const bool has_even_neighbour = (s - 1 > 1) || (s + 1 < top);
            if (has_even_neighbour) {
                lower("(1-2^-k')/e", "one-point perturbation of an even neighbour", "limit", corollary_lower(d, s));
            }
        }
        if (d > 1 && s == top / 2) {
            const Rational v = 1 - pow2r(-d);
            lower("1-2^-d", "half level: hyperplane construction", "limit", v);
            upper("1-2^-d", "half level: second-moment bound", "limit", v);
            r.exact = true;
        }
        if (odd) upper("1/2", "odd intersections: parity pairing of parallel (d-1)-flats", "limit", Rational(1, 2));
        if (s > 1) {
            upper("hyperplane_averaging", "averaging over (d+1)-flats with a Bose-Burton count of bad directions",
                  "limit", upper_flat_even(d, k));
            upper("bootstrap_series", "certified truncation of the bootstrap series, " +
                  std::to_string(bootstrap_terms) + " terms", "limit", bootstrap_upper(d, k, bootstrap_terms).certified_upper);
        }
        if (n) {
            const int nn = *n;
            lower("c_n(d,k)", "preimage construction at finite n", "finite_n", c_n_dk(nn, d, k));
            if (odd && d < nn) upper("odd_upper(n,d)", "odd intersections at finite n", "finite_n", odd_upper(nn, d));
            if (d > 1 && s == top / 2) {
                upper("upper_half_level(n,d)", "half level second-moment bound at finite n", "finite_n",
                      upper_half_level(nn, d));
            }
            if (s > 1 && nn >= d + 1) {
                upper("hyperplane_averaging(n)", "averaging over (d+1)-flats, any n >= d+1", "finite_n",
                      upper_flat_even(d, k));
            }
        }
    }

    // Finite-n uppers also bound the limit (monotone in n); limit lowers also
    // bound every finite n from below.
    r.best_upper = 1;
    for (const auto& e : r.upper) r.best_upper = std::min(r.best_upper, e.value);
    r.best_lower = 0;
    for (const auto& e : r.lower) {
        if (e.scope == "limit") r.best_lower = std::max(r.best_lower, e.value);
    }
    if (r.best_lower > r.best_upper) {
        throw std::logic_error("summary: best_lower exceeds best_upper for d=" + std::to_string(d) +
                               " s=" + std::to_string(s));
    }
    if (n) {
        Rational lo = 0, hi = 1;
        for (const auto& e : r.lower) lo = std::max(lo, e.value);
        for (const auto& e : r.upper) {
            if (e.scope == "finite_n" || e.name == "trivial") hi = std::min(hi, e.value);
        }
        if (lo > hi) {
            throw std::logic_error("summary: finite-n lower exceeds upper for d=" + std::to_string(d) +
                                   " s=" + std::to_string(s) + " n=" + std::to_string(*n));
        }
        r.finite_best_lower = lo;
        r.finite_best_upper = hi;
    }
    return r;
}

}  // namespace flatstats
