#include "flatstats/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "flatstats/bounds.hpp"
#include "flatstats/errors.hpp"
#include "flatstats/grassmann.hpp"
#include "flatstats/parallel.hpp"
#include "flatstats/stats.hpp"

namespace flatstats {

namespace {

void check_search_params(int n, int d, int s) {
    check_dimension(n, "search");
    if (n < 1 || d < 1 || d > n) {
        throw std::invalid_argument("search: need 1 <= d <= n, got n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
    if (s < 0 || s > (1 << d)) throw std::invalid_argument("search: need 0 <= s <= 2^d, got s=" + std::to_string(s));
}

std::optional<std::string> check_against_bounds(int n, int d, int s, const Rational& value) {
    if (d > 30) return std::nullopt;
    const BoundReport b = summary(d, s, n);
    if (b.finite_best_upper && value > *b.finite_best_upper) {
        return "value " + to_fraction_string(value) + " exceeds the finite-n upper bound " +
               to_fraction_string(*b.finite_best_upper);
    }
    return std::nullopt;
}

// Running state of an exhaustive scan; merge() is associative and, applied to
// consecutive ranges in order, yields the first max_witnesses witnesses in
// ascending mask order regardless of how the ranges were cut.
struct ScanState {
    bool any = false;
    std::uint32_t best = 0;
    std::uint64_t witness_count = 0;
    std::vector<std::uint64_t> witnesses;

    void offer(std::uint64_t mask, std::uint32_t count, std::size_t cap) {
        if (!any || count > best) {
            any = true;
            best = count;
            witness_count = 0;
            witnesses.clear();
        }
        if (count == best) {
            ++witness_count;
            if (witnesses.size() < cap) witnesses.push_back(mask);
        }
    }

    void merge(const ScanState& o, std::size_t cap) {
        if (!o.any) return;
        if (!any || o.best > best) {
            *this = o;
            return;
        }
        if (o.best == best) {
            witness_count += o.witness_count;
            for (auto w : o.witnesses) {
                if (witnesses.size() >= cap) break;
                witnesses.push_back(w);
            }
        }
    }
};

constexpr const char* kCheckpointFormat = "flatstats-checkpoint";

// Identifies the scan a checkpoint belongs to.
std::string checkpoint_token(int n, int d, int s, std::uint64_t space) {
    std::uint64_t h = counter_random(space, (static_cast<std::uint64_t>(n) << 40) ^ (static_cast<std::uint64_t>(d) << 32) ^
                                                static_cast<std::uint32_t>(s));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_checkpoint(const std::string& path, int n, int d, int s, std::uint64_t space, std::uint64_t next,
                      const ScanState& st) {
    nlohmann::ordered_json j;
    j["format"] = kCheckpointFormat;
    j["version"] = 1;
    j["n"] = n;
    j["d"] = d;
    j["s"] = s;
    j["space"] = std::to_string(space);
    j["token"] = checkpoint_token(n, d, s, space);
    j["next_index"] = std::to_string(next);
    j["best_count"] = st.best;
    j["has_best"] = st.any;
    j["witness_count"] = std::to_string(st.witness_count);
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (auto m : st.witnesses) w.push_back(PointSet::from_word(n, m).to_hex());
    j["witnesses"] = w;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint '" + tmp + "'");
        out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
}

bool read_checkpoint(const std::string& path, int n, int d, int s, std::uint64_t space, std::uint64_t& next,
                     ScanState& st) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != kCheckpointFormat || j.value("version", 0) != 1) {
        throw std::invalid_argument("checkpoint '" + path + "' has an unknown format or version");
    }
    if (j.at("n").get<int>() != n || j.at("d").get<int>() != d || j.at("s").get<int>() != s ||
        std::stoull(j.at("space").get<std::string>()) != space ||
        j.at("token").get<std::string>() != checkpoint_token(n, d, s, space)) {
        throw std::invalid_argument("checkpoint '" + path + "' belongs to a different search");
    }
    next = std::stoull(j.at("next_index").get<std::string>());
    st.any = j.at("has_best").get<bool>();
    st.best = j.at("best_count").get<std::uint32_t>();
    st.witness_count = std::stoull(j.at("witness_count").get<std::string>());
    st.witnesses.clear();
    for (const auto& w : j.at("witnesses")) st.witnesses.push_back(PointSet::from_hex(n, w.get<std::string>()).word());
    return true;
}

}  // namespace

SearchResult exhaustive_max(int n, int d, int s, const ExhaustiveOptions& opts) {
    check_search_params(n, d, s);
    if (n > 5) {
        throw std::invalid_argument("exhaustive search supports n <= 4 (n = 5 behind allow_long); use anneal mode for n=" +
                                    std::to_string(n));
    }
    if (n == 5 && !opts.allow_long) {
        throw ResourceLimitError("exhaustive search at n = 5 scans 2^31 sets; enable the long-running flag or use anneal mode");
    }

    SearchResult r;
    r.config.n = n;
    r.config.d = d;
    r.config.s = s;
    r.config.mode = SearchMode::exhaustive;
    r.config.iterations = 0;
    r.config.threads = opts.threads;
    r.total = flat_count(n, d);

    const int top = 1 << d;
    if (s == 0 || s == top) {
        const PointSet w = s == 0 ? PointSet(n) : PointSet::full(n);
        r.count = r.total;
        r.value = 1;
        r.witnesses = {w};
        r.witness_count = 1;
        r.symmetry = s == 0 ? "degenerate s = 0: the empty set" : "degenerate s = 2^d: the full space";
        return r;
    }

    const MemberMasks masks = MemberMasks::flats(n, d);
    const bool translate = n == 5;
    const std::uint64_t space = translate ? (std::uint64_t{1} << 31) : (std::uint64_t{1} << (std::uint64_t{1} << n));
    auto mask_at = [translate](std::uint64_t i) { return translate ? ((i << 1) | 1u) : i; };
    r.symmetry = translate ? "translation: sets containing the origin" : "none";

    ScanState global;
    std::uint64_t next = 0;
    if (!opts.checkpoint_path.empty()) read_checkpoint(opts.checkpoint_path, n, d, s, space, next, global);
    const std::uint64_t block = opts.checkpoint_path.empty() ? space : std::max<std::uint64_t>(1, opts.checkpoint_every);
    const std::size_t cap = opts.max_witnesses;

    while (next < space) {
        const std::uint64_t end = std::min(space, next + block);
        const unsigned workers =
            static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(opts.threads), end - next));
        std::vector<ScanState> parts(workers);
        parallel_chunks(end - next, workers, [&](IndexRange range, unsigned w) {
            ScanState& st = parts[w];
            for (std::uint64_t i = next + range.begin; i < next + range.end; ++i) {
                const std::uint64_t a = mask_at(i);
                st.offer(a, masks.count_exact(a, s), cap);
            }
        });
        for (const auto& p : parts) global.merge(p, cap);
        next = end;
        if (!opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, n, d, s, space, next, global);
    }

    r.count = global.best;
    r.value = Rational(r.count, r.total);
    r.witness_count = global.witness_count;
    for (auto m : global.witnesses) r.witnesses.push_back(PointSet::from_word(n, m));
    r.visited = space;
    r.bound_violation = check_against_bounds(n, d, s, r.value);
    return r;
}

namespace {

struct Incidence {
    std::uint64_t flats = 0;
    std::uint64_t per_point = 0;
    std::vector<std::uint32_t> flat_ids;  // point p owns [p*per_point, (p+1)*per_point)
};

Incidence build_incidence(int n, int d) {
    const Integer flats = flat_count(n, d);
    const Integer per_point = q_binomial(n, d);
    const Integer entries = per_point * pow2(static_cast<unsigned>(n));
    if (flats > Integer(std::uint64_t{1} << 31) || entries > Integer(std::uint64_t{1} << 27)) {
        throw ResourceLimitError("anneal: incidence table for n=" + std::to_string(n) + " d=" + std::to_string(d) +
                                 " has " + entries.str() + " entries, cap is 2^27");
    }
    Incidence inc;
    inc.flats = flats.convert_to<std::uint64_t>();
    inc.per_point = per_point.convert_to<std::uint64_t>();
    const std::uint64_t points = std::uint64_t{1} << n;
    inc.flat_ids.resize(points * inc.per_point);
    std::vector<std::uint64_t> fill(points, 0);
    for_each_flat(n, d, [&](const Flat& f, std::uint64_t id) {
        for (Word p : flat_point_words(f)) {
            inc.flat_ids[p * inc.per_point + fill[p]++] = static_cast<std::uint32_t>(id);
        }
    });
    return inc;
}

struct RestartOutcome {
    std::uint64_t best = 0;
    PointSet best_set;
    std::vector<TraceEntry> trace;
};

double unit_interval(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

RestartOutcome run_restart(const SearchConfig& cfg, const Incidence& inc, unsigned restart) {
    const int n = cfg.n;
    const std::uint64_t points = std::uint64_t{1} << n;
    const std::uint64_t rs = counter_random(cfg.seed, restart);

    PointSet a(n);
    if (restart == 0 && cfg.initial) {
        a = cfg.initial->build();
        if (a.dim() != n) throw std::invalid_argument("anneal: initial set has dimension " + std::to_string(a.dim()));
    } else {
        const std::uint64_t init_seed = counter_random(rs, ~std::uint64_t{0});
        for (std::uint64_t p = 0; p < points; ++p) {
            if (counter_random(init_seed, p) & 1u) a.insert(static_cast<Word>(p));
        }
    }

    std::vector<std::uint32_t> inter(inc.flats, 0);
    for (Word p : a.points()) {
        for (std::uint64_t i = 0; i < inc.per_point; ++i) ++inter[inc.flat_ids[p * inc.per_point + i]];
    }
    const auto target = static_cast<std::uint32_t>(cfg.s);
    std::int64_t count = 0;
    for (auto v : inter) count += v == target ? 1 : 0;

    RestartOutcome out;
    out.best = static_cast<std::uint64_t>(count);
    out.best_set = a;
    out.trace.push_back({restart, 0, Integer(count)});

    double temperature = cfg.initial_temperature > 0 ? cfg.initial_temperature
                                                     : std::max(1.0, static_cast<double>(inc.per_point) / 8.0);
    for (std::uint64_t step = 0; step < cfg.iterations; ++step) {
        const Word p = static_cast<Word>(counter_random(rs, 2 * step) & (points - 1));
        const bool adding = !a.contains(p);
        const std::uint32_t* ids = &inc.flat_ids[p * inc.per_point];
        std::int64_t delta = 0;
        for (std::uint64_t i = 0; i < inc.per_point; ++i) {
            const std::uint32_t before = inter[ids[i]];
            const std::uint32_t after = adding ? before + 1 : before - 1;
            delta += (after == target ? 1 : 0) - (before == target ? 1 : 0);
        }
        bool accept = delta >= 0;
        if (!accept && temperature > 1e-12) {
            accept = unit_interval(counter_random(rs, 2 * step + 1)) < std::exp(static_cast<double>(delta) / temperature);
        }
        if (accept) {
            for (std::uint64_t i = 0; i < inc.per_point; ++i) {
                if (adding) ++inter[ids[i]];
                else --inter[ids[i]];
            }
            a.flip(p);
            count += delta;
            const auto c = static_cast<std::uint64_t>(count);
            if (c > out.best) {
                out.best = c;
                out.best_set = a;
                out.trace.push_back({restart, step + 1, Integer(count)});
            } else if (c == out.best && a < out.best_set) {
                out.best_set = a;
            }
        }
        temperature *= cfg.cooling;
    }
    return out;
}

}  // namespace

SearchResult anneal_max(const SearchConfig& cfg) {
    check_search_params(cfg.n, cfg.d, cfg.s);
    if (cfg.restarts < 1) throw std::invalid_argument("anneal: need at least one restart");
    if (!(cfg.cooling > 0.0 && cfg.cooling <= 1.0)) throw std::invalid_argument("anneal: cooling must lie in (0, 1]");
    const Incidence inc = build_incidence(cfg.n, cfg.d);

    std::vector<RestartOutcome> outcomes(cfg.restarts);
    parallel_chunks(cfg.restarts, std::min(resolve_threads(cfg.threads), cfg.restarts),
                    [&](IndexRange range, unsigned) {
                        for (auto r = range.begin; r < range.end; ++r) {
                            outcomes[r] = run_restart(cfg, inc, static_cast<unsigned>(r));
                        }
                    });

    SearchResult res;
    res.config = cfg;
    res.config.mode = SearchMode::anneal;
    res.total = Integer(inc.flats);
    const RestartOutcome* best = &outcomes[0];
    for (const auto& o : outcomes) {
        if (o.best > best->best || (o.best == best->best && o.best_set < best->best_set)) best = &o;
        res.trace.insert(res.trace.end(), o.trace.begin(), o.trace.end());
    }
    res.count = Integer(best->best);
    res.value = Rational(res.count, res.total);
    res.witnesses = {best->best_set};
    res.witness_count = 1;
    res.visited = static_cast<std::uint64_t>(cfg.restarts) * (cfg.iterations + 1);
    res.symmetry = "none";
    res.bound_violation = check_against_bounds(cfg.n, cfg.d, cfg.s, res.value);
    return res;
}

SearchResult run_search(const SearchConfig& cfg, const ExhaustiveOptions& opts) {
    if (cfg.mode == SearchMode::exhaustive) {
        ExhaustiveOptions o = opts;
        o.threads = cfg.threads;
        SearchResult r = exhaustive_max(cfg.n, cfg.d, cfg.s, o);
        r.config = cfg;
        return r;
    }
    return anneal_max(cfg);
}

// ---------------------------------------------------------------------------
// Verification battery

std::string to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::verified: return "verified";
        case ClaimStatus::violated: return "violated";
        case ClaimStatus::skipped: return "skipped";
    }
    return "unknown";
}

bool VerificationReport::any_violated() const {
    return std::any_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.status == ClaimStatus::violated; });
}

const std::vector<std::string>& claim_ids() {
    static const std::vector<std::string> ids = {
        "half_level_bound", "even_flat_bound", "odd_bound",   "construction_equality", "complement_symmetry",
        "affine_invariance", "cube_vs_flat",   "cube_odd",    "monotonicity",          "one_point_ratio",
    };
    return ids;
}

namespace {

// Histogram of every A subset of F_2^n (n <= 4) against one member family.
struct ProfileTable {
    int n = 0;
    int d = 0;
    std::size_t stride = 0;
    std::uint64_t total = 0;
    std::vector<std::uint32_t> hist;

    std::span<const std::uint32_t> row(std::uint64_t a) const { return {&hist[a * stride], stride}; }
    std::uint64_t sets() const { return hist.size() / stride; }
};

ProfileTable build_table(const MemberMasks& masks, unsigned threads) {
    ProfileTable t;
    t.n = masks.n();
    t.d = masks.d();
    t.stride = (std::size_t{1} << t.d) + 1;
    t.total = masks.masks().size();
    const std::uint64_t sets = std::uint64_t{1} << (std::uint64_t{1} << t.n);
    t.hist.assign(sets * t.stride, 0);
    parallel_chunks(sets, threads, [&](IndexRange range, unsigned) {
        for (auto a = range.begin; a < range.end; ++a) {
            masks.histogram(a, std::span<std::uint32_t>(&t.hist[a * t.stride], t.stride));
        }
    });
    return t;
}

// max over A of hist[s], with the smallest maximizing mask.
struct ColumnMax {
    std::vector<std::uint32_t> best;
    std::vector<std::uint64_t> argmax;
};

ColumnMax column_max(const ProfileTable& t) {
    ColumnMax m;
    m.best.assign(t.stride, 0);
    m.argmax.assign(t.stride, 0);
    for (std::uint64_t a = 0; a < t.sets(); ++a) {
        const auto row = t.row(a);
        for (std::size_t s = 0; s < t.stride; ++s) {
            if (row[s] > m.best[s]) {
                m.best[s] = row[s];
                m.argmax[s] = a;
            }
        }
    }
    return m;
}

std::string hex_of(int n, std::uint64_t mask) { return PointSet::from_word(n, mask).to_hex(); }

std::string frac(const Rational& r) { return to_fraction_string(r); }

// Uniformly random invertible n x n matrix (rows) from a counter stream.
std::vector<Word> random_invertible(int n, std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        std::vector<Word> rows;
        for (int i = 0; i < n; ++i) {
            rows.push_back(static_cast<Word>(counter_random(seed, attempt * 64 + static_cast<std::uint64_t>(i))) &
                           low_mask(n));
        }
        if (rank(BitMatrix(n, rows)) == n) return rows;
    }
}

Word apply_rows(std::span<const Word> rows, Word x) {
    Word y = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) y |= static_cast<Word>(dot_bits(rows[r], x)) << r;
    return y;
}

PointSet random_set(int n, std::uint64_t seed) {
    PointSet a(n);
    for (std::uint64_t p = 0; p < a.universe(); ++p) {
        if (counter_random(seed, p) & 1u) a.insert(static_cast<Word>(p));
    }
    return a;
}

class Battery {
public:
    Battery(int n, int d, const VerifyOptions& opts) : n_(n), d_(d), opts_(opts) {
        stats_.threads = opts.threads;
    }

    VerificationReport run() {
        VerificationReport rep;
        rep.n = n_;
        rep.d = d_;
        for (const auto& id : claim_ids()) {
            if (!opts_.claims.empty() && !opts_.claims.count(id)) continue;
            rep.claims.push_back(run_claim(id));
        }
        return rep;
    }

private:
    bool exhaustive() const { return n_ <= 4; }
    int top() const { return 1 << d_; }

    const ProfileTable& flat_table() {
        if (!flat_table_) {
            flat_table_ = build_table(MemberMasks::flats(n_, d_), opts_.threads);
            if (opts_.corrupt) {
                // All mass on the half level (or on 1 for d = 1) for the set {0}.
                auto* row = &flat_table_->hist[1 * flat_table_->stride];
                std::fill(row, row + flat_table_->stride, 0u);
                row[static_cast<std::size_t>(d_ > 1 ? top() / 2 : 1)] = static_cast<std::uint32_t>(flat_table_->total);
            }
        }
        return *flat_table_;
    }

    ClaimResult run_claim(const std::string& id) {
        ClaimResult c;
        c.id = id;
        c.status = ClaimStatus::verified;
        if (id == "half_level_bound") half_level(c);
        else if (id == "even_flat_bound") even_flat(c);
        else if (id == "odd_bound") odd_bound(c);
        else if (id == "construction_equality") construction_equality(c);
        else if (id == "complement_symmetry") complement_symmetry(c);
        else if (id == "affine_invariance") affine_invariance(c);
        else if (id == "cube_vs_flat") cube_vs_flat(c);
        else if (id == "cube_odd") cube_odd(c);
        else if (id == "monotonicity") monotonicity(c);
        else if (id == "one_point_ratio") one_point_ratio(c);
        else throw std::invalid_argument("unknown claim id '" + id + "'");
        return c;
    }

    static void skip(ClaimResult& c, std::string why) {
        c.status = ClaimStatus::skipped;
        c.details = std::move(why);
    }

    static void violate(ClaimResult& c, std::string why, std::optional<std::string> witness) {
        if (c.status == ClaimStatus::violated) return;  // keep the first
        c.status = ClaimStatus::violated;
        c.details = std::move(why);
        c.witness = std::move(witness);
    }

    void half_level(ClaimResult& c) {
        c.statement = "lambda*(n,d,2^(d-1),A) <= 1 - q_binomial(n-1,d)/q_binomial(n,d) for every A, with equality for the parity hyperplane";
        if (d_ < 2) return skip(c, "requires d > 1");
        const Rational bound = upper_half_level(n_, d_);
        const PointSet hyper = hyperplane_set(n_, 0);
        const Rational hv = lambda_star(hyper, d_, top() / 2, stats_);
        ++c.instances;
        if (hv != bound) violate(c, "hyperplane value " + frac(hv) + " != bound " + frac(bound), hyper.to_hex());
        if (!exhaustive()) {
            c.details = "hyperplane equality only (n > 4); bound " + frac(bound);
            return;
        }
        const auto& t = flat_table();
        const auto s = static_cast<std::size_t>(top() / 2);
        for (std::uint64_t a = 0; a < t.sets(); ++a, ++c.instances) {
            const Rational v(t.row(a)[s], t.total);
            if (v > bound) violate(c, "value " + frac(v) + " exceeds " + frac(bound), hex_of(n_, a));
        }
        if (c.status == ClaimStatus::verified) c.details = "bound " + frac(bound) + " holds for all sets and is attained";
    }

    void even_flat(ClaimResult& c) {
        c.statement = "lambda*(n,d,s,A) <= 1 - (2^(d-k)-1)/(2^(d+1)-1) for every A and 1 < s < 2^d, s = j 2^k, n >= d+1";
        if (n_ < d_ + 1) return skip(c, "requires n >= d + 1");
        if (top() <= 2) return skip(c, "no s with 1 < s < 2^d");
        if (!exhaustive()) {
            // Constructions only: the preimage sets for every k.
            for (int k = 0; k < d_; ++k) {
                for (int j = 1; j * (1 << k) < top(); j += 2) {
                    const int s = j << k;
                    if (s <= 1) continue;
                    const PointSet a = preimage_set(n_, d_, k, j);
                    const Rational v = lambda_star(a, d_, s, stats_);
                    ++c.instances;
                    if (v > upper_flat_even(d_, k)) violate(c, "preimage set exceeds bound at s=" + std::to_string(s), a.to_hex());
                }
            }
            if (c.status == ClaimStatus::verified) c.details = "checked on preimage constructions (n > 4)";
            return;
        }
        const auto& t = flat_table();
        for (int s = 2; s < top(); ++s) {
            const Rational bound = upper_flat_even(d_, nu2(s));
            for (std::uint64_t a = 0; a < t.sets(); ++a, ++c.instances) {
                const Rational v(t.row(a)[static_cast<std::size_t>(s)], t.total);
                if (v > bound) {
                    violate(c, "s=" + std::to_string(s) + ": " + frac(v) + " exceeds " + frac(bound), hex_of(n_, a));
                }
            }
        }
        if (c.status == ClaimStatus::verified) c.details = "all sets, all 1 < s < 2^d";
    }

    void odd_bound(ClaimResult& c) {
        c.statement = "fraction of d-flats meeting A in an odd number of points <= 1/2 + 1/(2(2^(n-d+1)-1))";
        if (d_ >= n_) return skip(c, "requires d < n");
        const Rational bound = odd_upper(n_, d_);
        if (!exhaustive()) {
            for (unsigned i = 0; i < 16; ++i, ++c.instances) {
                const PointSet a = random_set(n_, counter_random(opts_.seed, 100 + i));
                const Rational v = odd_fraction(a, d_, stats_);
                if (v > bound) violate(c, "odd fraction " + frac(v) + " exceeds " + frac(bound), a.to_hex());
            }
            if (c.status == ClaimStatus::verified) c.details = "16 random sets (n > 4)";
            return;
        }
        const auto& t = flat_table();
        Rational worst = 0;
        for (std::uint64_t a = 0; a < t.sets(); ++a, ++c.instances) {
            std::uint64_t odd = 0;
            const auto row = t.row(a);
            for (std::size_t s = 1; s < t.stride; s += 2) odd += row[s];
            const Rational v(odd, t.total);
            worst = std::max(worst, v);
            if (v > bound) violate(c, "odd fraction " + frac(v) + " exceeds " + frac(bound), hex_of(n_, a));
        }
        if (c.status == ClaimStatus::verified) c.details = "max odd fraction " + frac(worst) + " <= " + frac(bound);
    }

    void construction_equality(ClaimResult& c) {
        c.statement = "preimage set B^-1(S) with |S| = j odd: lambda*(n,d,j 2^k) = c_n(d,k) for k >= 1 and >= c_n(d,0) for k = 0";
        for (int k = 0; k < d_; ++k) {
            const Rational expect = c_n_dk(n_, d_, k);
            for (int j = 1; j <= (1 << (d_ - k)); j += 2) {
                const PointSet a = preimage_set(n_, d_, k, j);
                const Rational v = lambda_star(a, d_, j << k, stats_);
                ++c.instances;
                const bool ok = k >= 1 ? v == expect : v >= expect;
                if (!ok) {
                    violate(c, "k=" + std::to_string(k) + " j=" + std::to_string(j) + ": " + frac(v) + " vs c_n(d,k) = " + frac(expect),
                            a.to_hex());
                }
            }
        }
        if (c.status == ClaimStatus::verified) c.details = std::to_string(c.instances) + " constructions";
    }

    void complement_symmetry(ClaimResult& c) {
        c.statement = "profile(complement of A)[s] = profile(A)[2^d - s]";
        if (exhaustive()) {
            const auto& t = flat_table();
            const std::uint64_t full = t.sets() - 1;
            for (std::uint64_t a = 0; a < t.sets(); ++a, ++c.instances) {
                const auto row = t.row(a), comp = t.row(full ^ a);
                for (std::size_t s = 0; s < t.stride; ++s) {
                    if (row[s] != comp[t.stride - 1 - s]) {
                        violate(c, "mismatch at s=" + std::to_string(s), hex_of(n_, a));
                        break;
                    }
                }
            }
        } else {
            for (unsigned i = 0; i < 16; ++i, ++c.instances) {
                const PointSet a = random_set(n_, counter_random(opts_.seed, 200 + i));
                const auto p = flat_profile(a, d_, stats_), q = flat_profile(a.complement(), d_, stats_);
                for (int s = 0; s <= top(); ++s) {
                    if (p.counts[static_cast<std::size_t>(s)] != q.counts[static_cast<std::size_t>(top() - s)]) {
                        violate(c, "mismatch at s=" + std::to_string(s), a.to_hex());
                    }
                }
            }
        }
        if (c.status == ClaimStatus::verified) c.details = std::to_string(c.instances) + " sets";
    }

    void affine_invariance(ClaimResult& c) {
        c.statement = "flat_profile(A) = flat_profile(M A + b) for invertible M and any b";
        const unsigned trials = exhaustive() ? 64 : 8;
        for (unsigned i = 0; i < trials; ++i, ++c.instances) {
            const std::uint64_t seed = counter_random(opts_.seed, 300 + i);
            const PointSet a = random_set(n_, seed);
            const auto m = random_invertible(n_, counter_random(seed, 1));
            const Word b = static_cast<Word>(counter_random(seed, 2)) & low_mask(n_);
            PointSet image(n_);
            for (Word p : a.points()) image.insert(apply_rows(m, p) ^ b);
            if (flat_profile(a, d_, stats_) != flat_profile(image, d_, stats_)) {
                violate(c, "profile changed under an affine map (trial " + std::to_string(i) + ")", a.to_hex());
            }
        }
        if (c.status == ClaimStatus::verified) c.details = std::to_string(trials) + " random (A, M, b)";
    }

    void cube_vs_flat(ClaimResult& c) {
        c.statement = "averaging the subcube profile of M A over all M in GL(n,2) gives the flat profile of A "
                      "(so the best coordinates do at least as well), and max_A lambda(n,d,s) >= max_A lambda*(n,d,s)";
        if (!exhaustive()) return skip(c, "requires n <= 4");
        const auto& ft = flat_table();
        const ProfileTable ct = build_table(MemberMasks::subcubes(n_, d_), opts_.threads);
        const ColumnMax fm = column_max(ft), cm = column_max(ct);
        for (std::size_t s = 0; s < ft.stride; ++s, ++c.instances) {
            if (Rational(cm.best[s], ct.total) < Rational(fm.best[s], ft.total)) {
                violate(c, "s=" + std::to_string(s) + ": cube max " + frac(Rational(cm.best[s], ct.total)) +
                               " below flat max " + frac(Rational(fm.best[s], ft.total)),
                        hex_of(n_, fm.argmax[s]));
            }
        }

        std::vector<std::vector<Word>> group;
        const std::uint64_t matrices = std::uint64_t{1} << (n_ * n_);
        for (std::uint64_t code = 0; code < matrices; ++code) {
            std::vector<Word> rows;
            for (int r = 0; r < n_; ++r) rows.push_back(static_cast<Word>((code >> (r * n_)) & low_mask(n_)));
            if (rank(BitMatrix(n_, rows)) == n_) group.push_back(std::move(rows));
        }
        std::vector<std::uint64_t> sample(fm.argmax.begin(), fm.argmax.end());
        for (unsigned i = 0; i < 4; ++i) sample.push_back(random_set(n_, counter_random(opts_.seed, 400 + i)).word());
        std::sort(sample.begin(), sample.end());
        sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
        const MemberMasks cubes = MemberMasks::subcubes(n_, d_);
        std::vector<std::uint32_t> hist(ct.stride);
        for (std::uint64_t a : sample) {
            std::vector<Integer> sum(ct.stride, 0);
            std::vector<std::uint32_t> best(ct.stride, 0);
            for (const auto& m : group) {
                std::uint64_t image = 0;
                for (std::uint64_t w = a; w != 0; w &= w - 1) {
                    image |= std::uint64_t{1} << apply_rows(m, static_cast<Word>(std::countr_zero(w)));
                }
                cubes.histogram(image, hist);
                for (std::size_t s = 0; s < ct.stride; ++s) {
                    sum[s] += hist[s];
                    best[s] = std::max(best[s], hist[s]);
                }
            }
            const auto flat_row = ft.row(a);
            for (std::size_t s = 0; s < ct.stride; ++s, ++c.instances) {
                const Rational avg(sum[s], Integer(group.size()) * ct.total);
                const Rational flat(flat_row[s], ft.total);
                if (avg != flat || Rational(best[s], ct.total) < flat) {
                    violate(c, "s=" + std::to_string(s) + ": GL-average " + frac(avg) + ", best coordinates " +
                                   frac(Rational(best[s], ct.total)) + ", flat " + frac(flat),
                            hex_of(n_, a));
                }
            }
        }
        if (c.status == ClaimStatus::verified) {
            c.details = "exhaustive maxima for all s; GL(n,2) averages over " + std::to_string(group.size()) +
                        " maps for " + std::to_string(sample.size()) + " sets";
        }
    }

    void cube_odd(ClaimResult& c) {
        c.statement = "{x : C(|x|,d) odd} meets every axis-aligned d-subcube in an odd number of points";
        const auto prof = cube_profile(symmetric_polynomial_set(n_, d_), d_, stats_);
        for (std::size_t s = 0; s < prof.counts.size(); s += 2, ++c.instances) {
            if (prof.counts[s] != 0) {
                violate(c, prof.counts[s].str() + " subcubes meet the set in " + std::to_string(s) + " points",
                        symmetric_polynomial_set(n_, d_).to_hex());
            }
        }
        if (c.status == ClaimStatus::verified) c.details = prof.total.str() + " subcubes, all odd";
    }

    void monotonicity(ClaimResult& c) {
        c.statement = "max_A lambda*(n,d,s,A) <= max_A lambda*(n-1,d,s,A) for every s";
        if (!exhaustive()) return skip(c, "requires n <= 4");
        if (n_ - 1 < d_) return skip(c, "requires n - 1 >= d");
        const ColumnMax cur = column_max(flat_table());
        const ProfileTable prev_t = build_table(MemberMasks::flats(n_ - 1, d_), opts_.threads);
        const ColumnMax prev = column_max(prev_t);
        std::string values;
        for (std::size_t s = 0; s < cur.best.size(); ++s, ++c.instances) {
            const Rational now(cur.best[s], flat_table().total), before(prev.best[s], prev_t.total);
            values += (s ? " " : "") + std::to_string(s) + ":" + frac(before) + "->" + frac(now);
            if (now > before) violate(c, "s=" + std::to_string(s) + ": " + frac(now) + " > " + frac(before), hex_of(n_, cur.argmax[s]));
        }
        if (c.status == ClaimStatus::verified) c.details = values;
    }

    void one_point_ratio(ClaimResult& c) {
        c.statement = "max lambda*(n,d,s) <= (s/(s-1))^(s-1) max lambda*(n,d,s-1) and the mirrored bound toward s+1";
        if (!exhaustive()) return skip(c, "requires n <= 4");
        if (top() < 3) return skip(c, "requires 2^d >= 3");
        const ColumnMax m = column_max(flat_table());
        for (int s = 0; s <= top(); ++s) {
            if (s < 2 && s > top() - 2) continue;  // no neighbour on either side
            const auto r = one_point_ratios(d_, s);
            const Rational here(m.best[static_cast<std::size_t>(s)], flat_table().total);
            if (r.down) {
                ++c.instances;
                const Rational below(m.best[static_cast<std::size_t>(s - 1)], flat_table().total);
                if (here > *r.down * below) violate(c, "downward ratio fails at s=" + std::to_string(s), hex_of(n_, m.argmax[static_cast<std::size_t>(s)]));
            }
            if (r.up) {
                ++c.instances;
                const Rational above(m.best[static_cast<std::size_t>(s + 1)], flat_table().total);
                if (here > *r.up * above) violate(c, "upward ratio fails at s=" + std::to_string(s), hex_of(n_, m.argmax[static_cast<std::size_t>(s)]));
            }
        }
        if (c.status == ClaimStatus::verified) c.details = std::to_string(c.instances) + " neighbour pairs";
    }

    int n_;
    int d_;
    VerifyOptions opts_;
    StatsOptions stats_;
    std::optional<ProfileTable> flat_table_;
};

}  // namespace

VerificationReport verify_all(int n, int d, const VerifyOptions& opts) {
    if (n < 1 || d < 1 || d > n) {
        throw std::invalid_argument("verify: need 1 <= d <= n, got n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
    if (n > 12) throw ResourceLimitError("verify: construction checks are capped at n = 12");
    for (const auto& id : opts.claims) {
        if (std::find(claim_ids().begin(), claim_ids().end(), id) == claim_ids().end()) {
            throw std::invalid_argument("verify: unknown claim id '" + id + "'");
        }
    }
    return Battery(n, d, opts).run();
}

}  // namespace flatstats
