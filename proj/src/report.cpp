#include "flatstats/report.hpp"

#include <sstream>

namespace flatstats::report {

Json rational(const Rational& r, int digits) {
    Json j;
    j["num"] = numerator(r).str();
    j["den"] = denominator(r).str();
    j["decimal"] = to_decimal(r, digits);
    return j;
}

Rational rational_from_json(const nlohmann::json& j) {
    return make_rational(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
}

Json point_set(const PointSet& a) {
    Json j;
    j["n"] = a.dim();
    j["size"] = a.size();
    j["mask"] = a.to_hex();
    Json pts = Json::array();
    for (Word p : a.points()) pts.push_back(BitVector(a.dim(), p).to_string());
    j["points"] = pts;
    return j;
}

Json profile(const IntersectionProfile& p, int digits) {
    Json j;
    j["n"] = p.n;
    j["d"] = p.d;
    j["family"] = to_string(p.family);
    j["total"] = p.total.str();
    Json counts = Json::array(), fractions = Json::array();
    for (std::size_t s = 0; s < p.counts.size(); ++s) {
        counts.push_back(p.counts[s].str());
        fractions.push_back(rational(p.fraction(static_cast<int>(s)), digits));
    }
    j["counts"] = counts;
    j["fractions"] = fractions;
    j["odd_fraction"] = rational(p.odd_fraction(), digits);
    return j;
}

namespace {

Json entries(const std::vector<BoundEntry>& es, int digits) {
    Json out = Json::array();
    for (const auto& e : es) {
        Json j;
        j["name"] = e.name;
        j["source"] = e.source;
        j["scope"] = e.scope;
        j["value"] = rational(e.value, digits);
        out.push_back(j);
    }
    return out;
}

}  // namespace

Json bounds(const BoundReport& b, int digits) {
    Json j;
    j["d"] = b.d;
    j["s"] = b.s;
    j["k"] = b.k;
    j["j"] = b.j;
    j["n"] = b.n ? Json(*b.n) : Json(nullptr);
    j["bootstrap_terms"] = b.bootstrap_terms;
    j["exact"] = b.exact;
    j["best_lower"] = rational(b.best_lower, digits);
    j["best_upper"] = rational(b.best_upper, digits);
    j["finite_best_lower"] = b.finite_best_lower ? rational(*b.finite_best_lower, digits) : Json(nullptr);
    j["finite_best_upper"] = b.finite_best_upper ? rational(*b.finite_best_upper, digits) : Json(nullptr);
    j["lower"] = entries(b.lower, digits);
    j["upper"] = entries(b.upper, digits);
    Json constants = Json::object();
    for (const auto& [name, value] : b.constants) constants[name] = rational(value, digits);
    j["constants"] = constants;
    return j;
}

Json search(const SearchResult& r, int digits) {
    Json cfg;
    cfg["n"] = r.config.n;
    cfg["d"] = r.config.d;
    cfg["s"] = r.config.s;
    cfg["mode"] = r.config.mode == SearchMode::exhaustive ? "exhaustive" : "anneal";
    if (r.config.mode == SearchMode::anneal) {
        cfg["iterations"] = std::to_string(r.config.iterations);
        cfg["restarts"] = r.config.restarts;
        cfg["seed"] = std::to_string(r.config.seed);
        cfg["initial"] = r.config.initial ? to_json(*r.config.initial) : Json(nullptr);
        std::ostringstream t, c;
        t << r.config.initial_temperature;
        c << r.config.cooling;
        cfg["initial_temperature"] = t.str();
        cfg["cooling"] = c.str();
        cfg["generator"] = kGeneratorName;
    }

    Json j;
    j["config"] = cfg;
    j["value"] = rational(r.value, digits);
    j["count"] = r.count.str();
    j["total"] = r.total.str();
    j["witness_count"] = std::to_string(r.witness_count);
    Json ws = Json::array();
    for (const auto& w : r.witnesses) ws.push_back(w.to_hex());
    j["witnesses"] = ws;
    j["visited"] = std::to_string(r.visited);
    j["symmetry"] = r.symmetry;
    Json trace = Json::array();
    for (const auto& t : r.trace) {
        Json e;
        e["restart"] = t.restart;
        e["step"] = std::to_string(t.step);
        e["count"] = t.count.str();
        trace.push_back(e);
    }
    j["trace"] = trace;
    j["bound_violation"] = r.bound_violation ? Json(*r.bound_violation) : Json(nullptr);
    return j;
}

Json verification(const VerificationReport& v) {
    Json j;
    j["n"] = v.n;
    j["d"] = v.d;
    j["any_violated"] = v.any_violated();
    Json claims = Json::array();
    for (const auto& c : v.claims) {
        Json e;
        e["id"] = c.id;
        e["statement"] = c.statement;
        e["status"] = to_string(c.status);
        e["instances"] = std::to_string(c.instances);
        e["details"] = c.details;
        e["witness"] = c.witness ? Json(*c.witness) : Json(nullptr);
        claims.push_back(e);
    }
    j["claims"] = claims;
    return j;
}

Json envelope(const std::string& command, Json params, Json results, const std::vector<std::string>& tags) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["params"] = std::move(params);
    j["results"] = std::move(results);
    Json prov;
    prov["tool"] = "flatstats";
    prov["version"] = kToolVersion;
    prov["tags"] = tags;
    j["provenance"] = prov;
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string profile_csv(const IntersectionProfile& p, int digits) {
    std::string out = "s,count,fraction,decimal\n";
    for (std::size_t s = 0; s < p.counts.size(); ++s) {
        const Rational f = p.fraction(static_cast<int>(s));
        out += std::to_string(s) + "," + p.counts[s].str() + "," + to_fraction_string(f) + "," + to_decimal(f, digits) + "\n";
    }
    return out;
}

std::string bounds_table_csv(int d) {
    std::string out = "d,s,k,best_lower,best_upper\n";
    const long long top = 1LL << d;
    for (long long s = 1; s < top; ++s) {
        const BoundReport b = summary(d, s);
        out += std::to_string(d) + "," + std::to_string(s) + "," + std::to_string(b.k) + "," +
               to_fraction_string(b.best_lower) + "," + to_fraction_string(b.best_upper) + "\n";
    }
    return out;
}

}  // namespace flatstats::report
