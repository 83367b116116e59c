#include "flatstats/constructions.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace flatstats {

PointSet preimage_set(int n, int d, int k, int j, const std::optional<BitMatrix>& b,
                      const std::optional<std::vector<Word>>& s) {
    check_dimension(n, "preimage_set");
    if (d < 1 || d > n) throw std::invalid_argument("preimage_set: need 1 <= d <= n");
    if (k < 0 || k >= d) throw std::invalid_argument("preimage_set: need 0 <= k < d");
    const int rows = d - k;
    const int image = 1 << rows;
    // j = 2^(d-k) (S is the whole image, A = F_2^n) is the one even value allowed.
    if (j < 1 || j > image || (j % 2 == 0 && j != image)) {
        throw std::invalid_argument("preimage_set: j must be odd with 1 <= j <= 2^(d-k) (or j = 2^(d-k)), got " +
                                    std::to_string(j));
    }

    BitMatrix map(n);
    if (b) {
        if (b->cols() != n || b->rows() != rows) {
            throw std::invalid_argument("preimage_set: B must be (d-k) x n");
        }
        if (rank(*b) != rows) throw std::invalid_argument("preimage_set: B is not surjective");
        map = *b;
    } else {
        for (int i = 0; i < rows; ++i) map.push_row(Word{1} << i);
    }

    std::vector<bool> target(static_cast<std::size_t>(image), false);
    if (s) {
        if (static_cast<int>(s->size()) != j) throw std::invalid_argument("preimage_set: |S| must equal j");
        for (Word y : *s) {
            if (y >= static_cast<Word>(image)) throw std::invalid_argument("preimage_set: S point outside F_2^(d-k)");
            if (target[y]) throw std::invalid_argument("preimage_set: S has repeated points");
            target[y] = true;
        }
    } else {
        for (int y = 0; y < j; ++y) target[static_cast<std::size_t>(y)] = true;
    }

    PointSet a(n);
    for (std::uint64_t x = 0; x < a.universe(); ++x) {
        if (target[map.apply(static_cast<Word>(x))]) a.insert(static_cast<Word>(x));
    }
    return a;
}

PointSet hyperplane_set(int n, int parity) {
    if (n < 1) throw std::invalid_argument("hyperplane_set: need n >= 1");
    if (parity != 0 && parity != 1) throw std::invalid_argument("hyperplane_set: parity must be 0 or 1");
    PointSet a(n);
    for (std::uint64_t x = 0; x < a.universe(); ++x) {
        if ((std::popcount(x) & 1) == parity) a.insert(static_cast<Word>(x));
    }
    return a;
}

PointSet symmetric_polynomial_set(int n, int d) {
    if (d < 1 || d > n) throw std::invalid_argument("symmetric_polynomial_set: need 1 <= d <= n");
    PointSet a(n);
    const unsigned deg = static_cast<unsigned>(d);
    for (std::uint64_t x = 0; x < a.universe(); ++x) {
        const unsigned w = static_cast<unsigned>(std::popcount(x));
        if ((w & deg) == deg) a.insert(static_cast<Word>(x));
    }
    return a;
}

std::uint64_t counter_random(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

PointSet perturb(const PointSet& a, PerturbMode mode, const Rational& prob, std::uint64_t seed) {
    if (prob < 0 || prob > 1) throw std::invalid_argument("perturb: probability must lie in [0, 1]");
    const Integer num = numerator(prob), den = denominator(prob);
    if (den > Integer(std::numeric_limits<std::uint32_t>::max())) {
        throw std::invalid_argument("perturb: probability denominator must fit in 32 bits");
    }
    const auto p = num.convert_to<std::uint64_t>();
    const auto q = den.convert_to<std::uint64_t>();
    // Unbiased draw in [0, q) by rejection on the top of the 64-bit range.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % q;

    PointSet out = a;
    for (std::uint64_t x = 0; x < a.universe(); ++x) {
        const bool in = a.contains(static_cast<Word>(x));
        if (in != (mode == PerturbMode::remove)) continue;
        std::uint64_t draw = 0;
        for (std::uint64_t attempt = 0;; ++attempt) {
            draw = counter_random(seed, (x << 8) | attempt);
            if (draw < limit) break;
        }
        if (draw % q < p) out.flip(static_cast<Word>(x));
    }
    return out;
}

std::string to_string(ConstructionSpec::Kind k) {
    switch (k) {
        case ConstructionSpec::Kind::preimage: return "preimage";
        case ConstructionSpec::Kind::hyperplane: return "hyperplane";
        case ConstructionSpec::Kind::symmetric_poly: return "sympoly";
        case ConstructionSpec::Kind::perturbed: return "perturbed";
    }
    return "unknown";
}

PointSet ConstructionSpec::build() const {
    switch (kind) {
        case Kind::preimage: return preimage_set(n, d, k, j);
        case Kind::hyperplane: return hyperplane_set(n, parity);
        case Kind::symmetric_poly: return symmetric_polynomial_set(n, d);
        case Kind::perturbed: {
            const PointSet base = base_mask.empty() ? PointSet(n) : PointSet::from_hex(n, base_mask);
            return perturb(base, mode, probability, seed);
        }
    }
    throw std::logic_error("ConstructionSpec: unknown kind");
}

nlohmann::ordered_json to_json(const ConstructionSpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(spec.kind);
    j["n"] = spec.n;
    switch (spec.kind) {
        case ConstructionSpec::Kind::preimage:
            j["d"] = spec.d;
            j["k"] = spec.k;
            j["j"] = spec.j;
            break;
        case ConstructionSpec::Kind::hyperplane:
            j["parity"] = spec.parity;
            break;
        case ConstructionSpec::Kind::symmetric_poly:
            j["d"] = spec.d;
            break;
        case ConstructionSpec::Kind::perturbed:
            j["base_mask"] = spec.base_mask.empty() ? PointSet(spec.n).to_hex() : spec.base_mask;
            j["mode"] = spec.mode == PerturbMode::remove ? "delete" : "add";
            j["probability"] = to_fraction_string(spec.probability);
            j["seed"] = std::to_string(spec.seed);
            j["generator"] = kGeneratorName;
            break;
    }
    return j;
}

ConstructionSpec construction_from_json(const nlohmann::json& j) {
    ConstructionSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    spec.n = j.at("n").get<int>();
    if (kind == "preimage") {
        spec.kind = ConstructionSpec::Kind::preimage;
        spec.d = j.at("d").get<int>();
        spec.k = j.at("k").get<int>();
        spec.j = j.value("j", 1);
    } else if (kind == "hyperplane") {
        spec.kind = ConstructionSpec::Kind::hyperplane;
        spec.parity = j.value("parity", 0);
    } else if (kind == "sympoly" || kind == "symmetric_poly") {
        spec.kind = ConstructionSpec::Kind::symmetric_poly;
        spec.d = j.at("d").get<int>();
    } else if (kind == "perturbed") {
        spec.kind = ConstructionSpec::Kind::perturbed;
        spec.base_mask = j.value("base_mask", std::string());
        const std::string mode = j.value("mode", std::string("delete"));
        if (mode == "delete") spec.mode = PerturbMode::remove;
        else if (mode == "add") spec.mode = PerturbMode::add;
        else throw std::invalid_argument("construction: mode must be delete or add");
        const auto& p = j.at("probability");
        spec.probability = p.is_string() ? parse_rational(p.get<std::string>()) : Rational(p.get<long long>());
        const auto& sd = j.value("seed", nlohmann::json("0"));
        spec.seed = sd.is_string() ? std::stoull(sd.get<std::string>()) : sd.get<std::uint64_t>();
    } else {
        throw std::invalid_argument("construction: unknown kind '" + kind + "'");
    }
    return spec;
}

}  // namespace flatstats
