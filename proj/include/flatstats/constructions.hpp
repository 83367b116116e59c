#pragma once

// Explicit point sets behind the lower-bound constructions and remarks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flatstats/exact.hpp"
#include "flatstats/gf2.hpp"
#include "flatstats/point_set.hpp"

namespace flatstats {

/// {x : Bx in S} for a surjective (d-k) x n map B and |S| = j (j odd).
/// Defaults: B projects onto the first d-k coordinates, S is the first j
/// points of F_2^(d-k) in integer order.
PointSet preimage_set(int n, int d, int k, int j, const std::optional<BitMatrix>& b = std::nullopt,
                      const std::optional<std::vector<Word>>& s = std::nullopt);

/// {x : <x, 1> = parity}.
PointSet hyperplane_set(int n, int parity);

/// {x : C(|x|, d) is odd}, the support of the elementary symmetric polynomial
/// of degree d (by Lucas: (|x| & d) == d).
PointSet symmetric_polynomial_set(int n, int d);

enum class PerturbMode { remove, add };

/// Deletes each point of A (remove) or adds each point outside A (add)
/// independently with probability `prob`, driven by the counter-based
/// splitmix64 stream keyed by `seed`.
PointSet perturb(const PointSet& a, PerturbMode mode, const Rational& prob, std::uint64_t seed);

/// Name of the generator behind perturb and the annealer, recorded in reports.
inline constexpr const char* kGeneratorName = "splitmix64-counter";

/// splitmix64 finalizer applied to seed + counter * golden gamma.
std::uint64_t counter_random(std::uint64_t seed, std::uint64_t counter);

struct ConstructionSpec {
    enum class Kind { preimage, hyperplane, symmetric_poly, perturbed };
    Kind kind = Kind::hyperplane;
    int n = 0;
    int d = 0;
    int k = 0;
    int j = 1;
    int parity = 0;
    // perturbed only
    std::string base_mask;  // hex, empty = empty set
    PerturbMode mode = PerturbMode::remove;
    Rational probability = 0;
    std::uint64_t seed = 0;

    PointSet build() const;
};

std::string to_string(ConstructionSpec::Kind k);
nlohmann::ordered_json to_json(const ConstructionSpec& spec);
ConstructionSpec construction_from_json(const nlohmann::json& j);

}  // namespace flatstats
