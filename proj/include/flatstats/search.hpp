#pragma once

// Extremal search for max_A lambda*(n,d,s,A): exhaustive at tiny n, simulated
// annealing beyond, plus the claim-by-claim verification battery.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flatstats/constructions.hpp"
#include "flatstats/exact.hpp"
#include "flatstats/point_set.hpp"

namespace flatstats {

enum class SearchMode { exhaustive, anneal };

struct SearchConfig {
    int n = 0;
    int d = 0;
    int s = 0;
    SearchMode mode = SearchMode::anneal;
    std::uint64_t iterations = 100000;
    unsigned restarts = 1;
    std::uint64_t seed = 0;
    std::optional<ConstructionSpec> initial;
    /// Starting temperature on the integer objective; 0 picks flats-per-point / 8.
    double initial_temperature = 0.0;
    /// Geometric cooling factor applied after every step.
    double cooling = 0.999;
    unsigned threads = 0;
};

struct TraceEntry {
    unsigned restart = 0;
    std::uint64_t step = 0;
    Integer count = 0;
};

struct SearchResult {
    SearchConfig config;
    Rational value;   // best count / total
    Integer count;    // number of flats meeting the witness in exactly s points
    Integer total;
    std::vector<PointSet> witnesses;  // ascending, capped
    std::uint64_t witness_count = 0;  // all witnesses found (exhaustive) or 1 (anneal)
    std::uint64_t visited = 0;        // sets evaluated
    std::vector<TraceEntry> trace;
    std::string symmetry;             // reduction applied by the exhaustive scan
    /// Set when the value exceeds a finite-n upper bound; never expected.
    std::optional<std::string> bound_violation;
};

struct ExhaustiveOptions {
    unsigned threads = 0;
    /// n = 5 scans 2^31 sets; it must be requested explicitly.
    bool allow_long = false;
    std::size_t max_witnesses = 1024;
    /// Checkpoint file for resumable scans; empty disables checkpointing.
    std::string checkpoint_path;
    std::uint64_t checkpoint_every = std::uint64_t{1} << 24;
};

/// Exact max over every A (n <= 4), or over A containing 0 (n = 5, translation
/// canonicalization, allow_long required). s = 0 and s = 2^d are answered by
/// the empty set and the full space without scanning.
SearchResult exhaustive_max(int n, int d, int s, const ExhaustiveOptions& opts = {});

/// Single-point-flip simulated annealing on counts[s]. Deterministic per seed.
SearchResult anneal_max(const SearchConfig& cfg);

SearchResult run_search(const SearchConfig& cfg, const ExhaustiveOptions& opts = {});

enum class ClaimStatus { verified, violated, skipped };
std::string to_string(ClaimStatus s);

struct ClaimResult {
    std::string id;
    std::string statement;
    ClaimStatus status = ClaimStatus::skipped;
    std::uint64_t instances = 0;  // individual checks performed
    std::string details;
    std::optional<std::string> witness;  // hex mask reproducing a violation
};

struct VerificationReport {
    int n = 0;
    int d = 0;
    std::vector<ClaimResult> claims;
    bool any_violated() const;
};

struct VerifyOptions {
    unsigned threads = 0;
    /// Claim ids to run; empty runs all.
    std::set<std::string> claims;
    std::uint64_t seed = 1;
    /// Test hook: overwrite one profile so the harness must report a violation.
    bool corrupt = false;
};

/// Claim ids in run order.
const std::vector<std::string>& claim_ids();

VerificationReport verify_all(int n, int d, const VerifyOptions& opts = {});

}  // namespace flatstats
