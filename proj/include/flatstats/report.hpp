#pragma once

// JSON and CSV serialization shared by the command-line tool and the tests.
// Key order is fixed and rationals are lowest-terms strings, so identical
// inputs always produce identical bytes.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flatstats/bounds.hpp"
#include "flatstats/constructions.hpp"
#include "flatstats/search.hpp"
#include "flatstats/stats.hpp"

namespace flatstats::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "1.0.0";

/// {"num": "p", "den": "q", "decimal": "..."}.
Json rational(const Rational& r, int digits = 12);
Rational rational_from_json(const nlohmann::json& j);

Json profile(const IntersectionProfile& p, int digits = 12);
Json bounds(const BoundReport& b, int digits = 12);
Json search(const SearchResult& r, int digits = 12);
Json verification(const VerificationReport& v);
Json point_set(const PointSet& a);

/// Top-level document: schema_version, command, params, results, provenance.
Json envelope(const std::string& command, Json params, Json results, const std::vector<std::string>& tags);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

/// Header "s,count,fraction,decimal", one row per intersection size.
std::string profile_csv(const IntersectionProfile& p, int digits = 12);

/// Header "d,s,k,best_lower,best_upper"; one row per 1 <= s < 2^d, with
/// k = nu2(s) and bounds as "p/q".
std::string bounds_table_csv(int d);

}  // namespace flatstats::report
