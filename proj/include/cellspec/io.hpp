#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cellspec/constructions.hpp"
#include "cellspec/spectrum.hpp"
#include "cellspec/topology.hpp"

namespace cellspec::io {

/// Insertion-ordered so that emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "cellspec 0.1.0";

/// {"size": n, "leq": [[i, j], ...], "closed": true}; pairs sorted, full
/// closed relation.
Json to_json(const Preorder& P);
/// Accepts "closed": false (closure is taken) or true (closure is verified).
/// Throws ParseError on malformed documents and the relation errors of
/// Preorder on invalid relations.
Preorder preorder_from_json(const Json& j);

/// Preorder document plus the row-major pairing formula and factor sizes.
Json product_to_json(const Preorder& product, std::size_t left_size, std::size_t right_size);

/// Preorder document plus "top".
Json to_json(const PointedPreorder& P);
/// "top" may be omitted; the least-index greatest element is then used.
PointedPreorder pointed_from_json(const Json& j);

Json to_json(const SupportProduct& S);
/// Recovers each factor from the coordinate slice through the tops and
/// checks that their product, supports included, reproduces the file.
SupportProduct support_product_from_json(const Json& j);

/// {"base": preorder, "members": [[...], ...]}
Json to_json(const AntichainFamily& family);
AntichainFamily family_from_json(const Json& j);
/// Members only (a bare list or {"members": ...}) over a known base.
AntichainFamily family_from_json(const Json& j, const Preorder& base);

/// {"base": ..., "family": [[...]], "sets": [[...]], "leq": [[i, j], ...]}
/// with leq over set positions.
Json to_json(const FPoset& fp);
/// Rebuilds from base and family, then checks "sets" and "leq" match.
FPoset fposet_from_json(const Json& j);

/// {"points": n, "opens": [[...], ...]} with opens as sorted index lists in
/// lexicographic order.
Json to_json(const FiniteSpace& X);
FiniteSpace space_from_json(const Json& j);

struct ReportOptions {
  bool timings = false;
};

/// {"verdict": true | false | "exhausted-caps", "k": .., "test_bound": ..,
///  "witness": {...} | null, "stats": {"nodes": .., "complete": .., "millis": ..}}
/// "millis" appears only with timings enabled so that reports stay
/// byte-reproducible by default.
Json to_json(const SpectrumReport& r, const ReportOptions& options = {});
Json to_json(const SpectrumSet& s, const ReportOptions& options = {});

std::vector<std::vector<Index>> sorted_lists(const std::vector<ElementSet>& sets);

/// Reads a whole file; throws ParseError if unreadable or not JSON.
Json read_json_file(const std::string& path);

}  // namespace cellspec::io
