#pragma once

#include <string>

#include "json.hpp"
#include "tambara/decompose.hpp"
#include "tambara/functor.hpp"

namespace tambara {

using Json = nlohmann::json;

constexpr int kSchemaVersion = 1;

/// {"table": rows} | {"permutations": gens} | {"cyclic": n} | {"dihedral": n}
/// | {"symmetric": n} | {"klein": true} | {"product": [a, b]}
GroupPtr parse_group(const Json& j);
Json group_to_json(const FiniteGroup& g);

/// "e", "G", or the canonical index as a number or string.
SubgroupId parse_subgroup(const FiniteGroup& g, const Json& j);
std::string subgroup_key(const FiniteGroup& g, SubgroupId h);

/// {"kind": "tables", "add", "mul"} | {"kind": "Zn", "n"} | {"kind": "Fq", "q"}
/// | {"kind": "product", "factors": [...]}
RingPtr parse_ring(const Json& j);
Json ring_to_json(const FiniteRing& r);

/// A ring block plus "action": one row per group element, "trivial" or
/// "galois"; or {"coind": {"from": H, "gring": block}}.
GRing parse_gring(const Json& j, const GroupPtr& group);

/// A functor block over `group`.  Explicit form: "levels", "res", "tr",
/// "nm", "conj", "green_only"; missing edges and conjugations are derived
/// by composition.  Shorthands: "fp", "burnside", "coind", "product",
/// "restrict", "green_counterexample", "zero".
FunctorPtr parse_functor(const Json& j, const GroupPtr& group);
/// Reads a whole definition: "schema", "group" and a functor block.
FunctorPtr parse_definition(const Json& j);
FunctorPtr load_definition(const std::string& path);

/// Explicit form; with_group adds "schema" and "group".
Json functor_to_json(const TambaraData& t, bool with_group = true);
Json maps_to_json(const FiniteGroup& g, const std::vector<std::vector<int>>& maps);
Json decomposition_to_json(const DecompositionResult& d);

/// Pretty printed with sorted keys and a trailing newline.
std::string dump(const Json& j);

}  // namespace tambara
