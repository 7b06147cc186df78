#pragma once

#include <string>

#include "json.hpp"

#include "condan/analysis.hpp"

namespace condan::io {

using nlohmann::json;
using nlohmann::ordered_json;

json to_json(const Cond& c);                       // sorted atom array
Cond cond_from_json(const json& j, int atoms);

json to_json(const Partition& p);                  // {"owner": [...], "blocks": [[...]]}
Partition partition_from_json(const json& j, int atoms);

json to_json(const CondReal& v);                   // {"on": [...], "values": {"t": x}}
CondReal cond_real_from_json(const json& j, int atoms);

json to_json(const CondNat& v);
CondNat cond_nat_from_json(const json& j, int atoms);

json to_json(const CondVector& v);                 // values are arrays per atom
CondVector cond_vector_from_json(const json& j, int atoms);

json to_json(const StableSet<double>& s);          // {"on": [...], "per_atom": {"t": [..]}}
StableSet<double> stable_set_from_json(const json& j, int atoms);

json body_to_json(const SymmetricBody& b);         // per-atom [{"u": [...], "c": r}]
SymmetricBody body_from_json(const json& j, int atoms);

const char* norm_kind_name(NormKind k);
NormKind norm_kind_from_name(const std::string& s);

json map_to_json(const CondLinearMap& t);          // per-atom [[row],...] plus norm kinds
CondLinearMap map_from_json(const json& j, int atoms);

json closed_set_to_json(const ClosedSet& s);       // {"kind": ...} tagged pieces
ClosedSet closed_set_from_json(const json& j, int atoms);

// {"kind": "table", "terms": [...]} or {"kind": "formula", "name": ...}.
CondSequence sequence_from_json(const json& j, int atoms);

// Envelope {"type": ..., "atoms": m, ...} used by the describe command.
std::string describe_document(const json& doc);

}  // namespace condan::io
