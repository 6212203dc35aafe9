#pragma once

// JSON forms of matrices, subspaces, graphs, apartments, families, mixed
// configurations, subspace maps and J-subset witnesses. Readers throw
// FormatError naming the offending field.

#include <json.hpp>
#include <memory>
#include <string>

#include "grassmann/apartments.hpp"
#include "grassmann/embeddings.hpp"
#include "grassmann/errors.hpp"
#include "grassmann/graphs.hpp"
#include "grassmann/subspaces.hpp"

namespace grassmann::io {

using nlohmann::json;

/// {"p":2,"rows":["1100","0010"]}
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& where = "matrix");

/// {"p":2,"n":4,"rows":[...]}, rows in canonical form. Non-canonical rows are
/// rejected unless normalize is set.
json to_json(const Subspace& s);
Subspace subspace_from_json(const json& j, const std::string& where = "subspace", bool normalize = false);

/// {"kind":"grassmann","p","n","k","vertices":[...],"edges":[[i,j],...]}
json graph_json(const GrassmannGraph& g);
/// {"kind":"johnson","n","k","vertices":[[1,2],...],"edges":[...]}
json graph_json(const JohnsonGraph& g);

/// {"frame":[point...],"k":2}; each point is a one-dimensional subspace.
json to_json(const Apartment& a);
Apartment apartment_from_json(const json& j, const std::string& where = "apartment", bool normalize = false);

/// {"p","ambient","n","k","dual","generators":[digits...],
///  "members":[{"index":[1,2],"subspace":{...}},...]}
json to_json(const IndexedFamily& f);
/// Reads the index table; generators are optional. Members must be listed
/// for every k-subset of {1..n} exactly once.
IndexedFamily family_from_json(const json& j, const std::string& where = "family", bool normalize = false);

/// {"p","k","x":[digits...],"y":[digits...],"hyperplanes":[subspace...]}
json to_json(const MixedConfig& c);
MixedConfig config_from_json(const json& j, const std::string& where = "config", bool normalize = false);

/// {"source":{"p","n","k"},"target":{"n","k"},"table":[[id, subspace],...]}
json to_json(const SubspaceMap& f);
SubspaceMap map_from_json(const json& j, const std::string& where = "map", bool normalize = false);

json to_json(const JSubsetWitness& w);

/// Parses a whole file; syntax errors become FormatError with the line.
json read_json_file(const std::string& path);

}  // namespace grassmann::io
