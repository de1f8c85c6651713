#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "siclab/fiducials.hpp"
#include "siclab/galois.hpp"
#include "siclab/momentmap.hpp"
#include "siclab/overlap.hpp"
#include "siclab/quadfield.hpp"

namespace siclab {

using Json = nlohmann::json;

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);

/// [[re, im], ...]
Json vector_to_json(const CVector& v);
/// Accepts [[re, im], ...], plain reals, or an object with a "vector" field.
CVector vector_from_json(const Json& j);

/// {"d", "dbar", "values": [[re, im], ...]} row-major over p1 then p2.
Json to_json(const OverlapTable& table);
OverlapTable overlap_table_from_json(const Json& j);

/// {"d", "vector", "source", "residual"} plus optional "t", "seed", "loss".
Json to_json(const FiducialRecord& rec);
FiducialRecord fiducial_from_json(const Json& j);

/// Missing file reads as an empty catalog.
std::vector<FiducialRecord> read_catalog(const std::string& path);
/// Rewrites the catalog with rec appended. Serialized within the process.
void append_to_catalog(const std::string& path, const FiducialRecord& rec);

/// Catalog path: explicit flag, else SICLAB_CATALOG, else ./fiducials.json.
std::string resolve_catalog_path(const std::string& flag_value);

Json fieldinfo_json(int d);
Json to_json(const OrbitReport& report);
Json to_json(const CorrespondenceReport& report);
Json to_json(const RayClassOrders& orders);

}  // namespace siclab
