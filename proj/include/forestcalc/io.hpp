#pragma once

#include "forestcalc/category.hpp"
#include "forestcalc/homology.hpp"
#include "forestcalc/layers.hpp"
#include "forestcalc/partition.hpp"
#include "forestcalc/simplicial.hpp"
#include "forestcalc/verify.hpp"

#include <json.hpp>

#include <string>

namespace forestcalc {

/// Keys keep insertion order so emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become ValidationError with line and column.
Json parse_json(const std::string& text, const std::string& source = "input");

/// {"support": m, "blocks": [[...], ...]}
Json to_json(const Partition& p);
Partition partition_from_json(const Json& j, const std::string& where = "partition");

/// "Z", "Q", or "F3" / "F_3" for a prime field.
Coefficients parse_coefficients(const std::string& text);

/// [{"degree": k, "rank": r, "torsion": [...]}] with zero groups omitted.
Json to_json(const HomologyResult& h);

/// Either {"vertices": v, "facets": [[...], ...]} (an ordered simplicial
/// complex) or {"cells": [v, [faces of 1-cells], [faces of 2-cells], ...]}
/// where a face is a cell index or {"cell": c, "sigma": [...]}. Both accept an
/// optional "basepoint". The result is validated.
SimplicialSet simplicial_set_from_json(const Json& j, const std::string& where = "model");
/// Cells form.
Json to_json(const SimplicialSet& x);

/// "point", "points:k", "circle", "interval", "wedge:k".
SimplicialSet builtin_model(const std::string& name);

/// {"vertices", "facets", "cover": [[facets], ...], "corners": [{"mask", "facets"}]}:
/// a cover of a facet-form complex, with optional corner replacements.
Cube cube_from_json(const Json& j);

Json to_json(const CategoryTable& table, bool with_maps);
Json to_json(const CheckOutcome& c);
Json to_json(const ReconstructionCheck& c);
Json to_json(const LayerReport& r);

} // namespace forestcalc
