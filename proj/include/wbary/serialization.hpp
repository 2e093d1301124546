#pragma once

#include <string>

#include "json.hpp"
#include "wbary/symmetry.hpp"

namespace wbary {

using Json = nlohmann::json;

Json to_json(const Space& space);
Space space_from_json(const Json& j);

Json to_json(const Point& p);
Point point_from_json(const Space& space, const Json& j);

Json to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const Json& j);

Json to_json(const MeasureEnsemble& ensemble);
MeasureEnsemble ensemble_from_json(const Json& j);

Json to_json(const Isometry& g);
Isometry isometry_from_json(const Space& space, const Json& j);

Json group_to_json(const IsometryGroup& group);
IsometryGroup group_from_json(const Json& j);

Json to_json(const Coupling& c);

Json to_json(const BarycenterResult& r);
Json to_json(const EnsembleBarycenterResult& r);
Json to_json(const JensenReport& r);
Json to_json(const SandwichReport& r);

Json to_json(const MeasurePath& path);
std::string path_to_csv(const MeasurePath& path);
std::string history_to_csv(const std::vector<double>& history);

// Shorthand space descriptors accepted by the CLI: "r2", "h2",
// "sphere:<circumference>[:dim]", "cylinder:<circumference>",
// "balloon:<circumference>:<string length>".
Space space_from_shorthand(const std::string& text);

}  // namespace wbary
