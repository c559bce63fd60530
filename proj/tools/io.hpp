#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tolspace/category.hpp"
#include "tolspace/features.hpp"
#include "tolspace/labeling.hpp"
#include "tolspace/relation.hpp"

namespace tolspace::io {

using json = nlohmann::json;

/// Parse errors are reported as "<source>:<line>:<column>: <message>".
json parse_json(const std::string& text, const std::string& source);
json load_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Sorted keys, two-space indent, doubles rounded to 12 significant digits.
std::string dump(const json& j);
json round_numbers(const json& j);

struct LoadedSpace {
    ToleranceSpace space;
    std::vector<IndexPair> asymmetric_pairs;
};

/// {"points", "weights"?, "relation": {"type": "edges"|"covering"|"contrast", ...}}
LoadedSpace space_from_json(const json& j);
json space_to_json(const ToleranceSpace& space);

Classifier classifier_from_json(const json& j, const ToleranceSpace& space);
json classifier_to_json(const Classifier& r);
WorldModel world_from_json(const json& j, const ToleranceSpace& space);
Attack attack_from_json(const json& j, const ToleranceSpace& space);
json attack_to_json(const Attack& a);

FeatureRepresentation features_from_json(const json& j);
json features_to_json(const FeatureRepresentation& rep);

/// A point given as an id string or a 0-based index.
std::size_t resolve_point(const json& j, const ToleranceSpace& space);
std::size_t resolve_point(const std::string& token, const ToleranceSpace& space);
PointSet point_set_from_json(const json& j, const ToleranceSpace& space);
json ids_json(const ToleranceSpace& space, std::span<const std::size_t> points);
json pairs_json(const ToleranceSpace& space, const std::vector<IndexPair>& pairs);

struct Similarity {
    SimilarityScale scale;
    std::optional<TverskyModel> tversky;
};

/// {"matrix": [[...]]} or {"tversky": {"alpha", "beta", "theta", "salience", "features"}}.
Similarity similarity_from_json(const json& j, const ToleranceSpace& space);

std::vector<double> real_vector(const json& j, const std::string& what);

} // namespace tolspace::io
