#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tolspace/labeling.hpp"
#include "tolspace/relation.hpp"

namespace tolspace {

/// Per-point finite feature sets Phi_x over a feature universe Phi.
/// Each assignment is stored as a sorted list of feature indices.
class FeatureRepresentation {
public:
    FeatureRepresentation(std::vector<std::string> feature_ids,
                          std::vector<std::vector<std::size_t>> assign);

    std::size_t num_points() const { return assign_.size(); }
    std::size_t num_features() const { return feature_ids_.size(); }
    const std::vector<std::string>& feature_ids() const { return feature_ids_; }
    std::optional<std::size_t> feature_index(const std::string& id) const;
    std::span<const std::size_t> features_of(std::size_t x) const { return assign_.at(x); }
    const std::vector<std::vector<std::size_t>>& assignments() const { return assign_; }

    /// cl(xi) for every feature, indexed by feature.
    std::vector<PointSet> clusters() const;
    std::size_t attributed_count() const;

    void check_aligned(const ToleranceSpace& space) const;

private:
    std::vector<std::string> feature_ids_;
    std::vector<std::vector<std::size_t>> assign_;
};

bool indiscernible(const FeatureRepresentation& rep, std::size_t x, std::size_t y);

struct PairCheck {
    bool holds = true;
    std::optional<IndexPair> witness;
};

/// Feature sharing coincides with the relation (loops included: every point
/// needs a feature).  The witness is the lexicographically least violating pair.
PairCheck is_dfr(const FeatureRepresentation& rep, const ToleranceSpace& space);

struct IndiscriminabilityCheck {
    PairCheck law;                      ///< Phi_x = Phi_y  =>  x ~ y
    std::optional<PairCheck> converse;  ///< x ~ y  =>  Phi_x = Phi_y (when requested)
    /// Set when both directions hold; the relation was then verified transitive.
    bool transitivity_confirmed = false;
};

/// Throws InvariantViolation if both directions hold on a non-transitive relation.
IndiscriminabilityCheck satisfies_law_of_indiscriminability(const FeatureRepresentation& rep,
                                                            const ToleranceSpace& space,
                                                            bool check_converse = false);

/// Singletons {x} and edges {x, y}; ids are canonical tuples "(a,b)" of point ids.
FeatureRepresentation clique_dfr(const ToleranceSpace& space);

struct SemanticCluster {
    PointSet points;
    bool hypothetical = false;
};

SemanticCluster semantic_cluster(const FeatureRepresentation& rep, std::size_t feature);
SemanticCluster semantic_cluster(const FeatureRepresentation& rep, const std::string& feature_id);

/// Replaces features by their distinct non-empty clusters, dropping hypothetical
/// features and merging synonyms.  New ids are canonical tuples of point ids.
FeatureRepresentation refine(const FeatureRepresentation& rep,
                             std::span<const std::string> point_ids);

struct AdversarialWitness {
    std::size_t x;
    std::size_t y;
    std::size_t feature;
};

/// For a DFR with fewer attributed features than labels of a fully populated
/// classifier, finds related points with different labels through a shared
/// feature.
AdversarialWitness finite_dfr_witness(const FeatureRepresentation& rep,
                                      const ToleranceSpace& space, const Classifier& classifier);

/// Pawlak contrast: c = 0 iff Phi_x = Phi_y, else 1; eps = 1, strict order.
ContrastContext pawlak_contrast(const FeatureRepresentation& rep,
                                std::vector<std::string> point_ids);

/// Canonical tuple id "(a,b,...)" of a point set.
std::string canonical_tuple(std::span<const std::size_t> points,
                            std::span<const std::string> point_ids);

} // namespace tolspace
