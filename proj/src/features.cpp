#include "tolspace/features.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "tolspace/error.hpp"

namespace tolspace {
namespace {

bool intersects(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j) {
            ++i;
        } else {
            ++j;
        }
    }
    return false;
}

void keep_least(std::optional<IndexPair>& best, IndexPair candidate) {
    if (!best || candidate < *best) best = candidate;
}

} // namespace

FeatureRepresentation::FeatureRepresentation(std::vector<std::string> feature_ids,
                                             std::vector<std::vector<std::size_t>> assign)
    : feature_ids_(std::move(feature_ids)), assign_(std::move(assign)) {
    std::unordered_set<std::string> seen;
    for (const auto& id : feature_ids_) {
        if (!seen.insert(id).second) throw ValidationError("duplicate feature id '" + id + "'");
    }
    for (std::size_t x = 0; x < assign_.size(); ++x) {
        auto& f = assign_[x];
        for (std::size_t xi : f) {
            if (xi >= feature_ids_.size()) {
                throw ValidationError("point " + std::to_string(x) + " references feature index " +
                                      std::to_string(xi) + " outside the feature universe");
            }
        }
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
    }
}

std::optional<std::size_t> FeatureRepresentation::feature_index(const std::string& id) const {
    auto it = std::find(feature_ids_.begin(), feature_ids_.end(), id);
    if (it == feature_ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - feature_ids_.begin());
}

std::vector<PointSet> FeatureRepresentation::clusters() const {
    std::vector<PointSet> cl(feature_ids_.size());
    for (std::size_t x = 0; x < assign_.size(); ++x) {
        for (std::size_t xi : assign_[x]) cl[xi].push_back(x);
    }
    return cl;
}

std::size_t FeatureRepresentation::attributed_count() const {
    std::vector<bool> used(feature_ids_.size(), false);
    for (const auto& f : assign_) {
        for (std::size_t xi : f) used[xi] = true;
    }
    return static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
}

void FeatureRepresentation::check_aligned(const ToleranceSpace& space) const {
    if (assign_.size() != space.size()) {
        throw ValidationError("feature representation covers " + std::to_string(assign_.size()) +
                              " points, space has " + std::to_string(space.size()));
    }
}

bool indiscernible(const FeatureRepresentation& rep, std::size_t x, std::size_t y) {
    auto a = rep.features_of(x);
    auto b = rep.features_of(y);
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

PairCheck is_dfr(const FeatureRepresentation& rep, const ToleranceSpace& space) {
    rep.check_aligned(space);
    std::optional<IndexPair> worst;
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (rep.features_of(x).empty()) {
            keep_least(worst, {x, x});
            continue;
        }
        for (std::size_t y : space.neighborhood(x)) {
            if (y > x && !intersects(rep.features_of(x), rep.features_of(y))) {
                keep_least(worst, {x, y});
                break;
            }
        }
    }
    for (const auto& cl : rep.clusters()) {
        bool found = false;
        for (std::size_t i = 0; i < cl.size() && !found; ++i) {
            for (std::size_t j = i + 1; j < cl.size(); ++j) {
                if (!space.related(cl[i], cl[j])) {
                    keep_least(worst, {cl[i], cl[j]});
                    found = true;
                    break;
                }
            }
        }
    }
    return {!worst.has_value(), worst};
}

IndiscriminabilityCheck satisfies_law_of_indiscriminability(const FeatureRepresentation& rep,
                                                            const ToleranceSpace& space,
                                                            bool check_converse) {
    rep.check_aligned(space);
    IndiscriminabilityCheck out;
    std::map<std::vector<std::size_t>, PointSet> groups;
    for (std::size_t x = 0; x < space.size(); ++x) {
        auto f = rep.features_of(x);
        groups[std::vector<std::size_t>(f.begin(), f.end())].push_back(x);
    }
    std::optional<IndexPair> law_witness;
    for (const auto& [features, pts] : groups) {
        bool found = false;
        for (std::size_t i = 0; i < pts.size() && !found; ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (!space.related(pts[i], pts[j])) {
                    keep_least(law_witness, {pts[i], pts[j]});
                    found = true;
                    break;
                }
            }
        }
    }
    out.law = {!law_witness.has_value(), law_witness};
    if (check_converse) {
        PairCheck conv;
        for (const auto& [x, y] : space.edges()) {
            if (!indiscernible(rep, x, y)) {
                conv = {false, IndexPair{x, y}};
                break;
            }
        }
        out.converse = conv;
        if (out.law.holds && conv.holds) {
            const auto tr = is_transitive(space);
            if (!tr.transitive) {
                const auto& w = *tr.witness;
                throw InvariantViolation(
                    "feature representation satisfies both indiscriminability directions but the "
                    "relation is not transitive at (" + space.id(w[0]) + ", " + space.id(w[1]) +
                    ", " + space.id(w[2]) + ")");
            }
            out.transitivity_confirmed = true;
        }
    }
    return out;
}

std::string canonical_tuple(std::span<const std::size_t> points,
                            std::span<const std::string> point_ids) {
    std::string out = "(";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) out += ',';
        out += point_ids[points[i]];
    }
    out += ')';
    return out;
}

FeatureRepresentation clique_dfr(const ToleranceSpace& space) {
    // Lexicographic order of index tuples: (0), (0,1), (0,2), (1), (1,2), ...
    std::vector<std::string> ids;
    std::vector<std::vector<std::size_t>> assign(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (std::size_t y : space.neighborhood(x)) {
            if (y < x) continue;
            const std::size_t f = ids.size();
            if (y == x) {
                const std::size_t single[] = {x};
                ids.push_back(canonical_tuple(single, space.ids()));
                assign[x].push_back(f);
            } else {
                const std::size_t pair[] = {x, y};
                ids.push_back(canonical_tuple(pair, space.ids()));
                assign[x].push_back(f);
                assign[y].push_back(f);
            }
        }
    }
    return FeatureRepresentation(std::move(ids), std::move(assign));
}

SemanticCluster semantic_cluster(const FeatureRepresentation& rep, std::size_t feature) {
    if (feature >= rep.num_features()) {
        throw ValidationError("unknown feature index " + std::to_string(feature));
    }
    SemanticCluster out;
    for (std::size_t x = 0; x < rep.num_points(); ++x) {
        auto f = rep.features_of(x);
        if (std::binary_search(f.begin(), f.end(), feature)) out.points.push_back(x);
    }
    out.hypothetical = out.points.empty();
    return out;
}

SemanticCluster semantic_cluster(const FeatureRepresentation& rep, const std::string& feature_id) {
    const auto idx = rep.feature_index(feature_id);
    if (!idx) throw ValidationError("unknown feature id '" + feature_id + "'");
    return semantic_cluster(rep, *idx);
}

FeatureRepresentation refine(const FeatureRepresentation& rep,
                             std::span<const std::string> point_ids) {
    if (point_ids.size() != rep.num_points()) {
        throw ValidationError("refine: point id list does not match the representation");
    }
    const auto cl = rep.clusters();
    std::map<PointSet, std::size_t> distinct;
    for (const auto& c : cl) {
        if (!c.empty()) distinct.emplace(c, 0);
    }
    std::vector<std::string> ids;
    ids.reserve(distinct.size());
    for (auto& [c, idx] : distinct) {
        idx = ids.size();
        ids.push_back(canonical_tuple(c, point_ids));
    }
    std::vector<std::vector<std::size_t>> assign(rep.num_points());
    for (std::size_t x = 0; x < rep.num_points(); ++x) {
        for (std::size_t xi : rep.features_of(x)) assign[x].push_back(distinct.at(cl[xi]));
    }
    return FeatureRepresentation(std::move(ids), std::move(assign));
}

AdversarialWitness finite_dfr_witness(const FeatureRepresentation& rep,
                                      const ToleranceSpace& space, const Classifier& classifier) {
    classifier.check_aligned(space);
    const auto dfr = is_dfr(rep, space);
    if (!dfr.holds) {
        throw PreconditionError("representation is not discriminative (violating pair " +
                                space.id(dfr.witness->first) + ", " +
                                space.id(dfr.witness->second) + ")");
    }
    if (!classifier.fully_populated()) {
        throw PreconditionError("classifier is not fully populated");
    }
    const std::size_t attributed = rep.attributed_count();
    if (static_cast<std::size_t>(classifier.num_labels()) <= attributed) {
        throw PreconditionError("need more labels than attributed features: m = " +
                                std::to_string(classifier.num_labels()) + ", #features = " +
                                std::to_string(attributed));
    }
    const auto cl = rep.clusters();
    for (std::size_t xi = 0; xi < cl.size(); ++xi) {
        if (cl[xi].empty()) continue;
        const std::size_t x = cl[xi].front();
        for (std::size_t y : cl[xi]) {
            if (classifier.label(y) != classifier.label(x)) return {x, y, xi};
        }
    }
    throw InvariantViolation("no feature is shared across two label groups although m exceeds "
                             "the number of attributed features");
}

ContrastContext pawlak_contrast(const FeatureRepresentation& rep,
                                std::vector<std::string> point_ids) {
    const std::size_t n = rep.num_points();
    if (point_ids.size() != n) throw ValidationError("pawlak_contrast: id count mismatch");
    ContrastContext ctx;
    ctx.point_ids = std::move(point_ids);
    ctx.contrast.assign(n, std::vector<double>(n, 1.0));
    ctx.epsilon.assign(n, 1.0);
    ctx.order = ContrastOrder::less;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (indiscernible(rep, x, y)) ctx.contrast[x][y] = 0.0;
        }
    }
    return ctx;
}

} // namespace tolspace
