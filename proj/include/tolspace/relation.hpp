#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tolspace {

using PointSet = std::vector<std::size_t>;
using IndexPair = std::pair<std::size_t, std::size_t>;

/// Finite weighted point set with a reflexive, symmetric indiscriminability
/// relation.  Neighbourhoods D(x) are stored as sorted index lists that always
/// contain x itself.  Weights are kept raw; `probability` normalizes on demand.
class ToleranceSpace {
public:
    /// Builds from an undirected edge list.  Loops are implied, duplicate and
    /// reversed edges are merged.  Empty `weights` means uniform.
    static ToleranceSpace from_edges(std::vector<std::string> ids,
                                     std::span<const IndexPair> edges,
                                     std::vector<double> weights = {});

    /// Builds from per-point neighbour lists, which must already be symmetric.
    static ToleranceSpace from_neighborhoods(std::vector<std::string> ids,
                                             std::vector<PointSet> neighborhoods,
                                             std::vector<double> weights = {});

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(std::size_t x) const { return ids_.at(x); }
    std::optional<std::size_t> index_of(std::string_view id) const;

    /// D(x), sorted, containing x.
    std::span<const std::size_t> neighborhood(std::size_t x) const { return neighbors_.at(x); }
    bool related(std::size_t x, std::size_t y) const;

    /// Unordered pairs {x, y}, x < y, with x related to y.
    std::vector<IndexPair> edges() const;
    std::size_t edge_count() const;

    std::span<const double> weights() const { return weights_; }
    double total_weight() const { return total_weight_; }
    double probability(std::size_t x) const { return weights_.at(x) / total_weight_; }
    /// Normalized measure of an index set.
    double measure(std::span<const std::size_t> set) const;
    double neighborhood_measure(std::size_t x) const { return measure(neighborhood(x)); }

    void check_point(std::size_t x) const;

private:
    ToleranceSpace() = default;
    void finish(std::vector<double> weights);

    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<PointSet> neighbors_;
    std::vector<double> weights_;
    double total_weight_ = 0.0;
};

/// A covering {g(x)} with x in g(x).
struct Covering {
    std::vector<std::string> point_ids;
    std::vector<PointSet> sets;
};

/// Ordering used to compare a contrast value against its threshold.
enum class ContrastOrder {
    less_equal, ///< related iff c(x,y) <= eps(x)
    less,       ///< related iff c(x,y) <  eps(x)
};

/// Contrast context (c, eps): a real contrast matrix and a per-point threshold.
struct ContrastContext {
    std::vector<std::string> point_ids;
    std::vector<std::vector<double>> contrast;
    std::vector<double> epsilon;
    ContrastOrder order = ContrastOrder::less_equal;

    bool admits(std::size_t x, std::size_t y) const;
};

/// A relation derived from a possibly asymmetric source together with the
/// ordered pairs (x, y) where x reached y but y did not reach x.
struct DerivedSpace {
    ToleranceSpace space;
    std::vector<IndexPair> asymmetric_pairs;
};

/// Quotient of the point set by the transitive closure of the relation.
struct ElementaryPartition {
    std::vector<std::size_t> class_index;
    std::vector<PointSet> classes;

    std::size_t count() const { return classes.size(); }
    const PointSet& class_of(std::size_t x) const { return classes.at(class_index.at(x)); }
    bool same_class(std::size_t x, std::size_t y) const {
        return class_index.at(x) == class_index.at(y);
    }
};

struct TransitivityResult {
    bool transitive = true;
    /// x~y, y~z but not x~z.
    std::optional<std::array<std::size_t, 3>> witness;
};

DerivedSpace relation_from_covering(const Covering& cov, std::vector<double> weights = {});
/// The canonical covering {D(x)} of a space.
Covering canonical_covering(const ToleranceSpace& space);

TransitivityResult is_transitive(const ToleranceSpace& space);

DerivedSpace relation_from_contrast(const ContrastContext& ctx, std::vector<double> weights = {});
/// c = 0 on related pairs and 1 otherwise, eps = 1, strict order.
ContrastContext indicator_contrast(const ToleranceSpace& space);
/// c(x,y) = (y-x)/x for x <= y, (x-y)/y otherwise; eps = k; strict order so that
/// the relation is exactly y in (x/w, xw) with w = 1 + k.
ContrastContext weber_contrast(std::span<const double> points, double k);

/// Weber neighbourhoods on sample points of [a, b]:
/// D(x) = (x/w, xw) clipped to [a, b].
Covering weber_interval_covering(std::span<const double> points, double a, double b, double w);

ElementaryPartition transitive_closure(const ToleranceSpace& space);
bool is_optimal(const ToleranceSpace& space);

/// Ids "x0", "x1", ... used by generators that have no natural names.
std::vector<std::string> default_point_ids(std::size_t n, std::string_view prefix = "x");

} // namespace tolspace
