#include "tolspace/relation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tolspace/error.hpp"

namespace tolspace {
namespace {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t size) : parent_(size), rank_(size, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        if (rank_[x] < rank_[y]) std::swap(x, y);
        parent_[y] = x;
        if (rank_[x] == rank_[y]) ++rank_[x];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

void sort_unique(PointSet& set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
}

// Symmetrizes a directed reachability list (which must include loops) and
// records the directed pairs that had no reverse.
DerivedSpace symmetrize(std::vector<std::string> ids, std::vector<PointSet> out,
                        std::vector<double> weights) {
    const std::size_t n = out.size();
    for (auto& s : out) sort_unique(s);
    std::vector<IndexPair> asymmetric;
    std::vector<PointSet> sym = out;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y : out[x]) {
            if (!std::binary_search(out[y].begin(), out[y].end(), x)) {
                asymmetric.emplace_back(x, y);
                sym[y].push_back(x);
            }
        }
    }
    for (auto& s : sym) sort_unique(s);
    std::sort(asymmetric.begin(), asymmetric.end());
    return {ToleranceSpace::from_neighborhoods(std::move(ids), std::move(sym), std::move(weights)),
            std::move(asymmetric)};
}

} // namespace

// ---------------------------------------------------------------------------
// ToleranceSpace

ToleranceSpace ToleranceSpace::from_edges(std::vector<std::string> ids,
                                          std::span<const IndexPair> edges,
                                          std::vector<double> weights) {
    const std::size_t n = ids.size();
    std::vector<PointSet> nb(n);
    for (std::size_t x = 0; x < n; ++x) nb[x].push_back(x);
    for (const auto& [x, y] : edges) {
        if (x >= n || y >= n) {
            throw ValidationError("edge [" + std::to_string(x) + "," + std::to_string(y) +
                                  "] references a point outside 0.." + std::to_string(n) + "-1");
        }
        nb[x].push_back(y);
        nb[y].push_back(x);
    }
    for (auto& s : nb) sort_unique(s);
    ToleranceSpace space;
    space.ids_ = std::move(ids);
    space.neighbors_ = std::move(nb);
    space.finish(std::move(weights));
    return space;
}

ToleranceSpace ToleranceSpace::from_neighborhoods(std::vector<std::string> ids,
                                                  std::vector<PointSet> neighborhoods,
                                                  std::vector<double> weights) {
    const std::size_t n = ids.size();
    if (neighborhoods.size() != n) {
        throw ValidationError("neighbourhood list has " + std::to_string(neighborhoods.size()) +
                              " entries for " + std::to_string(n) + " points");
    }
    for (std::size_t x = 0; x < n; ++x) {
        auto& s = neighborhoods[x];
        for (std::size_t y : s) {
            if (y >= n) throw ValidationError("neighbour index " + std::to_string(y) + " out of range");
        }
        s.push_back(x);
        sort_unique(s);
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y : neighborhoods[x]) {
            if (!std::binary_search(neighborhoods[y].begin(), neighborhoods[y].end(), x)) {
                throw ValidationError("relation is not symmetric: " + ids[x] + " ~ " + ids[y] +
                                      " but not the reverse");
            }
        }
    }
    ToleranceSpace space;
    space.ids_ = std::move(ids);
    space.neighbors_ = std::move(neighborhoods);
    space.finish(std::move(weights));
    return space;
}

void ToleranceSpace::finish(std::vector<double> weights) {
    const std::size_t n = ids_.size();
    if (n == 0) throw ValidationError("a tolerance space needs at least one point");
    index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!index_.emplace(ids_[i], i).second) {
            throw ValidationError("duplicate point id '" + ids_[i] + "'");
        }
    }
    if (weights.empty()) weights.assign(n, 1.0);
    if (weights.size() != n) {
        throw ValidationError("got " + std::to_string(weights.size()) + " weights for " +
                              std::to_string(n) + " points");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
            throw ValidationError("weight of '" + ids_[i] + "' must be finite and non-negative");
        }
        total += weights[i];
    }
    if (!(total > 0.0)) throw ValidationError("total weight must be positive");
    weights_ = std::move(weights);
    total_weight_ = total;
}

std::optional<std::size_t> ToleranceSpace::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool ToleranceSpace::related(std::size_t x, std::size_t y) const {
    const auto& s = neighbors_.at(x);
    return std::binary_search(s.begin(), s.end(), y);
}

std::vector<IndexPair> ToleranceSpace::edges() const {
    std::vector<IndexPair> out;
    for (std::size_t x = 0; x < size(); ++x) {
        for (std::size_t y : neighbors_[x]) {
            if (y > x) out.emplace_back(x, y);
        }
    }
    return out;
}

std::size_t ToleranceSpace::edge_count() const {
    std::size_t total = 0;
    for (const auto& s : neighbors_) total += s.size() - 1;
    return total / 2;
}

double ToleranceSpace::measure(std::span<const std::size_t> set) const {
    double sum = 0.0;
    for (std::size_t x : set) sum += weights_.at(x);
    return sum / total_weight_;
}

void ToleranceSpace::check_point(std::size_t x) const {
    if (x >= size()) {
        throw ValidationError("point index " + std::to_string(x) + " out of range (n = " +
                              std::to_string(size()) + ")");
    }
}

// ---------------------------------------------------------------------------
// Coverings and contrast contexts

DerivedSpace relation_from_covering(const Covering& cov, std::vector<double> weights) {
    const std::size_t n = cov.point_ids.size();
    if (cov.sets.size() != n) {
        throw ValidationError("covering has " + std::to_string(cov.sets.size()) + " sets for " +
                              std::to_string(n) + " points");
    }
    std::vector<PointSet> out = cov.sets;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y : out[x]) {
            if (y >= n) throw ValidationError("covering set of point " + std::to_string(x) +
                                              " references index " + std::to_string(y));
        }
        if (std::find(out[x].begin(), out[x].end(), x) == out[x].end()) {
            throw ValidationError("covering set of '" + cov.point_ids[x] + "' does not contain it");
        }
    }
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("negative weight in covering input");
    }
    return symmetrize(cov.point_ids, std::move(out), std::move(weights));
}

Covering canonical_covering(const ToleranceSpace& space) {
    Covering cov;
    cov.point_ids = space.ids();
    cov.sets.reserve(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        auto nb = space.neighborhood(x);
        cov.sets.emplace_back(nb.begin(), nb.end());
    }
    return cov;
}

TransitivityResult is_transitive(const ToleranceSpace& space) {
    for (std::size_t x = 0; x < space.size(); ++x) {
        auto dx = space.neighborhood(x);
        for (std::size_t y : dx) {
            if (y == x) continue;
            for (std::size_t z : space.neighborhood(y)) {
                if (!std::binary_search(dx.begin(), dx.end(), z)) {
                    return {false, std::array<std::size_t, 3>{x, y, z}};
                }
            }
        }
    }
    return {};
}

bool ContrastContext::admits(std::size_t x, std::size_t y) const {
    const double c = contrast[x][y];
    return order == ContrastOrder::less ? c < epsilon[x] : c <= epsilon[x];
}

DerivedSpace relation_from_contrast(const ContrastContext& ctx, std::vector<double> weights) {
    const std::size_t n = ctx.point_ids.size();
    if (ctx.contrast.size() != n || ctx.epsilon.size() != n) {
        throw ValidationError("contrast context dimensions do not match the point count");
    }
    std::vector<PointSet> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (ctx.contrast[x].size() != n) {
            throw ValidationError("contrast row " + std::to_string(x) + " has wrong length");
        }
        if (!ctx.admits(x, x)) {
            throw ValidationError("contrast context is not reflexive at '" + ctx.point_ids[x] +
                                  "': c(x,x) does not satisfy the threshold");
        }
        for (std::size_t y = 0; y < n; ++y) {
            if (ctx.admits(x, y)) out[x].push_back(y);
        }
    }
    return symmetrize(ctx.point_ids, std::move(out), std::move(weights));
}

ContrastContext indicator_contrast(const ToleranceSpace& space) {
    const std::size_t n = space.size();
    ContrastContext ctx;
    ctx.point_ids = space.ids();
    ctx.contrast.assign(n, std::vector<double>(n, 1.0));
    ctx.epsilon.assign(n, 1.0);
    ctx.order = ContrastOrder::less;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y : space.neighborhood(x)) ctx.contrast[x][y] = 0.0;
    }
    return ctx;
}

ContrastContext weber_contrast(std::span<const double> points, double k) {
    if (!(k > 0.0)) throw ValidationError("Weber constant k must be positive");
    for (double p : points) {
        if (!(p > 0.0)) throw ValidationError("Weber contrast needs positive magnitudes");
    }
    const std::size_t n = points.size();
    ContrastContext ctx;
    ctx.point_ids = default_point_ids(n);
    ctx.contrast.assign(n, std::vector<double>(n, 0.0));
    ctx.epsilon.assign(n, k);
    ctx.order = ContrastOrder::less;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = points[i];
            const double y = points[j];
            ctx.contrast[i][j] = x <= y ? (y - x) / x : (x - y) / y;
        }
    }
    return ctx;
}

Covering weber_interval_covering(std::span<const double> points, double a, double b, double w) {
    if (!(a > 0.0) || !(a <= b)) throw ValidationError("Weber interval needs 0 < a <= b");
    if (!(w > 1.0)) throw ValidationError("Weber factor w must exceed 1");
    const std::size_t n = points.size();
    Covering cov;
    cov.point_ids = default_point_ids(n);
    cov.sets.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = points[i];
        if (x < a || x > b) throw ValidationError("sample point outside [a, b]");
        // Clipping at a and b reproduces the three boundary branches.
        for (std::size_t j = 0; j < n; ++j) {
            const double y = points[j];
            if (i == j || (y > x / w && y < x * w)) cov.sets[i].push_back(j);
        }
    }
    return cov;
}

// ---------------------------------------------------------------------------
// Closure

ElementaryPartition transitive_closure(const ToleranceSpace& space) {
    const std::size_t n = space.size();
    DisjointSet dsu(n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y : space.neighborhood(x)) {
            if (y > x) dsu.unite(x, y);
        }
    }
    ElementaryPartition part;
    part.class_index.assign(n, 0);
    std::vector<std::size_t> root_class(n, n);
    // Scanning points in index order numbers classes by their least member.
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t r = dsu.find(x);
        if (root_class[r] == n) {
            root_class[r] = part.classes.size();
            part.classes.emplace_back();
        }
        part.class_index[x] = root_class[r];
        part.classes[root_class[r]].push_back(x);
    }
    return part;
}

bool is_optimal(const ToleranceSpace& space) {
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (space.neighborhood(x).size() != 1) return false;
    }
    return true;
}

std::vector<std::string> default_point_ids(std::size_t n, std::string_view prefix) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::string(prefix) + std::to_string(i));
    return ids;
}

} // namespace tolspace
