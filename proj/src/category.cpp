#include "tolspace/category.hpp"

#include <algorithm>
#include <cmath>

#include "tolspace/error.hpp"
#include "tolspace/metric.hpp"

namespace tolspace {

namespace {

PointSet normalize_set(const ToleranceSpace& space, std::span<const std::size_t> D) {
    if (D.empty()) throw ValidationError("point set D must be non-empty");
    PointSet out(D.begin(), D.end());
    for (std::size_t x : out) space.check_point(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double raw_measure(const ToleranceSpace& space, const PointSet& set) {
    return space.measure(set);
}

std::vector<double> affinities(const ToleranceSpace& space, const SimilarityScale& s,
                               const PointSet& D) {
    std::vector<double> out;
    out.reserve(D.size());
    for (std::size_t x : D) out.push_back(affinity(space, s, x, D));
    return out;
}

bool near(double a, double b) {
    return std::abs(a - b) <= kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

double sum_salience(const std::vector<double>& salience, std::span<const std::size_t> features) {
    double s = 0.0;
    for (std::size_t f : features) s += salience[f];
    return s;
}

// Weights of Phi_x & Phi_y, Phi_x \ Phi_y, Phi_y \ Phi_x.
struct Overlap {
    double common = 0.0;
    double only_x = 0.0;
    double only_y = 0.0;
};

Overlap overlap(const TverskyModel& m, std::size_t x, std::size_t y) {
    auto fx = m.rep().features_of(x);
    auto fy = m.rep().features_of(y);
    Overlap o;
    std::size_t i = 0, j = 0;
    while (i < fx.size() || j < fy.size()) {
        if (j == fy.size() || (i < fx.size() && fx[i] < fy[j])) {
            o.only_x += m.salience()[fx[i++]];
        } else if (i == fx.size() || fy[j] < fx[i]) {
            o.only_y += m.salience()[fy[j++]];
        } else {
            o.common += m.salience()[fx[i]];
            ++i;
            ++j;
        }
    }
    return o;
}

} // namespace

SimilarityScale::SimilarityScale(std::vector<std::vector<double>> matrix) : s_(std::move(matrix)) {
    const std::size_t n = s_.size();
    for (std::size_t x = 0; x < n; ++x) {
        if (s_[x].size() != n) throw ValidationError("similarity matrix must be square");
        for (std::size_t y = 0; y < n; ++y) {
            if (!std::isfinite(s_[x][y])) throw ValidationError("similarity values must be finite");
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (s_[x][y] > s_[x][x]) {
                throw ValidationError("similarity scale requires s(x,x) >= s(x,y); fails at (" +
                                      std::to_string(x) + ", " + std::to_string(y) + ")");
            }
        }
    }
}

void SimilarityScale::check_aligned(const ToleranceSpace& space) const {
    if (size() != space.size()) {
        throw ValidationError("similarity matrix has " + std::to_string(size()) + " rows for " +
                              std::to_string(space.size()) + " points");
    }
}

TverskyModel::TverskyModel(double alpha, double beta, double theta, std::vector<double> salience,
                           FeatureRepresentation rep)
    : alpha_(alpha), beta_(beta), theta_(theta), salience_(std::move(salience)),
      rep_(std::move(rep)) {
    for (double c : {alpha_, beta_, theta_}) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw ValidationError("Tversky constants alpha, beta, theta must be finite and >= 0");
        }
    }
    if (salience_.size() != rep_.num_features()) {
        throw ValidationError("salience needs one weight per feature");
    }
    for (double v : salience_) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ValidationError("feature salience must be finite and >= 0");
        }
    }
}

double TverskyModel::point_salience(std::size_t x) const {
    return sum_salience(salience_, rep_.features_of(x));
}

double TverskyModel::similarity(std::size_t x, std::size_t y) const {
    const Overlap o = overlap(*this, x, y);
    return theta_ * o.common - alpha_ * o.only_x - beta_ * o.only_y;
}

SimilarityScale TverskyModel::scale() const {
    const std::size_t n = rep_.num_points();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) m[x][y] = similarity(x, y);
    }
    return SimilarityScale(std::move(m));
}

double affinity(const ToleranceSpace& space, const SimilarityScale& s, std::size_t x,
                std::span<const std::size_t> D) {
    s.check_aligned(space);
    space.check_point(x);
    const PointSet set = normalize_set(space, D);
    double acc = 0.0;
    for (std::size_t y : set) acc += space.weights()[y] * s(x, y);
    return acc / space.total_weight();
}

PointSet prototypes(const ToleranceSpace& space, const SimilarityScale& s,
                    std::span<const std::size_t> D) {
    const PointSet set = normalize_set(space, D);
    const auto p = affinities(space, s, set);
    const double best = *std::max_element(p.begin(), p.end());
    PointSet out;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (near(p[i], best)) out.push_back(set[i]);
    }
    return out;
}

PointSet fringe(const ToleranceSpace& space, const SimilarityScale& s,
                std::span<const std::size_t> D) {
    const PointSet set = normalize_set(space, D);
    const auto p = affinities(space, s, set);
    const double worst = *std::min_element(p.begin(), p.end());
    PointSet out;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (near(p[i], worst)) out.push_back(set[i]);
    }
    return out;
}

PointSet m_core(const ToleranceSpace& space, const SimilarityScale& s,
                std::span<const std::size_t> D, double M) {
    const PointSet set = normalize_set(space, D);
    const auto p = affinities(space, s, set);
    PointSet out;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (p[i] >= M) out.push_back(set[i]);
    }
    return out;
}

PointSet tau_fringe(const ToleranceSpace& space, const SimilarityScale& s,
                    std::span<const std::size_t> D, double tau) {
    const PointSet set = normalize_set(space, D);
    const auto p = affinities(space, s, set);
    PointSet out;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (p[i] <= tau) out.push_back(set[i]);
    }
    return out;
}

AffinityBounds affinity_bounds(const ToleranceSpace& space, const SimilarityScale& s,
                               std::span<const std::size_t> D) {
    s.check_aligned(space);
    const PointSet set = normalize_set(space, D);
    double lo = s(set[0], set[0]);
    double hi = lo;
    for (std::size_t x : set) {
        for (std::size_t y : set) {
            lo = std::min(lo, s(x, y));
            hi = std::max(hi, s(x, y));
        }
    }
    const double m = raw_measure(space, set);
    return {m * lo, m * hi};
}

double tversky_similarity(const TverskyModel& model, std::size_t x, std::size_t y) {
    if (x >= model.rep().num_points() || y >= model.rep().num_points()) {
        throw ValidationError("point index out of range");
    }
    return model.similarity(x, y);
}

std::optional<std::size_t> split_class(const ToleranceSpace& space, std::span<const std::size_t> D) {
    const PointSet set = normalize_set(space, D);
    const auto part = transitive_closure(space);
    std::vector<bool> in(space.size(), false);
    for (std::size_t x : set) in[x] = true;
    for (std::size_t x : set) {
        for (std::size_t y : part.class_of(x)) {
            if (!in[y]) return part.class_index[x];
        }
    }
    return std::nullopt;
}

std::optional<std::string> tversky_hypothesis_failure(const TverskyModel& model,
                                                      const ToleranceSpace& space,
                                                      std::size_t x,
                                                      std::span<const std::size_t> D) {
    model.rep().check_aligned(space);
    space.check_point(x);
    const PointSet set = normalize_set(space, D);
    if (!std::binary_search(set.begin(), set.end(), x)) {
        return "point '" + space.id(x) + "' is not in D";
    }
    if (auto c = split_class(space, set)) {
        return "D is not a union of elementary classes: class " + std::to_string(*c) + " is split";
    }
    const auto part = transitive_closure(space);
    const auto clusters = model.rep().clusters();
    for (std::size_t f = 0; f < clusters.size(); ++f) {
        const auto& cl = clusters[f];
        for (std::size_t y : cl) {
            if (!part.same_class(y, cl.front())) {
                return "feature '" + model.rep().feature_ids()[f] +
                       "' is shared by non-metamorphic points '" + space.id(cl.front()) +
                       "' and '" + space.id(y) + "'";
            }
        }
    }
    for (const auto& cls : part.classes) {
        for (std::size_t y : cls) {
            for (std::size_t z : cls) {
                const Overlap o = overlap(model, y, z);
                if (!near(o.common, o.common + o.only_x)) {
                    return "metamorphic points '" + space.id(y) + "' and '" + space.id(z) +
                           "' do not share the full salience of '" + space.id(y) + "'";
                }
            }
        }
    }
    return std::nullopt;
}

double tversky_affinity_closed_form(const TverskyModel& model, const ToleranceSpace& space,
                                    std::size_t x, std::span<const std::size_t> D) {
    if (auto why = tversky_hypothesis_failure(model, space, x, D)) {
        throw PreconditionError("closed-form affinity hypothesis fails: " + *why);
    }
    const PointSet set = normalize_set(space, D);
    const auto part = transitive_closure(space);
    const double mu_class = space.measure(part.class_of(x));
    const double mu_d = space.measure(set);
    const double fx = model.point_salience(x);
    const double a = model.alpha(), b = model.beta(), t = model.theta();
    return (a + b + t) * mu_class * fx - a * mu_d * fx - b * importance(model, space, set);
}

namespace {

struct RegularSet {
    PointSet set;
    std::vector<double> class_mass; // indexed by class
    double mass;
    ElementaryPartition part;
};

RegularSet regular_set(const ToleranceSpace& space, std::span<const std::size_t> D) {
    RegularSet r;
    r.set = normalize_set(space, D);
    if (auto c = split_class(space, r.set)) {
        throw PreconditionError("D is not perceptually regular: elementary class " +
                                std::to_string(*c) + " is split");
    }
    r.mass = space.measure(r.set);
    if (!(r.mass > 0.0)) throw PreconditionError("D has zero measure");
    r.part = transitive_closure(space);
    r.class_mass.resize(r.part.count());
    for (std::size_t c = 0; c < r.part.count(); ++c) r.class_mass[c] = space.measure(r.part.classes[c]);
    return r;
}

} // namespace

double structural_entropy(const ToleranceSpace& space, std::span<const std::size_t> D) {
    const RegularSet r = regular_set(space, D);
    double h = 0.0;
    for (std::size_t y : r.set) {
        const double p = space.probability(y);
        if (p > 0.0) h -= p * std::log2(r.class_mass[r.part.class_index[y]] / r.mass);
    }
    return h / r.mass;
}

double index_of_coincidence(const ToleranceSpace& space, std::span<const std::size_t> D) {
    const RegularSet r = regular_set(space, D);
    double ic = 0.0;
    for (std::size_t y : r.set) ic += space.probability(y) * r.class_mass[r.part.class_index[y]];
    return ic / (r.mass * r.mass);
}

double importance(const TverskyModel& model, const ToleranceSpace& space,
                  std::span<const std::size_t> D) {
    model.rep().check_aligned(space);
    const PointSet set = normalize_set(space, D);
    double acc = 0.0;
    for (std::size_t y : set) acc += space.weights()[y] * model.point_salience(y);
    return acc / space.total_weight();
}

double expected_affinity(const ToleranceSpace& space, const SimilarityScale& s,
                         std::span<const std::size_t> D) {
    const PointSet set = normalize_set(space, D);
    const double m = space.measure(set);
    if (!(m > 0.0)) throw PreconditionError("D has zero measure");
    double acc = 0.0;
    for (std::size_t x : set) acc += space.probability(x) * affinity(space, s, x, set);
    return acc / m;
}

bool salience_regularity_check(const TverskyModel& model, const ToleranceSpace& space) {
    model.rep().check_aligned(space);
    std::vector<double> f(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) f[x] = model.point_salience(x);
    const PerceptualFunction pf(f);
    if (!is_perceptually_regular(space, pf)) return false;
    const auto part = transitive_closure(space);
    for (const auto& cls : part.classes) {
        if (!(space.measure(cls) > 0.0)) return true;
    }
    const auto lap = laplacian_sigma(space, pf);
    double scale = 1.0;
    for (double v : f) scale = std::max(scale, std::abs(v));
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (std::abs(lap[x]) > 1e-12 * scale) {
            throw InvariantViolation("regular salience not annihilated by the chain Laplacian at '" +
                                     space.id(x) + "'");
        }
    }
    return true;
}

} // namespace tolspace
