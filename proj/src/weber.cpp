#include "tolspace/weber.hpp"

#include <algorithm>
#include <cmath>

#include "tolspace/error.hpp"
#include "tolspace/special.hpp"

namespace tolspace {

namespace {

// 2/sqrt(pi) e^{-t^2} mass of [u, v], 0 <= u <= v.
double half_gaussian_mass(double u, double v) {
    if (u >= 1.0) return special::erfc(u) - special::erfc(v);
    return special::erf(v) - special::erf(u);
}

void check_weber_factor(double w) {
    if (!(w > 1.0) || !std::isfinite(w)) throw ValidationError("Weber factor w must exceed 1");
}

void check_ratio(double ratio, double w) {
    if (!(ratio > 1.0)) throw ValidationError("grid ratio must exceed 1");
    if (!(ratio < w)) {
        throw ValidationError("grid ratio must be below the Weber factor w (grid too coarse)");
    }
}

std::vector<double> geometric_points(double a, double b, double ratio) {
    std::vector<double> pts{a};
    // Guard against a last step landing a rounding error short of b.
    const double slack = 1e-12 * b;
    for (std::size_t k = 1;; ++k) {
        const double x = a * std::pow(ratio, static_cast<double>(k));
        if (x >= b - slack) break;
        pts.push_back(x);
    }
    if (b > a) pts.push_back(b);
    return pts;
}

std::vector<double> measure_weights(const std::vector<double>& pts, MeasureSpec measure) {
    const std::size_t n = pts.size();
    if (measure.kind == MeasureKind::uniform || n == 1) return std::vector<double>(n, 1.0);
    std::vector<double> wts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = i == 0 ? pts.front() : 0.5 * (pts[i - 1] + pts[i]);
        const double hi = i + 1 == n ? pts.back() : 0.5 * (pts[i] + pts[i + 1]);
        wts[i] = half_gaussian_mass(lo, hi);
    }
    return wts;
}

// Sorted magnitudes; i ~ j iff p_j < p_i w (i < j).  Pairs in `cut` blocks are
// never related.
std::vector<IndexPair> weber_edges(const std::vector<double>& pts, double w,
                                   const std::vector<int>& block) {
    std::vector<IndexPair> edges;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size() && pts[j] < pts[i] * w; ++j) {
            if (block[i] == block[j]) edges.emplace_back(i, j);
        }
    }
    return edges;
}

struct Cells {
    long kmin = 0;
    long kmax = 0;
    std::size_t steps = 0;
    double r = 0.0;
    std::vector<double> reps;   // representative of cell kmin + i
    std::vector<double> masses; // half-Gaussian mass of cell kmin + i
    DiscretizationInfo info;
};

Cells gaussian_cells(double w, double epsilon, const GaussianGridSpec& spec) {
    check_weber_factor(w);
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("epsilon must be positive");
    check_ratio(spec.ratio, w);
    const double lo = spec.lo == 0.0 ? epsilon / (1000.0 * w) : spec.lo;
    if (!(lo > 0.0)) throw ValidationError("inner grid end lo must be positive");
    if (!(lo < epsilon / w)) {
        throw ValidationError("inner grid end lo must lie below eps / w");
    }
    if (!(spec.T >= w * epsilon) || !std::isfinite(spec.T)) {
        throw ValidationError("truncation T must be at least w * eps so the ambiguity region is kept");
    }
    Cells c;
    c.steps = static_cast<std::size_t>(std::ceil(std::log(w) / std::log(spec.ratio) - 1e-12));
    c.steps = std::max<std::size_t>(c.steps, 1);
    c.r = std::pow(w, 1.0 / static_cast<double>(c.steps));
    const double lr = std::log(c.r);
    c.kmin = static_cast<long>(std::floor(std::log(lo / epsilon) / lr));
    c.kmax = static_cast<long>(std::ceil(std::log(spec.T / epsilon) / lr - 1e-12)) - 1;
    c.kmax = std::max(c.kmax, static_cast<long>(c.steps) - 1);
    auto edge = [&](long k) { return epsilon * std::pow(c.r, static_cast<double>(k)); };
    for (long k = c.kmin; k <= c.kmax; ++k) {
        c.reps.push_back(epsilon * std::pow(c.r, static_cast<double>(k) + 0.5));
        const double u = k == c.kmin ? 0.0 : edge(k);
        c.masses.push_back(half_gaussian_mass(u, edge(k + 1)));
    }
    c.info.ratio_requested = spec.ratio;
    c.info.ratio_effective = c.r;
    c.info.steps_per_factor = c.steps;
    c.info.lo = edge(c.kmin);
    c.info.T = edge(c.kmax + 1);
    c.info.inner_mass = half_gaussian_mass(0.0, edge(c.kmin));
    c.info.tail_mass = special::erfc(edge(c.kmax + 1));
    return c;
}

} // namespace

void WeberGrid::validate() const {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ValidationError("Weber grid needs a finite positive lower end a");
    }
    if (!(a <= b)) throw ValidationError("Weber grid needs a <= b");
    check_weber_factor(w);
    check_ratio(ratio, w);
}

std::vector<double> WeberGrid::points() const {
    validate();
    return geometric_points(a, b, ratio);
}

WeberSpace make_weber_interval(const WeberGrid& grid, MeasureSpec measure) {
    auto pts = grid.points();
    const std::vector<int> block(pts.size(), 0);
    auto edges = weber_edges(pts, grid.w, block);
    auto space = ToleranceSpace::from_edges(default_point_ids(pts.size()), edges,
                                            measure_weights(pts, measure));
    return {std::move(space), std::move(pts)};
}

WeberSpace make_weber_two_cell(double a, double b, double b_prime, double w, double ratio,
                               MeasureSpec measure) {
    check_weber_factor(w);
    check_ratio(ratio, w);
    if (!(a > 0.0) || !(a < b) || !(b < b_prime / w) || !std::isfinite(b_prime)) {
        throw ValidationError("two-cell Weber space needs 0 < a < b < b' / w");
    }
    auto pts = geometric_points(a, b, ratio);
    const std::size_t first = pts.size();
    for (double x : geometric_points(b * ratio, b_prime, ratio)) pts.push_back(x);
    std::vector<int> block(pts.size(), 0);
    std::fill(block.begin() + static_cast<std::ptrdiff_t>(first), block.end(), 1);
    auto edges = weber_edges(pts, w, block);
    auto space = ToleranceSpace::from_edges(default_point_ids(pts.size()), edges,
                                            measure_weights(pts, measure));
    return {std::move(space), std::move(pts)};
}

RayInstance make_weber_ray_gaussian(double w, double epsilon, const GaussianGridSpec& grid) {
    Cells c = gaussian_cells(w, epsilon, grid);
    const std::size_t n = c.reps.size();
    std::vector<IndexPair> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n && j <= i + c.steps; ++j) edges.emplace_back(i, j);
    }
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = c.kmin + static_cast<long>(i) < 0 ? 1 : 2;
    }
    c.info.num_points = n;
    auto space = ToleranceSpace::from_edges(default_point_ids(n), edges, c.masses);
    return RayInstance{std::move(space), Classifier(std::move(labels), 2), std::move(c.reps),
                       c.info, w, epsilon};
}

KlineInstance make_kline_gaussian(double w, double epsilon, const GaussianGridSpec& grid) {
    Cells c = gaussian_cells(w, epsilon, grid);
    const std::size_t K = c.reps.size();
    const std::size_t n = 2 * K + 1;
    std::vector<double> coords(n);
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < K; ++i) {
        // Negative cell i mirrors positive cell K - 1 - i.
        coords[i] = -c.reps[K - 1 - i];
        weights[i] = 0.5 * c.masses[K - 1 - i];
        coords[K + 1 + i] = c.reps[i];
        weights[K + 1 + i] = 0.5 * c.masses[i];
    }
    coords[K] = 0.0;
    weights[K] = 0.0;
    std::vector<IndexPair> edges;
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = i + 1; j < K && j <= i + c.steps; ++j) {
            edges.emplace_back(i, j);
            edges.emplace_back(K + 1 + i, K + 1 + j);
        }
    }
    std::vector<int> world(n);
    std::vector<int> labels(n);
    for (std::size_t x = 0; x < n; ++x) {
        world[x] = x < K ? 1 : 2;
        const bool above = x > K && c.kmin + static_cast<long>(x - K - 1) >= 0;
        labels[x] = above ? 2 : 1;
    }
    c.info.num_points = n;
    c.info.inner_mass *= 0.5;
    c.info.tail_mass *= 0.5;
    auto space = ToleranceSpace::from_edges(default_point_ids(n), edges, std::move(weights));
    WorldModel wm(space, std::move(world), 2);
    return KlineInstance{std::move(space), std::move(wm), Classifier(std::move(labels), 2),
                         std::move(coords), c.info, w, epsilon};
}

Classifier threshold_classifier(const std::vector<double>& coordinates, double epsilon) {
    std::vector<int> labels(coordinates.size());
    for (std::size_t i = 0; i < coordinates.size(); ++i) labels[i] = coordinates[i] < epsilon ? 1 : 2;
    return Classifier(std::move(labels), 2);
}

double ambiguity_bound(double w, double epsilon) {
    if (!(w >= 1.0)) throw ValidationError("Weber factor w must be at least 1");
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
    return half_gaussian_mass(epsilon / w, epsilon * w);
}

double kline_ambiguity_mass(double w, double epsilon) {
    if (!(w >= 1.0)) throw ValidationError("Weber factor w must be at least 1");
    if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be non-negative");
    return 0.5 * half_gaussian_mass(epsilon / w, epsilon);
}

double kline_accuracy(double epsilon) {
    if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be non-negative");
    return 1.0 - 0.5 * special::erf(epsilon);
}

KlineMaximizer kline_mass_maximizer(double w, double hi, std::size_t scan_points, double tol) {
    check_weber_factor(w);
    if (!(hi > 0.0) || scan_points < 3) throw ValidationError("scan needs hi > 0 and >= 3 points");
    const double h = hi / static_cast<double>(scan_points);
    std::size_t best = 1;
    double best_val = -1.0;
    for (std::size_t i = 1; i <= scan_points; ++i) {
        const double v = kline_ambiguity_mass(w, h * static_cast<double>(i));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best == scan_points) throw PreconditionError("mass maximum not interior to the scan range");
    const auto m = special::golden_section_maximize(
        [w](double e) { return kline_ambiguity_mass(w, e); }, h * static_cast<double>(best - 1),
        h * static_cast<double>(best + 1), tol);
    return {m.argmax, m.value};
}

double analytic_oracle(const std::string& name, const std::map<std::string, double>& params) {
    auto get = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end()) {
            throw ValidationError("oracle '" + name + "' needs parameter '" + key + "'");
        }
        return it->second;
    };
    if (name == "ambiguity_bound") return ambiguity_bound(get("w"), get("epsilon"));
    if (name == "kline_ambiguity_mass") return kline_ambiguity_mass(get("w"), get("epsilon"));
    if (name == "kline_accuracy") return kline_accuracy(get("epsilon"));
    throw ValidationError("unknown analytic oracle '" + name + "'");
}

} // namespace tolspace
