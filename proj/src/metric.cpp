#include "tolspace/metric.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "tolspace/error.hpp"

namespace tolspace {

PerceptualFunction::PerceptualFunction(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("function value at index " + std::to_string(i) + " is not finite");
        }
    }
}

void PerceptualFunction::check_aligned(const ToleranceSpace& space) const {
    if (values_.size() != space.size()) {
        throw ValidationError("function has " + std::to_string(values_.size()) + " values for " +
                              std::to_string(space.size()) + " points");
    }
}

std::vector<ExtendedDistance> distances_from(const ToleranceSpace& space, std::size_t source) {
    space.check_point(source);
    std::vector<ExtendedDistance> dist(space.size(), ExtendedDistance::infinite());
    std::vector<std::size_t> hops(space.size(), 0);
    std::vector<bool> seen(space.size(), false);
    std::deque<std::size_t> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        dist[x] = ExtendedDistance::finite(hops[x]);
        for (std::size_t y : space.neighborhood(x)) {
            if (!seen[y]) {
                seen[y] = true;
                hops[y] = hops[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

ExtendedDistance graph_distance(const ToleranceSpace& space, std::size_t x, std::size_t y) {
    space.check_point(y);
    return distances_from(space, x)[y];
}

double perceptual_distance(const ExtendedDistance& d) {
    if (d.is_infinite()) return 1.0;
    const double h = static_cast<double>(d.hops());
    return h / (1.0 + h);
}

double perceptual_distance(const ToleranceSpace& space, std::size_t x, std::size_t y) {
    return perceptual_distance(graph_distance(space, x, y));
}

std::vector<Stratum> strata(const ToleranceSpace& space, std::size_t x) {
    const auto dist = distances_from(space, x);
    // Infinite distance sorts last.
    std::map<std::size_t, PointSet> finite;
    PointSet far;
    for (std::size_t y = 0; y < dist.size(); ++y) {
        if (dist[y].is_infinite()) {
            far.push_back(y);
        } else {
            finite[dist[y].hops()].push_back(y);
        }
    }
    std::vector<Stratum> out;
    for (auto& [h, pts] : finite) {
        const auto d = ExtendedDistance::finite(h);
        out.push_back({d, perceptual_distance(d), std::move(pts)});
    }
    if (!far.empty()) out.push_back({ExtendedDistance::infinite(), 1.0, std::move(far)});
    return out;
}

PerceptualFunction sqrt_degree(const ToleranceSpace& space) {
    std::vector<double> v(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) v[x] = std::sqrt(space.neighborhood_measure(x));
    return PerceptualFunction(std::move(v));
}

namespace {

std::vector<double> positive_degrees(const ToleranceSpace& space) {
    std::vector<double> d(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        d[x] = space.neighborhood_measure(x);
        if (!(d[x] > 0.0)) {
            throw PreconditionError("discrimination Laplacian undefined: D(" + space.id(x) +
                                    ") has zero measure");
        }
    }
    return d;
}

std::vector<double> class_masses(const ToleranceSpace& space, const ElementaryPartition& part) {
    std::vector<double> mass(part.count());
    for (std::size_t c = 0; c < part.count(); ++c) {
        mass[c] = space.measure(part.classes[c]);
        if (!(mass[c] > 0.0)) {
            throw PreconditionError("chain Laplacian undefined: elementary class " +
                                    std::to_string(c) + " (containing '" +
                                    space.id(part.classes[c].front()) + "') has zero measure");
        }
    }
    return mass;
}

std::vector<double> class_means(const ToleranceSpace& space, const ElementaryPartition& part,
                                const std::vector<double>& mass, const PerceptualFunction& f) {
    std::vector<double> mean(part.count(), 0.0);
    for (std::size_t c = 0; c < part.count(); ++c) {
        double s = 0.0;
        for (std::size_t y : part.classes[c]) s += space.probability(y) * f[y];
        mean[c] = s / mass[c];
    }
    return mean;
}

} // namespace

PerceptualFunction laplacian_ad(const ToleranceSpace& space, const PerceptualFunction& f) {
    f.check_aligned(space);
    const auto d = positive_degrees(space);
    std::vector<double> out(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        double s = 0.0;
        for (std::size_t y : space.neighborhood(x)) s += space.probability(y) * f[y] / std::sqrt(d[y]);
        out[x] = f[x] - s / std::sqrt(d[x]);
    }
    return PerceptualFunction(std::move(out));
}

PerceptualFunction laplacian_sigma(const ToleranceSpace& space, const PerceptualFunction& f) {
    f.check_aligned(space);
    const auto part = transitive_closure(space);
    const auto mass = class_masses(space, part);
    const auto mean = class_means(space, part, mass, f);
    std::vector<double> out(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) out[x] = f[x] - mean[part.class_index[x]];
    return PerceptualFunction(std::move(out));
}

bool is_perceptually_regular(const ToleranceSpace& space, const PerceptualFunction& f, double tol) {
    f.check_aligned(space);
    const auto part = transitive_closure(space);
    for (const auto& cls : part.classes) {
        const double ref = f[cls.front()];
        for (std::size_t y : cls) {
            if (std::abs(f[y] - ref) > tol) return false;
        }
    }
    return true;
}

RegularDecomposition regular_decomposition(const ToleranceSpace& space,
                                           const PerceptualFunction& f) {
    f.check_aligned(space);
    const auto part = transitive_closure(space);
    const auto mass = class_masses(space, part);
    const auto mean = class_means(space, part, mass, f);
    std::vector<double> reg(space.size());
    std::vector<double> osc(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        reg[x] = mean[part.class_index[x]];
        osc[x] = f[x] - reg[x];
    }
    return {PerceptualFunction(std::move(reg)), PerceptualFunction(std::move(osc))};
}

std::vector<double> laplacian_matrix(const ToleranceSpace& space, LaplacianKind kind) {
    const std::size_t n = space.size();
    std::vector<double> m(n * n, 0.0);
    if (kind == LaplacianKind::discrimination) {
        const auto d = positive_degrees(space);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y : space.neighborhood(x)) {
                m[x * n + y] -= space.probability(y) / std::sqrt(d[x] * d[y]);
            }
        }
    } else {
        const auto part = transitive_closure(space);
        const auto mass = class_masses(space, part);
        for (std::size_t x = 0; x < n; ++x) {
            const double dx = mass[part.class_index[x]];
            for (std::size_t y : part.class_of(x)) m[x * n + y] -= space.probability(y) / dx;
        }
    }
    for (std::size_t x = 0; x < n; ++x) m[x * n + x] += 1.0;
    return m;
}

std::vector<double> laplacian_spectrum(const ToleranceSpace& space, LaplacianKind kind,
                                       std::size_t max_points) {
    const std::size_t n = space.size();
    if (n > max_points) {
        throw GuardExceeded("dense spectrum requested for " + std::to_string(n) +
                            " points; guard is " + std::to_string(max_points));
    }
    const auto dense = laplacian_matrix(space, kind);
    const auto idx = [n](std::size_t r, std::size_t c) { return r * n + c; };
    std::vector<double> eig;
    const bool all_positive = std::all_of(space.weights().begin(), space.weights().end(),
                                          [](double w) { return w > 0.0; });
    if (all_positive) {
        // M^{1/2} L M^{-1/2} is symmetric for both operators.
        Eigen::MatrixXd sym(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                sym(r, c) = std::sqrt(space.probability(r)) * dense[idx(r, c)] /
                            std::sqrt(space.probability(c));
            }
        }
        sym = 0.5 * (sym + sym.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
        const auto& v = solver.eigenvalues();
        eig.assign(v.data(), v.data() + v.size());
    } else {
        Eigen::MatrixXd mat(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) mat(r, c) = dense[idx(r, c)];
        }
        Eigen::EigenSolver<Eigen::MatrixXd> solver(mat, false);
        const auto v = solver.eigenvalues();
        for (Eigen::Index i = 0; i < v.size(); ++i) eig.push_back(v[i].real());
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace tolspace
