#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tolspace/relation.hpp"

namespace tolspace {

/// Graph distance on the discrimination graph: a hop count or infinity.
class ExtendedDistance {
public:
    static ExtendedDistance infinite() { return ExtendedDistance(); }
    static ExtendedDistance finite(std::size_t hops) { return ExtendedDistance(hops); }

    bool is_infinite() const { return !hops_.has_value(); }
    std::size_t hops() const { return hops_.value(); }

    friend bool operator==(const ExtendedDistance&, const ExtendedDistance&) = default;

private:
    ExtendedDistance() = default;
    explicit ExtendedDistance(std::size_t h) : hops_(h) {}
    std::optional<std::size_t> hops_;
};

/// Real-valued function on the points, aligned with point order.
class PerceptualFunction {
public:
    PerceptualFunction() = default;
    explicit PerceptualFunction(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    void check_aligned(const ToleranceSpace& space) const;

private:
    std::vector<double> values_;
};

ExtendedDistance graph_distance(const ToleranceSpace& space, std::size_t x, std::size_t y);
/// BFS distances from `source` to every point.
std::vector<ExtendedDistance> distances_from(const ToleranceSpace& space, std::size_t source);

/// d / (1 + d), with infinity mapped to exactly 1.
double perceptual_distance(const ExtendedDistance& d);
double perceptual_distance(const ToleranceSpace& space, std::size_t x, std::size_t y);

struct Stratum {
    ExtendedDistance hops;
    double radius;
    PointSet points;
};

/// Non-empty spheres around x, in increasing radius.
std::vector<Stratum> strata(const ToleranceSpace& space, std::size_t x);

/// (f(x) - 1/sqrt(d(x)) * sum_{y in D(x)} mu(y) f(y)/sqrt(d(y))),  d(x) = mu(D(x)).
PerceptualFunction laplacian_ad(const ToleranceSpace& space, const PerceptualFunction& f);
/// f(x) - (1/mu([x])) * sum_{y in [x]} mu(y) f(y).
PerceptualFunction laplacian_sigma(const ToleranceSpace& space, const PerceptualFunction& f);

/// sqrt(mu(D(x))), the canonical element of the kernel of laplacian_ad.
PerceptualFunction sqrt_degree(const ToleranceSpace& space);

/// Constant on each elementary class (up to `tol`).
bool is_perceptually_regular(const ToleranceSpace& space, const PerceptualFunction& f,
                             double tol = 0.0);

struct RegularDecomposition {
    PerceptualFunction regular;   ///< class means, annihilated by laplacian_sigma
    PerceptualFunction oscillating; ///< mean-zero on classes, fixed by laplacian_sigma
};

RegularDecomposition regular_decomposition(const ToleranceSpace& space,
                                           const PerceptualFunction& f);

enum class LaplacianKind { discrimination, chain };

/// Dense matrix of a Laplacian in row-major order (row x gives (L f)(x)).
std::vector<double> laplacian_matrix(const ToleranceSpace& space, LaplacianKind kind);

/// Eigenvalues in ascending order.  Refuses spaces above `max_points`.
std::vector<double> laplacian_spectrum(const ToleranceSpace& space, LaplacianKind kind,
                                       std::size_t max_points = 512);

} // namespace tolspace
