#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tolspace/labeling.hpp"
#include "tolspace/relation.hpp"

namespace tolspace {

/// Geometric grid a, a*ratio, ... on [a, b]; b itself is always the last point.
struct WeberGrid {
    double a = 1.0;
    double b = 2.0;
    double ratio = 1.1;
    double w = 1.5; ///< Weber factor, w = 1 + k

    void validate() const;
    std::vector<double> points() const;
};

enum class MeasureKind {
    uniform,       ///< equal weight per grid point
    half_gaussian, ///< mass 2/sqrt(pi) e^{-t^2} of each point's Voronoi cell
};

struct MeasureSpec {
    MeasureKind kind = MeasureKind::uniform;
};

/// A generated space together with the magnitudes its points stand for.
struct WeberSpace {
    ToleranceSpace space;
    std::vector<double> coordinates;
};

/// y ~ x iff x/w < y < xw, restricted to [a, b].
WeberSpace make_weber_interval(const WeberGrid& grid, MeasureSpec measure = {});

/// Two Weber intervals [a, b] and (b, b'] with no relation across b.
WeberSpace make_weber_two_cell(double a, double b, double b_prime, double w, double ratio,
                               MeasureSpec measure = {});

/// Cells [eps r^k, eps r^{k+1}) with r = w^{1/N}, the largest such ratio not
/// exceeding the requested one.  Cells i, j are related iff |i - j| <= N, which is
/// exactly when some members of the two cells are within a factor w.  Mass below
/// `lo` is lumped into the first cell; mass beyond T is dropped.
struct GaussianGridSpec {
    double ratio = 1.01;
    double lo = 0.0; ///< 0 selects eps / (1000 w)
    double T = 6.0;
};

struct DiscretizationInfo {
    double ratio_requested = 0.0;
    double ratio_effective = 0.0;
    std::size_t steps_per_factor = 0; ///< N
    double lo = 0.0;
    double T = 0.0;
    double inner_mass = 0.0; ///< lumped into the innermost cell (per half line)
    double tail_mass = 0.0;  ///< discarded beyond T (per half line)
    std::size_t num_points = 0;
};

struct RayInstance {
    ToleranceSpace space;
    Classifier classifier; ///< 1 below eps, 2 at or above
    std::vector<double> coordinates;
    DiscretizationInfo info;
    double w;
    double epsilon;
};

/// Half-Gaussian measure on (0, inf) with the threshold classifier at eps.
RayInstance make_weber_ray_gaussian(double w, double epsilon, const GaussianGridSpec& grid = {});

struct KlineInstance {
    ToleranceSpace space;
    WorldModel world;      ///< 1 for x < 0, 2 for x >= 0
    Classifier classifier; ///< 1 for x < eps, 2 otherwise
    std::vector<double> coordinates;
    DiscretizationInfo info;
    double w;
    double epsilon;
};

/// Gaussian with variance 1/2 on the real line.  Negative cells mirror the
/// positive ones, 0 is an isolated point of zero mass.
KlineInstance make_kline_gaussian(double w, double epsilon, const GaussianGridSpec& grid = {});

/// Threshold classifier on given coordinates: 1 below eps, 2 at or above.
Classifier threshold_classifier(const std::vector<double>& coordinates, double epsilon);

/// erf(w eps) - erf(eps / w).
double ambiguity_bound(double w, double epsilon);
/// Gaussian (variance 1/2) mass of (eps / w, eps).
double kline_ambiguity_mass(double w, double epsilon);
/// 1 - mass of [0, eps).
double kline_accuracy(double epsilon);

struct KlineMaximizer {
    double epsilon_star;
    double mass;
};

/// Bracket by a grid scan over (0, hi], then refine by golden section.
KlineMaximizer kline_mass_maximizer(double w, double hi = 10.0, std::size_t scan_points = 2000,
                                    double tol = 1e-10);

/// Named closed forms: ambiguity_bound(w, epsilon), kline_ambiguity_mass(w,
/// epsilon), kline_accuracy(epsilon).
double analytic_oracle(const std::string& name, const std::map<std::string, double>& params);

} // namespace tolspace
