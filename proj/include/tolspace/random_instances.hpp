#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "tolspace/category.hpp"
#include "tolspace/features.hpp"
#include "tolspace/labeling.hpp"
#include "tolspace/relation.hpp"

namespace tolspace::random {

using Rng = std::mt19937_64;

enum class Weights { uniform, positive, with_zeros };

/// Erdos-Renyi style relation: each pair related with probability p.
ToleranceSpace random_space(Rng& rng, std::size_t n, double p, Weights weights = Weights::uniform);

/// Disjoint random cliques-with-holes: blocks of random size, each internally
/// connected by a random spanning path plus extra edges with probability p.
ToleranceSpace random_blocks(Rng& rng, std::size_t n, std::size_t blocks, double p,
                             Weights weights = Weights::uniform);

Classifier random_classifier(Rng& rng, std::size_t n, int m);

/// Labels constant on elementary classes, every label used on a class of
/// positive mass.  Nothing when fewer than m classes have positive mass.
std::optional<WorldModel> random_regular_world(Rng& rng, const ToleranceSpace& space, int m);

/// A classifier agreeing with `world` except on a random subset of points
/// chosen with probability `flip`.
Classifier perturb(Rng& rng, const WorldModel& world, double flip);

/// Feature representation and Tversky constants meeting the closed-form
/// hypotheses: each elementary class owns a set of positive-salience features
/// carried by all its members, plus optional zero-salience private features.
TverskyModel random_tversky(Rng& rng, const ToleranceSpace& space);

/// Random function on the points with values in [-1, 1].
std::vector<double> random_function(Rng& rng, std::size_t n);

} // namespace tolspace::random
