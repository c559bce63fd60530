#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tolspace/features.hpp"
#include "tolspace/relation.hpp"

namespace tolspace {

/// Similarity s(x, y) with s(x, x) >= s(x, y); s(x, x) is the salience of x.
class SimilarityScale {
public:
    explicit SimilarityScale(std::vector<std::vector<double>> matrix);

    std::size_t size() const { return s_.size(); }
    double operator()(std::size_t x, std::size_t y) const { return s_[x][y]; }
    const std::vector<std::vector<double>>& matrix() const { return s_; }

    void check_aligned(const ToleranceSpace& space) const;

private:
    std::vector<std::vector<double>> s_;
};

/// Contrast similarity theta f(Phi_x & Phi_y) - alpha f(Phi_x \ Phi_y) - beta f(Phi_y \ Phi_x)
/// with f additive over per-feature weights.
class TverskyModel {
public:
    TverskyModel(double alpha, double beta, double theta, std::vector<double> salience,
                 FeatureRepresentation rep);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double theta() const { return theta_; }
    const std::vector<double>& salience() const { return salience_; }
    const FeatureRepresentation& rep() const { return rep_; }

    /// f(Phi_x).
    double point_salience(std::size_t x) const;
    double similarity(std::size_t x, std::size_t y) const;
    SimilarityScale scale() const;

private:
    double alpha_, beta_, theta_;
    std::vector<double> salience_;
    FeatureRepresentation rep_;
};

/// P(x, D) = sum_{y in D} mu(y) s(x, y).
double affinity(const ToleranceSpace& space, const SimilarityScale& s, std::size_t x,
                std::span<const std::size_t> D);

/// Relative tolerance used when collecting ties among affinity values.
inline constexpr double kTieTolerance = 1e-12;

PointSet prototypes(const ToleranceSpace& space, const SimilarityScale& s,
                    std::span<const std::size_t> D);
PointSet fringe(const ToleranceSpace& space, const SimilarityScale& s,
                std::span<const std::size_t> D);
PointSet m_core(const ToleranceSpace& space, const SimilarityScale& s,
                std::span<const std::size_t> D, double M);
PointSet tau_fringe(const ToleranceSpace& space, const SimilarityScale& s,
                    std::span<const std::size_t> D, double tau);

struct AffinityBounds {
    double lo;
    double hi;
};

/// Interval containing P(x, D) for all x in D: mu(D) times the range of s on D x D.
AffinityBounds affinity_bounds(const ToleranceSpace& space, const SimilarityScale& s,
                               std::span<const std::size_t> D);

double tversky_similarity(const TverskyModel& model, std::size_t x, std::size_t y);

/// First failed hypothesis of the closed form, or nothing.  Checks that x lies
/// in D, D is a union of elementary classes, metamorphic points share full
/// salience on their common features, and non-metamorphic points share none.
std::optional<std::string> tversky_hypothesis_failure(const TverskyModel& model,
                                                      const ToleranceSpace& space,
                                                      std::size_t x,
                                                      std::span<const std::size_t> D);

/// (alpha+beta+theta) mu([x]) f(x) - alpha mu(D) f(x) - beta I(D).
/// Throws PreconditionError naming the failed hypothesis.
double tversky_affinity_closed_form(const TverskyModel& model, const ToleranceSpace& space,
                                    std::size_t x, std::span<const std::size_t> D);

/// Base 2.  D must be a union of elementary classes of positive measure.
double structural_entropy(const ToleranceSpace& space, std::span<const std::size_t> D);
double index_of_coincidence(const ToleranceSpace& space, std::span<const std::size_t> D);

/// I(D) = sum_{y in D} mu(y) f(Phi_y).
double importance(const TverskyModel& model, const ToleranceSpace& space,
                  std::span<const std::size_t> D);
/// (1/mu(D)) sum_{x in D} mu(x) P(x, D).
double expected_affinity(const ToleranceSpace& space, const SimilarityScale& s,
                         std::span<const std::size_t> D);

/// f(x) constant on elementary classes.  When it is and every class has positive
/// mass, also confirms the chain Laplacian annihilates f.
bool salience_regularity_check(const TverskyModel& model, const ToleranceSpace& space);

/// The split class if D is not a union of elementary classes.
std::optional<std::size_t> split_class(const ToleranceSpace& space, std::span<const std::size_t> D);

} // namespace tolspace
