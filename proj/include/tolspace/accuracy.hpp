#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tolspace/labeling.hpp"
#include "tolspace/relation.hpp"
#include "tolspace/weber.hpp"

namespace tolspace {

/// mu of the points where R agrees with the world model.
double accuracy(const ToleranceSpace& space, const WorldModel& world, const Classifier& r);
/// rho_i = mu(R_i and Omega_i) / mu(Omega_i), indexed 0..m-1.
std::vector<double> recall_rates(const ToleranceSpace& space, const WorldModel& world,
                                 const Classifier& r);
/// max_x mu(Omega_{i(x)}) / mu(D(x)).
double k_bar(const ToleranceSpace& space, const WorldModel& world);

enum class Verdict { holds, violated, inapplicable };

const char* to_string(Verdict v);

struct TheoremCheck {
    Verdict verdict = Verdict::inapplicable;
    /// Left-hand side of the hypothesis (< 1 required); absent if not computable.
    std::optional<double> hypothesis_value;
    std::string reason; ///< why the check is inapplicable
    /// Points the conclusion was checked on.
    PointSet checked;
    /// For each checked point, its least Doppelganger with a different label.
    std::vector<IndexPair> witnesses;
    /// Checked points where the conclusion failed.
    PointSet violations;
};

/// Low recall: if max rho * k_bar < 1, every correctly classified point has a
/// positive-mass set of adversarial Doppelgangers, and the share of D(x) carrying
/// the true label is at most max rho * k_bar.
TheoremCheck check_low_recall_unsafety(const ToleranceSpace& space, const WorldModel& world,
                                       const Classifier& r);

/// High recall: if (1 - min rho) * k_bar < 1, every misclassified point has a
/// positive-mass set of Doppelgangers labelled differently from it.
TheoremCheck check_hypersensitivity(const ToleranceSpace& space, const WorldModel& world,
                                    const Classifier& r);

/// Every misclassified point has a Doppelganger with a different label.
bool is_hyper_sensitive(const ToleranceSpace& space, const WorldModel& world, const Classifier& r);

struct TradeoffRow {
    double epsilon;
    double accuracy;
    double adv_mass; ///< mass of misclassified adversarial Doppelgangers
};

struct TradeoffTable {
    std::vector<TradeoffRow> rows;
    bool accuracy_strictly_decreasing = false;
    bool mass_unimodal = false;
    std::size_t grid_argmax = 0;
    /// Golden-section refinement of the closed-form mass inside the bracket
    /// around the grid maximum.
    double epsilon_star = 0.0;
    double analytic_mass_star = 0.0;
    bool interior_maximum = false;
};

/// Sweeps the threshold classifier R(eps) over the instance's coordinates.
TradeoffTable tradeoff_scan(const KlineInstance& inst, std::span<const double> epsilons,
                            double tol = 1e-10);

} // namespace tolspace
