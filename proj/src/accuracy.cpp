#include "tolspace/accuracy.hpp"

#include <algorithm>
#include <cmath>

#include "tolspace/error.hpp"
#include "tolspace/special.hpp"

namespace tolspace {

namespace {

void check_pair(const ToleranceSpace& space, const WorldModel& world, const Classifier& r) {
    world.classes().check_aligned(space);
    r.check_aligned(space);
    if (r.num_labels() != world.num_labels()) {
        throw ValidationError("classifier has " + std::to_string(r.num_labels()) +
                              " labels but the world model has " +
                              std::to_string(world.num_labels()));
    }
}

// Raw weight of D(x) carrying label c under r.
double label_weight(const ToleranceSpace& space, const Classifier& r, std::size_t x, int c) {
    double s = 0.0;
    for (std::size_t y : space.neighborhood(x)) {
        if (r.label(y) == c) s += space.weights()[y];
    }
    return s;
}

std::optional<std::size_t> differing_doppelganger(const ToleranceSpace& space,
                                                  const Classifier& r, std::size_t x) {
    for (std::size_t y : space.neighborhood(x)) {
        if (r.label(y) != r.label(x)) return y;
    }
    return std::nullopt;
}

std::optional<std::string> zero_neighborhood(const ToleranceSpace& space) {
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (!(space.neighborhood_measure(x) > 0.0)) {
            return "D(" + space.id(x) + ") has zero measure";
        }
    }
    return std::nullopt;
}

constexpr double kSlack = 1e-12;

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inapplicable: return "inapplicable";
    }
    return "?";
}

double accuracy(const ToleranceSpace& space, const WorldModel& world, const Classifier& r) {
    check_pair(space, world, r);
    double s = 0.0;
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (r.label(x) == world.label(x)) s += space.weights()[x];
    }
    return s / space.total_weight();
}

std::vector<double> recall_rates(const ToleranceSpace& space, const WorldModel& world,
                                 const Classifier& r) {
    check_pair(space, world, r);
    const auto m = static_cast<std::size_t>(world.num_labels());
    std::vector<double> hit(m, 0.0);
    std::vector<double> mass(m, 0.0);
    for (std::size_t x = 0; x < space.size(); ++x) {
        const auto i = static_cast<std::size_t>(world.label(x) - 1);
        mass[i] += space.weights()[x];
        if (r.label(x) == world.label(x)) hit[i] += space.weights()[x];
    }
    for (std::size_t i = 0; i < m; ++i) hit[i] /= mass[i];
    return hit;
}

double k_bar(const ToleranceSpace& space, const WorldModel& world) {
    world.classes().check_aligned(space);
    double best = 0.0;
    for (std::size_t x = 0; x < space.size(); ++x) {
        const double d = space.neighborhood_measure(x);
        if (!(d > 0.0)) {
            throw PreconditionError("k_bar undefined: D(" + space.id(x) + ") has zero measure");
        }
        const double q = world.class_mass()[static_cast<std::size_t>(world.label(x) - 1)] / d;
        best = std::max(best, q);
    }
    return best;
}

TheoremCheck check_low_recall_unsafety(const ToleranceSpace& space, const WorldModel& world,
                                       const Classifier& r) {
    check_pair(space, world, r);
    TheoremCheck out;
    if (auto why = zero_neighborhood(space)) {
        out.reason = *why;
        return out;
    }
    const auto rho = recall_rates(space, world, r);
    const double h = *std::max_element(rho.begin(), rho.end()) * k_bar(space, world);
    out.hypothesis_value = h;
    if (!(h < 1.0 - kSlack)) {
        out.reason = "max recall * k_bar is not below 1 by a margin of 1e-12";
        return out;
    }
    out.verdict = Verdict::holds;
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (r.label(x) != world.label(x)) continue;
        out.checked.push_back(x);
        const double d = space.neighborhood_measure(x) * space.total_weight();
        const double same = label_weight(space, r, x, world.label(x));
        const auto y = differing_doppelganger(space, r, x);
        if (y) out.witnesses.emplace_back(x, *y);
        if (!(d - same > 0.0) || same / d > h + kSlack) {
            out.violations.push_back(x);
            out.verdict = Verdict::violated;
        }
    }
    return out;
}

TheoremCheck check_hypersensitivity(const ToleranceSpace& space, const WorldModel& world,
                                    const Classifier& r) {
    check_pair(space, world, r);
    TheoremCheck out;
    if (auto why = zero_neighborhood(space)) {
        out.reason = *why;
        return out;
    }
    const auto rho = recall_rates(space, world, r);
    const double h = (1.0 - *std::min_element(rho.begin(), rho.end())) * k_bar(space, world);
    out.hypothesis_value = h;
    if (!(h < 1.0 - kSlack)) {
        out.reason = "(1 - min recall) * k_bar is not below 1 by a margin of 1e-12";
        return out;
    }
    out.verdict = Verdict::holds;
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (r.label(x) == world.label(x)) continue;
        out.checked.push_back(x);
        const double d = space.neighborhood_measure(x) * space.total_weight();
        const double same = label_weight(space, r, x, r.label(x));
        const auto y = differing_doppelganger(space, r, x);
        if (y) out.witnesses.emplace_back(x, *y);
        if (!y || !(d - same > 0.0) || same / d > h + kSlack) {
            out.violations.push_back(x);
            out.verdict = Verdict::violated;
        }
    }
    return out;
}

bool is_hyper_sensitive(const ToleranceSpace& space, const WorldModel& world, const Classifier& r) {
    check_pair(space, world, r);
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (r.label(x) != world.label(x) && !differing_doppelganger(space, r, x)) return false;
    }
    return true;
}

TradeoffTable tradeoff_scan(const KlineInstance& inst, std::span<const double> epsilons,
                            double tol) {
    if (epsilons.empty()) throw ValidationError("tradeoff scan needs a non-empty epsilon grid");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0)) throw ValidationError("epsilon values must be positive");
        if (i > 0 && !(epsilons[i] > epsilons[i - 1])) {
            throw ValidationError("epsilon grid must be strictly increasing");
        }
    }
    const auto& space = inst.space;
    TradeoffTable t;
    for (double e : epsilons) {
        const Classifier r = threshold_classifier(inst.coordinates, e);
        double adv = 0.0;
        for (std::size_t x = 0; x < space.size(); ++x) {
            if (r.label(x) != inst.world.label(x) && differing_doppelganger(space, r, x)) {
                adv += space.weights()[x];
            }
        }
        t.rows.push_back({e, accuracy(space, inst.world, r), adv / space.total_weight()});
    }
    t.accuracy_strictly_decreasing = true;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        if (!(t.rows[i].accuracy < t.rows[i - 1].accuracy)) t.accuracy_strictly_decreasing = false;
    }
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        if (t.rows[i].adv_mass > t.rows[t.grid_argmax].adv_mass) t.grid_argmax = i;
    }
    const std::size_t k = t.grid_argmax;
    t.mass_unimodal = true;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const bool rising = i <= k;
        if (rising && t.rows[i].adv_mass < t.rows[i - 1].adv_mass) t.mass_unimodal = false;
        if (!rising && t.rows[i].adv_mass > t.rows[i - 1].adv_mass) t.mass_unimodal = false;
    }
    t.interior_maximum = k > 0 && k + 1 < t.rows.size();
    const double lo = k > 0 ? epsilons[k - 1] : epsilons[k] / 2.0;
    const double hi = k + 1 < epsilons.size() ? epsilons[k + 1] : epsilons[k] * 2.0;
    const double w = inst.w;
    const auto m = special::golden_section_maximize(
        [w](double e) { return kline_ambiguity_mass(w, e); }, lo, hi, tol);
    t.epsilon_star = m.argmax;
    t.analytic_mass_star = m.value;
    return t;
}

} // namespace tolspace
