#include "tolspace/audit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "tolspace/error.hpp"

namespace tolspace {

std::vector<IndexPair> adversarial_pairs(const ToleranceSpace& space, const Classifier& r) {
    r.check_aligned(space);
    std::vector<IndexPair> out;
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (std::size_t y : space.neighborhood(x)) {
            if (y > x && r.label(x) != r.label(y)) out.emplace_back(x, y);
        }
    }
    return out;
}

bool is_regular(const ToleranceSpace& space, const Classifier& r) {
    r.check_aligned(space);
    const auto part = transitive_closure(space);
    for (const auto& cls : part.classes) {
        const int l = r.label(cls.front());
        for (std::size_t y : cls) {
            if (r.label(y) != l) return false;
        }
    }
    return true;
}

BigInt stirling2(std::size_t p, std::size_t m) {
    if (m > p) return 0;
    if (p == 0) return 1;
    if (m == 0) return 0;
    // row[k] = S(n, k) for the current n, k <= m.
    std::vector<BigInt> row(m + 1, 0);
    row[0] = 1;
    for (std::size_t n = 1; n <= p; ++n) {
        for (std::size_t k = std::min(n, m); k >= 1; --k) {
            row[k] = BigInt(k) * row[k] + row[k - 1];
        }
        row[0] = 0;
    }
    return row[m];
}

WellPosedness well_posed(const ToleranceSpace& space, int m, std::size_t stirling_limit) {
    if (m < 1) throw ValidationError("number of labels must be at least 1");
    WellPosedness out;
    out.num_classes = transitive_closure(space).count();
    const auto mm = static_cast<std::size_t>(m);
    out.well_posed = mm <= out.num_classes;
    if (!out.well_posed) {
        out.stirling_count = BigInt(0);
    } else if (out.num_classes <= stirling_limit) {
        out.stirling_count = stirling2(out.num_classes, mm);
    }
    return out;
}

void for_each_regular(const ToleranceSpace& space, int m, const EnumerationOptions& opts,
                      const std::function<void(const Classifier&)>& visit) {
    if (m < 1) throw ValidationError("number of labels must be at least 1");
    const auto part = transitive_closure(space);
    const std::size_t p = part.count();
    if (p > opts.max_classes) {
        throw GuardExceeded("enumeration over " + std::to_string(p) +
                            " elementary classes exceeds the guard of " +
                            std::to_string(opts.max_classes));
    }
    const auto mm = static_cast<std::size_t>(m);
    if (mm > p) return;
    BigInt expected = stirling2(p, mm);
    if (opts.labeled) {
        for (std::size_t k = 2; k <= mm; ++k) expected *= k;
    }
    if (expected > opts.max_results) {
        throw GuardExceeded("enumeration would produce " + expected.str() +
                            " classifiers; result guard is " + std::to_string(opts.max_results));
    }

    std::vector<std::size_t> block(p, 0);
    std::vector<int> perm(mm);
    std::iota(perm.begin(), perm.end(), 1);

    auto emit = [&] {
        std::vector<int> labels(space.size());
        if (!opts.labeled) {
            for (std::size_t x = 0; x < space.size(); ++x) {
                labels[x] = static_cast<int>(block[part.class_index[x]]) + 1;
            }
            visit(Classifier(std::move(labels), m));
            return;
        }
        std::vector<int> pm = perm;
        do {
            for (std::size_t x = 0; x < space.size(); ++x) labels[x] = pm[block[part.class_index[x]]];
            visit(Classifier(labels, m));
        } while (std::next_permutation(pm.begin(), pm.end()));
    };

    // Restricted growth strings with exactly m blocks.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == p) {
            if (used == mm) emit();
            return;
        }
        if (p - i < mm - used) return;
        for (std::size_t b = 0; b < used; ++b) {
            block[i] = b;
            rec(i + 1, used);
        }
        if (used < mm) {
            block[i] = used;
            rec(i + 1, used + 1);
        }
    };
    rec(0, 0);
}

std::vector<Classifier> enumerate_regular(const ToleranceSpace& space, int m,
                                          const EnumerationOptions& opts) {
    std::vector<Classifier> out;
    for_each_regular(space, m, opts, [&](const Classifier& c) { out.push_back(c); });
    return out;
}

IndexPair sorites_extract(const ToleranceSpace& space, std::span<const std::size_t> chain,
                          const Classifier& r, SoritesStrategy strategy) {
    r.check_aligned(space);
    if (chain.size() < 2) throw ValidationError("a sorites chain needs at least two points");
    for (std::size_t x : chain) space.check_point(x);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!space.related(chain[i], chain[i + 1])) {
            throw ValidationError("chain is broken at position " + std::to_string(i) + ": '" +
                                  space.id(chain[i]) + "' and '" + space.id(chain[i + 1]) +
                                  "' are not related");
        }
    }
    const int first_label = r.label(chain.front());
    if (first_label == r.label(chain.back())) {
        throw PreconditionError("chain endpoints carry the same label");
    }
    std::size_t i = 0;
    if (strategy == SoritesStrategy::last) {
        // Last position sharing the initial label.
        for (std::size_t j = 0; j < chain.size(); ++j) {
            if (r.label(chain[j]) == first_label) i = j;
        }
    } else {
        // First departure from the initial label, minus one.
        std::size_t j = 1;
        while (r.label(chain[j]) == first_label) ++j;
        i = j - 1;
    }
    return {chain[i], chain[i + 1]};
}

std::optional<PointSet> doppel_chain(const ToleranceSpace& space, std::size_t x, std::size_t y) {
    space.check_point(x);
    space.check_point(y);
    const std::size_t none = space.size();
    std::vector<std::size_t> prev(space.size(), none);
    prev[x] = x;
    std::deque<std::size_t> queue{x};
    while (!queue.empty() && prev[y] == none) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v : space.neighborhood(u)) {
            if (prev[v] == none) {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    if (prev[y] == none) return std::nullopt;
    PointSet path{y};
    while (path.back() != x) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

PointSet ambiguity_region(const ToleranceSpace& space, const Classifier& r) {
    r.check_aligned(space);
    PointSet out;
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (std::size_t y : space.neighborhood(x)) {
            if (r.label(y) != r.label(x)) {
                out.push_back(x);
                break;
            }
        }
    }
    return out;
}

std::vector<double> label_distribution(const ToleranceSpace& space, const Classifier& r,
                                       std::size_t x) {
    r.check_aligned(space);
    space.check_point(x);
    std::vector<double> mass(static_cast<std::size_t>(r.num_labels()), 0.0);
    double total = 0.0;
    for (std::size_t y : space.neighborhood(x)) {
        mass[static_cast<std::size_t>(r.label(y) - 1)] += space.weights()[y];
        total += space.weights()[y];
    }
    if (!(total > 0.0)) {
        throw PreconditionError("label distribution undefined: D(" + space.id(x) +
                                ") has zero measure");
    }
    for (double& v : mass) v /= total;
    return mass;
}

double conceptual_entropy(const ToleranceSpace& space, const Classifier& r, std::size_t x,
                          double base) {
    if (!(base > 0.0) || base == 1.0) throw ValidationError("entropy base must be positive and != 1");
    double h = 0.0;
    for (double p : label_distribution(space, r, x)) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h / std::log(base);
}

double fooling_rate(const ToleranceSpace& space, const Classifier& r, const Attack& attack) {
    r.check_aligned(space);
    if (attack.target.size() != space.size()) {
        throw ValidationError("attack has " + std::to_string(attack.target.size()) +
                              " targets for " + std::to_string(space.size()) + " points");
    }
    double flipped = 0.0;
    for (std::size_t x = 0; x < space.size(); ++x) {
        const std::size_t t = attack.target[x];
        if (t >= space.size() || !space.related(x, t)) {
            throw ValidationError("attack target of '" + space.id(x) +
                                  "' is not one of its Doppelgangers");
        }
        if (r.label(t) != r.label(x)) flipped += space.weights()[x];
    }
    return flipped / space.total_weight();
}

double fooling_bound(const ToleranceSpace& space, const Classifier& r) {
    return space.measure(ambiguity_region(space, r));
}

MaxFoolingResult max_fooling_attack(const ToleranceSpace& space, const Classifier& r) {
    r.check_aligned(space);
    Attack attack;
    attack.target.resize(space.size());
    MaxFoolingResult out;
    for (std::size_t x = 0; x < space.size(); ++x) {
        bool found = false;
        for (std::size_t y : space.neighborhood(x)) {
            if (r.label(y) != r.label(x)) {
                attack.target[x] = y;
                found = true;
                break;
            }
        }
        if (!found) out.unattackable.push_back(x);
    }
    if (out.unattackable.empty()) out.attack = std::move(attack);
    return out;
}

std::optional<IndexPair> na_hazard_witness(const ToleranceSpace& space,
                                           std::span<const std::size_t> training_subset) {
    std::vector<bool> in(space.size(), false);
    for (std::size_t x : training_subset) {
        space.check_point(x);
        in[x] = true;
    }
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (!in[x]) continue;
        for (std::size_t z : space.neighborhood(x)) {
            if (!in[z]) return IndexPair{x, z};
        }
    }
    return std::nullopt;
}

std::vector<LabelWitness> trivial_closure_witnesses(const ToleranceSpace& space,
                                                    const Classifier& r) {
    r.check_aligned(space);
    if (transitive_closure(space).count() != 1) {
        throw PreconditionError("transitive closure is not trivial");
    }
    if (r.num_labels() < 2 || !r.fully_populated()) {
        throw PreconditionError("classifier must be fully populated with at least two labels");
    }
    std::vector<LabelWitness> out;
    for (int c = 1; c <= r.num_labels(); ++c) {
        std::optional<LabelWitness> w;
        for (std::size_t x = 0; x < space.size() && !w; ++x) {
            if (r.label(x) != c) continue;
            for (std::size_t y : space.neighborhood(x)) {
                if (r.label(y) != c) {
                    w = LabelWitness{c, x, y};
                    break;
                }
            }
        }
        if (!w) {
            throw InvariantViolation("label " + std::to_string(c) +
                                     " has no adversarial Doppelganger on a trivial closure");
        }
        out.push_back(*w);
    }
    return out;
}

AuditReport audit(const ToleranceSpace& space, const Classifier& r, double entropy_base) {
    r.check_aligned(space);
    AuditReport rep;
    rep.entropy_base = entropy_base;
    rep.adversarial_pairs = adversarial_pairs(space, r);
    rep.ambiguity_region = ambiguity_region(space, r);
    rep.regular = is_regular(space, r);
    rep.fooling_bound = space.measure(rep.ambiguity_region);
    rep.well_posedness = well_posed(space, r.num_labels());
    rep.num_classes = rep.well_posedness.num_classes;
    rep.fully_populated = r.fully_populated();
    rep.entropy.reserve(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (space.neighborhood_measure(x) > 0.0) {
            rep.entropy.emplace_back(conceptual_entropy(space, r, x, entropy_base));
        } else {
            rep.entropy.emplace_back(std::nullopt);
        }
    }
    const bool no_pairs = rep.adversarial_pairs.empty();
    const bool no_region = rep.ambiguity_region.empty();
    if (rep.regular != no_pairs || no_pairs != no_region) {
        throw InvariantViolation("audit inconsistency: regularity, adversarial pairs and ambiguity "
                                 "region disagree");
    }
    for (std::size_t x = 0; x < space.size(); ++x) {
        const bool ambiguous = std::binary_search(rep.ambiguity_region.begin(),
                                                  rep.ambiguity_region.end(), x);
        if (rep.entropy[x] && *rep.entropy[x] > 0.0 && !ambiguous) {
            throw InvariantViolation("positive conceptual entropy at '" + space.id(x) +
                                     "' outside the ambiguity region");
        }
    }
    if (rep.num_classes == 1 && rep.fully_populated && r.num_labels() >= 2) {
        rep.trivial_closure_witnesses = trivial_closure_witnesses(space, r);
    }
    return rep;
}

} // namespace tolspace
