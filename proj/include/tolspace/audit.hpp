#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tolspace/labeling.hpp"
#include "tolspace/relation.hpp"

namespace tolspace {

using BigInt = boost::multiprecision::cpp_int;

/// Related pairs (x < y) with different labels, in lexicographic order.
std::vector<IndexPair> adversarial_pairs(const ToleranceSpace& space, const Classifier& r);

/// Labels constant on every elementary class.
bool is_regular(const ToleranceSpace& space, const Classifier& r);

/// S(p, m) by the recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1).
BigInt stirling2(std::size_t p, std::size_t m);

struct WellPosedness {
    bool well_posed = false;
    std::size_t num_classes = 0;
    /// Number of regular fully populated segmentations; absent when p exceeds
    /// the counting limit.
    std::optional<BigInt> stirling_count;
};

WellPosedness well_posed(const ToleranceSpace& space, int m, std::size_t stirling_limit = 2000);

struct EnumerationOptions {
    std::size_t max_classes = 16;
    std::size_t max_results = 1'000'000;
    /// Emit all m! labellings of each segmentation instead of canonical numbering.
    bool labeled = false;
};

/// Calls `visit` for every regular fully populated classifier with m labels.
/// Canonical numbering: blocks labelled in order of their least point.
void for_each_regular(const ToleranceSpace& space, int m, const EnumerationOptions& opts,
                      const std::function<void(const Classifier&)>& visit);
std::vector<Classifier> enumerate_regular(const ToleranceSpace& space, int m,
                                          const EnumerationOptions& opts = {});

enum class SoritesStrategy { first, last };

/// Adjacent pair of a labelled Doppelganger chain whose labels differ, where
/// the first element of the pair shares the label of chain[0].
IndexPair sorites_extract(const ToleranceSpace& space, std::span<const std::size_t> chain,
                          const Classifier& r, SoritesStrategy strategy);

/// Shortest relation path x .. y, or nothing when x and y are not metamorphic.
std::optional<PointSet> doppel_chain(const ToleranceSpace& space, std::size_t x, std::size_t y);

PointSet ambiguity_region(const ToleranceSpace& space, const Classifier& r);
std::vector<double> label_distribution(const ToleranceSpace& space, const Classifier& r,
                                       std::size_t x);
/// Entropy of the label distribution on D(x); base 2 unless overridden.
double conceptual_entropy(const ToleranceSpace& space, const Classifier& r, std::size_t x,
                          double base = 2.0);

double fooling_rate(const ToleranceSpace& space, const Classifier& r, const Attack& attack);
/// Measure of the ambiguity region.
double fooling_bound(const ToleranceSpace& space, const Classifier& r);

struct MaxFoolingResult {
    std::optional<Attack> attack;
    PointSet unattackable;
};

MaxFoolingResult max_fooling_attack(const ToleranceSpace& space, const Classifier& r);

/// x in S and z in D(x) outside S, with x then z smallest.
std::optional<IndexPair> na_hazard_witness(const ToleranceSpace& space,
                                           std::span<const std::size_t> training_subset);

struct LabelWitness {
    int label;
    std::size_t point;       ///< carries `label`
    std::size_t doppelganger; ///< related, different label
};

/// On a space whose closure is trivial, one adversarial witness per label of a
/// fully populated classifier with at least two labels.
std::vector<LabelWitness> trivial_closure_witnesses(const ToleranceSpace& space,
                                                    const Classifier& r);

struct AuditReport {
    bool regular = false;
    std::vector<IndexPair> adversarial_pairs;
    PointSet ambiguity_region;
    /// Absent where D(x) has zero measure.
    std::vector<std::optional<double>> entropy;
    double fooling_bound = 0.0;
    WellPosedness well_posedness;
    bool fully_populated = false;
    std::size_t num_classes = 0;
    double entropy_base = 2.0;
    std::vector<LabelWitness> trivial_closure_witnesses;
};

AuditReport audit(const ToleranceSpace& space, const Classifier& r, double entropy_base = 2.0);

} // namespace tolspace
