#pragma once

#include <cstddef>
#include <vector>

#include "tolspace/relation.hpp"

namespace tolspace {

/// A total labelling of the points into labels 1..m (a finite segmentation).
class Classifier {
public:
    Classifier(std::vector<int> labels, int num_labels);

    std::size_t size() const { return labels_.size(); }
    int num_labels() const { return num_labels_; }
    int label(std::size_t x) const { return labels_.at(x); }
    const std::vector<int>& labels() const { return labels_; }

    bool fully_populated() const;
    /// Points carrying label c.
    PointSet segment(int c) const;

    /// Throws unless the labelling has one entry per point of `space`.
    void check_aligned(const ToleranceSpace& space) const;

private:
    std::vector<int> labels_;
    int num_labels_;
};

/// A Doppelganger attack x -> a(x); each target must lie in D(x).
struct Attack {
    std::vector<std::size_t> target;
};

/// Ground-truth classes i(x).  Construction checks that the labelling is
/// constant on every elementary class and that each class has positive mass.
class WorldModel {
public:
    WorldModel(const ToleranceSpace& space, std::vector<int> labels, int num_labels);

    const Classifier& classes() const { return classes_; }
    int num_labels() const { return classes_.num_labels(); }
    int label(std::size_t x) const { return classes_.label(x); }
    /// Normalized mass of each class, indexed 0..m-1.
    const std::vector<double>& class_mass() const { return class_mass_; }

private:
    Classifier classes_;
    std::vector<double> class_mass_;
};

} // namespace tolspace
