#include "tolspace/labeling.hpp"

#include <string>

#include "tolspace/error.hpp"

namespace tolspace {

Classifier::Classifier(std::vector<int> labels, int num_labels)
    : labels_(std::move(labels)), num_labels_(num_labels) {
    if (num_labels_ < 1) throw ValidationError("num_labels must be at least 1");
    for (std::size_t x = 0; x < labels_.size(); ++x) {
        if (labels_[x] < 1 || labels_[x] > num_labels_) {
            throw ValidationError("label " + std::to_string(labels_[x]) + " of point " +
                                  std::to_string(x) + " is outside 1.." +
                                  std::to_string(num_labels_));
        }
    }
}

bool Classifier::fully_populated() const {
    std::vector<bool> seen(static_cast<std::size_t>(num_labels_) + 1, false);
    for (int l : labels_) seen[static_cast<std::size_t>(l)] = true;
    for (int c = 1; c <= num_labels_; ++c) {
        if (!seen[static_cast<std::size_t>(c)]) return false;
    }
    return true;
}

PointSet Classifier::segment(int c) const {
    PointSet out;
    for (std::size_t x = 0; x < labels_.size(); ++x) {
        if (labels_[x] == c) out.push_back(x);
    }
    return out;
}

void Classifier::check_aligned(const ToleranceSpace& space) const {
    if (labels_.size() != space.size()) {
        throw ValidationError("classifier has " + std::to_string(labels_.size()) +
                              " labels for " + std::to_string(space.size()) + " points");
    }
}

WorldModel::WorldModel(const ToleranceSpace& space, std::vector<int> labels, int num_labels)
    : classes_(std::move(labels), num_labels) {
    classes_.check_aligned(space);
    for (const auto& [x, y] : space.edges()) {
        if (classes_.label(x) != classes_.label(y)) {
            throw ValidationError("world model is not regular: related points '" + space.id(x) +
                                  "' and '" + space.id(y) + "' carry different classes");
        }
    }
    class_mass_.assign(static_cast<std::size_t>(num_labels), 0.0);
    for (std::size_t x = 0; x < space.size(); ++x) {
        class_mass_[static_cast<std::size_t>(classes_.label(x) - 1)] += space.probability(x);
    }
    for (int c = 1; c <= num_labels; ++c) {
        if (!(class_mass_[static_cast<std::size_t>(c - 1)] > 0.0)) {
            throw ValidationError("world class " + std::to_string(c) + " has zero mass");
        }
    }
}

} // namespace tolspace
