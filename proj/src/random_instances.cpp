#include "tolspace/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace tolspace::random {

namespace {

std::vector<double> make_weights(Rng& rng, std::size_t n, Weights mode) {
    std::vector<double> w(n, 1.0);
    if (mode == Weights::uniform) return w;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::bernoulli_distribution zero(0.15);
    for (double& v : w) v = u(rng);
    if (mode == Weights::with_zeros) {
        for (double& v : w) {
            if (zero(rng)) v = 0.0;
        }
        if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) w[0] = 1.0;
    }
    return w;
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

} // namespace

ToleranceSpace random_space(Rng& rng, std::size_t n, double p, Weights weights) {
    std::bernoulli_distribution coin(p);
    std::vector<IndexPair> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng)) edges.emplace_back(i, j);
        }
    }
    return ToleranceSpace::from_edges(default_point_ids(n), edges, make_weights(rng, n, weights));
}

ToleranceSpace random_blocks(Rng& rng, std::size_t n, std::size_t blocks, double p,
                             Weights weights) {
    blocks = std::clamp<std::size_t>(blocks, 1, n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> block(n);
    for (std::size_t i = 0; i < n; ++i) block[order[i]] = i < blocks ? i : uniform_index(rng, blocks);
    std::vector<std::vector<std::size_t>> members(blocks);
    for (std::size_t x = 0; x < n; ++x) members[block[x]].push_back(x);
    std::bernoulli_distribution coin(p);
    std::vector<IndexPair> edges;
    for (auto& m : members) {
        std::shuffle(m.begin(), m.end(), rng);
        for (std::size_t i = 0; i + 1 < m.size(); ++i) edges.emplace_back(m[i], m[i + 1]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = i + 2; j < m.size(); ++j) {
                if (coin(rng)) edges.emplace_back(m[i], m[j]);
            }
        }
    }
    return ToleranceSpace::from_edges(default_point_ids(n), edges, make_weights(rng, n, weights));
}

Classifier random_classifier(Rng& rng, std::size_t n, int m) {
    std::uniform_int_distribution<int> lab(1, m);
    std::vector<int> labels(n);
    for (int& l : labels) l = lab(rng);
    return Classifier(std::move(labels), m);
}

std::optional<WorldModel> random_regular_world(Rng& rng, const ToleranceSpace& space, int m) {
    const auto part = transitive_closure(space);
    std::vector<std::size_t> heavy;
    std::vector<std::size_t> rest;
    for (std::size_t c = 0; c < part.count(); ++c) {
        (space.measure(part.classes[c]) > 0.0 ? heavy : rest).push_back(c);
    }
    if (heavy.size() < static_cast<std::size_t>(m)) return std::nullopt;
    std::shuffle(heavy.begin(), heavy.end(), rng);
    std::uniform_int_distribution<int> lab(1, m);
    std::vector<int> class_label(part.count());
    for (std::size_t i = 0; i < heavy.size(); ++i) {
        class_label[heavy[i]] = i < static_cast<std::size_t>(m) ? static_cast<int>(i) + 1 : lab(rng);
    }
    for (std::size_t c : rest) class_label[c] = lab(rng);
    std::vector<int> labels(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) labels[x] = class_label[part.class_index[x]];
    return WorldModel(space, std::move(labels), m);
}

Classifier perturb(Rng& rng, const WorldModel& world, double flip) {
    const int m = world.num_labels();
    std::bernoulli_distribution coin(flip);
    std::uniform_int_distribution<int> shift(1, std::max(1, m - 1));
    std::vector<int> labels = world.classes().labels();
    for (int& l : labels) {
        if (m > 1 && coin(rng)) l = (l - 1 + shift(rng)) % m + 1;
    }
    return Classifier(std::move(labels), m);
}

TverskyModel random_tversky(Rng& rng, const ToleranceSpace& space) {
    const auto part = transitive_closure(space);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_real_distribution<double> sal(0.1, 2.0);
    std::uniform_real_distribution<double> coef(0.0, 2.0);
    std::bernoulli_distribution extra(0.3);
    std::vector<std::string> ids;
    std::vector<double> salience;
    std::vector<std::vector<std::size_t>> assign(space.size());
    for (std::size_t c = 0; c < part.count(); ++c) {
        const int k = count(rng);
        for (int i = 0; i < k; ++i) {
            const std::size_t f = ids.size();
            ids.push_back("c" + std::to_string(c) + "f" + std::to_string(i));
            salience.push_back(sal(rng));
            for (std::size_t x : part.classes[c]) assign[x].push_back(f);
        }
        for (std::size_t x : part.classes[c]) {
            if (extra(rng)) {
                assign[x].push_back(ids.size());
                ids.push_back("p" + std::to_string(x));
                salience.push_back(0.0);
            }
        }
    }
    return TverskyModel(coef(rng), coef(rng), coef(rng) + 0.1, std::move(salience),
                        FeatureRepresentation(std::move(ids), std::move(assign)));
}

std::vector<double> random_function(Rng& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> f(n);
    for (double& v : f) v = u(rng);
    return f;
}

} // namespace tolspace::random
