#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tolspace/accuracy.hpp"
#include "tolspace/audit.hpp"
#include "tolspace/category.hpp"
#include "tolspace/error.hpp"
#include "tolspace/features.hpp"
#include "tolspace/metric.hpp"
#include "tolspace/special.hpp"
#include "tolspace/weber.hpp"

namespace py = pybind11;
using namespace tolspace;

namespace {

py::object big(const BigInt& v) {
    return py::module_::import("builtins").attr("int")(py::str(v.str()));
}

py::object opt_pair(const std::optional<IndexPair>& p) {
    if (!p) return py::none();
    return py::make_tuple(p->first, p->second);
}

SoritesStrategy strategy(const std::string& s) {
    if (s == "first") return SoritesStrategy::first;
    if (s == "last") return SoritesStrategy::last;
    throw ValidationError("strategy must be 'first' or 'last'");
}

LaplacianKind laplacian_kind(const std::string& s) {
    if (s == "ad") return LaplacianKind::discrimination;
    if (s == "sigma") return LaplacianKind::chain;
    throw ValidationError("kind must be 'ad' or 'sigma'");
}

MeasureSpec measure(const std::string& s) {
    if (s == "uniform") return {MeasureKind::uniform};
    if (s == "half_gaussian" || s == "half-gaussian") return {MeasureKind::half_gaussian};
    throw ValidationError("measure must be 'uniform' or 'half_gaussian'");
}

py::dict info_dict(const DiscretizationInfo& i) {
    py::dict d;
    d["ratio_requested"] = i.ratio_requested;
    d["ratio_effective"] = i.ratio_effective;
    d["steps_per_factor"] = i.steps_per_factor;
    d["lo"] = i.lo;
    d["T"] = i.T;
    d["inner_mass"] = i.inner_mass;
    d["tail_mass"] = i.tail_mass;
    d["num_points"] = i.num_points;
    return d;
}

py::dict check_dict(const TheoremCheck& c) {
    py::dict d;
    d["verdict"] = to_string(c.verdict);
    d["hypothesis_value"] = c.hypothesis_value ? py::cast(*c.hypothesis_value) : py::none();
    d["reason"] = c.reason;
    d["checked"] = c.checked;
    d["witnesses"] = c.witnesses;
    d["violations"] = c.violations;
    return d;
}

std::pair<ToleranceSpace, std::vector<IndexPair>> unpack(DerivedSpace d) {
    return {std::move(d.space), std::move(d.asymmetric_pairs)};
}

} // namespace

PYBIND11_MODULE(_tolspace, m) {
    m.doc() = "Tolerance spaces, adversarial Doppelgangers and perceptual audits";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<GuardExceeded>(m, "GuardExceeded", base.ptr());
    py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());

    m.def("erf", &special::erf);
    m.def("erfc", &special::erfc);

    // relation_core
    py::class_<ToleranceSpace>(m, "ToleranceSpace")
        .def_static(
            "from_edges",
            [](std::vector<std::string> ids, const std::vector<IndexPair>& edges, std::vector<double> weights) {
                return ToleranceSpace::from_edges(std::move(ids), edges, std::move(weights));
            },
            py::arg("ids"), py::arg("edges"), py::arg("weights") = std::vector<double>{})
        .def_static("from_neighborhoods", &ToleranceSpace::from_neighborhoods, py::arg("ids"),
                    py::arg("neighborhoods"), py::arg("weights") = std::vector<double>{})
        .def("__len__", &ToleranceSpace::size)
        .def_property_readonly("ids", &ToleranceSpace::ids)
        .def_property_readonly("weights", [](const ToleranceSpace& s) {
            return std::vector<double>(s.weights().begin(), s.weights().end());
        })
        .def("index_of", [](const ToleranceSpace& s, const std::string& id) { return s.index_of(id); })
        .def("neighborhood", [](const ToleranceSpace& s, std::size_t x) {
            s.check_point(x);
            const auto d = s.neighborhood(x);
            return PointSet(d.begin(), d.end());
        })
        .def("related", &ToleranceSpace::related)
        .def("edges", &ToleranceSpace::edges)
        .def("probability", &ToleranceSpace::probability)
        .def("measure", [](const ToleranceSpace& s, const PointSet& set) { return s.measure(set); });

    m.def(
        "relation_from_covering",
        [](std::vector<std::string> ids, std::vector<PointSet> sets, std::vector<double> weights) {
            return unpack(relation_from_covering({std::move(ids), std::move(sets)}, std::move(weights)));
        },
        py::arg("ids"), py::arg("sets"), py::arg("weights") = std::vector<double>{},
        "Symmetrized space and the one-sided pairs of the covering.");
    m.def(
        "relation_from_contrast",
        [](std::vector<std::string> ids, std::vector<std::vector<double>> c, std::vector<double> eps,
           bool strict, std::vector<double> weights) {
            ContrastContext ctx{std::move(ids), std::move(c), std::move(eps),
                                strict ? ContrastOrder::less : ContrastOrder::less_equal};
            return unpack(relation_from_contrast(ctx, std::move(weights)));
        },
        py::arg("ids"), py::arg("contrast"), py::arg("epsilon"), py::arg("strict") = false,
        py::arg("weights") = std::vector<double>{});

    py::class_<ElementaryPartition>(m, "ElementaryPartition")
        .def_readonly("class_index", &ElementaryPartition::class_index)
        .def_readonly("classes", &ElementaryPartition::classes)
        .def("__len__", &ElementaryPartition::count);
    m.def("transitive_closure", &transitive_closure);
    m.def("is_transitive", [](const ToleranceSpace& s) {
        const auto t = is_transitive(s);
        return py::make_tuple(t.transitive, t.witness ? py::cast(*t.witness) : py::none());
    });
    m.def("is_optimal", &is_optimal);

    // classifier_audit
    py::class_<Classifier>(m, "Classifier")
        .def(py::init<std::vector<int>, int>(), py::arg("labels"), py::arg("num_labels"))
        .def_property_readonly("labels", &Classifier::labels)
        .def_property_readonly("num_labels", &Classifier::num_labels)
        .def("fully_populated", &Classifier::fully_populated)
        .def("__len__", &Classifier::size);
    py::class_<WorldModel>(m, "WorldModel")
        .def(py::init<const ToleranceSpace&, std::vector<int>, int>(), py::arg("space"), py::arg("labels"),
             py::arg("num_labels"))
        .def_property_readonly("labels", [](const WorldModel& w) { return w.classes().labels(); })
        .def_property_readonly("num_labels", &WorldModel::num_labels)
        .def_property_readonly("class_mass", &WorldModel::class_mass);

    m.def("adversarial_pairs", &adversarial_pairs);
    m.def("is_regular", &is_regular);
    m.def("stirling2", [](std::size_t p, std::size_t k) { return big(stirling2(p, k)); });
    m.def("well_posed", [](const ToleranceSpace& s, int labels) {
        const auto w = well_posed(s, labels);
        py::dict d;
        d["well_posed"] = w.well_posed;
        d["num_classes"] = w.num_classes;
        d["regular_classifier_count"] = w.stirling_count ? big(*w.stirling_count) : py::none();
        return d;
    });
    m.def(
        "enumerate_regular",
        [](const ToleranceSpace& s, int labels, bool labeled, std::size_t max_classes, std::size_t max_results) {
            EnumerationOptions o;
            o.labeled = labeled;
            o.max_classes = max_classes;
            o.max_results = max_results;
            std::vector<std::vector<int>> out;
            for_each_regular(s, labels, o, [&](const Classifier& c) { out.push_back(c.labels()); });
            return out;
        },
        py::arg("space"), py::arg("num_labels"), py::arg("labeled") = false, py::arg("max_classes") = 16,
        py::arg("max_results") = 1'000'000);
    m.def(
        "sorites_extract",
        [](const ToleranceSpace& s, const PointSet& chain, const Classifier& r, const std::string& st) {
            return sorites_extract(s, chain, r, strategy(st));
        },
        py::arg("space"), py::arg("chain"), py::arg("classifier"), py::arg("strategy") = "first");
    m.def("doppel_chain", &doppel_chain);
    m.def("ambiguity_region", &ambiguity_region);
    m.def("label_distribution", &label_distribution);
    m.def("conceptual_entropy", &conceptual_entropy, py::arg("space"), py::arg("classifier"), py::arg("x"),
          py::arg("base") = 2.0);
    m.def("fooling_rate", [](const ToleranceSpace& s, const Classifier& r, std::vector<std::size_t> target) {
        return fooling_rate(s, r, Attack{std::move(target)});
    });
    m.def("fooling_bound", &fooling_bound);
    m.def("max_fooling_attack", [](const ToleranceSpace& s, const Classifier& r) {
        const auto res = max_fooling_attack(s, r);
        return py::make_tuple(res.attack ? py::cast(res.attack->target) : py::none(), res.unattackable);
    });
    m.def("na_hazard_witness", [](const ToleranceSpace& s, const PointSet& subset) {
        return opt_pair(na_hazard_witness(s, subset));
    });
    m.def(
        "audit",
        [](const ToleranceSpace& s, const Classifier& r, double base) {
            const auto a = audit(s, r, base);
            py::dict d;
            d["regular"] = a.regular;
            d["adversarial_pairs"] = a.adversarial_pairs;
            d["ambiguity_region"] = a.ambiguity_region;
            d["entropy"] = a.entropy;
            d["fooling_bound"] = a.fooling_bound;
            d["well_posed"] = a.well_posedness.well_posed;
            d["regular_classifier_count"] =
                a.well_posedness.stirling_count ? big(*a.well_posedness.stirling_count) : py::none();
            d["fully_populated"] = a.fully_populated;
            d["num_classes"] = a.num_classes;
            d["entropy_base"] = a.entropy_base;
            return d;
        },
        py::arg("space"), py::arg("classifier"), py::arg("entropy_base") = 2.0);

    // perceptual_metric
    m.def("graph_distance", [](const ToleranceSpace& s, std::size_t x, std::size_t y) -> py::object {
        const auto d = graph_distance(s, x, y);
        if (d.is_infinite()) return py::none();
        return py::cast(d.hops());
    });
    m.def("perceptual_distance", py::overload_cast<const ToleranceSpace&, std::size_t, std::size_t>(
                                     &perceptual_distance));
    m.def("laplacian_ad", [](const ToleranceSpace& s, std::vector<double> f) {
        return laplacian_ad(s, PerceptualFunction(std::move(f))).values();
    });
    m.def("laplacian_sigma", [](const ToleranceSpace& s, std::vector<double> f) {
        return laplacian_sigma(s, PerceptualFunction(std::move(f))).values();
    });
    m.def("sqrt_degree", [](const ToleranceSpace& s) { return sqrt_degree(s).values(); });
    m.def(
        "is_perceptually_regular",
        [](const ToleranceSpace& s, std::vector<double> f, double tol) {
            return is_perceptually_regular(s, PerceptualFunction(std::move(f)), tol);
        },
        py::arg("space"), py::arg("f"), py::arg("tol") = 0.0);
    m.def("regular_decomposition", [](const ToleranceSpace& s, std::vector<double> f) {
        const auto d = regular_decomposition(s, PerceptualFunction(std::move(f)));
        return py::make_tuple(d.regular.values(), d.oscillating.values());
    });
    m.def(
        "laplacian_spectrum",
        [](const ToleranceSpace& s, const std::string& kind, std::size_t max_points) {
            return laplacian_spectrum(s, laplacian_kind(kind), max_points);
        },
        py::arg("space"), py::arg("kind"), py::arg("max_points") = 512);

    // features
    py::class_<FeatureRepresentation>(m, "FeatureRepresentation")
        .def(py::init<std::vector<std::string>, std::vector<std::vector<std::size_t>>>(),
             py::arg("feature_ids"), py::arg("assign"))
        .def_property_readonly("feature_ids", &FeatureRepresentation::feature_ids)
        .def_property_readonly("assign", &FeatureRepresentation::assignments)
        .def("clusters", &FeatureRepresentation::clusters)
        .def("attributed_count", &FeatureRepresentation::attributed_count);
    m.def("clique_dfr", &clique_dfr);
    m.def("is_dfr", [](const FeatureRepresentation& rep, const ToleranceSpace& s) {
        const auto c = is_dfr(rep, s);
        return py::make_tuple(c.holds, opt_pair(c.witness));
    });
    m.def("refine", [](const FeatureRepresentation& rep, const ToleranceSpace& s) {
        rep.check_aligned(s);
        return refine(rep, s.ids());
    });
    m.def("finite_dfr_witness", [](const FeatureRepresentation& rep, const ToleranceSpace& s, const Classifier& r) {
        const auto w = finite_dfr_witness(rep, s, r);
        return py::make_tuple(w.x, w.y, w.feature);
    });

    // weber_spaces
    m.def(
        "make_weber_interval",
        [](double a, double b, double ratio, double w, const std::string& ms) {
            auto ws = make_weber_interval({a, b, ratio, w}, measure(ms));
            return py::make_tuple(std::move(ws.space), ws.coordinates);
        },
        py::arg("a"), py::arg("b"), py::arg("ratio"), py::arg("w"), py::arg("measure") = "uniform");
    m.def(
        "make_weber_two_cell",
        [](double a, double b, double b_prime, double w, double ratio, const std::string& ms) {
            auto ws = make_weber_two_cell(a, b, b_prime, w, ratio, measure(ms));
            return py::make_tuple(std::move(ws.space), ws.coordinates);
        },
        py::arg("a"), py::arg("b"), py::arg("b_prime"), py::arg("w"), py::arg("ratio"),
        py::arg("measure") = "uniform");

    py::class_<RayInstance>(m, "RayInstance")
        .def_readonly("space", &RayInstance::space)
        .def_readonly("classifier", &RayInstance::classifier)
        .def_readonly("coordinates", &RayInstance::coordinates)
        .def_readonly("w", &RayInstance::w)
        .def_readonly("epsilon", &RayInstance::epsilon)
        .def_property_readonly("info", [](const RayInstance& i) { return info_dict(i.info); });
    py::class_<KlineInstance>(m, "KlineInstance")
        .def_readonly("space", &KlineInstance::space)
        .def_readonly("world", &KlineInstance::world)
        .def_readonly("classifier", &KlineInstance::classifier)
        .def_readonly("coordinates", &KlineInstance::coordinates)
        .def_readonly("w", &KlineInstance::w)
        .def_readonly("epsilon", &KlineInstance::epsilon)
        .def_property_readonly("info", [](const KlineInstance& i) { return info_dict(i.info); });
    m.def(
        "make_weber_ray_gaussian",
        [](double w, double eps, double ratio, double lo, double T) {
            return make_weber_ray_gaussian(w, eps, {ratio, lo, T});
        },
        py::arg("w"), py::arg("epsilon"), py::arg("ratio") = 1.01, py::arg("lo") = 0.0, py::arg("T") = 6.0);
    m.def(
        "make_kline_gaussian",
        [](double w, double eps, double ratio, double lo, double T) {
            return make_kline_gaussian(w, eps, {ratio, lo, T});
        },
        py::arg("w"), py::arg("epsilon"), py::arg("ratio") = 1.01, py::arg("lo") = 0.0, py::arg("T") = 6.0);
    m.def("threshold_classifier", &threshold_classifier);
    m.def("ambiguity_bound", &ambiguity_bound);
    m.def("kline_ambiguity_mass", &kline_ambiguity_mass);
    m.def("kline_accuracy", &kline_accuracy);
    m.def("kline_mass_maximizer", [](double w) {
        const auto k = kline_mass_maximizer(w);
        return py::make_tuple(k.epsilon_star, k.mass);
    });

    // accuracy_analysis
    m.def("accuracy", &accuracy);
    m.def("recall_rates", &recall_rates);
    m.def("k_bar", &k_bar);
    m.def("check_low_recall_unsafety", [](const ToleranceSpace& s, const WorldModel& w, const Classifier& r) {
        return check_dict(check_low_recall_unsafety(s, w, r));
    });
    m.def("check_hypersensitivity", [](const ToleranceSpace& s, const WorldModel& w, const Classifier& r) {
        return check_dict(check_hypersensitivity(s, w, r));
    });
    m.def("is_hyper_sensitive", &is_hyper_sensitive);
    m.def("tradeoff_scan", [](const KlineInstance& inst, const std::vector<double>& eps) {
        const auto t = tradeoff_scan(inst, eps);
        py::list rows;
        for (const auto& r : t.rows) rows.append(py::make_tuple(r.epsilon, r.accuracy, r.adv_mass));
        py::dict d;
        d["rows"] = rows;
        d["accuracy_strictly_decreasing"] = t.accuracy_strictly_decreasing;
        d["mass_unimodal"] = t.mass_unimodal;
        d["grid_argmax"] = t.grid_argmax;
        d["epsilon_star"] = t.epsilon_star;
        d["analytic_mass_star"] = t.analytic_mass_star;
        d["interior_maximum"] = t.interior_maximum;
        return d;
    });

    // category_structure
    py::class_<SimilarityScale>(m, "SimilarityScale")
        .def(py::init<std::vector<std::vector<double>>>(), py::arg("matrix"))
        .def_property_readonly("matrix", &SimilarityScale::matrix);
    py::class_<TverskyModel>(m, "TverskyModel")
        .def(py::init<double, double, double, std::vector<double>, FeatureRepresentation>(), py::arg("alpha"),
             py::arg("beta"), py::arg("theta"), py::arg("salience"), py::arg("features"))
        .def("similarity", &TverskyModel::similarity)
        .def("point_salience", &TverskyModel::point_salience)
        .def("scale", &TverskyModel::scale);
    m.def("affinity", [](const ToleranceSpace& s, const SimilarityScale& sim, std::size_t x, const PointSet& D) {
        return affinity(s, sim, x, D);
    });
    m.def("prototypes", [](const ToleranceSpace& s, const SimilarityScale& sim, const PointSet& D) {
        return prototypes(s, sim, D);
    });
    m.def("fringe", [](const ToleranceSpace& s, const SimilarityScale& sim, const PointSet& D) {
        return fringe(s, sim, D);
    });
    m.def("m_core", [](const ToleranceSpace& s, const SimilarityScale& sim, const PointSet& D, double M) {
        return m_core(s, sim, D, M);
    });
    m.def("tau_fringe", [](const ToleranceSpace& s, const SimilarityScale& sim, const PointSet& D, double tau) {
        return tau_fringe(s, sim, D, tau);
    });
    m.def("tversky_affinity_closed_form",
          [](const TverskyModel& t, const ToleranceSpace& s, std::size_t x, const PointSet& D) {
              return tversky_affinity_closed_form(t, s, x, D);
          });
    m.def("structural_entropy", [](const ToleranceSpace& s, const PointSet& D) { return structural_entropy(s, D); });
    m.def("index_of_coincidence",
          [](const ToleranceSpace& s, const PointSet& D) { return index_of_coincidence(s, D); });
}
