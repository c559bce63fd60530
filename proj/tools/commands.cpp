#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "io.hpp"
#include "tolspace/accuracy.hpp"
#include "tolspace/audit.hpp"
#include "tolspace/category.hpp"
#include "tolspace/error.hpp"
#include "tolspace/features.hpp"
#include "tolspace/metric.hpp"
#include "tolspace/random_instances.hpp"
#include "tolspace/weber.hpp"

namespace tolspace::cli {

namespace {

using io::json;

constexpr const char* kNormalization = "probability: raw weights divided by their total";
constexpr std::size_t kMaxPoints = 100000;
constexpr std::size_t kMaxClasses = 16;
constexpr std::size_t kMaxDense = 512;

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::string output;
};

json envelope(const std::string& command, double entropy_base = 2.0) {
    return {{"command", command}, {"entropy_base", entropy_base}, {"normalization", kNormalization}};
}

void emit_text(Context& ctx, const std::string& text) {
    if (ctx.output.empty()) {
        ctx.out << text;
    } else {
        io::write_text(ctx.output, text);
    }
}

void emit(Context& ctx, const json& report) { emit_text(ctx, io::dump(report)); }

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

/// Limit option whose default is a guard; raising it prints a warning.
struct Guard {
    std::string name;
    std::size_t value;
    std::size_t fallback;

    void warn(std::ostream& err) const {
        if (value > fallback) {
            err << "warning: " << name << " guard raised from " << fallback << " to " << value
                << "\n";
        }
    }
};

void check_size(const ToleranceSpace& space, const Guard& g, std::ostream& err) {
    g.warn(err);
    if (space.size() > g.value) {
        throw GuardExceeded("space has " + std::to_string(space.size()) + " points, above the " +
                            g.name + " guard of " + std::to_string(g.value));
    }
}

io::LoadedSpace load_space(const std::string& path, const Guard& g, std::ostream& err) {
    io::LoadedSpace ls = io::space_from_json(io::load_json(path));
    check_size(ls.space, g, err);
    if (!ls.asymmetric_pairs.empty()) {
        err << "warning: " << path << ": relation symmetrized, " << ls.asymmetric_pairs.size()
            << " one-sided pair(s)\n";
    }
    return ls;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

json optional_pair(const ToleranceSpace& space, const std::optional<IndexPair>& p) {
    if (!p) return nullptr;
    return json::array({space.id(p->first), space.id(p->second)});
}

json check_json(const ToleranceSpace& space, const TheoremCheck& c) {
    json j = {{"verdict", to_string(c.verdict)},
              {"checked", io::ids_json(space, c.checked)},
              {"witnesses", io::pairs_json(space, c.witnesses)},
              {"violations", io::ids_json(space, c.violations)}};
    j["hypothesis_value"] = c.hypothesis_value ? json(*c.hypothesis_value) : json(nullptr);
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

json info_json(const DiscretizationInfo& info) {
    return {{"ratio_requested", info.ratio_requested}, {"ratio_effective", info.ratio_effective},
            {"steps_per_factor", info.steps_per_factor}, {"lo", info.lo}, {"T", info.T},
            {"inner_mass", info.inner_mass}, {"tail_mass", info.tail_mass},
            {"num_points", info.num_points}};
}

json counts_json(const std::optional<BigInt>& v) {
    if (!v) return nullptr;
    return v->str();
}

// ---------------------------------------------------------------- audit

int cmd_audit(Context& ctx, const std::string& space_path, const std::string& cls_path,
              double base, const Guard& g) {
    auto ls = load_space(space_path, g, ctx.err);
    const auto& space = ls.space;
    const Classifier r = io::classifier_from_json(io::load_json(cls_path), space);
    const AuditReport a = audit(space, r, base);
    json rep = envelope("audit", a.entropy_base);
    rep["points"] = space.ids();
    rep["regular"] = a.regular;
    rep["adversarial_pairs"] = io::pairs_json(space, a.adversarial_pairs);
    rep["ambiguity_region"] = io::ids_json(space, a.ambiguity_region);
    json ent = json::array();
    for (const auto& e : a.entropy) ent.push_back(e ? json(*e) : json(nullptr));
    rep["entropy"] = ent;
    rep["fooling_bound"] = a.fooling_bound;
    rep["fully_populated"] = a.fully_populated;
    rep["num_classes"] = a.num_classes;
    rep["num_labels"] = r.num_labels();
    rep["well_posed"] = a.well_posedness.well_posed;
    rep["regular_classifier_count"] = counts_json(a.well_posedness.stirling_count);
    json tw = json::array();
    for (const auto& w : a.trivial_closure_witnesses) {
        tw.push_back({{"label", w.label}, {"point", space.id(w.point)},
                      {"doppelganger", space.id(w.doppelganger)}});
    }
    rep["trivial_closure_witnesses"] = tw;
    rep["symmetrized_pairs"] = io::pairs_json(space, ls.asymmetric_pairs);
    emit(ctx, rep);
    return 0;
}

// ---------------------------------------------------------------- accuracy

int cmd_accuracy(Context& ctx, const std::string& space_path, const std::string& world_path,
                 const std::string& cls_path, const Guard& g) {
    auto ls = load_space(space_path, g, ctx.err);
    const auto& space = ls.space;
    const WorldModel world = io::world_from_json(io::load_json(world_path), space);
    const Classifier r = io::classifier_from_json(io::load_json(cls_path), space);
    if (r.num_labels() != world.num_labels()) {
        throw ValidationError("classifier has " + std::to_string(r.num_labels()) +
                              " labels but the world model has " +
                              std::to_string(world.num_labels()));
    }
    json rep = envelope("accuracy");
    rep["accuracy"] = accuracy(space, world, r);
    rep["recall_rates"] = recall_rates(space, world, r);
    try {
        rep["k_bar"] = k_bar(space, world);
    } catch (const PreconditionError& e) {
        rep["k_bar"] = nullptr;
        rep["k_bar_note"] = e.what();
    }
    const TheoremCheck low = check_low_recall_unsafety(space, world, r);
    const TheoremCheck high = check_hypersensitivity(space, world, r);
    rep["low_recall_unsafety"] = check_json(space, low);
    rep["hypersensitivity"] = check_json(space, high);
    rep["hyper_sensitive"] = is_hyper_sensitive(space, world, r);
    emit(ctx, rep);
    if (low.verdict == Verdict::violated || high.verdict == Verdict::violated) {
        ctx.err << "invariant violation: a no-trade-off conclusion failed on this instance\n";
        return 2;
    }
    return 0;
}

// ---------------------------------------------------------------- attack

int cmd_attack(Context& ctx, const std::string& space_path, const std::string& cls_path,
               const std::string& attack_path, const Guard& g) {
    auto ls = load_space(space_path, g, ctx.err);
    const auto& space = ls.space;
    const Classifier r = io::classifier_from_json(io::load_json(cls_path), space);
    json rep = envelope("attack");
    const double bound = fooling_bound(space, r);
    rep["fooling_bound"] = bound;
    Attack a;
    if (!attack_path.empty()) {
        a = io::attack_from_json(io::load_json(attack_path), space);
        rep["constructed"] = false;
    } else {
        const MaxFoolingResult m = max_fooling_attack(space, r);
        rep["constructed"] = true;
        rep["unattackable"] = io::ids_json(space, m.unattackable);
        if (m.attack) {
            a = *m.attack;
        } else {
            // Unattackable points keep a(x) = x; the rest go to their least differing neighbour.
            for (std::size_t x = 0; x < space.size(); ++x) {
                std::size_t t = x;
                for (std::size_t y : space.neighborhood(x)) {
                    if (r.label(y) != r.label(x)) {
                        t = y;
                        break;
                    }
                }
                a.target.push_back(t);
            }
        }
    }
    const double rate = fooling_rate(space, r, a);
    rep["target"] = io::ids_json(space, a.target);
    rep["fooling_rate"] = rate;
    emit(ctx, rep);
    if (rate > bound + 1e-12) {
        ctx.err << "invariant violation: fooling rate " << fmt12(rate)
                << " exceeds the ambiguity bound " << fmt12(bound) << "\n";
        return 2;
    }
    return 0;
}

// ---------------------------------------------------------------- wellposed

int cmd_wellposed(Context& ctx, const std::string& space_path, int m, bool enumerate, bool labeled,
                  const Guard& classes, std::size_t max_results, const Guard& g) {
    auto ls = load_space(space_path, g, ctx.err);
    const auto& space = ls.space;
    const WellPosedness wp = well_posed(space, m);
    json rep = envelope("wellposed");
    rep["well_posed"] = wp.well_posed;
    rep["num_classes"] = wp.num_classes;
    rep["num_labels"] = m;
    rep["regular_classifier_count"] = counts_json(wp.stirling_count);
    if (enumerate) {
        classes.warn(ctx.err);
        EnumerationOptions opts;
        opts.max_classes = classes.value;
        opts.max_results = max_results;
        opts.labeled = labeled;
        json list = json::array();
        for_each_regular(space, m, opts, [&](const Classifier& c) { list.push_back(c.labels()); });
        rep["labeled"] = labeled;
        rep["classifiers"] = list;
        rep["enumerated"] = list.size();
    }
    emit(ctx, rep);
    return 0;
}

// ---------------------------------------------------------------- sorites

int cmd_sorites(Context& ctx, const std::string& space_path, const std::string& cls_path,
                const std::string& chain_arg, const std::string& from, const std::string& to,
                const std::string& strategy, const Guard& g) {
    auto ls = load_space(space_path, g, ctx.err);
    const auto& space = ls.space;
    const Classifier r = io::classifier_from_json(io::load_json(cls_path), space);
    PointSet chain;
    if (!chain_arg.empty()) {
        if (!from.empty() || !to.empty()) throw ValidationError("give either --chain or --from/--to");
        for (const auto& t : split_list(chain_arg)) chain.push_back(io::resolve_point(t, space));
    } else {
        if (from.empty() || to.empty()) throw ValidationError("sorites needs --chain or both --from and --to");
        const std::size_t x = io::resolve_point(from, space);
        const std::size_t y = io::resolve_point(to, space);
        auto c = doppel_chain(space, x, y);
        if (!c) {
            throw PreconditionError("'" + from + "' and '" + to +
                                    "' lie in different elementary classes; no chain joins them");
        }
        chain = std::move(*c);
    }
    json rep = envelope("sorites");
    rep["chain"] = io::ids_json(space, chain);
    json res = json::object();
    auto one = [&](SoritesStrategy s, const char* name) {
        const IndexPair p = sorites_extract(space, chain, r, s);
        res[name] = {{"pair", {space.id(p.first), space.id(p.second)}},
                     {"labels", {r.label(p.first), r.label(p.second)}}};
    };
    if (strategy == "first" || strategy == "both") one(SoritesStrategy::first, "first");
    if (strategy == "last" || strategy == "both") one(SoritesStrategy::last, "last");
    rep["strategies"] = res;
    emit(ctx, rep);
    return 0;
}

// ---------------------------------------------------------------- dfr

json pair_check_json(const ToleranceSpace& space, const PairCheck& c) {
    return {{"holds", c.holds}, {"witness", optional_pair(space, c.witness)}};
}

int cmd_dfr(Context& ctx, const std::string& action, const std::vector<std::string>& files,
            const Guard& g) {
    const std::size_t need = action == "build" ? 1 : action == "witness" ? 3 : 2;
    if (files.size() != need) {
        throw ValidationError("dfr " + action + " expects " + std::to_string(need) + " file(s)");
    }
    auto ls = load_space(files[0], g, ctx.err);
    const auto& space = ls.space;
    if (action == "build") {
        emit(ctx, io::features_to_json(clique_dfr(space)));
        return 0;
    }
    const FeatureRepresentation rep = io::features_from_json(io::load_json(files[1]));
    rep.check_aligned(space);
    if (action == "refine") {
        emit(ctx, io::features_to_json(refine(rep, space.ids())));
        return 0;
    }
    if (action == "check") {
        json out = envelope("dfr check");
        out["dfr"] = pair_check_json(space, is_dfr(rep, space));
        const auto law = satisfies_law_of_indiscriminability(rep, space, true);
        out["law_of_indiscriminability"] = pair_check_json(space, law.law);
        out["converse"] = pair_check_json(space, *law.converse);
        out["transitivity_confirmed"] = law.transitivity_confirmed;
        out["attributed_features"] = rep.attributed_count();
        json hyp = json::array();
        for (std::size_t f = 0; f < rep.num_features(); ++f) {
            if (semantic_cluster(rep, f).hypothetical) hyp.push_back(rep.feature_ids()[f]);
        }
        out["hypothetical_features"] = hyp;
        emit(ctx, out);
        return 0;
    }
    if (action == "witness") {
        const Classifier r = io::classifier_from_json(io::load_json(files[2]), space);
        const AdversarialWitness w = finite_dfr_witness(rep, space, r);
        json out = envelope("dfr witness");
        out["x"] = space.id(w.x);
        out["y"] = space.id(w.y);
        out["feature"] = rep.feature_ids()[w.feature];
        out["labels"] = {r.label(w.x), r.label(w.y)};
        out["attributed_features"] = rep.attributed_count();
        out["num_labels"] = r.num_labels();
        emit(ctx, out);
        return 0;
    }
    throw ValidationError("unknown dfr action '" + action + "' (build, check, refine, witness)");
}

// ---------------------------------------------------------------- metric

json hops_json(const ExtendedDistance& d) {
    if (d.is_infinite()) return nullptr;
    return d.hops();
}

int cmd_metric(Context& ctx, const std::string& space_path, const std::string& from,
               const Guard& dense, const Guard& g) {
    auto ls = load_space(space_path, g, ctx.err);
    const auto& space = ls.space;
    json rep = envelope("metric");
    rep["points"] = space.ids();
    rep["infinite_hops"] = "null";
    if (!from.empty()) {
        const std::size_t x = io::resolve_point(from, space);
        const auto d = distances_from(space, x);
        json hops = json::array(), dist = json::array();
        for (const auto& e : d) {
            hops.push_back(hops_json(e));
            dist.push_back(perceptual_distance(e));
        }
        json st = json::array();
        for (const auto& s : strata(space, x)) {
            st.push_back({{"hops", hops_json(s.hops)}, {"radius", s.radius},
                          {"points", io::ids_json(space, s.points)}});
        }
        rep["source"] = space.id(x);
        rep["hops"] = hops;
        rep["distance"] = dist;
        rep["strata"] = st;
    } else {
        check_size(space, dense, ctx.err);
        json hops = json::array(), dist = json::array();
        for (std::size_t x = 0; x < space.size(); ++x) {
            json hr = json::array(), dr = json::array();
            for (const auto& e : distances_from(space, x)) {
                hr.push_back(hops_json(e));
                dr.push_back(perceptual_distance(e));
            }
            hops.push_back(hr);
            dist.push_back(dr);
        }
        rep["hops"] = hops;
        rep["distance"] = dist;
    }
    emit(ctx, rep);
    return 0;
}

// ---------------------------------------------------------------- laplacian

int cmd_laplacian(Context& ctx, const std::string& space_path, const std::string& kind,
                  const std::string& fn_path, bool spectrum, const Guard& dense, const Guard& g) {
    auto ls = load_space(space_path, g, ctx.err);
    const auto& space = ls.space;
    LaplacianKind k;
    if (kind == "ad") k = LaplacianKind::discrimination;
    else if (kind == "sigma") k = LaplacianKind::chain;
    else throw ValidationError("--kind must be 'ad' or 'sigma'");
    json rep = envelope("laplacian");
    rep["kind"] = kind;
    rep["points"] = space.ids();
    if (k == LaplacianKind::discrimination) rep["kernel"] = sqrt_degree(space).values();
    if (!fn_path.empty()) {
        json fj = io::load_json(fn_path);
        if (fj.is_object() && fj.contains("values")) fj = fj["values"];
        const PerceptualFunction f(io::real_vector(fj, "function"));
        f.check_aligned(space);
        if (k == LaplacianKind::discrimination) {
            rep["values"] = laplacian_ad(space, f).values();
        } else {
            rep["values"] = laplacian_sigma(space, f).values();
            const auto dec = regular_decomposition(space, f);
            rep["regular_part"] = dec.regular.values();
            rep["oscillating_part"] = dec.oscillating.values();
            rep["perceptually_regular"] = is_perceptually_regular(space, f, 1e-12);
        }
    }
    if (spectrum) {
        dense.warn(ctx.err);
        rep["spectrum"] = laplacian_spectrum(space, k, dense.value);
    }
    emit(ctx, rep);
    return 0;
}

// ---------------------------------------------------------------- category

int cmd_category(Context& ctx, const std::string& space_path, const std::string& sim_path,
                 const std::string& sets_path, std::optional<double> M, std::optional<double> tau,
                 const Guard& g) {
    auto ls = load_space(space_path, g, ctx.err);
    const auto& space = ls.space;
    const io::Similarity sim = io::similarity_from_json(io::load_json(sim_path), space);
    json sj = io::load_json(sets_path);
    if (sj.is_object() && sj.contains("sets")) sj = sj["sets"];
    if (!sj.is_array()) throw ValidationError(sets_path + ": expected an array of point sets");
    const ElementaryPartition part = transitive_closure(space);
    json results = json::array();
    for (std::size_t i = 0; i < sj.size(); ++i) {
        const PointSet D = io::point_set_from_json(sj[i], space);
        if (D.empty()) throw ValidationError("point set " + std::to_string(i) + " is empty");
        json r;
        r["set"] = io::ids_json(space, D);
        json aff = json::array();
        for (std::size_t x : D) aff.push_back(affinity(space, sim.scale, x, D));
        r["affinity"] = aff;
        const AffinityBounds b = affinity_bounds(space, sim.scale, D);
        r["affinity_bounds"] = {b.lo, b.hi};
        r["prototypes"] = io::ids_json(space, prototypes(space, sim.scale, D));
        r["fringe"] = io::ids_json(space, fringe(space, sim.scale, D));
        if (M) r["m_core"] = io::ids_json(space, m_core(space, sim.scale, D, *M));
        if (tau) r["tau_fringe"] = io::ids_json(space, tau_fringe(space, sim.scale, D, *tau));
        const auto split = split_class(space, D);
        r["split_class"] = split ? io::ids_json(space, part.classes[*split]) : json(nullptr);
        if (space.measure(D) > 0.0) r["expected_affinity"] = expected_affinity(space, sim.scale, D);
        else r["expected_affinity"] = nullptr;
        try {
            r["structural_entropy"] = structural_entropy(space, D);
            r["index_of_coincidence"] = index_of_coincidence(space, D);
        } catch (const PreconditionError& e) {
            r["structural_entropy"] = nullptr;
            r["index_of_coincidence"] = nullptr;
            r["entropy_note"] = e.what();
        }
        if (sim.tversky) {
            const auto& model = *sim.tversky;
            r["importance"] = importance(model, space, D);
            json cf = json::array();
            std::optional<std::string> failure;
            for (std::size_t x : D) {
                if (auto f = tversky_hypothesis_failure(model, space, x, D)) {
                    if (!failure) failure = space.id(x) + ": " + *f;
                    cf.push_back(nullptr);
                } else {
                    cf.push_back(tversky_affinity_closed_form(model, space, x, D));
                }
            }
            r["closed_form_affinity"] = cf;
            if (failure) r["closed_form_note"] = *failure;
        }
        results.push_back(r);
    }
    json rep = envelope("category");
    rep["tie_tolerance"] = kTieTolerance;
    rep["results"] = results;
    emit(ctx, rep);
    return 0;
}

// ---------------------------------------------------------------- weber gen

struct WeberArgs {
    std::string kind;
    std::string dir;
    std::string measure = "uniform";
    double w = 1.2;
    double epsilon = 1.0;
    double a = 1.0;
    double b = 2.0;
    double b_prime = 4.0;
    double ratio = 1.01;
    double lo = 0.0;
    double T = 6.0;
};

MeasureSpec measure_of(const std::string& s) {
    if (s == "uniform") return {MeasureKind::uniform};
    if (s == "half-gaussian" || s == "half_gaussian") return {MeasureKind::half_gaussian};
    throw ValidationError("--measure must be 'uniform' or 'half-gaussian'");
}

int cmd_weber(Context& ctx, const WeberArgs& a) {
    namespace fs = std::filesystem;
    if (a.dir.empty()) throw ValidationError("weber gen needs an output directory (-o DIR)");
    json meta = {{"kind", a.kind}, {"w", a.w}, {"normalization", kNormalization}};
    json space_j, cls_j, world_j;
    std::vector<double> coords;
    if (a.kind == "interval" || a.kind == "two-cell") {
        const WeberSpace ws = a.kind == "interval"
                                  ? make_weber_interval({a.a, a.b, a.ratio, a.w}, measure_of(a.measure))
                                  : make_weber_two_cell(a.a, a.b, a.b_prime, a.w, a.ratio,
                                                        measure_of(a.measure));
        space_j = io::space_to_json(ws.space);
        coords = ws.coordinates;
        meta["a"] = a.a;
        meta["b"] = a.b;
        if (a.kind == "two-cell") meta["b_prime"] = a.b_prime;
        meta["ratio"] = a.ratio;
        meta["measure"] = a.measure;
        meta["num_points"] = ws.space.size();
        meta["num_classes"] = transitive_closure(ws.space).count();
    } else if (a.kind == "ray" || a.kind == "kline") {
        const GaussianGridSpec spec{a.ratio, a.lo, a.T};
        meta["epsilon"] = a.epsilon;
        if (a.kind == "ray") {
            const RayInstance inst = make_weber_ray_gaussian(a.w, a.epsilon, spec);
            space_j = io::space_to_json(inst.space);
            cls_j = io::classifier_to_json(inst.classifier);
            coords = inst.coordinates;
            meta["measure"] = "half-gaussian";
            meta["discretization"] = info_json(inst.info);
            meta["discrete"] = {{"ambiguity_mass", fooling_bound(inst.space, inst.classifier)}};
            meta["oracles"] = {{"ambiguity_bound", ambiguity_bound(a.w, a.epsilon)}};
        } else {
            const KlineInstance inst = make_kline_gaussian(a.w, a.epsilon, spec);
            space_j = io::space_to_json(inst.space);
            cls_j = io::classifier_to_json(inst.classifier);
            world_j = io::classifier_to_json(inst.world.classes());
            coords = inst.coordinates;
            meta["measure"] = "gaussian";
            meta["discretization"] = info_json(inst.info);
            meta["discrete"] = {{"accuracy", accuracy(inst.space, inst.world, inst.classifier)}};
            meta["oracles"] = {{"kline_accuracy", kline_accuracy(a.epsilon)},
                               {"kline_ambiguity_mass", kline_ambiguity_mass(a.w, a.epsilon)},
                               {"ambiguity_bound", ambiguity_bound(a.w, a.epsilon)}};
        }
    } else {
        throw ValidationError("--kind must be interval, two-cell, ray or kline");
    }
    meta["coordinates"] = coords;
    fs::create_directories(a.dir);
    json written = json::array();
    auto put = [&](const char* name, const json& j) {
        const std::string p = (fs::path(a.dir) / name).string();
        io::write_text(p, io::dump(j));
        written.push_back(p);
    };
    put("space.json", space_j);
    put("meta.json", meta);
    if (!cls_j.is_null()) put("classifier.json", cls_j);
    if (!world_j.is_null()) put("world.json", world_j);
    ctx.out << io::dump({{"written", written}});
    return 0;
}

// ---------------------------------------------------------------- tradeoff

struct TradeoffArgs {
    double w = 1.2;
    double eps_lo = 0.05;
    double eps_hi = 3.0;
    std::size_t steps = 60;
    std::string epsilons;
    double ratio = 1.01;
    double T = 6.0;
    std::string summary;
};

int cmd_tradeoff(Context& ctx, const TradeoffArgs& a) {
    std::vector<double> eps;
    if (!a.epsilons.empty()) {
        for (const auto& t : split_list(a.epsilons)) {
            char* end = nullptr;
            const double v = std::strtod(t.c_str(), &end);
            if (end == t.c_str() || *end != '\0') throw ValidationError("bad epsilon value '" + t + "'");
            eps.push_back(v);
        }
    } else {
        if (a.steps < 2) throw ValidationError("--steps must be at least 2");
        if (!(a.eps_lo > 0.0 && a.eps_hi > a.eps_lo)) {
            throw ValidationError("need 0 < --eps-lo < --eps-hi");
        }
        for (std::size_t i = 0; i < a.steps; ++i) {
            eps.push_back(a.eps_lo + (a.eps_hi - a.eps_lo) * static_cast<double>(i) /
                                         static_cast<double>(a.steps - 1));
        }
    }
    if (eps.empty()) throw ValidationError("empty epsilon grid");
    const double top = *std::max_element(eps.begin(), eps.end());
    const double bottom = *std::min_element(eps.begin(), eps.end());
    if (!(bottom > 0.0)) throw ValidationError("epsilon values must be positive");
    if (a.T < a.w * top) {
        throw ValidationError("truncation T = " + fmt12(a.T) + " clips the sweep; need T >= w * max epsilon = " +
                              fmt12(a.w * top));
    }
    const KlineInstance inst = make_kline_gaussian(a.w, bottom, {a.ratio, 0.0, a.T});
    const TradeoffTable t = tradeoff_scan(inst, eps);
    std::string csv = "epsilon,accuracy,adv_mass\n";
    for (const auto& r : t.rows) {
        csv += fmt12(r.epsilon) + "," + fmt12(r.accuracy) + "," + fmt12(r.adv_mass) + "\n";
    }
    emit_text(ctx, csv);
    if (!a.summary.empty()) {
        const KlineMaximizer km = kline_mass_maximizer(a.w);
        json s = envelope("tradeoff");
        s["w"] = a.w;
        s["accuracy_strictly_decreasing"] = t.accuracy_strictly_decreasing;
        s["mass_unimodal"] = t.mass_unimodal;
        s["grid_argmax_epsilon"] = t.rows[t.grid_argmax].epsilon;
        s["interior_maximum"] = t.interior_maximum;
        s["epsilon_star"] = t.epsilon_star;
        s["analytic_mass_star"] = t.analytic_mass_star;
        s["global_epsilon_star"] = km.epsilon_star;
        s["discretization"] = info_json(inst.info);
        io::write_text(a.summary, io::dump(s));
    }
    return 0;
}

// ---------------------------------------------------------------- selftest

struct Tally {
    std::size_t runs = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void record(bool ok, const std::string& what) {
        ++runs;
        if (!ok) {
            if (failures == 0) first_failure = what;
            ++failures;
        }
    }
};

bool closure_consistent(const ToleranceSpace& space) {
    const ElementaryPartition part = transitive_closure(space);
    for (const auto& [x, y] : space.edges()) {
        if (!part.same_class(x, y)) return false;
    }
    for (const auto& cls : part.classes) {
        if (!doppel_chain(space, cls.front(), cls.back())) return false;
    }
    return true;
}

bool spectrum_binary(const ToleranceSpace& space) {
    for (double v : laplacian_spectrum(space, LaplacianKind::chain)) {
        if (std::min(std::abs(v), std::abs(v - 1.0)) > 1e-9) return false;
    }
    return true;
}

int cmd_selftest(Context& ctx, std::uint64_t seed, std::size_t trials) {
    random::Rng rng(seed);
    std::uniform_int_distribution<std::size_t> size(2, 24);
    std::uniform_real_distribution<double> prob(0.0, 0.6);
    Tally closure, dfr, stirling, spectrum, fooling, tradeoff;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::string tag = "trial " + std::to_string(t);
        const std::size_t n = size(rng);
        const ToleranceSpace sp = random::random_space(rng, n, prob(rng), random::Weights::positive);
        closure.record(closure_consistent(sp), tag);

        const FeatureRepresentation c = clique_dfr(sp);
        const FeatureRepresentation r1 = refine(c, sp.ids());
        const FeatureRepresentation r2 = refine(r1, sp.ids());
        dfr.record(is_dfr(c, sp).holds && is_dfr(r1, sp).holds &&
                       r1.assignments() == r2.assignments() && r1.feature_ids() == r2.feature_ids(),
                   tag);

        const std::size_t blocks = 1 + t % 6;
        const ToleranceSpace bs = random::random_blocks(rng, std::max(blocks, n % 10 + blocks), blocks, 0.3);
        const std::size_t p = transitive_closure(bs).count();
        bool ok = true;
        for (std::size_t m = 1; m <= p; ++m) {
            const auto all = enumerate_regular(bs, static_cast<int>(m));
            ok = ok && BigInt(all.size()) == stirling2(p, m);
        }
        stirling.record(ok, tag);

        spectrum.record(spectrum_binary(sp), tag);

        const int m = 1 + static_cast<int>(t % 3);
        const Classifier cl = random::random_classifier(rng, n, m);
        Attack a;
        for (std::size_t x = 0; x < n; ++x) {
            const auto d = sp.neighborhood(x);
            a.target.push_back(d[std::uniform_int_distribution<std::size_t>(0, d.size() - 1)(rng)]);
        }
        fooling.record(fooling_rate(sp, cl, a) <= fooling_bound(sp, cl) + 1e-12, tag);

        if (auto world = random::random_regular_world(rng, sp, 2)) {
            const Classifier guess = random::perturb(rng, *world, 0.3);
            const bool bad = check_low_recall_unsafety(sp, *world, guess).verdict == Verdict::violated ||
                             check_hypersensitivity(sp, *world, guess).verdict == Verdict::violated;
            tradeoff.record(!bad, tag);
        }
    }
    json checks = json::object();
    bool all_ok = true;
    auto add = [&](const char* name, const Tally& t) {
        json j = {{"runs", t.runs}, {"failures", t.failures}};
        if (t.failures > 0) j["first_failure"] = t.first_failure;
        checks[name] = j;
        all_ok = all_ok && t.failures == 0;
    };
    add("closure", closure);
    add("clique_dfr", dfr);
    add("stirling", stirling);
    add("chain_spectrum", spectrum);
    add("fooling_bound", fooling);
    add("no_tradeoff", tradeoff);
    json rep = envelope("selftest");
    rep["seed"] = seed;
    rep["trials"] = trials;
    rep["checks"] = checks;
    rep["passed"] = all_ok;
    emit(ctx, rep);
    return all_ok ? 0 : 2;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tolerance-space audits of classifiers", "tolspace"};
    app.require_subcommand(1);
    Context ctx{out, err, {}};
    std::function<int()> action;

    std::size_t max_points = kMaxPoints;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", ctx.output, "write the report here instead of stdout");
        sub->add_option("--max-points", max_points, "point-count guard")->capture_default_str();
    };
    auto guard = [&] { return Guard{"point-count", max_points, kMaxPoints}; };

    std::string space_path, cls_path, world_path, attack_path, sim_path, sets_path, fn_path;
    std::string chain, from, to, strategy = "both", kind, action_name;
    std::vector<std::string> files;
    double base = 2.0;
    int labels = 0;
    bool enumerate = false, labeled = false, spectrum = false;
    std::size_t max_classes = kMaxClasses, max_results = 1'000'000, max_dense = kMaxDense;
    std::optional<double> m_core_opt, tau_opt;

    auto* audit_cmd = app.add_subcommand("audit", "adversarial pairs, ambiguity, entropy, fooling bound");
    audit_cmd->add_option("space", space_path)->required();
    audit_cmd->add_option("classifier", cls_path)->required();
    audit_cmd->add_option("--entropy-base", base, "logarithm base of conceptual entropy")->capture_default_str();
    add_common(audit_cmd);
    audit_cmd->callback([&] { action = [&] { return cmd_audit(ctx, space_path, cls_path, base, guard()); }; });

    auto* acc_cmd = app.add_subcommand("accuracy", "accuracy, recall and the no-trade-off checks");
    acc_cmd->add_option("space", space_path)->required();
    acc_cmd->add_option("world", world_path)->required();
    acc_cmd->add_option("classifier", cls_path)->required();
    add_common(acc_cmd);
    acc_cmd->callback([&] {
        action = [&] { return cmd_accuracy(ctx, space_path, world_path, cls_path, guard()); };
    });

    auto* att_cmd = app.add_subcommand("attack", "fooling rate of a given or constructed attack");
    att_cmd->add_option("space", space_path)->required();
    att_cmd->add_option("classifier", cls_path)->required();
    att_cmd->add_option("--attack", attack_path, "attack JSON; omitted: build the maximal one");
    add_common(att_cmd);
    att_cmd->callback([&] {
        action = [&] { return cmd_attack(ctx, space_path, cls_path, attack_path, guard()); };
    });

    auto* wp_cmd = app.add_subcommand("wellposed", "well-posedness and regular classifier counts");
    wp_cmd->add_option("space", space_path)->required();
    wp_cmd->add_option("--labels", labels, "number of labels m")->required()->check(CLI::PositiveNumber);
    wp_cmd->add_flag("--enumerate", enumerate, "list every regular fully populated classifier");
    wp_cmd->add_flag("--labeled", labeled, "list all label permutations instead of canonical ones");
    wp_cmd->add_option("--max-classes", max_classes, "enumeration guard on elementary classes")->capture_default_str();
    wp_cmd->add_option("--max-results", max_results, "enumeration guard on output size")->capture_default_str();
    add_common(wp_cmd);
    wp_cmd->callback([&] {
        action = [&] {
            return cmd_wellposed(ctx, space_path, labels, enumerate, labeled,
                                 Guard{"class-count", max_classes, kMaxClasses}, max_results, guard());
        };
    });

    auto* sor_cmd = app.add_subcommand("sorites", "adjacent label change along a Doppelganger chain");
    sor_cmd->add_option("space", space_path)->required();
    sor_cmd->add_option("classifier", cls_path)->required();
    sor_cmd->add_option("--chain", chain, "comma-separated point ids");
    sor_cmd->add_option("--from", from, "chain start (shortest chain is used)");
    sor_cmd->add_option("--to", to, "chain end");
    sor_cmd->add_option("--strategy", strategy)->check(CLI::IsMember({"first", "last", "both"}))->capture_default_str();
    add_common(sor_cmd);
    sor_cmd->callback([&] {
        action = [&] { return cmd_sorites(ctx, space_path, cls_path, chain, from, to, strategy, guard()); };
    });

    auto* dfr_cmd = app.add_subcommand("dfr", "discriminative feature representations");
    dfr_cmd->add_option("action", action_name, "build SPACE | check SPACE FEATURES | refine SPACE FEATURES | witness SPACE FEATURES CLASSIFIER")
        ->required()
        ->check(CLI::IsMember({"build", "check", "refine", "witness"}));
    dfr_cmd->add_option("files", files)->required();
    add_common(dfr_cmd);
    dfr_cmd->callback([&] { action = [&] { return cmd_dfr(ctx, action_name, files, guard()); }; });

    auto* met_cmd = app.add_subcommand("metric", "hop counts and perceptual distances");
    met_cmd->add_option("space", space_path)->required();
    met_cmd->add_option("--from", from, "single source point; omitted: full matrix");
    met_cmd->add_option("--max-dense", max_dense, "guard on the full distance matrix")->capture_default_str();
    add_common(met_cmd);
    met_cmd->callback([&] {
        action = [&] {
            return cmd_metric(ctx, space_path, from, Guard{"dense", max_dense, kMaxDense}, guard());
        };
    });

    auto* lap_cmd = app.add_subcommand("laplacian", "discrimination or chain Laplacian");
    lap_cmd->add_option("space", space_path)->required();
    lap_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"ad", "sigma"}));
    lap_cmd->add_option("--function", fn_path, "JSON array of function values");
    lap_cmd->add_flag("--spectrum", spectrum, "dense eigenvalues");
    lap_cmd->add_option("--max-dense", max_dense, "guard on the dense spectrum")->capture_default_str();
    add_common(lap_cmd);
    lap_cmd->callback([&] {
        action = [&] {
            return cmd_laplacian(ctx, space_path, kind, fn_path, spectrum,
                                 Guard{"dense", max_dense, kMaxDense}, guard());
        };
    });

    auto* cat_cmd = app.add_subcommand("category", "prototypes, fringe, structural entropy");
    cat_cmd->add_option("space", space_path)->required();
    cat_cmd->add_option("similarity", sim_path)->required();
    cat_cmd->add_option("--sets", sets_path, "JSON array of point sets")->required();
    cat_cmd->add_option("--m-core", m_core_opt, "affinity threshold for the M-core");
    cat_cmd->add_option("--tau", tau_opt, "affinity threshold for the tau-fringe");
    add_common(cat_cmd);
    cat_cmd->callback([&] {
        action = [&] {
            return cmd_category(ctx, space_path, sim_path, sets_path, m_core_opt, tau_opt, guard());
        };
    });

    WeberArgs wa;
    auto* web_cmd = app.add_subcommand("weber", "Weber-law instances");
    auto* gen_cmd = web_cmd->add_subcommand("gen", "write space, metadata and classifiers");
    web_cmd->require_subcommand(1);
    gen_cmd->add_option("--kind", wa.kind)->required()->check(CLI::IsMember({"interval", "two-cell", "ray", "kline"}));
    gen_cmd->add_option("--w", wa.w, "Weber factor")->capture_default_str();
    gen_cmd->add_option("--epsilon", wa.epsilon, "threshold (ray, kline)")->capture_default_str();
    gen_cmd->add_option("--a", wa.a, "lower end (interval, two-cell)")->capture_default_str();
    gen_cmd->add_option("--b", wa.b, "upper end / cell boundary")->capture_default_str();
    gen_cmd->add_option("--b-prime", wa.b_prime, "upper end of the second cell")->capture_default_str();
    gen_cmd->add_option("--ratio", wa.ratio, "grid ratio")->capture_default_str();
    gen_cmd->add_option("--measure", wa.measure, "uniform | half-gaussian (interval, two-cell)")->capture_default_str();
    gen_cmd->add_option("--lo", wa.lo, "inner cutoff; 0 picks epsilon/(1000 w)")->capture_default_str();
    gen_cmd->add_option("--T", wa.T, "tail truncation")->capture_default_str();
    gen_cmd->add_option("-o,--output", wa.dir, "output directory")->required();
    gen_cmd->callback([&] { action = [&] { return cmd_weber(ctx, wa); }; });

    TradeoffArgs ta;
    auto* tr_cmd = app.add_subcommand("tradeoff", "accuracy and adversarial mass over a threshold sweep");
    tr_cmd->add_option("--w", ta.w)->capture_default_str();
    tr_cmd->add_option("--eps-lo", ta.eps_lo)->capture_default_str();
    tr_cmd->add_option("--eps-hi", ta.eps_hi)->capture_default_str();
    tr_cmd->add_option("--steps", ta.steps)->capture_default_str();
    tr_cmd->add_option("--epsilons", ta.epsilons, "comma-separated increasing thresholds");
    tr_cmd->add_option("--ratio", ta.ratio)->capture_default_str();
    tr_cmd->add_option("--T", ta.T)->capture_default_str();
    tr_cmd->add_option("--summary", ta.summary, "also write a JSON summary here");
    tr_cmd->add_option("-o,--output", ctx.output, "CSV path instead of stdout");
    tr_cmd->callback([&] { action = [&] { return cmd_tradeoff(ctx, ta); }; });

    std::uint64_t seed = 1;
    std::size_t trials = 100;
    auto* st_cmd = app.add_subcommand("selftest", "randomized property checks");
    st_cmd->add_option("--seed", seed)->capture_default_str();
    st_cmd->add_option("--trials", trials)->capture_default_str();
    st_cmd->add_option("-o,--output", ctx.output);
    st_cmd->callback([&] { action = [&] { return cmd_selftest(ctx, seed, trials); }; });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    try {
        return action ? action() : 1;
    } catch (...) {
        return exit_status(std::current_exception(), err);
    }
}

int exit_status(std::exception_ptr e, std::ostream& err) {
    try {
        std::rethrow_exception(e);
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const GuardExceeded& e) {
        err << "guard exceeded: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const io::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace tolspace::cli
