#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tolspace/error.hpp"

namespace tolspace::io {

namespace {

const json& field(const json& obj, const char* key, const std::string& ctx) {
    if (!obj.is_object()) throw ValidationError(ctx + " must be a JSON object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(ctx + " is missing \"" + key + "\"");
    return *it;
}

const json& array_field(const json& obj, const char* key, const std::string& ctx) {
    const json& v = field(obj, key, ctx);
    if (!v.is_array()) throw ValidationError(ctx + ": \"" + key + "\" must be an array");
    return v;
}

std::size_t to_index(const json& v, const std::string& ctx) {
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return v.get<std::size_t>();
    throw ValidationError(ctx + ": expected a non-negative integer, got " + v.dump());
}

int to_int(const json& v, const std::string& ctx) {
    if (v.is_number_integer()) return v.get<int>();
    throw ValidationError(ctx + ": expected an integer, got " + v.dump());
}

double to_double(const json& v, const std::string& ctx) {
    if (v.is_number()) return v.get<double>();
    throw ValidationError(ctx + ": expected a number, got " + v.dump());
}

std::vector<std::size_t> index_list(const json& v, const std::string& ctx) {
    if (!v.is_array()) throw ValidationError(ctx + " must be an array");
    std::vector<std::size_t> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_index(v[i], ctx + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::vector<double>> matrix(const json& v, const std::string& ctx) {
    if (!v.is_array()) throw ValidationError(ctx + " must be an array of rows");
    std::vector<std::vector<double>> m;
    for (std::size_t i = 0; i < v.size(); ++i) m.push_back(real_vector(v[i], ctx + "[" + std::to_string(i) + "]"));
    return m;
}

std::string format_location(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(byte == 0 ? 0 : byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

} // namespace

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        // Drop the library prefix "[json.exception.parse_error.101] parse error at line L, column C: ".
        if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
        throw ValidationError(source + ":" + format_location(text, e.byte) + ": malformed JSON: " + msg);
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ValidationError("failed writing '" + path + "'");
}

json round_numbers(const json& j) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v)) return nullptr;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        const double r = std::strtod(buf, nullptr);
        return r == 0.0 ? 0.0 : r;
    }
    if (j.is_array()) {
        json out = json::array();
        for (const auto& v : j) out.push_back(round_numbers(v));
        return out;
    }
    if (j.is_object()) {
        json out = json::object();
        for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_numbers(it.value());
        return out;
    }
    return j;
}

std::string dump(const json& j) { return round_numbers(j).dump(2) + "\n"; }

std::vector<double> real_vector(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_double(j[i], what + "[" + std::to_string(i) + "]"));
    return out;
}

LoadedSpace space_from_json(const json& j) {
    const std::string ctx = "space";
    const json& pts = array_field(j, "points", ctx);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!pts[i].is_string()) throw ValidationError("space.points[" + std::to_string(i) + "] must be a string id");
        ids.push_back(pts[i].get<std::string>());
    }
    std::vector<double> weights;
    if (auto it = j.find("weights"); it != j.end() && !it->is_null()) {
        weights = real_vector(*it, "space.weights");
    }
    const json& rel = field(j, "relation", ctx);
    const json& type = field(rel, "type", "space.relation");
    if (!type.is_string()) throw ValidationError("space.relation.type must be a string");
    const std::string t = type.get<std::string>();
    if (t == "edges") {
        const json& edges = array_field(rel, "edges", "space.relation");
        std::vector<IndexPair> e;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::string c = "space.relation.edges[" + std::to_string(i) + "]";
            if (!edges[i].is_array() || edges[i].size() != 2) throw ValidationError(c + " must be a pair [i, j]");
            e.emplace_back(to_index(edges[i][0], c), to_index(edges[i][1], c));
        }
        return {ToleranceSpace::from_edges(std::move(ids), e, std::move(weights)), {}};
    }
    if (t == "covering") {
        const json& sets = array_field(rel, "sets", "space.relation");
        Covering cov;
        cov.point_ids = std::move(ids);
        for (std::size_t i = 0; i < sets.size(); ++i) {
            cov.sets.push_back(index_list(sets[i], "space.relation.sets[" + std::to_string(i) + "]"));
        }
        auto d = relation_from_covering(cov, std::move(weights));
        return {std::move(d.space), std::move(d.asymmetric_pairs)};
    }
    if (t == "contrast") {
        ContrastContext ctx_c;
        ctx_c.point_ids = std::move(ids);
        ctx_c.contrast = matrix(field(rel, "matrix", "space.relation"), "space.relation.matrix");
        const json& eps = field(rel, "epsilon", "space.relation");
        if (eps.is_number()) {
            ctx_c.epsilon.assign(ctx_c.point_ids.size(), eps.get<double>());
        } else {
            ctx_c.epsilon = real_vector(eps, "space.relation.epsilon");
        }
        ctx_c.order = ContrastOrder::less_equal;
        if (auto it = rel.find("order"); it != rel.end()) {
            const std::string o = it->is_string() ? it->get<std::string>() : "";
            if (o == "le") ctx_c.order = ContrastOrder::less_equal;
            else if (o == "lt") ctx_c.order = ContrastOrder::less;
            else throw ValidationError("space.relation.order must be \"le\" or \"lt\"");
        }
        auto d = relation_from_contrast(ctx_c, std::move(weights));
        return {std::move(d.space), std::move(d.asymmetric_pairs)};
    }
    throw ValidationError("space.relation.type must be \"edges\", \"covering\" or \"contrast\", got \"" + t + "\"");
}

json space_to_json(const ToleranceSpace& space) {
    json edges = json::array();
    for (const auto& [x, y] : space.edges()) edges.push_back({x, y});
    return {{"points", space.ids()},
            {"weights", std::vector<double>(space.weights().begin(), space.weights().end())},
            {"relation", {{"type", "edges"}, {"edges", edges}}}};
}

Classifier classifier_from_json(const json& j, const ToleranceSpace& space) {
    const json& labels = array_field(j, "labels", "classifier");
    const int m = to_int(field(j, "num_labels", "classifier"), "classifier.num_labels");
    std::vector<int> l;
    for (std::size_t i = 0; i < labels.size(); ++i) l.push_back(to_int(labels[i], "classifier.labels[" + std::to_string(i) + "]"));
    Classifier r(std::move(l), m);
    r.check_aligned(space);
    return r;
}

json classifier_to_json(const Classifier& r) {
    return {{"labels", r.labels()}, {"num_labels", r.num_labels()}};
}

WorldModel world_from_json(const json& j, const ToleranceSpace& space) {
    const Classifier c = classifier_from_json(j, space);
    return WorldModel(space, c.labels(), c.num_labels());
}

Attack attack_from_json(const json& j, const ToleranceSpace& space) {
    const json& t = array_field(j, "target", "attack");
    Attack a;
    for (const auto& v : t) a.target.push_back(resolve_point(v, space));
    return a;
}

json attack_to_json(const Attack& a) { return {{"target", a.target}}; }

FeatureRepresentation features_from_json(const json& j) {
    const json& f = array_field(j, "features", "features");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i].is_string()) throw ValidationError("features.features[" + std::to_string(i) + "] must be a string");
        ids.push_back(f[i].get<std::string>());
    }
    const json& as = array_field(j, "assign", "features");
    std::vector<std::vector<std::size_t>> assign;
    for (std::size_t i = 0; i < as.size(); ++i) {
        const std::string c = "features.assign[" + std::to_string(i) + "]";
        if (!as[i].is_array()) throw ValidationError(c + " must be an array");
        std::vector<std::size_t> row;
        for (const auto& v : as[i]) {
            if (v.is_string()) {
                auto it = std::find(ids.begin(), ids.end(), v.get<std::string>());
                if (it == ids.end()) throw ValidationError(c + ": unknown feature " + v.dump());
                row.push_back(static_cast<std::size_t>(it - ids.begin()));
            } else {
                row.push_back(to_index(v, c));
            }
        }
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        assign.push_back(std::move(row));
    }
    return FeatureRepresentation(std::move(ids), std::move(assign));
}

json features_to_json(const FeatureRepresentation& rep) {
    return {{"features", rep.feature_ids()}, {"assign", rep.assignments()}};
}

std::size_t resolve_point(const json& j, const ToleranceSpace& space) {
    if (j.is_string()) return resolve_point(j.get<std::string>(), space);
    const std::size_t x = to_index(j, "point");
    space.check_point(x);
    return x;
}

std::size_t resolve_point(const std::string& token, const ToleranceSpace& space) {
    if (auto x = space.index_of(token)) return *x;
    throw ValidationError("unknown point id '" + token + "'");
}

PointSet point_set_from_json(const json& j, const ToleranceSpace& space) {
    if (!j.is_array()) throw ValidationError("point set must be an array of ids or indices");
    PointSet out;
    for (const auto& v : j) out.push_back(resolve_point(v, space));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

json ids_json(const ToleranceSpace& space, std::span<const std::size_t> points) {
    json out = json::array();
    for (std::size_t x : points) out.push_back(space.id(x));
    return out;
}

json pairs_json(const ToleranceSpace& space, const std::vector<IndexPair>& pairs) {
    json out = json::array();
    for (const auto& [x, y] : pairs) out.push_back({space.id(x), space.id(y)});
    return out;
}

Similarity similarity_from_json(const json& j, const ToleranceSpace& space) {
    if (j.is_object() && j.contains("matrix")) {
        SimilarityScale s(matrix(j["matrix"], "similarity.matrix"));
        s.check_aligned(space);
        return {std::move(s), std::nullopt};
    }
    if (j.is_object() && j.contains("tversky")) {
        const json& t = j["tversky"];
        const std::string c = "similarity.tversky";
        TverskyModel m(to_double(field(t, "alpha", c), c + ".alpha"),
                       to_double(field(t, "beta", c), c + ".beta"),
                       to_double(field(t, "theta", c), c + ".theta"),
                       real_vector(field(t, "salience", c), c + ".salience"),
                       features_from_json(field(t, "features", c)));
        m.rep().check_aligned(space);
        SimilarityScale s = m.scale();
        return {std::move(s), std::move(m)};
    }
    throw ValidationError("similarity must be {\"matrix\": ...} or {\"tversky\": ...}");
}

} // namespace tolspace::io
