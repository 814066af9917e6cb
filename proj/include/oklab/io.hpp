#ifndef OKLAB_IO_HPP
#define OKLAB_IO_HPP

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "oklab/filtered.hpp"

namespace oklab {

using json = nlohmann::json;

/* Schema violation with the path of the offending field, e.g. "model.kind". */
struct ConfigError : std::runtime_error {
    std::string field;

    ConfigError(std::string f, const std::string& msg)
        : std::runtime_error(f.empty() ? msg : f + ": " + msg), field(std::move(f)) {}
};

inline json rational_json(const Rational& r) {
    return json::array({static_cast<long long>(num(r)), static_cast<long long>(den(r))});
}

inline Rational rational_from_json(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() &&
        j[1].is_number_integer()) {
        long long n = j[0].get<long long>();
        long long d = j[1].get<long long>();
        if (d == 0) throw ConfigError(field, "zero denominator");
        return rat(n, d);
    }
    throw ConfigError(field, "expected an integer or a [numerator, denominator] pair");
}

inline json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(rational_json(c));
    return a;
}

inline Vec vec_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field, "expected an array");
    Vec v;
    for (size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

inline json polytope_json(const Polytope& P) {
    json j;
    j["dim"] = P.ambient;
    j["vertices"] = json::array();
    for (const auto& v : P.vertices) j["vertices"].push_back(vec_json(v));
    j["halfspaces"] = json::array();
    for (const auto& h : P.halfspaces) {
        json hj;
        hj["normal"] = vec_json(h.normal);
        hj["offset"] = rational_json(h.offset);
        j["halfspaces"].push_back(hj);
    }
    return j;
}

inline Polytope polytope_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
        throw ConfigError("dim", "expected an integer dimension");
    int dim = j["dim"].get<int>();
    std::vector<Vec> verts;
    if (j.contains("vertices"))
        for (size_t i = 0; i < j["vertices"].size(); ++i)
            verts.push_back(vec_from_json(j["vertices"][i],
                                          "vertices[" + std::to_string(i) + "]"));
    if (verts.empty()) return Polytope::make_empty(dim);
    return convex_hull(verts, dim);
}

inline json piecewise_json(const PiecewisePolynomial& f) {
    json j;
    j["breakpoints"] = json::array();
    for (const auto& b : f.breakpoints()) j["breakpoints"].push_back(rational_json(b));
    j["pieces"] = json::array();
    for (size_t i = 0; i < f.piece_count(); ++i) {
        json coeffs = json::array();
        for (const auto& c : f.piece(i)) coeffs.push_back(rational_json(c));
        j["pieces"].push_back(coeffs);
    }
    return j;
}

/* Decimal rendering for CSV at 12 significant digits. */
inline std::string decimal12(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", to_double(r));
    return buf;
}

/* One CSV cell pair: decimal value plus the exact fraction next to it. */
inline std::string csv_pair(const Rational& r) {
    return decimal12(r) + "," + rat_string(r);
}

/* Fully parsed and validated job description for the command-line driver. */
struct JobConfig {
    enum class SeriesKind { complete, vanishing, vt, veronese };

    ModelVariety model = ModelVariety::projective_space(2, 1);
    int point = 0;
    SeriesKind series_kind = SeriesKind::complete;
    Rational vt_threshold;
    int veronese_factor = 1;
    int m_max = 8;
    bool has_flag_kind = false;
    Flag::Kind flag_kind = Flag::Kind::coordinate;
    std::vector<int> flag_order;
    std::vector<Rational> t_grid;
    std::string out_path;
    std::string format = "json";
};

namespace detail {

inline int parse_point(const json& j, const ModelVariety& model) {
    if (j.is_number_integer()) {
        int p = j.get<int>();
        if (p < 0 || p >= model.fixed_point_count())
            throw ConfigError("point", "fixed point index out of range");
        return p;
    }
    if (j.is_array()) {
        if (model.kind == ModelVariety::Kind::Pn) {
            if (static_cast<int>(j.size()) != model.n + 1)
                throw ConfigError("point", "pattern must have one entry per homogeneous coordinate");
            int idx = -1;
            for (size_t i = 0; i < j.size(); ++i) {
                if (!j[i].is_number_integer() ||
                    (j[i].get<int>() != 0 && j[i].get<int>() != 1))
                    throw ConfigError("point", "pattern entries must be 0 or 1");
                if (j[i].get<int>() == 1) {
                    if (idx >= 0) throw ConfigError("point", "pattern must have a single 1");
                    idx = static_cast<int>(i);
                }
            }
            if (idx < 0) throw ConfigError("point", "pattern must have a single 1");
            return idx;
        }
        if (j.size() != 2) throw ConfigError("point", "pattern must have two entries");
        int bits = 0;
        for (size_t i = 0; i < 2; ++i) {
            int bit;
            if (j[i].is_number_integer() && (j[i].get<int>() == 0 || j[i].get<int>() == 1))
                bit = j[i].get<int>();
            else if (j[i].is_string() && j[i].get<std::string>() == "0")
                bit = 0;
            else if (j[i].is_string() && j[i].get<std::string>() == "inf")
                bit = 1;
            else
                throw ConfigError("point", "pattern entries must be 0, 1, \"0\", or \"inf\"");
            bits |= bit << i;
        }
        return bits;
    }
    throw ConfigError("point", "expected an index or a coordinate pattern");
}

inline ModelVariety parse_model(const json& j) {
    if (!j.is_object()) throw ConfigError("model", "expected an object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("model.kind", "expected a string");
    std::string kind = j["kind"].get<std::string>();
    auto want_int = [&](const char* name, int fallback, bool required) {
        std::string path = std::string("model.") + name;
        if (!j.contains(name)) {
            if (required) throw ConfigError(path, "missing required field");
            return fallback;
        }
        if (!j[name].is_number_integer()) throw ConfigError(path, "expected an integer");
        return j[name].get<int>();
    };
    if (kind == "Pn") {
        int n = want_int("n", 2, true);
        int d = want_int("d", 1, false);
        if (n != 2 && n != 3) throw ConfigError("model.n", "dimension must be 2 or 3");
        if (d < 1) throw ConfigError("model.d", "degree must be positive");
        return ModelVariety::projective_space(n, d);
    }
    if (kind == "P1xP1") {
        int a = want_int("a", 1, false);
        int b = want_int("b", 1, false);
        if (a < 1) throw ConfigError("model.a", "bidegree must be positive");
        if (b < 1) throw ConfigError("model.b", "bidegree must be positive");
        return ModelVariety::product_of_lines(a, b);
    }
    throw ConfigError("model.kind", "unknown model kind \"" + kind + "\"");
}

}  // namespace detail

inline JobConfig parse_job_config(const json& j) {
    if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
    JobConfig cfg;
    if (!j.contains("model")) throw ConfigError("model", "missing required field");
    cfg.model = detail::parse_model(j["model"]);
    if (j.contains("point")) cfg.point = detail::parse_point(j["point"], cfg.model);

    if (j.contains("series")) {
        const json& s = j["series"];
        if (s.is_string() && s.get<std::string>() == "complete") {
            cfg.series_kind = JobConfig::SeriesKind::complete;
        } else if (s.is_object() && s.contains("vanishing")) {
            if (!s["vanishing"].is_boolean() || !s["vanishing"].get<bool>())
                throw ConfigError("series.vanishing", "expected true");
            cfg.series_kind = JobConfig::SeriesKind::vanishing;
        } else if (s.is_object() && s.contains("vt")) {
            cfg.series_kind = JobConfig::SeriesKind::vt;
            cfg.vt_threshold = rational_from_json(s["vt"], "series.vt");
            if (cfg.vt_threshold < 0)
                throw ConfigError("series.vt", "threshold must be nonnegative");
        } else if (s.is_object() && s.contains("veronese")) {
            if (!s["veronese"].is_object() || !s["veronese"].contains("m") ||
                !s["veronese"]["m"].is_number_integer())
                throw ConfigError("series.veronese.m", "expected an integer");
            cfg.series_kind = JobConfig::SeriesKind::veronese;
            cfg.veronese_factor = s["veronese"]["m"].get<int>();
            if (cfg.veronese_factor < 1)
                throw ConfigError("series.veronese.m", "factor must be positive");
        } else {
            throw ConfigError("series",
                              "expected \"complete\", {\"vanishing\": true}, {\"vt\": t}, "
                              "or {\"veronese\": {\"m\": k}}");
        }
    }

    if (j.contains("m_max")) {
        if (!j["m_max"].is_number_integer())
            throw ConfigError("m_max", "expected an integer");
        cfg.m_max = j["m_max"].get<int>();
    }
    if (cfg.m_max < 2) throw ConfigError("m_max", "must be at least 2");

    if (j.contains("flag")) {
        const json& f = j["flag"];
        if (!f.is_object()) throw ConfigError("flag", "expected an object");
        if (f.contains("kind")) {
            if (!f["kind"].is_string()) throw ConfigError("flag.kind", "expected a string");
            std::string k = f["kind"].get<std::string>();
            if (k == "coordinate")
                cfg.flag_kind = Flag::Kind::coordinate;
            else if (k == "infinitesimal")
                cfg.flag_kind = Flag::Kind::infinitesimal;
            else
                throw ConfigError("flag.kind", "unknown flag kind \"" + k + "\"");
            cfg.has_flag_kind = true;
        }
        if (f.contains("order")) {
            if (!f["order"].is_array()) throw ConfigError("flag.order", "expected an array");
            std::vector<int> order;
            for (const auto& e : f["order"]) {
                if (!e.is_number_integer())
                    throw ConfigError("flag.order", "expected integer axis indices");
                order.push_back(e.get<int>());
            }
            std::vector<int> sorted = order;
            std::sort(sorted.begin(), sorted.end());
            bool perm = static_cast<int>(sorted.size()) == cfg.model.dim();
            for (int i = 0; perm && i < cfg.model.dim(); ++i)
                perm = sorted[static_cast<size_t>(i)] == i;
            if (!perm)
                throw ConfigError("flag.order", "must be a permutation of the chart axes");
            cfg.flag_order = std::move(order);
        }
    }

    if (j.contains("t_grid")) {
        if (!j["t_grid"].is_array()) throw ConfigError("t_grid", "expected an array");
        for (size_t i = 0; i < j["t_grid"].size(); ++i) {
            std::string path = "t_grid[" + std::to_string(i) + "]";
            Rational t = rational_from_json(j["t_grid"][i], path);
            if (t < 0) throw ConfigError(path, "grid values must be nonnegative");
            if (!cfg.t_grid.empty() && t < cfg.t_grid.back())
                throw ConfigError(path, "grid values must be sorted ascending");
            cfg.t_grid.push_back(t);
        }
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object()) throw ConfigError("output", "expected an object");
        if (o.contains("path")) {
            if (!o["path"].is_string()) throw ConfigError("output.path", "expected a string");
            cfg.out_path = o["path"].get<std::string>();
        }
        if (o.contains("format")) {
            if (!o["format"].is_string() ||
                (o["format"].get<std::string>() != "json" &&
                 o["format"].get<std::string>() != "csv"))
                throw ConfigError("output.format", "expected \"json\" or \"csv\"");
            cfg.format = o["format"].get<std::string>();
        }
    }
    return cfg;
}

/* Materialize the configured series. */
inline MonomialSeries build_series(const JobConfig& cfg) {
    switch (cfg.series_kind) {
        case JobConfig::SeriesKind::complete:
            return complete_series(cfg.model, cfg.m_max);
        case JobConfig::SeriesKind::vanishing:
            return vanishing_subseries(cfg.model, cfg.m_max, cfg.point);
        case JobConfig::SeriesKind::vt:
            return subseries_vt(cfg.model, cfg.m_max, cfg.vt_threshold, cfg.point);
        default: {
            MonomialSeries base =
                complete_series(cfg.model, cfg.m_max * cfg.veronese_factor);
            return veronese_series(base, cfg.veronese_factor);
        }
    }
}

}  // namespace oklab

#endif
