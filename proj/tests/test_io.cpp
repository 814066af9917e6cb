#include "test_support.hpp"

#include <oklab/io.hpp>

using namespace oklab;

TEST_CASE("rational serialization round trip", "[io]") {
    REQUIRE(rational_json(rat(5, 3)) == json::array({5, 3}));
    REQUIRE(rational_json(rat(-7, 2)) == json::array({-7, 2}));
    REQUIRE(rational_from_json(json(7), "f") == 7);
    REQUIRE(rational_from_json(json::array({-1, -2}), "f") == rat(1, 2));

    auto field_of = [](const json& j) {
        try {
            rational_from_json(j, "f");
        } catch (const ConfigError& e) {
            return e.field;
        }
        return std::string();
    };
    REQUIRE(field_of(json::array({1, 0})) == "f");
    REQUIRE(field_of(json("x")) == "f");
    REQUIRE(field_of(json::array({1, 2, 3})) == "f");
}

TEST_CASE("polytope round trip preserves the double description", "[io]") {
    Polytope square = convex_hull({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}, 2);
    json j = polytope_json(square);
    REQUIRE(j["dim"] == 2);
    REQUIRE(j["vertices"].size() == 4);
    REQUIRE(j["halfspaces"].size() == 4);
    Polytope back = polytope_from_json(j);
    REQUIRE(back == square);
    REQUIRE(back.halfspaces == square.halfspaces);

    Polytope none = polytope_from_json(polytope_json(Polytope::make_empty(3)));
    REQUIRE(none.is_empty());
    REQUIRE(none.ambient == 3);

    REQUIRE_THROWS_AS(polytope_from_json(json::object()), ConfigError);
}

TEST_CASE("piecewise serialization shape", "[io]") {
    PiecewisePolynomial tent({Rational(0), Rational(1), Rational(2)},
                             {Poly{Rational(0), Rational(1)}, Poly{Rational(2), Rational(-1)}});
    json j = piecewise_json(tent);
    REQUIRE(j["breakpoints"] == json::array({json::array({0, 1}), json::array({1, 1}),
                                             json::array({2, 1})}));
    REQUIRE(j["pieces"].size() == 2);
    REQUIRE(j["pieces"][1] == json::array({json::array({2, 1}), json::array({-1, 1})}));
}

TEST_CASE("csv cells carry decimal and exact forms", "[io]") {
    REQUIRE(csv_pair(rat(1, 2)) == "0.5,1/2");
    REQUIRE(csv_pair(rat(1, 3)) == "0.333333333333,1/3");
    REQUIRE(csv_pair(Rational(2)) == "2,2");
    REQUIRE(csv_pair(rat(-81, 1600)) == "-0.050625,-81/1600");
}

TEST_CASE("minimal config applies defaults", "[config]") {
    JobConfig cfg = parse_job_config(json::parse(R"({"model": {"kind": "Pn", "n": 2}})"));
    REQUIRE(cfg.model.kind == ModelVariety::Kind::Pn);
    REQUIRE(cfg.model.d == 1);
    REQUIRE(cfg.m_max == 8);
    REQUIRE(cfg.point == 0);
    REQUIRE(cfg.series_kind == JobConfig::SeriesKind::complete);
    REQUIRE(cfg.format == "json");
    REQUIRE(cfg.t_grid.empty());
    REQUIRE_FALSE(cfg.has_flag_kind);
}

TEST_CASE("full config parses", "[config]") {
    JobConfig cfg = parse_job_config(json::parse(R"({
        "model": {"kind": "P1xP1", "a": 2, "b": 1},
        "point": ["inf", "0"],
        "series": {"vt": [1, 2]},
        "m_max": 12,
        "flag": {"kind": "infinitesimal", "order": [1, 0]},
        "t_grid": [0, [1, 2], 1],
        "output": {"path": "out.json", "format": "csv"}
    })"));
    REQUIRE(cfg.model.kind == ModelVariety::Kind::P1xP1);
    REQUIRE(cfg.model.a == 2);
    REQUIRE(cfg.point == 1);
    REQUIRE(cfg.series_kind == JobConfig::SeriesKind::vt);
    REQUIRE(cfg.vt_threshold == rat(1, 2));
    REQUIRE(cfg.m_max == 12);
    REQUIRE(cfg.has_flag_kind);
    REQUIRE(cfg.flag_kind == Flag::Kind::infinitesimal);
    REQUIRE(cfg.flag_order == std::vector<int>{1, 0});
    REQUIRE(cfg.t_grid == std::vector<Rational>{Rational(0), rat(1, 2), Rational(1)});
    REQUIRE(cfg.out_path == "out.json");
    REQUIRE(cfg.format == "csv");

    JobConfig pat = parse_job_config(json::parse(
        R"({"model": {"kind": "Pn", "n": 3}, "point": [0, 0, 1, 0]})"));
    REQUIRE(pat.point == 2);
}

TEST_CASE("schema violations carry field paths", "[config]") {
    auto field_of = [](const std::string& text) {
        try {
            parse_job_config(json::parse(text));
        } catch (const ConfigError& e) {
            return e.field;
        }
        return std::string("(accepted)");
    };

    REQUIRE(field_of(R"({})") == "model");
    REQUIRE(field_of(R"({"model": {"kind": "P3xP1"}})") == "model.kind");
    REQUIRE(field_of(R"({"model": {"kind": "Pn"}})") == "model.n");
    REQUIRE(field_of(R"({"model": {"kind": "Pn", "n": 4}})") == "model.n");
    REQUIRE(field_of(R"({"model": {"kind": "Pn", "n": 2, "d": 0}})") == "model.d");
    REQUIRE(field_of(R"({"model": {"kind": "P1xP1", "a": 0}})") == "model.a");
    REQUIRE(field_of(R"({"model": {"kind": "P1xP1", "b": -2}})") == "model.b");

    const std::string m = R"("model": {"kind": "Pn", "n": 2})";
    REQUIRE(field_of(R"({)" + m + R"(, "m_max": 1})") == "m_max");
    REQUIRE(field_of(R"({)" + m + R"(, "m_max": "big"})") == "m_max");
    REQUIRE(field_of(R"({)" + m + R"(, "point": 7})") == "point");
    REQUIRE(field_of(R"({)" + m + R"(, "point": [1, 1, 0]})") == "point");
    REQUIRE(field_of(R"({)" + m + R"(, "series": "bogus"})") == "series");
    REQUIRE(field_of(R"({)" + m + R"(, "series": {"vt": [-1, 2]}})") == "series.vt");
    REQUIRE(field_of(R"({)" + m + R"(, "series": {"vanishing": false}})") == "series.vanishing");
    REQUIRE(field_of(R"({)" + m + R"(, "series": {"veronese": {"m": 0}}})") == "series.veronese.m");
    REQUIRE(field_of(R"({)" + m + R"(, "flag": {"kind": "radial"}})") == "flag.kind");
    REQUIRE(field_of(R"({)" + m + R"(, "flag": {"order": [0, 0]}})") == "flag.order");
    REQUIRE(field_of(R"({)" + m + R"(, "t_grid": [[1, 0]]})") == "t_grid[0]");
    REQUIRE(field_of(R"({)" + m + R"(, "t_grid": [-1]})") == "t_grid[0]");
    REQUIRE(field_of(R"({)" + m + R"(, "t_grid": [1, [1, 2]]})") == "t_grid[1]");
    REQUIRE(field_of(R"({)" + m + R"(, "output": {"format": "yaml"}})") == "output.format");
}

TEST_CASE("series construction follows the config", "[config]") {
    json base = json::parse(R"({"model": {"kind": "Pn", "n": 2}, "m_max": 4})");

    MonomialSeries complete = build_series(parse_job_config(base));
    REQUIRE(complete.label == "complete");
    REQUIRE(complete.m_max == 4);

    json v = base;
    v["series"] = {{"vanishing", true}};
    MonomialSeries vanishing = build_series(parse_job_config(v));
    REQUIRE(vanishing.label == "vanishing");
    REQUIRE(vanishing.dimension(4) == complete.dimension(4) - 1);

    json t = base;
    t["series"] = {{"vt", json::array({1, 2})}};
    REQUIRE(build_series(parse_job_config(t)).dimension(2) == 5);

    json w = base;
    w["series"] = {{"veronese", {{"m", 2}}}};
    MonomialSeries veronese = build_series(parse_job_config(w));
    REQUIRE(veronese.m_max == 4);
    REQUIRE(veronese.degree_scale == 2);
    REQUIRE(veronese.dimension(4) == 45);  // sections of degree 8
}

TEST_CASE("vector parse errors name the entry", "[io]") {
    auto field_of = [](const json& j) {
        try {
            vec_from_json(j, "vertices[1]");
        } catch (const ConfigError& e) {
            return e.field;
        }
        return std::string();
    };
    REQUIRE(field_of(json(3)) == "vertices[1]");
    REQUIRE(field_of(json::array({1, "x"})) == "vertices[1][1]");
    REQUIRE(vec_from_json(json::array({1, json::array({1, 2})}), "v") ==
            Vec{Rational(1), rat(1, 2)});
}
