#include "test_support.hpp"

#include <oklab/okounkov.hpp>

using namespace oklab;

namespace {

const ModelVariety kSquare = ModelVariety::product_of_lines(1, 1);
const ModelVariety kPlane = ModelVariety::projective_space(2, 1);

}  // namespace

TEST_CASE("flag valuations", "[flag]") {
    std::vector<int> local{2, 3, 5};
    Flag coord = Flag::coordinate_flag(0, {2, 0, 1});
    REQUIRE(flag_valuation(coord, local, effective_order(coord, 3)) == pt({5, 2, 3}));

    Flag inf = Flag::infinitesimal_flag(0);
    REQUIRE(flag_valuation(inf, local, effective_order(inf, 3)) == pt({10, 3, 5}));

    Flag inf_perm = Flag::infinitesimal_flag(0, {2, 0, 1});
    REQUIRE(flag_valuation(inf_perm, local, effective_order(inf_perm, 3)) == pt({10, 2, 3}));

    REQUIRE_THROWS_AS(effective_order(Flag::coordinate_flag(0, {0, 0, 1}), 3),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(effective_order(Flag::coordinate_flag(0, {1, 2}), 3),
                      std::invalid_argument);
}

TEST_CASE("coordinate bodies of complete series", "[body]") {
    BodyResult square = okounkov_body(complete_series(kSquare, 8), Flag::coordinate_flag());
    REQUIRE(square.report.mode == BodyReport::Mode::stabilized);
    REQUIRE(square.body.vertices ==
            std::vector<Vec>{pt({0, 0}), pt({0, 1}), pt({1, 0}), pt({1, 1})});

    BodyResult tri = okounkov_body(complete_series(ModelVariety::projective_space(2, 2), 8),
                                   Flag::coordinate_flag());
    REQUIRE(tri.body == model_simplex(2, SimplexMode::standard, Rational(2)));

    BodyResult tet = okounkov_body(complete_series(ModelVariety::projective_space(3, 1), 6),
                                   Flag::coordinate_flag());
    REQUIRE(tet.body == model_simplex(3, SimplexMode::standard, Rational(1)));

    MonomialSeries rect = complete_series(ModelVariety::product_of_lines(1, 2), 8);
    BodyResult r = okounkov_body(rect, Flag::coordinate_flag());
    REQUIRE(r.body.vertices ==
            std::vector<Vec>{pt({0, 0}), pt({0, 2}), pt({1, 0}), pt({1, 2})});
    BodyResult rT = okounkov_body(rect, Flag::coordinate_flag(0, {1, 0}));
    REQUIRE(rT.body.vertices ==
            std::vector<Vec>{pt({0, 0}), pt({0, 1}), pt({2, 0}), pt({2, 1})});
}

TEST_CASE("infinitesimal bodies of complete series", "[body]") {
    BodyResult sq = okounkov_body(complete_series(kSquare, 8), Flag::infinitesimal_flag());
    REQUIRE(sq.report.mode == BodyReport::Mode::stabilized);
    REQUIRE(sq.body.vertices ==
            std::vector<Vec>{pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({2, 1})});

    for (int d = 1; d <= 2; ++d) {
        BodyResult b = okounkov_body(complete_series(ModelVariety::projective_space(2, d), 8),
                                     Flag::infinitesimal_flag());
        REQUIRE(b.body == model_simplex(2, SimplexMode::inverted, Rational(d)));
    }

    BodyResult b3 = okounkov_body(complete_series(ModelVariety::projective_space(3, 2), 6),
                                  Flag::infinitesimal_flag());
    REQUIRE(b3.body == model_simplex(3, SimplexMode::inverted, Rational(2)));

    BodyResult wide = okounkov_body(complete_series(ModelVariety::product_of_lines(1, 2), 8),
                                    Flag::infinitesimal_flag());
    REQUIRE(wide.body.vertices ==
            std::vector<Vec>{pt({0, 0}), pt({1, 0}), pt({2, 2}), pt({3, 2})});
}

TEST_CASE("gauges of complete series", "[gauge]") {
    GaugeReport g = compute_gauges(complete_series(kSquare, 8));
    REQUIRE(g.xi == 1);
    REQUIRE(g.xi_tilde == 1);

    GaugeReport w = compute_gauges(complete_series(ModelVariety::product_of_lines(1, 2), 8));
    REQUIRE(w.xi == 1);
    REQUIRE(w.xi_tilde == 1);

    GaugeReport p = compute_gauges(complete_series(ModelVariety::projective_space(2, 3), 8));
    REQUIRE(p.xi == 3);
    REQUIRE(p.xi_tilde == 3);

    GaugeReport s = compute_gauges(complete_series(ModelVariety::projective_space(3, 2), 6));
    REQUIRE(s.xi == 2);
    REQUIRE(s.xi_tilde == 2);
    REQUIRE(s.xi_tilde >= s.xi);
}

TEST_CASE("gauges are invariant under flag reordering", "[gauge]") {
    MonomialSeries rect = complete_series(ModelVariety::product_of_lines(1, 2), 8);
    BodyResult a = okounkov_body(rect, Flag::infinitesimal_flag(0, {0, 1}));
    BodyResult b = okounkov_body(rect, Flag::infinitesimal_flag(0, {1, 0}));
    REQUIRE_FALSE(a.body == b.body);
    REQUIRE(simplex_gauge(a.body, SimplexMode::inverted) ==
            simplex_gauge(b.body, SimplexMode::inverted));
    REQUIRE(volume(a.body) == volume(b.body));
}

TEST_CASE("veronese reindexing scales the body", "[body]") {
    MonomialSeries W = veronese_series(complete_series(kPlane, 8), 2);
    BodyResult b = okounkov_body(W, Flag::coordinate_flag());
    REQUIRE(b.report.mode == BodyReport::Mode::stabilized);
    REQUIRE(b.body == model_simplex(2, SimplexMode::standard, Rational(2)));
    REQUIRE(compute_gauges(W).xi_tilde == 2);
}

TEST_CASE("exhaustion scale of the infinitesimal body", "[gauge]") {
    REQUIRE(nakayama_mu(okounkov_body(complete_series(kSquare, 8),
                                      Flag::infinitesimal_flag()).body) == 2);
    REQUIRE(nakayama_mu(okounkov_body(complete_series(ModelVariety::product_of_lines(2, 3), 6),
                                      Flag::infinitesimal_flag()).body) == 5);
    REQUIRE(nakayama_mu(model_simplex(3, SimplexMode::inverted, rat(7, 2))) == rat(7, 2));
    REQUIRE_THROWS_AS(nakayama_mu(Polytope::make_empty(2)), std::invalid_argument);
}

TEST_CASE("vanishing subseries extrapolates to the full bodies", "[body]") {
    MonomialSeries V = vanishing_subseries(kPlane, 8, 0);
    GaugeReport g = compute_gauges(V);
    REQUIRE(g.coord.report.mode == BodyReport::Mode::extrapolated);
    REQUIRE(g.inf.report.mode == BodyReport::Mode::extrapolated);
    REQUIRE(g.coord.body == model_simplex(2, SimplexMode::standard, Rational(1)));
    REQUIRE(g.inf.body == model_simplex(2, SimplexMode::inverted, Rational(1)));
    REQUIRE(g.xi == 1);
    REQUIRE(g.xi_tilde == 1);
}

TEST_CASE("inconsistent vertex paths fall back to the truncated hull", "[body]") {
    // single escaping monomial x1^g(m) with g(m) = m - ceil(sqrt(m)): the
    // ratios g(m)/m climb toward 1 but not affinely in 1/m
    std::vector<std::vector<ExponentVec>> lv(9);
    lv[0] = {{0, 0}};
    int g[] = {0, 0, 0, 1, 2, 2, 3, 4, 5};
    for (int m = 1; m <= 8; ++m) {
        lv[static_cast<size_t>(m)] = {{0, 0}};
        if (g[m] > 0) lv[static_cast<size_t>(m)].push_back({g[m], 0});
    }
    MonomialSeries S(kPlane, 8, 1, "escaping", std::move(lv));
    BodyResult b = okounkov_body(S, Flag::coordinate_flag());
    REQUIRE(b.report.mode == BodyReport::Mode::truncated);
    REQUIRE(b.body.vertices == std::vector<Vec>{pt({0, 0}), Vec{rat(5, 8), Rational(0)}});
}

TEST_CASE("jet separation and seshadri estimates", "[jets]") {
    MonomialSeries S = complete_series(kSquare, 8);
    SeshadriEstimate est = seshadri_estimate(S);
    for (int m = 1; m <= 8; ++m) REQUIRE(est.jets[static_cast<size_t>(m - 1)] == m);
    REQUIRE(est.value == 1);
    REQUIRE(est.stabilized);

    MonomialSeries P = complete_series(ModelVariety::projective_space(2, 2), 8);
    SeshadriEstimate ep = seshadri_estimate(P);
    REQUIRE(ep.jets[7] == 16);
    REQUIRE(ep.value == 2);

    SeshadriEstimate ev = seshadri_estimate(vanishing_subseries(kPlane, 8, 0));
    for (int m = 1; m <= 8; ++m) REQUIRE(ev.jets[static_cast<size_t>(m - 1)] == -1);
    REQUIRE(ev.value == 0);
    // jets are -1 at every level, so the ratio -1/m keeps moving
    REQUIRE_FALSE(ev.stabilized);

    REQUIRE(seshadri_estimate(veronese_series(complete_series(kPlane, 8), 2)).value == 2);
    REQUIRE_THROWS_AS(jet_separation(S, 9), std::invalid_argument);
    REQUIRE(jet_separation(S, 1) == 1);
}

TEST_CASE("ampleness audit across fixed points", "[gauge]") {
    AmplenessReport rep = ampleness_check(complete_series(ModelVariety::product_of_lines(1, 2), 8));
    REQUIRE(rep.per_point.size() == 4);
    REQUIRE(rep.all_positive);
    for (const auto& pg : rep.per_point) {
        REQUIRE(pg.xi == 1);
        REQUIRE(pg.xi_tilde == 1);
        REQUIRE(pg.coord_mode == BodyReport::Mode::stabilized);
    }

    AmplenessReport plane = ampleness_check(complete_series(kPlane, 6));
    REQUIRE(plane.per_point.size() == 3);
    REQUIRE(plane.all_positive);
}

TEST_CASE("series without sections are rejected", "[body]") {
    MonomialSeries none = subseries_vt(kSquare, 6, Rational(3), 0);
    REQUIRE(none.trivial());
    REQUIRE_THROWS_WITH(okounkov_body(none, Flag::coordinate_flag()), "empty series");
}

TEST_CASE("infinitesimal body sits inside the inverted simplex at mu", "[body]") {
    std::vector<MonomialSeries> all;
    all.push_back(complete_series(ModelVariety::product_of_lines(2, 3), 6));
    all.push_back(complete_series(ModelVariety::projective_space(3, 2), 6));
    all.push_back(vanishing_subseries(kPlane, 8, 0));
    for (const auto& S : all) {
        Polytope body = okounkov_body(S, Flag::infinitesimal_flag()).body;
        Rational mu = nakayama_mu(body);
        REQUIRE(model_simplex(S.dim(), SimplexMode::inverted, mu).contains_polytope(body));
    }
}
