#include "doctest.h"

#include "opg/experiments.hpp"
#include "opg/io.hpp"
#include "opg/stats.hpp"

using namespace opg;

namespace {

LabeledGraph G(int n, std::initializer_list<std::pair<int, int>> es) {
    std::vector<Edge> edges;
    for (auto [a, b] : es) edges.push_back(make_edge(a, b));
    return LabeledGraph(n, std::move(edges));
}

} // namespace

TEST_CASE("analyze") {
    auto st = analyze(G(10, {{1, 2}, {2, 3}, {1, 3}}), 0, Rat(1));
    CHECK(st.h1 == 3);
    CHECK_FALSE(st.h1_is_tree);
    CHECK(st.nQ == 0);
    CHECK(st.cactus);
    CHECK_FALSE(st.chord);

    auto st2 = analyze(G(6, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}), 0, Rat(1));
    CHECK(st2.nQ == 4);
    CHECK(st2.ell == 1);
    CHECK_FALSE(st2.cactus);
    CHECK(st2.chord);

    auto st3 = analyze(G(5, {{1, 2}, {2, 3}, {4, 5}}), 0, Rat(1));
    CHECK(st3.ell == 0);
    CHECK(st3.cactus);
    CHECK_FALSE(st3.chord);
    CHECK(st3.h1_is_tree);
}

TEST_CASE("sweep: determinism across worker counts and row identities") {
    SweepConfig cfg;
    cfg.n = 300;
    cfg.s_value = 10;
    cfg.samples = 24;
    cfg.seed = 271828;
    cfg.target = 'G';
    cfg.jobs = 1;
    auto rows1 = sweep(cfg);
    cfg.jobs = 4;
    auto rows4 = sweep(cfg);
    REQUIRE(rows1.size() == rows4.size());
    std::string csv1 = csv_header(), csv4 = csv_header();
    for (size_t i = 0; i < rows1.size(); ++i) {
        csv1 += "\n" + csv_row(rows1[i]);
        csv4 += "\n" + csv_row(rows4[i]);
    }
    CHECK(csv1 == csv4);
    for (const auto& r : rows1) {
        CHECK(r.nU == r.n - r.nQ);
        CHECK(r.mU == r.m - r.nQ - r.ell);
        CHECK(r.h1 >= r.h2);
    }
    CHECK(csv_header() ==
          "n,m,s,s3n2,h1,h2,h1_tree,nQ,nC,ell,nU,mU,cactus,chord,good_chord,tries,seed,stream");
    SweepConfig odd;
    odd.n = 301;
    CHECK_THROWS_AS(sweep(odd), DomainError);
}

TEST_CASE("profile_contributions") {
    CountingContext ctx;
    auto pr = profile_contributions(4, 5, ctx);
    CHECK(pr.total == 6);
    REQUIRE(pr.joint.size() == 1);
    CHECK(pr.joint.begin()->first == std::pair<int, int>{4, 1});
    CHECK(pr.conditional.at({4, 1, 4}) == 6);

    auto pr2 = profile_contributions(7, 4, ctx);
    for (auto& [k, v] : pr2.joint) CHECK(k.first == 0);

    for (int n = 4; n <= 6; ++n)
        for (int m = 0; m <= 2 * n - 3; ++m) {
            auto p = profile_contributions(n, m, ctx);
            CHECK(p.total == ctx.count_int(GraphClass::A, n, m));
            if (p.total > 0) {
                CHECK(p.window999.mass >= p.window99.mass);
                CHECK(p.window999.nq_lo <= p.window99.nq_lo);
                CHECK(p.window999.nq_hi >= p.window99.nq_hi);
                CHECK(p.window999.ell_lo <= p.window99.ell_lo);
                CHECK(p.window999.ell_hi >= p.window99.ell_hi);
                CHECK(p.window99.mass >= Rat(99, 100));
            }
        }
}

TEST_CASE("conjecture_probe: exact values at table scale") {
    CountingContext ctx;
    auto rows = conjecture_probe({7, 9, 11}, 6, 0, 0, 10, ctx);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].exact);
    CHECK(rows[0].exact_p == Rat(ctx.count_int(GraphClass::T, 6, 7)) / Rat(ctx.count_int(GraphClass::A, 6, 7)));
    // maximal outerplanar graphs are never cacti
    CHECK(rows[2].exact_p == 0);
}

TEST_CASE("verify_suite wiring") {
    auto reports = verify_suite("eq1", 4, 1);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].pass);
    CHECK_THROWS_AS(verify_suite("nope", 4, 1), DomainError);
}

TEST_CASE("graph text round trip") {
    auto g = G(5, {{1, 2}, {2, 3}, {4, 5}});
    std::istringstream in(format_graph(g));
    CHECK(parse_graph(in) == g);

    WeightedMultigraph k(3, {{1, 1}, {1, 2}, {1, 2}, {2, 3}});
    std::istringstream in2(format_multigraph(k));
    CHECK(parse_multigraph(in2) == k);

    auto d = decompose(G(5, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {1, 5}}));
    auto js = decomposition_to_json(d);
    CHECK(js.find("\"n_Q\": 5") != std::string::npos);
    CHECK(js.find("#multigraph") != std::string::npos);
}
