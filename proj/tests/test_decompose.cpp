#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "opg/decompose.hpp"
#include "opg/enumerate.hpp"
#include "test_util.hpp"

using namespace opg;

namespace {

LabeledGraph G(int n, std::initializer_list<std::pair<int, int>> es) {
    std::vector<Edge> edges;
    for (auto [a, b] : es) edges.push_back(make_edge(a, b));
    return LabeledGraph(n, std::move(edges));
}

LabeledGraph k4_minus_edge(int n = 4) {
    return LabeledGraph(n, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
}

LabeledGraph induced(const LabeledGraph& g, const std::vector<int>& verts) {
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (std::binary_search(verts.begin(), verts.end(), e.u) &&
            std::binary_search(verts.begin(), verts.end(), e.v))
            edges.push_back(e);
    return LabeledGraph(g.n(), std::move(edges));
}

long multigraph_excess(const WeightedMultigraph& k) {
    // sum over components of (edges - vertices)
    int n = k.n();
    std::vector<int> comp(n + 1, 0);
    int nc = 0;
    std::vector<std::vector<int>> adj(n + 1);
    for (const Edge& e : k.edges())
        if (e.u != e.v) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    for (int s = 1; s <= n; ++s) {
        if (comp[s]) continue;
        ++nc;
        std::vector<int> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!comp[w]) {
                    comp[w] = nc;
                    stack.push_back(w);
                }
        }
    }
    std::vector<long> ne(nc + 1, 0), nv(nc + 1, 0);
    for (int v = 1; v <= n; ++v) ++nv[comp[v]];
    for (const Edge& e : k.edges()) ++ne[comp[e.u]];
    long total = 0;
    for (int c = 1; c <= nc; ++c) total += ne[c] - nv[c];
    return total;
}

bool in_class_C(const LabeledGraph& g, int expect_n, int expect_m) {
    int nz = 0;
    for (int v = 1; v <= g.n(); ++v) {
        if (g.degree(v) == 0) continue;
        ++nz;
        if (g.degree(v) < 2) return false;
    }
    if (nz != expect_n || g.m() != expect_m) return false;
    for (const auto& comp : components(g)) {
        if (comp.size() == 1) return false;  // class members carry no isolated labels
        long edges = 0;
        for (const Edge& e : g.edges())
            if (std::binary_search(comp.begin(), comp.end(), e.u)) ++edges;
        if (edges < static_cast<long>(comp.size()) + 1) return false;
    }
    return is_outerplanar(g);
}

} // namespace

TEST_CASE("complex_part") {
    CHECK(complex_part(G(4, {{1, 2}, {2, 3}, {3, 4}})).empty());
    auto g = G(7, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {5, 6}, {6, 7}, {5, 7}});
    CHECK(complex_part(g) == std::vector<int>{1, 2, 3, 4});
    auto two = G(8, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {5, 6}, {5, 7}, {6, 7}, {6, 8}, {7, 8}});
    CHECK(complex_part(two) == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("core_of") {
    // K4-e with a pendant path attached at vertex 4
    auto g = G(7, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}, {6, 7}});
    auto core = core_of(g);
    CHECK(core.m() == 5);
    CHECK(core.degree(5) == 0);
    CHECK(core.degree(1) == 2);

    auto uni = G(5, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}});
    CHECK(core_of(uni).m() == 0);

    CHECK(core_of(k4_minus_edge()).m() == 5);
}

TEST_CASE("excess") {
    CHECK(excess(G(5, {{1, 2}, {2, 3}, {1, 3}, {4, 5}})) == 0);
    CHECK(excess(k4_minus_edge()) == 1);
    auto two = G(8, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {5, 6}, {5, 7}, {6, 7}, {6, 8}, {7, 8}});
    CHECK(excess(two) == 2);
}

TEST_CASE("kernel: K4-e contracts to a triple edge (flagged)") {
    auto kr = kernel_of(core_of(k4_minus_edge()));
    CHECK(kr.kernel.n() == 2);
    CHECK(kr.kernel.edge_count() == 3);
    CHECK(kr.kernel.max_multiplicity() == 3);
    CHECK(kr.kernel.has_high_multiplicity());
    CHECK(kr.kernel.weight() == Rat(1));  // e1 = e2 = 0 under the literal formula
    CHECK(kr.kernel_labels == std::vector<int>{2, 3});
}

TEST_CASE("kernel: bowtie contracts to two loops") {
    auto bow = G(5, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
    auto kr = kernel_of(core_of(bow));
    CHECK(kr.kernel.n() == 1);
    CHECK(kr.kernel.edge_count() == 2);
    CHECK(kr.kernel.loop_count() == 2);
    CHECK(kr.kernel.weight() == Rat(1, 4));
    CHECK(kr.kernel_labels == std::vector<int>{3});
}

TEST_CASE("kernel: long cycle with degree-3 chord endpoints") {
    // 6-cycle plus chord (1,4): two arcs contract, chord stays
    auto g = G(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}, {1, 4}});
    auto kr = kernel_of(core_of(g));
    CHECK(kr.kernel.n() == 2);
    CHECK(kr.kernel.edge_count() == 3);
    CHECK(kr.kernel.max_multiplicity() == 3);
    CHECK(kr.kernel.has_high_multiplicity());
}

TEST_CASE("kernel rejects non-core input") {
    CHECK_THROWS_AS(kernel_of(G(3, {{1, 2}, {2, 3}})), DomainError);
    // a bare cycle is min-degree 2 but not complex
    CHECK_THROWS_AS(kernel_of(G(3, {{1, 2}, {2, 3}, {1, 3}})), DomainError);
}

TEST_CASE("decompose: assembled stats") {
    // K4-e on 1..4 plus a tree on 5..10
    auto g = G(10, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 10}});
    auto d = decompose(g);
    CHECK(d.n_Q == 4);
    CHECK(d.ell == 1);
    CHECK(d.n_C == 4);
    CHECK(d.n_U == 6);
    CHECK(d.m_U == 5);

    auto empty = decompose(LabeledGraph(0, {}));
    CHECK(empty.n_Q == 0);
    CHECK(empty.n_C == 0);
    CHECK(empty.ell == 0);
    CHECK(empty.kernel.n() == 0);

    // K4-e with a pendant vertex on vertex 1
    auto g2 = G(5, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {1, 5}});
    auto d2 = decompose(g2);
    CHECK(d2.n_Q == 5);
    CHECK(d2.n_C == 4);
    CHECK(d2.ell == 1);
    CHECK(d2.m_U == g2.m() - 6);
}

TEST_CASE("decomposition invariants: exhaustive n <= 6 and random samples") {
    CountingContext ctx;
    auto check_graph = [](const LabeledGraph& g) {
        auto d = decompose(g);
        CHECK(d.n_U == g.n() - d.n_Q);
        CHECK(d.m_U == g.m() - d.n_Q - d.ell);
        for (int v = 1; v <= g.n(); ++v) {
            if (d.core.degree(v) > 0) CHECK(d.core.degree(v) >= 2);
        }
        for (int v = 1; v <= d.kernel.n(); ++v) CHECK(d.kernel.degree(v) >= 3);
        CHECK(excess(d.core) == d.ell);
        CHECK(multigraph_excess(d.kernel) == d.ell);
        // round trip: re-subdividing kernel paths rebuilds the core
        KernelResult kr{d.kernel, d.kernel_labels, d.kernel_paths};
        CHECK(subdivide_kernel(g.n(), kr) == d.core);
        // kernel equivalence: complex part cactus iff kernel cactus
        std::vector<int> q = d.complex_vertices;
        bool qc = is_cactus(induced(g, q));
        CHECK(qc == is_cactus_multigraph(d.kernel));
    };
    for (int n = 1; n <= 6; ++n) {
        int E = n * (n - 1) / 2;
        for (uint32_t mask = 0; mask < (1u << E); ++mask) check_graph(ctx.graph_from_mask(n, mask));
    }
    std::mt19937_64 rng(777);
    for (int rep = 0; rep < 10000; ++rep) {
        int n = 10 + static_cast<int>(rng() % 40);
        int m = n / 2 + static_cast<int>(rng() % n);
        std::set<std::pair<int, int>> es;
        while (static_cast<int>(es.size()) < m) {
            int a = 1 + static_cast<int>(rng() % n), b = 1 + static_cast<int>(rng() % n);
            if (a != b) es.insert({std::min(a, b), std::max(a, b)});
        }
        std::vector<Edge> edges;
        for (auto [a, b] : es) edges.push_back({a, b});
        check_graph(LabeledGraph(n, edges));
    }
}

TEST_CASE("C1: subdivision") {
    auto h = k4_minus_edge();
    // Hamiltonian cycle 1-2-4-3, chord {2,3}
    auto out = subdivide_C1(h, {1, 2});
    CHECK(in_class_C(out, 5, 6));
    CHECK(out.degree(5) == 2);
    CHECK_THROWS_AS(subdivide_C1(h, {2, 3}), DomainError);  // the chord
    CHECK_THROWS_AS(subdivide_C1(h, {1, 4}), DomainError);  // not an edge

    // option count is n_C + ell - b on every small core
    CountingContext ctx;
    for (auto [nC, ell] : std::vector<std::pair<int, int>>{{4, 1}, {5, 1}, {5, 2}, {6, 1}, {6, 2}}) {
        for (uint32_t mask : ctx.members(GraphClass::C, nC, nC + ell)) {
            auto g = ctx.graph_from_mask(nC, mask);
            int b = 0;
            for (const auto& blk : blocks(g).blocks) b += static_cast<int>(chords_of_block(g, blk).size());
            int options = 0;
            for (const Edge& e : g.edges()) {
                try {
                    subdivide_C1(g, e);
                    ++options;
                } catch (const DomainError&) {
                }
            }
            CHECK(options == nC + ell - b);
        }
    }
}

TEST_CASE("C1 injectivity and C2 multiplicity, exhaustively") {
    CountingContext ctx;
    for (auto [nC, ell] : std::vector<std::pair<int, int>>{{4, 1}, {5, 1}, {5, 2}, {6, 1}, {6, 2}, {6, 3}}) {
        std::set<std::vector<Edge>> c1_images;
        std::map<std::vector<Edge>, int> c2_count;
        long c1_applications = 0;
        for (uint32_t mask : ctx.members(GraphClass::C, nC, nC + ell)) {
            auto g = ctx.graph_from_mask(nC, mask);
            for (const Edge& e : g.edges()) {
                try {
                    auto out = subdivide_C1(g, e);
                    ++c1_applications;
                    CHECK(in_class_C(out, nC + 1, nC + 1 + ell));
                    c1_images.insert(out.edges());
                } catch (const DomainError&) {
                }
                for (int v : {e.u, e.v}) {
                    int d = g.degree(v);
                    if (d < 3 || d > 6) continue;
                    try {
                        auto out = relabel_subdivide_C2(g, v, e);
                        CHECK(in_class_C(out, nC + 1, nC + 1 + ell));
                        ++c2_count[out.edges()];
                    } catch (const DomainError&) {
                    }
                }
            }
        }
        // (C1) reaches each target at most once
        CHECK(static_cast<long>(c1_images.size()) == c1_applications);
        // (C2) reaches each target at most six times, and never a (C1) target
        for (const auto& [edges, cnt] : c2_count) {
            CHECK(cnt <= 6);
            CHECK_FALSE(c1_images.count(edges));
        }
    }
}

TEST_CASE("find_good_chord") {
    // cactus graphs have no chords at all
    auto bow = G(5, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
    CHECK_FALSE(find_good_chord(bow, Rat(1)).has_value());

    // 50-cycle plus chord (1,41): the long arc has 39 interior degree-2 vertices
    std::vector<Edge> edges;
    for (int i = 1; i < 50; ++i) edges.push_back({i, i + 1});
    edges.push_back({1, 50});
    edges.push_back({1, 41});
    LabeledGraph cyc(50, edges);
    Rat h(13, 10);  // threshold = ceil(50^(1/3)/1.3) = 3
    auto w = find_good_chord(cyc, h);
    REQUIRE(w.has_value());
    CHECK(w->threshold == 3);
    CHECK(w->r == 39);
    CHECK(w->chord == Edge{1, 41});
    CHECK(w->path.front() == 1);
    CHECK(w->path.back() == 41);

    // K4-e: arcs are too short for any threshold
    CHECK_FALSE(find_good_chord(k4_minus_edge(), Rat(1)).has_value());
}

TEST_CASE("rewire_chord") {
    std::vector<Edge> edges;
    for (int i = 1; i < 50; ++i) edges.push_back({i, i + 1});
    edges.push_back({1, 50});
    edges.push_back({1, 41});
    LabeledGraph cyc(50, edges);
    auto w = find_good_chord(cyc, Rat(13, 10));
    REQUIRE(w.has_value());

    std::set<std::vector<Edge>> results;
    for (long i = 1; i <= w->threshold; ++i) {
        auto out = rewire_chord(cyc, *w, i);
        CHECK(out.n() == cyc.n());
        CHECK(out.m() == cyc.m());
        results.insert(out.edges());
    }
    CHECK(static_cast<long>(results.size()) >= w->threshold - 1);
    CHECK_THROWS_AS(rewire_chord(cyc, *w, 0), DomainError);
    CHECK_THROWS_AS(rewire_chord(cyc, *w, w->threshold + 1), DomainError);
}

TEST_CASE("rewire_chord: exhaustive inversion on small cores") {
    // preimage counts over all applicable cores in C(8,9) stay far below
    // the paper's 2*ell*36 budget
    CountingContext ctx;
    std::map<std::vector<Edge>, int> preimages;
    Rat h(2);
    for (uint32_t mask : ctx.members(GraphClass::C, 8, 9)) {
        auto g = ctx.graph_from_mask(8, mask);
        auto w = find_good_chord(g, h);
        if (!w) continue;
        for (long i = 1; i <= w->threshold; ++i) {
            try {
                auto out = rewire_chord(g, *w, i);
                ++preimages[out.edges()];
            } catch (const DomainError&) {
            }
        }
    }
    long ell = 1;
    for (const auto& [_, cnt] : preimages) CHECK(cnt <= 2 * ell * 36);
}

TEST_CASE("split_three_block_vertex") {
    // three triangles sharing vertex 1
    auto g = G(7, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {1, 5}, {4, 5}, {1, 6}, {1, 7}, {6, 7}});
    // Y = {4,5}; y = 6 (degree 2, on another triangle)
    auto out = split_three_block_vertex(g, 1, {4, 5}, 6);
    CHECK(out.n() == g.n());
    CHECK(out.m() == g.m());
    CHECK(out.degree(6) == 4);
    CHECK(blocks(core_of(out)).vertex_block_count[1] == 2);
    auto d0 = decompose(g), d1 = decompose(out);
    CHECK(d0.n_C == d1.n_C);
    CHECK(d0.ell == d1.ell);

    // inapplicable on cacti with at most two blocks per vertex
    auto bow = G(5, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
    CHECK_THROWS_AS(split_three_block_vertex(bow, 3, {1, 2}, 4), DomainError);
    // y must not be in Y, must have core degree 2
    CHECK_THROWS_AS(split_three_block_vertex(g, 1, {4, 5}, 4), DomainError);
    CHECK_THROWS_AS(split_three_block_vertex(g, 1, {4, 5}, 1), DomainError);
}
