#include "opg/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace opg {

std::vector<int> complex_part(const LabeledGraph& g) {
    std::vector<int> out;
    for (const auto& comp : components(g)) {
        long edges = 0;
        for (const Edge& e : g.edges())
            if (std::binary_search(comp.begin(), comp.end(), e.u)) ++edges;
        if (edges >= static_cast<long>(comp.size()) + 1) out.insert(out.end(), comp.begin(), comp.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

LabeledGraph core_of(const LabeledGraph& g) {
    std::vector<char> in(g.n() + 1, 0);
    for (int v : complex_part(g)) in[v] = 1;
    std::vector<int> deg(g.n() + 1, 0);
    for (const Edge& e : g.edges())
        if (in[e.u] && in[e.v]) {
            ++deg[e.u];
            ++deg[e.v];
        }
    std::vector<int> worklist;
    for (int v = 1; v <= g.n(); ++v)
        if (in[v] && deg[v] <= 1) worklist.push_back(v);
    while (!worklist.empty()) {
        int v = worklist.back();
        worklist.pop_back();
        if (!in[v]) continue;
        in[v] = 0;
        for (int w : g.neighbors(v))
            if (in[w] && --deg[w] <= 1) worklist.push_back(w);
    }
    std::vector<Edge> kept;
    for (const Edge& e : g.edges())
        if (in[e.u] && in[e.v]) kept.push_back(e);
    return LabeledGraph(g.n(), std::move(kept));
}

long excess(const LabeledGraph& g) {
    long total = 0;
    for (const auto& comp : components(g)) {
        long edges = 0;
        for (const Edge& e : g.edges())
            if (std::binary_search(comp.begin(), comp.end(), e.u)) ++edges;
        long ex = edges - static_cast<long>(comp.size());
        if (ex >= 1) total += ex;
    }
    return total;
}

KernelResult kernel_of(const LabeledGraph& core) {
    // validate the core contract: support has min degree >= 2 and every
    // component carrying edges is complex
    std::vector<int> support;
    for (int v = 1; v <= core.n(); ++v)
        if (core.degree(v) > 0) support.push_back(v);
    for (int v : support)
        if (core.degree(v) < 2) throw DomainError("core has a vertex of degree < 2");
    for (const auto& comp : components(core)) {
        if (comp.size() == 1) continue;  // isolated label outside the support
        long edges = 0;
        for (const Edge& e : core.edges())
            if (std::binary_search(comp.begin(), comp.end(), e.u)) ++edges;
        if (edges <= static_cast<long>(comp.size()))
            throw DomainError("core component is not complex");
    }

    std::vector<int> kverts;
    for (int v : support)
        if (core.degree(v) >= 3) kverts.push_back(v);
    // a complex min-degree-2 component always has a degree-3 vertex, so no
    // component can be a bare cycle here
    std::map<int, int> rank;
    for (size_t i = 0; i < kverts.size(); ++i) rank[kverts[i]] = static_cast<int>(i) + 1;

    // walk maximal degree-2 paths, marking directed half-edges as used
    std::set<std::pair<int, int>> used;
    std::vector<std::pair<Edge, std::vector<int>>> found;
    for (int u : kverts) {
        for (int first : core.neighbors(u)) {
            if (used.count({u, first})) continue;
            std::vector<int> path{u};
            int prev = u, cur = first;
            used.insert({u, first});
            while (core.degree(cur) == 2) {
                path.push_back(cur);
                const auto& nb = core.neighbors(cur);
                int nxt = (nb[0] == prev) ? nb[1] : nb[0];
                used.insert({cur, prev});  // guard the reverse walk through the chain
                used.insert({cur, nxt});
                prev = cur;
                cur = nxt;
            }
            path.push_back(cur);
            used.insert({cur, prev});
            int a = rank.at(u), b = rank.at(cur);
            // canonical orientation: open paths from the smaller kernel
            // endpoint; loops oriented so the first interior label is smaller
            if (a > b) {
                std::reverse(path.begin(), path.end());
                std::swap(a, b);
            } else if (a == b && path.size() >= 3 && path[1] > path[path.size() - 2]) {
                std::reverse(path.begin(), path.end());
            }
            found.emplace_back(Edge{a, b}, std::move(path));
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        if (!(x.first == y.first)) return x.first < y.first;
        return x.second < y.second;
    });
    std::vector<Edge> kedges;
    KernelResult res;
    for (auto& [e, p] : found) {
        kedges.push_back(e);
        res.paths.push_back(std::move(p));
    }
    res.kernel = WeightedMultigraph(static_cast<int>(kverts.size()), std::move(kedges));
    res.kernel_labels = kverts;
    return res;
}

LabeledGraph subdivide_kernel(int n, const KernelResult& k) {
    std::vector<Edge> edges;
    for (const auto& path : k.paths)
        for (size_t i = 0; i + 1 < path.size(); ++i) edges.push_back(make_edge(path[i], path[i + 1]));
    return LabeledGraph(n, std::move(edges));
}

Decomposition decompose(const LabeledGraph& g) {
    Decomposition d;
    d.complex_vertices = complex_part(g);
    d.core = core_of(g);
    for (int v = 1; v <= g.n(); ++v)
        if (d.core.degree(v) > 0) d.core_vertices.push_back(v);
    auto kr = kernel_of(d.core);
    d.kernel = std::move(kr.kernel);
    d.kernel_labels = std::move(kr.kernel_labels);
    d.kernel_paths = std::move(kr.paths);
    d.n_Q = static_cast<long>(d.complex_vertices.size());
    d.n_C = static_cast<long>(d.core_vertices.size());
    d.ell = excess(g);
    d.n_U = g.n() - d.n_Q;
    d.m_U = g.m() - d.n_Q - d.ell;
    return d;
}

namespace {

bool edge_is_chord(const LabeledGraph& h, Edge e) {
    auto bd = blocks(h);
    for (const auto& blk : bd.blocks) {
        if (std::find(blk.begin(), blk.end(), e) == blk.end()) continue;
        auto ch = chords_of_block(h, blk);
        return std::find(ch.begin(), ch.end(), e) != ch.end();
    }
    throw DomainError("edge not found in any block");
}

} // namespace

LabeledGraph subdivide_C1(const LabeledGraph& h, Edge e) {
    e = make_edge(e.u, e.v);
    if (!h.has_edge(e.u, e.v)) throw DomainError("edge not in graph");
    if (edge_is_chord(h, e)) throw DomainError("(C1) rejects chords: subdividing a chord can break outerplanarity");
    int nv = h.n() + 1;
    std::vector<Edge> edges;
    for (const Edge& f : h.edges())
        if (!(f == e)) edges.push_back(f);
    edges.push_back(make_edge(e.u, nv));
    edges.push_back(make_edge(e.v, nv));
    return LabeledGraph(nv, std::move(edges));
}

LabeledGraph relabel_subdivide_C2(const LabeledGraph& h, int v, Edge e) {
    e = make_edge(e.u, e.v);
    if (v < 1 || v > h.n()) throw DomainError("vertex out of range");
    int d = h.degree(v);
    if (d < 3 || d > 6) throw DomainError("(C2) needs a vertex of degree 3..6");
    if (!h.has_edge(e.u, e.v)) throw DomainError("edge not in graph");
    if (e.u != v && e.v != v) throw DomainError("(C2) edge must be incident to the chosen vertex");
    if (edge_is_chord(h, e)) throw DomainError("(C2) rejects chords");
    int nv = h.n() + 1;
    int w = (e.u == v) ? e.v : e.u;
    std::vector<Edge> edges;
    for (const Edge& f : h.edges()) {
        if (f == e) continue;
        int a = f.u == v ? nv : f.u;
        int b = f.v == v ? nv : f.v;
        edges.push_back(make_edge(a, b));
    }
    // v's old label lands on the subdivision vertex
    edges.push_back(make_edge(nv, v));
    edges.push_back(make_edge(v, w));
    return LabeledGraph(nv, std::move(edges));
}

namespace {

long good_chord_threshold(long n, const Rat& h_value) {
    if (h_value <= 0) throw DomainError("h must be positive");
    // smallest t >= 1 with t >= n^{1/3}/h, i.e. (t*p)^3 >= n*q^3 for h = p/q
    Int p = numerator(h_value), q = denominator(h_value);
    Int rhs = Int(n) * q * q * q;
    long t = 1;
    while (Int(t) * t * t * p * p * p < rhs) ++t;
    return t;
}

} // namespace

std::optional<GoodChordWitness> find_good_chord(const LabeledGraph& g, const Rat& h_value) {
    long threshold = good_chord_threshold(g.n(), h_value);
    auto bd = blocks(g);
    std::vector<size_t> order(bd.blocks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return vertices_of(bd.blocks[a]).front() < vertices_of(bd.blocks[b]).front();
    });
    for (size_t bi : order) {
        const auto& blk = bd.blocks[bi];
        if (blk.size() <= vertices_of(blk).size()) continue;  // no chords
        auto cyc = hamiltonian_cycle_of_block(g, blk);
        auto chords = chords_of_block(g, blk);
        std::sort(chords.begin(), chords.end());
        std::set<int> chord_ends;
        for (const Edge& c : chords) {
            chord_ends.insert(c.u);
            chord_ends.insert(c.v);
        }
        int L = static_cast<int>(cyc.size());
        std::map<int, int> pos;
        for (int i = 0; i < L; ++i) pos[cyc[i]] = i;
        for (const Edge& c : chords) {
            for (int dir = 0; dir < 2; ++dir) {
                // walk the cycle from x to y; dir flips the arc
                int x = c.u, y = c.v;
                int step = dir == 0 ? 1 : L - 1;
                std::vector<int> path{x};
                for (int i = (pos[x] + step) % L; cyc[i] != y; i = (i + step) % L) path.push_back(cyc[i]);
                path.push_back(y);
                long r = static_cast<long>(path.size()) - 2;
                if (r < threshold + 1) continue;
                bool ok = true;
                for (size_t i = 1; i + 1 < path.size() && ok; ++i)
                    if (chord_ends.count(path[i])) ok = false;
                for (long i = 1; i <= threshold && ok; ++i)
                    if (g.degree(path[i]) != 2) ok = false;
                if (ok) return GoodChordWitness{c, std::move(path), r, threshold};
            }
        }
    }
    return std::nullopt;
}

LabeledGraph rewire_chord(const LabeledGraph& g, const GoodChordWitness& w, long i) {
    if (i < 1 || i > w.threshold) throw DomainError("index out of range");
    if (w.path.size() < 3) throw DomainError("invalid witness path");
    if (!g.has_edge(w.chord.u, w.chord.v)) throw DomainError("witness chord not in graph");
    for (size_t k = 0; k + 1 < w.path.size(); ++k)
        if (!g.has_edge(w.path[k], w.path[k + 1])) throw DomainError("witness path not in graph");
    long r = w.r;
    int zi = w.path[i], zr = w.path[r], y = w.path[r + 1];
    if (g.has_edge(zi, zr)) throw DomainError("degenerate rewiring: z_i and z_r already adjacent");

    std::vector<Edge> edges;
    Edge del = make_edge(zr, y);
    for (const Edge& f : g.edges())
        if (!(f == del)) edges.push_back(f);
    edges.push_back(make_edge(zi, zr));
    LabeledGraph out(g.n(), std::move(edges));

    if (out.degree(zi) != 3) throw StructuralError("rewire: z_i does not have degree 3");
    if (!is_outerplanar(out)) throw StructuralError("rewire: result lost outerplanarity");
    Decomposition a = decompose(g), b = decompose(out);
    if (a.n_C != b.n_C || a.ell != b.ell) throw StructuralError("rewire: (n_C, ell) not preserved");
    return out;
}

LabeledGraph split_three_block_vertex(const LabeledGraph& g, int x, const std::vector<int>& Y, int y) {
    LabeledGraph core = core_of(g);
    auto in_core = [&](int v) { return core.degree(v) > 0; };
    if (!in_core(x)) throw DomainError("x is not a core vertex");
    if (!in_core(y)) throw DomainError("y is not a core vertex");
    if (core.degree(y) != 2) throw DomainError("y must have degree 2 in the core");
    std::set<int> ys(Y.begin(), Y.end());
    if (ys.count(y)) throw DomainError("y must lie outside Y");
    if (ys.empty()) throw DomainError("Y is empty");

    auto bd = blocks(core);
    if (bd.vertex_block_count[x] < 3) throw DomainError("x must lie in at least three core blocks");

    // Y must be a connected component of (component of x) - x
    {
        std::vector<char> blocked(g.n() + 1, 0);
        blocked[x] = 1;
        int start = *ys.begin();
        std::set<int> reach{start};
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : core.neighbors(v))
                if (!blocked[w] && !reach.count(w)) {
                    reach.insert(w);
                    stack.push_back(w);
                }
        }
        if (reach != ys) throw DomainError("Y is not a component of (component of x) - x");
    }
    long n_C = 0;
    for (int v = 1; v <= g.n(); ++v)
        if (in_core(v)) ++n_C;
    if (3 * static_cast<long>(ys.size()) > n_C) throw DomainError("Y exceeds a third of the core");

    std::vector<int> moved;
    for (int z : core.neighbors(x))
        if (ys.count(z)) moved.push_back(z);
    if (moved.size() < 2) throw DomainError("Y must contain at least two neighbours of x");

    std::vector<Edge> edges;
    std::set<Edge> drop;
    for (int z : moved) drop.insert(make_edge(x, z));
    for (const Edge& f : g.edges())
        if (!drop.count(f)) edges.push_back(f);
    for (int z : moved) edges.push_back(make_edge(y, z));
    LabeledGraph out(g.n(), std::move(edges));

    if (out.degree(y) < 4) throw StructuralError("split: y did not reach degree 4");
    if (!is_outerplanar(out)) throw StructuralError("split: result lost outerplanarity");
    Decomposition a = decompose(g), b = decompose(out);
    if (a.n_C != b.n_C || a.ell != b.ell) throw StructuralError("split: (n_C, ell) not preserved");
    return out;
}

} // namespace opg
